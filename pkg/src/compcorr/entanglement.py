"""PPT verdicts, negativity, and Bell-diagonal relative entropy of entanglement."""

from dataclasses import dataclass

import numpy as np

from .matcore import LOG2, hermitian_spectrum
from .states import BellDiagonalParams, DensityMatrix

# Separates "zero" from "entangled" on partial-transpose eigenvalues.
PPT_TOL = 1e-12


def _cut_label(factor: int, n: int) -> str:
    letters = "ABCDEFGH"
    rest = "".join(letters[i] for i in range(n) if i != factor)
    return f"{letters[factor]}|{rest}"


@dataclass(frozen=True)
class PptVerdict:
    """Minimum partial-transpose eigenvalue across one bipartition."""

    min_eigenvalue: float
    is_ppt: bool
    cut: str


def pt_spectrum(rho: DensityMatrix, factor: int) -> np.ndarray:
    """Spectrum of the partial transpose on one factor, ascending."""
    if factor < 0 or factor >= len(rho.dims):
        raise ValueError(f"invalid cut: factor {factor} of {len(rho.dims)}")
    return hermitian_spectrum(rho.partial_transpose(factor))


def negativity(rho: DensityMatrix, factor: int = 0) -> float:
    """Sum of |negative eigenvalues| of the partial transpose across the cut."""
    lam = pt_spectrum(rho, factor)
    return float(np.abs(lam[lam < 0]).sum())


def ppt_verdict(rho: DensityMatrix, factor: int = 0) -> PptVerdict:
    lam = pt_spectrum(rho, factor)
    lo = float(lam[0])
    return PptVerdict(
        min_eigenvalue=lo,
        is_ppt=lo >= -PPT_TOL,
        cut=_cut_label(factor, len(rho.dims)),
    )


def _binary_entropy(x: float) -> float:
    acc = 0.0
    for t in (x, 1 - x):
        if t > 1e-15:
            acc -= t * np.log(t)
    return acc / LOG2


def rel_entropy_entanglement_bd(p: BellDiagonalParams) -> float:
    """Relative entropy of entanglement, Bell-diagonal closed form.

    Zero when the largest Bell-basis eigenvalue is at most 1/2, otherwise
    1 - H2(lambda_max) bits.
    """
    p.validate()
    lmax = float(p.eigenvalues().max())
    if lmax <= 0.5:
        return 0.0
    return 1.0 - _binary_entropy(lmax)


def necessary_condition_bd(p: BellDiagonalParams, tol: float = PPT_TOL) -> bool:
    """All three correlation coefficients nonzero.

    Necessary (not sufficient) for a Bell-diagonal state to be entangled.
    """
    p.validate()
    return bool(np.all(np.abs(p.as_array()) > tol))
