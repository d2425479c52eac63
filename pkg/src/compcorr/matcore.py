"""Dense complex linear algebra for small multi-qubit operators.

Everything here works on plain numpy arrays in dimensions 2, 4 and 8.
Qubit ordering is big-endian: factor 0 is the leftmost tensor slot.
"""

from functools import reduce

import numpy as np

# Hermiticity / trace checks on user-supplied matrices.
HERMITICITY_TOL = 1e-10
# Eigenvalues in [-EIG_CLAMP_TOL, 0) are treated as float noise and clamped
# to zero before entropies; anything more negative is a genuine error.
EIG_CLAMP_TOL = 1e-8

LOG2 = np.log(2.0)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def kron(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, ops)


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def _check_dims(m: np.ndarray, dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(f"matrix shape {m.shape} does not match factor dims {dims}")
    return dims


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all tensor factors not listed in `keep`.

    `dims` lists the dimension of each factor; `keep` lists factor indices
    (big-endian order) that survive. Returns the reduced matrix.
    """
    dims = _check_dims(m, dims)
    n = len(dims)
    keep = sorted(int(k) for k in keep)
    if not keep:
        raise ValueError("must keep at least one factor")
    for k in keep:
        if k < 0 or k >= n:
            raise ValueError(f"factor index {k} out of range for {n} factors")
    if len(set(keep)) != len(keep):
        raise ValueError("duplicate factor index in keep")

    r = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    live = list(dims)
    for i in sorted(traced, reverse=True):
        r = np.trace(r, axis1=i, axis2=i + len(live))
        live.pop(i)
    d = int(np.prod([dims[k] for k in keep]))
    return r.reshape(d, d)


def partial_transpose(m: np.ndarray, dims, factor: int) -> np.ndarray:
    """Transpose a single tensor factor, leaving the others alone."""
    dims = _check_dims(m, dims)
    n = len(dims)
    factor = int(factor)
    if factor < 0 or factor >= n:
        raise ValueError(f"factor index {factor} out of range for {n} factors")
    r = m.reshape(dims + dims)
    r = np.swapaxes(r, factor, factor + n)
    return r.reshape(m.shape)


def hermitian_spectrum(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted ascending."""
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(m)


def entropy_of_probabilities(p: np.ndarray) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0.

    Tiny negative entries (float noise from eigensolves) are clamped to zero;
    entries below -EIG_CLAMP_TOL raise.
    """
    p = np.asarray(p, dtype=float)
    if p.min() < -EIG_CLAMP_TOL:
        raise ValueError(f"negative probability {p.min():.3e} below clamp threshold")
    p = np.clip(p, 0.0, None)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log(nz)) / LOG2)


def von_neumann_entropy(m: np.ndarray) -> float:
    """Von Neumann entropy in bits of a positive semidefinite matrix."""
    return entropy_of_probabilities(hermitian_spectrum(m))
