"""Independent brute-force verifiers.

The grid maximizer of the Holevo quantity is the oracle for the closed-form
classical correlation; numeric discord follows from it. Also here: the
mutual-unbiasedness checker and the closed-form-vs-eigensolver spectrum
cross-check, plus the seeded verification suite behind `compcorr verify`.
"""

from dataclasses import dataclass

import numpy as np

from .correlations import (
    ProjectiveMeasurement,
    bd_mutual_information,
    classical_correlation,
    complementary_correlations,
    correlation_bits,
    discord_bd,
    holevo_quantity,
    q1,
    total_mutual_information,
)
from .matcore import LOG2, PAULIS, kron, partial_transpose
from .states import (
    BellDiagonalParams,
    DensityMatrix,
    bd_spectrum,
    bell_diagonal,
    random_bd_params,
    random_density_matrix,
)

DEFAULT_RESOLUTION = (90, 180)
REFINE_ROUNDS = 5

OVERLAP_CONVENTION_NOTE = (
    "convention: mutual unbiasedness is checked on squared cross-basis overlaps, "
    "|<a|b>|^2 = 1/d; the unsquared form is inconsistent with the Pauli eigenbases "
    "and is treated as a typo"
)


def _bloch_grid(n_polar: int, n_azimuth: int) -> np.ndarray:
    thetas = np.linspace(0.0, np.pi, n_polar)
    phis = np.linspace(0.0, 2 * np.pi, n_azimuth, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return _angles_to_bloch(tt.ravel(), pp.ravel())


def _angles_to_bloch(theta, phi) -> np.ndarray:
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)],
        axis=-1,
    )


def _entropy2x2_batch(mats: np.ndarray) -> np.ndarray:
    """Entropies in bits of a batch of 2x2 Hermitian PSD matrices."""
    tr = np.einsum("gaa->g", mats).real
    det = (mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]).real
    disc = np.sqrt(np.clip(tr * tr / 4 - det, 0.0, None))
    lam = np.stack([tr / 2 - disc, tr / 2 + disc], axis=1)
    lam = np.clip(lam, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0.0, lam * np.log(lam), 0.0)
    return -terms.sum(axis=1) / LOG2


def _holevo_batch(rho: DensityMatrix, ns: np.ndarray) -> np.ndarray:
    """Holevo quantity in bits for a batch of Bob measurement Bloch vectors."""
    r = rho.matrix.reshape(2, 2, 2, 2)
    sig = np.stack(PAULIS)
    eye = np.eye(2, dtype=complex)
    ndots = np.einsum("gk,kij->gij", ns, sig)
    rho_a = np.trace(r, axis1=1, axis2=3)
    s_avg = _entropy2x2_batch(rho_a[None])[0]
    cond = np.zeros(len(ns))
    for sign in (1.0, -1.0):
        proj = (eye[None] + sign * ndots) / 2
        x = np.einsum("abce,geb->gac", r, proj)  # Tr_B[rho (I (x) Pi)]
        p = np.einsum("gaa->g", x).real
        ent = _entropy2x2_batch(
            np.where(p[:, None, None] > 1e-15, x / np.where(p == 0, 1, p)[:, None, None], 0)
        )
        cond += np.where(p > 1e-15, p * ent, 0.0)
    return s_avg - cond


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    argmax_bloch: np.ndarray
    grid_resolution: tuple[int, int]
    refined: bool


def maximize_holevo(
    rho: DensityMatrix, resolution: tuple[int, int] | int = DEFAULT_RESOLUTION
) -> OptimizationResult:
    """Grid-maximize the Holevo quantity over Bob's measurement Bloch vector.

    Polar x azimuthal grid, then REFINE_ROUNDS local passes with halved steps
    around the running best. Grid ties break to the lexicographically
    smallest (polar, azimuthal) index pair. The returned value is recomputed
    through `holevo_quantity` at the winning direction.
    """
    if isinstance(resolution, int):
        resolution = (resolution, 2 * resolution)
    n_polar, n_azimuth = resolution
    if n_polar < 8 or n_azimuth < 8:
        raise ValueError("need at least 8 grid points per angle")

    thetas = np.linspace(0.0, np.pi, n_polar)
    phis = np.linspace(0.0, 2 * np.pi, n_azimuth, endpoint=False)
    ns = _bloch_grid(n_polar, n_azimuth)
    vals = _holevo_batch(rho, ns)
    best = int(np.argmax(vals))  # first occurrence = lexicographic tie-break
    th, ph = thetas[best // n_azimuth], phis[best % n_azimuth]

    step_t = np.pi / (n_polar - 1) / 2
    step_p = 2 * np.pi / n_azimuth / 2
    offsets = np.array([-2, -1, 0, 1, 2])
    for _ in range(REFINE_ROUNDS):
        tt = np.clip(th + offsets * step_t, 0.0, np.pi)
        pp = ph + offsets * step_p
        tg, pg = np.meshgrid(tt, pp, indexing="ij")
        local = _angles_to_bloch(tg.ravel(), pg.ravel())
        lvals = _holevo_batch(rho, local)
        k = int(np.argmax(lvals))
        th, ph = tg.ravel()[k], pg.ravel()[k]
        step_t /= 2
        step_p /= 2

    n_best = _angles_to_bloch(np.array(th), np.array(ph))
    value = holevo_quantity(rho, ProjectiveMeasurement(n_best / np.linalg.norm(n_best)))
    return OptimizationResult(
        value=value,
        argmax_bloch=n_best,
        grid_resolution=(n_polar, n_azimuth),
        refined=True,
    )


def discord_numeric(
    rho: DensityMatrix, resolution: tuple[int, int] | int = DEFAULT_RESOLUTION
) -> float:
    """Total mutual information minus the grid-maximized Holevo quantity."""
    return total_mutual_information(rho) - maximize_holevo(rho, resolution).value


def _as_basis_matrix(basis) -> np.ndarray:
    b = np.asarray(basis, dtype=complex)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        b = np.stack([np.asarray(v, dtype=complex).ravel() for v in basis], axis=1)
    return b


def mub_check(bases, tol: float = 1e-12) -> bool:
    """True when all cross-basis squared overlaps equal 1/d.

    Each basis is given as columns of a matrix (or a sequence of vectors)
    and must be orthonormal within `tol`.
    """
    mats = [_as_basis_matrix(b) for b in bases]
    d = mats[0].shape[0]
    for m in mats:
        if np.max(np.abs(m.conj().T @ m - np.eye(d))) > tol:
            raise ValueError("basis is not orthonormal within tolerance")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            overlaps = np.abs(mats[i].conj().T @ mats[j]) ** 2
            if np.max(np.abs(overlaps - 1.0 / d)) > tol:
                return False
    return True


def pauli_mub_bases() -> list[np.ndarray]:
    """The three qubit bases: z eigenbasis, x eigenbasis, y eigenbasis."""
    s = 1 / np.sqrt(2)
    z = np.eye(2, dtype=complex)
    x = np.array([[s, s], [s, -s]], dtype=complex)
    y = np.array([[s, s], [1j * s, -1j * s]], dtype=complex)
    return [z, x, y]


def spectrum_crosscheck(p: BellDiagonalParams) -> float:
    """Max deviation between closed-form and numeric eigenvalues."""
    p.validate()
    numeric = bell_diagonal(p).spectrum()
    return float(np.max(np.abs(bd_spectrum(p) - numeric)))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: deviation {self.deviation:.3e} "
            f"(tolerance {self.tolerance:.1e})"
        )


def _axis_angle_deg(n: np.ndarray, axis: int) -> float:
    """Angle in degrees between a direction and a coordinate axis line."""
    c = abs(float(n[axis])) / np.linalg.norm(n)
    return float(np.degrees(np.arccos(min(c, 1.0))))


def run_verification(seed: int = 0, samples: int = 1000) -> list[CheckResult]:
    """Seeded cross-check suite; every check pairs an implementation with an
    independent route to the same number."""
    rng = np.random.default_rng(seed)
    checks = []

    # mutual unbiasedness of the three Pauli eigenbases
    checks.append(CheckResult("pauli-bases-mutually-unbiased", mub_check(pauli_mub_bases()), 0.0, 1e-12))
    z = pauli_mub_bases()[0]
    checks.append(CheckResult("repeated-basis-rejected", not mub_check([z, z]), 0.0, 1e-12))

    # closed-form spectra vs the numeric eigensolver
    dev = max(spectrum_crosscheck(random_bd_params(rng)) for _ in range(samples))
    checks.append(CheckResult("bell-diagonal-spectrum-crosscheck", dev < 1e-10, dev, 1e-10))

    # closed-form classical correlation vs grid maximization; discord likewise
    n_opt = max(10, samples // 50)
    dev_c = dev_d = dev_ax = 0.0
    for _ in range(n_opt):
        p = random_bd_params(rng)
        state = bell_diagonal(p)
        opt = maximize_holevo(state)
        dev_c = max(dev_c, abs(classical_correlation(p) - opt.value))
        dev_d = max(dev_d, abs(discord_bd(p) - (total_mutual_information(state) - opt.value)))
        mags = np.abs(p.as_array())
        order = np.argsort(mags)[::-1]
        if mags[order[0]] - mags[order[1]] > 1e-3:  # skip near-ties
            dev_ax = max(dev_ax, _axis_angle_deg(opt.argmax_bloch, int(order[0])))
    checks.append(CheckResult("classical-correlation-vs-grid-maximum", dev_c < 1e-4, dev_c, 1e-4))
    checks.append(CheckResult("closed-form-discord-vs-numeric", dev_d < 1e-4, dev_d, 1e-4))
    checks.append(CheckResult("holevo-argmax-on-strongest-axis", dev_ax < 5.0, dev_ax, 5.0))

    # z-axis closed form vs measured mutual information
    dev = 0.0
    for _ in range(min(samples, 200)):
        p = random_bd_params(rng)
        dev = max(dev, abs(q1(p) - complementary_correlations(bell_diagonal(p))[2]))
    checks.append(CheckResult("z-correlation-closed-form-vs-measured", dev < 1e-12, dev, 1e-12))

    # ordered-frame inequalities: with |c| sorted so the strongest axis is x
    # and the median axis is z, Q1 <= D and Q1 + C <= I
    dev_qd = dev_qci = -np.inf
    for _ in range(samples):
        p = random_bd_params(rng)
        mags = np.sort(np.abs(p.as_array()))[::-1]
        q_med = correlation_bits(mags[1])
        c = classical_correlation(p)
        d = discord_bd(p)
        i = bd_mutual_information(p)
        dev_qd = max(dev_qd, q_med - d)
        dev_qci = max(dev_qci, q_med + c - i)
    checks.append(CheckResult("ordered-frame-q1-below-discord", dev_qd <= 1e-12, dev_qd, 1e-12))
    checks.append(CheckResult("ordered-frame-q1-plus-c-below-i", dev_qci <= 1e-12, dev_qci, 1e-12))

    # partial transpose is an involution on random states
    dev = 0.0
    for _ in range(min(samples, 100)):
        rho = random_density_matrix(rng, (2, 2))
        ptpt = partial_transpose(partial_transpose(rho.matrix, (2, 2), 0), (2, 2), 0)
        dev = max(dev, float(np.max(np.abs(ptpt - rho.matrix))))
    checks.append(CheckResult("partial-transpose-involution", dev < 1e-14, dev, 1e-14))

    # kron associativity
    dev = 0.0
    for _ in range(min(samples, 100)):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        dev = max(dev, float(np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c))))))
    checks.append(CheckResult("kron-associativity", dev < 1e-12, dev, 1e-12))

    return checks


def verification_report(checks: list[CheckResult]) -> str:
    lines = [c.line() for c in checks]
    lines.append(OVERLAP_CONVENTION_NOTE)
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
