"""Entanglement distribution with separable Bell-diagonal states.

Protocol: Alice applies CNOT on qubits A and C (A control), sends C to Bob,
Bob applies CNOT on B and C (B control). Distribution is successful when the
partial transpose over A of the state after Alice's CNOT has a negative
eigenvalue, and the protocol is valid only if the C|AB cut stays PPT at the
send step.

The ancilla is a free protocol choice; `edss_useful` searches a grid of
Bloch angles and radii. Pure ancillas (radius 1) alone never succeed with a
PPT send step: for an ancilla on the CNOT axis the state after Alice's CNOT
is symmetric under swapping A and C, so the A|BC and C|AB partial-transpose
spectra coincide, and off-axis pure ancillas behave the same way to within
float noise. The default radius grid therefore reaches into mixed ancillas.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .correlations import complementary_correlations, classical_correlation, discord_bd, q1, total_mutual_information
from .entanglement import PPT_TOL, PptVerdict, negativity, ppt_verdict, pt_spectrum
from .matcore import I2, PAULIS, kron, partial_transpose
from .states import (
    BellDiagonalParams,
    DensityMatrix,
    bd_rank,
    bell_diagonal,
    is_separable_bd,
)

STAGES = ("initial", "after_alice", "after_bob")
CUT_FACTORS = (0, 2, 1)  # A|BC, C|AB, B|AC


def cnot(n_qubits: int, control: int, target: int) -> np.ndarray:
    """CNOT on the named factors of an n-qubit register, identity elsewhere."""
    if control == target:
        raise ValueError("control and target must differ")
    for idx in (control, target):
        if idx < 0 or idx >= n_qubits:
            raise ValueError(f"qubit index {idx} out of range for {n_qubits} qubits")
    dim = 2**n_qubits
    u = np.zeros((dim, dim))
    for b in range(dim):
        if (b >> (n_qubits - 1 - control)) & 1:
            b2 = b ^ (1 << (n_qubits - 1 - target))
        else:
            b2 = b
        u[b2, b] = 1.0
    return u


def ancilla_state(theta: float, phi: float, radius: float = 1.0) -> DensityMatrix:
    """Qubit state (I + r n . sigma)/2 with Bloch direction (theta, phi)."""
    if not (0.0 <= radius <= 1.0):
        raise ValueError(f"Bloch radius {radius} outside [0, 1]")
    n = np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )
    m = (I2 + radius * sum(c * s for c, s in zip(n, PAULIS))) / 2
    return DensityMatrix(m, (2,))


DEFAULT_RADII = (1.0, 0.8, 0.6, 0.4, 0.2)


@dataclass(frozen=True)
class AncillaSpec:
    """Either a fixed ancilla or a search grid over Bloch angles and radii."""

    mode: str = "grid"
    theta: float = 0.0
    phi: float = 0.0
    radius: float = 1.0
    n_polar: int = 24
    n_azimuth: int = 48
    radii: tuple[float, ...] = DEFAULT_RADII
    refine: bool = True

    @classmethod
    def fixed(cls, theta: float, phi: float, radius: float = 1.0) -> "AncillaSpec":
        return cls(mode="fixed", theta=float(theta), phi=float(phi), radius=float(radius))

    @classmethod
    def search(
        cls,
        n_polar: int = 24,
        n_azimuth: int = 48,
        radii: tuple[float, ...] = DEFAULT_RADII,
        refine: bool = True,
    ) -> "AncillaSpec":
        return cls(mode="grid", n_polar=n_polar, n_azimuth=n_azimuth, radii=tuple(radii), refine=refine)


@dataclass(frozen=True)
class ProtocolTrace:
    """Per-stage record of one protocol run."""

    initial_state: DensityMatrix
    after_alice: DensityMatrix
    after_bob: DensityMatrix
    stage_verdicts: dict[str, tuple[PptVerdict, ...]]
    pt_spectra: dict[str, dict[str, np.ndarray]]
    final_ab_negativity: float
    success: bool

    @property
    def send_step_ppt(self) -> bool:
        # C|AB verdict after Alice's CNOT
        return self.stage_verdicts["after_alice"][1].is_ppt


def run_protocol(rho_ab: DensityMatrix, ancilla: DensityMatrix) -> ProtocolTrace:
    """Run the full protocol and record all stage verdicts and PT spectra."""
    if rho_ab.dims != (2, 2):
        raise ValueError(f"expected a two-qubit state, got dims {rho_ab.dims}")
    if ancilla.dims != (2,):
        raise ValueError(f"expected a single-qubit ancilla, got dims {ancilla.dims}")
    initial = DensityMatrix(kron(rho_ab.matrix, ancilla.matrix), (2, 2, 2))
    u_ac = cnot(3, 0, 2)
    after_alice = DensityMatrix(u_ac @ initial.matrix @ u_ac.T, (2, 2, 2))
    u_bc = cnot(3, 1, 2)
    after_bob = DensityMatrix(u_bc @ after_alice.matrix @ u_bc.T, (2, 2, 2))

    verdicts: dict[str, tuple[PptVerdict, ...]] = {}
    spectra: dict[str, dict[str, np.ndarray]] = {}
    for stage, state in zip(STAGES, (initial, after_alice, after_bob)):
        vs = tuple(ppt_verdict(state, f) for f in CUT_FACTORS)
        verdicts[stage] = vs
        spectra[stage] = {v.cut: pt_spectrum(state, f) for v, f in zip(vs, CUT_FACTORS)}

    success = verdicts["after_alice"][0].min_eigenvalue < -PPT_TOL
    final_ab = after_bob.partial_trace([0, 1])
    return ProtocolTrace(
        initial_state=initial,
        after_alice=after_alice,
        after_bob=after_bob,
        stage_verdicts=verdicts,
        pt_spectra=spectra,
        final_ab_negativity=negativity(final_ab, 0),
        success=success,
    )


_U_AC = cnot(3, 0, 2)
_DIMS3 = (2, 2, 2)


def _min_pt_after_alice(rho4: np.ndarray, anc2: np.ndarray) -> tuple[float, np.ndarray]:
    """Min eigenvalue of PT over A after Alice's CNOT, plus the 8x8 state."""
    rabc = _U_AC @ np.kron(rho4, anc2) @ _U_AC.T
    lam = np.linalg.eigvalsh(partial_transpose(rabc, _DIMS3, 0))
    return float(lam[0]), rabc


def _min_pt_c(rabc: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(partial_transpose(rabc, _DIMS3, 2))[0])


@dataclass(frozen=True)
class EdssSearchResult:
    """Outcome of the ancilla search for one input state."""

    useful: bool
    witness: tuple[float, float, float] | None  # (theta, phi, radius)
    min_pt_eigenvalue: float  # best over ancillas with a PPT send step
    npt_send_success_seen: bool  # some ancilla succeeded only via an NPT send step


def _search_points(spec: AncillaSpec):
    thetas = np.linspace(0.0, np.pi, spec.n_polar)
    phis = np.linspace(0.0, 2 * np.pi, spec.n_azimuth, endpoint=False)
    for r in spec.radii:
        for th in thetas:
            for ph in phis:
                yield th, ph, r


def _refinement_points(center: tuple[float, float, float], spec: AncillaSpec):
    th0, ph0, r0 = center
    dth = 0.5 * np.pi / max(spec.n_polar - 1, 1)
    dph = 0.5 * 2 * np.pi / spec.n_azimuth
    dr = 0.5 * (max(spec.radii) - min(spec.radii)) / max(len(spec.radii) - 1, 1)
    for k in (-1, 0, 1):
        r = min(max(r0 + k * dr, 0.0), 1.0)
        for i, j in itertools.product((-2, -1, 0, 1, 2), repeat=2):
            th = min(max(th0 + i * dth, 0.0), np.pi)
            ph = (ph0 + j * dph) % (2 * np.pi)
            yield th, ph, r


def edss_useful(
    p: BellDiagonalParams, ancilla: AncillaSpec | None = None
) -> EdssSearchResult:
    """Search for an ancilla that distributes entanglement with a PPT send step.

    The input must be a physical, separable correlation triple. Returns the
    first witness found in deterministic grid order, or the best candidate
    statistics when none succeeds.
    """
    p.validate()
    if not is_separable_bd(p):
        raise ValueError(
            f"input state ({p.c1}, {p.c2}, {p.c3}) is entangled; "
            "the protocol requires a separable resource"
        )
    spec = ancilla if ancilla is not None else AncillaSpec.search()
    rho4 = bell_diagonal(p).matrix

    if spec.mode == "fixed":
        points = [(spec.theta, spec.phi, spec.radius)]
    else:
        points = _search_points(spec)

    best_ppt = np.inf  # most negative min PT_A among send-PPT ancillas
    best_any = np.inf
    best_center = None
    npt_seen = False

    def consider(th, ph, r):
        nonlocal best_ppt, best_any, best_center, npt_seen
        anc = ancilla_state(th, ph, r)
        m_a, rabc = _min_pt_after_alice(rho4, anc.matrix)
        if m_a < best_any:
            best_any = m_a
            best_center = (th, ph, r)
        if m_a >= best_ppt and m_a >= -PPT_TOL:
            return None
        m_c = _min_pt_c(rabc)
        if m_c >= -PPT_TOL:
            if m_a < best_ppt:
                best_ppt = m_a
            if m_a < -PPT_TOL:
                return (th, ph, r)
        elif m_a < -PPT_TOL:
            npt_seen = True
        return None

    for th, ph, r in points:
        hit = consider(th, ph, r)
        if hit is not None:
            return EdssSearchResult(True, hit, best_ppt, npt_seen)

    if spec.mode == "grid" and spec.refine and best_center is not None:
        for th, ph, r in _refinement_points(best_center, spec):
            hit = consider(th, ph, r)
            if hit is not None:
                return EdssSearchResult(True, hit, best_ppt, npt_seen)

    min_pt = best_ppt if np.isfinite(best_ppt) else float("nan")
    return EdssSearchResult(False, None, min_pt, npt_seen)


SWEEP_COLUMNS = (
    "c1",
    "c2",
    "c3",
    "i_x",
    "i_y",
    "i_z",
    "C",
    "D",
    "Q1",
    "I",
    "negativity",
    "bd_rank",
    "edss_useful",
    "witness_theta",
    "witness_phi",
    "witness_r",
    "min_pt_eigenvalue",
)


@dataclass(frozen=True)
class SweepRow:
    c1: float
    c2: float
    c3: float
    i_x: float
    i_y: float
    i_z: float
    C: float
    D: float
    Q1: float
    I: float
    negativity: float
    bd_rank: int
    edss_useful: bool
    witness_theta: float | None
    witness_phi: float | None
    witness_r: float | None
    min_pt_eigenvalue: float
    # not a CSV column: a success was seen but only through an NPT send step
    protocol_invalid: bool = field(default=False, compare=False)


def sweep(resolution: int, ancilla: AncillaSpec | None = None) -> list[SweepRow]:
    """Evaluate every physical separable point of a cubic grid on [-1, 1]^3.

    Rows are ordered lexicographically by grid index.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2 per axis")
    axis = np.linspace(-1.0, 1.0, resolution)
    rows = []
    for v1 in axis:
        for v2 in axis:
            for v3 in axis:
                p = BellDiagonalParams(float(v1), float(v2), float(v3))
                if not p.is_physical() or not is_separable_bd(p):
                    continue
                state = bell_diagonal(p)
                i_x, i_y, i_z = complementary_correlations(state)
                res = edss_useful(p, ancilla)
                wit = res.witness if res.witness is not None else (None, None, None)
                rows.append(
                    SweepRow(
                        c1=p.c1,
                        c2=p.c2,
                        c3=p.c3,
                        i_x=i_x,
                        i_y=i_y,
                        i_z=i_z,
                        C=classical_correlation(p),
                        D=discord_bd(p),
                        Q1=q1(p),
                        I=total_mutual_information(state),
                        negativity=negativity(state, 0),
                        bd_rank=bd_rank(p),
                        edss_useful=res.useful,
                        witness_theta=wit[0],
                        witness_phi=wit[1],
                        witness_r=wit[2],
                        min_pt_eigenvalue=res.min_pt_eigenvalue,
                        protocol_invalid=(not res.useful) and res.npt_send_success_seen,
                    )
                )
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{v:.12g}"


def sweep_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows as CSV ('.' decimals, LF line endings)."""
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, col)) for col in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


def sweep_summary(rows: list[SweepRow]) -> str:
    useful = sum(r.edss_useful for r in rows)
    invalid = sum(r.protocol_invalid for r in rows)
    not_useful = len(rows) - useful - invalid
    return (
        f"rows {len(rows)}: useful {useful}, not useful {not_useful}, "
        f"protocol-invalid (NPT send only) {invalid}"
    )
