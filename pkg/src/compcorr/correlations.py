"""Measurement statistics and correlation measures for two-qubit states.

Covers outcome mutual information for same-axis measurements on both sides,
the Holevo quantity of the ensemble induced on Alice by Bob's measurement,
and the Bell-diagonal closed forms for classical correlation, discord and
total mutual information. All quantities are in bits.
"""

from dataclasses import dataclass

import numpy as np

from .matcore import I2, LOG2, PAULIS, kron, von_neumann_entropy
from .states import BellDiagonalParams, DensityMatrix, bd_spectrum

UNIT_TOL = 1e-12
PROB_CLAMP = 1e-12
# Measurement branches with weight below this contribute nothing.
ZERO_BRANCH = 1e-15


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """A qubit measurement basis given by its unit Bloch vector n.

    Projectors are (I +- n . sigma)/2.
    """

    bloch: np.ndarray

    def __post_init__(self):
        n = np.array(self.bloch, dtype=float).ravel()
        if n.shape != (3,):
            raise ValueError("Bloch vector must have three components")
        if abs(np.linalg.norm(n) - 1.0) > UNIT_TOL:
            raise ValueError(f"Bloch vector norm {np.linalg.norm(n)} is not 1")
        n.flags.writeable = False
        object.__setattr__(self, "bloch", n)

    @classmethod
    def x(cls):
        return cls(np.array([1.0, 0.0, 0.0]))

    @classmethod
    def y(cls):
        return cls(np.array([0.0, 1.0, 0.0]))

    @classmethod
    def z(cls):
        return cls(np.array([0.0, 0.0, 1.0]))

    @classmethod
    def from_angles(cls, theta: float, phi: float):
        return cls(
            np.array(
                [
                    np.sin(theta) * np.cos(phi),
                    np.sin(theta) * np.sin(phi),
                    np.cos(theta),
                ]
            )
        )

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        ns = sum(c * s for c, s in zip(self.bloch, PAULIS))
        return (I2 + ns) / 2, (I2 - ns) / 2


@dataclass(frozen=True)
class JointDistribution:
    """2x2 table of outcome probabilities for a pair of local measurements."""

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (2, 2):
            raise ValueError("joint distribution must be a 2x2 table")
        if p.min() < -PROB_CLAMP:
            raise ValueError(f"negative probability {p.min():.3e}")
        p = np.clip(p, 0.0, None)
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)


def joint_distribution(
    rho: DensityMatrix, mA: ProjectiveMeasurement, mB: ProjectiveMeasurement
) -> JointDistribution:
    """Outcome table p(i, j) = Tr[rho (Pi_i (x) Pi_j)]."""
    if rho.dims != (2, 2):
        raise ValueError(f"expected a two-qubit state, got dims {rho.dims}")
    pa = mA.projectors()
    pb = mB.projectors()
    table = np.array(
        [[np.trace(rho.matrix @ kron(pa[i], pb[j])).real for j in (0, 1)] for i in (0, 1)]
    )
    return JointDistribution(table)


def outcome_mutual_information(d: JointDistribution) -> float:
    """Shannon mutual information of the outcome table, in bits.

    Natural-log internals, converted once to bits.
    """
    p = d.p
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    acc = 0.0
    for i in (0, 1):
        for j in (0, 1):
            if p[i, j] > ZERO_BRANCH:
                acc += p[i, j] * np.log(p[i, j] / (pa[i] * pb[j]))
    return float(acc / LOG2)


def complementary_correlations(rho: DensityMatrix) -> tuple[float, float, float]:
    """I(sigma_i : sigma_i) for same-axis measurements along x, y, z."""
    out = []
    for m in (ProjectiveMeasurement.x(), ProjectiveMeasurement.y(), ProjectiveMeasurement.z()):
        out.append(outcome_mutual_information(joint_distribution(rho, m, m)))
    return tuple(out)


def holevo_quantity(rho: DensityMatrix, mB: ProjectiveMeasurement) -> float:
    """Holevo quantity of Alice's conditional ensemble under Bob's measurement.

    chi = S(sum_i p_i rho_i^A) - sum_i p_i S(rho_i^A), in bits. Outcomes of
    probability zero are skipped.
    """
    if rho.dims != (2, 2):
        raise ValueError(f"expected a two-qubit state, got dims {rho.dims}")
    r = rho.matrix.reshape(2, 2, 2, 2)
    avg = np.zeros((2, 2), dtype=complex)
    cond_term = 0.0
    for proj in mB.projectors():
        # Tr_B[rho (I (x) Pi)], unnormalized conditional state on Alice
        x = np.einsum("abce,eb->ac", r, proj)
        p = np.trace(x).real
        avg += x
        if p > ZERO_BRANCH:
            cond_term += p * von_neumann_entropy(x / p)
    return von_neumann_entropy(avg) - cond_term


def correlation_bits(c: float) -> float:
    """(1+c)/2 log2(1+c) + (1-c)/2 log2(1-c); even in c, 1 bit at |c| = 1."""
    c = abs(float(c))
    if c > 1 + PROB_CLAMP:
        raise ValueError(f"correlation coefficient {c} outside [-1, 1]")
    c = min(c, 1.0)
    acc = (1 + c) / 2 * np.log(1 + c)
    if c < 1.0:
        acc += (1 - c) / 2 * np.log(1 - c)
    # rounding can push tiny |c| a hair below zero
    return max(float(acc / LOG2), 0.0)


def classical_correlation(p: BellDiagonalParams) -> float:
    """Maximum Holevo quantity over Bob's projective measurements, closed form.

    Attained along the axis carrying the largest |c_i|.
    """
    p.validate()
    return correlation_bits(np.max(np.abs(p.as_array())))


def q1(p: BellDiagonalParams) -> float:
    """Outcome mutual information for z-axis measurements on both sides."""
    return correlation_bits(p.c3)


def total_mutual_information(rho: DensityMatrix) -> float:
    """S(rho_A) + S(rho_B) - S(rho), in bits."""
    sa = rho.partial_trace([0]).entropy()
    sb = rho.partial_trace([1]).entropy()
    return sa + sb - rho.entropy()


def bd_mutual_information(p: BellDiagonalParams) -> float:
    """Closed form 2 - S(rho) for Bell-diagonal states."""
    p.validate()
    lam = bd_spectrum(p)
    nz = lam[lam > ZERO_BRANCH]
    s = float(-np.sum(nz * np.log(nz)) / LOG2)
    return 2.0 - s


def discord_bd(p: BellDiagonalParams) -> float:
    """Quantum discord of a Bell-diagonal state, closed form.

    Total mutual information minus classical correlation; clamped at zero
    against float noise.
    """
    d = bd_mutual_information(p) - classical_correlation(p)
    if d < -1e-9:
        raise AssertionError(f"closed-form discord came out negative: {d}")
    return max(d, 0.0)


@dataclass(frozen=True)
class CorrelationReport:
    """All scalar measures for one state."""

    i_x: float
    i_y: float
    i_z: float
    classical_c: float
    discord: float
    q1: float
    mutual_info: float
    negativity: float
    e_r: float
    all_complementary_nonzero: bool

    FIELDS = (
        "i_x",
        "i_y",
        "i_z",
        "classical_c",
        "discord",
        "q1",
        "mutual_info",
        "negativity",
        "e_r",
        "all_complementary_nonzero",
    )

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    def to_text(self) -> str:
        lines = []
        for k in self.FIELDS:
            v = getattr(self, k)
            if isinstance(v, bool):
                lines.append(f"{k} {str(v).lower()}")
            else:
                lines.append(f"{k} {v:.12g}")
        return "\n".join(lines) + "\n"
