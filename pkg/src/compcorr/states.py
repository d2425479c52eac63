"""State constructors: Bell-diagonal families, Bloch decomposition, normal form.

Bell-diagonal states are parameterized by the correlation triple (c1, c2, c3)
of rho = (1/4)(I (x) I + sum_n c_n sigma_n (x) sigma_n). Their four eigenvalues
in the Bell basis are closed-form and are used throughout as the exact
reference against numeric eigensolves.
"""

import json
from dataclasses import dataclass

import numpy as np

from .matcore import (
    I2,
    PAULIS,
    hermitian_spectrum,
    is_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    von_neumann_entropy,
)

# User-supplied density matrices: PSD / trace / Hermiticity tolerance.
STATE_TOL = 1e-10
# Closed-form Bell-basis eigenvalues are exact up to rounding.
PHYSICALITY_TOL = 1e-12

_BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive semidefinite matrix with factor dims."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        total = int(np.prod(dims))
        if m.shape != (total, total):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        if not is_hermitian(m, STATE_TOL):
            raise ValueError("density matrix is not Hermitian within 1e-10")
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TOL:
            raise ValueError(f"trace {tr} differs from 1 by more than 1e-10")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -STATE_TOL:
            raise ValueError(f"negative eigenvalue {lo:.3e} below -1e-10")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_pure(cls, vec: np.ndarray, dims) -> "DensityMatrix":
        v = np.asarray(vec, dtype=complex).ravel()
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()), tuple(dims))

    def partial_trace(self, keep) -> "DensityMatrix":
        reduced = partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(reduced, tuple(self.dims[k] for k in sorted(keep)))

    def partial_transpose(self, factor: int) -> np.ndarray:
        return partial_transpose(self.matrix, self.dims, factor)

    def spectrum(self) -> np.ndarray:
        return hermitian_spectrum(self.matrix)

    def entropy(self) -> float:
        return von_neumann_entropy(self.matrix)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation triple (c1, c2, c3); one point of the Bell-diagonal tetrahedron."""

    c1: float
    c2: float
    c3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def eigenvalues(self) -> np.ndarray:
        """Closed-form eigenvalues in Bell-basis order (phi+, phi-, psi+, psi-)."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return np.array(
            [
                (1 + c1 - c2 + c3) / 4,
                (1 - c1 + c2 + c3) / 4,
                (1 + c1 + c2 - c3) / 4,
                (1 - c1 - c2 - c3) / 4,
            ]
        )

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return bool(self.eigenvalues().min() >= -tol)

    def validate(self, tol: float = PHYSICALITY_TOL) -> None:
        eig = self.eigenvalues()
        i = int(np.argmin(eig))
        if eig[i] < -tol:
            raise ValueError(
                f"unphysical correlation triple ({self.c1}, {self.c2}, {self.c3}): "
                f"Bell-basis eigenvalue for {_BELL_LABELS[i]} is {eig[i]:.6g}"
            )


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors and the 3x3 correlation matrix of a two-qubit state."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray


def _bell_vector(which: str) -> np.ndarray:
    s = 1 / np.sqrt(2)
    return {
        "phi+": np.array([s, 0, 0, s], dtype=complex),
        "phi-": np.array([s, 0, 0, -s], dtype=complex),
        "psi+": np.array([0, s, s, 0], dtype=complex),
        "psi-": np.array([0, s, -s, 0], dtype=complex),
    }[which]


PHI_PLUS = _bell_vector("phi+")
PHI_MINUS = _bell_vector("phi-")
PSI_PLUS = _bell_vector("psi+")
PSI_MINUS = _bell_vector("psi-")


def bell_diagonal(p: BellDiagonalParams) -> DensityMatrix:
    """Build the state (1/4)(I (x) I + sum_n c_n sigma_n (x) sigma_n)."""
    p.validate()
    m = kron(I2, I2).astype(complex)
    for c, sigma in zip(p.as_array(), PAULIS):
        m = m + c * kron(sigma, sigma)
    return DensityMatrix(m / 4.0, (2, 2))


def bd_spectrum(p: BellDiagonalParams) -> np.ndarray:
    """The four closed-form eigenvalues, sorted ascending."""
    return np.sort(p.eigenvalues())


def is_separable_bd(p: BellDiagonalParams) -> bool:
    """PPT (= separability for two qubits): max eigenvalue at most 1/2."""
    p.validate()
    return bool(p.eigenvalues().max() <= 0.5 + PHYSICALITY_TOL)


def bd_rank(p: BellDiagonalParams, tol: float = PHYSICALITY_TOL) -> int:
    return int(np.sum(p.eigenvalues() > tol))


def bloch_decompose(rho: DensityMatrix) -> BlochDecomposition:
    """Extract local Bloch vectors and the correlation matrix T."""
    if rho.dims != (2, 2):
        raise ValueError(f"expected a two-qubit state, got dims {rho.dims}")
    m = rho.matrix
    a = np.array([np.trace(m @ kron(s, I2)).real for s in PAULIS])
    b = np.array([np.trace(m @ kron(I2, s)).real for s in PAULIS])
    T = np.array(
        [[np.trace(m @ kron(sn, sm)).real for sm in PAULIS] for sn in PAULIS]
    )
    return BlochDecomposition(a=a, b=b, T=T)


def bloch_reconstruct(dec: BlochDecomposition) -> DensityMatrix:
    """Rebuild the state from its Bloch decomposition."""
    m = kron(I2, I2).astype(complex)
    for n in range(3):
        m = m + dec.a[n] * kron(PAULIS[n], I2)
        m = m + dec.b[n] * kron(I2, PAULIS[n])
        for k in range(3):
            m = m + dec.T[n, k] * kron(PAULIS[n], PAULIS[k])
    return DensityMatrix(m / 4.0, (2, 2))


def _su2_from_rotation(R: np.ndarray) -> np.ndarray:
    """SU(2) element whose adjoint action on the Pauli vector is R in SO(3).

    Quaternion extraction (branch on the largest diagonal entry), with
    U = q0 I - i (q1 sx + q2 sy + q3 sz).
    """
    t = np.trace(R)
    if t > 0:
        s = np.sqrt(1.0 + t) * 2
        q = np.array(
            [s / 4, (R[2, 1] - R[1, 2]) / s, (R[0, 2] - R[2, 0]) / s, (R[1, 0] - R[0, 1]) / s]
        )
    else:
        i = int(np.argmax(np.diag(R)))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = np.sqrt(1.0 + R[i, i] - R[j, j] - R[k, k]) * 2
        q = np.zeros(4)
        q[0] = (R[k, j] - R[j, k]) / s
        q[1 + i] = s / 4
        q[1 + j] = (R[j, i] + R[i, j]) / s
        q[1 + k] = (R[k, i] + R[i, k]) / s
    q = q / np.linalg.norm(q)
    return q[0] * I2 - 1j * (q[1] * PAULIS[0] + q[2] * PAULIS[1] + q[3] * PAULIS[2])


def rotation_of_su2(U: np.ndarray) -> np.ndarray:
    """SO(3) matrix R with R_ij = (1/2) Tr(sigma_i U sigma_j U^dag)."""
    return np.array(
        [
            [0.5 * np.trace(si @ U @ sj @ U.conj().T).real for sj in PAULIS]
            for si in PAULIS
        ]
    )


def normal_form(rho: DensityMatrix) -> tuple[DensityMatrix, BlochDecomposition]:
    """Rotate by local unitaries so the correlation matrix T becomes diagonal.

    The diagonalization is a signed SVD with both rotation factors kept in
    SO(3) (signs absorbed into the diagonal), since only special orthogonal
    rotations lift to local unitaries.
    """
    dec = bloch_decompose(rho)
    U, s, Vt = np.linalg.svd(dec.T)
    s = s.copy()
    if np.linalg.det(U) < 0:
        U[:, 2] *= -1
        s[2] *= -1
    if np.linalg.det(Vt) < 0:
        Vt[2, :] *= -1
        s[2] *= -1
    RA, RB = U.T, Vt
    UA = _su2_from_rotation(RA)
    UB = _su2_from_rotation(RB)
    local = kron(UA, UB)
    out = DensityMatrix(local @ rho.matrix @ local.conj().T, (2, 2))
    return out, bloch_decompose(out)


def family_eq15(c3: float) -> DensityMatrix:
    """Mixture (1+c3)/2 |psi+><psi+| + (1-c3)/2 |phi+><phi+| for |c3| <= 1."""
    c3 = float(c3)
    if abs(c3) > 1:
        raise ValueError(f"c3 = {c3} outside [-1, 1]")
    m = (1 + c3) / 2 * np.outer(PSI_PLUS, PSI_PLUS.conj()) + (1 - c3) / 2 * np.outer(
        PHI_PLUS, PHI_PLUS.conj()
    )
    return DensityMatrix(m, (2, 2))


def werner(p: float) -> DensityMatrix:
    """Singlet-weighted Werner state p |psi-><psi-| + (1-p) I/4.

    Bell-diagonal with c1 = c2 = c3 = -p; physical for p in [-1/3, 1].
    """
    p = float(p)
    if not (-1 / 3 - PHYSICALITY_TOL <= p <= 1 + PHYSICALITY_TOL):
        raise ValueError(f"Werner weight {p} outside physical range [-1/3, 1]")
    m = p * np.outer(PSI_MINUS, PSI_MINUS.conj()) + (1 - p) * np.eye(4) / 4
    return DensityMatrix(m, (2, 2))


def classically_correlated() -> DensityMatrix:
    """The state (|00><00| + |11><11|) / 2, Bell-diagonal with c = (0, 0, 1)."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 0.5
    m[3, 3] = 0.5
    return DensityMatrix(m, (2, 2))


def bd_params_of(rho: DensityMatrix, tol: float = 1e-8) -> BellDiagonalParams:
    """Correlation triple of a state with maximally mixed marginals.

    Requires vanishing local Bloch vectors; the T matrix must be diagonal
    within `tol` (otherwise use normal_form first).
    """
    dec = bloch_decompose(rho)
    if np.linalg.norm(dec.a) > tol or np.linalg.norm(dec.b) > tol:
        raise ValueError("state does not have maximally mixed marginals")
    off = dec.T - np.diag(np.diag(dec.T))
    if np.max(np.abs(off)) > tol:
        raise ValueError("correlation matrix is not diagonal; not Bell-diagonal on these axes")
    return BellDiagonalParams(*np.diag(dec.T))


def random_bd_params(rng: np.random.Generator) -> BellDiagonalParams:
    """Uniform sample of the physical Bell-diagonal tetrahedron (rejection)."""
    while True:
        c = rng.uniform(-1, 1, 3)
        p = BellDiagonalParams(*c)
        if p.is_physical():
            return p


def random_density_matrix(rng: np.random.Generator, dims) -> DensityMatrix:
    """Ginibre-distributed full-rank random state."""
    dims = tuple(dims)
    d = int(np.prod(dims))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)


def save_state(rho: DensityMatrix, path) -> None:
    """Write a state file: dims plus row-major real and imaginary parts."""
    doc = {
        "dims": list(rho.dims),
        "matrix_re": rho.matrix.real.ravel().tolist(),
        "matrix_im": rho.matrix.imag.ravel().tolist(),
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def load_state(path) -> DensityMatrix:
    """Read a state file; Hermiticity / trace / PSD are re-verified on load."""
    with open(path) as f:
        doc = json.load(f)
    dims = tuple(int(d) for d in doc["dims"])
    d = int(np.prod(dims))
    re = np.array(doc["matrix_re"], dtype=float).reshape(d, d)
    im = np.array(doc["matrix_im"], dtype=float).reshape(d, d)
    return DensityMatrix(re + 1j * im, dims)
