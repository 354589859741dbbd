"""Constructors and predicates for the concrete bipartite states used
throughout the package: Schmidt-form pure states with their closed-form
partial-transpose spectra, maximally entangled families, absolutely-PPT
reference spectra, bound entangled edge states and PPT tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    BadParamError,
    BadRankError,
    BadSpectrumError,
    IndexOutOfRangeError,
    NormViolationError,
    RankTooLargeError,
    TraceViolationError,
)
from .linalg import BipartiteOperator, eig_hermitian, pt_mat

# Singular values above this threshold count toward the Schmidt rank.
SCHMIDT_RANK_TOL = 1e-8


@dataclass
class PureState:
    """Bipartite unit vector in Schmidt form.

    coeffs are positive and non-increasing with unit square sum; basis_a
    and basis_b hold the d orthonormal local vectors as rows.
    """

    m: int
    n: int
    coeffs: np.ndarray
    basis_a: np.ndarray = field(repr=False)
    basis_b: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        self.basis_a = np.asarray(self.basis_a, dtype=complex)
        self.basis_b = np.asarray(self.basis_b, dtype=complex)
        d = len(self.coeffs)
        if d > min(self.m, self.n):
            raise RankTooLargeError(
                f"rank {d} exceeds min dimension {min(self.m, self.n)}"
            )
        if abs(float(self.coeffs @ self.coeffs) - 1.0) > 1e-9:
            raise NormViolationError("Schmidt coefficients must square-sum to 1")
        for basis, dim in ((self.basis_a, self.m), (self.basis_b, self.n)):
            if basis.shape != (d, dim):
                raise ValueError(f"basis shape {basis.shape} != ({d}, {dim})")
            gram = basis.conj() @ basis.T
            if np.abs(gram - np.eye(d)).max() > 1e-10:
                raise ValueError("local basis vectors are not orthonormal")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def coefficient_matrix(self) -> np.ndarray:
        """m x n matrix C with |psi> = sum_ij C_ij |i>(x)|j>."""
        return np.einsum("k,ki,kj->ij", self.coeffs, self.basis_a, self.basis_b)

    def to_vector(self) -> np.ndarray:
        return self.coefficient_matrix().reshape(self.m * self.n)

    def projector(self) -> BipartiteOperator:
        v = self.to_vector()
        return BipartiteOperator(self.m, self.n, np.outer(v, v.conj()))

    @classmethod
    def from_vector(
        cls, vec: np.ndarray, m: int, n: int, rank_tol: float = SCHMIDT_RANK_TOL
    ) -> "PureState":
        """Schmidt-decompose a dense unit vector of length m*n."""
        vec = np.asarray(vec, dtype=complex).reshape(m * n)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > 1e-9:
            raise NormViolationError(f"vector norm {norm} != 1")
        u, s, v = linalg.svd(vec.reshape(m, n))
        d = int(np.sum(s > rank_tol))
        if d == 0:
            raise NormViolationError("vector is numerically zero")
        return cls(
            m=m,
            n=n,
            coeffs=s[:d],
            basis_a=u[:, :d].T,
            basis_b=v[:, :d].conj().T,
        )


def pure_from_schmidt(coeffs, m: int, n: int) -> PureState:
    """Pure state with given Schmidt coefficients on the canonical bases.

    Accepts square sums within 1e-6 of one (printed reference values are
    rounded to about six digits) and renormalizes exactly.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if np.any(coeffs <= 0):
        raise BadSpectrumError("Schmidt coefficients must be positive")
    d = len(coeffs)
    if d > min(m, n):
        raise RankTooLargeError(f"rank {d} exceeds min({m}, {n})")
    if abs(float(coeffs @ coeffs) - 1.0) > 1e-6:
        raise NormViolationError("Schmidt coefficients must square-sum to 1")
    order = np.argsort(-coeffs, kind="stable")
    coeffs = coeffs[order] / np.sqrt(float(coeffs @ coeffs))
    basis_a = np.eye(m, dtype=complex)[:d]
    basis_b = np.eye(n, dtype=complex)[:d]
    return PureState(m=m, n=n, coeffs=coeffs, basis_a=basis_a, basis_b=basis_b)


def max_entangled(m: int, n: int, j: int = 1) -> PureState:
    """The j-th maximally entangled state (1/sqrt(m)) sum_i |i, i+(j-1)m>.

    Valid for 1 <= j <= floor(n/m); consecutive j values occupy disjoint
    blocks of the second factor.
    """
    if not 1 <= j <= n // m:
        raise IndexOutOfRangeError(f"j={j} outside 1..{n // m} for dims ({m},{n})")
    coeffs = np.full(m, 1.0 / np.sqrt(m))
    basis_a = np.eye(m, dtype=complex)
    basis_b = np.zeros((m, n), dtype=complex)
    for i in range(m):
        basis_b[i, i + (j - 1) * m] = 1.0
    return PureState(m=m, n=n, coeffs=coeffs, basis_a=basis_a, basis_b=basis_b)


def pt_spectrum_pure(psi: PureState) -> np.ndarray:
    """Closed-form spectrum of the partial transpose of |psi><psi|.

    Returns, sorted non-increasing: a_j^2 for each Schmidt coefficient,
    +/- a_i a_j for each pair i < j, and mn - d^2 zeros.
    """
    a = psi.coeffs
    d = len(a)
    vals = list(a * a)
    for i in range(d):
        for j in range(i + 1, d):
            vals.append(a[i] * a[j])
            vals.append(-a[i] * a[j])
    vals.extend([0.0] * (psi.m * psi.n - d * d))
    return np.sort(np.asarray(vals))[::-1]


# ---------------------------------------------------------------------------
# Canonical (named) states.

def _diag_state(diag: np.ndarray, m: int, n: int, normalized: bool = True):
    mat = np.diag(diag.astype(complex))
    if normalized:
        mat = mat / np.trace(mat).real
    return BipartiteOperator(m, n, mat)


def _gamma_base() -> np.ndarray:
    g = np.array(
        [
            [1, 0, 0, 0, 0, 0, 0, 0, -1],
            [0, 2, 0, -1, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 1, 0, 0],
            [0, -1, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, -1, 0],
            [0, 0, 1, 0, 1, 0, 2, 0, 0],
            [0, 0, 0, 0, 0, -1, 0, 1, 0],
            [-1, 0, 0, 1, 0, 0, 0, 0, 3],
        ],
        dtype=complex,
    )
    return g / 13.0


_SHIFT3 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
_SIGN3 = np.diag([-1.0, -1.0, 1.0]).astype(complex)
_FLIP3 = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)


def _gamma_variant(u: np.ndarray) -> np.ndarray:
    g = _gamma_base()
    f = np.kron(u, _FLIP3)
    return pt_mat(f @ g @ f.conj().T, 3, 3)


def rho_b_state(b: float) -> BipartiteOperator:
    """Rank-five 2x4 bound entangled edge state, parametrized by b in (0,1)."""
    if not 0.0 < b < 1.0:
        raise BadParamError(f"b={b} outside (0, 1)")
    r = np.zeros((8, 8))
    for i in range(4):
        r[i, i] = b
    r[5, 5] = r[6, 6] = b
    r[0, 5] = r[5, 0] = b
    r[1, 6] = r[6, 1] = b
    r[2, 7] = r[7, 2] = b
    r[4, 4] = r[7, 7] = (1.0 + b) / 2.0
    r[4, 7] = r[7, 4] = np.sqrt(1.0 - b * b) / 2.0
    return BipartiteOperator(2, 4, r.astype(complex) / (7.0 * b + 1.0))


def rho_a_state(a: float) -> BipartiteOperator:
    """Rank-seven two-qutrit bound entangled edge state, a in (0,1)."""
    if not 0.0 < a < 1.0:
        raise BadParamError(f"a={a} outside (0, 1)")
    r = np.zeros((9, 9))
    for i in range(9):
        r[i, i] = a
    r[6, 6] = r[8, 8] = (a + 1.0) / 2.0
    r[0, 4] = r[4, 0] = a
    r[0, 8] = r[8, 0] = a
    r[4, 8] = r[8, 4] = a
    r[6, 8] = r[8, 6] = np.sqrt(1.0 - a * a) / 2.0
    return BipartiteOperator(3, 3, r.astype(complex) / (8.0 * a + 1.0))


CANONICAL_NAMES = (
    "zeta1",
    "zeta2",
    "rho1",
    "rho2",
    "rho_b",
    "rho_a",
    "gamma",
    "gamma_prime",
    "gamma1",
    "gamma2",
    "tiles_upb",
    "max_ball_center",
)


def canonical_state(name: str, **params) -> BipartiteOperator:
    """Construct a named reference state.

    zeta1(m, l)        diag with l copies of (m+1)/(m-1) then ones; inside
                       the maximal ball for every l in 1..m^2.
    zeta2(m, n)        diag(3, 1, ..., 1)/(mn+2); absolutely separable.
    rho1(m, n)         diag(sqrt2+1, sqrt2+1, 1, ...); absolutely PPT.
    rho2(m, n)         diag(2, 2, 2, 1, ...); absolutely PPT.
                       Both accept normalized=False for the raw diagonal.
    rho_b(b)           2x4 bound entangled edge state.
    rho_a(a)           3x3 bound entangled edge state.
    gamma              two-qutrit PPT entangled state with trace one.
    gamma_prime        sign/flip conjugated partial transpose of gamma;
                       orthogonal to the transposed qutrit Bell projector.
    gamma1, gamma2     cyclic-shift / sign variants used by the NPT
                       detection pipeline.
    tiles_upb          normalized complement of the tiles product basis.
    max_ball_center(m, n)  maximally mixed state.
    """
    if name == "zeta1":
        m = int(params.get("m", 3))
        l = int(params.get("l", 1))
        if m < 2:
            raise BadParamError("zeta1 requires m >= 2")
        if not 1 <= l <= m * m:
            raise BadParamError(f"l={l} outside 1..{m * m}")
        top = (m + 1.0) / (m - 1.0)
        diag = np.array([top] * l + [1.0] * (m * m - l))
        return _diag_state(diag, m, m)
    if name == "zeta2":
        m = int(params.get("m", 3))
        n = int(params.get("n", m))
        _require_dims(m, n)
        diag = np.ones(m * n)
        diag[0] = 3.0
        return _diag_state(diag, m, n)
    if name in ("rho1", "rho2"):
        m = int(params.get("m", 3))
        n = int(params.get("n", m))
        _require_dims(m, n)
        normalized = bool(params.get("normalized", True))
        diag = np.ones(m * n)
        if name == "rho1":
            diag[0] = diag[1] = np.sqrt(2.0) + 1.0
        else:
            diag[0] = diag[1] = diag[2] = 2.0
        return _diag_state(diag, m, n, normalized=normalized)
    if name == "rho_b":
        return rho_b_state(float(params.get("b", 0.9)))
    if name == "rho_a":
        return rho_a_state(float(params.get("a", 0.9)))
    if name == "gamma":
        return BipartiteOperator(3, 3, _gamma_base())
    if name in ("gamma_prime", "gamma2"):
        return BipartiteOperator(3, 3, _gamma_variant(_SIGN3))
    if name == "gamma1":
        return BipartiteOperator(3, 3, _gamma_variant(_SHIFT3))
    if name == "tiles_upb":
        return tiles_upb_state()
    if name == "max_ball_center":
        m = int(params.get("m", 3))
        n = int(params.get("n", m))
        _require_dims(m, n)
        return BipartiteOperator(m, n, np.eye(m * n, dtype=complex) / (m * n))
    raise BadParamError(f"unknown canonical state {name!r}")


def _require_dims(m: int, n: int) -> None:
    if m < 2 or n < 2:
        raise BadParamError(f"local dimensions ({m}, {n}) must both be >= 2")


def tiles_upb_vectors() -> list[np.ndarray]:
    """The five tiles product vectors: real, mutually orthogonal, and
    unextendible in C^3 (x) C^3."""
    e = np.eye(3)
    s2 = np.sqrt(2.0)

    def pv(a, b):
        return np.kron(a, b).astype(complex)

    return [
        pv(e[0], (e[0] - e[1]) / s2),
        pv(e[2], (e[1] - e[2]) / s2),
        pv((e[0] - e[1]) / s2, e[2]),
        pv((e[1] - e[2]) / s2, e[0]),
        pv(e[0] + e[1] + e[2], e[0] + e[1] + e[2]) / 3.0,
    ]


def tiles_upb_state() -> BipartiteOperator:
    """Rank-four PPT entangled edge state: the normalized projector onto
    the orthocomplement of the tiles product basis."""
    mat = np.eye(9, dtype=complex)
    for v in tiles_upb_vectors():
        mat -= np.outer(v, v.conj())
    return BipartiteOperator(3, 3, mat / 4.0)


# ---------------------------------------------------------------------------
# Predicates.

def is_in_maximal_ball(rho: BipartiteOperator) -> bool:
    """True iff tr(rho^2) <= 1/(mn-1); such states stay separable under
    every global unitary."""
    tr = rho.trace()
    if abs(tr - 1.0) > 1e-9:
        raise TraceViolationError(f"trace {tr} != 1")
    purity = float(np.trace(rho.mat @ rho.mat).real)
    return purity <= 1.0 / (rho.dim - 1) + 1e-12


def as_2xn_test(spectrum) -> bool:
    """Absolute separability test for 2 x n spectra:
    lam_1 <= lam_{2n-1} + 2 sqrt(lam_{2n-2} lam_{2n})."""
    lam = np.asarray(spectrum, dtype=float)
    if lam.ndim != 1 or len(lam) < 4 or len(lam) % 2 != 0:
        raise BadSpectrumError(f"need an even length >= 4, got {lam.shape}")
    if np.any(lam < -1e-12):
        raise BadSpectrumError("spectrum has negative entries")
    if abs(lam.sum() - 1.0) > 1e-9:
        raise BadSpectrumError(f"spectrum sums to {lam.sum()}, not 1")
    lam = np.sort(lam)[::-1]
    rhs = lam[-2] + 2.0 * np.sqrt(max(lam[-3], 0.0) * max(lam[-1], 0.0))
    return bool(lam[0] <= rhs + 1e-12)


def is_ppt(rho: BipartiteOperator, tol: float = 1e-10) -> bool:
    """True iff the partial transpose has no eigenvalue below
    -tol * max(1, ||rho||_F)."""
    vals = eig_hermitian(pt_mat(rho.mat, rho.m, rho.n)).values
    return bool(vals[-1] >= -tol * max(1.0, linalg.fro_norm(rho.mat)))


# ---------------------------------------------------------------------------
# Seeded sampling.

def haar_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR of a complex Gaussian matrix
    with the R diagonal phases fixed."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(kind: str, m: int, n: int, rank: int | None = None, seed: int = 0):
    """Seeded sampler: kind 'pure_haar' gives a PureState, 'density_wishart'
    a PSD unit-trace BipartiteOperator of the requested rank."""
    d = m * n
    rng = np.random.default_rng(seed)
    if kind == "pure_haar":
        return PureState.from_vector(haar_vector(d, rng), m, n)
    if kind == "density_wishart":
        if rank is None:
            rank = d
        if not 1 <= rank <= d:
            raise BadRankError(f"rank {rank} outside 1..{d}")
        g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
        mat = g @ g.conj().T
        return BipartiteOperator(m, n, mat / np.trace(mat).real)
    raise BadParamError(f"unknown sampling kind {kind!r}")
