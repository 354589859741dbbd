"""Witness construction and analysis.

Covers the parametric block-positive family, transposed-pure-state
witnesses, seeded decomposable-witness sampling, spectral reports with
bound verdicts, mirrored witnesses, kernel-projector witnesses built from
bound entangled edge states, and the local-filter detection pipeline that
certifies any state with non-positive partial transpose (beyond the
qubit-qubit and qubit-qutrit cases) against a nondecomposable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import blockpos, linalg, states
from .errors import (
    BadParamError,
    BadRankError,
    BoostDenominatorError,
    EpsilonVanishesError,
    FullRankError,
    IsPPTError,
    NoConvergedRestartError,
    NotPPTError,
    OrthogonalityError,
    ProductStateError,
)
from .linalg import (
    BipartiteOperator,
    eig_hermitian,
    embed_operator,
    fro_norm,
    kron,
    pt_mat,
)
from .states import PureState, max_entangled, pure_from_schmidt

TAG_DEW = "DEW-by-construction"
TAG_NDEW = "NDEW-certified"
TAG_UNCLASSIFIED = "EW-unclassified"

# Eigenvalues below -KERNEL_TOL * ||sigma||_F are impossible; values under
# +KERNEL_TOL * ||sigma||_F define the kernel of a closed-form edge state.
KERNEL_TOL = 1e-9
# Minimum admissible product-vector margin for the kernel witness.
EPSILON_FLOOR = 1e-7


@dataclass
class Witness:
    """Block-positive operator with provenance.

    class_tag NDEW-certified requires detected_state to hold a PPT state
    with tr(W rho) < -1e-9; the negative-eigenvalue requirement of a
    witness is enforced at certification time, not at construction.
    """

    op: BipartiteOperator
    class_tag: str = TAG_UNCLASSIFIED
    provenance: dict = field(default_factory=dict)
    detected_state: BipartiteOperator | None = None
    normalized: bool = True

    def __post_init__(self):
        if self.normalized and abs(self.op.trace() - 1.0) > 1e-9:
            raise ValueError(f"witness trace {self.op.trace()} != 1")

    @property
    def m(self) -> int:
        return self.op.m

    @property
    def n(self) -> int:
        return self.op.n


@dataclass
class FamilyParams:
    """Convex weights for the four-term block-positive family."""

    a: float
    b: float
    c: float
    d: float
    m: int = 2
    n: int = 2

    def __post_init__(self):
        for name, w in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)):
            if not 0.0 <= w <= 1.0:
                raise BadParamError(f"weight {name}={w} outside [0, 1]")
        if abs(self.a + self.b + self.c + self.d - 1.0) > 1e-12:
            raise BadParamError("weights must sum to 1")
        if self.m > self.n or self.m * self.n < 4:
            raise BadParamError(
                f"dims ({self.m}, {self.n}) need m <= n and mn >= 4"
            )


def _basis_ket(m: int, n: int, i: int, j: int) -> np.ndarray:
    v = np.zeros(m * n, dtype=complex)
    v[i * n + j] = 1.0
    return v


def _singlet(m: int, n: int) -> np.ndarray:
    return (_basis_ket(m, n, 0, 1) - _basis_ket(m, n, 1, 0)) / np.sqrt(2.0)


def _pt_projector(psi: PureState) -> np.ndarray:
    return pt_mat(psi.projector().mat, psi.m, psi.n)


def w_family(p: FamilyParams) -> Witness:
    """Four-term block-positive mixture.

    W = a (I - |Omega><Omega|)/(mn-1) + b PT(|Psi_2><Psi_2|)
      + c |11><11| + d PT(|Psi_m><Psi_m|),
    a convex mix of positive and transposed-pure terms, hence decomposable
    by construction, with unit trace.
    """
    m, n = p.m, p.n
    d = m * n
    omega = _singlet(m, n)
    mat = np.zeros((d, d), dtype=complex)
    if p.a:
        mat += p.a * (np.eye(d) - np.outer(omega, omega.conj())) / (d - 1)
    if p.b:
        mat += p.b * _pt_projector(pure_from_schmidt([2 ** -0.5] * 2, m, n))
    if p.c:
        e11 = _basis_ket(m, n, 0, 0)
        mat += p.c * np.outer(e11, e11.conj())
    if p.d:
        mat += p.d * _pt_projector(max_entangled(m, n))
    return Witness(
        op=BipartiteOperator(m, n, mat),
        class_tag=TAG_DEW,
        provenance={"family": "w_abcd", "a": p.a, "b": p.b, "c": p.c, "d": p.d},
    )


def pure_pt_witness(psi: PureState) -> Witness:
    """Partial transpose of a pure entangled state's projector: the extremal
    decomposable witnesses."""
    if psi.rank < 2:
        raise ProductStateError("Schmidt rank one gives a PSD operator, not a witness")
    return Witness(
        op=BipartiteOperator(psi.m, psi.n, _pt_projector(psi)),
        class_tag=TAG_DEW,
        provenance={"family": "pure_pt", "schmidt": [float(c) for c in psi.coeffs]},
    )


def sample_dew(
    m: int, n: int, x: float, rank_p: int = 0, rank_q: int = 0, seed: int = 0
) -> Witness:
    """Seeded random decomposable witness x P + (1-x) PT(Q) with unit-trace
    Wishart factors.  x = 1 is rejected: without the transposed component
    the sample could never acquire a negative eigenvalue."""
    if not 0.0 <= x < 1.0:
        raise BadParamError(f"x={x} outside [0, 1)")
    d = m * n
    rank_p = rank_p or d
    rank_q = rank_q or d
    if not (1 <= rank_p <= d and 1 <= rank_q <= d):
        raise BadRankError(f"ranks ({rank_p}, {rank_q}) outside 1..{d}")
    rng = np.random.default_rng(seed)

    def wishart(rank: int) -> np.ndarray:
        g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
        w = g @ g.conj().T
        return w / np.trace(w).real

    p_mat = wishart(rank_p)
    q_mat = wishart(rank_q)
    mat = x * p_mat + (1.0 - x) * pt_mat(q_mat, m, n)
    return Witness(
        op=BipartiteOperator(m, n, mat),
        class_tag=TAG_DEW,
        provenance={
            "family": "sample_dew",
            "x": x,
            "rank_p": rank_p,
            "rank_q": rank_q,
            "seed": seed,
        },
    )


# ---------------------------------------------------------------------------
# Spectral report.

@dataclass
class ReportBound:
    name: str
    measured: float
    lower: float | None
    upper: float | None
    passed: bool
    attained: bool = False


@dataclass
class SpectrumReport:
    """Spectral scalars of a normalized witness with per-bound verdicts."""

    m: int
    n: int
    lambdas: np.ndarray = field(repr=False)
    lambda1: float
    lambda_min: float
    negativity: float
    fro_sq: float
    neg_count: int
    is_ew: bool
    bounds: list[ReportBound] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(b.passed for b in self.bounds)


BOUND_TOL = 1e-9


def spectral_report(w) -> SpectrumReport:
    """Eigenvalue summary plus verdicts against the normalized-witness
    bound table.  PSD input is flagged as not a witness and carries no
    bound rows."""
    op = w.op if isinstance(w, Witness) else w
    m, n = op.m, op.n
    d = m * n
    lam = eig_hermitian(op.mat).values
    scale = max(1.0, fro_norm(op.mat))
    neg_cut = -linalg.NEG_EIG_TOL * scale
    neg = lam[lam < neg_cut]
    report = SpectrumReport(
        m=m,
        n=n,
        lambdas=lam,
        lambda1=float(lam[0]),
        lambda_min=float(lam[-1]),
        negativity=float(-neg.sum()),
        fro_sq=float((lam * lam).sum()),
        neg_count=int(len(neg)),
        is_ew=bool(len(neg) > 0),
    )
    if not report.is_ew:
        return report

    def row(name, measured, lower=None, upper=None, attained=False):
        ok = True
        if lower is not None:
            ok = ok and measured >= lower - BOUND_TOL
        if upper is not None:
            ok = ok and measured <= upper + BOUND_TOL
        report.bounds.append(
            ReportBound(name, float(measured), lower, upper, bool(ok), attained)
        )

    row("lambda1", report.lambda1, lower=1.0 / (d - 1), upper=1.0)
    row(
        "lambda_min",
        report.lambda_min,
        lower=-0.5,
        upper=0.0,
        attained=abs(report.lambda_min + 0.5) <= BOUND_TOL,
    )
    row(
        "fro_sq",
        report.fro_sq,
        lower=1.0 / (d - 1),
        upper=1.0,
        attained=abs(report.fro_sq - 1.0) <= BOUND_TOL,
    )
    row("neg_count", report.neg_count, upper=(m - 1) * (n - 1))
    if m == 2:
        row("pair_sum", lam[1] + lam[-1], lower=0.0)
        row("tail_from_3", lam[2:].sum(), lower=-1.0 / (2.0 + 2.0 * np.sqrt(2.0)))
        worst_tail = min(lam[k - 1 :].sum() for k in range(4, 2 * n + 1))
        row("tail_from_4_on", worst_tail, lower=-0.5)
    if m == n:
        row(
            "negativity",
            report.negativity,
            upper=(m - 1) / 2.0,
            attained=abs(report.negativity - (m - 1) / 2.0) <= BOUND_TOL,
        )
    return report


# ---------------------------------------------------------------------------
# Mirrored witnesses.

@dataclass
class MirrorResult:
    mu: float
    w_m: BipartiteOperator
    verdict: str  # mirror-EW | mirror-PSD | inconclusive
    opt: blockpos.OptResult


def mirror(w: Witness, restarts: int = 64, seed: int = 0) -> MirrorResult:
    """Mirror operator mu I - W with mu the largest product-vector
    expectation of W.  The mirror is itself a witness only when the top
    eigenvalue of W exceeds mu and the mirror stays block-positive."""
    if w.class_tag == TAG_UNCLASSIFIED:
        bp = blockpos.is_block_positive(w.op, restarts=restarts, seed=seed)
        if bp.status == "no":
            raise BadParamError("input operator is not block-positive")
    opt = blockpos.product_expectation_max(w.op, restarts=restarts, seed=seed)
    mu = opt.value
    d = w.op.dim
    w_m = BipartiteOperator(w.m, w.n, mu * np.eye(d, dtype=complex) - w.op.mat)
    lam = eig_hermitian(w_m.mat).values
    lam1_w = eig_hermitian(w.op.mat).values[0]
    if lam[-1] >= -1e-10:
        verdict = "mirror-PSD"
    elif lam1_w > mu + 1e-9:
        check = blockpos.is_block_positive(w_m, restarts=restarts, seed=seed)
        verdict = "mirror-EW" if check.status.startswith("yes") else "inconclusive"
    else:
        verdict = "inconclusive"
    return MirrorResult(mu=float(mu), w_m=w_m, verdict=verdict, opt=opt)


# ---------------------------------------------------------------------------
# Nondecomposable witnesses from edge states.

@dataclass
class NdewParams:
    z: float = 1.0
    delta: float = 1e-3
    t: float | None = None  # boost weight; None selects the automatic choice

    def __post_init__(self):
        if self.z <= 0 or self.delta <= 0:
            raise BadParamError("z and delta must be positive")


def _kernel_projector(mat: np.ndarray) -> tuple[np.ndarray, int]:
    eig = eig_hermitian(mat)
    cut = KERNEL_TOL * fro_norm(mat)
    cols = eig.vectors[:, eig.values < cut]
    return cols @ cols.conj().T, cols.shape[1]


def ndew_from_edge(
    sigma: BipartiteOperator,
    params: NdewParams | None = None,
    restarts: int = 64,
    seed: int = 0,
    proj_p: np.ndarray | None = None,
    proj_q: np.ndarray | None = None,
) -> Witness:
    """Certified nondecomposable witness from a bound entangled edge state.

    With P, Q the kernel projectors of sigma and of its partial transpose,
    the operator z P + PT(Q) has zero expectation on sigma yet a strictly
    positive product-vector minimum epsilon; subtracting delta < epsilon
    times the identity yields a block-positive operator with
    tr(W sigma) < 0, which certifies both entanglement of sigma and
    nondecomposability of W.  epsilon is estimated by see-saw multistart;
    the estimate is trusted only when enough restarts reproduce the best
    value, and delta is capped at half the estimate.  proj_p / proj_q
    override the kernel projectors (used to exhibit constructions whose
    margin vanishes).
    """
    params = params or NdewParams()
    m, n = sigma.m, sigma.n
    d = m * n
    if not states.is_ppt(sigma):
        raise NotPPTError("sigma must have a positive partial transpose")
    if proj_p is None:
        proj_p, dim_p = _kernel_projector(sigma.mat)
    else:
        dim_p = int(round(np.trace(proj_p).real))
    if proj_q is None:
        proj_q, dim_q = _kernel_projector(pt_mat(sigma.mat, m, n))
    else:
        dim_q = int(round(np.trace(proj_q).real))
    if dim_p == 0 or dim_q == 0:
        raise FullRankError("sigma and its partial transpose must both have kernels")

    candidate = BipartiteOperator(
        m, n, params.z * proj_p + pt_mat(proj_q, m, n)
    )
    opt = blockpos.product_expectation_min(candidate, restarts=restarts, seed=seed)
    eps = opt.value
    if eps <= EPSILON_FLOOR:
        raise EpsilonVanishesError(
            f"product-vector margin {eps:.3e} vanishes; the projector pair "
            "admits no identity shift"
        )
    agreeing = int(np.sum(opt.converged_values < opt.value + 1e-6))
    if opt.restarts_converged < min(restarts, 64) or agreeing < min(restarts, 4):
        raise NoConvergedRestartError(
            f"margin estimate not reproducible: {agreeing} restarts within "
            f"1e-6 of the best value"
        )
    delta = min(params.delta, eps / 2.0)
    norm = params.z * dim_p + dim_q - d * delta
    mat = (candidate.mat - delta * np.eye(d)) / norm
    op = BipartiteOperator(m, n, mat)
    expectation = float(np.trace(op.mat @ sigma.mat).real)
    if expectation >= -1e-9:
        raise EpsilonVanishesError(
            f"detection expectation {expectation:.3e} not negative"
        )
    return Witness(
        op=op,
        class_tag=TAG_NDEW,
        detected_state=sigma,
        provenance={
            "family": "ndew_from_edge",
            "z": params.z,
            "delta": delta,
            "epsilon_estimate": eps,
            "epsilon_spread": opt.spread,
            "restarts_converged": opt.restarts_converged,
            "expectation": expectation,
        },
    )


def boost_witness(w: Witness, psi: PureState, t: float | None = None) -> Witness:
    """Mix a certified witness with the transposed projector of a pure state
    orthogonal (under the partial transpose pairing) to the stored detected
    state: W' = (t PT(|psi><psi|) + W) / (1 + t).

    Detection of the stored state survives with expectation scaled by
    1/(1+t), while large t drags the spectrum toward that of the
    transposed projector."""
    if w.class_tag != TAG_NDEW or w.detected_state is None:
        raise BadParamError("boost requires a certified witness with a stored state")
    if t is None:
        t = 1.0
    if t < 0:
        raise BadParamError(f"t={t} must be non-negative")
    overlap = float(
        np.trace(_pt_projector(psi) @ w.detected_state.mat).real
    )
    if abs(overlap) > 1e-10:
        raise OrthogonalityError(
            f"boost direction overlaps the stored state: {overlap:.3e}"
        )
    mat = (t * _pt_projector(psi) + w.op.mat) / (1.0 + t)
    return Witness(
        op=BipartiteOperator(w.m, w.n, mat),
        class_tag=TAG_NDEW,
        detected_state=w.detected_state,
        provenance={"family": "boost", "t": t, "base": w.provenance},
    )


# ---------------------------------------------------------------------------
# Local filters and the detection pipeline.

@dataclass
class LocalFilter:
    """Invertible local pair (A, B) with (A (x) B)|Psi_d> = |psi>."""

    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    d: int = 0


def local_filter_to_max_entangled(psi: PureState) -> LocalFilter:
    """Invertible A, B mapping the rank-d maximally entangled state onto psi.

    From the full SVD C = U S V^dag of the coefficient matrix: A scales the
    left singular directions by sqrt(d) sigma_i (ones on the complement) and
    B is the conjugate right factor.
    """
    m, n, d = psi.m, psi.n, psi.rank
    u, s, v = linalg.svd(psi.coefficient_matrix(), full=True)
    diag = np.ones(m)
    diag[:d] = np.sqrt(d) * s[:d]
    a = u @ np.diag(diag).astype(complex)
    b = v.conj()
    target = kron(a, b) @ _psi_d_vector(m, n, d)
    residual = float(np.linalg.norm(target - psi.to_vector()))
    if residual > 1e-9:
        raise RuntimeError(f"filter construction failed, residual {residual:.3e}")
    return LocalFilter(a=a, b=b, d=d)


def _psi_d_vector(m: int, n: int, d: int) -> np.ndarray:
    v = np.zeros(m * n, dtype=complex)
    for i in range(d):
        v[i * n + i] = 1.0
    return v / np.sqrt(d)


def _psi_d_state(m: int, n: int, d: int) -> PureState:
    return PureState.from_vector(_psi_d_vector(m, n, d), m, n)


@dataclass
class DetectionCertificate:
    witness: Witness
    expectation: float
    pipeline: dict
    filters: LocalFilter


_BASE_CACHE: dict = {}


def _base_edge_state(kind: str) -> BipartiteOperator:
    if kind == "rho_b_flip":
        rb = states.rho_b_state(0.9)
        f = kron(np.diag([-1.0, 1.0]).astype(complex), np.eye(4, dtype=complex))
        return BipartiteOperator(2, 4, f @ pt_mat(rb.mat, 2, 4) @ f.conj().T)
    if kind == "gamma1":
        return states.canonical_state("gamma1")
    if kind == "gamma2":
        return states.canonical_state("gamma2")
    raise ValueError(kind)


def _base_witness(kind: str, restarts: int, seed: int):
    key = (kind, restarts, seed)
    if key not in _BASE_CACHE:
        sigma = _base_edge_state(kind)
        _BASE_CACHE[key] = ndew_from_edge(
            sigma, NdewParams(), restarts=restarts, seed=seed
        )
    return _BASE_CACHE[key]


def detect_npt(
    rho: BipartiteOperator, restarts: int = 64, seed: int = 0
) -> DetectionCertificate:
    """Certify a state with non-positive partial transpose against a
    nondecomposable witness.

    Pipeline: take the bottom eigenvector psi of the partial transpose,
    filter it onto the rank-d maximally entangled state, pick the matching
    bound entangled base state (the flipped 2x4 edge state for m = 2, a
    conjugated two-qutrit state for m >= 3 according to d), boost the base
    kernel witness along PT(|Psi_d><Psi_d|) just enough to reach the
    filtered state, and pull the result back through the inverse filters.
    The certificate stores tr(W rho) < 0 together with the construction
    trail.
    """
    m, n = rho.m, rho.n
    if m > n:
        raise BadParamError("expects m <= n; transpose the factors first")
    if m * n <= 6:
        raise BadParamError(
            "qubit-qubit and qubit-qutrit systems admit no nondecomposable witness"
        )
    if states.is_ppt(rho):
        raise IsPPTError("state has a positive partial transpose")
    eig = eig_hermitian(pt_mat(rho.mat, m, n))
    lam_min = float(eig.values[-1])
    psi = PureState.from_vector(eig.vectors[:, -1], m, n)
    d = psi.rank
    filters = local_filter_to_max_entangled(psi)
    f = kron(filters.a.conj(), filters.b)
    rho_f = f.conj().T @ rho.mat @ f
    rho_f = (rho_f + rho_f.conj().T) / 2.0
    rho_prime = BipartiteOperator(m, n, rho_f / np.trace(rho_f).real)

    if m == 2:
        kind = "rho_b_flip"
    elif d == 2:
        kind = "gamma1"
    else:
        kind = "gamma2"
    base = _base_witness(kind, restarts, seed)
    base_op = embed_operator(base.op, m, n)
    base_state = embed_operator(base.detected_state, m, n)
    base_pad = Witness(
        op=base_op,
        class_tag=TAG_NDEW,
        detected_state=base_state,
        provenance=dict(base.provenance, embedded=(m, n)),
    )

    psi_d = _psi_d_state(m, n, d)
    carrier = float(np.trace(_pt_projector(psi_d) @ rho_prime.mat).real)
    if carrier >= -1e-10:
        raise BoostDenominatorError(
            f"filtered state barely overlaps the boost direction: {carrier:.3e}"
        )
    base_expect = float(np.trace(base_pad.op.mat @ rho_prime.mat).real)
    t = 2.0 * abs(base_expect) / abs(carrier) + 1.0
    boosted = boost_witness(base_pad, psi_d, t=t)

    pulled = f @ boosted.op.mat @ f.conj().T
    pulled = (pulled + pulled.conj().T) / 2.0
    pulled /= np.trace(pulled).real
    w_final = BipartiteOperator(m, n, pulled)

    f_inv = np.linalg.inv(f)
    ppt_state = f_inv.conj().T @ boosted.detected_state.mat @ f_inv
    ppt_state = (ppt_state + ppt_state.conj().T) / 2.0
    ppt_state /= np.trace(ppt_state).real
    certified_state = BipartiteOperator(m, n, ppt_state)

    expectation = float(np.trace(w_final.mat @ rho.mat).real)
    if expectation >= -1e-9:
        raise BoostDenominatorError(
            f"pipeline produced non-negative expectation {expectation:.3e}"
        )
    witness = Witness(
        op=w_final,
        class_tag=TAG_NDEW,
        detected_state=certified_state,
        provenance={
            "family": "detect_npt",
            "base": kind,
            "schmidt_rank": d,
            "t": t,
            "lambda_min_pt": lam_min,
        },
    )
    return DetectionCertificate(
        witness=witness,
        expectation=expectation,
        pipeline={
            "lambda_min_pt": lam_min,
            "schmidt_rank": d,
            "base": kind,
            "t": t,
            "carrier": carrier,
            "base_expectation": base_expect,
        },
        filters=filters,
    )
