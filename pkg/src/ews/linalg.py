"""Dense complex matrix foundation: Hermitian eigendecomposition, SVD,
Kronecker products, partial transpose, norms and majorization.

Matrices are plain complex ``numpy.ndarray`` values in row-major layout.
A bipartite operator on C^m (x) C^n indexes the basis vector |i>(x)|j>
as row i*n + j (0-based).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatchError, NoConvergenceError, NotHermitianError

# Hermiticity defect allowed relative to max(1, ||H||_F).
HERM_RTOL = 1e-12
# Off-diagonal Frobenius norm target for the Jacobi sweep, relative to ||H||_F.
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100
# An eigenvalue counts as negative below -NEG_EIG_TOL * max(1, ||H||_F).
NEG_EIG_TOL = 1e-10
# Singular values below SV_TRUNC_RTOL * ||M||_F are truncated to zero.
SV_TRUNC_RTOL = 1e-10


def fro_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def herm_defect(h: np.ndarray) -> float:
    """Largest entrywise deviation of H from its own conjugate transpose."""
    return float(np.abs(h - h.conj().T).max())


def require_hermitian(h: np.ndarray, rtol: float = HERM_RTOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {h.shape}")
    if herm_defect(h) > rtol * max(1.0, fro_norm(h)):
        raise NotHermitianError(
            f"Hermiticity defect {herm_defect(h):.3e} exceeds tolerance"
        )
    return h


@dataclass
class Spectrum:
    """Eigenvalues in non-increasing order with matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        yield self.values
        yield self.vectors


def eig_hermitian(h: np.ndarray) -> Spectrum:
    """Diagonalize a Hermitian matrix by cyclic Jacobi sweeps.

    Deterministic: pivots are visited in fixed row-cyclic order, so identical
    input yields identical output.  Converges when the off-diagonal Frobenius
    norm drops below JACOBI_RTOL * ||H||_F; raises NoConvergenceError after
    JACOBI_MAX_SWEEPS sweeps.  Intended for the dense orders (<= ~100 rows)
    this package works at.
    """
    h = require_hermitian(h)
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=complex)
    thresh = JACOBI_RTOL * fro_norm(h)

    def off_norm() -> float:
        off = a - np.diag(np.diag(a))
        return float(np.linalg.norm(off))

    sweeps = 0
    while off_norm() > thresh:
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise NoConvergenceError(
                f"off-diagonal norm {off_norm():.3e} above {thresh:.3e} "
                f"after {sweeps} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag == 0.0:
                    continue
                w = g / ag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                wc = w.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * wc * colq
                a[:, q] = s * w * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * w * rowq
                a[q, :] = s * wc * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * wc * vq
                v[:, q] = s * w * vp + c * vq
        sweeps += 1

    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    return Spectrum(values=vals[order], vectors=v[:, order])


def _complete_columns(cols: np.ndarray, dim: int, want: int) -> np.ndarray:
    """Extend orthonormal columns to `want` columns by deterministic
    Gram-Schmidt over the standard basis."""
    out = [cols[:, k] for k in range(cols.shape[1])]
    i = 0
    while len(out) < want:
        cand = np.zeros(dim, dtype=complex)
        cand[i] = 1.0
        i += 1
        for u in out:
            cand = cand - np.vdot(u, cand) * u
        norm = np.linalg.norm(cand)
        if norm > 0.5:
            out.append(cand / norm)
    return np.column_stack(out) if out else np.zeros((dim, 0), dtype=complex)


def svd(m: np.ndarray, full: bool = False):
    """Singular value decomposition M = U diag(s) V^dag.

    Built on the Hermitian eigensolver applied to M^dag M; singular values
    below SV_TRUNC_RTOL * ||M||_F are truncated to zero and the matching
    left columns are completed deterministically.  With full=True the
    factors are square unitaries.
    """
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    k = min(rows, cols)
    gram = m.conj().T @ m
    eig = eig_hermitian((gram + gram.conj().T) / 2.0)
    trunc = SV_TRUNC_RTOL * max(fro_norm(m), 0.0)
    sigma = np.sqrt(np.clip(eig.values[:k], 0.0, None))
    sigma[sigma < trunc] = 0.0
    v_cols = eig.vectors[:, :k]
    u_list = []
    for j in range(k):
        if sigma[j] > 0.0:
            u = m @ v_cols[:, j] / sigma[j]
            for prev in u_list:
                u = u - np.vdot(prev, u) * prev
            nu = np.linalg.norm(u)
            if nu > 0.0:
                u_list.append(u / nu)
    u_have = (
        np.column_stack(u_list) if u_list else np.zeros((rows, 0), dtype=complex)
    )
    u = _complete_columns(u_have, rows, rows if full else k)
    if full:
        v = _complete_columns(v_cols, cols, cols)
        sig = np.zeros(k)
        sig[: len(sigma)] = sigma
        return u, sig, v
    return u, sigma, v_cols


@dataclass
class BipartiteOperator:
    """Hermitian operator on C^m (x) C^n with the row index convention
    |i>(x)|j> -> i*n + j."""

    m: int
    n: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=complex)
        d = self.m * self.n
        if self.mat.shape != (d, d):
            raise ValueError(
                f"matrix of shape {self.mat.shape} does not match dims "
                f"({self.m}, {self.n})"
            )
        require_hermitian(self.mat)

    @property
    def dim(self) -> int:
        return self.m * self.n

    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def normalized(self) -> "BipartiteOperator":
        tr = self.trace()
        if abs(tr) < 1e-14:
            raise ValueError("cannot normalize a traceless operator")
        return BipartiteOperator(self.m, self.n, self.mat / tr)


def pt_mat(mat: np.ndarray, m: int, n: int) -> np.ndarray:
    """Partial transpose on the first factor: block (i,j) <- block (j,i)."""
    return (
        mat.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n).copy()
    )


def partial_transpose(op: BipartiteOperator) -> BipartiteOperator:
    return BipartiteOperator(op.m, op.n, pt_mat(op.mat, op.m, op.n))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product consistent with the i*n + j index convention."""
    return np.kron(np.asarray(a), np.asarray(b))


def embed_operator(op: BipartiteOperator, m: int, n: int) -> BipartiteOperator:
    """Zero-pad each local factor of `op` up to dimensions (m, n)."""
    if m < op.m or n < op.n:
        raise ValueError("target dimensions must not shrink the operator")
    big = np.zeros((m * n, m * n), dtype=complex)
    src = op.mat.reshape(op.m, op.n, op.m, op.n)
    dst = big.reshape(m, n, m, n)
    dst[: op.m, : op.n, : op.m, : op.n] = src
    return BipartiteOperator(m, n, big)


def negativity(h: np.ndarray) -> float:
    """Absolute value of the sum of negative eigenvalues.

    Equals (||H||_1 - tr H)/2 and vanishes exactly on positive
    semidefinite input (within the NEG_EIG_TOL eigenvalue margin).
    """
    h = require_hermitian(h)
    vals = eig_hermitian(h).values
    cut = -NEG_EIG_TOL * max(1.0, fro_norm(h))
    return float(-vals[vals < cut].sum())


def majorizes(y: np.ndarray, x: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the sorted partial sums of x stay below those of y and the
    totals agree within `tol`."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape or y.ndim != 1:
        raise LengthMismatchError(f"shapes {y.shape} and {x.shape} differ")
    ys = np.sort(y)[::-1]
    xs = np.sort(x)[::-1]
    cy = np.cumsum(ys)
    cx = np.cumsum(xs)
    if abs(cy[-1] - cx[-1]) > tol:
        return False
    return bool(np.all(cx[:-1] <= cy[:-1] + tol))


def inner_product_lower_bound(spec_a: np.ndarray, spec_b: np.ndarray) -> float:
    """Pairing bound sum_i a_i^down * b_(n-i+1)^down; tr(AB) >= this value
    for any Hermitian A, B carrying these spectra."""
    a = np.asarray(spec_a, dtype=float)
    b = np.asarray(spec_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return float(np.sort(a)[::-1] @ np.sort(b))


# ---------------------------------------------------------------------------
# Matrix JSON interchange: {"m": int, "n": int, "entries": [[re, im], ...]}
# with entries flat row-major of length (m*n)^2.

def operator_to_json(op: BipartiteOperator) -> dict:
    flat = op.mat.reshape(-1)
    return {
        "m": op.m,
        "n": op.n,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def operator_from_json(obj: dict, allow_nonhermitian: bool = False) -> BipartiteOperator:
    try:
        m = int(obj["m"])
        n = int(obj["n"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    d = m * n
    if len(entries) != d * d:
        raise ValueError(
            f"expected {d * d} entries for dims ({m}, {n}), got {len(entries)}"
        )
    mat = np.array(
        [complex(re, im) for re, im in entries], dtype=complex
    ).reshape(d, d)
    if allow_nonhermitian:
        mat = (mat + mat.conj().T) / 2.0
    return BipartiteOperator(m, n, mat)


def write_operator(path: str, op: BipartiteOperator) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(operator_to_json(op), fh)


def read_operator(path: str, allow_nonhermitian: bool = False) -> BipartiteOperator:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return operator_from_json(obj, allow_nonhermitian=allow_nonhermitian)
