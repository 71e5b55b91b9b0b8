"""Linear codes over a tower level: inner products, duals, hulls, and the
coordinate maps Phi (F_q^2 pairs <-> F_{q^2}), Psi_B (F_{p^m} -> F_p^m) and
the swap tau."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .galois import GF, FieldError, FieldTower, _i64

KINDS = ("euclidean", "hermitian", "symplectic", "trace_symplectic")


# ---- vector helpers -------------------------------------------------------------
def fsum(F: GF, a, axis=-1):
    """Field sum along an axis."""
    a = _i64(a)
    if F.p == 2:
        return np.bitwise_xor.reduce(a, axis=axis) if a.shape[axis] else np.zeros(
            np.delete(a.shape, axis), dtype=np.int64)
    if F.order == F.p:
        return a.sum(axis=axis) % F.p
    out = 0
    scale = 1
    for _ in range(F.degree):
        out = out + (((a // scale) % F.p).sum(axis=axis) % F.p) * scale
        scale *= F.p
    return _i64(out)


def matmul(F: GF, A, B) -> np.ndarray:
    A, B = _i64(A), _i64(B)
    if A.ndim == 1:
        A = A[None, :]
    if F.order == F.p and F.p < (1 << 20):
        return (A @ B) % F.p
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        col = A[:, k]
        if not col.any():
            continue
        acc = _i64(F.add(acc, F.mul(col[:, None], B[k][None, :])))
    return acc


def conj(F: GF, a):
    """Elementwise a -> a^q on F_{q^2}."""
    return _i64(F.pow(_i64(a), F.half_order))


def tau_swap(F: GF, v) -> np.ndarray:
    """(u1|u2) -> (u2|-u1) along the last axis."""
    v = _i64(v)
    n2 = v.shape[-1]
    if n2 % 2:
        raise ValueError("tau needs even length")
    h = n2 // 2
    return np.concatenate([v[..., h:], _i64(F.neg(v[..., :h]))], axis=-1)


def weight(v) -> np.ndarray | int:
    v = _i64(v)
    w = np.count_nonzero(v, axis=-1)
    return int(w) if np.ndim(w) == 0 else w


def symplectic_weight(v) -> np.ndarray | int:
    v = _i64(v)
    if v.shape[-1] % 2:
        raise ValueError("symplectic weight needs even length")
    h = v.shape[-1] // 2
    w = np.count_nonzero((v[..., :h] != 0) | (v[..., h:] != 0), axis=-1)
    return int(w) if np.ndim(w) == 0 else w


def _transform(F: GF, v, kind: str) -> np.ndarray:
    if kind == "euclidean":
        return _i64(v)
    if kind == "hermitian":
        return conj(F, v)
    if kind in ("symplectic", "trace_symplectic"):
        return tau_swap(F, v)
    raise ValueError(f"unknown inner product {kind!r}")


def inner_product(F: GF, u, v, kind: str = "euclidean"):
    """<u, v> for the four inner products; the trace-symplectic value is in F_p."""
    u, v = _i64(u), _i64(v)
    if u.shape[-1] != v.shape[-1]:
        raise ValueError("length mismatch")
    val = fsum(F, F.mul(u, _transform(F, v, kind)))
    if kind == "trace_symplectic":
        val = F.trace(val)
    return int(val) if np.ndim(val) == 0 else val


def gram(F: GF, X, Y, kind: str = "euclidean") -> np.ndarray:
    """Matrix of <x_i, y_j>."""
    X, Y = np.atleast_2d(_i64(X)), np.atleast_2d(_i64(Y))
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.zeros((X.shape[0], Y.shape[0]), dtype=np.int64)
    M = matmul(F, X, _transform(F, Y, kind).T)
    if kind == "trace_symplectic":
        M = _i64(F.trace(M))
    return M


# ---- row reduction ----------------------------------------------------------------
def rref(F: GF, M) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form with first-nonzero pivoting; zero rows dropped."""
    M = np.array(_i64(M), dtype=np.int64, copy=True)
    if M.ndim == 1:
        M = M[None, :]
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        if M[r, c] != 1:
            M[r] = F.mul(M[r], F.inv(int(M[r, c])))
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            M[nzr] = F.sub(M[nzr], F.mul(col[nzr][:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], tuple(pivots)


def rank(F: GF, M) -> int:
    M = _i64(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M, n: int | None = None) -> np.ndarray:
    """Basis (rows) of {x : M x^T = 0}."""
    M = _i64(M)
    if M.size == 0:
        n = n if n is not None else M.shape[-1]
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    n = R.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    H = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        H[j, f] = 1
        if piv:
            H[j, list(piv)] = F.neg(R[:, f])
    return H


def solve_left(F: GF, A, b) -> np.ndarray | None:
    """x with x A = b, or None."""
    A, b = _i64(A), _i64(b)
    k = A.shape[0]
    aug = np.concatenate([A.T, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    if k in piv:
        return None
    x = np.zeros(k, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, k]
    return x


def inverse(F: GF, A) -> np.ndarray:
    A = _i64(A)
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1))
    if tuple(piv[:n]) != tuple(range(n)) or len(piv) < n:
        raise FieldError("matrix is singular")
    return R[:n, n:]


# ---- codes ----------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class LinearCode:
    """Row space of a generator matrix, stored in reduced row echelon form."""
    field: GF
    n: int
    G: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, F: GF, rows, n: int | None = None) -> LinearCode:
        rows = _i64(rows)
        if rows.ndim == 1:
            rows = rows[None, :] if rows.size else rows.reshape(0, n or 0)
        if n is None:
            n = rows.shape[1]
        if rows.shape[0] == 0:
            return cls(F, n, np.zeros((0, n), dtype=np.int64), ())
        if rows.shape[1] != n:
            raise ValueError("row length mismatch")
        if rows.max(initial=0) >= F.order or rows.min(initial=0) < 0:
            raise ValueError("entries out of field range")
        R, piv = rref(F, rows)
        R.setflags(write=False)
        return cls(F, n, R, piv)

    @classmethod
    def zero(cls, F: GF, n: int) -> LinearCode:
        return cls.from_rows(F, np.zeros((0, n), dtype=np.int64), n)

    @classmethod
    def full(cls, F: GF, n: int) -> LinearCode:
        return cls.from_rows(F, np.eye(n, dtype=np.int64))

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def __repr__(self):
        return f"[{self.n},{self.k}]_{self.field.order}"

    def reduce(self, V) -> np.ndarray:
        """Residual of vectors after elimination against the RREF basis."""
        V = np.atleast_2d(_i64(V))
        if self.k == 0:
            return V.copy()
        coeff = V[:, list(self.pivots)]
        return _i64(self.field.sub(V, matmul(self.field, coeff, self.G)))

    def contains(self, V) -> np.ndarray:
        return ~self.reduce(V).any(axis=1)

    def contains_code(self, other: LinearCode) -> bool:
        return bool(self.contains(other.G).all()) if other.k else True

    def __eq__(self, other):
        return (isinstance(other, LinearCode) and self.field == other.field
                and self.n == other.n and self.k == other.k
                and self.pivots == other.pivots and np.array_equal(self.G, other.G))

    __hash__ = None

    def encode(self, msgs) -> np.ndarray:
        return matmul(self.field, np.atleast_2d(_i64(msgs)), self.G)

    def codewords(self) -> np.ndarray:
        """All codewords (small codes only)."""
        F = self.field
        if F.order ** self.k > 1 << 24:
            raise ValueError("too many codewords to enumerate")
        if self.k == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        grids = np.indices((F.order,) * self.k).reshape(self.k, -1).T
        return self.encode(grids)

    def random_codeword(self, rng) -> np.ndarray:
        return self.encode(self.field.random(rng, self.k))[0]

    # serialization
    def to_json(self) -> dict:
        F = self.field
        return {"field": FieldTower(F.chain).to_json(), "n": self.n,
                "rows": [[F.fmt(x) for x in row] for row in self.G]}

    @classmethod
    def from_json(cls, obj: dict) -> LinearCode:
        F = FieldTower.from_json(obj["field"]).top
        rows = [[F.parse(x) for x in row] for row in obj["rows"]]
        return cls.from_rows(F, np.array(rows, dtype=np.int64).reshape(-1, obj["n"]), obj["n"])

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _check_kind(C: LinearCode, kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown inner product {kind!r}")
    if kind in ("symplectic", "trace_symplectic") and C.n % 2:
        raise ValueError("symplectic inner products need even length")
    if kind == "hermitian":
        C.field.half_order


def dual(C: LinearCode, kind: str = "euclidean") -> LinearCode:
    """Dual code; the trace-symplectic dual of an F_q-linear code is its symplectic dual."""
    _check_kind(C, kind)
    F = C.field
    H = nullspace(F, C.G, C.n) if C.k else np.eye(C.n, dtype=np.int64)
    if kind == "hermitian":
        H = conj(F, H)
    elif kind in ("symplectic", "trace_symplectic"):
        H = tau_swap(F, H)
    return LinearCode.from_rows(F, H, C.n)


def sum_codes(C1: LinearCode, C2: LinearCode) -> LinearCode:
    if C1.field != C2.field or C1.n != C2.n:
        raise ValueError("codes over different fields or lengths")
    return LinearCode.from_rows(C1.field, np.concatenate([C1.G, C2.G]), C1.n)


def intersect_codes(C1: LinearCode, C2: LinearCode) -> LinearCode:
    if C1.field != C2.field or C1.n != C2.n:
        raise ValueError("codes over different fields or lengths")
    return dual(sum_codes(dual(C1), dual(C2)))


def hull(C: LinearCode, kind: str = "euclidean") -> LinearCode:
    return intersect_codes(C, dual(C, kind))


def is_self_orthogonal(C: LinearCode, kind: str = "euclidean") -> bool:
    return not gram(C.field, C.G, C.G, kind).any()


def complement_basis(big: LinearCode, sub: LinearCode) -> np.ndarray:
    """Rows completing a basis of ``sub`` to one of ``big`` (deterministic)."""
    F = big.field
    rows = []
    cur = sub
    for row in big.G:
        if not cur.contains(row)[0]:
            rows.append(row)
            cur = LinearCode.from_rows(F, np.vstack([cur.G, row]), big.n)
    return np.array(rows, dtype=np.int64).reshape(len(rows), big.n)


def direct_product(A: LinearCode, B: LinearCode) -> LinearCode:
    """A x B = {(a|b)}."""
    F = A.field
    top = np.concatenate([A.G, np.zeros((A.k, B.n), dtype=np.int64)], axis=1)
    bot = np.concatenate([np.zeros((B.k, A.n), dtype=np.int64), B.G], axis=1)
    return LinearCode.from_rows(F, np.concatenate([top, bot]), A.n + B.n)


# ---- Phi: F_q x F_q <-> F_{q^2} -------------------------------------------------------
def _phi_basis(F: GF, basis):
    if F.base is None or F.rel_degree != 2:
        raise FieldError("Phi needs F_{q^2} built as a degree-2 level over F_q")
    return (1, F.prim) if basis is None else tuple(int(b) for b in basis)


def phi_denominator(F: GF, basis=None) -> int:
    a, b = _phi_basis(F, basis)
    q = F.half_order
    den = F.sub(F.mul(a, F.pow(b, q)), F.mul(F.pow(a, q), b))
    if den == 0:
        raise FieldError("not a basis of F_{q^2}/F_q")
    return den


def phi_compress(F: GF, w, basis=None) -> np.ndarray:
    """(a|b) over F_q (length 2n) -> a*alpha + b*beta over F_{q^2}."""
    al, be = _phi_basis(F, basis)
    phi_denominator(F, basis)
    w = _i64(w)
    if w.shape[-1] % 2:
        raise ValueError("odd length")
    h = w.shape[-1] // 2
    return _i64(F.add(F.mul(w[..., :h], al), F.mul(w[..., h:], be)))


def phi_expand(F: GF, v, basis=None) -> np.ndarray:
    """v over F_{q^2} -> (a|b) over F_q with v = a*alpha + b*beta."""
    al, be = _phi_basis(F, basis)
    den = phi_denominator(F, basis)
    q = F.half_order
    v = _i64(v)
    vq = conj(F, v)
    a = F.div(F.sub(F.mul(v, F.pow(be, q)), F.mul(vq, be)), den)
    b = F.div(F.sub(F.mul(vq, al), F.mul(v, F.pow(al, q))), den)
    return np.concatenate([_i64(a), _i64(b)], axis=-1)


def trace_alternating(F: GF, v, w, basis=None):
    """tr((v.w^q - v^q.w) / (alpha beta^q - alpha^q beta)), a value in F_p."""
    den = phi_denominator(F, basis)
    v, w = _i64(v), _i64(w)
    num = F.sub(fsum(F, F.mul(v, conj(F, w))), fsum(F, F.mul(conj(F, v), w)))
    val = F.div(num, den)
    return F.base.trace(val)


def phi_code(C: LinearCode, basis=None) -> LinearCode:
    """Phi^{-1}(C) as an F_q-linear code of length 2n."""
    F = C.field
    rows = [C.G, _i64(F.mul(C.G, F.prim))] if C.k else [C.G]
    exp = phi_expand(F, np.concatenate(rows), basis)
    return LinearCode.from_rows(F.base, exp, 2 * C.n)


# ---- Psi_B: F_{p^m} -> F_p^m ---------------------------------------------------------------
def polynomial_basis(F: GF) -> tuple[int, ...]:
    """1, w, ..., w^(m-1) for the level's generator w over F_p."""
    g = F.prim
    return tuple(F.pow(g, i) for i in range(F.degree))


def dual_basis(F: GF, basis: Sequence[int]) -> tuple[int, ...]:
    """Trace-dual basis: tr(alpha_i beta_j) = delta_ij."""
    basis = tuple(int(b) for b in basis)
    m = F.degree
    if len(basis) != m:
        raise FieldError("basis has the wrong size")
    M = np.array([[F.trace(F.mul(a, b)) for b in basis] for a in basis], dtype=np.int64)
    P = F.chain[0]
    X = inverse(P, M)
    out = []
    for j in range(m):
        acc = 0
        for k in range(m):
            acc = F.add(acc, F.mul(int(X[j, k]), basis[k]))
        out.append(acc)
    return tuple(out)


def _coords(F: GF, v, against: Sequence[int]) -> np.ndarray:
    """Coordinates c_j = tr(v * against_j)."""
    v = _i64(v)
    return np.stack([_i64(F.trace(F.mul(v, a))) for a in against], axis=-1)


def psi_expand(F: GF, v, basis: Sequence[int] | None = None) -> np.ndarray:
    """(a|b) over F_{p^m} -> coordinates of a in B and of b in the dual basis."""
    basis = polynomial_basis(F) if basis is None else tuple(basis)
    dual_b = dual_basis(F, basis)
    v = _i64(v)
    if v.shape[-1] % 2:
        raise ValueError("odd length")
    h = v.shape[-1] // 2
    a = _coords(F, v[..., :h], dual_b)   # a = sum a_j alpha_j
    b = _coords(F, v[..., h:], basis)    # b = sum b_j beta_j
    shp = v.shape[:-1]
    return np.concatenate([a.reshape(shp + (-1,)), b.reshape(shp + (-1,))], axis=-1)


def psi_compress(F: GF, w, basis: Sequence[int] | None = None) -> np.ndarray:
    basis = polynomial_basis(F) if basis is None else tuple(basis)
    dual_b = dual_basis(F, basis)
    m = F.degree
    w = _i64(w)
    if w.shape[-1] % (2 * m):
        raise ValueError("length must be a multiple of 2m")
    h = w.shape[-1] // 2
    shp = w.shape[:-1]
    A = w[..., :h].reshape(shp + (h // m, m))
    B = w[..., h:].reshape(shp + (h // m, m))
    a = np.zeros(shp + (h // m,), dtype=np.int64)
    b = np.zeros_like(a)
    for j in range(m):
        a = _i64(F.add(a, F.mul(A[..., j], basis[j])))
        b = _i64(F.add(b, F.mul(B[..., j], dual_b[j])))
    return np.concatenate([a, b], axis=-1)


def psi_code(F: GF, rows, basis: Sequence[int] | None = None) -> LinearCode:
    """F_p-linear image Psi_B(span_{F_p} rows) of an additive code over F."""
    rows = np.atleast_2d(_i64(rows))
    P = F.chain[0]
    exp = psi_expand(F, rows, basis)
    return LinearCode.from_rows(P, exp, exp.shape[-1])


def linear_to_additive_rows(C: LinearCode) -> np.ndarray:
    """F_p-spanning set of an F_q-linear code: rows times a polynomial basis."""
    F = C.field
    out = [_i64(F.mul(C.G, b)) for b in polynomial_basis(F)]
    return np.concatenate(out) if out else C.G
