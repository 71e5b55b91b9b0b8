"""Stabilizer constructions, Construction X extensions, distance bounds and
propagation rules.

Every construction returns a QuantumParams record; the extensions also
return an ExtensionWitness holding the block matrices of the extended
generator matrix, enough to re-verify the claim independently.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .codes import (LinearCode, dual, gram, intersect_codes, is_self_orthogonal, matmul,
                    psi_compress, rank, sum_codes)
from .galois import GF, FieldError, _i64, solve_norm
from .orthobasis import complement, hermitian_orthonormalize, symplectic_pair_basis
from .wdist import ShiftSymmetry, weight_bounds

REGIMES = ("hermitian", "symplectic", "css", "trace_symplectic")


class ConstructionError(ValueError):
    pass


# ---- parameter records -------------------------------------------------------------
@dataclass(frozen=True)
class QuantumParams:
    """[[n, k, d]]_q with d known to lie in [d_lower, d_upper].

    ``k`` is a Fraction for trace-symplectic codes whose dimension is not an
    integral power of q.  ``pure`` is None when only bounds were computed.
    """
    n: int
    k: int | Fraction
    q: int
    d_lower: int
    d_upper: int
    regime: str
    pure: bool | None = None
    bounds: dict = dc_field(default_factory=dict, compare=False, hash=False)
    provenance: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ConstructionError(f"k = {self.k} outside [0, {self.n}]")
        if not 1 <= self.d_lower <= self.d_upper <= max(self.n, 1):
            raise ConstructionError(
                f"bad distance interval {self.d_lower}..{self.d_upper} for n = {self.n}")
        # quantum Singleton: a violation means a bookkeeping bug upstream
        if self.k > self.n - 2 * (self.d_lower - 1) and self.k > 0:
            raise ConstructionError(f"{self.line()} violates the quantum Singleton bound")

    @property
    def exact(self) -> bool:
        return self.d_lower == self.d_upper

    @property
    def log_p_dimension(self) -> Fraction:
        """log_p K where K = q^k."""
        p_pow = _prime_power(self.q)[1]
        return Fraction(self.k) * p_pow

    def line(self) -> str:
        """Guaranteed parameters, e.g. [[22,6,6]]_2 or ((48,2^23,1))_4."""
        if Fraction(self.k).denominator == 1:
            return f"[[{self.n},{int(self.k)},{self.d_lower}]]_{self.q}"
        p = _prime_power(self.q)[0]
        return f"(({self.n},{p}^{self.log_p_dimension},{self.d_lower}))_{self.q}"

    def head(self) -> str:
        """Length and dimension only, e.g. [[48,6]]_2."""
        if Fraction(self.k).denominator == 1:
            return f"[[{self.n},{int(self.k)}]]_{self.q}"
        p = _prime_power(self.q)[0]
        return f"(({self.n},{p}^{self.log_p_dimension}))_{self.q}"

    def bounds_line(self) -> str:
        head = self.head()
        if self.exact:
            return f"{head}, d = {self.d_lower}"
        return f"{head}, {self.d_lower} <= d <= {self.d_upper}"

    def triple(self) -> tuple:
        return (self.n, self.k, self.d_lower)

    def to_json(self) -> dict:
        k = self.k if isinstance(self.k, int) else str(self.k)
        return {"n": self.n, "k": k, "q": self.q, "d_lower": self.d_lower,
                "d_upper": self.d_upper, "regime": self.regime, "pure": self.pure,
                "bounds": self.bounds, "provenance": self.provenance, "line": self.line()}

    @classmethod
    def from_json(cls, obj: dict) -> QuantumParams:
        k = obj["k"]
        k = int(k) if isinstance(k, int) or "/" not in str(k) else Fraction(k)
        return cls(int(obj["n"]), k, int(obj["q"]), int(obj["d_lower"]), int(obj["d_upper"]),
                   obj["regime"], obj.get("pure"), dict(obj.get("bounds", {})),
                   dict(obj.get("provenance", {})))


def _prime_power(q: int) -> tuple[int, int]:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a = 0
    while q > 1:
        q //= p
        a += 1
    return p, a


def _params(n, k, q, lo, hi, regime, pure=None, bounds=None) -> QuantumParams:
    n_cap = max(n, 1)
    lo, hi = max(1, min(lo, n_cap)), max(1, min(hi, n_cap))
    if isinstance(k, Fraction) and k.denominator == 1:
        k = int(k)
    return QuantumParams(n, k, q, lo, max(lo, hi), regime, pure, dict(bounds or {}))


@dataclass(frozen=True, eq=False)
class ExtensionWitness:
    regime: str
    e: int
    blocks: dict            # name -> matrix
    beta: int | None
    G: np.ndarray           # generator matrix of the dual of the extended code
    extended: LinearCode    # the self-orthogonal extension C'

    def to_json(self) -> dict:
        return {"regime": self.regime, "e": self.e, "beta": self.beta,
                "blocks": {k: _i64(v).tolist() for k, v in self.blocks.items()},
                "G": _i64(self.G).tolist(), "extended": self.extended.to_json()}


# ---- weights ---------------------------------------------------------------------------
@dataclass
class WeightOptions:
    budget: float = 5e10
    symmetry: ShiftSymmetry | None = None


def _wb(A: LinearCode, exclude, metric, opts: WeightOptions) -> tuple[int, int]:
    return weight_bounds(A, exclude, metric, symmetry=opts.symmetry, budget=opts.budget)


# ---- stabilizer constructions -----------------------------------------------------------
def _from_self_orthogonal(C: LinearCode, kind: str, metric: str, n_q: int, k_q, q: int,
                          regime: str, opts: WeightOptions) -> QuantumParams:
    if not is_self_orthogonal(C, kind):
        raise ConstructionError("code is not self-orthogonal")
    D = dual(C, kind)
    dlo, dhi = _wb(D, None, metric, opts)
    if D == C:
        return _params(n_q, k_q, q, dlo, dhi, regime, True, {"d_dual": dhi})
    lo, hi = _wb(D, C, metric, opts)
    pure = None
    if lo == hi and dlo == dhi:
        pure = lo == dlo
    return _params(n_q, k_q, q, lo, hi, regime, pure, {"d_dual": dhi, "d_diff": hi})


def hermitian_construction(C: LinearCode, opts: WeightOptions | None = None) -> QuantumParams:
    """Hermitian self-orthogonal [n,k]_{q^2} -> [[n, n-2k]]_q."""
    opts = opts or WeightOptions()
    q = C.field.half_order
    return _from_self_orthogonal(C, "hermitian", "hamming", C.n, C.n - 2 * C.k, q,
                                 "hermitian", opts)


def symplectic_construction(C: LinearCode, opts: WeightOptions | None = None) -> QuantumParams:
    """Symplectic self-orthogonal [2n, n-k]_q -> [[n, k]]_q."""
    opts = opts or WeightOptions()
    n = C.n // 2
    return _from_self_orthogonal(C, "symplectic", "symplectic", n, n - C.k, C.field.order,
                                 "symplectic", opts)


def css_construction(C1: LinearCode, C2: LinearCode,
                     opts: WeightOptions | None = None) -> QuantumParams:
    """C2^perp inside C1 -> [[n, k1+k2-n]]_q."""
    opts = opts or WeightOptions()
    D1, D2 = dual(C1), dual(C2)
    if not C1.contains_code(D2):
        raise ConstructionError("C2^perp is not contained in C1")
    n = C1.n
    q = C1.field.order
    if D2 == C1:
        a, b = _wb(C1, None, "hamming", opts), _wb(C2, None, "hamming", opts)
        return _params(n, 0, q, min(a[0], b[0]), min(a[1], b[1]), "css", True)
    a, b = _wb(C1, D2, "hamming", opts), _wb(C2, D1, "hamming", opts)
    return _params(n, C1.k + C2.k - n, q, min(a[0], b[0]), min(a[1], b[1]), "css")


def trace_symplectic_construction(Cp: LinearCode, F: GF,
                                  opts: WeightOptions | None = None) -> QuantumParams:
    """Additive code over F = F_{p^m}, given by its F_p expansion Psi_B(C)."""
    opts = opts or WeightOptions()
    m = F.degree
    if Cp.field.order != F.p or Cp.n % (2 * m):
        raise ConstructionError("expansion must be F_p-linear of length 2nm")
    n = Cp.n // (2 * m)
    k_q = Fraction(m * n - Cp.k, m)
    metric = "block_symplectic:%d" % m if m > 1 else "symplectic"
    return _from_self_orthogonal(Cp, "symplectic", metric, n, k_q, F.order,
                                 "trace_symplectic", opts)


# ---- distance bounds shared by the extension variants --------------------------------------
def _extension_bounds(C: LinearCode, D: LinearCode, H: LinearCode, metric: str,
                      opts: WeightOptions, compute: bool) -> tuple[int, int, dict]:
    """d_impure, d_max (and d_pure) from C, its dual D and hull H."""
    if not compute:
        return 1, 10 ** 9, {}
    S = sum_codes(C, D)
    a = _wb(D, H, metric, opts)             # wgt(D \ hull)
    b = _wb(S, C, metric, opts)             # wgt((C + D) \ C)
    lo = min(a[0], b[0] + 1)
    hi = a[1]
    info = {"wgt_dual_minus_hull": list(a), "wgt_sum_minus_code": list(b),
            "d_impure": lo, "d_max": hi}
    try:
        d_dual = _wb(D, None, metric, opts)
        d_sum = _wb(S, None, metric, opts)
        info["d_pure"] = min(d_dual[0], d_sum[0] + 1)
        info["d_dual"], info["d_sum"] = list(d_dual), list(d_sum)
    except Exception:  # noqa: BLE001 - the weaker bound is informational only
        pass
    return lo, hi, info


def _purity(lo: int, hi: int, info: dict) -> bool | None:
    """True when d is exact and meets the lower bound on the whole extended dual."""
    if lo == hi and info.get("d_pure") == lo:
        return True
    return None


# ---- Hermitian --------------------------------------------------------------------------------
def extend_hermitian(C: LinearCode, rng: np.random.Generator | None = None,
                     opts: WeightOptions | None = None, compute_bounds: bool = True):
    """Hermitian self-orthogonal extension of an arbitrary [n,k]_{q^2} code."""
    opts = opts or WeightOptions()
    F = C.field
    q = F.half_order
    n, k = C.n, C.k
    D = dual(C, "hermitian")
    H = intersect_codes(C, D)
    e = k - H.k
    A = complement(D, H)
    M = H.G
    B = hermitian_orthonormalize(F, complement(C, H, rng), n).rows if e else np.zeros((0, n), dtype=np.int64)
    beta = int(solve_norm(F.neg(1), F))
    z = lambda r: np.zeros((r, e), dtype=np.int64)  # noqa: E731
    bI = _i64(F.mul(beta, np.eye(e, dtype=np.int64)))
    top = np.concatenate([A, z(A.shape[0])], axis=1)
    low = np.concatenate([np.concatenate([M, z(M.shape[0])], axis=1),
                          np.concatenate([B, bI], axis=1)])
    G = np.concatenate([top, low])
    Cx = LinearCode.from_rows(F, low, n + e)
    w = ExtensionWitness("hermitian", e, {"A": A, "M": M, "B": B}, beta, G, Cx)
    lo, hi, info = _extension_bounds(C, D, H, "hamming", opts, compute_bounds)
    n_q, k_q = n + e, n - 2 * k + e
    if k_q == 0 and compute_bounds:
        lo, hi = _wb(Cx, None, "hamming", WeightOptions(opts.budget))
    info["e"] = e
    return w, _params(n_q, k_q, q, lo, hi, "hermitian", _purity(lo, hi, info), info)


# ---- symplectic -------------------------------------------------------------------------------
def _halves(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    h = X.shape[1] // 2
    return X[:, :h], X[:, h:]


def _pad_halves(F: GF, X: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    a, b = _halves(X)
    return np.concatenate([a, left, b, right], axis=1)


def _symplectic_extension(C: LinearCode, rng):
    F = C.field
    n2 = C.n
    D = dual(C, "symplectic")
    H = intersect_codes(C, D)
    if (C.k - H.k) % 2:
        raise FieldError("odd symplectic defect")  # pragma: no cover
    e = (C.k - H.k) // 2
    A, M = complement(D, H), H.G
    Z = symplectic_pair_basis(F, complement(C, H, rng), n2).rows if e else np.zeros((0, n2), dtype=np.int64)
    even, odd = Z[0::2], Z[1::2]
    I = np.eye(e, dtype=np.int64)
    O = lambda r: np.zeros((r, e), dtype=np.int64)  # noqa: E731
    rows_A = _pad_halves(F, A, O(A.shape[0]), O(A.shape[0]))
    rows_M = _pad_halves(F, M, O(M.shape[0]), O(M.shape[0]))
    rows_1 = _pad_halves(F, even, I, O(e))
    rows_2 = _pad_halves(F, odd, O(e), _i64(F.neg(I)))
    low = np.concatenate([rows_M, rows_1, rows_2])
    G = np.concatenate([rows_A, low])
    Cx = LinearCode.from_rows(F, low, n2 + 2 * e)
    B11, B12 = _halves(even)
    B21, B22 = _halves(odd)
    blocks = {"A": A, "M": M, "B11": B11, "B12": B12, "B21": B21, "B22": B22}
    return ExtensionWitness("symplectic", e, blocks, None, G, Cx), D, H


def extend_symplectic(C: LinearCode, rng: np.random.Generator | None = None,
                      opts: WeightOptions | None = None, compute_bounds: bool = True):
    """Symplectic self-orthogonal extension of a [2n,k]_q code."""
    opts = opts or WeightOptions()
    w, D, H = _symplectic_extension(C, rng)
    n, e = C.n // 2, w.e
    lo, hi, info = _extension_bounds(C, D, H, "symplectic", opts, compute_bounds)
    k_q = n - C.k + e
    if k_q == 0 and compute_bounds:
        lo, hi = _wb(w.extended, None, "symplectic", WeightOptions(opts.budget))
    info["e"] = e
    return w, _params(n + e, k_q, C.field.order, lo, hi, "symplectic", _purity(lo, hi, info), info)


# ---- CSS ----------------------------------------------------------------------------------------
def css_defect(C1: LinearCode, C2: LinearCode) -> int:
    """n - k2 - dim(C1 cap C2^perp), checked against n - k1 - dim(C2 cap C1^perp)."""
    n = C1.n
    e1 = n - C2.k - intersect_codes(C1, dual(C2)).k
    e2 = n - C1.k - intersect_codes(C2, dual(C1)).k
    if e1 != e2:
        raise ConstructionError(f"inconsistent defects {e1} != {e2}")
    return e1


def extend_css(C1: LinearCode, C2: LinearCode, rng: np.random.Generator | None = None,
               opts: WeightOptions | None = None, compute_bounds: bool = True):
    """Symplectic CSS extension of C = C2^perp x C1^perp."""
    opts = opts or WeightOptions()
    F = C1.field
    n = C1.n
    if C2.field != F or C2.n != n:
        raise ConstructionError("codes over different spaces")
    D1, D2 = dual(C1), dual(C2)
    C12, C21 = intersect_codes(C1, D2), intersect_codes(C2, D1)
    e = css_defect(C1, C2)
    B12, B21 = complement(D2, C12, rng), complement(D1, C21, rng)
    E = matmul(F, B12, B21.T) if e else np.zeros((0, 0), dtype=np.int64)
    if e and rank(F, E) != e:
        raise ConstructionError("E = B12 B21^T is singular")  # pragma: no cover
    A1, A2 = complement(C1, C12), complement(C2, C21)
    O = lambda r: np.zeros((r, e), dtype=np.int64)  # noqa: E731
    first = np.concatenate([np.concatenate([C12.G, O(C12.k)], axis=1),
                            np.concatenate([B12, _i64(F.neg(E))], axis=1)])
    second = np.concatenate([np.concatenate([C21.G, O(C21.k)], axis=1),
                             np.concatenate([B21, np.eye(e, dtype=np.int64)], axis=1)])
    ne = n + e
    Z = lambda r: np.zeros((r, ne), dtype=np.int64)  # noqa: E731
    low = np.concatenate([np.concatenate([first, Z(first.shape[0])], axis=1),
                          np.concatenate([Z(second.shape[0]), second], axis=1)])
    top = np.concatenate([
        np.concatenate([A1, O(A1.shape[0]), Z(A1.shape[0])], axis=1),
        np.concatenate([Z(A2.shape[0]), A2, O(A2.shape[0])], axis=1)])
    G = np.concatenate([top, low])
    Cx = LinearCode.from_rows(F, low, 2 * ne)
    blocks = {"A1": A1, "A2": A2, "M12": C12.G, "M21": C21.G, "B12": B12, "B21": B21, "E": E}
    w = ExtensionWitness("css", e, blocks, None, G, Cx)
    info = {"e": e}
    q = F.order
    if compute_bounds:
        a = _wb(C1, C12, "hamming", opts)
        b = _wb(C2, C21, "hamming", opts)
        c = _wb(sum_codes(C1, D2), D2, "hamming", opts)
        d = _wb(sum_codes(C2, D1), D1, "hamming", opts)
        lo = min(a[0], b[0], c[0] + 1, d[0] + 1)
        hi = min(a[1], b[1])
        info.update({"wgt_C1_minus_C12": list(a), "wgt_C2_minus_C21": list(b),
                     "wgt_sum1_minus_dual2": list(c), "wgt_sum2_minus_dual1": list(d),
                     "d_impure": lo, "d_max": hi})
    else:
        lo, hi = 1, ne
    k_q = C1.k + C2.k - n + e
    if k_q == 0 and compute_bounds:
        plain = WeightOptions(opts.budget)
        lo = hi = min(_wb(dual(LinearCode.from_rows(F, second, ne)), None, "hamming", plain)[0],
                      _wb(dual(LinearCode.from_rows(F, first, ne)), None, "hamming", plain)[0])
    return w, _params(ne, k_q, q, lo, hi, "css", None, info)


def css_codes(w: ExtensionWitness) -> tuple[LinearCode, LinearCode]:
    """The extended pair (C1', C2') with C2'^perp inside C1'."""
    F = w.extended.field
    ne = w.extended.n // 2
    X = w.extended.G
    first = LinearCode.from_rows(F, X[:, :ne], ne)
    second = LinearCode.from_rows(F, X[:, ne:], ne)
    return dual(second), dual(first)


# ---- trace-symplectic -----------------------------------------------------------------------
def extend_trace_symplectic(Cp: LinearCode, F: GF, basis=None,
                            rng: np.random.Generator | None = None,
                            opts: WeightOptions | None = None, compute_bounds: bool = True):
    """Extension of an additive code over F = F_{p^m} given by Cp = Psi_B(C).

    The F_p expansion is extended symplectically, padded with copies of the
    self-dual code (I|0) up to a half length divisible by m, then compressed.
    Returns (witness, params, additive_rows) with the rows over F.
    """
    opts = opts or WeightOptions()
    m = F.degree
    P = Cp.field
    if P.order != F.p or Cp.n % (2 * m):
        raise ConstructionError("expansion must be F_p-linear of length 2nm")
    n = Cp.n // (2 * m)
    w, D, H = _symplectic_extension(Cp, rng)
    e = w.e
    pad = (-e) % m
    half = Cp.n // 2 + e
    X = w.extended.G
    if pad:
        a, b = _halves(X)
        Zp = np.zeros((X.shape[0], pad), dtype=np.int64)
        X = np.concatenate([a, Zp, b, Zp], axis=1)
        C0 = np.concatenate([np.zeros((pad, half), dtype=np.int64), np.eye(pad, dtype=np.int64),
                             np.zeros((pad, half + pad), dtype=np.int64)], axis=1)
        X = np.concatenate([X, C0])
    padded = LinearCode.from_rows(P, X, 2 * (half + pad))
    if padded.n % (2 * m):
        raise ConstructionError("padding failed")  # pragma: no cover
    rows = psi_compress(F, padded.G, basis)
    metric = "block_symplectic:%d" % m if m > 1 else "symplectic"
    lo, hi, info = _extension_bounds(Cp, D, H, metric, opts, compute_bounds)
    n_q = n + -(-e // m)
    k_q = Fraction(m * n - Cp.k + e, m)
    info.update({"e": e, "pad": pad, "padded_length": padded.n})
    wx = ExtensionWitness("trace_symplectic", e, dict(w.blocks, C0_size=np.array([pad])),
                          None, w.G, padded)
    return wx, _params(n_q, k_q, F.order, lo, hi, "trace_symplectic", _purity(lo, hi, info),
                       info), rows


# ---- verification ------------------------------------------------------------------------------
def check_extension(w: ExtensionWitness) -> bool:
    """The extension is self-orthogonal and G has full rank."""
    F = w.extended.field
    X = w.extended.G
    if w.regime == "hermitian":
        ok = not gram(F, X, X, "hermitian").any()
    else:
        ok = not gram(F, X, X, "symplectic").any()
    return ok and rank(F, w.G) == w.G.shape[0]


def exact_distance(w: ExtensionWitness, F: GF | None = None, budget_bits: int = 28) -> int:
    """True d(Q) of the extension by exhaustive search over C'^perp \\ C'."""
    from .wdist import min_weight_enum
    Cx = w.extended
    if w.regime == "hermitian":
        D, metric = dual(Cx, "hermitian"), "hamming"
    elif w.regime == "trace_symplectic" and F is not None and F.degree > 1:
        D, metric = dual(Cx, "symplectic"), "block_symplectic:%d" % F.degree
    else:
        D, metric = dual(Cx, "symplectic"), "symplectic"
    if D == Cx:
        return min_weight_enum(D, None, metric, budget_bits)
    return min_weight_enum(D, Cx, metric, budget_bits)


def certificate(w: ExtensionWitness, params: QuantumParams) -> dict:
    return {"claim": params.line(), "bounds": params.bounds_line(),
            "params": params.to_json(), "witness": w.to_json()}


def verify_certificate(cert: dict) -> bool:
    """Recheck self-orthogonality, rank and (n, k) of a stored certificate."""
    from .codes import LinearCode as LC
    wj = cert["witness"]
    Cx = LC.from_json(wj["extended"])
    G = np.array(wj["G"], dtype=np.int64).reshape(-1, Cx.n)
    w = ExtensionWitness(wj["regime"], int(wj["e"]), {}, wj.get("beta"), G, Cx)
    if not check_extension(w):
        return False
    p = QuantumParams.from_json(cert["params"])
    if w.regime == "hermitian":
        return p.n == Cx.n and p.k == Cx.n - 2 * Cx.k
    if w.regime in ("symplectic", "css"):
        return p.n == Cx.n // 2 and p.k == Cx.n // 2 - Cx.k
    m = _prime_power(p.q)[1]
    return p.n == Cx.n // (2 * m) and p.log_p_dimension == Cx.n // 2 - Cx.k


def dumps_certificate(w: ExtensionWitness, params: QuantumParams) -> str:
    return json.dumps(certificate(w, params), sort_keys=True)


# ---- propagation ------------------------------------------------------------------------------
def _singleton_cap(n: int, k) -> int:
    return max(1, min(n, int((n - k) // 2) + 1))


def propagation_step(p: QuantumParams) -> list[QuantumParams]:
    """One application of each applicable rule; distances are lower bounds."""
    out = []

    def make(n, k, d, rule, pure=None):
        if n < 1 or k < 0 or d < 1 or k > n:
            return
        cap = _singleton_cap(n, k)
        if d > cap:
            return
        out.append(QuantumParams(n, k, p.q, d, cap, p.regime, pure,
                                 provenance={"rule": rule, "from": p.line()}))

    n, k, d = p.n, p.k, p.d_lower
    if k > 1 or (k >= 1 and p.pure):
        make(n, k - 1, d, "subcode")
    if k > 0:
        make(n + 1, k, d, "lengthen")
    if n >= 2 and d > 1:
        make(n - 1, k, d - 1, "puncture")
    if p.pure and n >= 2 and d > 1:
        make(n - 1, k + 1, d - 1, "shorten")
    return out


def propagate(p: QuantumParams, depth: int = 3) -> set[QuantumParams]:
    """Codes reachable within ``depth`` rule applications (excluding p itself)."""
    seen = {p.triple(): p}
    frontier = [p]
    for _ in range(depth):
        nxt = []
        for x in frontier:
            for y in propagation_step(x):
                if y.triple() not in seen:
                    seen[y.triple()] = y
                    nxt.append(y)
        frontier = nxt
    seen.pop(p.triple())
    return set(seen.values())


def dominates(a: QuantumParams, b: QuantumParams) -> bool:
    """Same n and q, k and d both at least as good with one strict."""
    if a.n != b.n or a.q != b.q:
        return False
    return a.k >= b.k and a.d_lower >= b.d_lower and (a.k > b.k or a.d_lower > b.d_lower)


def prune_dominated(items) -> list[QuantumParams]:
    items = list({x.triple(): x for x in items}.values())
    keep = [x for x in items if not any(dominates(y, x) for y in items)]
    return sorted(keep, key=lambda x: (x.q, x.n, -Fraction(x.k), -x.d_lower))


def swap_with_dual_params(n: int, k: int, e: int) -> tuple[int, int]:
    """(n~, k~) when Construction X starts from C^perp instead of C."""
    return n + e + (n - 2 * k), e
