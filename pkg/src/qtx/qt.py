"""Quasi-twisted codes: polynomial generators, CRT constituents, and the
self-orthogonality / hull bookkeeping for three regimes.

hermitian    codes over F_{q^2}, lambda^(q+1) = 1, Hermitian inner product,
             coordinates interleaved as index g*ell + t
symplectic   codes over F_q, lambda = +-1, ell = 2 ell' components, the first
             ell' forming the left half: index h*m*ell' + g*ell' + t'
lambda_pair  (lambda, lambda^-1)-QT codes C1 x C2 over F_q, same halves layout

All constituents are evaluated inside one extension K containing every root
of x^m - lambda.  Ranks do not depend on the ambient field, so dimensions
over the slot fields are ranks over K.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .codes import LinearCode, hull, matmul, rank
from .galois import (GF, FactorClassification, FieldError, FieldTower, _i64,
                     factor_constashift_poly, field, hermitian_field, poly_eval, poly_trim)

REGIMES = ("hermitian", "symplectic", "lambda_pair")
PAIRING = {"hermitian": "conjugate_reciprocal", "symplectic": "reciprocal",
           "lambda_pair": "none"}
IP_KIND = {"hermitian": "hermitian", "symplectic": "symplectic", "lambda_pair": "symplectic"}


# ---- specs ----------------------------------------------------------------------------
@dataclass(frozen=True)
class QTCodeSpec:
    field: GF
    m: int
    ell: int
    lam: int
    generators: tuple = ()
    regime: str = "hermitian"

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")
        if math.gcd(self.m, self.field.p) != 1:
            raise FieldError("gcd(m, p) must be 1")
        if self.lam == 0:
            raise FieldError("lambda must be nonzero")
        if self.halves and self.ell % 2:
            raise ValueError("symplectic layouts need an even number of components")
        gens = []
        for g in self.generators:
            if len(g) != self.ell:
                raise ValueError("each generator needs ell polynomials")
            polys = []
            for f in g:
                f = tuple(poly_trim(f))
                if len(f) > self.m:
                    raise ValueError("generator polynomial degree must be below m")
                if any(c < 0 or c >= self.field.order for c in f):
                    raise ValueError("coefficient outside the field")
                polys.append(f)
            gens.append(tuple(polys))
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def halves(self) -> bool:
        return self.regime in ("symplectic", "lambda_pair")

    @property
    def n(self) -> int:
        return self.m * self.ell

    def component_lambdas(self) -> list[int]:
        if self.regime == "lambda_pair":
            h = self.ell // 2
            return [self.lam] * h + [self.field.inv(self.lam)] * h
        return [self.lam] * self.ell

    def coefficient_array(self, gen) -> np.ndarray:
        arr = np.zeros((self.ell, self.m), dtype=np.int64)
        for t, f in enumerate(gen):
            arr[t, :len(f)] = f
        return arr

    def to_json(self) -> dict:
        F = self.field
        q = F.order
        return {"q": q, "m": self.m, "ell": self.ell, "lambda": F.fmt(self.lam),
                "regime": self.regime, "field": FieldTower(F.chain).to_json(),
                "generators": [[[F.fmt(c) for c in f] for f in g] for g in self.generators]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> QTCodeSpec:
        regime = obj.get("regime", "hermitian")
        if "field" in obj:
            F = FieldTower.from_json(obj["field"]).top
        else:
            F = code_field(int(obj["q"]), regime)
        gens = []
        for g in obj.get("generators", []):
            gens.append(tuple(_parse_poly(F, f) for f in g))
        return cls(F, int(obj["m"]), int(obj["ell"]), F.parse(obj.get("lambda", 1)),
                   tuple(gens), regime)

    @classmethod
    def loads(cls, text: str) -> QTCodeSpec:
        return cls.from_json(json.loads(text))


def code_field(q: int, regime: str) -> GF:
    """Alphabet of size q; Hermitian codes get F_{q} as a degree-2 level over sqrt(q)."""
    if regime == "hermitian":
        r = math.isqrt(q)
        if r * r != q:
            raise FieldError("Hermitian codes need a square alphabet size")
        return hermitian_field(r)
    return field(q)


def _parse_poly(F: GF, f) -> tuple[int, ...]:
    if isinstance(f, (int, np.integer)):
        c = F.parse(int(f))
        return (c,) if c else ()
    if isinstance(f, str):
        f = f.strip()
        if f in ("", "0"):
            return ()
        if F.order <= 10 and F.order == F.p and f.isdigit():
            return tuple(int(ch) for ch in f)
        f = [x for x in f.replace(";", ",").split(",")]
    return tuple(F.parse(c) for c in f)


def _shift_rows(spec: QTCodeSpec, gen) -> np.ndarray:
    """m x ell x m array: x^g * gen for g < m, reduced mod x^m - lambda_t."""
    F = spec.field
    m = spec.m
    base = spec.coefficient_array(gen)
    lams = np.array(spec.component_lambdas(), dtype=np.int64)
    out = np.zeros((m, spec.ell, m), dtype=np.int64)
    cur = base
    for g in range(m):
        out[g] = cur
        wrapped = _i64(F.mul(cur[:, -1], lams))
        cur = np.concatenate([wrapped[:, None], cur[:, :-1]], axis=1)
    return out


def to_coordinates(spec: QTCodeSpec, arr: np.ndarray) -> np.ndarray:
    """(..., ell, m) coefficient arrays -> (..., m*ell) codewords."""
    arr = _i64(arr)
    lead = arr.shape[:-2]
    if spec.halves:
        h = spec.ell // 2
        a = arr.reshape(lead + (2, h, spec.m))
        a = np.swapaxes(a, -1, -2)           # (..., 2, m, h)
        return a.reshape(lead + (spec.n,))
    return np.swapaxes(arr, -1, -2).reshape(lead + (spec.n,))


def from_coordinates(spec: QTCodeSpec, words: np.ndarray) -> np.ndarray:
    words = _i64(words)
    lead = words.shape[:-1]
    if spec.halves:
        h = spec.ell // 2
        a = words.reshape(lead + (2, spec.m, h))
        a = np.swapaxes(a, -1, -2)
        return a.reshape(lead + (spec.ell, spec.m))
    return np.swapaxes(words.reshape(lead + (spec.m, spec.ell)), -1, -2)


def expand_generator_matrix(spec: QTCodeSpec) -> LinearCode:
    """Row-reduced matrix of all x-shifts of all generators."""
    if not spec.generators:
        return LinearCode.zero(spec.field, spec.n)
    gens = spec.generators
    if spec.regime == "lambda_pair":
        # the module closes to C1 x C2, so left and right parts generate separately
        h = spec.ell // 2
        gens = [g[:h] + ((),) * h for g in gens] + [((),) * h + g[h:] for g in gens]
    rows = np.concatenate([to_coordinates(spec, _shift_rows(spec, g)) for g in gens])
    return LinearCode.from_rows(spec.field, rows, spec.n)


def shift_symmetry(spec: QTCodeSpec):
    """Monomial automorphism usable by wdist (interleaved layout only)."""
    from .wdist import ShiftSymmetry
    if spec.halves:
        return None
    return ShiftSymmetry(spec.m, spec.ell, spec.lam)


# ---- constituents -----------------------------------------------------------------------
@dataclass
class Slot:
    """One CRT component: a self-paired factor, a pair, or a (lambda, lambda^-1) twin."""
    kind: str                 # "single" | "pair" | "twin"
    degree: int               # e_i / e_j over the code field
    root: int                 # evaluation point of `code`
    partner_root: int         # evaluation point of `partner` (pairs, twins) or pi(root)
    code: LinearCode          # over K, entries in F(root)
    partner: LinearCode | None = None
    frob_to_partner: int = 0  # single slots: pi(root) = root^(Q^j)
    label: str = ""


@dataclass
class ConstituentSet:
    field: GF
    m: int
    ell: int
    lam: int
    regime: str
    classification: FactorClassification
    slots: list[Slot]

    @property
    def K(self) -> GF:
        return self.classification.ext

    def dimension(self) -> int:
        """k = sum e_i dim C_i + sum e_j (dim C'_j + dim C''_j)."""
        total = 0
        for s in self.slots:
            total += s.degree * (s.code.k + (s.partner.k if s.partner is not None else 0))
        return total


def classify(F: GF, m: int, lam: int, regime: str) -> FactorClassification:
    return factor_constashift_poly(m, lam, F, PAIRING[regime])


def _eval_components(K: GF, polys: Sequence[Sequence[int]], x: int) -> np.ndarray:
    return np.array([int(poly_eval(K, f, x)) if len(f) else 0 for f in polys], dtype=np.int64)


def _frob_index(K: GF, Q: int, a: int, b: int, limit: int) -> int:
    """Smallest j with a^(Q^j) = b."""
    y = a
    for j in range(limit):
        if y == b:
            return j
        y = K.pow(y, Q)
    raise FieldError("points are not conjugate")


def _slot_frob(K: GF, X: np.ndarray, Q: int, j: int) -> np.ndarray:
    return _i64(K.pow(X, Q ** j)) if j else X


def decompose(spec: QTCodeSpec, classification: FactorClassification | None = None) -> ConstituentSet:
    """Evaluate the generators at one root per factor (partner roots for pairs)."""
    F = spec.field
    cls = classification or classify(F, spec.m, spec.lam, spec.regime)
    K = cls.ext
    Q = F.order
    N = cls.N
    slots = []

    def rows_at(x, comps=None):
        if not spec.generators:
            width = spec.ell if comps is None else len(comps)
            return np.zeros((0, width), dtype=np.int64)
        out = []
        for g in spec.generators:
            polys = g if comps is None else [g[c] for c in comps]
            out.append(_eval_components(K, polys, x))
        return np.array(out, dtype=np.int64)

    def code(rows, width):
        return LinearCode.from_rows(K, rows.reshape(-1, width), width)

    if spec.regime == "lambda_pair":
        h = spec.ell // 2
        left, right = list(range(h)), list(range(h, spec.ell))
        for f in cls.singles:
            a = f.root
            b = K.inv(a)
            slots.append(Slot("twin", f.degree, a, b, code(rows_at(a, left), h),
                              code(rows_at(b, right), h), label=f.poly.fmt()))
        return ConstituentSet(F, spec.m, spec.ell, spec.lam, spec.regime, cls, slots)

    for f in cls.singles:
        a = f.root
        e0 = (1 + f.k * cls.t) % N
        pe = cls.partner_exponent(e0)
        b = K.pow(cls.alpha, pe)
        j = _frob_index(K, Q, a, b, f.degree)
        slots.append(Slot("single", f.degree, a, b, code(rows_at(a), spec.ell),
                          frob_to_partner=j, label=f.poly.fmt()))
    for hf, hp in cls.pairs:
        a = hf.root
        e0 = (1 + hf.k * cls.t) % N
        b = K.pow(cls.alpha, cls.partner_exponent(e0))
        slots.append(Slot("pair", hf.degree, a, b, code(rows_at(a), spec.ell),
                          code(rows_at(b), spec.ell),
                          label=f"{hf.poly.fmt()} | {hp.poly.fmt()}"))
    return ConstituentSet(F, spec.m, spec.ell, spec.lam, spec.regime, cls, slots)


def empty_constituents(F: GF, m: int, ell: int, lam: int, regime: str) -> ConstituentSet:
    spec = QTCodeSpec(F, m, ell, lam, (), regime)
    return decompose(spec)


def place(cs: ConstituentSet, index: int, rows, partner_rows=None, at=None, partner_at=None):
    """Install constituent generator rows (over K) into slot ``index``.

    ``at`` may name a conjugate of the slot's root at which the rows were
    computed; they are moved to the canonical root by the matching Frobenius.
    """
    K = cs.K
    Q = cs.field.order
    s = cs.slots[index]

    def moved(X, point, target):
        X = np.atleast_2d(_i64(X))
        if point is None or point == target:
            return X
        j = _frob_index(K, Q, point, target, s.degree)
        return _slot_frob(K, X, Q, j)

    width = s.code.n
    X = moved(rows, at, s.root)
    _check_slot_field(K, Q, s.degree, X)
    s.code = LinearCode.from_rows(K, X.reshape(-1, width), width)
    if s.kind in ("pair", "twin"):
        if partner_rows is None:
            partner_rows = np.zeros((0, s.partner.n), dtype=np.int64)
        Y = moved(partner_rows, partner_at, s.partner_root)
        _check_slot_field(K, Q, s.degree, Y)
        s.partner = LinearCode.from_rows(K, Y.reshape(-1, s.partner.n), s.partner.n)
    return cs


def _check_slot_field(K: GF, Q: int, degree: int, X: np.ndarray):
    if X.size and not np.array_equal(_i64(K.pow(X, Q ** degree)), X):
        raise FieldError("constituent entries outside the slot field")


def _trace_slot(K: GF, Q: int, degree: int, X: np.ndarray) -> np.ndarray:
    acc = _i64(X)
    y = _i64(X)
    for _ in range(degree - 1):
        y = _i64(K.pow(y, Q))
        acc = _i64(K.add(acc, y))
    return acc


def _trace_word(cs: ConstituentSet, delta: np.ndarray, root: int, degree: int) -> np.ndarray:
    """c_{t,g} = Tr(delta_t * root^-g), an (len(delta), m) coefficient array."""
    K = cs.K
    Q = cs.field.order
    inv = K.inv(root)
    powers = np.ones(cs.m, dtype=np.int64)
    for g in range(1, cs.m):
        powers[g] = K.mul(int(powers[g - 1]), inv)
    prod = _i64(K.mul(_i64(delta)[:, None], powers[None, :]))
    return _trace_slot(K, Q, degree, prod)


def compose(cs: ConstituentSet) -> QTCodeSpec:
    """Generators from constituent basis rows via the trace formula (1/m dropped)."""
    F = cs.field
    L = cs.ell
    gens = []

    def add(arr):
        if not arr.any():
            return
        if arr.max() >= F.order:
            raise FieldError("composed coefficients escaped the code field")  # pragma: no cover
        gens.append(tuple(tuple(poly_trim(row)) for row in arr))

    for s in cs.slots:
        if s.kind == "twin":
            h = L // 2
            for d in s.code.G:
                arr = np.zeros((L, cs.m), dtype=np.int64)
                arr[:h] = _trace_word(cs, d, s.root, s.degree)
                add(arr)
            for d in s.partner.G:
                arr = np.zeros((L, cs.m), dtype=np.int64)
                arr[h:] = _trace_word(cs, d, s.partner_root, s.degree)
                add(arr)
            continue
        for d in s.code.G:
            add(_trace_word(cs, d, s.root, s.degree))
        if s.kind == "pair":
            for d in s.partner.G:
                add(_trace_word(cs, d, s.partner_root, s.degree))
    return QTCodeSpec(F, cs.m, cs.ell, cs.lam, tuple(gens), cs.regime)


# ---- orthogonality -------------------------------------------------------------------------
def pairing_left(cs: ConstituentSet, X: np.ndarray) -> np.ndarray:
    """P(X) with pairing(X, Y) = P(X) Y^T; the pairing is linear in Y."""
    K = cs.K
    X = np.atleast_2d(_i64(X))
    if cs.regime == "hermitian":
        return _i64(K.pow(X, cs.field.half_order))
    if cs.regime == "symplectic":
        h = X.shape[1] // 2
        return np.concatenate([_i64(K.neg(X[:, h:])), X[:, :h]], axis=1)
    return X


def _pairing_matrix(cs: ConstituentSet, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Gram matrix of the constituent pairing between rows X (at a) and Y (at pi(a))."""
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.zeros((X.shape[0], Y.shape[0]), dtype=np.int64)
    return _i64(matmul(cs.K, pairing_left(cs, X), Y.T))


@dataclass
class SlotReport:
    label: str
    kind: str
    degree: int
    dim: int
    partner_dim: int
    gram_rank: int
    hull_dim: int          # contribution to dim(C cap C^perp) over the code field
    defect: int            # contribution to k - dim hull over the code field
    k_slot: int            # per-slot defect k_i / k_j as defined per regime

    @property
    def ok(self) -> bool:
        return self.gram_rank == 0


@dataclass
class HullProfile:
    regime: str
    k: int
    hull_dim: int
    e: int
    slots: list[SlotReport] = dc_field(default_factory=list)

    @property
    def defect(self) -> int:
        return self.k - self.hull_dim

    def defective_slots(self) -> list[int]:
        return [i for i, s in enumerate(self.slots) if not s.ok]


def slot_report(cs: ConstituentSet, s: Slot) -> SlotReport:
    K = cs.K
    Q = cs.field.order
    if s.kind == "single":
        Y = _slot_frob(K, s.code.G, Q, s.frob_to_partner)
        r = rank(K, _pairing_matrix(cs, s.code.G, Y)) if s.code.k else 0
        hull_d = s.degree * (s.code.k - r)
        defect = s.degree * r
        k_slot = r if cs.regime == "hermitian" else r // 2
        return SlotReport(s.label, s.kind, s.degree, s.code.k, 0, r, hull_d, defect, k_slot)
    r = rank(K, _pairing_matrix(cs, s.code.G, s.partner.G)) if s.code.k and s.partner.k else 0
    hull_d = s.degree * ((s.code.k - r) + (s.partner.k - r))
    defect = s.degree * 2 * r
    k_slot = 2 * r if cs.regime == "hermitian" else r
    return SlotReport(s.label, s.kind, s.degree, s.code.k, s.partner.k, r, hull_d, defect, k_slot)


def hull_profile(cs: ConstituentSet) -> HullProfile:
    reps = [slot_report(cs, s) for s in cs.slots]
    k = cs.dimension()
    hd = sum(r.hull_dim for r in reps)
    defect = k - hd
    if cs.regime == "hermitian":
        e = defect
    else:
        if defect % 2:
            raise FieldError("odd symplectic defect")  # pragma: no cover
        e = defect // 2
    return HullProfile(cs.regime, k, hd, e, reps)


def check_self_orthogonal(cs: ConstituentSet) -> tuple[bool, list[SlotReport]]:
    reps = [slot_report(cs, s) for s in cs.slots]
    return all(r.ok for r in reps), reps


# ---- direct counterparts ---------------------------------------------------------------------
def direct_hull_dim(spec: QTCodeSpec) -> int:
    C = expand_generator_matrix(spec)
    return hull(C, IP_KIND[spec.regime]).k


def random_spec(rng: np.random.Generator, F: GF, m: int, ell: int, lam: int,
                regime: str, n_gens: int, density: float = 1.0) -> QTCodeSpec:
    gens = []
    for _ in range(n_gens):
        g = []
        for _ in range(ell):
            c = F.random(rng, m)
            if density < 1:
                c = np.where(rng.random(m) < density, c, 0)
            g.append(tuple(int(x) for x in c))
        gens.append(tuple(g))
    return QTCodeSpec(F, m, ell, lam, tuple(gens), regime)
