"""Finite-field towers F_p = K_0 < K_1 < ... with integer-encoded elements.

An element of level j is the integer sum a_t * Q_{j-1}**t, where the a_t are
level j-1 elements and Q_{j-1} is the size of level j-1. Expanding
recursively gives the base-p digits of the integer, so the embedding of a
level into any level above it is the identity on integers.

Addition is digit-wise mod p (XOR for p = 2). Multiplication goes through
log/antilog tables up to TABLE_LIMIT elements and through polynomial
arithmetic over the level below for larger fields.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

TABLE_LIMIT = 1 << 20
MULT_TABLE_LIMIT = 256
ADD_TABLE_LIMIT = 1024

# Conway polynomials, constant term first. Used for levels directly over F_p
# so that "w" matches the usual textbook presentation (F9: w^2 = w + 1,
# F25: w^2 = w + 3, F64: w^6 = w^4 + w^3 + w + 1, ...).
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    pass


def _out(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


def _i64(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


def multiplicative_order(x: int, n: int) -> int:
    """Order of x modulo n (gcd(x, n) must be 1)."""
    if n == 1:
        return 1
    if math.gcd(x, n) != 1:
        raise FieldError(f"{x} is not a unit modulo {n}")
    phi = 1
    for r, e in factorint(n).items():
        phi *= (r - 1) * r ** (e - 1)
    order = phi
    for r in factorint(phi):
        while order % r == 0 and pow(x, order // r, n) == 1:
            order //= r
    return order


class GF:
    """One level of a field tower.

    ``base`` is the level below (None for the prime field) and ``modulus``
    the monic defining polynomial over ``base``, constant term first.
    Elements are Python ints or numpy int64 arrays; every operation is
    vectorized and returns an int when all inputs are scalars.
    """

    def __init__(self, p: int, base: GF | None = None,
                 modulus: Sequence[int] | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.rel_degree = 1
            self.degree = 1
            self.order = p
            self.modulus: tuple[int, ...] = ()
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) < 3 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree >= 2")
            self.rel_degree = len(modulus) - 1
            self.degree = base.degree * self.rel_degree
            self.order = base.order ** self.rel_degree
            self.modulus = modulus
        if self.order >= 1 << 62:
            raise FieldError("field too large for int64 encoding")
        self._exp = self._exp2 = self._log = None
        self._mult = self._addt = None
        if base is not None and base.base is None and p == 2:
            self._modint = sum(c << i for i, c in enumerate(self.modulus))
        self.prim = self._find_primitive()
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # ---- identity -------------------------------------------------------
    @property
    def key(self) -> tuple:
        chain, f = [], self
        while f.base is not None:
            chain.append(f.modulus)
            f = f.base
        return (self.p, tuple(reversed(chain)))

    def __eq__(self, other):
        return isinstance(other, GF) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    @property
    def half_order(self) -> int:
        """q for a field of size q^2."""
        r = math.isqrt(self.order)
        if r * r != self.order:
            raise FieldError(f"{self!r} has no index-2 subfield")
        return r

    @property
    def chain(self) -> list[GF]:
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.base
        return list(reversed(out))

    # ---- slow arithmetic (no tables) ------------------------------------
    def _mul_poly(self, a, b):
        a, b = _i64(a), _i64(b)
        if self.base is None:
            return (a * b) % self.p
        d = self.rel_degree
        if self.p == 2 and self.base.base is None:
            acc = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
            for i in range(d):
                acc ^= np.where((b >> i) & 1, a << i, 0)
            for k in range(2 * d - 2, d - 1, -1):
                acc ^= np.where((acc >> k) & 1, self._modint << (k - d), 0)
            return acc
        B = self.base
        Q = B.order
        A = [(a // Q ** i) % Q for i in range(d)]
        Bc = [(b // Q ** i) % Q for i in range(d)]
        shape = np.broadcast(a, b).shape
        C = [np.zeros(shape, dtype=np.int64) for _ in range(2 * d - 1)]
        for i in range(d):
            for j in range(d):
                C[i + j] = _i64(B.add(C[i + j], B.mul(A[i], Bc[j])))
        for k in range(2 * d - 2, d - 1, -1):
            c = C[k]
            if not np.any(c):
                continue
            for i in range(d):
                if self.modulus[i]:
                    C[k - d + i] = _i64(B.sub(C[k - d + i], B.mul(c, self.modulus[i])))
        out = np.zeros(shape, dtype=np.int64)
        for i in range(d):
            out = out + C[i] * Q ** i
        return out

    def _pow_slow(self, a, e: int):
        a = _i64(a)
        result = np.ones(a.shape, dtype=np.int64)
        base = a.copy()
        if e < 0:
            raise FieldError("negative exponent in slow path")
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            e >>= 1
            if e:
                base = self._mul_poly(base, base)
        return result

    def _has_full_order(self, g: int) -> bool:
        n = self.order - 1
        if g == 0:
            return False
        if int(self._pow_slow(g, n)) != 1:
            return False
        return all(int(self._pow_slow(g, n // r)) != 1 for r in factorint(n))

    def _find_primitive(self) -> int:
        if self.order == 2:
            return 1
        if self.base is not None:
            root = self.base.order  # the class of x
            if self._has_full_order(root):
                return root
        for g in range(2, self.order):
            if self._has_full_order(g):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self):
        N = self.order - 1
        exp = np.empty(N, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < N:
            step = int(self._mul_poly(exp[filled - 1], self.prim))
            take = min(filled, N - filled)
            exp[filled:filled + take] = self._mul_poly(exp[:take], step)
            filled += take
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if len(np.unique(exp)) != N:
            raise FieldError("primitive element check failed")  # pragma: no cover
        self._exp = exp
        self._exp2 = np.concatenate([exp, exp])
        self._log = log
        if self.order <= MULT_TABLE_LIMIT:
            x = np.arange(self.order, dtype=np.int64)
            self._mult = self.mul(x[:, None], x[None, :]).astype(np.int64)
        if self.p != 2 and self.order <= ADD_TABLE_LIMIT:
            x = np.arange(self.order, dtype=np.int64)
            self._addt = self._add_digits(x[:, None], x[None, :])

    # ---- arithmetic -----------------------------------------------------
    def _add_digits(self, a, b, negate_b=False):
        p = self.p
        a, b = _i64(a), _i64(b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.degree):
            da, db = (a // scale) % p, (b // scale) % p
            out = out + ((da - db if negate_b else da + db) % p) * scale
            scale *= p
        return out

    def add(self, a, b):
        a, b = _i64(a), _i64(b)
        if self.p == 2:
            return _out(a ^ b)
        if self.order == self.p:
            return _out((a + b) % self.p)
        if self._addt is not None:
            return _out(self._addt[a, b])
        return _out(self._add_digits(a, b))

    def neg(self, a):
        a = _i64(a)
        if self.p == 2:
            return _out(a)
        if self.order == self.p:
            return _out((-a) % self.p)
        return _out(self._add_digits(0, a, negate_b=True))

    def sub(self, a, b):
        a, b = _i64(a), _i64(b)
        if self.p == 2:
            return _out(a ^ b)
        if self.order == self.p:
            return _out((a - b) % self.p)
        if self._addt is not None:
            return _out(self._addt[a, self.neg(b)])
        return _out(self._add_digits(a, b, negate_b=True))

    def mul(self, a, b):
        a, b = _i64(a), _i64(b)
        if self.order == self.p:
            return _out((a * b) % self.p)
        if self._mult is not None:
            return _out(self._mult[a, b])
        if self._exp is not None:
            r = self._exp2[self._log[a] + self._log[b]]
            r = np.where((a == 0) | (b == 0), 0, r)
            return _out(r)
        return _out(self._mul_poly(a, b))

    def pow(self, a, e: int):
        a = _i64(a)
        if self._exp is not None:
            N = self.order - 1
            if e == 0:
                return _out(np.ones(a.shape, dtype=np.int64))
            if e < 0 and np.any(a == 0):
                raise ZeroDivisionError("0 has no inverse")
            r = self._exp[(self._log[a] * (e % N)) % N]
            return _out(np.where(a == 0, 0, r))
        N = self.order - 1
        if e < 0:
            if np.any(a == 0):
                raise ZeroDivisionError("0 has no inverse")
            e %= N
        elif e > N:
            e = (e - 1) % N + 1
        return _out(self._pow_slow(a, e))

    def inv(self, a):
        a = _i64(a)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frob(self, a, k: int = 1):
        """a -> a^(p^k)."""
        return self.pow(a, pow(self.p, k % self.degree, self.order - 1) if self.order > 2 else 1)

    def power_of(self, a, power: int):
        """a -> a^power for a Frobenius power (e.g. conjugation by q)."""
        return self.pow(a, power)

    def log(self, a) -> int:
        a = int(a)
        if a == 0:
            raise FieldError("log of zero")
        if self._log is not None:
            return int(self._log[a])
        raise FieldError("discrete log unavailable above table limit")

    def contains_subfield(self, order: int) -> bool:
        r = round(math.log(order, self.p))
        return self.p ** r == order and self.degree % r == 0

    def in_subfield(self, a, order: int) -> np.ndarray | bool:
        return _out(_i64(self.pow(a, order)) == _i64(a))

    def trace(self, a, sub_order: int | None = None):
        """Trace down to the subfield of the given size (default: F_p)."""
        sub_order = sub_order or self.p
        if not self.contains_subfield(sub_order):
            raise FieldError(f"no subfield of order {sub_order} in {self!r}")
        r = round(math.log(self.order, sub_order))
        acc = _i64(a)
        y = _i64(a)
        total = acc.copy()
        for _ in range(r - 1):
            y = _i64(self.pow(y, sub_order))
            total = _i64(self.add(total, y))
        return _out(total)

    def norm(self, a, sub_order: int):
        r = round(math.log(self.order, sub_order))
        return self.pow(a, (self.order - 1) // (sub_order - 1)) if r > 1 else _out(_i64(a))

    def elements(self) -> np.ndarray:
        """All elements in canonical enumeration order 0, 1, w, w^2, ..."""
        if self._exp is None:
            raise FieldError("enumeration only for tabulated fields")
        return np.concatenate([[0], self._exp]).astype(np.int64)

    def random(self, rng: np.random.Generator, shape=None, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.order, size=shape, dtype=np.int64)

    # ---- text -----------------------------------------------------------
    def fmt(self, a: int) -> str:
        a = int(a)
        if a == 0 or a == 1 or self.order == self.p:
            return str(a)
        if self._log is None:
            return hex(a)
        k = int(self._log[a])
        return "w" if k == 1 else f"w^{k}"

    def parse(self, s) -> int:
        if isinstance(s, (int, np.integer)):
            v = int(s)
            if self.order == self.p:
                return v % self.p
            if 0 <= v < self.order:
                return v
            raise FieldError(f"integer {v} out of range for {self!r}")
        s = str(s).strip().replace(" ", "")
        if s.startswith("-"):
            return self.neg(self.parse(s[1:]))
        if s.startswith("0x"):
            return int(s, 16)
        if s == "w":
            return self.prim
        if s.startswith("w^"):
            return self.pow(self.prim, int(s[2:]))
        try:
            return self.parse(int(s))
        except ValueError:
            raise FieldError(f"cannot parse field element {s!r}") from None


# ---- modulus selection ----------------------------------------------------
def _candidate_moduli(base: GF, d: int) -> Iterable[tuple[int, ...]]:
    """Monic degree-d polynomials in Conway order (x^d - a x^{d-1} + ...)."""
    for key in itertools.product(range(base.order), repeat=d):
        # key[0] pairs with x^{d-1}, key[-1] with the constant term
        coeffs = []
        for i in range(d):
            k = key[d - 1 - i]
            coeffs.append(base.neg(k) if (d - i) % 2 else k)
        if coeffs[0] == 0:
            continue
        yield tuple(coeffs) + (1,)


def _poly_mulmod(base: GF, a, b, mod: tuple[int, ...]) -> list[int]:
    d = len(mod) - 1
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if base.order == base.p:
        c = np.convolve(a, b) % base.p
    else:
        prod = np.asarray(base.mul(a[:, None], b[None, :]), dtype=np.int64)
        c = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i in range(len(a)):
            c[i:i + len(b)] = base.add(c[i:i + len(b)], prod[i])
    low = np.asarray(mod[:d], dtype=np.int64)
    for k in range(len(c) - 1, d - 1, -1):
        f = int(c[k])
        if f:
            c[k - d:k] = base.sub(c[k - d:k], base.mul(f, low))
    out = [int(v) for v in c[:d]]
    return out + [0] * (d - len(out))


def _poly_powmod_x(base: GF, e: int, mod: tuple[int, ...]) -> list[int]:
    d = len(mod) - 1
    result = [1] + [0] * (d - 1)
    x = [0, 1] + [0] * (d - 2)
    while e:
        if e & 1:
            result = _poly_mulmod(base, result, x, mod)
        e >>= 1
        if e:
            x = _poly_mulmod(base, x, x, mod)
    return result


@functools.lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(factorint(n))


def _has_root(base: GF, mod: Sequence[int]) -> bool:
    xs = np.arange(base.order, dtype=np.int64)
    acc = np.zeros(base.order, dtype=np.int64)
    for c in reversed(mod):
        acc = np.asarray(base.add(base.mul(acc, xs), c), dtype=np.int64)
    return bool(np.any(acc == 0))


def is_primitive_poly(base: GF, mod: tuple[int, ...]) -> bool:
    d = len(mod) - 1
    N = base.order ** d - 1
    one = [1] + [0] * (d - 1)
    if mod[0] == 0 or (d > 1 and _has_root(base, mod)):
        return False
    if _poly_powmod_x(base, N, mod) != one:
        return False
    return all(_poly_powmod_x(base, N // r, mod) != one for r in _prime_factors(N))


def is_irreducible_poly(base: GF, mod: Sequence[int]) -> bool:
    """x^(Q^d) = x mod f and gcd(x^(Q^(d/r)) - x, f) = 1 for prime r | d."""
    mod = tuple(mod)
    d = len(mod) - 1
    if d == 1:
        return True
    Q = base.order
    x = [0, 1] + [0] * (d - 2)
    if _poly_powmod_x(base, Q ** d, mod) != x:
        return False
    for r in factorint(d):
        h = _poly_powmod_x(base, Q ** (d // r), mod)
        h = [base.sub(h[i], x[i]) for i in range(d)]
        if poly_degree(poly_gcd(base, h, list(mod))) > 0:
            return False
    return True


def canonical_modulus(base: GF, d: int) -> tuple[int, ...]:
    key = (base.p, _level_key(base), d)
    if key in _MODULUS_CACHE:
        return _MODULUS_CACHE[key]
    _MODULUS_CACHE[key] = mod = _canonical_modulus(base, d)
    return mod


_MODULUS_CACHE: dict = {}


def _level_key(f: GF) -> tuple:
    chain = []
    while f is not None:
        chain.append(tuple(f.modulus) if f.base is not None else f.p)
        f = f.base
    return tuple(chain)


def _canonical_modulus(base: GF, d: int) -> tuple[int, ...]:
    if base.base is None and (base.p, d) in CONWAY:
        return CONWAY[(base.p, d)]
    for cand in _candidate_moduli(base, d):
        if is_primitive_poly(base, cand):
            return cand
    raise FieldError("no primitive polynomial found")  # pragma: no cover


# ---- towers -----------------------------------------------------------------
class FieldTower:
    """Chain F_p = levels[0] < levels[1] < ... ; immutable after construction."""

    def __init__(self, levels: Sequence[GF]):
        self.levels = tuple(levels)
        self.p = self.levels[0].p

    @property
    def top(self) -> GF:
        return self.levels[-1]

    @property
    def degrees(self) -> list[int]:
        return [f.rel_degree for f in self.levels[1:]]

    def level(self, j: int) -> GF:
        return self.levels[j]

    def index_of(self, f: GF) -> int:
        return self.levels.index(f)

    def extended(self, degree: int, modulus: Sequence[int] | None = None) -> FieldTower:
        if degree == 1:
            return self
        modulus = tuple(modulus or canonical_modulus(self.top, degree))
        key = (_level_key(self.top), modulus)
        if key not in _EXT_CACHE:
            _EXT_CACHE[key] = FieldTower(self.levels + (GF(self.p, self.top, modulus),))
        return _EXT_CACHE[key]

    def to_json(self) -> dict:
        return {"p": self.p, "degrees": self.degrees,
                "moduli": [list(f.modulus) for f in self.levels[1:]]}

    @classmethod
    def from_json(cls, obj: dict) -> FieldTower:
        return make_tower(obj["p"], obj.get("degrees", []), obj.get("moduli"))

    def __repr__(self):
        return f"FieldTower(p={self.p}, degrees={self.degrees})"


_TOWER_CACHE: dict = {}
_EXT_CACHE: dict = {}


def make_tower(p: int, degrees: Sequence[int],
               moduli: Sequence[Sequence[int]] | None = None) -> FieldTower:
    """Tower over F_p with the given relative degrees; degree-1 entries add nothing."""
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if any(int(d) < 1 for d in degrees):
        raise FieldError("degrees must be positive")
    key = (p, tuple(degrees), None if moduli is None else tuple(map(tuple, moduli)))
    if key in _TOWER_CACHE:
        return _TOWER_CACHE[key]
    levels = [GF(p)]
    mi = 0
    for d in degrees:
        d = int(d)
        if d == 1:
            continue
        if moduli is not None:
            mod = tuple(moduli[mi])
            mi += 1
            if len(mod) != d + 1 or not is_irreducible_poly(levels[-1], mod):
                raise FieldError(f"modulus {mod} is not irreducible of degree {d}")
        else:
            mod = canonical_modulus(levels[-1], d)
        levels.append(GF(p, levels[-1], mod))
    tower = FieldTower(levels)
    _TOWER_CACHE[key] = tower
    return tower


def field(q: int) -> GF:
    """Convenience: the canonical field of size q as a single level over F_p."""
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, a), = f.items()
    return make_tower(p, [a]).top


def hermitian_field(q: int) -> GF:
    """F_{q^2} built as a degree-2 level over F_q (so F_q is the integers < q)."""
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, a), = f.items()
    return make_tower(p, [a, 2]).top


def trace_to(F: GF, x, target: GF | int):
    """Relative trace from F down to a subfield (a GF level or its size)."""
    order = target.order if isinstance(target, GF) else int(target)
    if order > F.order or not F.contains_subfield(order):
        raise FieldError("target is not a subfield")
    return F.trace(x, order)


def solve_norm(c: int, F: GF) -> int:
    """Smallest-exponent beta = g^j with beta^(q+1) = c, for c in F_q^*."""
    q = F.half_order
    c = int(c)
    if c == 0:
        raise FieldError("norm equation with c = 0")
    if int(F.pow(c, q)) != c:
        raise FieldError("c is not in the index-2 subfield")
    g = F.prim
    h = F.pow(g, q + 1)  # generates F_q^*
    y = 1
    for s in range(q - 1):
        if y == c:
            return F.pow(g, s)
        y = F.mul(y, h)
    raise FieldError("norm equation unsolvable")  # pragma: no cover


def root_of_unity(order: int, tower: FieldTower) -> tuple[FieldTower, GF, int]:
    """Canonical primitive root of unity of the given order.

    Returns the (possibly extended) tower, the smallest level holding the
    root, and the root g^((|level|-1)/order) for that level's primitive g.
    """
    if order < 1 or order % tower.p == 0:
        raise FieldError("order must be positive and prime to p")
    for f in tower.levels:
        if (f.order - 1) % order == 0:
            return tower, f, f.pow(f.prim, (f.order - 1) // order)
    nu = multiplicative_order(tower.top.order, order)
    ext = tower.extended(nu)
    f = ext.top
    return ext, f, f.pow(f.prim, (f.order - 1) // order)


# ---- polynomials --------------------------------------------------------------
def poly_trim(c: Sequence[int]) -> list[int]:
    c = [int(x) for x in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_degree(c: Sequence[int]) -> int:
    return len(poly_trim(c)) - 1


def poly_mul(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = poly_trim(a), poly_trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            prod = F.mul(x, np.asarray(b, dtype=np.int64))
            for j, y in enumerate(np.atleast_1d(prod)):
                out[i + j] = F.add(out[i + j], int(y))
    return poly_trim(out)


def poly_divmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a, b = poly_trim(a), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    qt = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        f = F.mul(r[-1], inv_lead)
        qt[shift] = f
        for i, y in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(f, y))
        r = poly_trim(r)
    return poly_trim(qt), r


def poly_gcd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a) if a else []


def poly_monic(F: GF, a: Sequence[int]) -> list[int]:
    a = poly_trim(a)
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.mul(x, inv) for x in a]


def poly_eval(F: GF, coeffs: Sequence[int], x):
    """Horner evaluation; coeffs may live in a subfield of F (same ints)."""
    x = _i64(x)
    acc = np.zeros(x.shape, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = _i64(F.add(F.mul(acc, x), int(c)))
    return _out(acc)


@dataclass(frozen=True)
class Poly:
    """Polynomial over a field level, constant term first, trimmed."""
    field: GF
    coeffs: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(poly_trim(self.coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: Poly) -> Poly:
        return Poly(self.field, poly_mul(self.field, self.coeffs, other.coeffs))

    def __call__(self, x):
        return poly_eval(self.field, self.coeffs, x)

    def monic(self) -> Poly:
        return Poly(self.field, poly_monic(self.field, self.coeffs))

    def reciprocal(self) -> Poly:
        """f*(x) = x^deg f(1/x)."""
        return Poly(self.field, tuple(reversed(self.coeffs)))

    def conjugate(self, power: int) -> Poly:
        """Apply c -> c^power to every coefficient (power = q for F_{q^2})."""
        return Poly(self.field, tuple(self.field.pow(c, power) for c in self.coeffs))

    def is_proportional(self, other: Poly) -> bool:
        return self.monic().coeffs == other.monic().coeffs

    def fmt(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = self.field.fmt(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono:
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(cs)
        return " + ".join(reversed(terms)) or "0"


# ---- factorization of x^m - lambda ----------------------------------------------
PAIRINGS = ("conjugate_reciprocal", "reciprocal", "none")


@dataclass(frozen=True)
class Factor:
    poly: Poly
    exponents: tuple[int, ...]   # exponents e of alpha with f(alpha^e) = 0
    k: int                       # smallest k with f(alpha * xi^k) = 0
    root: int                    # alpha * xi^k, an element of the extension

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass(frozen=True)
class FactorClassification:
    m: int
    lam: int
    field: GF            # coefficient field of the code
    ext: GF              # field holding alpha
    tower: FieldTower    # tower whose top is ext
    alpha: int
    xi: int
    t: int
    pairing: str
    singles: tuple[Factor, ...]
    pairs: tuple[tuple[Factor, Factor], ...]

    @property
    def s(self) -> int:
        return len(self.singles)

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def N(self) -> int:
        return self.t * self.m

    def partner_exponent(self, e: int) -> int:
        return _pair_map(self.pairing, self.field, self.N)(e)

    def product(self) -> Poly:
        out = Poly(self.field, (1,))
        for f in self.singles:
            out = out * f.poly
        for h, hp in self.pairs:
            out = out * h.poly * hp.poly
        return out


def _pair_map(pairing: str, F: GF, N: int):
    if pairing == "conjugate_reciprocal":
        q = F.half_order
        return lambda e: (-q * e) % N
    if pairing == "reciprocal":
        return lambda e: (-e) % N
    return lambda e: e % N


def factor_constashift_poly(m: int, lam: int, F: GF, pairing: str,
                            tower: FieldTower | None = None) -> FactorClassification:
    """Factor x^m - lam over F via cyclotomic cosets and classify the factors."""
    if pairing not in PAIRINGS:
        raise FieldError(f"unknown pairing {pairing!r}")
    lam = int(lam)
    if m < 1 or math.gcd(m, F.p) != 1:
        raise FieldError("gcd(m, p) must be 1")
    if lam == 0:
        raise FieldError("lambda must be nonzero")
    Q = F.order
    if pairing == "conjugate_reciprocal":
        q = F.half_order
        if F.pow(lam, q + 1) != 1:
            raise FieldError("conjugate-reciprocal pairing needs lambda^(q+1) = 1")
    if pairing == "reciprocal" and lam not in (1, F.neg(1)):
        raise FieldError("reciprocal pairing needs lambda = +-1")
    t = 1 if lam == 1 else multiplicative_order_in(F, lam)
    N = t * m
    if tower is None:
        tower = _tower_of(F)
    ext_tower, _, alpha0 = root_of_unity(N, tower)
    if ext_tower.top.order < F.order:
        ext_tower = tower
    K = ext_tower.top
    # alpha = alpha0^i with gcd(i, N) = 1 and alpha^m = lam; smallest i
    alpha = None
    for i in range(1, N + 1):
        if math.gcd(i, N) == 1 and K.pow(alpha0, i * m) == lam:
            alpha = K.pow(alpha0, i)
            break
    if alpha is None:
        raise FieldError("no suitable alpha")  # pragma: no cover
    xi = K.pow(alpha, t)
    exps = sorted({(1 + k * t) % N for k in range(m)})
    seen: set[int] = set()
    cosets = []
    for e in exps:
        if e in seen:
            continue
        cos = []
        x = e
        while x not in cos:
            cos.append(x)
            x = (x * Q) % N
        seen.update(cos)
        cosets.append(tuple(cos))

    def k_of(e):  # 1 + k t = e (mod N)
        return ((e - 1) // t) % m

    def make_factor(cos):
        poly = [1]
        for e in cos:
            poly = poly_mul(K, poly, [K.neg(K.pow(alpha, e)), 1])
        if any(c >= Q or int(K.pow(c, Q)) != c for c in poly):
            raise FieldError("factor coefficients escaped the base field")  # pragma: no cover
        k = min(k_of(e) for e in cos)
        return Factor(Poly(F, poly), tuple(sorted(cos)), k, K.mul(alpha, K.pow(xi, k)))

    pmap = _pair_map(pairing, F, N)
    singles, pairs, done = [], [], set()
    for cos in cosets:
        if cos in done:
            continue
        image = tuple(sorted({pmap(e) for e in cos}))
        if pairing == "none" or image == tuple(sorted(cos)):
            singles.append(make_factor(cos))
            done.add(cos)
            continue
        partner = next(c for c in cosets if tuple(sorted(c)) == image)
        done.add(cos)
        done.add(partner)
        a, b = make_factor(cos), make_factor(partner)
        if b.k < a.k:
            a, b = b, a
        pairs.append((a, b))
    singles.sort(key=lambda f: f.k)
    pairs.sort(key=lambda ab: ab[0].k)
    return FactorClassification(m, lam, F, K, ext_tower, alpha, xi, t, pairing,
                                tuple(singles), tuple(pairs))


def multiplicative_order_in(F: GF, a: int) -> int:
    n = F.order - 1
    order = n
    for r in factorint(n):
        while order % r == 0 and F.pow(a, order // r) == 1:
            order //= r
    return order


def _tower_of(F: GF) -> FieldTower:
    return FieldTower(F.chain)
