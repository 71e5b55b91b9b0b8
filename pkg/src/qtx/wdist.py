"""Minimum Hamming/symplectic weights of codes and of set differences A \\ B.

Two engines: an exhaustive projective enumerator (the oracle) and a
Brouwer-Zimmermann style search over several information sets with an
accumulating lower bound.  Both accept an excluded subcode B, in which case
the minimum is over A \\ B.  Empty minima are reported as n.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numba as nb
import numpy as np

from .codes import LinearCode, complement_basis, intersect_codes, matmul, rref
from .galois import GF, _i64

# the bundled TBB is too old; numba falls back to another layer on its own
warnings.filterwarnings("ignore", message="The TBB threading layer")

ORACLE_BITS = 28
NUMBA_LIMIT = 256


class BudgetExceeded(RuntimeError):
    pass


# ---- metrics ---------------------------------------------------------------------------
def _weights(words: np.ndarray, metric: str) -> np.ndarray:
    if metric == "hamming":
        return np.count_nonzero(words, axis=-1)
    if metric == "symplectic":
        h = words.shape[-1] // 2
        return np.count_nonzero((words[..., :h] != 0) | (words[..., h:] != 0), axis=-1)
    if metric.startswith("block_symplectic:"):
        # F_p expansion of an additive code over F_{p^m}: count m-blocks
        m = int(metric.split(":")[1])
        h = words.shape[-1] // 2
        shp = words.shape[:-1] + (h // m, m)
        nz = (words[..., :h] != 0).reshape(shp) | (words[..., h:] != 0).reshape(shp)
        return np.count_nonzero(nz.any(axis=-1), axis=-1)
    raise ValueError(f"unknown metric {metric!r}")


def _metric_length(n: int, metric: str) -> int:
    if metric == "symplectic":
        if n % 2:
            raise ValueError("symplectic weight needs even length")
        return n // 2
    if metric.startswith("block_symplectic:"):
        m = int(metric.split(":")[1])
        if n % (2 * m):
            raise ValueError("block symplectic weight needs length divisible by 2m")
        return n // (2 * m)
    return n


# ---- difference bookkeeping ------------------------------------------------------------------
def _split(A: LinearCode, B: LinearCode | None):
    """Basis [V; Bi] of A with Bi a basis of A cap B and V a complement."""
    if B is None or B.k == 0:
        return A.G, np.zeros((0, A.n), dtype=np.int64)
    if B.field != A.field or B.n != A.n:
        raise ValueError("excluded code must live in the same space")
    Bi = B if A.contains_code(B) else intersect_codes(A, B)
    return complement_basis(A, Bi), Bi.G


def _span_table(F: GF, rows: np.ndarray, n: int) -> np.ndarray:
    """All F-combinations of the rows (including zero)."""
    words = np.zeros((1, n), dtype=np.int64)
    elems = F.elements()[1:]
    for r in rows:
        scaled = _i64(F.mul(elems[:, None], r[None, :]))
        words = np.concatenate(
            [words] + [_i64(F.add(words, s[None, :])) for s in scaled])
    return words


def _projective_words(F: GF, V: np.ndarray, Bg: np.ndarray, n: int, block_rows: int = 10):
    """Yield blocks of words covering one representative per scalar class of span(V,B) \\ span(B)."""
    kv = V.shape[0]
    for j in range(kv):
        rest = np.concatenate([V[j + 1:], Bg])
        low, high = rest[:block_rows], rest[block_rows:]
        T = _i64(F.add(_span_table(F, low, n), V[j][None, :]))
        if high.shape[0] == 0:
            yield T
            continue
        grid = np.indices((F.order,) * high.shape[0]).reshape(high.shape[0], -1).T
        elems = F.elements()
        for msg in grid:
            shift = matmul(F, elems[msg][None, :], high)[0]
            yield _i64(F.add(T, shift[None, :]))


def _oracle_check(A: LinearCode, V: np.ndarray, Bg: np.ndarray, bits: int):
    F = A.field
    cost = (V.shape[0] + Bg.shape[0]) * math.log2(F.order)
    if cost > bits:
        raise BudgetExceeded(f"enumeration needs 2^{cost:.1f} > 2^{bits} words")


def min_weight_enum(A: LinearCode, exclude: LinearCode | None = None,
                    metric: str = "hamming", budget_bits: int = ORACLE_BITS) -> int:
    """Exhaustive minimum weight over A (or A \\ exclude)."""
    n_eff = _metric_length(A.n, metric)
    V, Bg = _split(A, exclude)
    if V.shape[0] == 0:
        return n_eff
    _oracle_check(A, V, Bg, budget_bits)
    best = n_eff
    for block in _projective_words(A.field, V, Bg, A.n):
        best = min(best, int(_weights(block, metric).min()))
    return best


def weight_distribution_enum(A: LinearCode, exclude: LinearCode | None = None,
                             metric: str = "hamming", budget_bits: int = ORACLE_BITS) -> list[int]:
    """Full weight distribution of A (or A \\ exclude) by enumeration."""
    n_eff = _metric_length(A.n, metric)
    V, Bg = _split(A, exclude)
    counts = np.zeros(n_eff + 1, dtype=object)
    if exclude is None or exclude.k == 0:
        counts[0] = 1
    if V.shape[0] == 0:
        return [int(c) for c in counts]
    _oracle_check(A, V, Bg, budget_bits)
    for block in _projective_words(A.field, V, Bg, A.n):
        counts += np.bincount(_weights(block, metric), minlength=n_eff + 1).astype(object)
    counts[1:] *= A.field.order - 1
    return [int(c) for c in counts]


# ---- symmetry ---------------------------------------------------------------------------------
@dataclass(frozen=True)
class ShiftSymmetry:
    """Monomial automorphism c_{g*ell+t} -> c_{(g+1)*ell+t} (times lam on wrap-around).

    Column classes {g*ell+t : g} are its orbits; the search uses this to
    close found words under the shift and to strengthen the lower bound.
    """
    m: int
    ell: int
    lam: int = 1

    def classes(self) -> np.ndarray:
        return np.arange(self.m * self.ell) % self.ell

    def apply(self, F: GF, words: np.ndarray, times: int = 1) -> np.ndarray:
        W = np.array(words, dtype=np.int64, copy=True)
        shp = W.shape
        W = W.reshape(-1, self.m, self.ell)
        for _ in range(times):
            last = _i64(F.mul(W[:, -1, :], self.lam))
            W = np.concatenate([last[:, None, :], W[:, :-1, :]], axis=1)
        return W.reshape(shp)


# ---- numba kernel ------------------------------------------------------------------------------
@nb.njit(cache=True)
def _level_from(R, i0, w, n, s, is_xor, addt, symp, collect_max, cap, out, partial, idx, coef):
    """Enumerate messages of weight w whose first nonzero entry is a 1 at row i0.

    R[i, a] holds (element a+1) * row i, extended by s membership columns.
    Returns (best weight, count stored in out)."""
    k = R.shape[0]
    qm1 = R.shape[1]
    L = R.shape[2]
    h = n // 2
    best = 1 << 30
    stored = 0
    if i0 > k - w:
        return best, stored
    for c in range(L):
        partial[1, c] = R[i0, 0, c]
    d = 1
    if w > 1:
        idx[1] = i0 + 1
        coef[1] = -1
    while True:
        if d < w:
            coef[d] += 1
            if coef[d] == qm1:
                coef[d] = 0
                idx[d] += 1
            if idx[d] > k - (w - d):
                d -= 1
                if d == 0:
                    break
                continue
            r = idx[d]
            a = coef[d]
            if is_xor:
                for c in range(L):
                    partial[d + 1, c] = partial[d, c] ^ R[r, a, c]
            else:
                for c in range(L):
                    partial[d + 1, c] = addt[partial[d, c], R[r, a, c]]
            if d + 1 < w:
                d += 1
                idx[d] = idx[d - 1] + 1
                coef[d] = -1
                continue
        # evaluate partial[w]
        wt = 0
        if symp:
            for c in range(h):
                if partial[w, c] != 0 or partial[w, c + h] != 0:
                    wt += 1
        else:
            for c in range(n):
                if partial[w, c] != 0:
                    wt += 1
        if wt < best or wt <= collect_max:
            member = s > 0
            for c in range(n, n + s):
                if partial[w, c] != 0:
                    member = False
                    break
            if not member:
                if stored < cap:
                    for c in range(n):
                        out[stored, c] = partial[w, c]
                stored += 1
                if wt < best:
                    best = wt
        if w == 1:
            break
        if d == w:
            d = w - 1
        if d == 0:
            break
    return best, stored


@nb.njit(parallel=True, cache=True)
def _level(R, w, n, s, is_xor, addt, symp, collect_max, cap):
    k = R.shape[0]
    L = R.shape[2]
    bests = np.full(k, 1 << 30, dtype=np.int64)
    counts = np.zeros(k, dtype=np.int64)
    outs = np.zeros((k, cap, n), dtype=R.dtype)
    for i0 in nb.prange(k):
        partial = np.zeros((w + 1, L), dtype=R.dtype)
        idx = np.zeros(w + 1, dtype=np.int64)
        coef = np.zeros(w + 1, dtype=np.int64)
        b, c = _level_from(R, i0, w, n, s, is_xor, addt, symp, collect_max, cap,
                           outs[i0], partial, idx, coef)
        bests[i0] = b
        counts[i0] = c
    return bests, counts, outs


# ---- information sets ------------------------------------------------------------------------------
@dataclass
class _Chunk:
    G: np.ndarray          # k x n, systematic on `pivots` for its first `rank` rows
    pivots: tuple
    rank: int
    deficiency: int
    max_class: int = 0     # max columns of one symmetry class among pivots
    level: int = 0         # highest fully enumerated message weight
    R: np.ndarray | None = None


def _information_chunks(F: GF, G: np.ndarray, metric: str, classes: np.ndarray | None,
                        max_chunks: int = 64) -> list[_Chunk]:
    k, n = G.shape
    if metric == "symplectic":
        h = n // 2
        order = [c for i in range(h) for c in (i, i + h)]
    else:
        order = list(range(n))
    avail = list(order)
    chunks = []
    while avail and len(chunks) < max_chunks:
        rest = [c for c in range(n) if c not in set(avail)]
        perm = avail + rest
        R, piv = rref(F, G[:, perm])
        inside = [perm[p] for p in piv if p < len(avail)]
        if not inside:
            break
        Gj = np.zeros_like(R)
        Gj[:, perm] = R
        mc = 0
        if classes is not None:
            mc = int(np.bincount(classes[inside]).max())
        chunks.append(_Chunk(Gj, tuple(inside), len(inside), k - len(inside), mc))
        used = set(inside)
        if metric == "symplectic":
            h = n // 2
            used |= {(c + h) % n for c in inside}
        avail = [c for c in avail if c not in used]
    return chunks


def _chunk_bound(ch: _Chunk, metric: str, n: int) -> int:
    """Certified weight on the chunk's columns of any word not yet enumerated there."""
    a = max(0, ch.level + 1 - ch.deficiency)
    if metric == "symplectic":
        h = n // 2
        cols = set(ch.pivots)
        doubles = sum(1 for c in ch.pivots if c < h and c + h in cols)
        return (a + 1) // 2 if a <= 2 * doubles else doubles + (a - 2 * doubles)
    return a


def _lower_bound(chunks: Sequence[_Chunk], metric: str, n: int, m_sym: int) -> int:
    lb = sum(_chunk_bound(ch, metric, n) for ch in chunks)
    if m_sym and metric == "hamming":
        for ch in chunks:
            a = max(0, ch.level + 1 - ch.deficiency)
            if a and ch.max_class:
                lb = max(lb, -(-a * m_sym // ch.max_class))
    return lb


@dataclass
class WeightResult:
    value: int                       # exact minimum, or the certified bound when not exact
    lower: int
    upper: int
    exact: bool
    word: np.ndarray | None = None
    words: list = dc_field(default_factory=list)   # collected low-weight words (projective)


def _tables(F: GF):
    if F.order > NUMBA_LIMIT:
        raise ValueError("accelerated search supports fields with at most 256 elements")
    elems = F.elements()
    is_xor = F.p == 2
    if is_xor:
        addt = np.zeros((1, 1), dtype=np.uint8)
    else:
        addt = _i64(F.add(elems[:, None], elems[None, :])).astype(np.uint8)
    return elems, is_xor, addt


def _membership_columns(F: GF, Gj: np.ndarray, Bspace: LinearCode | None) -> np.ndarray:
    """k x s matrix S with c = mGj in B iff mS = 0."""
    if Bspace is None or Bspace.k == 0:
        return np.zeros((Gj.shape[0], 0), dtype=np.int64)
    from .codes import dual
    H = dual(Bspace).G
    S = matmul(F, Gj, H.T)
    _, piv = rref(F, S)
    return S[:, list(piv)]


def _prep(F: GF, ch: _Chunk, Bspace, elems):
    S = _membership_columns(F, ch.G, Bspace)
    X = np.concatenate([ch.G, S], axis=1)
    nz = elems[1:]
    R = _i64(F.mul(nz[None, :, None], X[:, None, :])).astype(np.uint8)
    ch.R = np.ascontiguousarray(R)
    return S.shape[1]


def _normalize(F: GF, W: np.ndarray) -> np.ndarray:
    W = _i64(W)
    if W.shape[0] == 0:
        return W
    lead = W[np.arange(W.shape[0]), np.argmax(W != 0, axis=1)]
    return _i64(F.mul(W, F.inv(lead)[:, None]))


def _level_cost(k: int, w: int, Q: int) -> int:
    return math.comb(k, w) * (Q - 1) ** max(w - 1, 0)


def min_weight_bz(A: LinearCode, exclude: LinearCode | None = None, metric: str = "hamming",
                  threshold: int | None = None, collect_upto: int = -1,
                  symmetry: ShiftSymmetry | None = None, budget: float = 5e10,
                  max_chunks: int = 64) -> WeightResult:
    """Minimum weight over A (or A \\ exclude) by information-set enumeration.

    ``threshold`` t: stop as soon as the certified lower bound exceeds t.
    ``collect_upto`` W: also return every word (projective, closed under
    ``symmetry``) of weight at most W; enumeration continues until complete.
    ``budget``: cap on the number of enumerated messages; on exhaustion the
    result is returned with ``exact=False``.
    """
    F = A.field
    n = A.n
    n_eff = _metric_length(n, metric)
    V, Bg = _split(A, exclude)
    if V.shape[0] == 0:
        return WeightResult(n_eff, n_eff, n_eff, True)
    Bspace = LinearCode.from_rows(F, Bg, n) if Bg.shape[0] else None
    G = np.concatenate([V, Bg])
    k = G.shape[0]
    elems, is_xor, addt = _tables(F)
    if symmetry is not None and symmetry.m * symmetry.ell != n:
        raise ValueError("shift symmetry does not match the code length")
    classes = symmetry.classes() if symmetry is not None else None
    m_sym = symmetry.m if symmetry is not None else 0
    chunks = _information_chunks(F, G, metric, classes, max_chunks)
    s_cols = [_prep(F, ch, Bspace, elems) for ch in chunks]
    best, best_word = n_eff + 1, None
    found = {}
    spent = 0.0
    cap = 1024
    seen_all = False
    exact = True

    def bound():
        return n_eff + 1 if seen_all else _lower_bound(chunks, metric, n, m_sym)

    def done(lb):
        if seen_all:
            return True
        if collect_upto >= 0 and lb <= collect_upto:
            return False
        if threshold is not None and lb > threshold:
            return True
        return best <= lb

    w = 0
    lb = bound()
    while exact and not done(lb):
        w += 1
        if w > k:
            seen_all = True
            break
        for ch, s in zip(chunks, s_cols):
            if w + 1 - ch.deficiency <= 0 and m_sym == 0:
                continue
            for lev in range(ch.level + 1, w + 1):
                cost = _level_cost(k, lev, F.order)
                if spent + cost > budget:
                    exact = False
                    break
                spent += cost
                while True:
                    bests, counts, outs = _level(ch.R, lev, n, s, is_xor, addt,
                                                 metric == "symplectic", collect_upto, cap)
                    if counts.max(initial=0) <= cap:
                        break
                    cap = int(counts.max()) * 2
                for i0 in np.flatnonzero(counts):
                    for wd in outs[i0, :counts[i0]].astype(np.int64):
                        wt = int(_weights(wd, metric))
                        if wt < best:
                            best, best_word = wt, wd.copy()
                        if wt <= collect_upto:
                            found[wd.tobytes()] = wd
                ch.level = lev
            if not exact:
                break
            if ch.deficiency == 0 and w >= k:
                seen_all = True
        lb = bound()
    words = []
    if collect_upto >= 0:
        W = np.array(list(found.values()), dtype=np.int64).reshape(-1, n)
        if symmetry is not None and W.shape[0]:
            W = np.concatenate([symmetry.apply(F, W, t) for t in range(symmetry.m)])
        W = _normalize(F, W)
        words = list(np.unique(W, axis=0)) if W.shape[0] else []
    upper = min(best, n_eff)
    if best <= lb:
        return WeightResult(best, best, best, True, best_word, words)
    lower = min(lb, n_eff)
    return WeightResult(lower, lower, upper, False, best_word, words)


def min_weight(A: LinearCode, exclude: LinearCode | None = None, metric: str = "hamming",
               threshold: int | None = None, symmetry: ShiftSymmetry | None = None,
               budget: float = 5e10) -> int:
    """Exact minimum weight (A \\ exclude), dispatching to the fastest engine."""
    if A.field.order > NUMBA_LIMIT or metric.startswith("block"):
        return min_weight_enum(A, exclude, metric)
    r = min_weight_bz(A, exclude, metric, threshold=threshold, symmetry=symmetry, budget=budget)
    if not r.exact and threshold is None:
        raise BudgetExceeded(f"bounds {r.lower}..{r.upper} after budget")
    return r.value


def min_symplectic_weight(A: LinearCode, exclude: LinearCode | None = None, **kw) -> int:
    return min_weight(A, exclude, metric="symplectic", **kw)


def weight_bounds(A: LinearCode, exclude: LinearCode | None = None, metric: str = "hamming",
                  symmetry: ShiftSymmetry | None = None, budget: float = 5e10) -> tuple[int, int]:
    """Certified (lower, upper) for the minimum weight; equal when exact."""
    if A.field.order > NUMBA_LIMIT or metric.startswith("block"):
        v = min_weight_enum(A, exclude, metric)
        return v, v
    r = min_weight_bz(A, exclude, metric, symmetry=symmetry, budget=budget)
    return (r.value, r.value) if r.exact else (r.lower, r.upper)


def weight_enumerator_prefix(A: LinearCode, up_to: int, exclude: LinearCode | None = None,
                             metric: str = "hamming", symmetry: ShiftSymmetry | None = None,
                             budget: float = 5e10) -> list[int]:
    """Exact counts A_0..A_w of codewords of each weight up to ``up_to``."""
    F = A.field
    n_eff = _metric_length(A.n, metric)
    up_to = min(up_to, n_eff)
    V, Bg = _split(A, exclude)
    small = (V.shape[0] + Bg.shape[0]) * math.log2(F.order) <= 20
    if small or F.order > NUMBA_LIMIT or metric.startswith("block"):
        return weight_distribution_enum(A, exclude, metric)[:up_to + 1]
    r = min_weight_bz(A, exclude, metric, collect_upto=up_to, symmetry=symmetry, budget=budget)
    if not r.exact and r.lower <= up_to:
        raise BudgetExceeded(f"enumeration complete only below weight {r.lower}")
    counts = [0] * (up_to + 1)
    if exclude is None or exclude.k == 0:
        counts[0] = 1
    for wd in r.words:
        counts[int(_weights(wd, metric))] += F.order - 1
    return counts
