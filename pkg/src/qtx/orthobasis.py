"""Gram-Schmidt over finite fields for subspaces with trivial hull.

Hermitian: rows z_i with <z_i, z_j>_H = delta_ij.
Symplectic: rows z_0, z_1, ... with <z_2i, z_2i+1>_S = 1 and every other
pair orthogonal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import LinearCode, complement_basis, gram, inner_product, matmul, rank
from .galois import GF, _i64, solve_norm


class HullError(ValueError):
    """The subspace meets its dual; ``witness`` is a nonzero vector of the hull."""

    def __init__(self, msg: str, witness: np.ndarray):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    kind: str  # "hermitian" or "symplectic_pairs"
    rows: np.ndarray
    source: LinearCode

    @property
    def size(self) -> int:
        return int(self.rows.shape[0])

    def gram(self) -> np.ndarray:
        k = "hermitian" if self.kind == "hermitian" else "symplectic"
        return gram(self.source.field, self.rows, self.rows, k)


def _independent(F: GF, V) -> list[np.ndarray]:
    """Input rows in order, dropping those dependent on earlier ones."""
    V = np.atleast_2d(_i64(V))
    out: list[np.ndarray] = []
    for row in V:
        if rank(F, np.array(out + [row])) == len(out) + 1:
            out.append(row.copy())
    return out


def _source(F: GF, V, n: int) -> LinearCode:
    V = np.atleast_2d(_i64(V)).reshape(-1, n)
    return LinearCode.from_rows(F, V, n)


def hermitian_orthonormalize(F: GF, V, n: int | None = None) -> OrthoBasis:
    """Orthonormal basis of span(V) over F_{q^2} under the Hermitian form."""
    V = np.atleast_2d(_i64(V))
    n = V.shape[1] if n is None else n
    q = F.half_order
    xs = _independent(F, V) if V.size else []
    out = []
    while xs:
        selfs = [inner_product(F, x, x, "hermitian") for x in xs]
        i = next((i for i, s in enumerate(selfs) if s), None)
        if i is None:
            x1 = xs[0]
            j = next((j for j in range(1, len(xs))
                      if inner_product(F, x1, xs[j], "hermitian")), None)
            if j is None:
                raise HullError("subspace has a nontrivial Hermitian hull", x1)
            c = inner_product(F, x1, xs[j], "hermitian")
            cq = int(F.pow(c, q))
            for a in F.elements():
                a = int(a)
                if F.add(F.mul(F.pow(a, q), c), F.mul(a, cq)):
                    break
            xs[0] = _i64(F.add(x1, F.mul(a, xs[j])))
            i = 0
        z = xs.pop(i)
        beta = solve_norm(inner_product(F, z, z, "hermitian"), F)
        z = _i64(F.mul(z, F.inv(beta)))
        out.append(z)
        xs = [_i64(F.sub(x, F.mul(inner_product(F, x, z, "hermitian"), z))) for x in xs]
    rows = np.array(out, dtype=np.int64).reshape(len(out), n)
    return OrthoBasis("hermitian", rows, _source(F, V, n))


def symplectic_pair_basis(F: GF, V, n2: int | None = None) -> OrthoBasis:
    """Symplectic-pair basis of span(V) in F_q^(2n)."""
    V = np.atleast_2d(_i64(V))
    n2 = V.shape[1] if n2 is None else n2
    if n2 % 2:
        raise ValueError("symplectic ambient length must be even")
    xs = _independent(F, V) if V.size else []
    if len(xs) % 2:
        raise ValueError(f"dimension {len(xs)} is odd")
    out = []
    while xs:
        z0 = xs.pop(0)
        j = next((j for j, x in enumerate(xs) if inner_product(F, z0, x, "symplectic")), None)
        if j is None:
            raise HullError("subspace has a nontrivial symplectic hull", z0)
        beta = inner_product(F, z0, xs[j], "symplectic")
        z1 = _i64(F.mul(xs.pop(j), F.inv(beta)))
        out += [z0, z1]
        nxt = []
        for x in xs:
            a = inner_product(F, x, z1, "symplectic")
            b = inner_product(F, x, z0, "symplectic")
            nxt.append(_i64(F.add(F.sub(x, F.mul(a, z0)), F.mul(b, z1))))
        xs = nxt
    rows = np.array(out, dtype=np.int64).reshape(len(out), n2)
    return OrthoBasis("symplectic_pairs", rows, _source(F, V, n2))


def complement(big: LinearCode, sub: LinearCode, rng: np.random.Generator | None = None) -> np.ndarray:
    """Rows spanning a complement of ``sub`` in ``big``.

    Deterministic echelon completion by default; with ``rng`` each row is
    shifted by a random element of ``sub`` and the rows are mixed by a random
    invertible matrix, giving a random complement.
    """
    F = big.field
    W = complement_basis(big, sub)
    if rng is None or W.shape[0] == 0:
        return W
    if sub.k:
        S = F.random(rng, (W.shape[0], sub.k))
        W = _i64(F.add(W, matmul(F, S, sub.G)))
    while True:
        T = _i64(F.random(rng, (W.shape[0], W.shape[0])))
        if rank(F, T) == W.shape[0]:
            return _i64(matmul(F, T, W))

