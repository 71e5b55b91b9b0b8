"""Randomized constituent search and the analysis pipeline shared with the CLI.

Each iteration draws self-orthogonal constituents slot by slot, perturbs
exactly one slot with an extra random row, composes the quasi-twisted code
and runs the matching Construction X.  Iterations are keyed by
(seed, iteration) so any record can be regenerated in isolation.
"""
from __future__ import annotations

import csv
import hashlib
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from .codes import LinearCode, dual, intersect_codes, matmul, nullspace, rank, sum_codes
from .constrx import (QuantumParams, WeightOptions, certificate,
                      extend_css, extend_hermitian, extend_symplectic)
from .galois import GF, _i64
from .qt import (ConstituentSet, QTCodeSpec, Slot, _pairing_matrix, _slot_frob, code_field,
                 compose, empty_constituents, expand_generator_matrix, hull_profile,
                 pairing_left, place, shift_symmetry)
from .wdist import weight_bounds


class InfeasibleError(ValueError):
    pass


def lambda_allowed(F: GF, lam: int, regime: str) -> bool:
    lam = int(lam)
    if lam == 0:
        return False
    if regime == "hermitian":
        return int(F.pow(lam, F.half_order + 1)) == 1
    if regime == "symplectic":
        return lam in (1, int(F.neg(1)))
    return lam not in (1, int(F.neg(1)))


# ---- configuration and records --------------------------------------------------------
@dataclass
class SearchConfig:
    regime: str = "hermitian"
    q: int = 4
    m: int = 7
    ell: int = 3
    lam: str = "1"
    e: int | None = None                # keep only codes with this defect
    dims: list | None = None            # per slot: int, or [d1, d2] for pairs/twins
    defective_slot: int | None = None   # default: drawn uniformly
    seed: int = 0
    iterations: int = 10
    threshold: int | None = None        # keep records with d_lower >= threshold
    retries: int = 0                    # extra seeded complement bases per code
    budget: float = 5e10

    @classmethod
    def from_json(cls, obj: dict) -> SearchConfig:
        known = set(cls.__dataclass_fields__)
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown config keys {sorted(extra)}")
        cfg = cls(**obj)
        cfg.lam = str(cfg.lam)
        return cfg

    def field(self) -> GF:
        return code_field(self.q, self.regime)

    def lam_value(self) -> int:
        return self.field().parse(self.lam)

    def validate(self):
        F = self.field()
        if not lambda_allowed(F, self.lam_value(), self.regime):
            raise InfeasibleError(f"lambda {self.lam} not admissible for {self.regime}")
        if self.regime in ("symplectic", "lambda_pair") and self.ell % 2:
            raise InfeasibleError("symplectic layouts need an even number of components")


@dataclass
class ResultRecord:
    params: dict
    spec: dict
    digest: str
    seed: int
    iteration: int
    retry: int
    status: str                      # "exact" or "bounds-only"
    wall_time: float | None = None
    comparison: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["wall_time"] is None:
            d.pop("wall_time")
        if d["comparison"] is None:
            d.pop("comparison")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---- analysis pipeline ------------------------------------------------------------------
def split_product(spec: QTCodeSpec, C: LinearCode) -> tuple[LinearCode, LinearCode]:
    """Left and right halves of a (lambda, lambda^-1) product code."""
    F = spec.field
    h = C.n // 2
    return (LinearCode.from_rows(F, C.G[:, :h], h), LinearCode.from_rows(F, C.G[:, h:], h))


def construction_x(spec: QTCodeSpec, rng=None, budget: float = 5e10, compute_bounds: bool = True):
    """Regime-appropriate Construction X on the expanded code."""
    C = expand_generator_matrix(spec)
    opts = WeightOptions(budget=budget, symmetry=shift_symmetry(spec))
    if spec.regime == "hermitian":
        return extend_hermitian(C, rng, opts, compute_bounds)
    if spec.regime == "symplectic":
        return extend_symplectic(C, rng, opts, compute_bounds)
    left, right = split_product(spec, C)
    # C = C2^perp x C1^perp
    return extend_css(dual(right), dual(left), rng, opts, compute_bounds)


def complement_rng(seed: int, iteration: int, retry: int):
    return None if retry == 0 else np.random.default_rng([seed, iteration, retry])


def best_extension(spec: QTCodeSpec, seed: int, iteration: int, retries: int, budget: float):
    best = None
    for r in range(retries + 1):
        w, p = construction_x(spec, complement_rng(seed, iteration, r), budget)
        if best is None or p.d_lower > best[1].d_lower:
            best = (w, p, r)
    return best


def analyze(spec: QTCodeSpec, budget: float = 5e10, distances: bool = True) -> dict:
    """Parameters of the code, its hull profile, and the Construction X output."""
    from .qt import IP_KIND, decompose
    F = spec.field
    C = expand_generator_matrix(spec)
    kind = IP_KIND[spec.regime]
    metric = "hamming" if spec.regime == "hermitian" else "symplectic"
    sym = shift_symmetry(spec)
    D = dual(C, kind)
    H = intersect_codes(C, D)
    S = sum_codes(C, D)
    rep = {"regime": spec.regime, "q": F.order, "n": C.n, "k": C.k}

    def dist(A):
        if not distances:
            return None
        lo, hi = weight_bounds(A, None, metric, sym, budget)
        return lo if lo == hi else [lo, hi]

    for name, A in (("code", C), ("hull", H), ("dual", D), ("sum", S)):
        rep[name] = {"n": A.n, "k": A.k, "d": dist(A)}
    cs = decompose(spec)
    hp = hull_profile(cs)
    rep["profile"] = {"k": hp.k, "hull_dim": hp.hull_dim, "e": hp.e,
                      "slots": [asdict(s) | {"ok": s.ok} for s in hp.slots]}
    rep["self_orthogonal"] = all(s.ok for s in hp.slots)
    w, p = construction_x(spec, None, budget, distances)
    rep["quantum"] = p.to_json()
    rep["quantum_line"] = p.bounds_line() if distances else p.head()
    return rep


def format_report(rep: dict) -> list[str]:
    def code_line(c, q):
        d = c["d"]
        if d is None:
            return f"[{c['n']},{c['k']}]_{q}"
        if isinstance(d, list):
            return f"[{c['n']},{c['k']},{d[0]}..{d[1]}]_{q}"
        return f"[{c['n']},{c['k']},{d}]_{q}"
    q = rep["q"]
    lines = [f"regime {rep['regime']}",
             f"code {code_line(rep['code'], q)}",
             f"hull {code_line(rep['hull'], q)}",
             f"dual {code_line(rep['dual'], q)}",
             f"sum {code_line(rep['sum'], q)}",
             f"hull dim {rep['profile']['hull_dim']} e = {rep['profile']['e']}"]
    for i, s in enumerate(rep["profile"]["slots"]):
        lines.append(f"slot {i} {s['kind']} deg {s['degree']} dims {s['dim']}/{s['partner_dim']}"
                     f" gram rank {s['gram_rank']} {'ok' if s['ok'] else 'defective'}")
    lines.append(f"quantum {rep['quantum_line']}")
    b = rep["quantum"]["bounds"]
    if "d_pure" in b:
        lines.append(f"pure-distance lower bound {b['d_pure']}")
    return lines


# ---- constituent sampling -----------------------------------------------------------------
def _subfield_elements(K: GF, size: int, rng, shape) -> np.ndarray:
    """Uniform elements of the subfield of K of the given size."""
    step = (K.order - 1) // (size - 1)
    r = rng.integers(0, size, size=shape)
    if K._exp is not None:
        return np.where(r == 0, 0, K._exp[(step * (r - 1)) % (K.order - 1)]).astype(np.int64)
    g = K.pow(K.prim, step)
    return np.array([int(K.pow(g, int(x) - 1)) if x else 0 for x in r.reshape(-1)],
                    dtype=np.int64).reshape(shape)


def _combine(K: GF, size: int, rng, basis: np.ndarray) -> np.ndarray:
    c = _subfield_elements(K, size, rng, (basis.shape[0],))
    return _i64(matmul(K, c[None, :], basis))[0]


def _slot_size(cs: ConstituentSet, s: Slot) -> int:
    return cs.field.order ** s.degree


def _frob_inverse(cs: ConstituentSet, s: Slot, X: np.ndarray) -> np.ndarray:
    j = (s.degree - s.frob_to_partner) % s.degree
    return _slot_frob(cs.K, X, cs.field.order, j)


def _sample_single(cs: ConstituentSet, s: Slot, d: int, rng, tries: int = 200) -> np.ndarray:
    K, Q = cs.K, cs.field.order
    size = _slot_size(cs, s)
    ell = s.code.n
    W = np.zeros((0, ell), dtype=np.int64)
    for _ in range(tries):
        if W.shape[0] == d:
            return W
        if W.shape[0]:
            allowed = _frob_inverse(cs, s, nullspace(K, pairing_left(cs, W), ell))
        else:
            allowed = np.eye(ell, dtype=np.int64)
        if allowed.shape[0] == 0:
            break
        v = _combine(K, size, rng, allowed)
        X = np.vstack([W, v])
        if rank(K, X) < X.shape[0]:
            continue
        if _pairing_matrix(cs, X, _slot_frob(K, X, Q, s.frob_to_partner)).any():
            continue
        W = X
    if W.shape[0] == d:
        return W
    raise InfeasibleError(f"no self-orthogonal dimension {d} found in slot {s.label}")


def _sample_pair(cs: ConstituentSet, s: Slot, d1: int, d2: int, rng) -> tuple[np.ndarray, np.ndarray]:
    K = cs.K
    size = _slot_size(cs, s)
    ell = s.code.n
    if d1 + d2 > ell:
        raise InfeasibleError(f"pair dimensions {d1}+{d2} exceed {ell}")
    X = _independent_rows(K, size, rng, np.eye(ell, dtype=np.int64), d1)
    allowed = nullspace(K, pairing_left(cs, X), s.partner.n) if d1 else np.eye(s.partner.n, dtype=np.int64)
    Y = _independent_rows(K, size, rng, allowed, d2)
    return X, Y


def _independent_rows(K: GF, size: int, rng, basis: np.ndarray, d: int, tries: int = 200) -> np.ndarray:
    out = np.zeros((0, basis.shape[1]), dtype=np.int64)
    if d > basis.shape[0]:
        raise InfeasibleError(f"dimension {d} exceeds the available {basis.shape[0]}")
    for _ in range(tries):
        if out.shape[0] == d:
            break
        v = _combine(K, size, rng, basis)
        X = np.vstack([out, v])
        if rank(K, X) == X.shape[0]:
            out = X
    if out.shape[0] != d:
        raise InfeasibleError("could not draw independent rows")  # pragma: no cover
    return out


def _slot_dims(cfg: SearchConfig, cs: ConstituentSet, rng) -> list:
    if cfg.dims is not None:
        if len(cfg.dims) != len(cs.slots):
            raise InfeasibleError(f"{len(cfg.dims)} slot dimensions given for {len(cs.slots)} slots")
        return cfg.dims
    out = []
    for s in cs.slots:
        ell = s.code.n
        if s.kind == "single":
            out.append(int(rng.integers(0, ell // 2 + 1)))
        else:
            d1 = int(rng.integers(0, ell + 1))
            out.append([d1, int(rng.integers(0, ell - d1 + 1))])
    return out


def self_orthogonal_constituents(cfg: SearchConfig, rng, resample: int = 20) -> ConstituentSet:
    """Random constituents satisfying the regime's self-orthogonality criteria."""
    F = cfg.field()
    cs = empty_constituents(F, cfg.m, cfg.ell, cfg.lam_value(), cfg.regime)
    if not cs.slots:
        raise InfeasibleError("no constituent slots")
    dims = _slot_dims(cfg, cs, rng)
    for i, (s, d) in enumerate(zip(cs.slots, dims)):
        for attempt in range(resample):
            try:
                if s.kind == "single":
                    place(cs, i, _sample_single(cs, s, int(d), rng))
                else:
                    d1, d2 = (int(x) for x in d)
                    X, Y = _sample_pair(cs, s, d1, d2, rng)
                    place(cs, i, X, Y)
                break
            except InfeasibleError:
                if attempt == resample - 1 or s.kind != "single":
                    raise
    return cs


def random_constituents(cfg: SearchConfig, rng, resample: int = 20) -> ConstituentSet:
    """Self-orthogonal constituents, then one extra random row in one slot."""
    cs = self_orthogonal_constituents(cfg, rng, resample)
    j = cfg.defective_slot if cfg.defective_slot is not None else int(rng.integers(0, len(cs.slots)))
    if not 0 <= j < len(cs.slots):
        raise InfeasibleError(f"defective slot {j} out of range")
    s = cs.slots[j]
    K = cs.K
    size = _slot_size(cs, s)
    for _ in range(100):
        v = _combine(K, size, rng, np.eye(s.code.n, dtype=np.int64))
        X = np.vstack([s.code.G, v])
        if rank(K, X) == X.shape[0]:
            partner = s.partner.G if s.partner is not None else None
            place(cs, j, X, partner)
            break
    return cs


def _digest(w, p) -> str:
    blob = json.dumps(certificate(w, p), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def search_iteration(cfg: SearchConfig, iteration: int, timing: bool = False):
    """One seeded draw; returns a ResultRecord or None when filtered out."""
    t0 = time.perf_counter()
    rng = np.random.default_rng([cfg.seed, iteration])
    try:
        cs = random_constituents(cfg, rng)
    except InfeasibleError:
        if cfg.dims is not None:
            raise
        return None
    if cfg.e is not None and hull_profile(cs).e != cfg.e:
        return None
    spec = compose(cs)
    w, p, r = best_extension(spec, cfg.seed, iteration, cfg.retries, cfg.budget)
    if cfg.threshold is not None and p.d_lower < cfg.threshold:
        return None
    status = "exact" if p.exact else "bounds-only"
    wall = round(time.perf_counter() - t0, 3) if timing else None
    return ResultRecord(p.to_json(), spec.to_json(), _digest(w, p), cfg.seed, iteration, r,
                        status, wall)


def _worker(args):
    cfg, it, timing = args
    return search_iteration(cfg, it, timing)


def run_search(cfg: SearchConfig, threads: int = 1, timing: bool = False, table=None):
    """Yield records in iteration order; identical for any thread count."""
    cfg.validate()
    its = range(cfg.iterations)
    if threads <= 1:
        results = (search_iteration(cfg, it, timing) for it in its)
    else:
        import multiprocessing
        from concurrent.futures import ProcessPoolExecutor
        # spawn: forking after numba has started its thread pool is unsafe
        ex = ProcessPoolExecutor(max_workers=threads, mp_context=multiprocessing.get_context("spawn"))
        results = ex.map(_worker, [(cfg, it, timing) for it in its])
    try:
        yield from _annotate(results, table)
    finally:
        if threads > 1:
            ex.shutdown(cancel_futures=True)


def _annotate(results, table):
    for rec in results:
        if rec is None:
            continue
        if table is not None:
            rec.comparison = compare_one(QuantumParams.from_json(rec.params), table)
            if rec.comparison == "dominated":
                continue
        yield rec


# ---- verification and tables -----------------------------------------------------------------
def verify_record(rec: dict, budget: float = 5e10) -> tuple[bool, str]:
    spec = QTCodeSpec.from_json(rec["spec"])
    stored = QuantumParams.from_json(rec["params"])
    rng = complement_rng(int(rec["seed"]), int(rec["iteration"]), int(rec.get("retry", 0)))
    w, p = construction_x(spec, rng, budget)
    same = (p.line() == stored.line() and p.bounds_line() == stored.bounds_line())
    if "digest" in rec:
        same = same and _digest(w, p) == rec["digest"]
    return same, p.bounds_line()


class TableError(ValueError):
    pass


def read_table(path) -> dict:
    """CSV with columns q,n,k,d -> {(q, n, k): best d}."""
    table = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = None
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].startswith("#"):
                continue
            if header is None and [c.strip() for c in row] == ["q", "n", "k", "d"]:
                header = row
                continue
            try:
                q, n, k, d = (int(c) for c in row)
            except ValueError:
                raise TableError(f"row {lineno}: expected four integers q,n,k,d, got {row}") from None
            key = (q, n, k)
            table[key] = max(table.get(key, 0), d)
    return table


def compare_one(p: QuantumParams, table: dict) -> str:
    if float(p.k) != int(p.k):
        return "new-record"
    best = table.get((p.q, p.n, int(p.k)))
    if best is None or p.d_lower > best:
        return "new-record"
    return "tie" if p.d_lower == best else "dominated"
