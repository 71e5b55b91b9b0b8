"""Acceptance criteria 1-9; conftest prints one PASS/FAIL line per criterion."""
import math

import numpy as np
import pytest

from qtx.codes import (LinearCode, dual, dual_basis, inner_product, intersect_codes, phi_code,
                       phi_expand, psi_expand, rank, sum_codes, trace_alternating)
from qtx.constrx import (check_extension, css_defect, exact_distance, extend_css,
                         extend_hermitian, extend_symplectic, extend_trace_symplectic,
                         propagate, WeightOptions)
from qtx.galois import factor_constashift_poly, field, hermitian_field
from qtx.orthobasis import hermitian_orthonormalize, symplectic_pair_basis
from qtx.qt import (QTCodeSpec, compose, decompose, direct_hull_dim, empty_constituents,
                    expand_generator_matrix, hull_profile, place, shift_symmetry)
from qtx.wdist import min_weight, min_weight_bz, weight_enumerator_prefix

from oracles import brute_min_weight, trace_alternating_dual
from randcodes import nearly_css_pair, nearly_self_orthogonal
from test_qt import draw_spec


# ---- 1 --------------------------------------------------------------------------------
def poly(F, terms):
    c = [0] * (max(terms) + 1)
    for e, v in terms.items():
        c[e] = F.parse(v)
    return tuple(c)


@pytest.fixture(scope="module")
def herm42(herm42_spec):
    F = field(4)
    g10 = poly(F, {3: "1", 2: "w^2", 1: "w", 0: "w^2"})
    g11 = poly(F, {17: "w", 16: "w", 13: "w^2", 12: "w", 11: "w^2", 10: "w", 8: "1", 6: "1",
                   5: "w", 4: "1", 3: "w", 2: "w", 1: "w"})
    g21 = poly(F, {18: "1", 15: "w^2", 12: "w", 9: "1", 6: "w^2", 3: "w", 0: "1"})
    spec = QTCodeSpec(F, 21, 2, F.parse("w^2"), ((g10, g11), ((), g21)), "hermitian")
    assert expand_generator_matrix(spec) == expand_generator_matrix(herm42_spec)
    C = expand_generator_matrix(spec)
    D = dual(C, "hermitian")
    return spec, C, D, intersect_codes(C, D), sum_codes(C, D)


def test_criterion_1_hermitian42_parameters(herm42):
    spec, C, D, H, S = herm42
    sym = shift_symmetry(spec)
    assert (C.k, H.k, D.k, S.k) == (21, 15, 21, 27)
    assert min_weight(C, symmetry=sym) == 7
    assert min_weight(H, symmetry=sym) == 14
    assert min_weight(D, symmetry=sym) == 11
    assert min_weight(S, symmetry=sym) == 7
    assert min_weight(S, exclude=C, symmetry=sym) == 8
    w, p = extend_hermitian(C, opts=WeightOptions(symmetry=sym))
    assert check_extension(w)
    assert p.bounds_line() == "[[48,6]]_2, 9 <= d <= 11"


def test_criterion_1_hermitian42_enumerators(herm42):
    spec, C, D, H, S = herm42
    sym = shift_symmetry(spec)

    def series(A, upto):
        return {i: c for i, c in enumerate(weight_enumerator_prefix(A, upto, symmetry=sym)) if c}

    assert series(H, 18) == {0: 1, 14: 63, 16: 756, 18: 14112}
    assert series(C, 11) == {0: 1, 7: 18, 10: 126, 11: 63}
    assert series(D, 13) == {0: 1, 11: 252, 12: 2079, 13: 11907}
    assert series(S, 9) == {0: 1, 7: 18, 8: 756, 9: 8442}


# ---- 2 --------------------------------------------------------------------------------
def test_criterion_2_qubit_pipeline():
    F = field(4)
    cs = empty_constituents(F, 7, 3, 1, "hermitian")
    K = cs.K
    E = lambda e: int(K.pow(K.prim, e))  # noqa: E731
    place(cs, 0, [[1, 0, F.prim], [0, 1, 0]])
    place(cs, 1, [[1, E(7), E(8)]], [[1, E(13), E(56)]], at=E(9), partner_at=E(45))
    spec = compose(cs)
    C = expand_generator_matrix(spec)
    hp = hull_profile(cs)
    assert (C.n, C.k) == (21, 8)
    assert hp.hull_dim == 7 == direct_hull_dim(spec)
    assert hp.e == 1
    D = dual(C, "hermitian")
    assert (D.k, min_weight(D)) == (13, 6)
    assert min_weight(sum_codes(C, D)) == 5
    w, p = extend_hermitian(C)
    assert check_extension(w)
    assert p.line() == "[[22,6,6]]_2" and p.exact
    assert "[[23,6,6]]_2" in {x.line() for x in propagate(p)}


# ---- 3 --------------------------------------------------------------------------------
def test_criterion_3_factorization():
    F = field(4)
    cls = factor_constashift_poly(7, 1, F, "conjugate_reciprocal")
    assert (cls.s, cls.r) == (1, 1)
    assert [f.poly.coeffs for f in cls.singles] == [(1, 1)]
    pair = sorted(f.poly.coeffs for f in cls.pairs[0])
    assert pair == [(1, 0, 1, 1), (1, 1, 0, 1)]      # x^3+x^2+1, x^3+x+1


# ---- 4 --------------------------------------------------------------------------------
GS_Q = [2, 3, 4, 5, 9]


def test_criterion_4_hermitian_gram_schmidt():
    rng = np.random.default_rng(2024)
    done = 0
    while done < 100:
        q = GS_Q[done % len(GS_Q)]
        F = hermitian_field(q)
        n = int(rng.integers(1, 17))
        V = F.random(rng, (int(rng.integers(1, n + 1)), n))
        C = LinearCode.from_rows(F, V, n)
        if intersect_codes(C, dual(C, "hermitian")).k:
            continue
        B = hermitian_orthonormalize(F, V)
        assert np.array_equal(B.gram(), np.eye(C.k, dtype=np.int64))
        assert LinearCode.from_rows(F, B.rows, n) == C
        done += 1


def test_criterion_4_symplectic_gram_schmidt():
    rng = np.random.default_rng(2025)
    done = 0
    while done < 100:
        q = GS_Q[done % len(GS_Q)]
        F = field(q)
        h = int(rng.integers(1, 9))
        V = F.random(rng, (2 * int(rng.integers(1, h + 1)), 2 * h))
        C = LinearCode.from_rows(F, V, 2 * h)
        if C.k % 2 or intersect_codes(C, dual(C, "symplectic")).k:
            continue
        B = symplectic_pair_basis(F, V)
        J = np.zeros((C.k, C.k), dtype=np.int64)
        for i in range(0, C.k, 2):
            J[i, i + 1], J[i + 1, i] = 1, F.neg(1)
        assert np.array_equal(B.gram(), J)
        assert LinearCode.from_rows(F, B.rows, 2 * h) == C
        done += 1


# ---- 5 --------------------------------------------------------------------------------
def test_criterion_5_hermitian_extensions():
    rng = np.random.default_rng(55)
    for i in range(100):
        q = 2 if i % 4 else 3
        F = hermitian_field(q)
        n = int(rng.integers(2, 9 if q == 2 else 6))
        C = nearly_self_orthogonal(F, n, int(rng.integers(0, n // 2 + 1)),
                                   int(rng.integers(1, 3)), "hermitian", rng)
        w, p = extend_hermitian(C, rng)
        e = C.k - intersect_codes(C, dual(C, "hermitian")).k
        assert check_extension(w)
        assert w.e == e and w.extended.k == C.k
        assert (p.n, p.k) == (n + e, n - 2 * C.k + e) and p.n <= 14
        assert p.d_lower <= exact_distance(w) <= p.d_upper


def test_criterion_5_symplectic_extensions():
    rng = np.random.default_rng(56)
    for i in range(100):
        q = 2 if i % 4 else 3
        F = field(q)
        n = int(rng.integers(2, 9 if q == 2 else 6))
        C = nearly_self_orthogonal(F, 2 * n, int(rng.integers(0, n + 1)),
                                   int(rng.integers(1, 3)), "symplectic", rng)
        w, p = extend_symplectic(C, rng)
        e = (C.k - intersect_codes(C, dual(C, "symplectic")).k) // 2
        assert check_extension(w)
        assert w.e == e and w.extended.k == C.k
        assert (p.n, p.k) == (n + e, n - C.k + e) and p.n <= 14
        assert p.d_lower <= exact_distance(w) <= p.d_upper


def test_criterion_5_css_extensions():
    rng = np.random.default_rng(57)
    for i in range(100):
        q = 2 if i % 4 else 3
        F = field(q)
        n = int(rng.integers(3, 11 if q == 2 else 7))
        a = int(rng.integers(1, n))
        C1, C2 = nearly_css_pair(F, n, a, int(rng.integers(0, 3)), int(rng.integers(0, 3)), rng)
        w, p = extend_css(C1, C2, rng)
        e = css_defect(C1, C2)
        assert check_extension(w)
        assert w.e == e
        assert (p.n, p.k) == (n + e, C1.k + C2.k - n + e) and p.n <= 14
        assert p.d_lower <= exact_distance(w) <= p.d_upper


# ---- 6 --------------------------------------------------------------------------------
def _isolated_pair_defect(cs, i):
    s = cs.slots[i]
    iso = empty_constituents(cs.field, cs.m, cs.ell, cs.lam, cs.regime)
    place(iso, i, s.code.G, s.partner.G)
    spec = compose(iso)
    C = expand_generator_matrix(spec)
    return C.k - direct_hull_dim(spec)


def test_criterion_6_formulas_vs_direct():
    from qtx.qt import pairing_left
    from qtx.codes import matmul
    rng = np.random.default_rng(66)
    regimes = ["hermitian", "symplectic", "lambda_pair"]
    pair_checks = 0
    for i in range(200):
        spec = draw_spec(rng, regimes[i % 3], max_n=40)
        assert spec.m * spec.ell <= 40
        cs = decompose(spec)
        C = expand_generator_matrix(spec)
        hp = hull_profile(cs)
        assert hp.k == cs.dimension() == C.k == rank(spec.field, C.G)
        assert hp.hull_dim == direct_hull_dim(spec)
        for j, (s, rep) in enumerate(zip(cs.slots, hp.slots)):
            if s.kind == "single":
                continue
            r = rank(cs.K, matmul(cs.K, pairing_left(cs, s.code.G), s.partner.G.T)) \
                if s.code.k and s.partner.k else 0
            assert rep.defect == s.degree * 2 * r
            if cs.regime == "hermitian":
                assert rep.k_slot == 2 * r
            if i % 4 == 0:
                assert _isolated_pair_defect(cs, j) == s.degree * 2 * r
                pair_checks += 1
    assert pair_checks > 0


# ---- 7 --------------------------------------------------------------------------------
def _random_basis(F, rng):
    P = F.chain[0]
    while True:
        B = [int(x) for x in F.random(rng, F.degree)]
        digits = np.array([[(b // F.p ** i) % F.p for i in range(F.degree)] for b in B])
        if rank(P, digits) == F.degree:
            return B


def test_criterion_7_phi_bridge():
    rng = np.random.default_rng(77)
    qs = [2, 3, 4, 5, 8, 9]
    for i in range(1000):
        F = hermitian_field(qs[i % len(qs)])
        n = int(rng.integers(1, 8))
        v, u = F.random(rng, n), F.random(rng, n)
        ts = inner_product(F.base, phi_expand(F, v), phi_expand(F, u), "trace_symplectic")
        assert trace_alternating(F, v, u) == ts


def test_criterion_7_psi_bridge():
    rng = np.random.default_rng(78)
    qs = [4, 8, 9, 16, 25, 27]
    for i in range(1000):
        F = field(qs[i % len(qs)])
        P = F.chain[0]
        basis = _random_basis(F, rng)
        bd = dual_basis(F, basis)
        assert all(F.trace(F.mul(a, b)) == (x == y) for x, a in enumerate(basis)
                   for y, b in enumerate(bd))
        n = int(rng.integers(1, 6))
        v, u = F.random(rng, 2 * n), F.random(rng, 2 * n)
        lhs = inner_product(F, v, u, "trace_symplectic")
        assert lhs == inner_product(P, psi_expand(F, v, basis), psi_expand(F, u, basis),
                                    "symplectic")


def test_criterion_7_dualities():
    rng = np.random.default_rng(79)
    qs = [2, 3, 5, 7]
    for i in range(50):
        F = hermitian_field(qs[i % len(qs)])
        n = int(rng.integers(1, 7))
        C = LinearCode.from_rows(F, F.random(rng, (int(rng.integers(0, n + 1)), n)), n)
        via_h = phi_code(dual(C, "hermitian"))
        assert dual(phi_code(C), "symplectic") == via_h
        assert trace_alternating_dual(C) == via_h


# ---- 8 --------------------------------------------------------------------------------
K_MAX = {2: 12, 3: 9, 4: 7}


def test_criterion_8_oracle_equivalence():
    rng = np.random.default_rng(88)
    kinds = {"plain": 0, "exclude": 0, "symplectic": 0}
    for i in range(500):
        q = [2, 3, 4][i % 3]
        F = field(q)
        variant = list(kinds)[(i // 3) % 3]
        n = int(rng.integers(1, 21))
        if variant == "symplectic":
            n = max(2, n - n % 2)
        k = int(rng.integers(1, min(n, K_MAX[q]) + 1))
        C = LinearCode.from_rows(F, F.random(rng, (k, n)), n)
        metric = "symplectic" if variant == "symplectic" else "hamming"
        B = None
        if variant == "exclude":
            B = LinearCode.from_rows(F, C.encode(F.random(rng, (int(rng.integers(0, C.k + 1)),
                                                                C.k))), n)
        want = brute_min_weight(C, B, metric)
        got = min_weight_bz(C, B, metric)
        assert got.exact and got.value == want, (q, n, k, variant)
        kinds[variant] += 1
    assert min(kinds.values()) > 100


# ---- 9 --------------------------------------------------------------------------------
def test_criterion_9_additive_gf16(additive_spec):
    spec = additive_spec
    cs = decompose(spec)
    hp = hull_profile(cs)
    C = expand_generator_matrix(spec)
    D = dual(C, "symplectic")
    H = intersect_codes(C, D)
    S = sum_codes(C, D)
    assert (C.n, C.k) == (188, 73) and hp.k == 73
    assert H.k == hp.hull_dim == 69
    assert (D.n, D.k) == (188, 115)
    assert (S.n, S.k) == (188, 119)
    assert hp.e == 2
    w2, _ = extend_symplectic(C, compute_bounds=False)
    assert (w2.extended.n, w2.extended.k) == (192, 73) and check_extension(w2)
    w, p, rows = extend_trace_symplectic(C, field(4), basis=(2, 3), compute_bounds=False)
    assert check_extension(w)
    assert p.head() == "((48,2^23))_4"
    assert math.isclose(float(p.log_p_dimension), 23)
