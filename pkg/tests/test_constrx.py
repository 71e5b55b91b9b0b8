import json
from fractions import Fraction

import numpy as np
import pytest

from qtx.codes import LinearCode, dual, gram, hull, is_self_orthogonal, psi_code
from qtx.constrx import (ConstructionError, QuantumParams, WeightOptions, check_extension,
                         css_codes, css_construction, css_defect, dominates, dumps_certificate,
                         exact_distance, extend_css, extend_hermitian, extend_symplectic,
                         extend_trace_symplectic, hermitian_construction, propagate,
                         propagation_step, prune_dominated, swap_with_dual_params,
                         symplectic_construction, trace_symplectic_construction,
                         verify_certificate)
from qtx.galois import field, hermitian_field

from randcodes import nearly_css_pair, nearly_self_orthogonal

HAMMING = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]


def P(n, k, d, q=2, hi=None, pure=None, regime="hermitian"):
    return QuantumParams(n, k, q, d, hi or d, regime, pure)


def test_steane_css():
    F = field(2)
    H = LinearCode.from_rows(F, HAMMING)
    C = dual(H)
    p = css_construction(C, C)
    assert p.line() == "[[7,1,3]]_2"


def test_hermitian_hexacode():
    F = hermitian_field(2)
    w = F.prim
    hexa = LinearCode.from_rows(F, [[1, 0, 0, 1, w, w], [0, 1, 0, w, 1, w], [0, 0, 1, w, w, 1]])
    assert is_self_orthogonal(hexa, "hermitian")
    p = hermitian_construction(hexa)
    assert (p.n, p.k, p.d_lower, p.d_upper) == (6, 0, 4, 4)


def test_symplectic_five_qubit():
    F = field(2)
    # stabilizers of [[5,1,3]] in (x|z) layout
    S = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    rows = []
    for s in S:
        x = [1 if c in "XY" else 0 for c in s]
        z = [1 if c in "ZY" else 0 for c in s]
        rows.append(x + z)
    C = LinearCode.from_rows(F, rows)
    p = symplectic_construction(C)
    assert p.line() == "[[5,1,3]]_2"
    assert p.pure


def test_not_self_orthogonal_rejected():
    F = hermitian_field(2)
    with pytest.raises(ConstructionError):
        hermitian_construction(LinearCode.from_rows(F, [[1, 0, 0]]))
    with pytest.raises(ConstructionError):
        css_construction(LinearCode.from_rows(field(2), [[1, 1, 0]]),
                         LinearCode.from_rows(field(2), [[1, 0, 0]]))


@pytest.mark.parametrize("seed", range(8))
def test_hermitian_extension(seed):
    rng = np.random.default_rng(seed)
    F = hermitian_field(2)
    C = nearly_self_orthogonal(F, 7, 2, 2, "hermitian", rng)
    w, p = extend_hermitian(C, rng)
    e = C.k - hull(C, "hermitian").k
    assert w.e == e and check_extension(w)
    assert (p.n, p.k) == (7 + e, 7 - 2 * C.k + e)
    assert w.extended.k == C.k
    # the extension restricted to the first n coordinates spans C
    assert LinearCode.from_rows(F, w.extended.G[:, :7], 7) == C
    assert p.d_lower <= exact_distance(w) <= p.d_upper


@pytest.mark.parametrize("seed", range(8))
def test_symplectic_extension(seed):
    rng = np.random.default_rng(seed)
    F = field(3)
    C = nearly_self_orthogonal(F, 10, 2, 2, "symplectic", rng)
    w, p = extend_symplectic(C, rng)
    e = (C.k - hull(C, "symplectic").k) // 2
    assert w.e == e and check_extension(w)
    assert (p.n, p.k) == (5 + e, 5 - C.k + e)
    assert p.d_lower <= exact_distance(w) <= p.d_upper


@pytest.mark.parametrize("seed", range(8))
def test_css_extension(seed):
    rng = np.random.default_rng(seed)
    F = field(2)
    C1, C2 = nearly_css_pair(F, 9, 3, 1, 2, rng)
    w, p = extend_css(C1, C2, rng)
    e = css_defect(C1, C2)
    assert w.e == e and check_extension(w)
    assert (p.n, p.k) == (9 + e, C1.k + C2.k - 9 + e)
    X1, X2 = css_codes(w)
    assert X1.contains_code(dual(X2))
    assert p.d_lower <= exact_distance(w) <= p.d_upper


def test_css_defect_formula_is_symmetric():
    rng = np.random.default_rng(3)
    F = field(3)
    for _ in range(20):
        C1, C2 = nearly_css_pair(F, 6, 3, 2, 1, rng)
        assert css_defect(C1, C2) == css_defect(C2, C1)


@pytest.mark.parametrize("seed", range(4))
def test_trace_symplectic_extension(seed):
    rng = np.random.default_rng(seed)
    F4 = field(4)
    P2 = field(2)
    C = nearly_self_orthogonal(P2, 12, 2, 3, "symplectic", rng)
    w, p, rows = extend_trace_symplectic(C, F4, rng=rng)
    assert check_extension(w)
    assert w.extended.n % 4 == 0
    assert p.n == 3 + -(-w.e // 2)
    assert p.log_p_dimension == 6 - C.k + w.e
    back = psi_code(F4, rows)
    assert back == w.extended
    assert p.d_lower <= exact_distance(w, F4) <= p.d_upper


def test_trace_symplectic_m1_is_symplectic():
    rng = np.random.default_rng(9)
    F = field(3)
    C = nearly_self_orthogonal(F, 8, 1, 2, "symplectic", rng)
    _, p1, _ = extend_trace_symplectic(C, F)
    _, p2 = extend_symplectic(C)
    assert (p1.n, p1.k, p1.d_lower, p1.d_upper) == (p2.n, p2.k, p2.d_lower, p2.d_upper)


def test_trace_symplectic_construction_fractional():
    F4 = field(4)
    P2 = field(2)
    C = LinearCode.from_rows(P2, [[1, 0, 0, 0, 0, 0, 0, 0]])
    p = trace_symplectic_construction(C, F4)
    assert p.k == Fraction(3, 2)
    assert p.line().startswith("((2,2^3,")


def test_certificate_round_trip():
    rng = np.random.default_rng(0)
    F = hermitian_field(2)
    C = nearly_self_orthogonal(F, 6, 1, 1, "hermitian", rng)
    w, p = extend_hermitian(C)
    cert = json.loads(dumps_certificate(w, p))
    assert verify_certificate(cert)
    cert["params"]["k"] = p.k + 2
    assert not verify_certificate(cert)


def test_swap_with_dual():
    assert swap_with_dual_params(42, 21, 6) == (48, 6)
    F = hermitian_field(2)
    rng = np.random.default_rng(4)
    C = nearly_self_orthogonal(F, 7, 1, 2, "hermitian", rng)
    D = dual(C, "hermitian")
    e = C.k - hull(C, "hermitian").k
    _, p = extend_hermitian(D, compute_bounds=False)
    assert (p.n, p.k) == swap_with_dual_params(7, C.k, e)


def test_params_validation():
    with pytest.raises(ConstructionError):
        QuantumParams(5, 3, 2, 3, 3, "hermitian")   # Singleton violation
    with pytest.raises(ConstructionError):
        QuantumParams(5, 6, 2, 1, 1, "hermitian")
    with pytest.raises(ConstructionError):
        QuantumParams(5, 1, 2, 3, 2, "hermitian")
    p = QuantumParams(48, 6, 2, 9, 11, "hermitian")
    assert p.bounds_line() == "[[48,6]]_2, 9 <= d <= 11"
    assert QuantumParams.from_json(p.to_json()) == p


def test_propagation_qubit_example():
    p = P(22, 6, 6)
    out = {x.line() for x in propagate(p, 1)}
    assert "[[23,6,6]]_2" in out
    assert "[[22,5,6]]_2" in out
    assert "[[21,6,5]]_2" in out
    assert "[[21,7,5]]_2" not in out          # purity unknown: no shortening
    pure = {x.line() for x in propagation_step(P(22, 6, 6, pure=True))}
    assert "[[21,7,5]]_2" in pure


def test_propagation_edge_cases():
    assert propagation_step(P(1, 0, 1)) == []
    sub = {x.line() for x in propagation_step(P(5, 1, 3))}
    assert "[[5,0,3]]_2" not in sub
    assert propagate(P(5, 1, 3), 0) == set()


def test_dominance_pruning():
    a, b, c = P(10, 2, 4), P(10, 2, 3), P(10, 3, 3)
    assert dominates(a, b) and dominates(c, b)
    assert not dominates(a, c) and not dominates(c, a)
    assert not dominates(a, P(11, 1, 2))
    kept = prune_dominated([a, b, c])
    assert {x.line() for x in kept} == {a.line(), c.line()}
    assert prune_dominated([]) == []


def test_weight_budget_yields_bounds():
    rng = np.random.default_rng(2)
    F = hermitian_field(2)
    C = nearly_self_orthogonal(F, 30, 8, 2, "hermitian", rng)
    w, p = extend_hermitian(C, opts=WeightOptions(budget=100))
    assert check_extension(w)
    assert p.d_lower <= p.d_upper
    assert not gram(F, w.extended.G, w.extended.G, "hermitian").any()
