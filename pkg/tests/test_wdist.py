import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtx.codes import LinearCode, dual, hull
from qtx.galois import field
from qtx.qt import code_field, expand_generator_matrix, random_spec, shift_symmetry
from qtx.wdist import (BudgetExceeded, min_weight, min_weight_bz,
                       min_weight_enum, weight_bounds, weight_distribution_enum,
                       weight_enumerator_prefix)

from oracles import brute_min_weight, brute_weights


def random_code(rng, F, n, k):
    return LinearCode.from_rows(F, F.random(rng, (k, n)), n)


small = st.tuples(st.sampled_from([2, 3, 4]), st.integers(2, 9), st.integers(1, 5),
                  st.integers(0, 2 ** 32 - 1))


@given(small)
def test_bz_matches_brute_force(args):
    q, n, k, seed = args
    F = field(q)
    rng = np.random.default_rng(seed)
    C = random_code(rng, F, n, min(k, n))
    assert min_weight_bz(C).value == brute_min_weight(C)
    assert min_weight_enum(C) == brute_min_weight(C)


@given(small)
def test_excluded_subcode(args):
    q, n, k, seed = args
    F = field(q)
    rng = np.random.default_rng(seed)
    C = random_code(rng, F, n, min(k, n))
    B = LinearCode.from_rows(F, C.G[: C.k // 2], n)
    want = brute_min_weight(C, B)
    assert min_weight_bz(C, B).value == want
    assert min_weight_enum(C, B) == want


@given(st.tuples(st.sampled_from([2, 3]), st.integers(1, 5), st.integers(1, 6),
                 st.integers(0, 2 ** 32 - 1)))
def test_symplectic_metric(args):
    q, h, k, seed = args
    F = field(q)
    rng = np.random.default_rng(seed)
    C = random_code(rng, F, 2 * h, min(k, 2 * h))
    want = brute_min_weight(C, metric="symplectic")
    assert min_weight_bz(C, metric="symplectic").value == want
    assert min_weight(C, metric="symplectic") == want


def test_empty_difference_convention():
    F = field(2)
    C = LinearCode.from_rows(F, [[1, 1, 0, 0]])
    assert min_weight_enum(C, C) == 4
    assert min_weight_bz(C, C).value == 4
    assert min_weight(LinearCode.zero(F, 5)) == 5


def test_repetition_and_hamming():
    F = field(2)
    assert min_weight(LinearCode.from_rows(F, [[1] * 9])) == 9
    H = LinearCode.from_rows(F, [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1],
                                 [0, 0, 0, 1, 1, 1, 1]])
    assert min_weight(dual(H)) == 3
    assert min_weight(H) == 4


def test_threshold_stops_early():
    F = field(2)
    rng = np.random.default_rng(5)
    C = random_code(rng, F, 24, 8)
    d = min_weight(C)
    r = min_weight_bz(C, threshold=d - 1)
    assert r.lower > d - 1 or r.value == d


def test_budget_gives_bounds():
    F = field(2)
    rng = np.random.default_rng(7)
    C = random_code(rng, F, 60, 30)
    r = min_weight_bz(C, budget=50)
    assert not r.exact
    assert r.lower <= r.upper
    lo, hi = weight_bounds(C, budget=50)
    assert lo <= min_weight(C) <= hi
    with pytest.raises(BudgetExceeded):
        min_weight(C, budget=50)


def test_oracle_budget():
    F = field(4)
    C = random_code(np.random.default_rng(1), F, 30, 20)
    with pytest.raises(BudgetExceeded):
        min_weight_enum(C, budget_bits=20)


@pytest.mark.parametrize("q,m,ell,lam_exp", [(4, 7, 3, 0), (4, 5, 2, 1), (9, 4, 2, 2)])
def test_shift_symmetry_preserves_distance(q, m, ell, lam_exp):
    F = code_field(q, "hermitian")
    lam = F.pow(F.prim, lam_exp)
    rng = np.random.default_rng(q + m)
    for _ in range(5):
        spec = random_spec(rng, F, m, ell, lam, "hermitian", 1)
        C = expand_generator_matrix(spec)
        sym = shift_symmetry(spec)
        assert np.all(C.contains(sym.apply(F, C.G)))
        assert min_weight_bz(C, symmetry=sym).value == min_weight_bz(C).value


@pytest.mark.parametrize("q", [2, 3, 4])
def test_prefix_matches_distribution(q):
    F = field(q)
    rng = np.random.default_rng(q)
    C = random_code(rng, F, 11, 5)
    dist = weight_distribution_enum(C)
    assert sum(dist) == q ** 5
    w, _ = brute_weights(C)
    assert dist[1:] == list(np.bincount(w, minlength=12)[1:])
    assert weight_enumerator_prefix(C, 6) == dist[:7]


def test_prefix_accelerated_path():
    F = field(2)
    rng = np.random.default_rng(3)
    C = random_code(rng, F, 30, 22)
    full = weight_distribution_enum(C)
    assert weight_enumerator_prefix(C, 6) == full[:7]
    B = hull(C)
    assert weight_enumerator_prefix(C, 6, exclude=B) == weight_distribution_enum(C, B)[:7]
