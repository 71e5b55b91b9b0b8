import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtx.galois import (FieldError, FieldTower, Poly, canonical_modulus, factor_constashift_poly,
                        field, hermitian_field, is_irreducible_poly, make_tower,
                        multiplicative_order, poly_divmod, poly_eval, poly_gcd, poly_mul,
                        root_of_unity, solve_norm, trace_to)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 256]
FIELDS = {q: field(q) for q in ORDERS}


def _brute_mul(F, a, b):
    """Schoolbook product of the level-1 digit polynomials, reduced by hand."""
    p, d, mod = F.p, F.degree, F.modulus
    da = [(a // p ** i) % p for i in range(d)]
    db = [(b // p ** i) % p for i in range(d)]
    c = [0] * (2 * d - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            c[i + j] = (c[i + j] + x * y) % p
    for k in range(len(c) - 1, d - 1, -1):
        f = c[k]
        for i in range(d + 1):
            c[k - d + i] = (c[k - d + i] - f * mod[i]) % p
    return sum(v * p ** i for i, v in enumerate(c[:d]))


elem = st.integers(min_value=0, max_value=10 ** 6)


@pytest.mark.parametrize("q", ORDERS)
@given(a=elem, b=elem, c=elem)
def test_field_axioms(q, a, b, c):
    F = FIELDS[q]
    a, b, c = a % q, b % q, c % q
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27, 64])
def test_mul_matches_schoolbook(q):
    F = FIELDS[q]
    rng = np.random.default_rng(q)
    for a, b in rng.integers(0, q, size=(200, 2)):
        assert F.mul(int(a), int(b)) == _brute_mul(F, int(a), int(b))


def test_vectorized_matches_scalar():
    F = field(16)
    rng = np.random.default_rng(1)
    A, B = F.random(rng, 50), F.random(rng, 50)
    prod = F.mul(A, B)
    assert [F.mul(int(a), int(b)) for a, b in zip(A, B)] == list(prod)


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_element(q):
    F = FIELDS[q]
    assert multiplicative_order(1, 1) == 1
    powers = {F.pow(F.prim, i) for i in range(q - 1)}
    assert powers == set(range(1, q))


def test_conway_presentations():
    assert field(4).modulus == (1, 1, 1)
    assert field(9).modulus == (2, 2, 1)        # w^2 = w + 1
    assert field(64).modulus == (1, 1, 0, 1, 1, 0, 1)


def test_extension_over_f4_uses_least_primitive():
    F4 = field(4)
    T = make_tower(2, [2, 3])
    assert T.top.order == 64 and T.level(1) == F4
    mod = canonical_modulus(F4, 3)
    assert is_irreducible_poly(F4, mod)
    assert T.top.modulus == mod


def test_hermitian_field_subfield_is_prefix():
    for q in (2, 3, 4, 5):
        F = hermitian_field(q)
        assert F.order == q * q
        sub = [x for x in range(F.order) if F.pow(x, q) == x]
        assert sub == list(range(q))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_solve_norm(q):
    F = hermitian_field(q)
    for c in range(1, q):
        beta = solve_norm(c, F)
        assert F.pow(beta, q + 1) == c
    with pytest.raises(FieldError):
        solve_norm(0, F)


def test_trace_is_linear_and_lands_in_subfield():
    F = field(16)
    rng = np.random.default_rng(2)
    for a, b in rng.integers(0, 16, size=(50, 2)):
        t = F.trace(int(a))
        assert t in (0, 1)
        assert F.trace(F.add(int(a), int(b))) == F.add(t, F.trace(int(b)))
        t4 = trace_to(F, int(a), 4)
        assert F.pow(t4, 4) == t4
    with pytest.raises(FieldError):
        trace_to(F, 1, 8)


def test_frobenius_is_automorphism():
    F = field(27)
    for a in range(27):
        for b in range(0, 27, 5):
            assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
            assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


def test_parse_and_fmt_round_trip():
    F = field(16)
    for a in range(16):
        assert F.parse(F.fmt(a)) == a
    assert F.parse("w^2") == F.mul(F.prim, F.prim)
    with pytest.raises(FieldError):
        F.parse("banana")


def test_tower_json_round_trip():
    T = make_tower(3, [1, 2, 2])
    back = FieldTower.from_json(T.to_json())
    assert back.top == T.top
    assert T.extended(3).top.order == 81 ** 3


@given(st.lists(st.integers(0, 8), min_size=1, max_size=6),
       st.lists(st.integers(0, 8), min_size=1, max_size=6))
def test_poly_division(a, b):
    F = FIELDS[9]
    if not any(b):
        return
    qt, r = poly_divmod(F, a, b)
    back = poly_mul(F, qt, b)
    lhs = [F.add(x, y) for x, y in zip(back + [0] * 10, r + [0] * 10)]
    assert lhs[:len(a)] == [int(x) for x in a]
    assert not any(lhs[len(a):])


def test_poly_gcd_and_eval():
    F = field(2)
    f = poly_mul(F, [1, 1], [1, 1, 0, 1])
    g = poly_mul(F, [1, 1], [1, 0, 1, 1])
    assert poly_gcd(F, f, g) == [1, 1]
    assert poly_eval(F, f, 1) == 0


def test_root_of_unity():
    T = make_tower(2, [2])
    ext, lvl, z = root_of_unity(7, T)
    assert lvl.order == 64
    assert lvl.pow(z, 7) == 1 and lvl.pow(z, 1) != 1
    with pytest.raises(FieldError):
        root_of_unity(4, T)


def test_x7_minus_1_over_f4():
    F = field(4)
    cls = factor_constashift_poly(7, 1, F, "conjugate_reciprocal")
    assert cls.s == 1 and cls.r == 1
    assert cls.singles[0].poly.coeffs == (1, 1)
    assert sorted([cls.pairs[0][0].poly.coeffs, cls.pairs[0][1].poly.coeffs]) == [
        (1, 0, 1, 1), (1, 1, 0, 1)]
    assert cls.product().coeffs == (1, 0, 0, 0, 0, 0, 0, 1)


@pytest.mark.parametrize("q,m,lam_exp,pairing", [
    (4, 21, 2, "conjugate_reciprocal"), (4, 7, 0, "conjugate_reciprocal"),
    (9, 5, 4, "conjugate_reciprocal"), (3, 8, 0, "reciprocal"), (5, 6, 2, "reciprocal"),
    (7, 9, 1, "none"), (8, 9, 3, "none")])
def test_factorization_product_and_pairing(q, m, lam_exp, pairing):
    F = field(q)
    lam = F.pow(F.prim, lam_exp)
    if pairing == "reciprocal":
        lam = F.pow(F.prim, (q - 1) // 2) if lam_exp else 1
    cls = factor_constashift_poly(m, lam, F, pairing)
    target = [F.neg(lam)] + [0] * (m - 1) + [1]
    assert list(cls.product().coeffs) == target
    assert sum(f.degree for f in cls.singles) + sum(
        h.degree + hp.degree for h, hp in cls.pairs) == m
    K = cls.ext
    for f in cls.singles:
        assert K.pow(f.root, m) == lam and poly_eval(K, f.poly.coeffs, f.root) == 0
    if pairing == "conjugate_reciprocal":
        qq = F.half_order
        for f in cls.singles:
            star = Poly(F, f.poly.reciprocal().coeffs).conjugate(qq)
            assert star.is_proportional(f.poly)
        for h, hp in cls.pairs:
            assert h.poly.reciprocal().conjugate(qq).is_proportional(hp.poly)


def test_factorization_rejects_bad_lambda():
    F = field(4)
    with pytest.raises(FieldError):
        factor_constashift_poly(7, F.prim, F, "reciprocal")
    with pytest.raises(FieldError):
        factor_constashift_poly(6, 1, F, "none")
