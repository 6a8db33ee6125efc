import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from huakit.fields import (DegreeMismatch, DivisionByZero, DuplicateLambda,
                           ExponentOutOfRange, MixedFields,
                           NotPrime, ReducibleModulus, all_irreducibles,
                           default_modulus, frobenius, gauss_solve, make_field,
                           mat_identity, mat_inv, mat_mul, poly_is_irreducible,
                           vandermonde_eval, vandermonde_solve, vec_mat)

SMALL_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (3, 3)]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_prime_field_order():
    F = make_field(5)
    assert F.q == 5 and F.f == 1


def test_default_modulus_gf9_is_t2_plus_1():
    # the first monic irreducible of degree 2 over GF(3) in index order
    F = make_field(3, 2)
    assert F.q == 9
    assert F.modulus == (1, 0, 1)


def test_explicit_modulus_gf4():
    # x^2 + x + 1 has no root in GF(2): value 1 at both 0 and 1
    poly = (1, 1, 1)
    for x in (0, 1):
        assert (poly[0] + poly[1] * x + poly[2] * x * x) % 2 == 1
    F = make_field(2, 2, poly)
    assert F.q == 4


def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(NotPrime):
        make_field(1)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x+1)^2 over GF(2)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, (1, 0, 1))


def test_wrong_degree_modulus_rejected():
    with pytest.raises(DegreeMismatch):
        make_field(3, 2, (1, 1))          # degree 1, need 2
    with pytest.raises(DegreeMismatch):
        make_field(3, 2, (1, 0, 0, 1))    # degree 3


def test_modulus_choice_is_deterministic():
    assert default_modulus(3, 2) == (1, 0, 1)
    assert default_modulus(2, 2) == (1, 1, 1)
    assert make_field(3, 3).modulus == default_modulus(3, 3)


def test_irreducibility_oracle_degree2():
    # brute-force root check agrees with the trial-division test
    for p in (2, 3, 5):
        for c0 in range(p):
            for c1 in range(p):
                poly = (c0, c1, 1)
                has_root = any((c0 + c1 * x + x * x) % p == 0 for x in range(p))
                assert poly_is_irreducible(poly, p) == (not has_root)


def test_multiplicative_group_cyclic():
    for p, f in SMALL_Q:
        F = make_field(p, f)
        assert F.has_primitive_element()


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_inv_2_in_gf5():
    F = make_field(5)
    assert F.inv(2) == 3
    assert F.mul(2, 3) == 1


def test_fermat_pow_in_gf5():
    F = make_field(5)
    assert F.pow(2, 4) == 1


def test_gf9_t_squared_is_minus_one():
    F = make_field(3, 2)
    t = F.index_of((0, 1))
    minus_one = F.neg(1)
    assert F.mul(t, t) == minus_one == 2


def test_field_axioms_exhaustive():
    for p, f in SMALL_Q:
        F = make_field(p, f)
        q = F.q
        for a in range(q):
            assert F.add(a, 0) == a
            assert F.mul(a, 1) == a
            assert F.mul(a, 0) == 0
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in range(q):
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
                for c in range(q):
                    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_element_operators():
    F = make_field(3, 2)
    a, b = F.element(4), F.element(7)
    assert (a + b).index == F.add(4, 7)
    assert (a - b).index == F.sub(4, 7)
    assert (a * b).index == F.mul(4, 7)
    assert (a / b).index == F.div(4, 7)
    assert (-a).index == F.neg(4)
    assert (a ** 3).index == F.pow(4, 3)
    assert a.inverse().index == F.inv(4)


def test_division_by_zero():
    F = make_field(5)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F.element(2) / F.element(0)


def test_mixed_fields_rejected():
    F1, F2 = make_field(5), make_field(7)
    with pytest.raises(MixedFields):
        F1.element(1) + F2.element(1)


def test_descriptor_roundtrip():
    F = make_field(3, 2)
    d = F.descriptor()
    assert d == {"p": 3, "f": 2, "modulus": [1, 0, 1]}
    F2 = make_field(d["p"], d["f"], d["modulus"])
    assert F2 == F


# ---------------------------------------------------------------------------
# Frobenius automorphisms
# ---------------------------------------------------------------------------

def test_frobenius_identity():
    F = make_field(3, 2)
    assert frobenius(F, 0).fixed_points() == list(range(9))


def test_frobenius_gf9_fixes_exactly_gf3():
    # oracle: enumerate the fixed points of x -> x^3 over all nine elements
    F = make_field(3, 2)
    phi = frobenius(F, 1)
    fixed = [a for a in range(9) if F.pow(a, 3) == a]
    assert fixed == [0, 1, 2]
    assert phi.fixed_points() == fixed


def test_frobenius_gf4_involution():
    F = make_field(2, 2)
    phi = frobenius(F, 1)
    assert phi.order() == 2
    for a in range(4):
        assert phi(phi(a)) == a


def test_frobenius_is_homomorphism_exhaustive():
    for p, f in SMALL_Q:
        F = make_field(p, f)
        for k in range(f):
            phi = frobenius(F, k)
            for a in range(F.q):
                for b in range(F.q):
                    assert phi(F.add(a, b)) == F.add(phi(a), phi(b))
                    assert phi(F.mul(a, b)) == F.mul(phi(a), phi(b))


def test_frobenius_composition_adds_exponents():
    F = make_field(3, 3)
    assert frobenius(F, 1).compose(frobenius(F, 2)) == frobenius(F, 0)
    assert frobenius(F, 1).compose(frobenius(F, 1)) == frobenius(F, 2)


def test_frobenius_exponent_range():
    F = make_field(3, 2)
    with pytest.raises(ExponentOutOfRange):
        frobenius(F, 2)
    with pytest.raises(ExponentOutOfRange):
        frobenius(F, -1)


# ---------------------------------------------------------------------------
# Vandermonde recovery
# ---------------------------------------------------------------------------

def test_vandermonde_identity_system():
    F = make_field(5)
    assert vandermonde_solve(F, [1], [(3,)]) == [(3,)]


def test_vandermonde_2x2_frozen():
    # v1 + v2 = 3 and v1 + 2 v2 = 4 over GF(5) gives v = (2, 1)
    F = make_field(5)
    assert vandermonde_solve(F, [1, 2], [(3,), (4,)]) == [(2,), (1,)]


def test_vandermonde_roundtrip_all_lambda_tuples_gf5():
    # forward evaluation is the oracle; solve must invert it for every
    # tuple of distinct nodes, n <= 3
    F = make_field(5)
    vecs = [(2, 4), (1, 0), (3, 3)]
    for n in (1, 2, 3):
        for lams in itertools.permutations(range(5), n):
            sol = vecs[:n]
            w = vandermonde_eval(F, lams, sol)
            assert vandermonde_solve(F, lams, w) == sol


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=9, max_size=9),
       st.permutations(range(7)))
def test_vandermonde_roundtrip_random_gf7(flat, nodes):
    F = make_field(7)
    sol = [tuple(flat[i * 3:(i + 1) * 3]) for i in range(3)]
    lams = list(nodes)[:3]
    w = vandermonde_eval(F, lams, sol)
    assert vandermonde_solve(F, lams, w) == sol


def test_vandermonde_duplicate_lambda():
    F = make_field(5)
    with pytest.raises(DuplicateLambda):
        vandermonde_solve(F, [2, 2], [(1,), (2,)])


def test_vandermonde_shape_mismatch():
    F = make_field(5)
    with pytest.raises(DegreeMismatch):
        vandermonde_solve(F, [1, 2], [(1,)])
    with pytest.raises(DegreeMismatch):
        vandermonde_solve(F, [1, 2], [(1,), (2, 3)])


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def test_mat_inv_and_solve_gf7():
    F = make_field(7)
    m = ((2, 3), (1, 4))
    minv = mat_inv(F, m)
    assert mat_mul(F, m, minv) == mat_identity(F, 2)
    assert mat_mul(F, minv, m) == mat_identity(F, 2)


def test_mat_inv_singular_returns_none():
    F = make_field(5)
    assert mat_inv(F, ((1, 2), (2, 4))) is None


def test_gauss_solve_matches_forward():
    F = make_field(3, 2)
    a = ((1, 2), (3, 5))
    x = ((4, 0), (7, 2))
    b = mat_mul(F, a, x)
    assert gauss_solve(F, a, b) == x


def test_vec_mat_row_convention():
    F = make_field(5)
    m = ((1, 2), (3, 4))
    # (1,0) picks the first row, (0,1) the second
    assert vec_mat(F, (1, 0), m) == (1, 2)
    assert vec_mat(F, (0, 1), m) == (3, 4)


def test_all_irreducibles_count_gf2_deg3():
    # the two cubic irreducibles over GF(2)
    assert all_irreducibles(2, 3) == [(1, 1, 0, 1), (1, 0, 1, 1)]


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=26),
       st.integers(min_value=0, max_value=26))
def test_frobenius_freshman_dream_gf27(a, b):
    F = make_field(3, 3)
    assert F.pow(F.add(a, b), 3) == F.add(F.pow(a, 3), F.pow(b, 3))
