import pytest

from huakit.catalog import (dickson_nearfield, dickson_with_sigma, field,
                            field_as_nearfield, field_nearfield_with_sigma)
from huakit.mset import check_moufang_criterion, is_special, little_projective_group
from huakit.nearfield import (Coupling, CouplingNotInversionSymmetric,
                              KTAutomorphism, Nearfield, NotACoupling, NotKT,
                              ParseError, ZeroArgument, affine_group, center,
                              check_hua_pseudosquare, check_kt, dickson,
                              dickson_from_descriptor, dumps_nearfield_table,
                              identity_sigma, k_sigma_report, kernel,
                              kt_moufang, loads_nearfield_table, make_kt_sigma,
                              nearfield_axiom_witness, pseudo_square,
                              quadratic_character_coupling, t3_group)
from huakit.perm import (element_order_multiset, is_normal, point_stabilizer,
                         transitivity_report)


def brute_nearfield_inverse(N, a):
    return next(u for u in N.units()
                if N.mul(a, u) == 1 and N.mul(u, a) == 1)


# ---------------------------------------------------------------------------
# couplings
# ---------------------------------------------------------------------------

def test_trivial_coupling_gives_the_field():
    N = field_as_nearfield(5)
    assert N.is_field_multiplication()


def test_quadratic_character_coupling_is_valid():
    for q in (9, 25):
        phi = quadratic_character_coupling(field(q))
        assert phi.violation() is None
        assert phi.inversion_symmetric()


def test_constant_one_coupling_on_gf4_rejected():
    # phi == 1 fails the composition identity (1 + 1 = 0 mod 2)
    F = field(4)
    phi = Coupling(F, [1, 1, 1])
    assert phi.violation() is not None
    with pytest.raises(NotACoupling):
        dickson(F, phi)


def test_coupling_needs_even_degree():
    from huakit.nearfield import NearfieldError
    with pytest.raises(NearfieldError):
        quadratic_character_coupling(field(5))


# ---------------------------------------------------------------------------
# Dickson construction
# ---------------------------------------------------------------------------

def test_dickson_9_axioms():
    assert nearfield_axiom_witness(dickson_nearfield(9)) is None


def test_dickson_25_axioms():
    assert nearfield_axiom_witness(dickson_nearfield(25)) is None


def test_dickson_differs_from_field_exactly_on_twisted_columns():
    N = dickson_nearfield(9)
    F = N.field
    for b in N.units():
        col_matches = all(N.mul(a, b) == F.mul(a, b) for a in N.elements())
        assert col_matches == (N.phi(b) == 0)
        assert (N.phi(b) == 0) == F.is_square(b)


def test_additive_group_is_abelian():
    N = dickson_nearfield(9)
    for a in N.elements():
        for b in N.elements():
            assert N.add(a, b) == N.add(b, a)


def test_multiplicative_inverse_table():
    N = dickson_nearfield(9)
    for a in N.units():
        assert N.minv(a) == brute_nearfield_inverse(N, a)
    with pytest.raises(ZeroArgument):
        N.minv(0)


# ---------------------------------------------------------------------------
# kernel and centre
# ---------------------------------------------------------------------------

def test_kernel_of_field_is_everything():
    N = field_as_nearfield(5)
    assert kernel(N) == list(range(5))


def test_kernel_of_dickson9_is_prime_field():
    assert kernel(dickson_nearfield(9)) == [0, 1, 2]


def test_kernel_of_dickson25_is_prime_field():
    assert kernel(dickson_nearfield(25)) == [0, 1, 2, 3, 4]


def test_center_of_field_is_everything():
    assert center(field_as_nearfield(7)) == list(range(7))


def test_center_of_dickson9():
    N = dickson_nearfield(9)
    c = center(N)
    assert 0 in c and 1 in c and N.neg(1) in c
    assert set(c) <= set(kernel(N))


def test_center_inside_kernel_always():
    for build in (field_as_nearfield, dickson_nearfield):
        for q in (9,):
            N = build(q)
            assert set(center(N)) <= set(kernel(N))


# ---------------------------------------------------------------------------
# the involutory automorphism
# ---------------------------------------------------------------------------

def test_make_sigma_field_case():
    N, sigma = field_nearfield_with_sigma(5)
    F = N.field
    for a in N.units():
        assert sigma(a) == F.inv(a)
    assert check_kt(N, sigma)["is_kt"]


def test_make_sigma_dickson9():
    N, sigma = dickson_with_sigma(9)
    assert sigma.is_involution()
    assert sigma.automorphism_witness() is None
    rep = check_kt(N, sigma)
    assert rep["is_kt"]
    # exactly 7 admissible arguments: the units minus -1
    admissible = [a for a in N.units() if a != N.neg(1)]
    assert len(admissible) == 7


def test_sigma_rejected_for_asymmetric_coupling():
    # inject a phi table that is not inversion-symmetric; the guard must
    # fire before anything else is attempted
    F = field(9)
    N = dickson_nearfield(9)
    asym = Coupling(F, [0] * (F.q - 1))
    g = min(a for a in F.units() if F.multiplicative_order(a) == 8)
    exps = list(asym.exps[1:])
    exps[g - 1] = 1          # phi(g) = 1 but phi(g^-1) stays 0
    injected = Nearfield(F, N.table, phi=Coupling(F, exps), check=False)
    assert not injected.phi.inversion_symmetric()
    with pytest.raises(CouplingNotInversionSymmetric):
        make_kt_sigma(injected)


def test_identity_sigma_fails_kt_with_witness():
    N = field_as_nearfield(5)
    sigma = identity_sigma(N)
    assert sigma.is_involution() and sigma.automorphism_witness() is None
    rep = check_kt(N, sigma)
    assert not rep["is_kt"]
    a = rep["witness"]
    # direct evaluation of the two sides at the witness
    lhs = sigma(N.add(1, sigma(a)))
    rhs = N.sub(1, sigma(N.add(1, a)))
    assert lhs != rhs
    assert rep["witness"] == 1  # already fails at a = 1: 2 != 1 - 2


def test_non_involution_rejected():
    from huakit.nearfield import NotInvolution
    N = field_as_nearfield(7)
    # x -> 3x on the units is multiplicative nowhere near involutory
    images = [0] + [N.field.mul(3, a) for a in N.units()]
    sigma = KTAutomorphism(N, images)
    with pytest.raises(NotInvolution):
        check_kt(N, sigma)


def test_non_automorphism_rejected():
    from huakit.nearfield import NotMultiplicativeAutomorphism
    N = field_as_nearfield(5)
    # swapping 1 and 2 is involutory but cannot be multiplicative
    sigma = KTAutomorphism(N, [0, 2, 1, 3, 4])
    assert sigma.is_involution()
    with pytest.raises(NotMultiplicativeAutomorphism):
        check_kt(N, sigma)


# ---------------------------------------------------------------------------
# pseudo-squares
# ---------------------------------------------------------------------------

def test_pseudo_square_field_case_is_square():
    N, sigma = field_nearfield_with_sigma(5)
    assert pseudo_square(N, sigma, 2) == 4
    for a in N.units():
        assert pseudo_square(N, sigma, a) == N.field.mul(a, a)


def test_pseudo_square_of_one():
    for q in (5, 9):
        N, sigma = (dickson_with_sigma(q) if q == 9
                    else field_nearfield_with_sigma(q))
        assert pseudo_square(N, sigma, 1) == 1


def test_pseudo_square_dickson9_matches_brute_force():
    # oracle: the inverse of sigma(a) found by table scan, then the twisted
    # product; on this instance q_a comes out as the base-field square
    N, sigma = dickson_with_sigma(9)
    F = N.field
    for a in N.units():
        expected = N.mul(brute_nearfield_inverse(N, sigma(a)), a)
        got = pseudo_square(N, sigma, a)
        assert got == expected
        assert got == F.mul(a, a)


def test_pseudo_square_zero_rejected():
    N, sigma = dickson_with_sigma(9)
    with pytest.raises(ZeroArgument):
        pseudo_square(N, sigma, 0)


# ---------------------------------------------------------------------------
# affine and sharply 3-transitive groups
# ---------------------------------------------------------------------------

def test_affine_group_sharply_2_transitive():
    for q in (5, 9):
        N = dickson_nearfield(q) if q == 9 else field_as_nearfield(q)
        A = affine_group(N)
        assert A.order == q * (q - 1)
        assert transitivity_report(A)["sharp_at"] == [2]


def test_t3_field_gf3_has_order_24():
    N, sigma = field_nearfield_with_sigma(3)
    assert t3_group(N, sigma).order == 24


def test_t3_field_gf5_has_order_120():
    N, sigma = field_nearfield_with_sigma(5)
    G = t3_group(N, sigma)
    assert G.order == 120
    assert transitivity_report(G)["sharp_at"] == [3]


def test_t3_dickson9_is_mathieu_like():
    N, sigma = dickson_with_sigma(9)
    G = t3_group(N, sigma)
    assert G.order == 720
    assert transitivity_report(G) == {"k_transitive": 3, "sharp_at": [3]}
    orders = element_order_multiset(G)
    assert orders[10] == 0 and 10 not in orders
    assert set(orders) == {1, 2, 3, 4, 5, 8}


def test_t3_stabilizer_of_infinity_is_affine():
    N, sigma = dickson_with_sigma(9)
    G = t3_group(N, sigma)
    stab = point_stabilizer(G, [9])
    aff = affine_group(N)
    assert {t[:9] for t in stab.elements} == aff.elements


def test_t3_two_point_stabilizer_is_unit_group():
    N, sigma = dickson_with_sigma(9)
    G = t3_group(N, sigma)
    stab = point_stabilizer(G, [9, 0])
    assert stab.order == 8
    expected = {tuple(N.mul(x, a) for x in range(9)) + (9,) for a in N.units()}
    assert stab.elements == expected


def test_t3_requires_kt():
    N = field_as_nearfield(5)
    with pytest.raises(NotKT):
        t3_group(N, identity_sigma(N))


# ---------------------------------------------------------------------------
# the Hua / pseudo-square formula and the Moufang side
# ---------------------------------------------------------------------------

def test_hua_pseudosquare_field_case():
    N, sigma = field_nearfield_with_sigma(5)
    assert check_hua_pseudosquare(N, sigma)["ok"]


def test_hua_pseudosquare_dickson9_all_pairs():
    N, sigma = dickson_with_sigma(9)
    rep = check_hua_pseudosquare(N, sigma)
    assert rep == {"ok": True, "witness": None}
    M = kt_moufang(N, sigma)
    for a in N.units():
        qa = pseudo_square(N, sigma, a)
        for x in N.elements():
            assert M.hua[a][x] == N.mul(x, qa)
    assert M.hua[1][0] == 0


def test_kt_moufang_special_and_normal_in_t3():
    for q, builder in ((5, field_nearfield_with_sigma), (9, dickson_with_sigma)):
        N, sigma = builder(q)
        M = kt_moufang(N, sigma)
        assert check_moufang_criterion(M)["is_moufang"]
        assert is_special(M)
        G = t3_group(N, sigma)
        Gd = little_projective_group(M)
        assert is_normal(G, Gd)


def test_center_of_t3_two_point_stabilizer_lands_in_centroid():
    from huakit.mset import check_center_in_centroid
    N, sigma = dickson_with_sigma(9)
    M = kt_moufang(N, sigma)
    assert check_center_in_centroid(M, t3_group(N, sigma))


def test_moufang_recovered_from_t3_matches_kt_construction():
    from huakit.mset import _alpha, from_2transitive
    from huakit.perm import PermGroup, Permutation
    N, sigma = dickson_with_sigma(9)
    M = kt_moufang(N, sigma)
    G = t3_group(N, sigma)
    trans = {tuple(_alpha(M.U, a)) for a in M.U.elements()}
    Uy = PermGroup(G.degree, [Permutation(t) for t in sorted(trans)],
                   elements=trans)
    M2 = from_2transitive(G, M.infinity, Uy)
    assert M2.hua == M.hua
    assert is_normal(G, M2.recovered_group)


def test_char2_kt_instance_gf4():
    # -1 = 1, so the identity's domain drops a = 1; everything else runs
    N, sigma = field_nearfield_with_sigma(4)
    rep = check_kt(N, sigma)
    assert rep["is_kt"]
    admissible = [a for a in N.units() if a != N.neg(1)]
    assert len(admissible) == 2
    G = t3_group(N, sigma)
    assert G.order == 60
    assert transitivity_report(G)["sharp_at"] == [3]
    assert check_hua_pseudosquare(N, sigma)["ok"]


# ---------------------------------------------------------------------------
# the sigma-symmetric kernel part
# ---------------------------------------------------------------------------

def test_k_sigma_field_case_everything_true():
    N, sigma = field_nearfield_with_sigma(5)
    rep = k_sigma_report(N, sigma)
    assert rep["set"] == list(range(5))
    assert rep["is_commutative_subfield"]
    assert rep["squares_central"]
    assert rep["sigma_is_inversion_on_it"]
    assert rep["equals_kernel_when_odd_char"]


def test_k_sigma_dickson9_equals_kernel():
    N, sigma = dickson_with_sigma(9)
    rep = k_sigma_report(N, sigma)
    assert rep["set"] == [0, 1, 2] == rep["kernel"]
    assert all(rep[key] for key in
               ("is_commutative_subfield", "squares_central",
                "sigma_is_inversion_on_it", "equals_kernel_when_odd_char"))


def test_k_sigma_dickson25_equals_kernel():
    N, sigma = dickson_with_sigma(25)
    rep = k_sigma_report(N, sigma)
    assert rep["set"] == rep["kernel"] == [0, 1, 2, 3, 4]
    assert all(rep[key] for key in
               ("is_commutative_subfield", "squares_central",
                "sigma_is_inversion_on_it", "equals_kernel_when_odd_char"))


def test_k_sigma_squares_land_in_center():
    N, sigma = dickson_with_sigma(9)
    rep = k_sigma_report(N, sigma)
    cen = set(center(N))
    for x in rep["set"]:
        if x:
            assert N.mul(x, x) in cen


# ---------------------------------------------------------------------------
# ingest formats
# ---------------------------------------------------------------------------

def test_table_roundtrip():
    N = dickson_nearfield(9)
    N2 = loads_nearfield_table(dumps_nearfield_table(N))
    assert N2.table == N.table
    assert N2.field == N.field


def test_table_loader_rejects_bad_rows():
    text = "3 2\n" + "\n".join(" ".join("0" for _ in range(9))
                               for _ in range(9))
    with pytest.raises(ParseError):  # zero table is no nearfield
        loads_nearfield_table(text)


def test_table_loader_reports_line_numbers():
    N = dickson_nearfield(9)
    lines = dumps_nearfield_table(N).splitlines()
    lines[4] = "not numbers"
    with pytest.raises(ParseError) as err:
        loads_nearfield_table("\n".join(lines))
    assert err.value.line == 5


def test_table_loader_wrong_row_length():
    N = dickson_nearfield(9)
    lines = dumps_nearfield_table(N).splitlines()
    lines[3] = "0 1 2"
    with pytest.raises(ParseError) as err:
        loads_nearfield_table("\n".join(lines))
    assert err.value.line == 4


def test_dickson_descriptor_roundtrip():
    N = dickson_nearfield(9)
    desc = N.descriptor()
    N2 = dickson_from_descriptor(desc)
    assert N2.table == N.table


def test_dickson_descriptor_json_string():
    import json
    N = dickson_nearfield(9)
    N2 = dickson_from_descriptor(json.dumps(N.descriptor()))
    assert N2.table == N.table


def test_descriptor_missing_keys():
    with pytest.raises(ParseError):
        dickson_from_descriptor({"p": 3})
