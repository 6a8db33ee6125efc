import pytest

from huakit.catalog import field
from huakit.fields import mat_identity, mat_inv, mat_mul
from huakit.jordan import (CapExceeded, NotDivision, ParseError,
                           QuadraticJordan, SingularQ, check_axioms,
                           check_q_commutativity, division_witness,
                           dumps_jordan, field_jordan, is_division,
                           jordan_inverse, load_jordan, loads_jordan,
                           matrix_jordan, q_bilinear, save_jordan, v_operator)

ALL_Q = (2, 3, 4, 5, 7, 8, 9)


def axiom_flags(rep):
    return (rep["quadratic"], rep["unit"], rep["commutation"], rep["fundamental"])


# ---------------------------------------------------------------------------
# field algebras
# ---------------------------------------------------------------------------

def test_field_jordan_q2_is_square_multiplication():
    J = field_jordan(field(5))
    assert J.Q[2] == ((4,),)


def test_field_jordan_gf2_unit_operators():
    J = field_jordan(field(2))
    assert J.Q[1] == ((1,),)


def test_field_jordan_gf9_modulus_root():
    F = field(9)
    t = F.index_of((0, 1))
    J = field_jordan(F)
    assert J.Q[t] == ((F.mul(t, t),),)


def test_field_jordan_axioms_all_q():
    for q in ALL_Q:
        rep = check_axioms(field_jordan(field(q)))
        assert axiom_flags(rep) == (True, True, True, True), (q, rep)


def test_field_jordan_is_division():
    for q in (2, 5, 7):
        assert is_division(field_jordan(field(q)))


# ---------------------------------------------------------------------------
# the 2x2 matrix algebra: axioms pass, division fails
# ---------------------------------------------------------------------------

def test_matrix_jordan_unit_is_identity_operator():
    J = matrix_jordan(field(2))
    assert J.Q[J.e] == mat_identity(J.base, 4)


def test_matrix_jordan_axioms_gf2_exhaustive():
    rep = check_axioms(matrix_jordan(field(2)))
    assert axiom_flags(rep) == (True, True, True, True), rep


def test_matrix_jordan_axioms_gf3_exhaustive():
    rep = check_axioms(matrix_jordan(field(3)))
    assert axiom_flags(rep) == (True, True, True, True), rep


def test_matrix_jordan_not_division_with_rank_one_witness():
    J = matrix_jordan(field(2))
    assert not is_division(J)
    w = division_witness(J)
    assert w is not None
    # diag(1,0) is singular though nonzero
    diag10 = J.index_of((1, 0, 0, 0))
    assert mat_inv(J.base, J.Q[diag10]) is None


def test_matrix_jordan_inverse_is_matrix_inverse():
    # for invertible a, the algebra inverse a Q_a^-1 equals the 2x2 inverse
    F = field(3)
    J = matrix_jordan(F)

    def to_mat(idx):
        c = J.coords(idx)
        return ((c[0], c[1]), (c[2], c[3]))

    for a in J.nonzero():
        m = to_mat(a)
        minv = mat_inv(F, m)
        if minv is None:
            continue
        got = jordan_inverse(J, a)
        assert to_mat(got) == minv


def test_corrupted_table_fails_quadratic_with_witness():
    J = field_jordan(field(5))
    table = [list(map(list, m)) for m in J.Q]
    table[3] = [[0]]  # break Q_3
    bad = QuadraticJordan(J.base, 1, [tuple(map(tuple, m)) for m in table], J.e)
    rep = check_axioms(bad)
    assert not rep["quadratic"]
    assert rep["witnesses"]


def test_axiom_cap():
    with pytest.raises(CapExceeded):
        check_axioms(matrix_jordan(field(3)), cap=10)


# ---------------------------------------------------------------------------
# inverses and V-operators
# ---------------------------------------------------------------------------

def test_field_inverse_example():
    J = field_jordan(field(5))
    assert jordan_inverse(J, 2) == 3  # the field inverse


def test_inverse_of_unit():
    for q in (3, 4, 9):
        J = field_jordan(field(q))
        assert jordan_inverse(J, J.e) == J.e


def test_inverse_is_involution_exhaustive():
    for q in ALL_Q:
        J = field_jordan(field(q))
        for a in J.nonzero():
            assert jordan_inverse(J, jordan_inverse(J, a)) == a


def test_inverse_of_zero_rejected():
    with pytest.raises(SingularQ):
        jordan_inverse(field_jordan(field(5)), 0)


def test_singular_q_rejected():
    J = matrix_jordan(field(2))
    with pytest.raises(SingularQ):
        jordan_inverse(J, J.index_of((1, 0, 0, 0)))


def test_v_operator_field_is_2ab_multiplication():
    # c V_{a,b} = b Q_{a,c} = 2abc in the field model
    F = field(5)
    J = field_jordan(F)
    for a in J.elements():
        for b in J.elements():
            v = v_operator(J, a, b)
            coeff = F.mul(2, F.mul(a, b))
            assert v == ((coeff,),)


def test_v_operator_zero_slot():
    J = field_jordan(field(7))
    for b in J.elements():
        assert v_operator(J, 0, b) == ((0,),)


def test_v_operator_defining_property_matrix_case():
    F = field(2)
    J = matrix_jordan(F)
    for a in (3, 7, 11):
        for b in (1, 6, 9):
            v = v_operator(J, a, b)
            for c in J.elements():
                assert J.apply(c, v) == J.apply(b, q_bilinear(J, a, c))


def test_commutation_axiom_instance_gf5():
    F = field(5)
    J = field_jordan(F)
    for a in J.elements():
        for b in J.elements():
            qa = J.Q[a]
            lhs = mat_mul(F, qa, v_operator(J, a, b))
            rhs = mat_mul(F, v_operator(J, b, a), qa)
            assert lhs == rhs


# ---------------------------------------------------------------------------
# operator commutativity under the free-action hypothesis
# ---------------------------------------------------------------------------

def test_q_commutativity_gf5():
    rep = check_q_commutativity(field_jordan(field(5)))
    assert rep["zassenhaus"] and rep["hua_order"] == 2
    assert rep["commutes"] and rep["implication_holds"]


def test_q_commutativity_gf3_not_zassenhaus():
    rep = check_q_commutativity(field_jordan(field(3)))
    assert not rep["zassenhaus"] and rep["hua_order"] == 1
    assert rep["commutes"]


def test_q_commutativity_gf9():
    rep = check_q_commutativity(field_jordan(field(9)))
    assert rep["zassenhaus"] and rep["acts_freely"]
    assert rep["commutes"] and rep["implication_holds"]


def test_q_commutativity_needs_division():
    with pytest.raises(NotDivision):
        check_q_commutativity(matrix_jordan(field(2)))


def test_implication_never_falsified():
    for q in ALL_Q:
        rep = check_q_commutativity(field_jordan(field(q)))
        assert rep["implication_holds"], q


# ---------------------------------------------------------------------------
# ingest format
# ---------------------------------------------------------------------------

def test_dump_load_roundtrip(tmp_path):
    J = field_jordan(field(9))
    path = tmp_path / "gf9.qj"
    save_jordan(J, path)
    J2 = load_jordan(path)
    assert J2.base == J.base and J2.dim == J.dim
    assert J2.Q == J.Q and J2.e == J.e


def test_load_matrix_jordan_roundtrip():
    J = matrix_jordan(field(2))
    assert loads_jordan(dumps_jordan(J)).Q == J.Q


def test_loads_with_comments():
    text = "# field\n5 1\n0 1\n1\n1\n" + "\n".join(
        str((a * a) % 5) for a in range(5)) + "\n"
    J = loads_jordan(text)
    assert J.base.q == 5 and is_division(J)


def test_parse_error_reports_line_number():
    text = "5 1\n0 1\n1\n1\n0\n1\nbad line\n4\n4\n"
    with pytest.raises(ParseError) as err:
        loads_jordan(text)
    assert err.value.line == 7


def test_parse_error_missing_rows():
    with pytest.raises(ParseError):
        loads_jordan("5 1\n0 1\n1\n1\n0\n1\n")


def test_parse_error_bad_field():
    with pytest.raises(ParseError) as err:
        loads_jordan("4 1\n0 1\n1\n1\n")
    assert err.value.line is not None
