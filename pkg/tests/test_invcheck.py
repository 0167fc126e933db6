import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invmap.anf import parse_anf
from invmap.invcheck import (NO_BASE, UNMARKABLE, InvalidCertificateError,
                             InvertibilityCertificate, NotInvertibleError,
                             brute_force_invertible, check_theorem1,
                             invert_state, inverse_mapping, inverse_table,
                             validate_certificate)
from invmap.mapping import (apply, identity_mapping, permute_outputs,
                            shift_mapping)

from conftest import (DOUBLE_X0, FULL_PERIOD_B, INCREMENT, NOT_TRIANGULAR,
                      RELABELED_TFUNC, SHIFT_AND, TFUNC, mapping)
from generators import random_mapping, triangular_mapping
from oracles import is_bijective, successor


def test_shift_and_accepted_with_expected_order():
    out = check_theorem1(SHIFT_AND)
    assert out.accepted
    assert out.certificate.order == ((0, 1), (1, 2), (2, 3), (3, 0))


def test_non_triangular_example_rejected_but_bijective():
    out = check_theorem1(NOT_TRIANGULAR)
    assert not out.accepted
    assert out.certificate is None
    assert out.reason == UNMARKABLE
    assert out.unmarked == (0, 1, 2)
    assert is_bijective(NOT_TRIANGULAR)
    assert brute_force_invertible(NOT_TRIANGULAR).bijective


def test_duplicate_pivot_rejected():
    out = check_theorem1(DOUBLE_X0)
    assert not out.accepted
    assert not is_bijective(DOUBLE_X0)


def test_twenty_bit_representative_order():
    out = check_theorem1(FULL_PERIOD_B)
    assert out.accepted
    order = out.certificate.order
    # every other output is a plain shift, marked up front
    assert order[-2:] == ((15, 16), (19, 0))
    assert sorted(i for i, _ in order[:-2]) == [i for i in range(20) if i not in (15, 19)]


def test_no_base_function():
    out = check_theorem1(mapping("x0 ^ x1", "x1 ^ x0*x1"))
    assert not out.accepted
    assert out.reason == NO_BASE


def test_constant_base_with_complement():
    out = check_theorem1(mapping("x1 ^ 1", "x0 ^ x1"))
    assert out.accepted
    assert out.certificate.order == ((0, 1), (1, 0))


def test_complete_dependence_on_pivots_is_unmarkable():
    # f1 depends only on already used pivots: no new pivot available
    out = check_theorem1(mapping("x0", "x0 ^ 1"))
    assert not out.accepted


@pytest.mark.parametrize("m", [identity_mapping(4), shift_mapping(7), TFUNC, RELABELED_TFUNC, INCREMENT])
def test_accepts_simple_invertible(m):
    out = check_theorem1(m)
    assert out.accepted
    validate_certificate(m, out.certificate)


# certificates and inversion

def test_invert_state_examples():
    cert = check_theorem1(RELABELED_TFUNC).certificate
    assert invert_state(RELABELED_TFUNC, cert, 1) == 11
    cert = check_theorem1(INCREMENT).certificate
    assert invert_state(INCREMENT, cert, 0) == 15


@pytest.mark.parametrize("order,msg", [
    (((0, 1), (1, 2), (2, 3)), "entries"),
    (((0, 1), (0, 2), (2, 3), (3, 0)), "permutation"),
    (((0, 1), (1, 1), (2, 3), (3, 0)), "distinct"),
    (((0, 2), (1, 1), (2, 3), (3, 0)), "not free"),
    (((2, 3), (0, 1), (1, 2), (3, 0)), "not yet recovered"),
])
def test_invalid_certificates(order, msg):
    with pytest.raises(InvalidCertificateError, match=msg):
        invert_state(SHIFT_AND, InvertibilityCertificate(order), 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 9), st.randoms(use_true_random=False))
def test_accepted_certificates_invert_every_state(n, rnd):
    m = triangular_mapping(rnd, n)
    out = check_theorem1(m)
    assert out.accepted
    validate_certificate(m, out.certificate)
    for s in range(1 << n):
        assert invert_state(m, out.certificate, apply(m, s), validate=False) == s


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_checker_is_sound(n, rnd):
    m = random_mapping(rnd, n)
    if check_theorem1(m).accepted:
        assert is_bijective(m)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_verdict_ignores_output_order(n, rnd):
    m = random_mapping(rnd, n)
    order = list(range(n))
    rnd.shuffle(order)
    assert check_theorem1(permute_outputs(m, order)).accepted == check_theorem1(m).accepted


# oracle

@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.randoms(use_true_random=False))
def test_oracle_matches_set_count(n, rnd):
    m = random_mapping(rnd, n)
    report = brute_force_invertible(m)
    assert report.bijective == is_bijective(m)
    if not report.bijective:
        a, b = report.collision
        assert a != b
        assert successor(m, a) == successor(m, b)


def test_oracle_collision_for_duplicate_pivot():
    report = brute_force_invertible(DOUBLE_X0)
    assert not report
    a, b = report.collision
    assert apply(DOUBLE_X0, a) == apply(DOUBLE_X0, b)
    # (1, 3) is one of the two colliding pairs
    assert apply(DOUBLE_X0, 1) == apply(DOUBLE_X0, 3) == 3


def test_oracle_on_known_bijections():
    assert brute_force_invertible(SHIFT_AND)
    assert brute_force_invertible(NOT_TRIANGULAR)


def test_oracle_respects_cap():
    with pytest.raises(ValueError):
        brute_force_invertible(shift_mapping(8), cap=7)


# materialized inverse

def test_inverse_of_increment_is_decrement():
    inv = inverse_mapping(INCREMENT)
    assert inv.outputs[0] == parse_anf("x0 ^ 1", 4)
    for s in range(16):
        assert apply(inv, s) == (s - 1) % 16


@pytest.mark.parametrize("m", [identity_mapping(3), RELABELED_TFUNC, NOT_TRIANGULAR, SHIFT_AND])
def test_inverse_round_trip(m):
    inv = inverse_mapping(m)
    for s in range(1 << m.n):
        assert apply(inv, apply(m, s)) == s
        assert apply(m, apply(inv, s)) == s


def test_inverse_identity_is_identity():
    assert inverse_mapping(identity_mapping(3)) == identity_mapping(3)


def test_inverse_of_non_bijection_raises():
    with pytest.raises(NotInvertibleError):
        inverse_mapping(DOUBLE_X0)


def test_inverse_table_matches_certificate():
    rnd = random.Random(5)
    for _ in range(20):
        m = triangular_mapping(rnd, 7)
        cert = check_theorem1(m).certificate
        inv = inverse_table(m).tolist()
        assert all(invert_state(m, cert, y, validate=False) == inv[y] for y in range(128))
