import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invmap.invcheck import brute_force_invertible
from invmap.mapping import (apply, conjugate, identity_mapping, relabel,
                            shift_mapping)
from invmap.stg import brent, cycle_structure, fixed_points, period_from

from conftest import (FULL_PERIOD_A, INCREMENT, RELABELED_TFUNC, TFUNC,
                      mapping)
from generators import free_form_mapping, random_mapping
from oracles import orbit_period


def test_relabeled_tfunc_cycles():
    report = cycle_structure(RELABELED_TFUNC)
    assert report.cycles == ((1, 0), (15, 1))
    assert not report.tails_present
    assert report.total_states_covered == 16


def test_identity_cycles():
    report = cycle_structure(identity_mapping(2))
    assert report.cycles == ((1, 0), (1, 1), (1, 2), (1, 3))


def test_tfunc_cycles_keep_low_bits():
    report = cycle_structure(TFUNC)
    assert len(report.cycles) >= 4
    assert report.length_counts() == {1: 8, 2: 4}
    for length, rep in report.cycles:
        s = rep
        for _ in range(length):
            s = apply(TFUNC, s)
            assert s & 0b11 == rep & 0b11


def test_fixed_points():
    assert fixed_points(RELABELED_TFUNC) == [0]
    assert fixed_points(identity_mapping(2)) == [0, 1, 2, 3]
    assert fixed_points(INCREMENT) == []


def test_tails_for_non_bijection():
    report = cycle_structure(mapping("x0", "x0"))
    # 0 and 3 are fixed; 1 -> 3 and 2 -> 0 are tails
    assert report.cycles == ((1, 0), (1, 3))
    assert report.tail_states == 2
    assert report.tails_present


def test_period_examples():
    assert period_from(RELABELED_TFUNC, 1) == (0, 15)
    assert period_from(RELABELED_TFUNC, 0) == (0, 1)
    assert period_from(identity_mapping(3), 5) == (0, 1)
    assert period_from(mapping("x0", "x0"), 1) == (1, 1)


def test_period_seed_validation():
    with pytest.raises(ValueError):
        period_from(RELABELED_TFUNC, 16)


def test_brent_on_rho():
    # 0 -> 1 -> 2 -> 3 -> 4 -> 2
    nxt = [1, 2, 3, 4, 2]
    assert brent(nxt.__getitem__, 0) == (2, 3)


def test_large_width_uses_compiled_stepper():
    m = shift_mapping(40)
    assert period_from(m, 1) == (0, 40)
    assert period_from(m, (1 << 40) - 1) == (0, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_conservation_and_coherence(n, rnd):
    m = random_mapping(rnd, n) if n > 1 else free_form_mapping(rnd, n)
    report = cycle_structure(m)
    assert report.total_states_covered == 1 << n
    assert brute_force_invertible(m).bijective == (not report.tails_present)
    for length, rep in report.cycles:
        assert orbit_period(m, rep) == (0, length)


def test_period_agrees_with_cycles_exhaustively():
    rnd = random.Random(11)
    for n in range(1, 13):
        for _ in range(3 if n < 10 else 1):
            m = random_mapping(rnd, n) if n > 1 else free_form_mapping(rnd, n)
            report = cycle_structure(m)
            on_cycle = {}
            nxt = [m(s) for s in range(1 << n)]
            for length, rep in report.cycles:
                s = rep
                for _ in range(length):
                    on_cycle[s] = length
                    s = nxt[s]
            for s in range(1 << n):
                tail, cyc = period_from(m, s)
                t = s
                for _ in range(tail):
                    t = nxt[t]
                assert on_cycle.get(t) == cyc
                assert tail == 0 or s not in on_cycle


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_conjugation_preserves_cycle_lengths(n, rnd):
    m = random_mapping(rnd, n)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert cycle_structure(conjugate(m, perm)).length_counts() == cycle_structure(m).length_counts()


def test_relabel_can_change_cycle_lengths():
    before = cycle_structure(TFUNC).length_counts()
    after = cycle_structure(relabel(TFUNC, [1, 2, 3, 0])).length_counts()
    assert before != after
    assert after == {1: 1, 15: 1}


def test_report_serialization():
    d = cycle_structure(RELABELED_TFUNC).to_dict()
    assert d == {
        "n": 4,
        "cycles": [{"length": 1, "representative": 0}, {"length": 15, "representative": 1}],
        "length_counts": {"1": 1, "15": 1},
        "tail_states": 0,
        "tails_present": False,
    }


def test_full_period_twenty_bits_fast():
    assert period_from(FULL_PERIOD_A, 1) == (0, 2**20 - 1)
