import random
from fractions import Fraction

import pytest

from realrooted.builder import BuildState, next_interval, pick_inside, sample_real_rooted, sample_state
from realrooted.enclosure import Interval, Status
from realrooted.exceptions import DegreeTooSmall
from realrooted.interlace import certify_all_real
from realrooted.poly import Polynomial, discriminant
from realrooted.sturm import all_real_rooted_sturm


def test_cubic_q_interval_from_p2():
    # P2 = x^2 + p/3 with p = -3 -> q in ]-2, 2[
    st = BuildState.start(Fraction(-1))
    iv = next_interval(st)
    L, H = iv.lo.refine_to(Fraction(1, 10**12)), iv.hi.refine_to(Fraction(1, 10**12))
    assert L.lo <= -2 <= L.hi and H.lo <= 2 <= H.hi


def test_quartic_interval_from_x3_minus_3x():
    st = BuildState.start(Fraction(-1)).push(0, None)
    assert st.poly == Polynomial([0, -3, 0, 1])
    iv = next_interval(st)
    assert iv.contains(0) is Status.BOUNDARY
    assert iv.contains(4) is Status.YES


def test_start_rejects_nonnegative():
    with pytest.raises(ValueError):
        BuildState.start(0)
    with pytest.raises(DegreeTooSmall):
        sample_real_rooted(1, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_samples_certify(n):
    for seed in range(6):
        P = sample_real_rooted(n, seed)
        assert P.degree == n and P.is_monic() and P.is_depressed()
        assert all_real_rooted_sturm(P)
        assert certify_all_real(P).all_real_distinct


def test_cubic_samples_have_positive_discriminant():
    for seed in range(20):
        assert discriminant(sample_real_rooted(3, seed)) > 0


def test_deterministic_in_seed():
    assert sample_real_rooted(5, 42) == sample_real_rooted(5, 42)
    assert sample_real_rooted(5, 42) != sample_real_rooted(5, 43)


def test_state_records_derivative_chain():
    st = sample_state(6, 3)
    assert st.check()
    assert len(st.history) == 5


def test_pick_inside_stays_in_middle():
    rng = random.Random(0)
    iv = Interval.of(Fraction(1), Fraction(2))
    for _ in range(50):
        c = pick_inside(iv, Fraction(1, 10), rng)
        assert Fraction(11, 10) <= c <= Fraction(19, 10)
    with pytest.raises(ValueError):
        pick_inside(iv, Fraction(3, 4), rng)
