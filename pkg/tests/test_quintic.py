import math
import random
from fractions import Fraction

import pytest
import sympy

from realrooted.enclosure import Status
from realrooted.exceptions import HypothesisFailed, NegativeDelta2, OutOfRange, PreconditionFailed
from realrooted.interlace import Verdict, certify_all_real
from realrooted.params import QuarticParams, QuinticParams
from realrooted.poly import Polynomial, discriminant, gcd, derivative, squarefree_decomposition
from realrooted.quintic import (
    RangeCase,
    admissible_s_interval,
    assemble,
    degenerate_consecutive,
    degenerate_separated,
    disassemble,
    family_q_squared,
    family_s,
    hypothesis_check,
    range_case,
    quartic_conditions,
    quartic_trig_bounds,
    sublevel_interval_direct,
    sublevel_s_interval_via_R2roots,
    sublevel_witness,
    t1_remainder,
    triple_double_point,
    triple_point_closed_form,
)
from realrooted.sturm import all_real_rooted_sturm, count_real_roots

from .conftest import to_sympy

F = Fraction


def _mults(P):
    return sorted((k for f, k in squarefree_decomposition(P) for _ in range(f.degree)), reverse=True)


# -- quartic helpers ---------------------------------------------------------------


def test_quartic_conditions_examples():
    assert quartic_conditions(QuarticParams(-2, 0, F(1, 4))).holds
    rep = quartic_conditions(QuarticParams(-2, 0, 1))
    assert rep.verdict is Status.BOUNDARY
    assert not quartic_conditions(QuarticParams(1, 0, 0)).holds
    # at q = 0 the interval for r is ]0, p^2/4[
    assert not quartic_conditions(QuarticParams(-2, 0, F(-1, 6))).holds
    assert quartic_conditions(QuarticParams(-2, 0, 0)).verdict is Status.BOUNDARY


def test_quartic_conditions_match_root_count():
    rng = random.Random(21)
    for _ in range(300):
        p = -F(rng.randint(1, 200), 10)
        q = F(rng.randint(-100, 100), 100) * p * p / 4
        r = F(rng.randint(-100, 100), 100) * p * p / 3
        qp = QuarticParams(p, q, r)
        P = qp.assemble()
        want = count_real_roots(P) == 4 and _mults(P) == [1, 1, 1, 1]
        assert quartic_conditions(qp).holds == want


def test_trig_bounds_cross_check():
    rng = random.Random(4)
    for _ in range(50):
        p = -F(rng.randint(1, 90), 7)
        lim = math.sqrt(float(-4 * p**3 / 27))
        q = F(rng.uniform(-0.99, 0.99) * lim).limit_denominator(1000)
        rep = quartic_conditions(QuarticParams(p, q, 0))
        iv = rep.details["r_interval"]
        lo, hi = quartic_trig_bounds(p, q)
        assert math.isclose(float(iv.lo), lo, rel_tol=1e-9, abs_tol=1e-9)
        assert math.isclose(float(iv.hi), hi, rel_tol=1e-9, abs_tol=1e-9)


def test_assemble_golden():
    P = assemble(QuinticParams(F(-9, 2), 1, 3, F(-18, 5)))
    assert P == Polynomial([-72, 60, 10, -15, 0, 1])
    assert P == Polynomial.from_roots([2, -3], [3, 2])
    assert assemble(QuinticParams(0, 0, 0, 0)) == Polynomial([0, 0, 0, 0, 0, 1])


def test_assemble_round_trip():
    rng = random.Random(2)
    for _ in range(50):
        params = QuinticParams(*(F(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(4)))
        assert disassemble(assemble(params)) == params


# -- hypothesis and admissible s --------------------------------------------------


def test_range_cases():
    p = F(-6)
    assert range_case(p, 3) is RangeCase.LOW
    assert range_case(p, 4) is RangeCase.MIDDLE
    assert range_case(p, 5) is RangeCase.UPPER
    assert range_case(p, F(16, 3)) is RangeCase.UPPER
    assert range_case(p, 6) is RangeCase.EXCLUDED


def test_hypothesis_low_and_excluded():
    assert hypothesis_check(QuarticParams(-3, 0, F(1, 2))).holds is Status.YES
    rep = hypothesis_check(QuarticParams(-3, 0, 2))
    assert rep.holds is Status.NO and rep.agree
    with pytest.raises(HypothesisFailed):
        admissible_s_interval(QuarticParams(-3, 0, 2))


def _random_quartic(rng):
    while True:
        p = -F(rng.randint(1, 120), 8)
        q = F(rng.randint(-100, 100), 100) * F(math.sqrt(float(-4 * p**3 / 27))).limit_denominator(100)
        r = F(rng.randint(-50, 130), 500) * p * p
        qp = QuarticParams(p, q, r)
        if quartic_conditions(qp).holds:
            return qp


def test_routes_agree_and_midpoint_is_real_rooted():
    rng = random.Random(17)
    seen = 0
    for _ in range(150):
        qp = _random_quartic(rng)
        rep = hypothesis_check(qp)
        assert rep.agree
        if rep.holds is not Status.YES:
            continue
        seen += 1
        iv = admissible_s_interval(qp)
        L, H = iv.interior(F(1, 8))
        s = (L + H) / 2
        P = QuinticParams(qp.p, qp.q, qp.r, s).assemble()
        assert all_real_rooted_sturm(P)
        # nested in the interval where R3 alone is real-rooted
        sub = sublevel_s_interval_via_R2roots(qp)
        assert sub.lo.lo <= iv.lo.hi and iv.hi.lo <= sub.hi.hi
    assert seen > 20


def test_boundary_quartic_is_rejected_with_status():
    with pytest.raises(PreconditionFailed) as info:
        admissible_s_interval(QuarticParams(-3, 0, 0))
    assert info.value.status is Status.BOUNDARY


def test_sublevel_closed_form_matches_direct():
    for args in [(-3, 1, 1), (-5, F(1, 3), F(1, 2)), (F(-7, 2), -2, 1)]:
        qp = QuarticParams(*args)
        a = sublevel_s_interval_via_R2roots(qp)
        b = sublevel_interval_direct(qp)
        for x, y in ((a.lo, b.lo), (a.hi, b.hi)):
            x, y = x.refine_to(F(1, 10**20)), y.refine_to(F(1, 10**20))
            assert abs(x.midpoint() - y.midpoint()) < F(1, 10**15)


def test_sublevel_errors():
    with pytest.raises(NegativeDelta2):
        sublevel_s_interval_via_R2roots(QuarticParams(-3, 0, 0))
    with pytest.raises(NegativeDelta2):
        sublevel_s_interval_via_R2roots(QuarticParams(-3, 1, -1))
    with pytest.raises(PreconditionFailed):
        sublevel_s_interval_via_R2roots(QuarticParams(1, 1, 1))


def test_t1_and_witness():
    p, q, r, s = F(-3), F(1), F(1), F(1, 7)
    params = QuinticParams(p, q, r, s)
    T1 = t1_remainder(params)
    assert T1 == Polynomial([20 * s - 8 * q * r / p, 2 * (16 * p * r - 9 * q**2) / (3 * p)])
    w = sublevel_witness(params)
    assert T1(w) == 0


def test_witness_decides_three_real_roots():
    rng = random.Random(6)
    for _ in range(200):
        p = -F(rng.randint(1, 50), 5)
        q, r, s = (F(rng.randint(-40, 40), 7) for _ in range(3))
        if 9 * q**2 - 16 * p * r <= 0:
            continue
        params = QuinticParams(p, q, r, s)
        R3 = -Polynomial([20 * s, 16 * r, 6 * q, F(4, 3) * p])
        R2 = Polynomial([-4 * r, -3 * q, -p])
        w = sublevel_witness(params)
        three = count_real_roots(R3) == 3 and _mults(R3) == [1, 1, 1]
        # strictly between the roots of R2 <=> R2(w) has the sign opposite to lc(R2)
        roots = sorted(sympy.real_roots(to_sympy(R2)), key=float)
        between = R2(w) * R2.lc < 0
        assert between == (float(roots[0]) < w < float(roots[-1]))
        assert three == between


# -- degenerate families ---------------------------------------------------------


def _check_member(m, want=(2, 2, 1)):
    assert m.verify()
    assert m.profile() == want
    if m.exact:
        P = m.params().assemble()
        assert discriminant(P) == 0
        assert tuple(_mults(P)) == want


def test_consecutive_family_points():
    rng = random.Random(31)
    for _ in range(20):
        p = -F(rng.randint(1, 60), 4)
        t = F(rng.randint(1, 999), 1000)
        r = -p**2 / 12 + t * (4 * p**2 / 27 + p**2 / 12)
        members = degenerate_consecutive(p, r)
        assert members
        bound = float(-4 * p**3 / 27) ** 0.5
        for m in members:
            _check_member(m)
            assert m.arrangement() == "consecutive"
            assert abs(float(m.q)) < bound
            q2 = m.q_squared()
            ref = family_q_squared(p, r).refine_to(F(1, 10**20))
            assert abs(float(q2) - float(ref)) < 1e-9 * max(1, abs(float(ref)))


def test_separated_family_points():
    rng = random.Random(32)
    for _ in range(20):
        p = -F(rng.randint(1, 60), 4)
        t = F(rng.randint(1, 999), 1000)
        r = 5 * p**2 / 36 + t * (4 * p**2 / 27 - 5 * p**2 / 36)
        members = degenerate_separated(p, r)
        assert members
        bound = float(-8 * p**3 / 729) ** 0.5
        for m in members:
            _check_member(m)
            assert m.arrangement() == "separated"
            assert abs(float(m.q)) < bound
            ref = family_q_squared(p, r, separated=True).refine_to(F(1, 10**20))
            assert abs(float(m.q_squared()) - float(ref)) < 1e-9 * max(1, abs(float(ref)))


def test_family_ranges_enforced():
    with pytest.raises(OutOfRange):
        degenerate_consecutive(-3, 5)
    with pytest.raises(OutOfRange):
        degenerate_separated(-3, 0)
    with pytest.raises(OutOfRange):
        degenerate_consecutive(3, 0)


def test_rational_family_member_expands_exactly():
    # Y = 1, p = -3: X = 3/2 - 5 = -7/2, r from the residual
    p = F(-3)
    Y = F(1)
    Xv = F(3, 2) * Y**2 + 5 * p / 3
    r = (Xv * Xv - 4 * Xv * Y * Y) / 20
    members = degenerate_consecutive(p, r) if Xv >= 4 * p / 3 else degenerate_separated(p, r)
    exact = [m for m in members if m.exact and m.Y.lo == Y]
    assert exact
    m = exact[0]
    P = m.params().assemble()
    a_b = Polynomial([m.X, -Y, 1])
    assert P == a_b * a_b * Polynomial([2 * Y, 1])
    assert gcd(P, derivative(P)).degree == 2
    assert family_s(p, m.q, m.X) == m.s


def test_triple_double_golden():
    members = triple_double_point(F(-9, 2))
    assert [(m.q, m.s) for m in members] == [(1, F(-18, 5)), (-1, F(18, 5))]
    m = members[0]
    assert m.r == 3
    P = m.params().assemble()
    assert P == Polynomial([-72, 60, 10, -15, 0, 1])
    cert = certify_all_real(P)
    assert cert.verdict is Verdict.DEGENERATE
    assert sorted(cert.degeneracy.profile().values()) == [2, 3]
    assert degenerate_consecutive(F(-9, 2), 3)[0].profile() == (3, 2)
    assert degenerate_separated(F(-9, 2), 3)[0].profile() == (3, 2)


@pytest.mark.parametrize("k", [F(1), F(2), F(1, 3), F(5, 2)])
def test_triple_point_rational_when_p_is_minus_9k2_over_2(k):
    p = -9 * k * k / 2
    q2, r, s_over_q = triple_point_closed_form(p)
    assert q2 == k**6
    for m in triple_double_point(p):
        assert m.exact
        assert m.q**2 == q2 and m.r == r and m.s == s_over_q * m.q
        assert tuple(_mults(m.params().assemble())) == (3, 2)


def test_triple_point_irrational_p_gives_enclosures():
    for m in triple_double_point(-3):
        assert not m.exact
        assert m.verify() and m.profile() == (3, 2)


def test_rational_q_detected_for_irrational_Y():
    # p = -3, r = 1: Y = sqrt(2), so q = Y(Y^2/2 - 1) = 0 exactly while s is irrational
    members = degenerate_consecutive(-3, 1)
    assert [m.q for m in members] == [0, 0]
    assert not any(m.exact for m in members)
    assert all(m.verify() and m.profile() == (2, 2, 1) for m in members)
