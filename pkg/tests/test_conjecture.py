import io
import random
from fractions import Fraction

import pytest

from realrooted.builder import sample_real_rooted
from realrooted.conjecture import (
    ConjectureRecord,
    RecordStatus,
    batch_report,
    conjecture_check,
    cubic_K,
    quartic_K,
    quintic_K,
    read_counterexamples,
    write_counterexamples,
)
from realrooted.exceptions import DegenerateInput, DegreeTooSmall, NotDepressed
from realrooted.params import QuarticParams, QuinticParams
from realrooted.poly import Polynomial, discriminant
from realrooted.sturm import quartic_pivot, quintic_a_s1, quintic_pivot

F = Fraction


def _r(rng, b=30):
    return F(rng.randint(-b * 8, b * 8), rng.randint(1, 8))


def test_cubic_K():
    rng = random.Random(1)
    for _ in range(100):
        p, q = _r(rng), _r(rng)
        if p == 0 or -4 * p**3 - 27 * q**2 == 0:
            continue
        rec = conjecture_check(Polynomial([q, p, 0, 1]))
        assert rec.K == cubic_K(p) and rec.sign_agrees


def test_quartic_K():
    rng = random.Random(2)
    for _ in range(100):
        p, q, r = _r(rng), _r(rng), _r(rng)
        if p == 0 or quartic_pivot(p, q, r) == 0:
            continue
        P = QuarticParams(p, q, r).assemble()
        if discriminant(P) == 0:
            continue
        assert conjecture_check(P).K == quartic_K(p, q, r)


def test_quintic_K_closed_form():
    rng = random.Random(3)
    for _ in range(100):
        p, q, r, s = _r(rng), _r(rng), _r(rng), _r(rng)
        if p == 0 or quintic_pivot(p, q, r) == 0 or quintic_a_s1(p, q, r, s) == 0:
            continue
        P = QuinticParams(p, q, r, s).assemble()
        if discriminant(P) == 0:
            continue
        rec = conjecture_check(P)
        assert rec.K == quintic_K(p, q, r, s)
        assert rec.K > 0


def test_product_identity_on_real_rooted():
    for seed in range(5):
        rec = conjecture_check(sample_real_rooted(5, seed))
        assert rec.product_holds
        assert rec.status is RecordStatus.OK


def test_degenerate_input():
    P = Polynomial([2, -3, 0, 1])
    assert conjecture_check(P).status is RecordStatus.DEGENERATE
    with pytest.raises(DegenerateInput):
        conjecture_check(P, strict=True)
    with pytest.raises(DegreeTooSmall):
        conjecture_check(Polynomial([-1, 0, 1]))
    with pytest.raises(NotDepressed):
        conjecture_check(Polynomial([1, 1, 1, 1]))


def test_pivot_degenerate_kept_out():
    # pivot p^3 + 9q^2 - 4pr vanishes, discriminant does not
    p, q = F(-3), F(1)
    r = (p**3 + 9 * q**2) / (4 * p)
    P = QuarticParams(p, q, r).assemble()
    rec = conjecture_check(P)
    assert rec.status is RecordStatus.PIVOT_DEGENERATE
    summary = batch_report([P])
    assert summary.pivot_degenerate == 1 and summary.checked == 0


def test_batch_report_counts():
    assert batch_report([]).to_dict()["total"] == 0
    polys = [sample_real_rooted(5, s) for s in range(10)] + [Polynomial([-72, 60, 10, -15, 0, 1])]
    summary = batch_report(polys)
    assert summary.total == 11
    assert summary.degenerate == 1
    assert summary.disagreements == 0
    assert summary.agreements == summary.checked == 10


def test_counterexample_round_trip():
    P = Polynomial([F(1, 3), -2, 0, 1])
    rec = ConjectureRecord(P, RecordStatus.OK, F(-7, 2), F(5, 9), None)
    buf = io.StringIO()
    assert write_counterexamples([rec], buf) == 1
    text = buf.getvalue()
    assert text == "1/3 -2 0 1\n# S0 5/9 disc -7/2\n"
    assert read_counterexamples(io.StringIO(text)) == [(P, F(5, 9), F(-7, 2))]
