"""Arc dissection, major/minor decomposition, end-to-end comparison report."""

import math
import random
from fractions import Fraction

import pytest

from waring4 import arcs, figurate, repcount
from waring4.errors import BudgetError

F1 = figurate.catalog("{3,4,3}").spec
F2 = figurate.catalog("{3,3,5}").spec


def test_integer_fourth_root():
    rng = random.Random(41)
    for _ in range(300):
        x = rng.randrange(0, 10**18)
        r = arcs.integer_fourth_root(x)
        assert r**4 <= x < (r + 1) ** 4
    for k in (1, 2, 7, 10**4):
        assert arcs.integer_fourth_root(k**4) == k
        assert arcs.integer_fourth_root(k**4 - 1) == k - 1
        assert arcs.integer_fourth_root(k**4 + 1) == k
    with pytest.raises(ValueError):
        arcs.integer_fourth_root(-1)


def test_choose_N_frozen_points():
    assert arcs.choose_N(72, 10**6) == 26
    assert arcs.choose_N(24, 16) == 3
    assert arcs.choose_N(72, 3) == 2


def test_choose_N_bracketing_property():
    rng = random.Random(42)
    for sp in (F1, F2):
        for _ in range(100):
            m = rng.randrange(1, 10**9)
            N = arcs.choose_N(sp.A, m)
            assert sp.A * (N - 1) ** 4 >= 24 * m
            if N > 2:
                assert sp.A * (N - 2) ** 4 < 24 * m
            assert sp.value(N) >= m
    with pytest.raises(ValueError):
        arcs.choose_N(72, 0)


def test_optimal_delta_values():
    assert arcs.optimal_delta(17) == Fraction(73, 372)
    assert arcs.optimal_delta(9) == Fraction(73, 300)
    assert arcs.optimal_delta(25) == Fraction(73, 444)
    deltas = [arcs.optimal_delta(s) for s in range(9, 40)]
    assert deltas == sorted(deltas, reverse=True)
    # drops below 1/5 exactly at the s = 17 threshold
    assert arcs.optimal_delta(16) > Fraction(1, 5)
    assert arcs.optimal_delta(17) < Fraction(1, 5)
    with pytest.raises(ValueError):
        arcs.optimal_delta(8)


def test_dissect_small_N_single_arc():
    d = arcs.dissect(26, Fraction(73, 372))
    assert len(d.arcs) == 1
    assert (d.arcs[0].q, d.arcs[0].a) == (1, 1)
    assert d.arcs[0].center == Fraction(1)


def test_dissect_frozen_large_N():
    d = arcs.dissect(10**6, Fraction(73, 372))
    qs = {arc.q for arc in d.arcs}
    assert max(qs) == 15
    assert len(d.arcs) == 72  # sum of phi(q) for q <= 15
    assert d.P == pytest.approx(15.045941012517122, rel=1e-15)
    for arc in d.arcs:
        assert 1 <= arc.a <= arc.q and math.gcd(arc.a, arc.q) == 1


def test_dissect_disjointness_exact():
    """Adjacent arc centers are farther apart than two halfwidths; verified in
    exact rational/integer arithmetic, no floats."""
    delta = Fraction(73, 372)
    num, den = delta.numerator, delta.denominator
    for N in (100, 3001, 9999):
        d = arcs.dissect(N, delta)
        centers = sorted(arc.center for arc in d.arcs)
        for c1, c2 in zip(centers, centers[1:]):
            gap = c2 - c1
            # gap > 2 * N^((num - 4*den)/den) <=> gap^den * N^(4*den - num) > 2^den
            lhs = Fraction(gap) ** den * N ** (4 * den - num)
            assert lhs > 2**den


def test_dissect_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        arcs.dissect(1, Fraction(73, 372))
    with pytest.raises(ValueError):
        arcs.dissect(100, Fraction(5, 4))


def test_decomposition_reconstructs_exact_count():
    """Major plus minor arc integrals reassemble the exact representation
    count: the counting integral over a unit period is split, not bounded."""
    for (sp, s, m) in [(F1, 2, 25), (F1, 3, 3), (F1, 3, 26), (F1, 3, 179)]:
        N = arcs.choose_N(sp.A, m)
        d = arcs.dissect(N, Fraction(73, 372))
        major, err1 = arcs.major_arc_integral(sp, s, m, d)
        minor, err2 = arcs.minor_arc_integral(sp, s, m, d)
        exact = repcount.count_representations(sp, s, m)
        total = major + minor
        assert abs(total.imag) < 1e-9
        assert total.real == pytest.approx(exact, abs=1e-9 * max(1, exact) + 1e-9)
        assert err1 + err2 < 1e-6


def test_decomposition_thread_count_does_not_change_bits():
    m, s = 179, 3
    N = arcs.choose_N(F1.A, m)
    d = arcs.dissect(N, Fraction(73, 372))
    maj1 = arcs.major_arc_integral(F1, s, m, d, threads=1)
    maj4 = arcs.major_arc_integral(F1, s, m, d, threads=4)
    min1 = arcs.minor_arc_integral(F1, s, m, d, threads=1)
    min4 = arcs.minor_arc_integral(F1, s, m, d, threads=4)
    assert maj1 == maj4
    assert min1 == min4


def test_approx_chain_trivial_arc():
    rep = arcs.approx_chain_check(F1, 1, 1, 0.0, 40)
    assert rep.holds
    assert rep.lhs == pytest.approx(1.0)  # S(0) = N vs integral N - 1


def test_approx_chain_flags_out_of_range_inputs():
    rep = arcs.approx_chain_check(F1, 2, 1, 1e-6, 120)
    assert rep.holds
    assert "hypothesis_met=False" in rep.context
    assert "theta_within_arc=False" in rep.context
    assert "M-steps-ok=True" in rep.context


def test_approx_chain_rejects_bad_fraction():
    with pytest.raises(ValueError):
        arcs.approx_chain_check(F1, 4, 2, 0.0, 40)  # gcd(a, q) != 1
    with pytest.raises(ValueError):
        arcs.approx_chain_check(F1, 2, 1, 0.75, 40)  # theta outside [-1/2, 1/2]


def test_minor_bound_check_large_s():
    rep = arcs.minor_bound_check(72, 17, 26, Fraction(73, 372), 1e6)
    assert rep.holds
    assert rep.rhs == pytest.approx(1.1563904479691398e46, rel=1e-9)
    assert "hypothesis_met=True" in rep.context
    # far enough out the right side overflows a double and is reported as inf,
    # while the log-space comparison still decides the verdict
    big = arcs.minor_bound_check(72, 60, 10**6, Fraction(73, 759), 1e300)
    assert big.holds and math.isinf(big.rhs)


def test_minor_bound_check_small_s_is_one_sided():
    rep = arcs.minor_bound_check(72, 3, 26, Fraction(73, 372), 5.0)
    assert rep.holds
    assert "hypothesis-unmet" in rep.context
    with pytest.raises(ValueError):
        arcs.minor_bound_check(72, 17, 2, Fraction(73, 372), 1.0)


def test_asymptotic_report_small_case():
    with pytest.warns(UserWarning):
        rep = arcs.asymptotic_report(F1, 2, 25, prime_limit=10)
    assert rep.exact_count == 2
    assert rep.spec_label == "{3,4,3}"
    assert rep.major_value is not None
    assert rep.minor_residual == pytest.approx(rep.exact_count - rep.major_value)
    assert rep.bound_checks and rep.bound_checks[0].holds


def test_asymptotic_report_unique_representation():
    rep = arcs.asymptotic_report(F1, 17, 17, prime_limit=10)
    assert rep.exact_count == 1  # seventeen copies of f(1)
    assert rep.main_term > 0.0
    assert rep.ratio == pytest.approx(1.0 / rep.main_term)


def test_asymptotic_report_budget_refusal_leaves_fields_none():
    rep = arcs.asymptotic_report(F1, 17, 17, prime_limit=10, count_budget=1)
    assert rep.exact_count is None
    assert rep.minor_residual is None
    assert math.isnan(rep.ratio)
    assert rep.main_term > 0.0
