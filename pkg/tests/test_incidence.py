import random
from math import factorial

import pytest

from valuesets.engine import count_interpolating_sets_direct, scan_family
from valuesets.errors import BudgetExceeded, IdentityViolation, ParameterRange
from valuesets.exprs import coeff_variables, parse_poly_expr
from valuesets.families import FamilySpec, enumerate_family, linear_family
from valuesets.ffield import field_new
from valuesets.incidence import (
    IncidenceCounts,
    coincident_bound_check,
    collect,
    count_coincident_tuples,
    count_distinct_tuples,
    count_distinct_tuples_oracle,
    count_hermite_tuples,
    count_hermite_tuples_oracle,
    hermite_estimate_report,
    hermite_profile,
)

F4 = field_new(2, 2)
F5 = field_new(5)
F7 = field_new(7)
F11 = field_new(11)


def constraint(text, field, d):
    return parse_poly_expr(text, field, d - 1, coeff_variables(d))


def spec_a2_f5():
    return linear_family(F5, 3, 1, [constraint("A2", F5, 3)])


def quad_spec(field, d):
    top = d - 1
    return FamilySpec(
        field, d, 1, [constraint(f"A{top}^2 - A{top - 1}", field, d)], kind="custom"
    )


def test_r1_counts():
    for spec in [spec_a2_f5(), quad_spec(F5, 4)]:
        members = sum(1 for _ in enumerate_family(spec))
        q = spec.field.q
        star, coinc = hermite_profile(spec, 1)
        assert star == [members * q]
        assert coinc == [0]
        assert count_distinct_tuples(spec, 1) == members * q


def test_distinct_matches_raw_enumeration():
    for spec, rs in [(spec_a2_f5(), (1, 2, 3)), (quad_spec(F5, 4), (1, 2, 3))]:
        for r in rs:
            assert count_distinct_tuples(spec, r) == count_distinct_tuples_oracle(spec, r)


def test_hermite_matches_division_oracle():
    for spec, rs in [
        (spec_a2_f5(), (1, 2, 3)),
        (quad_spec(F5, 4), (1, 2, 3)),
        (linear_family(F4, 3, 1, [constraint("A2", F4, 3)]), (1, 2, 3)),
    ]:
        star, coinc = hermite_profile(spec, max(rs))
        for r in rs:
            assert star[r - 1] == count_hermite_tuples_oracle(spec, r), (spec, r)


def test_subtraction_identity_and_collect():
    for spec in [spec_a2_f5(), quad_spec(F5, 4), linear_family(F7, 4, 1, [constraint("A3", F7, 4)])]:
        counts = collect(spec, spec.d)
        for c in counts:
            assert c.distinct == c.hermite - c.coincident
            assert c.distinct % factorial(c.r) == 0
        assert [c.r for c in counts] == list(range(1, spec.d + 1))


def test_orbit_identity_against_direct_subset_oracle():
    spec = spec_a2_f5()
    for r in (1, 2, 3):
        assert factorial(r) * count_interpolating_sets_direct(spec, r) == count_distinct_tuples(
            spec, r
        )


def test_double_root_confluent_pairs():
    # singleton family f = T^3 + 3T^2 + T = T*(T-1)^2 over F_5
    spec = FamilySpec(
        F5, 3, 2, [constraint("A2 - 3", F5, 3), constraint("A1 - 1", F5, 3)]
    )
    assert sum(1 for _ in enumerate_family(spec)) == 1
    # count (beta, beta) pairs by brute force over all shifts
    want = 0
    for a0 in range(5):
        for b in range(5):
            if (b**3 + 3 * b**2 + b + a0) % 5 == 0 and (3 * b**2 + 6 * b + 1) % 5 == 0:
                want += 1
    assert want >= 1  # a_0 = 0, beta = 1 at least
    assert count_coincident_tuples(spec, 2) == want
    # the confluent pair is a hermite tuple but not a distinct tuple
    assert count_hermite_tuples(spec, 2) == count_distinct_tuples(spec, 2) + want


def test_counts_vanish_beyond_degree():
    spec = spec_a2_f5()
    star, coinc = hermite_profile(spec, spec.d + 2)
    assert star[spec.d] == 0 and star[spec.d + 1] == 0
    assert coinc[spec.d] == 0


def test_extension_monotonicity():
    for spec in [spec_a2_f5(), quad_spec(F7, 4)]:
        star, _ = hermite_profile(spec, spec.d)
        q = spec.field.q
        for a, b in zip(star, star[1:]):
            assert b <= q * a


def test_node_order_invariance():
    rng = random.Random(7)
    for spec in [spec_a2_f5(), quad_spec(F5, 4), linear_family(F4, 3, 1, [constraint("A2", F4, 3)])]:
        base = hermite_profile(spec, spec.d)
        for _ in range(3):
            order = list(spec.field.indices())
            rng.shuffle(order)
            assert hermite_profile(spec, spec.d, order=order) == base


def test_partitioned_profile_sums():
    spec = quad_spec(F5, 4)
    full_star, full_coinc = hermite_profile(spec, 3)
    lo_star, lo_coinc = hermite_profile(spec, 3, partition=(0, 60))
    hi_star, hi_coinc = hermite_profile(spec, 3, partition=(60, 125))
    assert [a + b for a, b in zip(lo_star, hi_star)] == full_star
    assert [a + b for a, b in zip(lo_coinc, hi_coinc)] == full_coinc


def test_collect_rejects_tampered_scan():
    spec = spec_a2_f5()
    scan = scan_family(spec)
    scan.profile[1] += 1  # corrupt the histogram: identity must catch it
    with pytest.raises(IdentityViolation):
        collect(spec, 2, scan=scan)


def test_oracle_budgets():
    spec = spec_a2_f5()
    with pytest.raises(BudgetExceeded):
        count_distinct_tuples_oracle(spec, 2, budget=10)
    with pytest.raises(BudgetExceeded):
        count_hermite_tuples_oracle(spec, 2, budget=10)
    with pytest.raises(ParameterRange):
        hermite_profile(spec, 0)


def test_hermite_estimate_report_linear_q11():
    spec = linear_family(F11, 4, 1, [constraint("A3", F11, 4)])
    rep = hermite_estimate_report(spec, 2)
    assert rep.main_term == 11**3
    assert rep.within
    assert rep.count == count_hermite_tuples(spec, 2)


def test_coincident_bound_reports():
    spec = linear_family(F7, 4, 1, [constraint("A3", F7, 4)])
    r1 = coincident_bound_check(spec, 1)
    assert r1.ok and r1.count == 0 and r1.bound == 0 and r1.ratio is None
    r2 = coincident_bound_check(spec, 2)
    assert r2.ok
    assert r2.ratio is not None and 0 <= r2.ratio <= 1
