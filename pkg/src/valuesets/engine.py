"""Value-set statistics for constraint-defined polynomial families.

The central object is the per-member root-count histogram: for a member f
(with a_0 = 0) and each shift a_0 in F_q, n(f, a_0) is the number of c with
f(c) + a_0 = 0, i.e. the multiplicity-free fiber size of -f over a_0.  One
Horner sweep per member yields the whole histogram, and everything downstream
is a linear functional of it:

    V(f)            = #{a_0 : n(f, a_0) > 0}
    S_r (fast path) = sum over (f, a_0) of C(n, r)
    ordered distinct-root tuples = sum of n*(n-1)*...*(n-r+1)

All aggregates are exact big integers; averages are exact Fractions.  The
literal subset-enumeration oracle for S_r survives behind a work budget.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, perm

from .errors import BudgetExceeded, EmptyFamily, ParameterRange
from .families import enumerate_family, family_cardinality

DEFAULT_ORACLE_BUDGET = 5_000_000


def generic_density(d):
    """The alternating factorial sum that a generic degree-d value set tracks."""
    if d < 1:
        raise ParameterRange(f"need d >= 1, got {d}")
    total = Fraction(0)
    fact = 1
    for r in range(1, d + 1):
        fact *= r
        total += Fraction((-1) ** (r - 1), fact)
    return total


def value_set_size(f):
    """|{f(c) : c in F_q}| by exhaustive evaluation."""
    field = f.field
    seen = bytearray(field.q)
    count = 0
    for c in field.indices():
        v = f.eval(c)
        if not seen[v]:
            seen[v] = 1
            count += 1
    return count


def _member_histogram(field, a_desc, profile, values_out):
    """Accumulate one member's root-count histogram into profile.

    a_desc is (a_{d-1}, ..., a_1).  hist[a_0] counts c with -f(c) = a_0;
    appends V(f) = #nonzero entries to values_out and adds the histogram's
    n-distribution into profile[n].
    """
    add, mul, neg = field.add, field.mul, field.neg
    q = field.q
    hist = [0] * q
    for c in field.indices():
        # Horner over (1, a_{d-1}, ..., a_1, 0)
        acc = 1
        for coef in a_desc:
            acc = add(mul(acc, c), coef)
        acc = mul(acc, c)  # constant coefficient of the member is 0
        hist[neg(acc)] += 1
    vf = 0
    for n in hist:
        profile[n] += 1
        if n:
            vf += 1
    values_out.append(vf)
    return vf


@dataclass
class ScanResult:
    """Additive partial result of a family scan over one candidate slice."""

    d: int
    member_count: int
    sum_values: int
    profile: list  # profile[n] = #(member, a_0) pairs with n roots, n = 0..d
    member_values: list

    @classmethod
    def empty(cls, d):
        return cls(d, 0, 0, [0] * (d + 1), [])

    def merge(self, other):
        if self.d != other.d:
            raise ParameterRange("merging scans of different degree")
        return ScanResult(
            self.d,
            self.member_count + other.member_count,
            self.sum_values + other.sum_values,
            [a + b for a, b in zip(self.profile, other.profile)],
            self.member_values + other.member_values,
        )

    def interpolating_count(self, r):
        """S_r from the aggregated histogram."""
        if r < 1:
            raise ParameterRange(f"need r >= 1, got {r}")
        return sum(cnt * comb(n, r) for n, cnt in enumerate(self.profile))

    def distinct_tuple_count(self, r):
        """Ordered r-tuples of pairwise distinct roots, summed over (f, a_0)."""
        if r < 1:
            raise ParameterRange(f"need r >= 1, got {r}")
        return sum(cnt * perm(n, r) for n, cnt in enumerate(self.profile))


def scan_family(spec, partition=None):
    """One pass over (a slice of) the family collecting all histogram sums."""
    result = ScanResult.empty(spec.d)
    field = spec.field
    for member in enumerate_family(spec, partition):
        result.member_count += 1
        result.sum_values += _member_histogram(
            field, member.a, result.profile, result.member_values
        )
    return result


@dataclass
class ValueSetSummary:
    member_count: int
    sum_values: int
    average: Fraction
    interpolating_counts: dict  # r -> S_r for r = 1..r_max
    member_values: list

    def alternating_average(self):
        """(1/|A|) sum of (-1)^(r-1) S_r over the stored r range."""
        total = 0
        for r, s in sorted(self.interpolating_counts.items()):
            total += s if r % 2 else -s
        return Fraction(total, self.member_count)


def summarize(spec, r_max=None, scan=None):
    """Full family summary; r_max defaults to the degree."""
    if r_max is None:
        r_max = spec.d
    if not 1 <= r_max:
        raise ParameterRange(f"need r_max >= 1, got {r_max}")
    if scan is None:
        scan = scan_family(spec)
    if scan.member_count == 0:
        raise EmptyFamily(f"no members: {spec!r}")
    return ValueSetSummary(
        scan.member_count,
        scan.sum_values,
        Fraction(scan.sum_values, scan.member_count),
        {r: scan.interpolating_count(r) for r in range(1, r_max + 1)},
        scan.member_values,
    )


def average_value_set(spec):
    """Exact rational mean of V(f) over the family."""
    scan = scan_family(spec)
    if scan.member_count == 0:
        raise EmptyFamily(f"no members: {spec!r}")
    return Fraction(scan.sum_values, scan.member_count)


def count_interpolating_sets(spec, r):
    """S_r by the histogram fast path."""
    if r < 1:
        raise ParameterRange(f"need r >= 1, got {r}")
    return scan_family(spec).interpolating_count(r)


def count_interpolating_sets_direct(spec, r, budget=DEFAULT_ORACLE_BUDGET):
    """S_r by literal enumeration of r-subsets and (member, a_0) pairs.

    Test oracle only; refuses work beyond C(q, r) * |A| candidate pairs.
    """
    if r < 1:
        raise ParameterRange(f"need r >= 1, got {r}")
    field = spec.field
    q = field.q
    if r > q:
        return 0
    members = list(enumerate_family(spec))
    cost = comb(q, r) * len(members)
    if cost > budget:
        raise BudgetExceeded(f"direct S_r cost {cost} exceeds budget {budget}")
    add, mul = field.add, field.mul
    total = 0
    for subset in combinations(field.indices(), r):
        for member in members:
            for a0 in field.indices():
                ok = True
                for x in subset:
                    acc = 1
                    for coef in member.a:
                        acc = add(mul(acc, x), coef)
                    acc = add(mul(acc, x), a0)
                    if acc:
                        ok = False
                        break
                if ok:
                    total += 1
    return total


def inclusion_exclusion_check(spec, scan=None):
    """Return (alternating S_r average, exact-equality flag with V(A))."""
    summary = summarize(spec, scan=scan)
    alt = summary.alternating_average()
    return alt, alt == summary.average
