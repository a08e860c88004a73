"""Desk-scale sanity checks on constraint families, honestly labeled.

The counting estimates elsewhere in the package are only advertised for
families whose constraint variety is well behaved (cut out cleanly, regular
in codimension two, with small discriminant loci).  Certifying those
properties symbolically needs Groebner machinery and is out of scope.  What
this module offers instead are *necessary conditions* checked on rational
points over small extensions:

- `check_regularity`: (a) the Jacobian of the constraints has full rank m at
  every F_{Q}-point of the variety, outside an allowance of c * Q^(dim-2)
  points (a regular-in-codimension-two proxy), and (b) the number of points
  sits inside the complete-intersection size bracket whenever that bracket's
  q-threshold holds.
- `check_regularity_at_infinity`: the same checks applied to the highest
  homogeneous parts of the constraints, probing behaviour at infinity.
- `check_discriminant_loci`: the loci where the shifted polynomial acquires
  a repeated root (or a root of multiplicity three and higher) should have
  codimension one resp. two inside the family; counts N1, N2 are compared
  against Bezout-style allowances.

A report status is one of `pass-necessary-conditions`, `fail`, or
`inconclusive`; a pass never claims more than the phrase says, and the
report text always carries the words "necessary conditions only".  Every
failure includes a concrete witness (a point or a count) that can be
re-checked from the report alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .bounds import family_size_bracket
from .families import FamilySpec, enumerate_family
from .ffield import Field, embedding_table, field_new
from .linalg import rank
from .unipoly import UniPoly, poly_gcd

PASS = "pass-necessary-conditions"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# Candidate-point ceiling for extension scans; Q^(d-1) above this skips k.
DEFAULT_POINT_BUDGET = 300_000


@dataclass(frozen=True)
class DiagnosticReport:
    check: str
    status: str
    text: str
    evidence: dict = dc_field(default_factory=dict)
    witness: tuple | None = None

    def render(self) -> str:
        lines = [f"[{self.check}] {self.status}: {self.text}"]
        for key in sorted(self.evidence):
            lines.append(f"    {key} = {self.evidence[key]}")
        if self.witness is not None:
            lines.append(f"    witness = {self.witness}")
        return "\n".join(lines)


def _degree_product(degrees) -> int:
    out = 1
    for e in degrees:
        out *= e
    return out


def _embedded_spec(spec: FamilySpec, k: int) -> FamilySpec:
    """The same family read over the degree-k extension of its field."""
    base = spec.field
    if k == 1:
        return spec
    ext = field_new(base.p, base.s * k)
    table = embedding_table(base, ext)
    gs = [g.map_coefficients(ext, table) for g in spec.constraints]
    return FamilySpec(ext, spec.d, spec.m, gs, kind=spec.kind)


def _regularity_scan(spec: FamilySpec, extension_degrees, point_budget, c):
    """Shared body of the rank and size checks; returns raw per-k results."""
    d, m = spec.d, spec.m
    dim = d - 1 - m
    per_k = {}
    fail_reason = None
    witness = None
    for k in extension_degrees:
        big_q = spec.field.q**k
        if big_q ** (d - 1) > point_budget:
            per_k[k] = {"skipped": f"{big_q}^{d - 1} candidates exceed budget {point_budget}"}
            continue
        ext_spec = _embedded_spec(spec, k)
        ext = ext_spec.field
        jac_rows = [
            [g.partial(i) for i in range(d - 1)] for g in ext_spec.constraints
        ]
        points = 0
        deficient = 0
        first_bad = None
        for member in enumerate_family(ext_spec):
            points += 1
            rows = [[pg.eval(member.a) for pg in row] for row in jac_rows]
            if rank(ext, rows) < m:
                deficient += 1
                if first_bad is None:
                    first_bad = member.a
        allowed = Fraction(c) * Fraction(big_q) ** (dim - 2)
        entry = {
            "Q": big_q,
            "points": points,
            "deficient": deficient,
            "allowed": allowed,
        }
        if points == 0:
            entry["empty"] = True
            per_k[k] = entry
            continue
        rank_ok = Fraction(deficient) <= allowed
        entry["rank_ok"] = rank_ok
        if not rank_ok and fail_reason is None:
            fail_reason = (
                f"{deficient} of {points} points at Q={big_q} have Jacobian rank "
                f"< {m}, above the allowance {allowed}"
            )
            witness = first_bad
        bracket = family_size_bracket(d, m, spec.degrees, big_q)
        if bracket.threshold_ok:
            in_bracket = bracket.lower < points <= bracket.upper
            entry["bracket"] = f"({bracket.lower}, {bracket.upper}]"
            entry["bracket_ok"] = in_bracket
            if not in_bracket and fail_reason is None:
                fail_reason = (
                    f"point count {points} at Q={big_q} falls outside the size "
                    f"bracket ({bracket.lower}, {bracket.upper}]"
                )
                witness = (points,)
        else:
            entry["bracket"] = "threshold unmet"
        per_k[k] = entry
    return per_k, fail_reason, witness


def _regularity_report(label, spec, extension_degrees, point_budget, c):
    if c is None:
        c = _degree_product(spec.degrees) ** 2
    per_k, fail_reason, witness = _regularity_scan(
        spec, extension_degrees, point_budget, c
    )
    evidence = {"constant": c, "dimension": spec.d - 1 - spec.m}
    for k, entry in per_k.items():
        for key, val in entry.items():
            evidence[f"k{k}.{key}"] = val
    if fail_reason is not None:
        return DiagnosticReport(label, FAIL, fail_reason, evidence, witness)
    full_pass = [
        k
        for k, entry in per_k.items()
        if entry.get("rank_ok") and entry.get("bracket_ok")
    ]
    if full_pass:
        text = (
            f"Jacobian rank {spec.m} holds outside the allowance and the point "
            f"count sits in the size bracket at k={full_pass}; "
            "necessary conditions only, no radical or normality certificate."
        )
        return DiagnosticReport(label, PASS, text, evidence)
    reasons = []
    for k, entry in per_k.items():
        if "skipped" in entry:
            reasons.append(f"k={k} skipped ({entry['skipped']})")
        elif entry.get("empty"):
            reasons.append(f"k={k} found no points (empty family)")
        elif entry.get("bracket") == "threshold unmet":
            reasons.append(f"k={k} rank check passed but the size-bracket threshold is unmet at Q={entry['Q']}")
    text = "no extension gave a conclusive verdict: " + "; ".join(reasons)
    return DiagnosticReport(label, INCONCLUSIVE, text, evidence)


def check_regularity(
    spec: FamilySpec,
    extension_degrees=(1, 2),
    point_budget: int = DEFAULT_POINT_BUDGET,
    c: int | None = None,
) -> DiagnosticReport:
    """Rank and size checks on the constraint variety over small extensions.

    The allowance constant c defaults to the squared product of constraint
    degrees, a Bezout-style heuristic for the degree of the locus where the
    Jacobian drops rank.  Pass it explicitly to tighten or relax the check.
    """
    return _regularity_report("regularity", spec, extension_degrees, point_budget, c)


def check_regularity_at_infinity(
    spec: FamilySpec,
    extension_degrees=(1, 2),
    point_budget: int = DEFAULT_POINT_BUDGET,
    c: int | None = None,
) -> DiagnosticReport:
    """Same checks on the highest homogeneous parts of the constraints.

    For homogeneous constraints this reproduces `check_regularity` verbatim
    apart from the label.
    """
    top = FamilySpec(
        spec.field,
        spec.d,
        spec.m,
        [g.highest_form() for g in spec.constraints],
        kind=spec.kind,
    )
    return _regularity_report(
        "regularity-at-infinity", top, extension_degrees, point_budget, c
    )


def _repeated_root_profile_prime(p, tail_desc, d):
    """Per-shift gcd degrees for one member over a prime field.

    tail_desc is (a_{d-1}, ..., a_1).  Returns (n1, n2, first1, first2)
    where n1 counts shifts a_0 with a repeated root, n2 those with a root of
    multiplicity at least three (equivalently deg gcd(f, f') >= 2), and the
    firsts are the smallest such shifts (or None).
    """
    asc = [0] + list(reversed(tail_desc)) + [1]
    deriv = [(j * asc[j]) % p for j in range(1, d + 1)]
    while deriv and deriv[-1] == 0:
        deriv.pop()
    if not deriv:
        return p, p, 0, 0
    n1 = n2 = 0
    first1 = first2 = None
    for a0 in range(p):
        f = asc[:]
        f[0] = a0
        g = _gcd_degree_prime(p, f, deriv)
        if g >= 1:
            n1 += 1
            if first1 is None:
                first1 = a0
            if g >= 2:
                n2 += 1
                if first2 is None:
                    first2 = a0
    return n1, n2, first1, first2


def _gcd_degree_prime(p, a, b):
    """Degree of gcd of two coefficient lists (ascending) over F_p; b != 0."""
    a = a[:]
    b = b[:]
    while b:
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                c = (c * inv) % p
                off = i - db
                for j in range(db):
                    a[off + j] = (a[off + j] - c * b[j]) % p
                a[i] = 0
        while a and a[-1] == 0:
            a.pop()
        a, b = b, a
    return len(a) - 1


def _repeated_root_profile_generic(field: Field, tail_desc, d):
    """Extension-field version of the per-member repeated-root profile."""
    asc = [0] + list(reversed(tail_desc)) + [1]
    f = UniPoly(field, asc)
    deriv = f.derivative()
    if deriv.degree < 0:
        return field.q, field.q, 0, 0
    n1 = n2 = 0
    first1 = first2 = None
    for a0 in field.indices():
        shifted = UniPoly(field, [field.add(asc[0], a0)] + asc[1:])
        g = poly_gcd(shifted, deriv).degree
        if g >= 1:
            n1 += 1
            if first1 is None:
                first1 = a0
            if g >= 2:
                n2 += 1
                if first2 is None:
                    first2 = a0
    return n1, n2, first1, first2


def check_discriminant_loci(
    spec: FamilySpec,
    c1: int | None = None,
    c2: int | None = None,
) -> DiagnosticReport:
    """Count members-with-shift whose polynomial has a repeated root.

    N1 counts pairs (member, a_0) where the shifted polynomial has a root of
    multiplicity >= 2 in the algebraic closure, N2 those with multiplicity
    >= 3 (detected as deg gcd(f, f') >= 1 resp. >= 2, which matches the
    vanishing of the discriminant resp. its first subresultant; a vanishing
    derivative lands the pair in both loci).  Necessary condition: N1 is at
    most c1 * q^(dimV-1) and N2 at most c2 * q^(dimV-2) where dimV = d - m
    counts the shift as a free coordinate; the defaults are Bezout-style,
    c1 = delta * d(d-1) and c2 = delta * (d(d-1))^2 with delta the product
    of constraint degrees.  Counts on the order of the next-higher power of
    q are an outright fail.
    """
    field = spec.field
    d, m, q = spec.d, spec.m, field.q
    dim_v = d - m
    delta = _degree_product(spec.degrees)
    disc_deg = d * (d - 1)
    if c1 is None:
        c1 = delta * disc_deg
    if c2 is None:
        c2 = delta * disc_deg**2
    n1 = n2 = 0
    members = 0
    deriv_zero_pairs = 0
    witness1 = witness2 = None
    prime = field.s == 1
    for member in enumerate_family(spec):
        members += 1
        if prime:
            m1, m2, f1, f2 = _repeated_root_profile_prime(field.p, member.a, d)
        else:
            m1, m2, f1, f2 = _repeated_root_profile_generic(field, member.a, d)
        if m1 == q and m2 == q:
            # shift-independent degeneracy: derivative vanished identically
            asc = [0] + list(reversed(member.a)) + [1]
            if all(field.scalar(j) == 0 or asc[j] == 0 for j in range(1, d + 1)):
                deriv_zero_pairs += q
        n1 += m1
        n2 += m2
        if witness1 is None and f1 is not None:
            witness1 = tuple(member.a) + (f1,)
        if witness2 is None and f2 is not None:
            witness2 = tuple(member.a) + (f2,)
    evidence = {
        "q": q,
        "members": members,
        "pairs": members * q,
        "n1": n1,
        "n2": n2,
        "derivative_zero_pairs": deriv_zero_pairs,
        "c1": c1,
        "c2": c2,
        "dimension": dim_v,
    }
    if members == 0:
        return DiagnosticReport(
            "discriminant-loci",
            INCONCLUSIVE,
            "the family has no members, nothing to count",
            evidence,
        )
    fail_n1 = Fraction(q**dim_v, 2)
    fail_n2 = 2 * c1 * Fraction(q) ** (dim_v - 1)
    evidence["fail_threshold_n1"] = fail_n1
    evidence["fail_threshold_n2"] = fail_n2
    if n1 >= fail_n1:
        return DiagnosticReport(
            "discriminant-loci",
            FAIL,
            f"repeated-root pairs N1={n1} reach full dimension "
            f"(threshold {fail_n1} out of {members * q} pairs)",
            evidence,
            witness1,
        )
    if n2 >= fail_n2:
        return DiagnosticReport(
            "discriminant-loci",
            FAIL,
            f"higher-multiplicity pairs N2={n2} reach codimension one "
            f"(threshold {fail_n2})",
            evidence,
            witness2,
        )
    pass_n1 = Fraction(c1) * Fraction(q) ** (dim_v - 1)
    pass_n2 = Fraction(c2) * Fraction(q) ** (dim_v - 2)
    evidence["pass_threshold_n1"] = pass_n1
    evidence["pass_threshold_n2"] = pass_n2
    if n1 <= pass_n1 and n2 <= pass_n2:
        return DiagnosticReport(
            "discriminant-loci",
            PASS,
            f"N1={n1} and N2={n2} stay within the codimension-one and -two "
            "allowances; necessary conditions only, no codimension certificate.",
            evidence,
        )
    return DiagnosticReport(
        "discriminant-loci",
        INCONCLUSIVE,
        f"N1={n1}, N2={n2} sit between the pass allowances "
        f"({pass_n1}, {pass_n2}) and the fail thresholds",
        evidence,
    )


def run_all(
    spec: FamilySpec,
    extension_degrees=(1, 2),
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> list[DiagnosticReport]:
    """The three checks in a fixed order, as consumed by the CLI."""
    return [
        check_regularity(spec, extension_degrees, point_budget),
        check_regularity_at_infinity(spec, extension_degrees, point_budget),
        check_discriminant_loci(spec),
    ]
