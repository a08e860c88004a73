"""Families of monic degree-d polynomials cut out by coefficient constraints.

A family member is the coefficient vector (a_{d-1}, ..., a_1), descending,
with the constant coefficient normalized to 0.  Constraint polynomials live
in d-1 variables where variable index 0 is the a_{d-1} slot.  Enumeration
is an odometer over the coefficient space with a_1 moving fastest, each
coordinate in field index order, so member order is deterministic and a
(lo, hi) slice of the linear index space is a clean unit of parallel work.
"""

from typing import NamedTuple

from .errors import ArityMismatch, ParameterRange, RankDeficient, ZeroPolynomial
from .linalg import rank as matrix_rank
from .multipoly import MultiPoly, elementary_symmetric, weighted_compose
from .unipoly import MonicPoly


class FamilyMember(NamedTuple):
    a: tuple  # (a_{d-1}, ..., a_1)


class FamilySpec:
    __slots__ = ("field", "d", "m", "constraints", "degrees", "kind")

    def __init__(self, field, d, m, constraints, kind="custom"):
        if d < 1:
            raise ParameterRange(f"degree d={d} must be positive")
        if m != len(constraints):
            raise ArityMismatch(f"m={m} but {len(constraints)} constraints given")
        for g in constraints:
            if g.field != field:
                raise ArityMismatch("constraint field differs from family field")
            if g.nvars != d - 1:
                raise ArityMismatch(
                    f"constraint has {g.nvars} variables, expected {d - 1}"
                )
            if g.is_zero():
                raise ZeroPolynomial("zero constraint is vacuous; drop it instead")
        self.field = field
        self.d = d
        self.m = m
        self.constraints = tuple(constraints)
        self.degrees = tuple(g.total_degree for g in constraints)
        self.kind = kind

    def space_size(self):
        """Number of candidate coefficient vectors, q^(d-1)."""
        return self.field.q ** (self.d - 1)

    def __repr__(self):
        return (
            f"FamilySpec(kind={self.kind!r}, q={self.field.q}, d={self.d}, "
            f"m={self.m}, degrees={list(self.degrees)})"
        )


def candidate_at(spec, index):
    """Decode a linear index into (a_{d-1}, ..., a_1); a_1 is the fast digit."""
    q = spec.field.q
    width = spec.d - 1
    digits = []
    for _ in range(width):
        index, rem = divmod(index, q)
        digits.append(rem)
    digits.reverse()
    return tuple(digits)


def partition_ranges(total, parts):
    """Split [0, total) into `parts` disjoint covering (lo, hi) ranges."""
    if parts < 1:
        raise ParameterRange(f"need at least one partition, got {parts}")
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def enumerate_family(spec, partition=None):
    """Yield the members of the family in enumeration order.

    `partition` restricts to a (lo, hi) slice of candidate indices; slices
    from partition_ranges are disjoint and covering, so parallel scans see
    each member exactly once.
    """
    constraints = spec.constraints
    total = spec.space_size()
    lo, hi = partition if partition is not None else (0, total)
    if not 0 <= lo <= hi <= total:
        raise ParameterRange(f"partition ({lo}, {hi}) outside [0, {total})")
    for index in range(lo, hi):
        a = candidate_at(spec, index)
        ok = True
        for g in constraints:
            if g.eval(a):
                ok = False
                break
        if ok:
            if __debug__:
                assert all(g.eval(a) == 0 for g in constraints)
            yield FamilyMember(a)


def family_cardinality(spec):
    """|A| by exact enumeration."""
    return sum(1 for _ in enumerate_family(spec))


def family_cardinality_inclusive(spec):
    """Point count with the additive shift a_0 as a free coordinate: |A| * q."""
    return family_cardinality(spec) * spec.field.q


def member_poly(spec, member):
    """The monic polynomial with the member's coefficients and a_0 = 0."""
    return MonicPoly.from_desc(spec.field, list(member.a) + [0])


def linear_family(field, d, m, forms):
    """Family cut out by affine forms of degree 1 in A_{d-1}..A_2.

    The linear parts must have rank m over F_q; the a_1 slot stays free.
    """
    if not 1 <= m <= d - 2:
        raise ParameterRange(f"need 1 <= m <= d-2, got m={m}, d={d}")
    if len(forms) != m:
        raise ArityMismatch(f"m={m} but {len(forms)} forms given")
    a1_slot = d - 2
    matrix = []
    for g in forms:
        if g.nvars != d - 1 or g.field != field:
            raise ArityMismatch("form has wrong variable count or field")
        if g.total_degree != 1:
            raise ParameterRange(f"form of degree {g.total_degree} is not linear")
        row = [0] * (d - 2)
        for exps, c in g.terms.items():
            if sum(exps) == 0:
                continue
            j = exps.index(1)
            if j == a1_slot:
                raise ParameterRange("linear constraints may not involve A1")
            row[j] = c
        matrix.append(row)
    if matrix_rank(field, matrix) < m:
        raise RankDeficient(f"linear forms have rank < m={m}")
    return FamilySpec(field, d, m, forms, kind="linear")


def symmetric_family(field, d, m, s, shapes):
    """Family with constraints S_i(Pi_1, ..., Pi_s), Pi_k the k-th elementary
    symmetric polynomial in the slots A_{d-1}..A_2."""
    if not m <= s <= d - m - 4:
        raise ParameterRange(f"need m <= s <= d-m-4, got m={m}, s={s}, d={d}")
    if len(shapes) != m:
        raise ArityMismatch(f"m={m} but {len(shapes)} shape polynomials given")
    pis = [
        elementary_symmetric(field, d - 2, k).extend_vars(d - 1) for k in range(1, s + 1)
    ]
    constraints = []
    for S in shapes:
        if S.nvars != s:
            raise ArityMismatch(f"shape polynomial has {S.nvars} variables, expected {s}")
        constraints.append(weighted_compose(S, pis))
    return FamilySpec(field, d, m, constraints, kind="symmetric")
