"""Config-driven experiment runner.

Pipeline per run: build the configured field and family, scan the family
for the root-count histogram (optionally partitioned across worker
processes), walk the prefix-equation DFS for the tuple counts, check every
exact cross-identity (these are theorems, so a mismatch aborts the run),
run the enumeration oracles that fit in the configured budget, evaluate the
headline allowance, attach diagnostics, and emit a CSV row plus a
human-readable summary.

Worker processes only return partial sums; the coordinator merges them in
slice order, so results are identical for any worker count.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import factorial
from pathlib import Path

from .bounds import (
    average_bound_applicable,
    average_error_bound,
    average_error_bound_linear,
    average_error_bound_symmetric,
    interp_count_error_bound,
)
from .config import ExperimentConfig, build_family, parse_config, validate_config
from .diagnostics import run_all
from .engine import (
    ScanResult,
    count_interpolating_sets_direct,
    generic_density,
    inclusion_exclusion_check,
    scan_family,
    summarize,
)
from .errors import (
    BudgetExceeded,
    EmptyFamily,
    IdentityViolation,
    ParseError,
    ValidationError,
)
from .exprs import parse_poly_expr  # noqa: F401  constraint-ingestion entry point
from .families import linear_family, partition_ranges
from .ffield import field_new
from .incidence import (
    collect,
    count_distinct_tuples_oracle,
    count_hermite_tuples_oracle,
    hermite_profile,
)
from .report import (
    ExperimentReport,
    error_over_sqrt_q,
    format_count,
    format_magnitude,
    format_rational,
    report_columns,
)


def _scan_slice(args):
    """Worker body: histogram plus DFS profile for one candidate slice."""
    spec, r_max, index, candidate_range = args
    scan = scan_family(spec, candidate_range)
    star, coinc = hermite_profile(spec, r_max, partition=candidate_range)
    return index, scan, star, coinc


def _gather(spec, r_max, workers):
    if workers == 1:
        scan = scan_family(spec)
        star, coinc = hermite_profile(spec, r_max)
        return scan, star, coinc
    ranges = partition_ranges(spec.space_size(), workers)
    jobs = [(spec, r_max, i, ranges[i]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = sorted(pool.map(_scan_slice, jobs), key=lambda t: t[0])
    scan = ScanResult.empty(spec.d)
    star = [0] * r_max
    coinc = [0] * r_max
    for _, part, st, co in parts:
        scan = scan.merge(part)
        star = [a + b for a, b in zip(star, st)]
        coinc = [a + b for a, b in zip(coinc, co)]
    return scan, star, coinc


def _check_identities(family_id, scan, star, coinc, r_max):
    """Exact Lemma equalities; a failure is an implementation bug."""
    d = scan.d
    dump = f"family {family_id}, histogram {scan.profile}"
    avg = Fraction(scan.sum_values, scan.member_count)
    alternating = Fraction(
        sum(
            scan.interpolating_count(r) * (1 if r % 2 else -1)
            for r in range(1, d + 1)
        ),
        scan.member_count,
    )
    if avg != alternating:
        raise IdentityViolation(
            f"inclusion-exclusion mismatch: mean {avg} != alternating sum "
            f"{alternating} ({dump})"
        )
    for r in range(1, r_max + 1):
        s_r = scan.interpolating_count(r)
        distinct = scan.distinct_tuple_count(r)
        if factorial(r) * s_r != distinct:
            raise IdentityViolation(
                f"orbit identity mismatch at r={r}: r!*S_r = "
                f"{factorial(r) * s_r} != distinct tuples {distinct} ({dump})"
            )
        if distinct != star[r - 1] - coinc[r - 1]:
            raise IdentityViolation(
                f"tuple subtraction mismatch at r={r}: distinct {distinct} != "
                f"prefix-count {star[r - 1]} - coincident {coinc[r - 1]} ({dump})"
            )


def _oracle_stages(spec, scan, star, r_max, budget):
    """Independent literal enumerations, skipped with a note over budget."""
    notes = []
    for r in range(1, min(r_max, 2) + 1):
        try:
            direct = count_interpolating_sets_direct(spec, r, budget)
            if direct != scan.interpolating_count(r):
                raise IdentityViolation(
                    f"direct subset oracle disagrees at r={r}: "
                    f"{direct} != {scan.interpolating_count(r)}"
                )
            notes.append(f"oracle S_{r}: direct subset enumeration agreed ({direct})")
        except BudgetExceeded as exc:
            notes.append(f"oracle S_{r}: skipped, {exc}")
        try:
            tuples = count_distinct_tuples_oracle(spec, r, budget)
            if tuples != scan.distinct_tuple_count(r):
                raise IdentityViolation(
                    f"distinct tuple oracle disagrees at r={r}: "
                    f"{tuples} != {scan.distinct_tuple_count(r)}"
                )
            notes.append(f"oracle tuples_{r}: raw enumeration agreed ({tuples})")
        except BudgetExceeded as exc:
            notes.append(f"oracle tuples_{r}: skipped, {exc}")
        try:
            herm = count_hermite_tuples_oracle(spec, r, budget)
            if herm != star[r - 1]:
                raise IdentityViolation(
                    f"division oracle disagrees at r={r}: {herm} != {star[r - 1]}"
                )
            notes.append(f"oracle prefix_{r}: divisibility enumeration agreed ({herm})")
        except BudgetExceeded as exc:
            notes.append(f"oracle prefix_{r}: skipped, {exc}")
    return notes


def run_experiment(config: ExperimentConfig, tamper_hook=None) -> ExperimentReport:
    """Execute the full pipeline for one config; see the module docstring.

    tamper_hook is a test seam: it receives the merged scan and may return a
    replacement, letting tests prove that a corrupted count aborts the run.
    """
    spec = build_family(config)
    r_max = config.effective_r_max
    d, m, q = config.d, config.m, config.q
    family_id = config.family_id()
    scan, star, coinc = _gather(spec, r_max, config.workers)
    if tamper_hook is not None:
        scan = tamper_hook(scan) or scan
    if scan.member_count == 0:
        raise EmptyFamily(f"family {family_id} has no members over F_{q}")
    _check_identities(family_id, scan, star, coinc, r_max)
    summary = summarize(spec, r_max, scan=scan)
    notes = _oracle_stages(spec, scan, star, r_max, config.oracle_budget)

    mu = generic_density(d)
    mu_q = mu * q
    deviation = abs(summary.average - mu_q)
    degrees = spec.degrees
    if config.kind == "linear" and (d * (d - 1)) % config.p != 0:
        bound = average_error_bound_linear(d, q)
        bound_kind = "linear"
    elif config.kind == "symmetric":
        bound = average_error_bound_symmetric(d, m, degrees, q)
        bound_kind = "symmetric"
    else:
        bound = average_error_bound(d, m, degrees, q)
        bound_kind = "general"
    satisfied = bound.covers(deviation)
    applicable = average_bound_applicable(d, m, degrees, q)

    diagnostics = run_all(spec, tuple(config.diag_extensions))

    columns = report_columns(r_max)
    row = {
        "q": str(q),
        "p": str(config.p),
        "s": str(config.s),
        "d": str(d),
        "m": str(m),
        "family_id": family_id,
        "family_size": str(scan.member_count),
        "avg_value_set_num": str(summary.average.numerator),
        "avg_value_set_den": str(summary.average.denominator),
        "avg_value_set": format_rational(summary.average),
        "mu_d_q_num": str(mu_q.numerator),
        "mu_d_q_den": str(mu_q.denominator),
        "mu_d_q": format_rational(mu_q),
        "deviation_num": str(deviation.numerator),
        "deviation_den": str(deviation.denominator),
        "deviation": format_rational(deviation),
        "error_over_sqrt_q": error_over_sqrt_q(deviation, q),
        "main_bound": format_magnitude(bound),
        "bound_satisfied": "true" if satisfied else "false",
        "diagnostics": ";".join(f"{rep.check}={rep.status}" for rep in diagnostics),
    }
    for r in range(1, r_max + 1):
        row[f"S_{r}"] = format_count(summary.interpolating_counts[r])
        row[f"gamma_identity_{r}"] = "ok"

    lines = [
        f"experiment {family_id}",
        f"field: q={q} (p={config.p}, s={config.s})",
        f"family: kind={config.kind} d={d} m={m} members={scan.member_count}",
    ]
    exprs = config.shapes if config.kind == "symmetric" else config.forms
    lines.append("constraints: " + "; ".join(exprs))
    lines.append(
        f"average value set: {summary.average.numerator}/{summary.average.denominator}"
        f" = {format_rational(summary.average)}"
    )
    lines.append(
        f"reference density: mu_{d}*q = {mu_q.numerator}/{mu_q.denominator}"
        f" = {format_rational(mu_q)}"
    )
    lines.append(
        f"deviation: {format_rational(deviation)}, error/sqrt(q) = "
        f"{error_over_sqrt_q(deviation, q)}"
    )
    lines.append(
        f"allowance ({bound_kind}): {format_magnitude(bound)}, satisfied: "
        f"{'yes' if satisfied else 'no'}, q-threshold applicable: "
        f"{'yes' if applicable else 'no'}"
    )
    for r in range(1, r_max + 1):
        s_r = summary.interpolating_counts[r]
        target = Fraction(q ** (d - m), factorial(r))
        gap = abs(Fraction(s_r) - target)
        allowance = interp_count_error_bound(d, m, degrees, r, q)
        status = "ok" if gap <= allowance else "exceeded"
        lines.append(
            f"S_{r} = {s_r}: |S_{r} - q^{d - m}/{r}!| = {format_rational(gap)}"
            f" vs allowance {format_rational(allowance)}: {status}"
        )
    for r in range(1, r_max + 1):
        lines.append(
            f"tuples r={r}: distinct={scan.distinct_tuple_count(r)} "
            f"prefix={star[r - 1]} coincident={coinc[r - 1]}, identity ok"
        )
    lines.extend(notes)
    for rep in diagnostics:
        lines.extend(rep.render().splitlines())

    report = ExperimentReport(columns, row, lines)
    if config.csv_path:
        Path(config.csv_path).write_text(report.to_csv(), encoding="utf-8", newline="")
    if config.summary_path:
        Path(config.summary_path).write_text(
            report.to_summary(), encoding="utf-8", newline=""
        )
    return report


def seed_check() -> int:
    """Built-in identity suite on a tiny fixed family; 0 on success."""
    field = field_new(5)
    a2 = parse_poly_expr("A2", field, 2, {"A2": 0, "A1": 1})
    spec = linear_family(field, 3, 1, [a2])
    try:
        if [generic_density(k) for k in range(1, 5)] != [
            Fraction(1),
            Fraction(1, 2),
            Fraction(2, 3),
            Fraction(5, 8),
        ]:
            raise IdentityViolation("generic density table is wrong")
        scan = scan_family(spec)
        if scan.interpolating_count(1) != scan.member_count * field.q:
            raise IdentityViolation("S_1 != |A| * q")
        _, exact = inclusion_exclusion_check(spec, scan=scan)
        if not exact:
            raise IdentityViolation("inclusion-exclusion failed on the seed family")
        collect(spec, 3, scan=scan)
    except IdentityViolation as exc:
        print(f"seed check failed: {exc}", file=sys.stderr)
        return 3
    print("seed check: identities hold on the built-in family")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="valuesets",
        description="average value-set experiments over small finite fields",
    )
    parser.add_argument(
        "--seed-check",
        action="store_true",
        help="run the built-in identity suite (also available before `run`)",
    )
    sub = parser.add_subparsers(dest="command")
    runp = sub.add_parser("run", help="execute an experiment config")
    runp.add_argument("config_path", help="path to a sectioned key-value config")
    runp.add_argument("--workers", type=int, help="override run.workers")
    runp.add_argument("--csv", help="override output.csv")
    runp.add_argument("--summary", help="override output.summary")
    runp.add_argument(
        "--oracle-budget", type=int, dest="oracle_budget", help="override run.oracle_budget"
    )
    runp.add_argument("--seed-check", action="store_true", dest="seed_check")
    args = parser.parse_args(argv)

    if args.command is None:
        if args.seed_check:
            return seed_check()
        parser.print_help()
        return 2

    if args.seed_check:
        rc = seed_check()
        if rc:
            return rc
    try:
        config = parse_config(Path(args.config_path).read_text(encoding="utf-8"))
        if args.workers is not None:
            config.workers = args.workers
        if args.csv is not None:
            config.csv_path = args.csv
        if args.summary is not None:
            config.summary_path = args.summary
        if args.oracle_budget is not None:
            config.oracle_budget = args.oracle_budget
        validate_config(config)
    except (ParseError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_experiment(config)
    except IdentityViolation as exc:
        print(f"IDENTITY VIOLATION (implementation bug): {exc}", file=sys.stderr)
        return 3
    except EmptyFamily as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    sys.stdout.write(report.to_summary())
    return 0


if __name__ == "__main__":
    sys.exit(main())
