"""Command line front end.

Subcommands operate on a job file (see the jobs module for the schema):

    eqpoincare validate JOB
    eqpoincare compute JOB --degree N [--mode divisorial|curve]
                           [--character a,b,...] [--format text|machine]
    eqpoincare extract JOB --degree N [--format text|machine]
    eqpoincare check JOB --degree N

Exit codes: 0 success, 1 input or validation failure, 2 a comparison in
``check`` found a difference.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    curve_poincare,
    divisorial_poincare,
    quotient_extract,
    restrict_to_character,
)
from .jobs import Job, JobError, load_job
from .oracle import oracle_poincare
from .powerseries import render_machine, render_text, series_eq_upto
from .strata import OrbitDecl, StratumModel, curve_strata, validate_strata


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqpoincare",
        description=(
            "Equivariant Poincare series of divisorial and curve filtrations "
            "on plane curve germs, from a resolution description."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, degree=True):
        p.add_argument("job", help="path to a JSON job file")
        if degree:
            p.add_argument("--degree", type=int, required=True,
                           help="total degree to compute through")

    p = sub.add_parser("validate", help="run structural and bookkeeping checks")
    add_common(p, degree=False)

    p = sub.add_parser("compute", help="compute a Poincare series")
    add_common(p)
    p.add_argument("--mode", choices=("divisorial", "curve"),
                   default="divisorial")
    p.add_argument("--character", default=None, metavar="a,b,...",
                   help="restrict to one character (comma separated exponents)")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("extract", help="series of the quotient curve via the "
                                       "substitution plan of the job")
    add_common(p)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("check", help="compare every route the job provides")
    add_common(p)
    return parser


def _emit(series, fmt: str, output):
    if fmt == "machine":
        text = json.dumps(render_machine(series), sort_keys=True)
    else:
        text = render_text(series)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_character(raw: str, ring):
    raw = raw.strip()
    parts = [] if raw == "" else raw.split(",")
    try:
        alpha = tuple(int(p) for p in parts)
    except ValueError:
        raise JobError(f"--character {raw!r} is not a comma separated integer list")
    if len(alpha) != ring.num_generators:
        raise JobError(
            f"--character has {len(alpha)} entries, the ring has "
            f"{ring.num_generators} generators"
        )
    return ring.reduce(alpha)


def _curve_series(job: Job, degree: int):
    if job.curve is None:
        raise JobError(f"job {job.name!r} has no curve section")
    adjusted, _ = curve_strata(job.model, job.curve.removed_points)
    return curve_poincare(job.model, job.curve.branches, adjusted, degree)


def _extract_series(job: Job, degree: int):
    if job.extract is None:
        raise JobError(f"job {job.name!r} has no extract section")
    plan = job.extract.plan
    available = job.extract.compute_degree // plan.max_denominator
    if available < degree:
        raise JobError(
            f"extract.compute_degree {job.extract.compute_degree} only reaches "
            f"output degree {available}, need {degree}"
        )
    full = divisorial_poincare(job.model, job.extract.compute_degree)
    return quotient_extract(full, plan).truncate(degree)


def _validation_lines(job: Job):
    """Structural checks beyond what loading already enforced.

    Returns (lines, ok).  Loading has already validated the graph, the
    multiplicity matrix and the stratum characters; here the chi-weighted
    bookkeeping per component orbit is checked, for the divisor and, when
    a curve section is present, for the divisor with strict-transform
    points removed.
    """
    lines = []
    ok = True
    job.model.multiplicities()
    lines.append(
        f"graph: {len(job.model.graph.components)} components, "
        f"multiplicity matrix consistent"
    )
    lines.append(f"strata: {len(job.model.strata)} strata, characters resolve")
    if job.orbits is None:
        lines.append("orbits: none declared, bookkeeping not checked")
        return lines, ok

    def report(tag, model, orbits):
        nonlocal ok
        rep = validate_strata(model, orbits)
        for f in rep.findings:
            ok = False
            lines.append(f"{tag}: {f}")
        for c in rep.checks:
            status = "ok" if c.ok else "MISMATCH"
            lines.append(
                f"{tag} orbit {list(c.components)}: chi sum {c.euler_sum}, "
                f"expected {c.expected} [{status}]"
            )
            if not c.ok:
                ok = False

    report("divisor", job.model, job.orbits)
    if job.curve is not None:
        adjusted, removed_per_component = curve_strata(
            job.model, job.curve.removed_points
        )
        curve_model = StratumModel(
            job.model.graph, job.model.ring, job.model.chosen, adjusted
        )
        curve_orbits = [
            OrbitDecl(
                o.components,
                tuple(r + removed_per_component.get(c, 0)
                      for c, r in zip(o.components, o.removed)),
            )
            for o in job.orbits
        ]
        report("curve", curve_model, curve_orbits)
    return lines, ok


def cmd_validate(args) -> int:
    job = load_job(args.job)
    lines, ok = _validation_lines(job)
    for line in lines:
        print(line)
    if not ok:
        print("validation failed", file=sys.stderr)
        return 1
    print("validation ok")
    return 0


def cmd_compute(args) -> int:
    job = load_job(args.job)
    if args.degree < 0:
        raise JobError("--degree must be >= 0")
    if args.mode == "curve":
        series = _curve_series(job, args.degree)
    else:
        series = divisorial_poincare(job.model, args.degree)
    if args.character is not None:
        alpha = _parse_character(args.character, job.model.ring)
        series = restrict_to_character(series, alpha)
    _emit(series, args.format, args.output)
    return 0


def cmd_extract(args) -> int:
    job = load_job(args.job)
    if args.degree < 0:
        raise JobError("--degree must be >= 0")
    series = _extract_series(job, args.degree)
    _emit(series, args.format, args.output)
    return 0


def cmd_check(args) -> int:
    job = load_job(args.job)
    degree = args.degree
    if degree < 0:
        raise JobError("--degree must be >= 0")
    lines, ok = _validation_lines(job)
    for line in lines:
        print(line)
    if not ok:
        print("check stopped: validation failed", file=sys.stderr)
        return 1

    comparisons = []
    if "divisorial" in job.expected:
        comparisons.append(
            ("divisorial engine vs expected factors",
             lambda: divisorial_poincare(job.model, degree),
             lambda: job.expected_series("divisorial", degree))
        )
    if "curve" in job.expected:
        comparisons.append(
            ("curve engine vs expected factors",
             lambda: _curve_series(job, degree),
             lambda: job.expected_series("curve", degree))
        )
    if "extract" in job.expected:
        comparisons.append(
            ("quotient extraction vs expected factors",
             lambda: _extract_series(job, degree),
             lambda: job.expected_series("extract", degree))
        )
    if job.oracle is not None:
        if job.oracle.sigma_x is not None and job.oracle.sigma_y is not None:
            comparisons.append(
                ("divisorial engine vs monomial count",
                 lambda: divisorial_poincare(job.model, degree),
                 lambda: oracle_poincare(job.oracle, job.model, degree))
            )
        if job.oracle.curve_axes is not None:
            comparisons.append(
                ("curve engine vs monomial count",
                 lambda: _curve_series(job, degree),
                 lambda: oracle_poincare(job.oracle, job.model, degree,
                                         mode="curve"))
            )
    if not comparisons:
        raise JobError(f"job {job.name!r} provides nothing to check against")

    failed = False
    for label, make_got, make_want in comparisons:
        got = make_got()
        want = make_want()
        same, diff = series_eq_upto(got, want, degree)
        if same:
            print(f"check {label}: agree through degree {degree}")
        else:
            failed = True
            exponents, a, b = diff
            print(
                f"check {label}: FIRST DIFFERENCE at t^{tuple(exponents)}: "
                f"{a} vs {b}",
            )
    if failed:
        print("check failed", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits itself on usage errors and --help; fold the error
        # case into the documented input-error code
        return 0 if e.code == 0 else 1
    handlers = {
        "validate": cmd_validate,
        "compute": cmd_compute,
        "extract": cmd_extract,
        "check": cmd_check,
    }
    try:
        return handlers[args.command](args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
