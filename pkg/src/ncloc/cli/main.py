"""ncloc: batch front end.

    ncloc run JOB [--json PATH] [--seed N] [--bound N] [--verbose]
    ncloc check JOB [--print]
    ncloc suite [--n 3] [--entry mat2] [--reps 25] [--seed 7] [--json PATH]

Exit status: 0 when no task failed, 1 when some task failed, 2 for usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .syntax import JobFile, JobSyntaxError, Task, format_job, parse_job, parse_value
from .tasks import HANDLERS, Report, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def dumps(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def _read_job(path: str) -> JobFile:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_job(text)


def _emit(report: Report, args) -> int:
    text = dumps(report)
    if args.json and args.json != "-":
        Path(args.json).write_text(text, encoding="utf-8")
    if args.json != "-" and (args.verbose or not args.json):
        for t in report.tasks:
            line = f"[{t['status']}] {t['task']}"
            if t.get("error"):
                line += f"  error: {t['error']}"
            elif t.get("witness") is not None:
                line += f"  -> {json.dumps(t['witness'], sort_keys=True)}"
            print(line)
            if args.verbose and t.get("details"):
                print("    " + json.dumps(t["details"], sort_keys=True))
    elif args.json == "-":
        sys.stdout.write(text)
    return EXIT_FAIL if report.any_fail else EXIT_OK


def cmd_run(args) -> int:
    job = _read_job(args.job)
    report = run(job, seed=args.seed, bound=args.bound)
    return _emit(report, args)


def cmd_check(args) -> int:
    job = _read_job(args.job)
    unknown = [t.kind for t in job.tasks if t.kind not in HANDLERS]
    if args.print:
        sys.stdout.write(format_job(job))
    if unknown:
        print(f"unknown task kinds: {', '.join(sorted(set(unknown)))}", file=sys.stderr)
        return EXIT_USAGE
    if parse_job(format_job(job)) != job:
        print("print/parse round trip is not stable", file=sys.stderr)
        return EXIT_FAIL
    if not args.print:
        print(f"ok: {len(job.rings)} rings, {len(job.tasks)} tasks")
    return EXIT_OK


def cmd_suite(args) -> int:
    kw = (("n", parse_value(str(args.n))), ("entry", parse_value(args.entry)),
          ("seed", parse_value(str(args.seed))), ("reps", parse_value(str(args.reps))))
    job = JobFile((), (Task("suite", (parse_value("random"),), kw),))
    return _emit(run(job, seed=args.seed), args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncloc", description="Exact checks for noncommutative localization.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
        sp.add_argument("--verbose", action="store_true", help="print task details")

    r = sub.add_parser("run", help="run every task of a job file")
    r.add_argument("job", help="job file ('-' for stdin)")
    r.add_argument("--seed", type=int, default=0, help="seed for tasks without their own")
    r.add_argument("--bound", type=int, default=None, help="search bound for tasks without their own")
    common(r)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="parse a job file and validate task kinds")
    c.add_argument("job")
    c.add_argument("--print", action="store_true", help="print the canonical form")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("suite", help="run the quasideterminant identity suite on random matrices")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--entry", choices=["mat2", "rational"], default="mat2")
    s.add_argument("--reps", type=int, default=25)
    s.add_argument("--seed", type=int, default=7)
    common(s)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except JobSyntaxError as exc:
        print(f"{getattr(args, 'job', '<job>')}: syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
