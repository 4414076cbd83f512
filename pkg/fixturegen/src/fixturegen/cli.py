"""fixture-gen command line: compute number-field fixtures for the verifier.

Generate:  fixture-gen --poly "x^4+1" --group V4 --out zeta8.json
Check:     fixture-gen --poly "x^4+1" --group V4 --regenerate-check zeta8.json

Exit codes: 0 success / no diff, 1 regeneration diff, 2 errors (bad input,
CAS not found, non-Galois polynomial, ...)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .generator import CasNotFound, FieldRequest, GenerationError, generate, regenerate_check


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fixture-gen", description=__doc__)
    parser.add_argument("--poly", required=True, help='defining polynomial, e.g. "x^4+1"')
    parser.add_argument("--group", required=True, help="Galois group preset name (e.g. V4, S3)")
    parser.add_argument("--out", help="write the generated fixture here")
    parser.add_argument("--regenerate-check", dest="check", metavar="PATH",
                        help="recompute and diff against an existing fixture")
    parser.add_argument("--precision", type=int, default=30,
                        help="significant digits for numeric fields (default 30)")
    parser.add_argument("--tolerance", type=float, default=1e-12,
                        help="relative tolerance for regeneration diffs")
    parser.add_argument("--cas-python", dest="cas_python",
                        help="interpreter used to run the CAS subprocess")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not args.out and not args.check:
        print("error: need --out or --regenerate-check", file=sys.stderr)
        return 2
    request = FieldRequest(
        poly=args.poly, group=args.group,
        precision=args.precision, cas_python=args.cas_python,
    )
    try:
        if args.check:
            report = regenerate_check(args.check, request, rel_tol=args.tolerance)
            out = {k: report[k] for k in ("existing", "rel_tol", "diffs", "match")}
            json.dump(out, sys.stdout, indent=2)
            sys.stdout.write("\n")
            return 0 if report["match"] else 1
        fixture = generate(request)
        Path(args.out).write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
        return 0
    except CasNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GenerationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
