"""CAS entry point: run a computation job produced by the fixture generator.

Usage: python -m fixturegen.minicas JOB_JSON OUTPUT_JSON

The job file holds {"poly": str, "precision": int}.  Results are written as
JSON; errors exit nonzero with a diagnostic on stderr."""

from __future__ import annotations

import json
import sys

from ..engine.field import FieldError
from .core import compute


def main(argv: list[str]) -> int:
    if len(argv) != 2:
        print("usage: python -m fixturegen.minicas JOB_JSON OUTPUT_JSON", file=sys.stderr)
        return 2
    try:
        with open(argv[0]) as fh:
            job = json.load(fh)
        result = compute(job["poly"], int(job.get("precision", 30)))
    except FieldError as exc:
        print(f"cas error: {exc}", file=sys.stderr)
        return 3
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"cas error: bad job: {exc}", file=sys.stderr)
        return 2
    with open(argv[1], "w") as fh:
        json.dump(result, fh)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
