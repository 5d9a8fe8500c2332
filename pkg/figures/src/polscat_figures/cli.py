"""``render --recipe <id> --in <csv> --out <dir>`` entry point."""

from __future__ import annotations

import argparse
import sys
import traceback

from .io import SchemaError
from .recipes import RECIPES
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render a polscat CSV into SVG + PNG figures."
    )
    parser.add_argument("--recipe", required=True, choices=sorted(RECIPES))
    parser.add_argument("--in", dest="input", required=True, help="input CSV path")
    parser.add_argument("--out", default=".", help="output directory")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        result = render(args.recipe, args.input, args.out)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2
    for path in result.outputs:
        print(f"wrote {path}")
    if result.markers:
        marks = ", ".join(repr(m) for m in result.markers)
        print(f"markers at {marks}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
