"""The ``plot`` command: sweep CSV in, figure file out.

    plot --csv records.csv --kind error-vs-t --filter noise_kind=T1 --out fig.png

Exit codes: 0 ok, 1 usage, 2 empty selection or bad data, 3 I/O.
"""

from __future__ import annotations

import argparse
import sys

from .errors import EmptySelection, MissingColumn
from .figures import FigureSpec, KIND_ERROR_VS_N, KIND_ERROR_VS_T, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_filters(pairs) -> dict:
    filters = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise EmptySelection(f"filters must be key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        filters[key.strip()] = value.strip()
    return filters


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plot",
                     description="Render figures from reconstruction sweep CSVs.")
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--kind", required=True,
                        choices=(KIND_ERROR_VS_T, KIND_ERROR_VS_N))
    parser.add_argument("--filter", action="append", metavar="KEY=VALUE",
                        help="row filter, repeatable (scenario, noise_kind, "
                             "target_pattern, method, n_qubits, time_constant)")
    parser.add_argument("--out", required=True, help="output image path (png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            input_csv=args.csv,
            figure_kind=args.kind,
            filters=parse_filters(args.filter),
            output=args.out,
        )
        coverage = render(spec)
    except (EmptySelection, MissingColumn) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {coverage.output}")
    for label in sorted(coverage.points, key=str):
        pts = coverage.points[label]
        print(f"  {label}: {len(pts)} grid points ({', '.join(f'{p:g}' for p in pts)})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
