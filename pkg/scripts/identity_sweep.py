#!/usr/bin/env python3
"""Sweep the quadratic identity D^2 = a*I + b*D + c*U across correspondence sizes.

For each subset correspondence (size parameter n) and each square-grid
correspondence (side m), discover the identity coefficients exactly, then try
to extract a consistent exponent q (q = 2 - b with a = q - 1).  Families that
admit the identity but no consistent exponent are shown with the reason: this
is how one sees at a glance that only the 3x3 grid works while every subset
size does.

Usage:
    python3 scripts/identity_sweep.py [--max-n 12] [--max-m 8]
"""

import argparse

from prymtyurin.correspondence import (
    ExponentExtractionError,
    build_grid_matrix,
    build_subset_matrix,
    discover_identity,
    exponent_from_identity,
)
from prymtyurin.report import rational_json


def describe(corr):
    ident = discover_identity(corr)
    if ident is None:
        return "-", "-", "-", "-", "no quadratic identity"
    a, b, c = (rational_json(x) for x in ident.coefficients())
    try:
        res = exponent_from_identity(ident)
        return a, b, c, res.q, "ok"
    except ExponentExtractionError as exc:
        return a, b, c, "-", str(exc)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=12, help="largest subset size")
    parser.add_argument("--max-m", type=int, default=8, help="largest grid side")
    args = parser.parse_args()

    header = f"{'family':<14}{'points':>7}{'bideg':>7}{'a':>6}{'b':>6}{'c':>6}{'q':>4}  note"
    print(header)
    print("-" * len(header))
    for n in range(2, args.max_n + 1):
        corr = build_subset_matrix(n)
        a, b, c, q, note = describe(corr)
        print(
            f"{'subset n=' + str(n):<14}{corr.size:>7}{corr.bidegree:>7}"
            f"{a:>6}{b:>6}{c:>6}{q:>4}  {note}"
        )
    for m in range(2, args.max_m + 1):
        corr = build_grid_matrix(m)
        a, b, c, q, note = describe(corr)
        print(
            f"{'grid m=' + str(m):<14}{corr.size:>7}{corr.bidegree:>7}"
            f"{a:>6}{b:>6}{c:>6}{q:>4}  {note}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
