"""Survey of the unit-invariant cusp fan at infinity over real quadratic fields.

For each squarefree D the fan on X* = d^{-1} is built, subdivided to a smooth
fan, and the cycle of self-intersection numbers -b_i of the resolution is read
off from consecutive rays (r_{i-1} + r_{i+1} = b_i r_i).

    python3 scripts/fan_survey.py --max-D 40 --csv survey.csv
"""
import argparse
import csv
import sys
import time
from functools import cmp_to_key
from math import isqrt

from toroidal import fans
from toroidal.cones import det2
from toroidal.field import QuadraticField, totally_positive_square_units
from toroidal.ideals import inverse_different


def squarefree(n):
    return n > 1 and all(n % (p * p) for p in range(2, isqrt(n) + 1))


def resolution_cycle(fan):
    """The b_i along one period of rays of a smooth fan."""
    n = fans.orbit_counts(fan)[1]
    rays = {c.rays[0] for c in fan.window(-2, 2) if c.dim == 1}
    s = fan.orientation
    order = sorted(rays, key=cmp_to_key(lambda a, b: -s * det2(a, b)))
    start = order.index(fan.anchor)
    out = []
    for i in range(start, start + n):
        prev, r, nxt = order[i - 1], order[i], order[i + 1]
        k = 0 if r[0] else 1
        out.append((prev[k] + nxt[k]) // r[k])
    return out


def survey(max_D):
    rows = []
    for D in range(2, max_D + 1):
        if not squarefree(D):
            continue
        t0 = time.perf_counter()
        F = QuadraticField(D)
        units = totally_positive_square_units(F)
        fan = fans.build_unit_invariant_fan(F, inverse_different(F))
        sub = fans.smooth_subdivide_equivariant(fan)
        cycle = resolution_cycle(sub)
        rows.append({"D": D, "eps0": str(units.fundamental), "eps": str(units.square_generator),
                     "smooth_before": fans.is_smooth_fan(fan),
                     "rays_after": fans.orbit_counts(sub)[1],
                     "cycle": " ".join(map(str, cycle)),
                     "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-D", type=int, default=30)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args(argv)
    rows = survey(args.max_D)
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), delimiter="\t")
    w.writeheader()
    w.writerows(rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            out = csv.DictWriter(fh, fieldnames=list(rows[0]))
            out.writeheader()
            out.writerows(rows)


if __name__ == "__main__":
    main()
