"""Trapezoid rule on the odds integral: true error, asymptotic estimate, ratios.

G = (pi^2/8) int_0^1 x/(1-x)^3 sech(pi x / (2(1-x))) dx with uniform panels;
the leading error term (pi^2/8)/(12 N^2) should track the true error and the
error should fall by 4 per doubling of N.

    python3 scripts/trapezoid_scaling.py --n 50,100,200,400,800,1600
"""

import argparse

from hhsecant.representations import odds_trapezoid
from hhsecant.special_functions import reference_constants


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="50,100,200,400,800,1600,3200")
    args = ap.parse_args()
    g = reference_constants().catalan
    print(f"{'N':>6}  {'true error':>12}  {'estimate':>12}  {'true/est':>9}  {'ratio':>7}")
    prev = None
    for n in (int(v) for v in args.n.split(",")):
        r = odds_trapezoid(n)
        err = g - r.value
        ratio = f"{prev / err:7.4f}" if prev else " " * 7
        print(f"{n:6d}  {err:12.5e}  {r.error_estimate:12.5e}  {err / r.error_estimate:9.6f}  {ratio}")
        prev = err
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
