"""Accuracy/work sweep over the whole catalog.

For every entry and every tolerance, records value, true error against the
reference constant, error estimate and work. Writes CSV to stdout or --out.

    python3 scripts/convergence_study.py --tols 1e-4,1e-6,1e-8,1e-10 --out sweep.csv
"""

import argparse
import csv
import sys

from hhsecant.representations import CatalogConfig, evaluate_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tols", default="1e-4,1e-6,1e-8,1e-10")
    ap.add_argument("--ids", default=None, help="comma-separated subset of catalog ids")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    tols = [float(t) for t in args.tols.split(",")]
    ids = args.ids.split(",") if args.ids else None

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["id", "tol", "value", "abs_error", "err_estimate", "work", "converged", "elapsed_ms"])
    honest = True
    for tol in tols:
        for eid, t in evaluate_all(CatalogConfig(abs_tol=tol), ids=ids).items():
            r = t.result
            err = abs(r.value - t.entry.reference())
            honest &= (not r.converged) or err <= 10 * max(r.err_estimate, 1e-15)
            w.writerow([eid, tol, repr(r.value), f"{err:.3e}", f"{r.err_estimate:.3e}", r.work, r.converged,
                        f"{t.elapsed_ms:.2f}"])
    if args.out:
        fh.close()
    print(f"error estimates honest (true error <= 10 x estimate): {honest}", file=sys.stderr)
    return 0 if honest else 1


if __name__ == "__main__":
    raise SystemExit(main())
