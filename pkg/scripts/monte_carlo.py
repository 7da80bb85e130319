"""Monte Carlo check of the sampler over several seeds.

For each seed draws n variates by inverse transform and reports z-scores of
the sample mean and variance and the Kolmogorov-Smirnov statistic against
the 1% critical value 1.628/sqrt(n).

    python3 scripts/monte_carlo.py --samples 1000000 --seeds 1,2,3,4,5
"""

import argparse

from hhsecant.cli import monte_carlo


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seeds", default="20240601,1,2,3,4")
    args = ap.parse_args()
    n_pass = 0
    seeds = [int(s) for s in args.seeds.split(",")]
    for seed in seeds:
        rep = monte_carlo(args.samples, seed)
        c = rep["checks"]
        n_pass += rep["pass"]
        print(f"seed {seed:>9}: mean z {c['mean']['z']:+6.2f}  variance z {c['variance']['z']:+6.2f}  "
              f"KS {c['ks']['value']:.2e} (crit {c['ks']['reference']:.2e})  {'pass' if rep['pass'] else 'FAIL'}")
    print(f"{n_pass}/{len(seeds)} seeds pass")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
