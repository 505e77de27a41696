"""Randomized sweep comparing the coset criterion, the closed-form norm
formulas and the brute-force frame operator over small primes."""
import argparse
import time

import numpy as np

from primeframes.frames import (
    analyze, brute_force_energy, frame_criterion, norm_formula_coset, norm_formula_ffs,
)
from primeframes.spectral import Domain, Signal, idft
from primeframes.wavelet import WaveletSystem
from primeframes.zmod import divisors_of_group_order, find_generator, subgroup_of_order


def sparse_window(ctx, rng, density):
    v = np.zeros(ctx.p, dtype=complex)
    mask = rng.random(ctx.p) < density
    if not mask.any():
        mask[rng.integers(ctx.p)] = True
    v[mask] = rng.normal(size=mask.sum()) + 1j * rng.normal(size=mask.sum())
    return idft(Signal(ctx, v, Domain.FREQ))


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13, 17])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    print(f"{'p':>4} {'M':>4} {'frames':>7} {'agree':>7} {'worst rel':>10}")
    t0 = time.perf_counter()
    for p in args.primes:
        ctx = find_generator(p)
        for M in divisors_of_group_order(ctx):
            H = subgroup_of_order(ctx, M)
            frames = agree = 0
            worst = 0.0
            for _ in range(args.trials):
                sys_ = WaveletSystem(sparse_window(ctx, rng, args.density), H)
                crit = frame_criterion(sys_).is_frame
                frames += crit
                agree += crit == analyze(sys_).is_frame
                x = Signal(ctx, rng.normal(size=p) + 1j * rng.normal(size=p))
                a, b, c = norm_formula_ffs(x, sys_), norm_formula_coset(x, sys_), brute_force_energy(x, sys_)
                worst = max(worst, rel(a, b), rel(a, c), rel(b, c))
            print(f"{p:>4} {M:>4} {frames:>7} {agree:>4}/{args.trials:<2} {worst:>10.1e}")
    print(f"elapsed {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
