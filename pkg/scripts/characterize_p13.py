"""Y matrices and frame-forming subgroup orders for a window on Z_13.

The DFT of the window is supported on {0, 2, 3, 8, 11, 12} with random nonzero
values; the seed only changes the values, never the zero pattern.
"""
import argparse

import numpy as np

from primeframes.frames import analyze, characterize_subgroups, y_matrix
from primeframes.spectral import Domain, Signal, idft
from primeframes.wavelet import WaveletSystem
from primeframes.zmod import divisors_of_group_order, find_generator, subgroup_of_order

SUPPORT = [0, 2, 3, 8, 11, 12]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=13)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    ctx = find_generator(13)
    v = np.zeros(13, dtype=complex)
    v[SUPPORT] = rng.normal(size=6) + 1j * rng.normal(size=6)
    y = idft(Signal(ctx, v, Domain.FREQ))

    for M in divisors_of_group_order(ctx):
        sys_ = WaveletSystem(y, subgroup_of_order(ctx, M))
        rep = analyze(sys_)
        print(f"--- M={M} subgroup={sys_.subgroup.elements} frame={rep.is_frame} "
              f"A={rep.lower_bound:.4g} B={rep.upper_bound:.4g}")
        print(y_matrix(sys_).render())

    res = characterize_subgroups(ctx, y)
    print("Lambda:", res.lambda_set)
    print("frame orders:", res.frame_subgroup_orders)
    print("disagreements:", res.disagreements or "none")


if __name__ == "__main__":
    main()
