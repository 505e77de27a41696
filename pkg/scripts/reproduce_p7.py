"""Rebuild the p = 7 equal-norm Parseval frame and print every intermediate table."""
import numpy as np

from primeframes.enpf import construct_enpf
from primeframes.frames import frame_operator
from primeframes.spectral import Domain, Signal, idft
from primeframes.wavelet import WaveletSystem
from primeframes.zmod import find_generator, subgroup_of_order


def fmt(values):
    return "  ".join(f"{complex(v).real:+.4f}{complex(v).imag:+.4f}i" for v in values)


def main():
    ctx = find_generator(7)
    H = subgroup_of_order(ctx, 3)
    y = idft(Signal(ctx, [1, 1, 0, 1, 0, 0, 0], Domain.FREQ))
    res = construct_enpf(y, H)
    print(f"p=7 epsilon={ctx.epsilon} subgroup={H.elements} cosets={H.cosets}")
    print("sigma       ", res.sigma.forward)
    print(f"R' = {res.scaling.R_prime:.6f}   R_t = {[round(r, 6) for r in res.scaling.R]}")
    print("y_hat'      ", fmt(res.y_hat_prime.values))
    print("y_hat''     ", fmt(res.y_hat_double_prime.values))
    print("y_hat_sigma ", fmt(res.y_hat_sigma.values))
    print("y_sigma     ", fmt(res.y_sigma.values))
    S = frame_operator(WaveletSystem(res.y_sigma, H))
    print(f"max|S - I| = {np.max(np.abs(S - np.eye(7))):.2e}")


if __name__ == "__main__":
    main()
