"""Equal-norm Parseval windows by permuting and block-scaling the window's DFT.

Pipeline for a window y and subgroup M of index a:

    y_hat   = dft(y)
    y_hat'  = y_hat o sigma                      (coset-by-coset ordering)
    y_hat'' = R' y_hat'(0)  at 0,  R_t y_hat'(l) on the t-th block of M slots
    y_hat_sigma(sigma(l)) = y_hat''(l)
    y_sigma = idft(y_hat_sigma)

The scales make |y_hat_sigma(0)|^2 = 1/(pM) and give every coset spectral
mass 1/p, which turns S into the identity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatchError, InadmissibleWindowError
from .spectral import DEFAULT_TAU, Domain, Signal, dft, format_signal, idft, nonzero_mask, parse_signal
from .zmod import PrimeContext, Subgroup


@dataclass(frozen=True)
class SigmaPermutation:
    ctx: PrimeContext
    subgroup: Subgroup
    forward: tuple[int, ...]
    inverse: tuple[int, ...]

    def __call__(self, ell: int) -> int:
        return self.forward[ell]


def build_sigma(ctx: PrimeContext, subgroup: Subgroup) -> SigmaPermutation:
    """sigma(0) = 0, sigma(l) = eps^(t + (l - tM - 1) a) with t = floor((l-1)/M)."""
    if subgroup.ctx.p != ctx.p:
        raise ContextMismatchError("subgroup was built over a different prime")
    p, M, a = ctx.p, subgroup.order, subgroup.index
    forward = [0] * p
    for ell in range(1, p):
        t = (ell - 1) // M
        forward[ell] = ctx.power(t + (ell - t * M - 1) * a)
    inverse = [0] * p
    for ell, s in enumerate(forward):
        inverse[s] = ell
    return SigmaPermutation(ctx, subgroup, tuple(forward), tuple(inverse))


@dataclass(frozen=True)
class ScalingSpec:
    """Diagonal blocks of D(M, y): ``R_prime`` on the DC slot, ``R[t]`` on block t."""

    R_prime: float
    R: tuple[float, ...]

    def diagonal(self, M: int) -> np.ndarray:
        """The full length-p diagonal, in sigma-permuted order."""
        return np.concatenate([[self.R_prime], np.repeat(self.R, M)])


def build_scaling(y_hat: Signal, subgroup: Subgroup, tau: float = DEFAULT_TAU) -> ScalingSpec:
    p, M = subgroup.ctx.p, subgroup.order
    if y_hat.p != p:
        raise ContextMismatchError(f"spectrum over Z_{y_hat.p}, subgroup over Z_{p}")
    v = y_hat.values
    nz = nonzero_mask(v, tau)
    if not nz[0]:
        raise InadmissibleWindowError("condition (i) fails: y_hat(0) = 0", condition="i")
    R = []
    for t, coset in enumerate(subgroup.cosets):
        idx = list(coset)
        if not nz[idx].any():
            raise InadmissibleWindowError(
                f"condition (ii) fails: coset t={t} {sorted(idx)} carries no nonzero DFT sample",
                condition="ii", coset=t,
            )
        R.append(1.0 / np.sqrt(p * float(np.sum(np.abs(v[idx]) ** 2))))
    R_prime = 1.0 / (np.sqrt(p * M) * abs(v[0]))
    return ScalingSpec(float(R_prime), tuple(float(r) for r in R))


@dataclass(frozen=True)
class EnpfResult:
    y_hat_prime: Signal
    y_hat_double_prime: Signal
    y_hat_sigma: Signal
    y_sigma: Signal
    scaling: ScalingSpec
    sigma: SigmaPermutation


def construct_enpf(y: Signal, subgroup: Subgroup, tau: float = DEFAULT_TAU) -> EnpfResult:
    """Build the window y_sigma whose wavelet system over ``subgroup`` is an equal-norm Parseval frame."""
    ctx = subgroup.ctx
    if y.p != ctx.p:
        raise ContextMismatchError(f"window over Z_{y.p}, subgroup over Z_{ctx.p}")
    y_hat = dft(y)
    scaling = build_scaling(y_hat, subgroup, tau)
    sigma = build_sigma(ctx, subgroup)
    fwd = np.array(sigma.forward)
    inv = np.array(sigma.inverse)
    yp = y_hat.values[fwd]
    ypp = scaling.diagonal(subgroup.order) * yp
    ys_hat = ypp[inv]
    y_hat_sigma = Signal(ctx, ys_hat, Domain.FREQ)
    return EnpfResult(
        y_hat_prime=Signal(ctx, yp, Domain.FREQ),
        y_hat_double_prime=Signal(ctx, ypp, Domain.FREQ),
        y_hat_sigma=y_hat_sigma,
        y_sigma=idft(y_hat_sigma),
        scaling=scaling,
        sigma=sigma,
    )


_SECTIONS = ("y_hat_prime", "y_hat_double_prime", "y_hat_sigma", "y_sigma")


def format_enpf(res: EnpfResult) -> str:
    """All four signals in the signal text format, each after a ``# name`` line, then the scales."""
    out = []
    for name in _SECTIONS:
        out.append(f"# {name}\n")
        out.append(format_signal(getattr(res, name)))
    out.append("# scales\n")
    out.append(f"Rprime={res.scaling.R_prime!r}\n")
    for t, r in enumerate(res.scaling.R):
        out.append(f"R[{t}]={r!r}\n")
    return "".join(out)


def parse_enpf(text: str, ctx: PrimeContext | None = None) -> dict:
    """Inverse of ``format_enpf``: a dict of the four signals plus ``Rprime`` and ``R``."""
    blocks, name, buf = {}, None, []
    for ln in text.splitlines():
        if ln.startswith("# "):
            if name is not None:
                blocks[name] = buf
            name, buf = ln[2:].strip(), []
        else:
            buf.append(ln)
    if name is not None:
        blocks[name] = buf
    out = {n: parse_signal("\n".join(blocks[n]), ctx) for n in _SECTIONS}
    R, Rp = {}, None
    for ln in blocks.get("scales", []):
        key, _, val = ln.partition("=")
        key = key.strip()
        if key == "Rprime":
            Rp = float(val)
        elif key.startswith("R["):
            R[int(key[2:-1])] = float(val)
    out["Rprime"] = Rp
    out["R"] = tuple(R[t] for t in sorted(R))
    return out
