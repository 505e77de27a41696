"""Translation, modulation and cyclic dilation on C^p, the affine group
W_p = U_p x| Z_p, and wavelet coefficients.

Dilation follows D_m x(k) = x(m_p k) with m_p the inverse of m mod p.  Some
references use x(m k) instead; the two conventions differ by m <-> m_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ContextMismatchError, NotInSubgroupError, NotInvertibleError, ZeroWindowError
from .spectral import DEFAULT_TAU, Domain, Signal, dft, norm2_sq
from .zmod import PrimeContext, Subgroup, mod_inverse


def _idx(p: int) -> np.ndarray:
    return np.arange(p, dtype=np.int64)


def translate(x: Signal, k: int) -> Signal:
    """T_k x(s) = x(s - k)."""
    return x.replace(np.roll(x.values, k % x.p))


def modulate(x: Signal, ell: int) -> Signal:
    """M_l x(s) = exp(-2 pi i l s / p) x(s)."""
    p = x.p
    phase = (ell % p) * _idx(p) % p
    return x.replace(np.exp(-2j * np.pi * phase / p) * x.values)


def dilate(x: Signal, m: int) -> Signal:
    """D_m x(k) = x(m_p k)."""
    p = x.p
    if m % p == 0:
        raise NotInvertibleError(f"dilation by {m} = 0 mod {p}")
    mp = mod_inverse(m % p, p)
    return x.replace(x.values[mp * _idx(p) % p])


class GroupElement(NamedTuple):
    m: int
    k: int


def group_identity() -> GroupElement:
    return GroupElement(1, 0)


def group_mul(g: GroupElement, h: GroupElement, p: int) -> GroupElement:
    """(m, k) x| (m', k') = (m m', k + m k')."""
    return GroupElement(g.m * h.m % p, (g.k + g.m * h.k) % p)


def group_inv(g: GroupElement, p: int) -> GroupElement:
    mp = mod_inverse(g.m, p)
    return GroupElement(mp, mp * (p - g.k) % p)


def group_elements(p: int):
    return [GroupElement(m, k) for m in range(1, p) for k in range(p)]


def act(g: GroupElement, x: Signal) -> Signal:
    """sigma(m, k) x = T_k D_m x."""
    return translate(dilate(x, g.m), g.k)


@dataclass(frozen=True, eq=False)
class WaveletSystem:
    """The family {T_k D_m y : m in subgroup, k in Z_p}."""

    window: Signal
    subgroup: Subgroup

    def __post_init__(self):
        if self.window.p != self.subgroup.ctx.p:
            raise ContextMismatchError("window and subgroup live over different primes")
        if self.window.domain is not Domain.TIME:
            raise ValueError("wavelet system windows are time-domain signals")
        if np.sqrt(norm2_sq(self.window)) <= DEFAULT_TAU:
            raise ZeroWindowError("window is numerically zero")

    @classmethod
    def unchecked(cls, window: Signal, subgroup: Subgroup) -> "WaveletSystem":
        """Skip validation; lets degenerate windows (e.g. y = 0) reach the frame operator."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "window", window)
        object.__setattr__(obj, "subgroup", subgroup)
        return obj

    @property
    def ctx(self) -> PrimeContext:
        return self.subgroup.ctx

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def size(self) -> int:
        return self.subgroup.order * self.p

    def index(self):
        """Enumeration order used by every table: m in sorted subgroup order, then k ascending."""
        return [GroupElement(m, k) for m in self.subgroup.elements for k in range(self.p)]

    def vectors(self) -> np.ndarray:
        """All M*p system vectors stacked as rows, in ``index()`` order."""
        p = self.p
        rows = []
        for m in self.subgroup.elements:
            dy = dilate(self.window, m).values
            for k in range(p):
                rows.append(np.roll(dy, k))
        return np.array(rows) if rows else np.zeros((0, p), dtype=np.complex128)


def system_vector(sys: WaveletSystem, g: GroupElement) -> Signal:
    if g.m % sys.p not in sys.subgroup:
        raise NotInSubgroupError(f"m={g.m} is not in the subgroup {sys.subgroup.elements}")
    return act(g, sys.window)


def _check_x(x: Signal, sys: WaveletSystem):
    if x.p != sys.p:
        raise ContextMismatchError(f"signal over Z_{x.p}, system over Z_{sys.p}")


def coefficient(x: Signal, sys: WaveletSystem, g: GroupElement) -> complex:
    """<x, T_k D_m y> by direct inner product."""
    _check_x(x, sys)
    v = system_vector(sys, g)
    return complex(np.vdot(v.values, x.values))


def coefficient_via_fourier(x: Signal, sys: WaveletSystem, g: GroupElement) -> complex:
    """Same coefficient as sqrt(p) * F(x_hat * conj((D_m y)^))(p - k)."""
    _check_x(x, sys)
    if g.m % sys.p not in sys.subgroup:
        raise NotInSubgroupError(f"m={g.m} is not in the subgroup {sys.subgroup.elements}")
    p = sys.p
    xh = dft(x).values
    dyh = dft(dilate(sys.window, g.m)).values
    prod = Signal(sys.ctx, xh * dyh.conj(), Domain.TIME)
    return complex(np.sqrt(p) * dft(prod).values[(p - g.k) % p])


def all_coefficients(x: Signal, sys: WaveletSystem) -> np.ndarray:
    """Analysis operator: an (M, p) array, row j for ``subgroup.elements[j]``, column k.

    Each entry is an independent inner product, so the table does not depend on
    how rows are scheduled.
    """
    _check_x(x, sys)
    V = sys.vectors()
    return (V.conj() @ x.values).reshape(sys.subgroup.order, sys.p)
