"""Length-p complex signals and the unitary prime-length DFT.

The transform is a direct O(p^2) product with a cached twiddle matrix.
Twiddles are computed from the exactly reduced phase index (k*l mod p), never
by repeated multiplication, so every entry carries a single rounding.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ContextMismatchError, SignalFormatError
from .zmod import PrimeContext

DEFAULT_TAU = 1e-9


class Domain(str, Enum):
    TIME = "time"
    FREQ = "freq"

    def flipped(self) -> "Domain":
        return Domain.FREQ if self is Domain.TIME else Domain.TIME


@dataclass(frozen=True, eq=False)
class Signal:
    """A vector in C^p indexed by Z_p.

    ``domain`` is a label only; nothing stops you from applying ``dft`` to a
    frequency-tagged signal.
    """

    ctx: PrimeContext
    values: np.ndarray
    domain: Domain = Domain.TIME

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if v.shape[0] != self.ctx.p:
            raise ValueError(f"signal length {v.shape[0]} != p = {self.ctx.p}")
        if not np.all(np.isfinite(v)):
            raise ValueError("signal entries must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "domain", Domain(self.domain))

    @property
    def p(self) -> int:
        return self.ctx.p

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return self.ctx.p

    def replace(self, values, domain=None) -> "Signal":
        return Signal(self.ctx, values, self.domain if domain is None else domain)

    @classmethod
    def zeros(cls, ctx, domain=Domain.TIME):
        return cls(ctx, np.zeros(ctx.p), domain)

    @classmethod
    def delta(cls, ctx, k, domain=Domain.TIME):
        v = np.zeros(ctx.p, dtype=np.complex128)
        v[k % ctx.p] = 1.0
        return cls(ctx, v, domain)


@lru_cache(maxsize=64)
def _twiddles(p: int) -> np.ndarray:
    idx = np.arange(p, dtype=np.int64)
    phase = np.outer(idx, idx) % p
    w = np.exp(-2j * np.pi * phase / p) / np.sqrt(p)
    w.flags.writeable = False
    return w


def dft_matrix(p: int) -> np.ndarray:
    """Unitary DFT matrix F with F[l, k] = exp(-2 pi i l k / p) / sqrt(p)."""
    return _twiddles(p)


def dft(x: Signal) -> Signal:
    return x.replace(_twiddles(x.p) @ x.values, x.domain.flipped())


def idft(x: Signal) -> Signal:
    return x.replace(_twiddles(x.p).conj() @ x.values, x.domain.flipped())


def _same_ctx(x: Signal, y: Signal):
    if x.ctx.p != y.ctx.p:
        raise ContextMismatchError(f"signals over Z_{x.ctx.p} and Z_{y.ctx.p}")


def norm2_sq(x: Signal) -> float:
    return float(np.vdot(x.values, x.values).real)


def inner(x: Signal, y: Signal) -> complex:
    """<x, y> = sum x(g) conj(y(g)); linear in the first slot."""
    _same_ctx(x, y)
    return complex(np.vdot(y.values, x.values))


def nonzero_mask(values, tau: float = DEFAULT_TAU) -> np.ndarray:
    """Entries counted as nonzero: |v| > tau * max(1, ||v||_inf)."""
    a = np.abs(np.asarray(values))
    scale = max(1.0, float(a.max(initial=0.0)))
    return a > tau * scale


def support_count(x: Signal, tau: float = DEFAULT_TAU) -> int:
    """||x||_0 under the zero tolerance ``tau``."""
    return int(np.count_nonzero(nonzero_mask(x.values, tau)))


# -- text format -------------------------------------------------------------

_HEADER = re.compile(r"^\s*p\s*=\s*(\d+)\s+domain\s*=\s*(time|freq)\s*$")


def format_signal(x: Signal) -> str:
    lines = [f"p={x.p} domain={x.domain.value}"]
    for k, v in enumerate(x.values):
        lines.append(f"{k} {float(v.real)!r} {float(v.imag)!r}")
    return "\n".join(lines) + "\n"


def parse_signal(text: str, ctx: PrimeContext | None = None) -> Signal:
    """Parse the ``index re im`` text format.

    If ``ctx`` is omitted the smallest generator of the header's prime is used.
    """
    from .zmod import find_generator

    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise SignalFormatError("empty signal file")
    m = _HEADER.match(rows[0])
    if not m:
        raise SignalFormatError(f"bad header line: {rows[0]!r}")
    p, domain = int(m.group(1)), Domain(m.group(2))
    if ctx is None:
        ctx = find_generator(p)
    elif ctx.p != p:
        raise ContextMismatchError(f"file declares p={p}, context has p={ctx.p}")
    vals = np.zeros(p, dtype=np.complex128)
    seen = set()
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise SignalFormatError(f"expected 'index re im', got {ln!r}")
        try:
            k, re_, im_ = int(parts[0]), float(parts[1]), float(parts[2])
        except ValueError as exc:
            raise SignalFormatError(f"unparseable line {ln!r}") from exc
        if not 0 <= k < p:
            raise SignalFormatError(f"index {k} outside 0..{p - 1}")
        if k in seen:
            raise SignalFormatError(f"index {k} given twice")
        if not (np.isfinite(re_) and np.isfinite(im_)):
            raise SignalFormatError(f"non-finite value at index {k}")
        seen.add(k)
        vals[k] = complex(re_, im_)
    if len(seen) != p:
        missing = sorted(set(range(p)) - seen)
        raise SignalFormatError(f"missing indices {missing[:5]}{'...' if len(missing) > 5 else ''}")
    return Signal(ctx, vals, domain)


def _parse_complex(tok: str) -> complex:
    t = tok.strip().replace(" ", "").replace("i", "j")
    if not t:
        raise SignalFormatError("empty value")
    try:
        return complex(t)
    except ValueError as exc:
        raise SignalFormatError(f"bad complex value {tok!r}") from exc


def parse_sparse_spec(spec: str, ctx: PrimeContext, domain=Domain.FREQ) -> Signal:
    """Parse an inline ``"0:1, 2:1, 3:0.5-2i"`` spec; unlisted indices are zero."""
    vals = np.zeros(ctx.p, dtype=np.complex128)
    seen = set()
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise SignalFormatError(f"expected index:value, got {item!r}")
        k_s, v_s = item.split(":", 1)
        try:
            k = int(k_s)
        except ValueError as exc:
            raise SignalFormatError(f"bad index {k_s!r}") from exc
        if not 0 <= k < ctx.p:
            raise SignalFormatError(f"index {k} outside 0..{ctx.p - 1}")
        if k in seen:
            raise SignalFormatError(f"index {k} given twice")
        seen.add(k)
        v = _parse_complex(v_s)
        if not np.isfinite(v):
            raise SignalFormatError(f"non-finite value at index {k}")
        vals[k] = v
    return Signal(ctx, vals, domain)
