"""Frame analysis of wavelet systems W(y, M x Z_p).

Two independent routes are kept side by side:

* brute force: assemble S = sum v v^* over all M*p system vectors and take its
  extreme eigenvalues with the Jacobi solver;
* closed forms: energy formulas in terms of the DFT of the window, the
  per-coset frame criterion, the coset matrix Y(M, y) and the classification
  of all frame-forming subgroups.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import prod

import numpy as np

from .eigen import jacobi_eigh
from .errors import ZeroWindowError
from .spectral import DEFAULT_TAU, Signal, dft, nonzero_mask, norm2_sq
from .wavelet import WaveletSystem
from .zmod import PrimeContext, Subgroup, divisors_of_group_order, exponent_vector, subgroup_of_order

DEFAULT_FRAME_TOL = 1e-8


# -- brute force ---------------------------------------------------------------

def frame_operator(sys: WaveletSystem) -> np.ndarray:
    """S = sum over (m, k) of v v^*, v = T_k D_m y, as a p x p array."""
    V = sys.vectors()
    return V.T @ V.conj()


def brute_force_energy(x: Signal, sys: WaveletSystem) -> float:
    """sum |<x, T_k D_m y>|^2 by explicit inner products."""
    V = sys.vectors()
    return float(np.sum(np.abs(V.conj() @ x.values) ** 2))


@dataclass(frozen=True)
class FrameReport:
    lower_bound: float
    upper_bound: float
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    is_equal_norm: bool
    redundancy: int
    vector_count: int
    tolerance_used: float

    def to_dict(self) -> dict:
        return asdict(self)


def analyze(sys: WaveletSystem, frame_tol: float = DEFAULT_FRAME_TOL) -> FrameReport:
    """Optimal frame bounds from the spectrum of S.

    Decisions are taken on the system generated by y / ||y||, so ``frame_tol``
    is independent of the window's scale; the reported bounds are rescaled
    back to the original window.
    """
    ny2 = norm2_sq(sys.window)
    unit = WaveletSystem(sys.window.replace(sys.window.values / np.sqrt(ny2)), sys.subgroup)
    lam = jacobi_eigh(frame_operator(unit), vectors=False).eigenvalues
    # S is positive semidefinite; a negative smallest eigenvalue is roundoff
    lo_n, hi_n = max(float(lam[0]), 0.0), float(lam[-1])
    A, B = lo_n * ny2, hi_n * ny2
    is_frame = lo_n > frame_tol
    is_tight = is_frame and abs(lo_n - hi_n) <= frame_tol * hi_n
    is_parseval = is_tight and abs(A - 1.0) <= frame_tol and abs(B - 1.0) <= frame_tol
    norms = np.linalg.norm(sys.vectors(), axis=1)
    is_equal_norm = bool(norms.max() - norms.min() <= frame_tol * norms.max())
    M = sys.subgroup.order
    return FrameReport(
        lower_bound=A, upper_bound=B, is_frame=bool(is_frame), is_tight=bool(is_tight),
        is_parseval=bool(is_parseval), is_equal_norm=is_equal_norm,
        redundancy=M, vector_count=M * sys.p, tolerance_used=frame_tol,
    )


def dual_frame(sys: WaveletSystem) -> np.ndarray:
    """Canonical dual vectors S^{-1} v as rows (convenience, not tuned)."""
    S = frame_operator(sys)
    return np.linalg.solve(S, sys.vectors().T).T


# -- closed forms --------------------------------------------------------------

def gamma(y_hat: np.ndarray, subgroup: Subgroup, ell: int) -> float:
    """gamma_l(y, M) = sum over m in M of |y_hat(m l)|^2."""
    p = subgroup.ctx.p
    return float(sum(abs(y_hat[m * ell % p]) ** 2 for m in subgroup.elements))


def norm_formula_ffs(x: Signal, sys: WaveletSystem) -> float:
    """Three-term energy formula: DC term, subgroup term, gamma-weighted remainder."""
    p, H = sys.p, sys.subgroup
    xh2 = np.abs(dft(x).values) ** 2
    yh = dft(sys.window).values
    yh2 = np.abs(yh) ** 2
    dc = H.order * yh2[0] * xh2[0]
    in_sub = sum(yh2[m] for m in H.elements) * sum(xh2[l] for l in H.elements)
    rest = sum(gamma(yh, H, l) * xh2[l] for l in range(1, p) if l not in H)
    return float(p * (dc + in_sub + rest))


def norm_formula_coset(x: Signal, sys: WaveletSystem) -> float:
    """p (M |x^(0)|^2 |y^(0)|^2 + sum_t (x-mass on H_t)(y-mass on H_t))."""
    p, H = sys.p, sys.subgroup
    xh2 = np.abs(dft(x).values) ** 2
    yh2 = np.abs(dft(sys.window).values) ** 2
    total = H.order * xh2[0] * yh2[0]
    for coset in H.cosets:
        c = list(coset)
        total += xh2[c].sum() * yh2[c].sum()
    return float(p * total)


def frame_spectrum(sys: WaveletSystem) -> np.ndarray:
    """Eigenvalues of S indexed by frequency: S is diagonal in the Fourier basis."""
    p, H = sys.p, sys.subgroup
    yh = dft(sys.window).values
    return np.array([p * (H.order * abs(yh[0]) ** 2 if l == 0 else gamma(yh, H, l)) for l in range(p)])


# -- criterion and Y matrix ----------------------------------------------------

@dataclass(frozen=True)
class CriterionResult:
    """``witnesses[t]`` is some m_t in M with y_hat(eps^t m_t) != 0.

    When the test fails, ``failed_condition`` is ``"i"`` (y_hat(0) = 0) or
    ``"ii"`` and ``failed_coset`` is the first coset with no nonzero sample.
    """

    is_frame: bool
    witnesses: tuple[int, ...] = ()
    failed_condition: str | None = None
    failed_coset: int | None = None

    def __bool__(self):
        return self.is_frame


def _spectrum_criterion(y_hat: np.ndarray, subgroup: Subgroup, tau: float) -> CriterionResult:
    nz = nonzero_mask(y_hat, tau)
    if not nz.any():
        raise ZeroWindowError("window has no nonzero DFT sample")
    if not nz[0]:
        return CriterionResult(False, failed_condition="i")
    base = subgroup.cosets[0]
    witnesses = []
    for t, coset in enumerate(subgroup.cosets):
        hit = next((r for r, u in enumerate(coset) if nz[u]), None)
        if hit is None:
            return CriterionResult(False, tuple(witnesses), failed_condition="ii", failed_coset=t)
        witnesses.append(base[hit])
    return CriterionResult(True, tuple(witnesses))


def frame_criterion(sys: WaveletSystem, tau: float = DEFAULT_TAU) -> CriterionResult:
    """Frame test from the window's DFT alone: y_hat(0) != 0 and every coset hit."""
    return _spectrum_criterion(dft(sys.window).values, sys.subgroup, tau)


@dataclass(frozen=True)
class YMatrix:
    """The a x M array entries[t, r] = y_hat(eps^(t + r a))."""

    entries: np.ndarray
    positions: np.ndarray  # the frequency index eps^(t + r a) behind each entry

    @property
    def shape(self):
        return self.entries.shape

    def nonzero_pattern(self, tau: float = DEFAULT_TAU) -> np.ndarray:
        return nonzero_mask(self.entries, tau).reshape(self.entries.shape)

    def nonzero_rows(self, tau: float = DEFAULT_TAU) -> int:
        return int(np.count_nonzero(self.nonzero_pattern(tau).any(axis=1)))

    def render(self, tau: float = DEFAULT_TAU) -> str:
        mask = self.nonzero_pattern(tau)
        cells = [
            ["·" if not mask[t, r] else _fmt_complex(self.entries[t, r]) for r in range(self.shape[1])]
            for t in range(self.shape[0])
        ]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 5e-5:
        return f"{z.real:.4f}"
    return f"{z.real:.4f}{z.imag:+.4f}i"


def _y_matrix(y_hat: np.ndarray, subgroup: Subgroup) -> YMatrix:
    pos = np.array(subgroup.cosets, dtype=np.int64).reshape(subgroup.index, subgroup.order)
    return YMatrix(entries=y_hat[pos], positions=pos)


def y_matrix(sys: WaveletSystem) -> YMatrix:
    return _y_matrix(dft(sys.window).values, sys.subgroup)


# -- characterization of frame-forming subgroups -------------------------------

@dataclass
class CharacterizationResult:
    """All subgroup orders M for which W(y, M x Z_p) is a frame.

    ``lambda_set`` holds exponent tuples (r_1..r_k) of the indices d = p-1 / M
    that passed the row test; ``audit`` has one row per divisor recording the
    pruning bound, the Y-matrix test and the direct per-subgroup criterion, and
    ``disagreements`` lists any divisor where those routes do not agree.
    """

    p: int
    epsilon: int
    factorization: tuple
    support_size: int
    lambda_set: list[tuple[int, ...]]
    frame_subgroup_orders: list[int]
    witnesses: dict[int, tuple[int, ...]]
    reason: str | None = None
    audit: list[dict] = field(default_factory=list)
    disagreements: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda_set"] = [list(r) for r in self.lambda_set]
        d["factorization"] = [list(f) for f in self.factorization]
        d["witnesses"] = {str(k): list(v) for k, v in self.witnesses.items()}
        return d


def characterize_subgroups(ctx: PrimeContext, y: Signal, tau: float = DEFAULT_TAU) -> CharacterizationResult:
    """Classify every subgroup of U_p by whether it makes y generate a frame.

    Candidate indices d | p-1 are pruned by d <= ||y_hat||_0 - 1 (each of the d
    rows of Y needs its own nonzero sample off 0); survivors are tested by
    counting nonzero rows of Y(<eps^d>, y). Orders of the form
    prod q_i^(alpha_i - r_i + s_i), 0 <= s_i <= r_i, over passing tuples are the
    frame orders.
    """
    if y.p != ctx.p:
        raise ValueError("signal and context use different primes")
    y_hat = dft(y).values
    nz = nonzero_mask(y_hat, tau)
    if not nz.any():
        raise ZeroWindowError("window has no nonzero DFT sample")
    support = int(np.count_nonzero(nz))
    base = dict(p=ctx.p, epsilon=ctx.epsilon, factorization=ctx.factorization, support_size=support)
    if not nz[0]:
        return CharacterizationResult(
            **base, lambda_set=[], frame_subgroup_orders=[], witnesses={},
            reason="condition (i) fails: y_hat(0) = 0, so no subgroup yields a frame",
        )
    bound = support - 1
    qs = [q for q, _ in ctx.factorization]
    alphas = [a for _, a in ctx.factorization]

    lambda_set = []
    row_pass = {}
    for d in divisors_of_group_order(ctx):
        if d > bound:
            continue
        sub = subgroup_of_order(ctx, ctx.order // d)
        Y = _y_matrix(y_hat, sub)
        row_pass[d] = Y.nonzero_rows(tau) == d
        if row_pass[d]:
            lambda_set.append(exponent_vector(ctx, d))

    orders = set()
    for rs in lambda_set:
        # s_i ranges over 0..r_i
        for ss in np.ndindex(*[r + 1 for r in rs]):
            orders.add(prod(q ** (a - r + s) for q, a, r, s in zip(qs, alphas, rs, ss)))
    frame_orders = sorted(orders)

    witnesses, audit, disagreements = {}, [], []
    for d in divisors_of_group_order(ctx):
        M = ctx.order // d
        direct = _spectrum_criterion(y_hat, subgroup_of_order(ctx, M), tau)
        listed = M in orders
        if direct.is_frame:
            witnesses[M] = direct.witnesses
        audit.append({
            "index": d, "order": M, "within_bound": d <= bound,
            "matrix_test": row_pass.get(d), "listed": listed, "criterion": direct.is_frame,
        })
        if listed != direct.is_frame or (row_pass.get(d) is not None and row_pass[d] != direct.is_frame):
            disagreements.append(M)
    return CharacterizationResult(
        **base, lambda_set=lambda_set, frame_subgroup_orders=frame_orders,
        witnesses={M: witnesses[M] for M in frame_orders if M in witnesses},
        audit=audit, disagreements=disagreements,
    )
