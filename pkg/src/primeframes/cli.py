"""Command-line front end.

Exit codes: 0 success (or "is a frame"), 2 bad input, 3 mathematically
negative result (not a frame, inadmissible window, no frame-forming subgroup).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .enpf import construct_enpf, format_enpf
from .errors import InadmissibleWindowError, PrimeFramesError
from .frames import (
    DEFAULT_FRAME_TOL, analyze, brute_force_energy, characterize_subgroups, frame_criterion,
    frame_operator, y_matrix,
)
from .spectral import DEFAULT_TAU, Domain, Signal, format_signal, idft, norm2_sq, parse_signal, parse_sparse_spec
from .wavelet import WaveletSystem
from .zmod import divisors_of_group_order, find_generator, subgroup_of_order

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 2, 3
SCHEMA = 1
SPECTRAL_VERIFY_MAX_P = 31


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    p: int | None = None
    subgroup_order: int | None = None
    window_path: str | None = None
    y_hat_spec: str | None = None
    tau: float = DEFAULT_TAU
    frame_tau: float = DEFAULT_FRAME_TOL
    output: str | None = None
    format: str = "text"
    seed: int = 0
    spectral: bool = False
    verify: bool = False

    def validate(self):
        if not (self.tau > 0 and self.frame_tau > 0):
            raise InputError("tolerances must be positive")

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        cfg = cls(
            p=ns.p, subgroup_order=getattr(ns, "order", None), window_path=ns.window,
            y_hat_spec=ns.y_hat, tau=ns.tol, frame_tau=ns.frame_tol, output=ns.output,
            format=ns.format, seed=ns.seed, spectral=getattr(ns, "spectral", False),
            verify=getattr(ns, "verify", False),
        )
        cfg.validate()
        return cfg


def load_window(cfg: RunConfig):
    """Return (ctx, time-domain window) from --window or --y-hat."""
    if (cfg.window_path is None) == (cfg.y_hat_spec is None):
        raise InputError("give exactly one of --window FILE or --y-hat SPEC")
    if cfg.window_path is not None:
        text = Path(cfg.window_path).read_text()
        ctx = find_generator(cfg.p) if cfg.p is not None else None
        sig = parse_signal(text, ctx)
        ctx = sig.ctx
    else:
        if cfg.p is None:
            raise InputError("--y-hat requires --p")
        ctx = find_generator(cfg.p)
        sig = parse_sparse_spec(cfg.y_hat_spec, ctx, Domain.FREQ)
    y = idft(sig) if sig.domain is Domain.FREQ else sig
    if np.sqrt(norm2_sq(y)) <= cfg.tau:
        raise InputError("window is zero")
    return ctx, y


def _subgroup(ctx, cfg):
    if cfg.subgroup_order is None:
        raise InputError("--order is required")
    return subgroup_of_order(ctx, cfg.subgroup_order)


def _cplx(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _emit(cfg: RunConfig, text: str, payload: dict, out=None):
    out = out or sys.stdout
    if cfg.format == "json":
        body = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if cfg.output:
        Path(cfg.output).write_text(body)
    else:
        out.write(body)


# -- commands ----------------------------------------------------------------

def cmd_generator(cfg: RunConfig, out=None) -> int:
    ctx = find_generator(cfg.p)
    divs = divisors_of_group_order(ctx)
    fac = " * ".join(f"{q}^{a}" if a > 1 else str(q) for q, a in ctx.factorization) or "1"
    text = f"p={ctx.p}\nepsilon={ctx.epsilon}\np-1={ctx.order} = {fac}\ndivisors: {' '.join(map(str, divs))}\n"
    payload = {
        "command": "generator", "p": ctx.p, "epsilon": ctx.epsilon,
        "factorization": [list(f) for f in ctx.factorization], "divisors": divs,
    }
    _emit(cfg, text, payload, out)
    return EXIT_OK


def cmd_frame_check(cfg: RunConfig, out=None) -> int:
    ctx, y = load_window(cfg)
    H = _subgroup(ctx, cfg)
    sys_ = WaveletSystem(y, H)
    crit = frame_criterion(sys_, cfg.tau)
    Y = y_matrix(sys_)
    lines = [
        f"p={ctx.p} epsilon={ctx.epsilon} order={H.order} index={H.index} tau={cfg.tau!r}",
        f"criterion: {'frame' if crit.is_frame else 'not a frame'}",
    ]
    if crit.is_frame:
        lines.append("witnesses: " + " ".join(f"t={t}:m={m}" for t, m in enumerate(crit.witnesses)))
    elif crit.failed_condition == "i":
        lines.append("failed: condition (i), y_hat(0) = 0")
    else:
        lines.append(f"failed: condition (ii), coset t={crit.failed_coset} has no nonzero sample")
    lines.append(f"Y matrix ({H.index} x {H.order}), nonzero rows {Y.nonzero_rows(cfg.tau)}/{H.index}:")
    lines.append(Y.render(cfg.tau))
    payload = {
        "command": "frame-check", "p": ctx.p, "epsilon": ctx.epsilon, "order": H.order, "index": H.index,
        "tau": cfg.tau, "is_frame": crit.is_frame, "witnesses": list(crit.witnesses),
        "failed_condition": crit.failed_condition, "failed_coset": crit.failed_coset,
        "y_matrix": {
            "positions": Y.positions.tolist(),
            "entries": [[_cplx(z) for z in row] for row in Y.entries],
            "nonzero": Y.nonzero_pattern(cfg.tau).tolist(),
            "nonzero_rows": Y.nonzero_rows(cfg.tau),
        },
    }
    if cfg.spectral:
        rep = analyze(sys_, cfg.frame_tau)
        agree = rep.is_frame == crit.is_frame
        lines.append("spectral: " + " ".join(f"{k}={v!r}" for k, v in rep.to_dict().items()))
        lines.append(f"spectral agrees with criterion: {'yes' if agree else 'NO'}")
        payload["report"] = rep.to_dict()
        payload["spectral_agrees"] = agree
    _emit(cfg, "\n".join(lines), payload, out)
    return EXIT_OK if crit.is_frame else EXIT_NEGATIVE


def cmd_enpf(cfg: RunConfig, out=None, err=None) -> int:
    err = err or sys.stderr
    ctx, y = load_window(cfg)
    H = _subgroup(ctx, cfg)
    try:
        res = construct_enpf(y, H, cfg.tau)
    except InadmissibleWindowError as exc:
        err.write(f"inadmissible window: {exc}\n")
        return EXIT_NEGATIVE
    verify = None
    if cfg.verify:
        sys_ = WaveletSystem(res.y_sigma, H)
        dev = float(np.abs(frame_operator(sys_) - np.eye(ctx.p)).max())
        rng = np.random.default_rng(cfg.seed)
        worst = 0.0
        for _ in range(20):
            x = Signal(ctx, rng.normal(size=ctx.p) + 1j * rng.normal(size=ctx.p))
            worst = max(worst, abs(brute_force_energy(x, sys_) - norm2_sq(x)) / norm2_sq(x))
        verify = {"max_abs_S_minus_I": dev, "max_rel_energy_error": worst, "trials": 20, "seed": cfg.seed}

    if cfg.output and cfg.format == "text":
        outdir = Path(cfg.output)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "enpf.txt").write_text(format_enpf(res))
        (outdir / "y_sigma.txt").write_text(format_signal(res.y_sigma))
        (outdir / "y_hat_sigma.txt").write_text(format_signal(res.y_hat_sigma))
        summary = [f"wrote {outdir / n}" for n in ("enpf.txt", "y_sigma.txt", "y_hat_sigma.txt")]
        if verify:
            summary.append(f"verify: max|S - I| = {verify['max_abs_S_minus_I']:.3e}")
        (out or sys.stdout).write("\n".join(summary) + "\n")
        return EXIT_OK

    text = format_enpf(res)
    if verify:
        text += (f"# verify\nmax|S-I|={verify['max_abs_S_minus_I']!r}\n"
                 f"max_rel_energy_error={verify['max_rel_energy_error']!r}\n")
    payload = {
        "command": "enpf", "p": ctx.p, "epsilon": ctx.epsilon, "order": H.order,
        "sigma": list(res.sigma.forward), "Rprime": res.scaling.R_prime, "R": list(res.scaling.R),
        **{name: [_cplx(z) for z in getattr(res, name).values]
           for name in ("y_hat_prime", "y_hat_double_prime", "y_hat_sigma", "y_sigma")},
    }
    if verify:
        payload["verify"] = verify
    _emit(cfg, text, payload, out)
    return EXIT_OK


def cmd_characterize(cfg: RunConfig, out=None) -> int:
    ctx, y = load_window(cfg)
    res = characterize_subgroups(ctx, y, cfg.tau)
    lines = [f"p={ctx.p} epsilon={ctx.epsilon} ||y_hat||_0={res.support_size}"]
    payload = {"command": "characterize", **res.to_dict()}
    if res.reason:
        lines.append(f"no frame-forming subgroup: {res.reason}")
        _emit(cfg, "\n".join(lines), payload, out)
        return EXIT_NEGATIVE
    lines.append("Lambda: " + " ".join("(" + ",".join(map(str, r)) + ")" for r in res.lambda_set))
    lines.append("frame orders: " + " ".join(map(str, res.frame_subgroup_orders)))
    for M, w in res.witnesses.items():
        lines.append(f"  order {M}: witnesses " + " ".join(f"t={t}:m={m}" for t, m in enumerate(w)))
    if res.disagreements:
        lines.append("WARNING: routes disagree for orders " + " ".join(map(str, res.disagreements)))
    if cfg.verify:
        rows = []
        for d in divisors_of_group_order(ctx):
            H = subgroup_of_order(ctx, ctx.order // d)
            sys_ = WaveletSystem(y, H)
            crit = frame_criterion(sys_, cfg.tau).is_frame
            spec = analyze(sys_, cfg.frame_tau).is_frame if ctx.p <= SPECTRAL_VERIFY_MAX_P else None
            listed = H.order in res.frame_subgroup_orders
            ok = listed == crit and (spec is None or spec == crit)
            rows.append({"order": H.order, "listed": listed, "criterion": crit, "spectral": spec, "agrees": ok})
        bad = [r["order"] for r in rows if not r["agrees"]]
        lines.append(f"verify: {len(rows)} subgroups checked, disagreements: {bad if bad else 'none'}")
        payload["verify"] = rows
    _emit(cfg, "\n".join(lines), payload, out)
    return EXIT_OK if res.frame_subgroup_orders else EXIT_NEGATIVE


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primeframes", description="Finite wavelet frames over Z_p.")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="prime modulus (taken from the file header with --window)")
    common.add_argument("--window", metavar="FILE", help="signal file, time or freq domain")
    common.add_argument("--y-hat", metavar="SPEC", help='sparse DFT, e.g. "0:1, 1:1, 3:1"')
    common.add_argument("--tol", type=float, default=DEFAULT_TAU, help="zero tolerance for DFT samples")
    common.add_argument("--frame-tol", type=float, default=DEFAULT_FRAME_TOL,
                        help="threshold on the smallest eigenvalue of S")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", help="output file (a directory for enpf text output)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generator", parents=[common], help="smallest primitive root and divisors of p-1")
    g.add_argument("prime", type=int, nargs="?")

    fc = sub.add_parser("frame-check", parents=[common], help="frame test for one subgroup")
    fc.add_argument("--order", type=int, help="subgroup order M, a divisor of p-1")
    fc.add_argument("--spectral", action="store_true", help="also compute frame bounds from S")

    en = sub.add_parser("enpf", parents=[common], help="equal-norm Parseval window")
    en.add_argument("--order", type=int, help="subgroup order M, a divisor of p-1")
    en.add_argument("--verify", action="store_true", help="check S = I and random energies")

    ch = sub.add_parser("characterize", parents=[common], help="all frame-forming subgroups")
    ch.add_argument("--verify", action="store_true", help="re-test every subgroup directly")
    return ap


def main(argv=None, out=None, err=None) -> int:
    err = err or sys.stderr
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if ns.command == "generator":
            if ns.prime is not None:
                ns.p = ns.prime
            if ns.p is None:
                raise InputError("generator needs a prime")
        cfg = RunConfig.from_args(ns)
        if ns.command == "generator":
            return cmd_generator(cfg, out)
        if ns.command == "frame-check":
            return cmd_frame_check(cfg, out)
        if ns.command == "enpf":
            return cmd_enpf(cfg, out, err)
        return cmd_characterize(cfg, out)
    except (InputError, PrimeFramesError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
