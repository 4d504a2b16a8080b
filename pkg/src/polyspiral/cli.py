"""Command-line surface: sequence dumps, verification suites, motion fits,
convergence tables and SVG figures.

Exit codes: 0 all good, 1 check or fit failure, 2 usage error, 3 I/O error.
Numbers are printed with at most 15 significant digits so identical
configurations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import verify
from .asymptotics import Parity
from .geometry import CenterSequence, Family, build_chain, centers_all, centers_odd
from .metrics import (
    APPROXIMANT_SCALE,
    ConvergenceRecord,
    FitError,
    NORMALIZATION_MODULUS,
    RigidMotion,
    TARGET_SPIRAL,
    distance_table,
    fit_motion_to_approximant,
    fit_motion_to_spiral,
    inner_side_fraction,
    parity_means,
    richardson_extrapolate,
)
from .svgout import scene_from_chain

MAX_N = 10**6

TARGETS = {
    Family.ALL_POLYGONS: {Parity.EVEN: 5.0 / 6.0, Parity.ODD: 7.0 / 12.0},
    Family.ODD_POLYGONS: {Parity.EVEN: 7.0 / 24.0, Parity.ODD: 7.0 / 24.0},
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    family: Family = Family.ALL_POLYGONS
    n_max: int = 100
    window: tuple[int, int] | None = None
    fmt: str = "csv"
    out: str | None = None
    extrapolate: bool = False
    overlay: bool = False
    tolerances: dict[str, float] = field(default_factory=dict)

    def validate(self) -> None:
        first = 3 if self.family is Family.ALL_POLYGONS else 2
        if not first <= self.n_max <= MAX_N:
            raise UsageError(f"--n-max must be in [{first}, {MAX_N}]")
        if self.window is not None:
            lo, hi = self.window
            if not (first <= lo < hi <= self.n_max):
                raise UsageError(f"--window must satisfy {first} <= A < B <= n_max")

    def fit_window(self) -> tuple[int, int]:
        if self.window is not None:
            return self.window
        return max(3, self.n_max // 4), max(4, self.n_max // 2)


def _fmt(x: float) -> str:
    return f"{x + 0.0:.15g}"  # fold -0.0 into 0


def _parse_window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}; expected A:B") from exc


def _parse_tolerance(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"bad tolerance {pair!r}; expected NAME=VALUE")
        name, value = pair.split("=", 1)
        if name not in verify.DEFAULT_TOLERANCES:
            raise UsageError(f"unknown tolerance {name!r}; choose from {sorted(verify.DEFAULT_TOLERANCES)}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value in {pair!r}") from exc
    return out


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise IOError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad config file {args.config}: {exc}") from exc
        if "family" in data:
            cfg.family = Family(data["family"])
        if "n_max" in data:
            cfg.n_max = int(data["n_max"])
        if "window" in data:
            w = data["window"]
            cfg.window = _parse_window(w) if isinstance(w, str) else (int(w[0]), int(w[1]))
        if "format" in data:
            cfg.fmt = str(data["format"])
        if "out" in data:
            cfg.out = str(data["out"])
        if "extrapolate" in data:
            cfg.extrapolate = bool(data["extrapolate"])
        if "tolerances" in data:
            cfg.tolerances.update({k: float(v) for k, v in data["tolerances"].items()})

    if getattr(args, "family", None) is not None:
        cfg.family = Family(args.family)
    if getattr(args, "n_max", None) is not None:
        cfg.n_max = args.n_max
    if getattr(args, "window", None) is not None:
        cfg.window = _parse_window(args.window)
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    if getattr(args, "out", None) is not None:
        cfg.out = args.out
    if getattr(args, "extrapolate", False):
        cfg.extrapolate = True
    if getattr(args, "overlay", False):
        cfg.overlay = True
    if getattr(args, "tolerance", None):
        cfg.tolerances.update(_parse_tolerance(args.tolerance))
    cfg.validate()
    return cfg


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {out}: {exc}") from exc


def _sequence(cfg: RunConfig) -> CenterSequence:
    if cfg.family is Family.ALL_POLYGONS:
        return centers_all(cfg.n_max)
    return centers_odd(cfg.n_max)


def cmd_centers(cfg: RunConfig) -> int:
    seq = _sequence(cfg)
    ns = range(seq.first_index, seq.last_index + 1)
    if cfg.fmt == "csv":
        lines = ["n,re,im"]
        for n in ns:
            z = seq.center(n)
            lines.append(f"{n},{_fmt(z.real)},{_fmt(z.imag)}")
        _write_output("\n".join(lines) + "\n", cfg.out)
    else:
        records = [{"n": n, "re": seq.center(n).real, "im": seq.center(n).imag} for n in ns]
        _write_output(json.dumps({"family": cfg.family.value, "records": records}, indent=2, sort_keys=True) + "\n", cfg.out)
    return 0


def cmd_verify(cfg: RunConfig, suites: list[str]) -> int:
    names = sorted(verify.SUITES) if suites == ["all"] else suites
    for name in names:
        if name not in verify.SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {sorted(verify.SUITES)} or 'all'")
    lines = []
    failed = False
    for name in names:
        for result in verify.run_suite(name, tolerances=cfg.tolerances):
            failed |= not result.passed
            status = "PASS" if result.passed else "FAIL"
            lines.append(f"{status} {name}/{result.name} margin={_fmt(result.margin)} ({result.detail})")
    _write_output("\n".join(lines) + "\n", cfg.out)
    return 1 if failed else 0


def _fit(cfg: RunConfig, route: str) -> tuple[RigidMotion, dict]:
    seq = _sequence(cfg)
    window = cfg.fit_window()
    if route == "approximant":
        if cfg.family is not Family.ALL_POLYGONS:
            raise UsageError("the approximant route only exists for --family all")
        motion, diag = fit_motion_to_approximant(seq, window)
    else:
        init = None
        if cfg.family is Family.ALL_POLYGONS:
            init, _ = fit_motion_to_approximant(seq, window)
        motion, diag = fit_motion_to_spiral(seq, TARGET_SPIRAL, window, init=init)
    info = {
        "route": route,
        "window": list(window),
        "rotation": motion.rotation,
        "translation_re": motion.translation.real,
        "translation_im": motion.translation.imag,
        "residual_max": diag.residual_max,
        "objective": diag.objective,
        "parity_mean": {p.value: v for p, v in diag.per_parity_mean.items()},
    }
    return motion, info


def cmd_fit(cfg: RunConfig, route: str) -> int:
    _, info = _fit(cfg, route)
    _write_output(json.dumps(info, indent=2, sort_keys=True) + "\n", cfg.out)
    return 0


def _default_route(cfg: RunConfig) -> str:
    return "approximant" if cfg.family is Family.ALL_POLYGONS else "spiral"


def _summary(cfg: RunConfig, records: list[ConvergenceRecord]) -> list[tuple[str, float]]:
    targets = TARGETS[cfg.family]
    n_hi = max(r.n for r in records)
    raw_cut = int(0.8 * n_hi)
    raw = parity_means([r for r in records if r.n >= raw_cut])
    pairs = []
    for parity in (Parity.EVEN, Parity.ODD):
        if parity in raw:
            pairs.append((f"raw_mean_{parity.value}", raw[parity]))
            pairs.append((f"target_{parity.value}", targets[parity]))
    if cfg.extrapolate:
        have = [r for r in records if r.extrapolated is not None]
        if have:
            ext_hi = max(r.n for r in have)
            ext = parity_means([r for r in have if r.n >= int(0.8 * ext_hi)], extrapolated=True)
            for parity in (Parity.EVEN, Parity.ODD):
                if parity in ext:
                    pairs.append((f"extrapolated_mean_{parity.value}", ext[parity]))
            if Parity.EVEN in ext and Parity.ODD in ext:
                pairs.append(("extrapolated_combined_mean", 0.5 * (ext[Parity.EVEN] + ext[Parity.ODD])))
                pairs.append(("extrapolated_alternation", 0.5 * (ext[Parity.EVEN] - ext[Parity.ODD])))
    if cfg.family is Family.ALL_POLYGONS:
        pairs.append(("target_combined_mean", 17.0 / 24.0))
        pairs.append(("target_alternation", 1.0 / 8.0))
    pairs.append(("inner_side_fraction", inner_side_fraction(records)))
    return pairs


def cmd_distances(cfg: RunConfig, route: str | None) -> int:
    route = route or _default_route(cfg)
    motion, info = _fit(cfg, route)
    seq = _sequence(cfg)
    records = distance_table(seq, motion, cfg.n_max)
    if cfg.extrapolate:
        records = richardson_extrapolate(records)
    summary = _summary(cfg, records)

    if cfg.fmt == "csv":
        lines = ["n,parity,distance,extrapolated"]
        for r in records:
            tail = _fmt(r.extrapolated) if r.extrapolated is not None else ""
            lines.append(f"{r.n},{r.parity.value},{_fmt(r.distance)},{tail}")
        for key, value in summary:
            lines.append(f"# {key}={_fmt(value)}")
        _write_output("\n".join(lines) + "\n", cfg.out)
    else:
        payload = {
            "fit": info,
            "records": [
                {
                    "n": r.n,
                    "parity": r.parity.value,
                    "distance": r.distance,
                    "extrapolated": r.extrapolated,
                }
                for r in records
            ],
            "summary": dict(summary),
        }
        _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.out)
    return 0


def cmd_render(cfg: RunConfig) -> int:
    if cfg.family is not Family.ALL_POLYGONS:
        raise UsageError("render only draws the all-polygon chain")
    if cfg.n_max > 100:
        raise UsageError("render is limited to --n-max <= 100")
    chain = build_chain(cfg.n_max)
    spiral_samples = None
    if cfg.overlay:
        window = cfg.window or (max(3, cfg.n_max // 2), cfg.n_max)
        if window[1] - window[0] + 1 < 8:
            raise UsageError("--overlay needs a fit window of at least 8 indices")
        seq = centers_all(cfg.n_max)
        motion, _ = fit_motion_to_approximant(seq, window)
        records = distance_table(seq, motion, cfg.n_max)
        thetas = [r.theta for r in records]
        grid = np.linspace(min(thetas) - 0.5 * math.pi, max(thetas) + 0.5 * math.pi, 600)
        w = TARGET_SPIRAL.point(grid)
        a = np.exp(1j * motion.rotation) * (NORMALIZATION_MODULUS ** (1.0 + 0.25j * math.pi)) * w + motion.translation
        spiral_samples = a / APPROXIMANT_SCALE
    scene = scene_from_chain(chain, spiral_samples)
    _write_output(scene.to_svg(), cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyspiral", description="Polygon-chain spirals and their limiting distances.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, render: bool = False) -> None:
        p.add_argument("--family", choices=[f.value for f in Family], default=None)
        p.add_argument("--n-max", dest="n_max", type=int, default=None)
        p.add_argument("--window", default=None, metavar="A:B")
        p.add_argument("--format", choices=["csv", "json"], default=None)
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--tolerance", action="append", default=None, metavar="NAME=VALUE")
        p.add_argument("--config", default=None, metavar="PATH")
        if render:
            p.add_argument("--overlay", action="store_true")

    p = sub.add_parser("centers", help="write the centre sequence")
    add_common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="+", metavar="SUITE", help=f"{sorted(verify.SUITES)} or 'all'")
    add_common(p)

    p = sub.add_parser("fit", help="fit the rigid motion")
    p.add_argument("--route", choices=["approximant", "spiral"], default=None)
    add_common(p)

    p = sub.add_parser("distances", help="emit the convergence table")
    p.add_argument("--route", choices=["approximant", "spiral"], default=None)
    p.add_argument("--extrapolate", action="store_true")
    add_common(p)

    p = sub.add_parser("render", help="write an SVG figure")
    add_common(p, render=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "centers":
            return cmd_centers(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suites)
        if args.command == "fit":
            return cmd_fit(cfg, args.route or _default_route(cfg))
        if args.command == "distances":
            return cmd_distances(cfg, args.route)
        if args.command == "render":
            return cmd_render(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FitError as exc:
        print(f"fit failure: {exc}", file=sys.stderr)
        return 1
    except IOError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
