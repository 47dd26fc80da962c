"""Command-line entry point.

Exit codes: 0 success, 2 invalid input, 3 very-strong-interference regime not
certified.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import presets
from .bounds import FORMULATIONS, NotAMACError, compact_bounds, generate, han_bounds
from .channel import (
    INNER,
    OUTER,
    Channel,
    ChannelError,
    evaluate_bounds,
    make_schema,
    sample_distributions,
)
from .io import InputError, load_channel, load_spec
from .network import NetworkSpec, SpecError
from .polytope import RegionEstimate, default_directions, region_equal, slice_2d, slice_csv
from .vsi import vsi_capacity

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CERTIFIED = 3

SEED_ENV = "RATEREGION_SEED"
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 200

_MODE = {"han": OUTER, "cutset": OUTER, "compact": INNER, "inner": INNER}


@dataclass
class RunConfig:
    subcommand: str
    spec_path: Optional[str] = None
    preset: Optional[str] = None
    channel_path: Optional[str] = None
    channel_preset: Optional[str] = None
    formulation: Optional[str] = None
    seed: int = DEFAULT_SEED
    n_samples: int = DEFAULT_SAMPLES
    tol: Optional[float] = None
    out: Optional[str] = None
    axes: Optional[str] = None
    grid: int = 91
    slice_out: Optional[str] = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        seed = ns.seed
        if seed is None:
            env = os.environ.get(SEED_ENV)
            try:
                seed = int(env) if env else DEFAULT_SEED
            except ValueError:
                raise InputError(f"{SEED_ENV}={env!r} is not an integer") from None
        return cls(
            subcommand=ns.command,
            spec_path=ns.spec,
            preset=ns.preset,
            channel_path=getattr(ns, "channel", None),
            channel_preset=getattr(ns, "channel_preset", None),
            formulation=getattr(ns, "formulation", None),
            seed=seed,
            n_samples=getattr(ns, "samples", DEFAULT_SAMPLES),
            tol=getattr(ns, "tol", None),
            out=ns.out,
            axes=getattr(ns, "axes", None),
            grid=getattr(ns, "grid", 91),
            slice_out=getattr(ns, "slice_out", None),
        )

    def load_spec(self) -> NetworkSpec:
        if self.spec_path and self.preset:
            raise InputError("give either --spec or --preset, not both")
        if self.spec_path:
            return load_spec(self.spec_path)
        if self.preset:
            return presets.spec_preset(self.preset)
        raise InputError("one of --spec or --preset is required")

    def load_channel(self) -> Channel:
        if self.channel_path and self.channel_preset:
            raise InputError("give either --channel or --channel-preset, not both")
        if self.channel_path:
            return load_channel(self.channel_path)
        name = self.channel_preset or presets.DEFAULT_CHANNEL.get(self.preset or "")
        if name is None:
            raise InputError("one of --channel or --channel-preset is required")
        return presets.channel_preset(name)

    def channel_name(self) -> str:
        return self.channel_path or self.channel_preset or presets.DEFAULT_CHANNEL.get(self.preset or "", "?")


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _split_axes(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "{[":
            depth += 1
        elif ch in "}]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_axes(text: str, labels) -> tuple[int, int]:
    """Axes as rate labels (``{1|1}``, ``1|1``, ``R[{1|1}]``) or 0-based
    indices, separated by a comma."""
    names = _split_axes(text or "")
    if len(names) != 2:
        raise InputError(f"--axes needs two comma-separated rates, got {text!r}")
    lookup = {str(m): i for i, m in enumerate(labels)}
    out = []
    for name in names:
        key = name
        if key.startswith("R[") and key.endswith("]"):
            key = key[2:-1]
        if not key.startswith("{"):
            key = "{" + key + "}"
        if key.replace(" ", "") in lookup:
            out.append(lookup[key.replace(" ", "")])
        elif name.isdigit() and int(name) < len(labels):
            out.append(int(name))
        else:
            raise InputError(f"unknown rate axis {name!r}; rates are {', '.join(lookup)}")
    if out[0] == out[1]:
        raise InputError("--axes must name two different rates")
    return out[0], out[1]


def sampled_region(spec: NetworkSpec, channel: Channel, formulation: str, n: int,
                   seed: int) -> RegionEstimate:
    bs = generate(spec, formulation)
    schema = make_schema(spec, channel, _MODE[formulation])
    joints = sample_distributions(schema, channel, n, seed)
    return RegionEstimate([evaluate_bounds(bs, j) for j in joints], seed=seed)


def cmd_bounds(cfg: RunConfig) -> int:
    spec = cfg.load_spec()
    f = cfg.formulation or "inner"
    bs = generate(spec, f)
    text = bs.render() + f"formulation={f} bounds={len(bs)}\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    spec = cfg.load_spec()
    if not spec.is_mac:
        raise NotAMACError("compare needs a single-receiver spec")
    channel = cfg.load_channel()
    channel.check_spec(spec)
    tol = 0.02 if cfg.tol is None else cfg.tol
    han = sampled_region(spec, channel, "han", cfg.n_samples, cfg.seed)
    compact = sampled_region(spec, channel, "compact", cfg.n_samples, cfg.seed)
    dirs = default_directions(len(spec.messages), seed=cfg.seed)
    equal, dev, worst = region_equal(han, compact, dirs, tol)
    text = (
        f"# compare spec={cfg.spec_path or cfg.preset} channel={cfg.channel_name()} "
        f"seed={cfg.seed} samples={cfg.n_samples}\n"
        f"han_bounds={len(han_bounds(spec))} compact_bounds={len(compact_bounds(spec))} "
        f"directions={len(dirs)}\n"
        f"max_deviation={dev:.6f} worst_direction=({','.join(f'{v:.6f}' for v in worst)}) "
        f"tol={tol:g} verdict={'equal' if equal else 'different'}\n"
    )
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_checkvsi(cfg: RunConfig) -> int:
    spec = cfg.load_spec()
    channel = cfg.load_channel()
    channel.check_spec(spec)
    cert, region = vsi_capacity(spec, channel, cfg.n_samples, cfg.seed)
    _emit(cert.report(), cfg.out)
    if region is not None and cfg.axes:
        a, b = parse_axes(cfg.axes, spec.messages)
        _emit(slice_csv(slice_2d(region, a, b, cfg.grid)), cfg.slice_out)
    return EXIT_OK if cert.certified else EXIT_NOT_CERTIFIED


def cmd_slice(cfg: RunConfig) -> int:
    spec = cfg.load_spec()
    channel = cfg.load_channel()
    channel.check_spec(spec)
    f = cfg.formulation or ("compact" if spec.is_mac else "inner")
    a, b = parse_axes(cfg.axes, spec.messages)
    region = sampled_region(spec, channel, f, cfg.n_samples, cfg.seed)
    _emit(slice_csv(slice_2d(region, a, b, cfg.grid)), cfg.out)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "compare": cmd_compare,
    "checkvsi": cmd_checkvsi,
    "slice": cmd_slice,
}


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rateregion",
                                description="Rate-bound generation and evaluation for "
                                            "cognitive multiple-access networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, channel=True, sampling=True):
        sp.add_argument("--spec", metavar="PATH", help="JSON network spec")
        sp.add_argument("--preset", choices=sorted(presets.SPECS), help="built-in network spec")
        sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        sp.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default {DEFAULT_SEED}, or ${SEED_ENV})")
        if channel:
            sp.add_argument("--channel", metavar="PATH", help="JSON channel file")
            sp.add_argument("--channel-preset", choices=sorted(presets.CHANNELS),
                            help="built-in channel")
        if sampling:
            sp.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES,
                            help="number of sampled distributions")
            sp.add_argument("--tol", type=float, default=None, help="comparison tolerance")

    sp = sub.add_parser("bounds", help="list the bounds of one formulation")
    common(sp, channel=False, sampling=False)
    sp.add_argument("--formulation", choices=FORMULATIONS, default="inner")

    sp = sub.add_parser("compare", help="compare Han and compact MAC regions numerically")
    common(sp)

    sp = sub.add_parser("checkvsi", help="certify the very strong interference regime")
    common(sp)
    sp.add_argument("--axes", metavar="Ra,Rb", help="also emit a region slice")
    sp.add_argument("--slice-out", metavar="PATH", help="where to write the slice CSV")
    sp.add_argument("--grid", type=_positive_int, default=91, help="number of angles")

    sp = sub.add_parser("slice", help="CSV trace of a sampled region in a rate plane")
    common(sp)
    sp.add_argument("--formulation", choices=FORMULATIONS, default=None)
    sp.add_argument("--axes", metavar="Ra,Rb", required=True)
    sp.add_argument("--grid", type=_positive_int, default=91, help="number of angles")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.subcommand](cfg)
    except (InputError, SpecError, ChannelError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
