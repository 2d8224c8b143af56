"""Command line front end: ``ssw point | scan | contour | verify``.

Exit codes: 0 ok, 2 quadrature did not converge, 3 invalid configuration,
4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import scangrid as scanmod
from .contour import detection_boundary
from .correlators import concurrence, g_r, s_r
from .errors import EmptyGrid, InvalidAxes, NegativeVy, NonConvergence, SizeLimit
from .params import ChainParams
from .quadrature import QuadratureConfig
from .thermo import (
    energy_current_density,
    energy_density_term,
    internal_energy_density,
    log_z_density,
    magnetization_density,
)
from .verify import DEFAULT_B, DEFAULT_GAMMA, DEFAULT_T, verify
from .witness import w1, w_ss

EXIT_OK, EXIT_CONVERGENCE, EXIT_CONFIG, EXIT_VERIFY = 0, 2, 3, 4

POINT_DEFAULT = ["LNZ", "M", "U", "Q", "W1", "WSS", "G1", "S1", "C_R1", "C_R2"]

BUILTIN = {
    "J": 1.0,
    "B": 0.0,
    "T": 1.0,
    "gamma": 0.0,
    "b": 1.0,
    "tol": 1e-10,
    "format": None,
    "out": None,
    "N": 8,
    "level": 1.0,
    "input": None,
    "q": None,
    "B_range": None,
    "T_range": None,
    "gamma_range": None,
}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def canonical_quantity(name: str) -> str:
    key = name.replace("_", "").replace("-", "").upper()
    aliases = {"LNZ": "LNZ", "M": "M", "E": "E", "U": "U", "Q": "Q", "W1": "W1", "WSS": "WSS",
               "CR1": "C_R1", "CR2": "C_R2"}
    if key in aliases:
        return aliases[key]
    if re.fullmatch(r"[GS]\d+", key):
        return key
    raise ConfigError(f"unknown quantity {name!r}")


def parse_range(text: str) -> np.ndarray:
    """``min:max:count`` to an inclusive linspace; a bare number is a one-point axis."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad range {text!r}, expected min:max:count") from exc
    if count < 1 or (count > 1 and hi <= lo):
        raise ConfigError(f"bad range {text!r}")
    return np.linspace(lo, hi, count)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ssw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="JSON file of flag values; explicit flags win")
        sp.add_argument("--J", type=float)
        sp.add_argument("--B", type=float)
        sp.add_argument("--T", type=float)
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--b", type=float, help="auxiliary Zeeman scale (default 1)")
        sp.add_argument("--tol", type=float, help="quadrature tolerance")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=["csv", "json", "text"])

    def ranges(sp):
        sp.add_argument("--B-range", dest="B_range")
        sp.add_argument("--T-range", dest="T_range")
        sp.add_argument("--gamma-range", dest="gamma_range")

    sp = sub.add_parser("point", help="evaluate quantities at one parameter point")
    common(sp)
    sp.add_argument("--q", help="comma-separated quantity list")

    sp = sub.add_parser("scan", help="evaluate one quantity on a (B, T, gamma) grid")
    common(sp)
    ranges(sp)
    sp.add_argument("--q", help="quantity: W1, WSS, Q, M, C_R1 or C_R2")

    sp = sub.add_parser("contour", help="level-set polylines of a scan, per gamma slice")
    common(sp)
    ranges(sp)
    sp.add_argument("--q", help="quantity to scan when no --in file is given")
    sp.add_argument("--in", dest="input", help="scan file (CSV or JSON) to contour")
    sp.add_argument("--level", type=float)

    sp = sub.add_parser("verify", help="compare exact diagonalization with free fermions")
    common(sp)
    ranges(sp)
    sp.add_argument("--N", type=int)
    return p


def resolve(args: argparse.Namespace) -> dict:
    """Merge builtin defaults, the config file and explicit flags, in that order."""
    cfg = dict(BUILTIN)
    if getattr(args, "config", None):
        try:
            from_file = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(from_file) - set(BUILTIN)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(from_file)
    for key, val in vars(args).items():
        if key in cfg and val is not None:
            cfg[key] = val
    cfg["command"] = args.command
    return cfg


def _params(cfg) -> ChainParams:
    try:
        return ChainParams(cfg["J"], cfg["B"], cfg["T"], cfg["gamma"], cfg["b"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _quad(cfg) -> QuadratureConfig:
    try:
        return QuadratureConfig(tolerance=float(cfg["tol"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


SCALAR_FUNCS = {
    "LNZ": log_z_density,
    "M": magnetization_density,
    "E": energy_density_term,
    "U": internal_energy_density,
    "Q": energy_current_density,
    "W1": w1,
    "WSS": w_ss,
}


def point_values(params: ChainParams, quantities, config: QuadratureConfig) -> dict:
    """Evaluate the named quantities with the public library functions."""
    out = {}
    for name in quantities:
        q = canonical_quantity(name)
        try:
            if q in SCALAR_FUNCS:
                out[q] = SCALAR_FUNCS[q](params, config)
            elif q[0] == "G":
                out[q] = g_r(params, int(q[1:]), config)
            elif q[0] == "S":
                out[q] = s_r(params, int(q[1:]), config)
            else:
                out[q] = concurrence(params, int(q[-1]), config)
        except NonConvergence as exc:
            raise NonConvergence(f"{q}: {exc}") from exc
    return out


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_point(cfg) -> int:
    params, quad = _params(cfg), _quad(cfg)
    names = [s for s in (cfg["q"] or ",".join(POINT_DEFAULT)).split(",") if s.strip()]
    vals = point_values(params, [n.strip() for n in names], quad)
    if cfg["format"] == "json":
        doc = {"params": asdict(params), "tolerance": quad.tolerance, "values": vals}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = [f"{k} = {v!r}" for k, v in vals.items()]
        lines.append(f"# quadrature tolerance {quad.tolerance:g}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg["out"])
    return EXIT_OK


def _axes(cfg):
    axes = []
    for key, fixed in (("B_range", "B"), ("T_range", "T"), ("gamma_range", "gamma")):
        axes.append(parse_range(cfg[key]) if cfg[key] is not None else np.array([float(cfg[fixed])]))
    return axes


def _run_scan(cfg) -> scanmod.ScanGrid:
    quantity = canonical_quantity(cfg["q"] or "W1")
    if quantity not in scanmod.QUANTITIES:
        raise ConfigError(f"scan supports {sorted(scanmod.QUANTITIES)}, not {quantity}")
    b_axis, t_axis, g_axis = _axes(cfg)
    grid = scanmod.scan(quantity, b_axis, t_axis, g_axis, cfg["J"], cfg["b"], _quad(cfg))
    # timestamps live only in metadata so the data rows stay reproducible
    grid.metadata["created"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    return grid


def cmd_scan(cfg) -> int:
    grid = _run_scan(cfg)
    fmt = cfg["format"] or (Path(cfg["out"]).suffix.lstrip(".") if cfg["out"] else "csv")
    text = scanmod.to_json(grid) if fmt == "json" else scanmod.to_csv(grid)
    _emit(text, cfg["out"])
    if grid.metadata["error_count"]:
        print(f"warning: {grid.metadata['error_count']} points failed to converge", file=sys.stderr)
    return EXIT_OK


def cmd_contour(cfg) -> int:
    grid = scanmod.read(cfg["input"]) if cfg["input"] else _run_scan(cfg)
    level = float(cfg["level"])
    rows = []
    for k, g in enumerate(grid.gamma_axis):
        try:
            lines = detection_boundary(grid, level, k)
        except EmptyGrid:
            lines = []
        for cid, line in enumerate(lines):
            rows.extend((float(g), cid, float(b), float(t)) for b, t in line)
    if cfg["format"] == "json":
        doc = {"schema": scanmod.SCHEMA, "quantity_tag": grid.quantity_tag, "level": level,
               "contours": [{"gamma": g, "contour": c, "B": b, "T": t} for g, c, b, t in rows]}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = "gamma,contour,B,T\n" + "".join(f"{g!r},{c},{b!r},{t!r}\n" for g, c, b, t in rows)
    _emit(text, cfg["out"])
    return EXIT_OK


def cmd_verify(cfg) -> int:
    b = parse_range(cfg["B_range"]) if cfg["B_range"] else DEFAULT_B
    t = parse_range(cfg["T_range"]) if cfg["T_range"] else DEFAULT_T
    g = parse_range(cfg["gamma_range"]) if cfg["gamma_range"] else DEFAULT_GAMMA
    report = verify(int(cfg["N"]), b, t, g, cfg["J"], config=_quad(cfg))
    _emit(json.dumps(report, indent=1) + "\n", cfg["out"])
    if not report["passed"]:
        w = report["worst"]
        print(
            f"verification failed: {w['quantity']} at B={w['B']} T={w['T']} gamma={w['gamma']}"
            f" differs by {w['abs_diff_ed_ff']:.3e}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"point": cmd_point, "scan": cmd_scan, "contour": cmd_contour, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        return COMMANDS[cfg["command"]](cfg)
    except NonConvergence as exc:
        print(f"error: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ConfigError, InvalidAxes, SizeLimit, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NegativeVy as exc:
        # an inconsistent correlator set is a bug, not a user error
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
