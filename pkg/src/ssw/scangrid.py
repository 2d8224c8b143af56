"""Dense parameter scans over (B, T, gamma) and their CSV/JSON forms."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .correlators import concurrence
from .errors import InvalidAxes, NonConvergence, NegativeVy
from .params import ChainParams
from .quadrature import DEFAULT, QuadratureConfig
from .thermo import energy_current_density, magnetization_density
from .witness import w1, w_ss

SCHEMA = 1

QUANTITIES = {
    "W1": w1,
    "WSS": w_ss,
    "Q": energy_current_density,
    "M": magnetization_density,
    "C_R1": lambda p, cfg: concurrence(p, 1, cfg),
    "C_R2": lambda p, cfg: concurrence(p, 2, cfg),
}


@dataclass
class ScanGrid:
    """Values of one observable on the outer product of three axes.

    ``values[i, j, k]`` belongs to ``(b_axis[i], t_axis[j], gamma_axis[k])``.
    """

    b_axis: np.ndarray
    t_axis: np.ndarray
    gamma_axis: np.ndarray
    values: np.ndarray
    quantity_tag: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.b_axis = _check_axis("B", self.b_axis)
        self.t_axis = _check_axis("T", self.t_axis)
        self.gamma_axis = _check_axis("gamma", self.gamma_axis)
        self.values = np.asarray(self.values, dtype=float)
        shape = (len(self.b_axis), len(self.t_axis), len(self.gamma_axis))
        if self.values.shape != shape:
            raise InvalidAxes(f"values have shape {self.values.shape}, axes imply {shape}")

    @property
    def shape(self):
        return self.values.shape

    def gamma_slice(self, k: int) -> np.ndarray:
        """The (B, T) plane at ``gamma_axis[k]``."""
        return self.values[:, :, k]

    def points(self):
        """Iterate ``(B, T, gamma, value)`` in row order (B slowest)."""
        for (i, b), (j, t), (k, g) in product(
            enumerate(self.b_axis), enumerate(self.t_axis), enumerate(self.gamma_axis)
        ):
            yield b, t, g, self.values[i, j, k]


def _check_axis(name, axis) -> np.ndarray:
    a = np.atleast_1d(np.asarray(axis, dtype=float))
    if a.ndim != 1 or a.size == 0:
        raise InvalidAxes(f"{name} axis must be a non-empty 1-D array")
    if not np.all(np.isfinite(a)):
        raise InvalidAxes(f"{name} axis has non-finite entries")
    if np.any(np.diff(a) <= 0):
        raise InvalidAxes(f"{name} axis must be strictly increasing")
    return a


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SSW_THREADS", "1")))
    except ValueError:
        return 1


def scan(
    quantity: str,
    b_axis,
    t_axis,
    gamma_axis,
    j_coupling: float = 1.0,
    b_aux: float = 1.0,
    config: QuadratureConfig = DEFAULT,
    workers: int | None = None,
) -> ScanGrid:
    """Evaluate ``quantity`` at every grid point.

    Points where the quadrature does not converge become NaN and are counted
    in ``metadata["error_count"]``. Output does not depend on ``workers``.
    """
    if quantity not in QUANTITIES:
        raise InvalidAxes(f"unknown quantity {quantity!r}; choose from {sorted(QUANTITIES)}")
    b_axis, t_axis, gamma_axis = (_check_axis(n, a) for n, a in (("B", b_axis), ("T", t_axis), ("gamma", gamma_axis)))
    if t_axis[0] <= 0 or b_axis[0] < 0:
        raise InvalidAxes("need T > 0 and B >= 0 on the whole grid")
    fn = QUANTITIES[quantity]
    pts = list(product(b_axis, t_axis, gamma_axis))

    def one(pt):
        b, t, g = pt
        try:
            return fn(ChainParams(j_coupling, b, t, g, b_aux), config)
        except (NonConvergence, NegativeVy):
            return np.nan

    workers = workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(one, pts))
    else:
        flat = [one(p) for p in pts]
    values = np.array(flat, dtype=float).reshape(len(b_axis), len(t_axis), len(gamma_axis))
    meta = {
        "version": f"ssw {__version__}",
        "j_coupling": j_coupling,
        "b_aux": b_aux,
        "quadrature": asdict(config),
        "error_count": int(np.isnan(values).sum()),
    }
    return ScanGrid(b_axis, t_axis, gamma_axis, values, quantity, meta)


# -- serialization -----------------------------------------------------------

def _fmt(x: float) -> str:
    # repr gives the shortest string that round-trips exactly
    return repr(float(x))


def to_csv(grid: ScanGrid) -> str:
    buf = io.StringIO()
    meta = dict(grid.metadata, quantity_tag=grid.quantity_tag, schema=SCHEMA)
    buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["B", "T", "gamma", "value"])
    for row in grid.points():
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def from_csv(text: str) -> ScanGrid:
    lines = text.splitlines()
    meta = {}
    while lines and lines[0].startswith("#"):
        meta.update(json.loads(lines.pop(0)[1:]))
    rows = list(csv.DictReader(lines))
    if not rows:
        raise InvalidAxes("CSV holds no grid points")
    cols = {k: np.array([float(r[k]) for r in rows]) for k in ("B", "T", "gamma", "value")}
    axes = [np.unique(cols[k]) for k in ("B", "T", "gamma")]
    values = np.full(tuple(len(a) for a in axes), np.nan)
    idx = tuple(np.searchsorted(a, cols[k]) for a, k in zip(axes, ("B", "T", "gamma")))
    values[idx] = cols["value"]
    tag = meta.pop("quantity_tag", "")
    meta.pop("schema", None)
    return ScanGrid(*axes, values, tag, meta)


def to_json(grid: ScanGrid) -> str:
    def clean(v):
        return None if np.isnan(v) else float(v)

    doc = {
        "schema": SCHEMA,
        "quantity_tag": grid.quantity_tag,
        "axes": {
            "B": grid.b_axis.tolist(),
            "T": grid.t_axis.tolist(),
            "gamma": grid.gamma_axis.tolist(),
        },
        "shape": list(grid.shape),
        "values": [clean(v) for v in grid.values.ravel()],
        "metadata": grid.metadata,
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> ScanGrid:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise InvalidAxes(f"unsupported schema {doc.get('schema')!r}")
    ax = doc["axes"]
    vals = np.array([np.nan if v is None else v for v in doc["values"]], dtype=float)
    shape = (len(ax["B"]), len(ax["T"]), len(ax["gamma"]))
    return ScanGrid(ax["B"], ax["T"], ax["gamma"], vals.reshape(shape), doc["quantity_tag"], doc.get("metadata", {}))


def write(grid: ScanGrid, path, fmt: str | None = None):
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".") or "csv"
    text = to_json(grid) if fmt == "json" else to_csv(grid)
    path.write_text(text)


def read(path) -> ScanGrid:
    path = Path(path)
    text = path.read_text()
    return from_json(text) if text.lstrip().startswith("{") else from_csv(text)
