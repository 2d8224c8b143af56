"""Level-set polylines of a sampled 2-D field by marching squares."""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .errors import EmptyGrid

# corner order: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1)
# edge ids: 0 bottom (0-1), 1 right (1-2), 2 top (3-2), 3 left (0-3)
_CASES = {
    0: [], 15: [],
    1: [(3, 0)], 14: [(3, 0)],
    2: [(0, 1)], 13: [(0, 1)],
    3: [(3, 1)], 12: [(3, 1)],
    4: [(1, 2)], 11: [(1, 2)],
    6: [(0, 2)], 9: [(0, 2)],
    7: [(3, 2)], 8: [(3, 2)],
}


def _edge_key(i, j, edge):
    if edge == 0:
        return ("h", i, j)
    if edge == 2:
        return ("h", i, j + 1)
    if edge == 3:
        return ("v", i, j)
    return ("v", i + 1, j)


def marching_squares(values, x, y, level: float) -> list[np.ndarray]:
    """Contours of ``values[i, j]`` sampled at ``(x[i], y[j])``.

    Crossings are placed by linear interpolation along cell edges. Saddle
    cells are resolved with the cell-centre average. Returns a list of
    ``(k, 2)`` arrays of ``(x, y)`` points; closed loops repeat their first
    point at the end. Cells touching a NaN sample are skipped.
    """
    v = np.asarray(values, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if v.ndim != 2 or v.shape[0] < 2 or v.shape[1] < 2:
        raise EmptyGrid("need at least a 2x2 grid")
    if v.shape != (x.size, y.size):
        raise ValueError(f"values {v.shape} do not match axes ({x.size}, {y.size})")

    above = v > level
    segments = []
    for i in range(v.shape[0] - 1):
        for j in range(v.shape[1] - 1):
            corners = (v[i, j], v[i + 1, j], v[i + 1, j + 1], v[i, j + 1])
            if np.isnan(corners).any():
                continue
            flags = (above[i, j], above[i + 1, j], above[i + 1, j + 1], above[i, j + 1])
            case = sum(int(f) << n for n, f in enumerate(flags))
            if case in (5, 10):
                centre_above = np.mean(corners) > level
                # join the corners that agree with the centre
                if (case == 5) == centre_above:
                    pairs = [(3, 2), (0, 1)]
                else:
                    pairs = [(3, 0), (1, 2)]
            else:
                pairs = _CASES[case]
            for a, b in pairs:
                segments.append((_edge_key(i, j, a), _edge_key(i, j, b)))

    return [np.array([_point(k, v, x, y, level) for k in path]) for path in _chain(segments)]


def _point(key, v, x, y, level):
    kind, i, j = key
    if kind == "h":
        v0, v1 = v[i, j], v[i + 1, j]
        t = (level - v0) / (v1 - v0)
        return (float(x[i] + t * (x[i + 1] - x[i])), float(y[j]))
    v0, v1 = v[i, j], v[i, j + 1]
    t = (level - v0) / (v1 - v0)
    return (float(x[i]), float(y[j] + t * (y[j + 1] - y[j])))


def _chain(segments):
    """Join segments sharing edge crossings into ordered paths."""
    touching = defaultdict(list)
    for n, (a, b) in enumerate(segments):
        touching[a].append(n)
        touching[b].append(n)
    used = [False] * len(segments)

    def walk(start_seg, start_key):
        path = [start_key]
        seg, key = start_seg, start_key
        while True:
            used[seg] = True
            a, b = segments[seg]
            key = b if key == a else a
            path.append(key)
            nxt = [s for s in touching[key] if not used[s]]
            if not nxt:
                return path
            seg = nxt[0]

    paths = []
    # open curves start at a crossing that only one segment touches
    for key, segs in touching.items():
        if len(segs) == 1 and not used[segs[0]]:
            paths.append(walk(segs[0], key))
    for n, (a, _) in enumerate(segments):
        if not used[n]:
            paths.append(walk(n, a))
    return paths


def detection_boundary(grid, level: float = 1.0, gamma_index: int = 0) -> list[np.ndarray]:
    """``level`` contours of one (B, T) plane of a :class:`~ssw.scangrid.ScanGrid`.

    Points are returned as ``(B, T)`` pairs.
    """
    plane = grid.gamma_slice(gamma_index)
    if plane.size == 0 or np.all(np.isnan(plane)):
        raise EmptyGrid("slice holds no finite values")
    return marching_squares(plane, grid.b_axis, grid.t_axis, level)
