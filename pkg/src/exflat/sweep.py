"""Transverse crossings among polylines via an x-sorted sweep with an active set."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ENDPOINT_TOL = 1e-9


@dataclass(frozen=True, order=True)
class Crossing:
    curve_a: int
    segment_a: int
    curve_b: int
    segment_b: int
    point: complex


def _cross(a, b):
    return a.real * b.imag - a.imag * b.real


def polyline_crossings(polylines: Sequence[Sequence[complex]], endpoint_tol: float = ENDPOINT_TOL) -> list[Crossing]:
    """All proper crossings between and within polylines.

    Adjacent segments of one polyline (which share a vertex) are never
    compared, collinear overlaps are ignored, and crossings closer than
    ``endpoint_tol`` to an endpoint of either segment are dropped.
    """
    p0, p1, cid, sid = [], [], [], []
    for c, pts in enumerate(polylines):
        pts = np.asarray(pts, dtype=complex)
        if len(pts) < 2:
            raise ValueError("each polyline needs at least two points")
        p0.append(pts[:-1])
        p1.append(pts[1:])
        cid.append(np.full(len(pts) - 1, c))
        sid.append(np.arange(len(pts) - 1))
    p0 = np.concatenate(p0)
    p1 = np.concatenate(p1)
    cid = np.concatenate(cid)
    sid = np.concatenate(sid)
    xmin = np.minimum(p0.real, p1.real)
    xmax = np.maximum(p0.real, p1.real)
    ymin = np.minimum(p0.imag, p1.imag)
    ymax = np.maximum(p0.imag, p1.imag)
    order = np.lexsort((sid, cid, xmin))

    found: list[Crossing] = []
    heap: list[tuple[float, int]] = []
    active: set[int] = set()
    for s in order:
        while heap and heap[0][0] < xmin[s]:
            _, gone = heapq.heappop(heap)
            active.discard(gone)
        if active:
            cand = np.fromiter(sorted(active), dtype=int)
            keep = (ymax[cand] >= ymin[s]) & (ymin[cand] <= ymax[s])
            keep &= ~((cid[cand] == cid[s]) & (np.abs(sid[cand] - sid[s]) <= 1))
            cand = cand[keep]
            if cand.size:
                found.extend(_test(s, cand, p0, p1, cid, sid, endpoint_tol))
        active.add(int(s))
        heapq.heappush(heap, (xmax[s], int(s)))
    found.sort()
    return found


def _test(s, cand, p0, p1, cid, sid, endpoint_tol):
    a, b = p0[s], p1[s]
    c, d = p0[cand], p1[cand]
    r = b - a
    q = d - c
    denom = _cross(r, q)
    d1 = _cross(r, c - a)
    d2 = _cross(r, d - a)
    d3 = _cross(q, a - c)
    d4 = _cross(q, b - c)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0) & (denom != 0)
    out = []
    for k in np.nonzero(proper)[0]:
        t = _cross(c[k] - a, q[k]) / denom[k]
        x = a + t * r
        if min(abs(x - a), abs(x - b), abs(x - c[k]), abs(x - d[k])) < endpoint_tol:
            continue
        i, j = (int(cid[s]), int(sid[s])), (int(cid[cand[k]]), int(sid[cand[k]]))
        lo, hi = min(i, j), max(i, j)
        out.append(Crossing(lo[0], lo[1], hi[0], hi[1], complex(x)))
    return out
