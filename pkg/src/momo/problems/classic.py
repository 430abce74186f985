"""SYM-PART simple/rotated (Rudolph, Naujoks & Preuss 2007) and Omni-test (Deb & Tiwari 2005).

SYM-PART uses a=1, b=10, c=8 on [-20, 20]^2: nine unit-half-length segments
centred on the grid {-10, 0, 10}^2. The rotated variant turns the plane by
pi/4 before the tile mapping.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..variation import Bounds
from .base import ProblemSpec, segment

A, B, C = 1.0, 10.0, 8.0
OMEGA = np.pi / 4.0
_ROT = np.array([[np.cos(OMEGA), -np.sin(OMEGA)], [np.sin(OMEGA), np.cos(OMEGA)]])


def _tile(v, offset, width):
    raw = np.sign(v) * np.ceil((np.abs(v) - offset) / width)
    return np.sign(raw) * np.minimum(np.abs(raw), 1.0)


def _sympart_core(x1, x2):
    t1 = _tile(x1, A + C / 2.0, C + 2.0 * A)
    t2 = _tile(x2, B / 2.0, B)
    p1 = x1 - t1 * (C + 2.0 * A)
    p2 = x2 - t2 * B
    return np.column_stack([(p1 + A) ** 2 + p2**2, (p1 - A) ** 2 + p2**2])


def sympart_simple(X):
    return _sympart_core(X[:, 0], X[:, 1])


def sympart_rotated(X):
    Y = X @ _ROT.T
    return _sympart_core(Y[:, 0], Y[:, 1])


def omni_test(X):
    return np.column_stack([np.sin(np.pi * X).sum(axis=1), np.cos(np.pi * X).sum(axis=1)])


def _sympart_segments(rotated: bool):
    curves = []
    inv = _ROT.T
    for t2 in (-1.0, 0.0, 1.0):
        for t1 in (-1.0, 0.0, 1.0):
            cx = t1 * (C + 2.0 * A)
            start = np.array([cx - A, t2 * B])
            stop = np.array([cx + A, t2 * B])
            if rotated:
                start, stop = inv @ start, inv @ stop
            curves.append(segment(start, stop))
    return tuple(curves)


def _sympart_front(t):
    p = 2.0 * np.asarray(t, dtype=float) - 1.0
    return np.column_stack([(p + A) ** 2, (p - A) ** 2])


def _sympart_residual(F):
    return np.sqrt(np.clip(F[:, 0], 0, None)) + np.sqrt(np.clip(F[:, 1], 0, None)) - 2.0 * A


def _omni_segments():
    curves = []
    for m1, m2 in itertools.product(range(3), repeat=2):
        start = np.array([2.0 * m1 + 1.0, 2.0 * m2 + 1.0])
        curves.append(segment(start, start + 0.5))
    return tuple(curves)


def _omni_front(t):
    theta = np.pi + 0.5 * np.pi * np.asarray(t, dtype=float)
    return np.column_stack([2.0 * np.sin(theta), 2.0 * np.cos(theta)])


def build() -> list[ProblemSpec]:
    src = "Rudolph, Naujoks & Preuss, Capabilities of EMOA to detect and preserve equivalent Pareto subsets (EMO 2007)"
    return [
        ProblemSpec(
            name="SYM-PART-Simple", D=2, M=2, bounds=Bounds([-20.0, -20.0], [20.0, 20.0]),
            pss_count=9, pf_geometry="convex", ref_size=999, func=sympart_simple,
            ps_subsets=_sympart_segments(False), pf_curve=_sympart_front,
            pf_residual=_sympart_residual, provenance=src + "; a=1, b=10, c=8",
        ),
        ProblemSpec(
            name="SYM-PART-Rotated", D=2, M=2, bounds=Bounds([-20.0, -20.0], [20.0, 20.0]),
            pss_count=9, pf_geometry="convex", ref_size=999, func=sympart_rotated,
            ps_subsets=_sympart_segments(True), pf_curve=_sympart_front,
            pf_residual=_sympart_residual, provenance=src + "; a=1, b=10, c=8, rotation pi/4",
        ),
        ProblemSpec(
            name="Omni-test", D=2, M=2, bounds=Bounds([0.0, 0.0], [6.0, 6.0]),
            pss_count=9, pf_geometry="convex", ref_size=999, func=omni_test,
            ps_subsets=_omni_segments(), pf_curve=_omni_front,
            pf_residual=lambda F: np.hypot(F[:, 0], F[:, 1]) - 2.0,
            provenance="Deb & Tiwari, Omni-optimizer (EMO 2005), Omni-test with D=2",
        ),
    ]
