"""MMMOP1A-MMMOP6A style problems (after Liu, Yen & Gong 2019).

These are reconstructions built to the published shape of each instance
(number of equivalent subsets, D, M, front geometry), not verbatim copies of
the suite: the first variable is the position on the front and the remaining
ones carry a distance term ``g`` with one zero per equivalent subset. The
``provenance`` field of every instance says so.

``cos(c*pi*t)**2`` has exactly ``c`` zeros on [0, 1], at ``(j + 0.5) / c``.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..variation import Bounds
from .base import ProblemSpec

_NOTE = "reconstruction after Liu, Yen & Gong, TriMOEA-TA&R (IEEE TEVC 2019); matches tabulated PSS/D/M/geometry"


def _wells(t, c):
    return np.cos(c * np.pi * t) ** 2


def _zeros(c):
    return [(j + 0.5) / c for j in range(c)]


def _linear(x1, g):
    return np.column_stack([(1.0 + g) * x1, (1.0 + g) * (1.0 - x1)])


def _circle(x1, g):
    return np.column_stack([(1.0 + g) * np.cos(0.5 * np.pi * x1), (1.0 + g) * np.sin(0.5 * np.pi * x1)])


def mmmop1a(X):
    g = _wells(X[:, 1], 5) + (X[:, 2] - 0.5) ** 2
    return _linear(X[:, 0], g)


def mmmop2a(X):
    g = _wells(X[:, 1], 3) + _wells(X[:, 2], 2)
    return _circle(X[:, 0], g)


def mmmop3a(X):
    return _circle(X[:, 0], _wells(X[:, 1], 3))


def mmmop4a(X):
    return _circle(X[:, 0], _wells(X[:, 1], 4))


def mmmop5a(X):
    # the square warp crowds the four subsets towards x2 = 1
    return _circle(X[:, 0], _wells(X[:, 1] ** 2, 4))


def _mmmop6_shift(x1):
    return 0.1 * np.sin(np.pi * x1)


def mmmop6a(X):
    return _circle(X[:, 0], _wells(X[:, 1] - _mmmop6_shift(X[:, 0]), 2))


def _fixed(*tail):
    tail = np.asarray(tail, dtype=float)

    def curve(t):
        t = np.asarray(t, dtype=float)
        return np.column_stack([t, np.tile(tail, (len(t), 1))])

    return curve


def _linear_front(t):
    t = np.asarray(t, dtype=float)
    return np.column_stack([t, 1.0 - t])


def _circle_front(t):
    a = 0.5 * np.pi * np.asarray(t, dtype=float)
    return np.column_stack([np.cos(a), np.sin(a)])


def _circle_residual(F):
    return np.hypot(F[:, 0], F[:, 1]) - 1.0


def build() -> list[ProblemSpec]:
    unit2 = Bounds([0.0, 0.0], [1.0, 1.0])
    unit3 = Bounds([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])

    def mmmop6_curve(z):
        def curve(t):
            t = np.asarray(t, dtype=float)
            return np.column_stack([t, z + _mmmop6_shift(t)])

        return curve

    return [
        ProblemSpec(
            name="MMMOP1A", D=3, M=2, bounds=unit3, pss_count=5, pf_geometry="linear", ref_size=1000,
            func=mmmop1a, ps_subsets=tuple(_fixed(z, 0.5) for z in _zeros(5)),
            pf_curve=_linear_front, pf_residual=lambda F: F[:, 0] + F[:, 1] - 1.0, provenance=_NOTE,
        ),
        ProblemSpec(
            name="MMMOP2A", D=3, M=2, bounds=unit3, pss_count=6, pf_geometry="concave", ref_size=1002,
            func=mmmop2a,
            ps_subsets=tuple(_fixed(a, b) for a, b in itertools.product(_zeros(3), _zeros(2))),
            pf_curve=_circle_front, pf_residual=_circle_residual, provenance=_NOTE,
        ),
        ProblemSpec(
            name="MMMOP3A", D=2, M=2, bounds=unit2, pss_count=3, pf_geometry="concave", ref_size=999,
            func=mmmop3a, ps_subsets=tuple(_fixed(z) for z in _zeros(3)),
            pf_curve=_circle_front, pf_residual=_circle_residual, provenance=_NOTE,
        ),
        ProblemSpec(
            name="MMMOP4A", D=2, M=2, bounds=unit2, pss_count=4, pf_geometry="concave", ref_size=1000,
            func=mmmop4a, ps_subsets=tuple(_fixed(z) for z in _zeros(4)),
            pf_curve=_circle_front, pf_residual=_circle_residual, provenance=_NOTE,
        ),
        ProblemSpec(
            name="MMMOP5A", D=2, M=2, bounds=unit2, pss_count=4, pf_geometry="concave", ref_size=1000,
            func=mmmop5a, ps_subsets=tuple(_fixed(np.sqrt(z)) for z in _zeros(4)),
            pf_curve=_circle_front, pf_residual=_circle_residual, provenance=_NOTE,
        ),
        ProblemSpec(
            name="MMMOP6A", D=2, M=2, bounds=unit2, pss_count=2, pf_geometry="concave", ref_size=1000,
            func=mmmop6a, ps_subsets=tuple(mmmop6_curve(z) for z in _zeros(2)),
            pf_curve=_circle_front, pf_residual=_circle_residual, provenance=_NOTE,
        ),
    ]
