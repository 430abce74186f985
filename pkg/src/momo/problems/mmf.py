"""MMF1-MMF8 (Yue, Qu & Liang 2017 multi-modal multi-objective suite)."""

from __future__ import annotations

import numpy as np

from ..variation import Bounds
from .base import ProblemSpec

_SRC = "Yue, Qu & Liang, multiobjective PSO with ring topology and special crowding distance (2017); MMF suite"


def _convex_front(t):
    t = np.asarray(t, dtype=float)
    return np.column_stack([t, 1.0 - np.sqrt(t)])


def _convex_residual(F):
    return F[:, 1] - (1.0 - np.sqrt(np.clip(F[:, 0], 0.0, None)))


def _sine(x1):
    return np.sin(6.0 * np.pi * np.abs(x1 - 2.0) + np.pi)


def _x1_curve(x1_of_t, x2_of_x1):
    def curve(t):
        x1 = x1_of_t(np.asarray(t, dtype=float))
        return np.column_stack([x1, x2_of_x1(x1)])

    return curve


def _left(t):
    return 2.0 - t


def _right(t):
    return 2.0 + t


def mmf1(X):
    d = np.abs(X[:, 0] - 2.0)
    f2 = 1.0 - np.sqrt(d) + 2.0 * (X[:, 1] - np.sin(6.0 * np.pi * d + np.pi)) ** 2
    return np.column_stack([d, f2])


def mmf2(X):
    x1 = X[:, 0]
    x2 = np.where(X[:, 1] > 1.0, X[:, 1] - 1.0, X[:, 1])
    y = x2 - np.sqrt(x1)
    f2 = 1.0 - np.sqrt(x1) + 2.0 * (4.0 * y**2 - 2.0 * np.cos(20.0 * y * np.pi / np.sqrt(2.0)) + 2.0)
    return np.column_stack([x1, f2])


def mmf3(X):
    x1, x2 = X[:, 0], X[:, 1]
    lower = (x2 <= 0.5) | ((x2 > 0.5) & (x2 < 1.0) & (x1 > 0.25))
    y = np.where(lower, x2 - np.sqrt(x1), x2 - 0.5 - np.sqrt(x1))
    f2 = 1.0 - np.sqrt(x1) + 2.0 * (4.0 * y**2 - 2.0 * np.cos(20.0 * y * np.pi / np.sqrt(2.0)) + 2.0)
    return np.column_stack([x1, f2])


def mmf4(X):
    x1, x2 = X[:, 0], X[:, 1]
    shift = np.where(x2 >= 1.0, 1.0, 0.0)
    f2 = 1.0 - x1**2 + 2.0 * (x2 - shift - np.sin(np.pi * np.abs(x1))) ** 2
    return np.column_stack([np.abs(x1), f2])


def mmf5(X):
    d = np.abs(X[:, 0] - 2.0)
    shift = np.where(X[:, 1] > 1.0, 2.0, 0.0)
    f2 = 1.0 - np.sqrt(d) + 2.0 * (X[:, 1] - shift - np.sin(6.0 * np.pi * d + np.pi)) ** 2
    return np.column_stack([d, f2])


def _within(x, intervals):
    hit = np.zeros(x.shape, dtype=bool)
    for lo, hi in intervals:
        hit |= (x > lo) & (x <= hi)
    return hit


# x1 intervals on which the PS sine is negative / positive
_NEG = [(7 / 6, 8 / 6), (9 / 6, 10 / 6), (11 / 6, 2.0), (2.0, 13 / 6), (14 / 6, 15 / 6), (16 / 6, 17 / 6)]
_POS = [(1.0, 7 / 6), (4 / 3, 3 / 2), (5 / 3, 11 / 6), (13 / 6, 14 / 6), (15 / 6, 16 / 6), (17 / 6, 3.0)]


def mmf6(X):
    x1, x2 = X[:, 0], X[:, 1]
    neg = _within(x1, _NEG)
    pos = _within(x1, _POS)
    up = (x2 > 1.0) & (x2 <= 2.0) & pos
    mid_shift = (x2 > 0.0) & (x2 <= 1.0) & neg
    shift = np.where(up | mid_shift, 1.0, 0.0)
    d = np.abs(x1 - 2.0)
    f2 = 1.0 - np.sqrt(d) + 2.0 * (x2 - shift - np.sin(6.0 * np.pi * d + np.pi)) ** 2
    return np.column_stack([d, f2])


def _mmf7_ps(x1):
    d = np.abs(x1 - 2.0)
    amp = 0.3 * d**2 * np.cos(24.0 * np.pi * d + 4.0 * np.pi / np.sqrt(2.0)) + 0.6 * d
    return amp * np.sin(6.0 * np.pi * d + np.pi)


def mmf7(X):
    d = np.abs(X[:, 0] - 2.0)
    f2 = 1.0 - np.sqrt(d) + (X[:, 1] - _mmf7_ps(X[:, 0])) ** 2
    return np.column_stack([d, f2])


def mmf8(X):
    x1, x2 = X[:, 0], X[:, 1]
    s = np.sin(np.abs(x1))
    shift = np.where(x2 > 4.0, 4.0, 0.0)
    f2 = np.sqrt(np.clip(1.0 - s**2, 0.0, None)) + 2.0 * (x2 - shift - s - np.abs(x1)) ** 2
    return np.column_stack([s, f2])


def build() -> list[ProblemSpec]:
    out = []

    out.append(
        ProblemSpec(
            name="MMF1", D=2, M=2, bounds=Bounds([1.0, -1.0], [3.0, 1.0]), pss_count=2,
            pf_geometry="convex", ref_size=1000, func=mmf1,
            ps_subsets=(_x1_curve(_left, _sine), _x1_curve(_right, _sine)),
            pf_curve=_convex_front, pf_residual=_convex_residual, provenance=_SRC + ", MMF1",
        )
    )

    def sqrt_plus(c):
        return lambda x1: np.sqrt(x1) + c

    out.append(
        ProblemSpec(
            name="MMF2", D=2, M=2, bounds=Bounds([0.0, 0.0], [1.0, 2.0]), pss_count=2,
            pf_geometry="convex", ref_size=1000, func=mmf2,
            ps_subsets=(_x1_curve(lambda t: t, sqrt_plus(0.0)), _x1_curve(lambda t: t, sqrt_plus(1.0))),
            pf_curve=_convex_front, pf_residual=_convex_residual, provenance=_SRC + ", MMF2",
        )
    )
    out.append(
        ProblemSpec(
            name="MMF3", D=2, M=2, bounds=Bounds([0.0, 0.0], [1.0, 1.5]), pss_count=2,
            pf_geometry="convex", ref_size=1000, func=mmf3,
            ps_subsets=(_x1_curve(lambda t: t, sqrt_plus(0.0)), _x1_curve(lambda t: t, sqrt_plus(0.5))),
            pf_curve=_convex_front, pf_residual=_convex_residual, provenance=_SRC + ", MMF3",
        )
    )

    def mmf4_ps(c):
        return lambda x1: np.sin(np.pi * np.abs(x1)) + c

    out.append(
        ProblemSpec(
            name="MMF4", D=2, M=2, bounds=Bounds([-1.0, 0.0], [1.0, 2.0]), pss_count=4,
            pf_geometry="concave", ref_size=1000, func=mmf4,
            ps_subsets=(
                _x1_curve(lambda t: -t, mmf4_ps(0.0)),
                _x1_curve(lambda t: t, mmf4_ps(0.0)),
                _x1_curve(lambda t: -t, mmf4_ps(1.0)),
                _x1_curve(lambda t: t, mmf4_ps(1.0)),
            ),
            pf_curve=lambda t: np.column_stack([t, 1.0 - np.asarray(t) ** 2]),
            pf_residual=lambda F: F[:, 1] - (1.0 - F[:, 0] ** 2),
            provenance=_SRC + ", MMF4",
        )
    )

    def sine_plus(c):
        return lambda x1: _sine(x1) + c

    for name, func, hi2, shift in (("MMF5", mmf5, 3.0, 2.0), ("MMF6", mmf6, 2.0, 1.0)):
        out.append(
            ProblemSpec(
                name=name, D=2, M=2, bounds=Bounds([1.0, -1.0], [3.0, hi2]), pss_count=4,
                pf_geometry="convex", ref_size=1000, func=func,
                ps_subsets=(
                    _x1_curve(_left, sine_plus(0.0)),
                    _x1_curve(_right, sine_plus(0.0)),
                    _x1_curve(_left, sine_plus(shift)),
                    _x1_curve(_right, sine_plus(shift)),
                ),
                pf_curve=_convex_front, pf_residual=_convex_residual, provenance=_SRC + ", " + name,
            )
        )

    out.append(
        ProblemSpec(
            name="MMF7", D=2, M=2, bounds=Bounds([1.0, -1.0], [3.0, 1.0]), pss_count=2,
            pf_geometry="convex", ref_size=1000, func=mmf7,
            ps_subsets=(_x1_curve(_left, _mmf7_ps), _x1_curve(_right, _mmf7_ps)),
            pf_curve=_convex_front, pf_residual=_convex_residual, provenance=_SRC + ", MMF7",
        )
    )

    def mmf8_ps(c):
        return lambda x1: np.sin(np.abs(x1)) + np.abs(x1) + c

    out.append(
        ProblemSpec(
            name="MMF8", D=2, M=2, bounds=Bounds([-np.pi, 0.0], [np.pi, 9.0]), pss_count=4,
            pf_geometry="concave", ref_size=1000, func=mmf8,
            ps_subsets=(
                _x1_curve(lambda t: -np.pi * t, mmf8_ps(0.0)),
                _x1_curve(lambda t: np.pi * t, mmf8_ps(0.0)),
                _x1_curve(lambda t: -np.pi * t, mmf8_ps(4.0)),
                _x1_curve(lambda t: np.pi * t, mmf8_ps(4.0)),
            ),
            pf_curve=lambda t: np.column_stack([t, np.sqrt(1.0 - np.asarray(t) ** 2)]),
            pf_residual=lambda F: F[:, 1] - np.sqrt(np.clip(1.0 - F[:, 0] ** 2, 0.0, None)),
            provenance=_SRC + ", MMF8",
        )
    )
    return out
