"""IDMP-M2-T1..T4 style imbalanced distance minimization problems (after Liu et al. 2019).

Reconstructions with the tabulated shape (2 subsets, D=2, M=2, linear front).
Two copies of a pair of targets sit on x2 = -0.5 and x2 = +0.5; each objective
is the distance to its target in the nearer copy plus that copy's distance
term. The +0.5 copy's term is scaled by ``ALPHA``, which makes it the harder
subset to hold. T1/T2 use linear/quadratic terms, T3/T4 add a cosine ripple
that creates local optima.
"""

from __future__ import annotations

import numpy as np

from ..variation import Bounds
from .base import ProblemSpec, segment

ALPHA = 4.0
_NOTE = (
    "reconstruction after Liu, Ishibuchi, Yen, Nojima & Masuyama, CPDEA (IEEE TEVC 2020); "
    "matches tabulated PSS/D/M/geometry"
)


def _ripple(u):
    return 0.1 * (1.0 - np.cos(10.0 * np.pi * u))


_TERMS = {
    "T1": np.abs,
    "T2": np.square,
    "T3": lambda u: np.abs(u) + _ripple(u),
    "T4": lambda u: np.square(u) + _ripple(u),
}


def make(term):
    def func(X):
        x1, x2 = X[:, 0], X[:, 1]
        ga = term(x2 + 0.5)
        gb = ALPHA * term(x2 - 0.5)
        f1 = np.minimum(np.abs(x1 + 0.6) + ga, np.abs(x1 - 0.4) + gb)
        f2 = np.minimum(np.abs(x1 + 0.4) + ga, np.abs(x1 - 0.6) + gb)
        return np.column_stack([f1, f2])

    return func


def _front(t):
    t = np.asarray(t, dtype=float)
    return np.column_stack([0.2 * t, 0.2 * (1.0 - t)])


def build() -> list[ProblemSpec]:
    out = []
    for tag, term in _TERMS.items():
        out.append(
            ProblemSpec(
                name=f"IDMP-M2-{tag}", D=2, M=2, bounds=Bounds([-1.0, -1.0], [1.0, 1.0]),
                pss_count=2, pf_geometry="linear", ref_size=1000, func=make(term),
                ps_subsets=(segment([-0.6, -0.5], [-0.4, -0.5]), segment([0.4, 0.5], [0.6, 0.5])),
                pf_curve=_front, pf_residual=lambda F: F[:, 0] + F[:, 1] - 0.2, provenance=_NOTE,
            )
        )
    return out
