"""Bounded simulated binary crossover and polynomial mutation.

Both operators follow the bound-aware forms of the NSGA-II reference code:
the SBX spread factor of each child is drawn from a density truncated so the
child cannot leave the box, and the PM perturbation is scaled by the distance
to the nearer bound. Any residual round-off is clipped.

Draw accounting is fixed regardless of which branches fire: SBX consumes
``1 + 3 * D`` uniforms (operator gate, then per-variable gate, spread and swap
rows), PM consumes ``2 * D`` (site and perturbation rows).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = 1.0e-14


@dataclass(frozen=True)
class Bounds:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.asarray(self.lower, dtype=float).ravel()
        upper = np.asarray(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape:
            raise ValueError("lower and upper bounds differ in length")
        if np.any(lower >= upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def _betaq(u: np.ndarray, alpha: np.ndarray, eta: float) -> np.ndarray:
    expo = 1.0 / (eta + 1.0)
    low = u <= 1.0 / alpha
    out = np.empty_like(u)
    out[low] = (u[low] * alpha[low]) ** expo
    out[~low] = (1.0 / (2.0 - u[~low] * alpha[~low])) ** expo
    return out


def sbx_crossover(p1, p2, pc: float, eta_c: float, bounds: Bounds, rng: np.random.Generator):
    """Return two children of ``p1`` and ``p2``.

    With probability ``1 - pc`` both children are copies of the parents.
    Otherwise each variable is recombined with probability 0.5 (and left as
    is with probability 0.5); recombined pairs are swapped between children
    with probability 0.5.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError(f"parent lengths differ: {p1.shape} vs {p2.shape}")
    if p1.shape != bounds.lower.shape:
        raise ValueError("parent length does not match bounds")
    d = len(p1)
    gate = rng.random()
    draws = rng.random((3, d))
    c1 = p1.copy()
    c2 = p2.copy()
    if gate > pc:
        return c1, c2

    active = (draws[0] <= 0.5) & (np.abs(p1 - p2) > _EPS)
    if not np.any(active):
        return c1, c2
    y1 = np.minimum(p1, p2)[active]
    y2 = np.maximum(p1, p2)[active]
    lo = bounds.lower[active]
    hi = bounds.upper[active]
    u = draws[1][active]
    span = y2 - y1

    beta = 1.0 + 2.0 * (y1 - lo) / span
    alpha = 2.0 - beta ** (-(eta_c + 1.0))
    ch1 = 0.5 * ((y1 + y2) - _betaq(u, alpha, eta_c) * span)

    beta = 1.0 + 2.0 * (hi - y2) / span
    alpha = 2.0 - beta ** (-(eta_c + 1.0))
    ch2 = 0.5 * ((y1 + y2) + _betaq(u, alpha, eta_c) * span)

    ch1 = np.clip(ch1, lo, hi)
    ch2 = np.clip(ch2, lo, hi)
    swap = draws[2][active] <= 0.5
    c1[active] = np.where(swap, ch2, ch1)
    c2[active] = np.where(swap, ch1, ch2)
    return c1, c2


def polynomial_mutation(x, pm: float, eta_m: float, bounds: Bounds, rng: np.random.Generator) -> np.ndarray:
    """Mutate each coordinate of ``x`` independently with probability ``pm``."""
    x = np.asarray(x, dtype=float)
    d = len(x)
    draws = rng.random((2, d))
    y = x.copy()
    site = draws[0] < pm
    if not np.any(site):
        return y
    lo = bounds.lower[site]
    hi = bounds.upper[site]
    v = x[site]
    u = draws[1][site]
    width = hi - lo
    delta1 = (v - lo) / width
    delta2 = (hi - v) / width
    expo = 1.0 / (eta_m + 1.0)
    deltaq = np.empty_like(v)
    left = u <= 0.5
    val = 2.0 * u[left] + (1.0 - 2.0 * u[left]) * (1.0 - delta1[left]) ** (eta_m + 1.0)
    deltaq[left] = val**expo - 1.0
    right = ~left
    val = 2.0 * (1.0 - u[right]) + 2.0 * (u[right] - 0.5) * (1.0 - delta2[right]) ** (eta_m + 1.0)
    deltaq[right] = 1.0 - val**expo
    y[site] = np.clip(v + deltaq * width, lo, hi)
    return y


def make_offspring(p1, p2, pc, eta_c, pm, eta_m, bounds: Bounds, rng: np.random.Generator) -> np.ndarray:
    """SBX then PM on the first child, which is the only one evaluated."""
    c1, _ = sbx_crossover(p1, p2, pc, eta_c, bounds, rng)
    return polynomial_mutation(c1, pm, eta_m, bounds, rng)
