"""Stable special-function kernels and generic numerical utilities.

The workhorse is the orthonormal Hermite function

    F_n(s) = (sqrt(eB) / (n! 2^n sqrt(pi)))^(1/2) exp(-s^2/2) H_n(s),

evaluated by the three-term recurrence on the normalized functions
themselves (never on raw H_n or n!), so magnitudes stay O(1) up to
n ~ 10^4 and beyond.  A Gauss-Hermite rule and a peak finder round out
the toolbox; both are pure functions with no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite

__all__ = [
    "QuadratureRule",
    "HermiteScale",
    "hermite_fn",
    "hermite_table",
    "hermite_poly_table",
    "gauss_hermite",
    "find_peaks",
]

# exp(-s^2/2) underflows past here; the scalar path switches to a
# rescaled recurrence, the table path refuses (grids never go there)
_ENVELOPE_SMAX = 37.0

_RESCALE = 2.0 ** 1000
_LOG_RESCALE = 1000.0 * math.log(2.0)


@dataclass(frozen=True)
class HermiteScale:
    """Magnetic length scale: F_n carries an (eB)^(1/4) amplitude factor."""

    eB: float = 1.0

    def __post_init__(self) -> None:
        if not (self.eB > 0.0) or not math.isfinite(self.eB):
            raise ValueError(f"eB must be positive and finite, got {self.eB}")

    @property
    def amplitude(self) -> float:
        return self.eB ** 0.25


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x^2) on (-inf, inf)."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        """Sum w_i * values_i for values already stripped of exp(-x^2)."""
        return float(np.dot(self.weights, values))


def gauss_hermite(k: int) -> QuadratureRule:
    """k-point Gauss-Hermite rule, exact for polynomial degree <= 2k-1."""
    if k < 1:
        raise ValueError(f"quadrature order must be >= 1, got {k}")
    nodes, weights = roots_hermite(k)
    return QuadratureRule(nodes=nodes, weights=weights)


def hermite_fn(n: int, s: float, scale: HermiteScale | None = None) -> float:
    """Evaluate the orthonormal Hermite function F_n(s).

    Uses the recurrence F_{k+1} = s*sqrt(2/(k+1)) F_k - sqrt(k/(k+1)) F_{k-1}
    with a running power-of-two rescale, so the result is correct even where
    the Gaussian envelope exp(-s^2/2) alone would underflow doubles while
    F_n itself is O(1) (large n, |s| inside the classical region).
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    s = float(s)
    if math.isnan(s):
        raise ValueError("s is NaN")
    amp = scale.amplitude if scale is not None else 1.0

    log_seed = -0.25 * math.log(math.pi) - 0.5 * s * s
    q0 = 1.0
    q1 = math.sqrt(2.0) * s
    shift = log_seed
    if n == 0:
        q = q0
    else:
        for k in range(1, n):
            q0, q1 = q1, math.sqrt(2.0 / (k + 1)) * s * q1 - math.sqrt(k / (k + 1.0)) * q0
            m = max(abs(q0), abs(q1))
            if m > _RESCALE:
                q0 /= _RESCALE
                q1 /= _RESCALE
                shift += _LOG_RESCALE
            elif 0.0 < m < 1.0 / _RESCALE:
                q0 *= _RESCALE
                q1 *= _RESCALE
                shift -= _LOG_RESCALE
        q = q1
    if q == 0.0:
        return 0.0
    logv = math.log(abs(q)) + shift
    if logv < -745.0:
        return 0.0
    return math.copysign(math.exp(logv), q) * amp


def hermite_table(n_max: int, s: np.ndarray, scale: HermiteScale | None = None) -> np.ndarray:
    """All F_0..F_{n_max} on a grid; shape (n_max+1, len(s)).

    Plain (unrescaled) recurrence: valid for |s| <= ~37 where the Gaussian
    seed is representable, which covers every working grid (|s| <= a+6).
    """
    s = np.asarray(s, dtype=float)
    if np.isnan(s).any():
        raise ValueError("s contains NaN")
    if np.abs(s).max(initial=0.0) > _ENVELOPE_SMAX:
        raise ValueError(f"hermite_table limited to |s| <= {_ENVELOPE_SMAX}; use hermite_fn")
    amp = scale.amplitude if scale is not None else 1.0
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * s * s)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * s * out[0]
    for k in range(1, n_max):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * s * out[k] - np.sqrt(k / (k + 1.0)) * out[k - 1]
    if amp != 1.0:
        out *= amp
    return out


def hermite_poly_table(n_max: int, s: np.ndarray) -> np.ndarray:
    """Envelope-free parts p_n = F_n * exp(+s^2/2) at unit eB; shape (n_max+1, len(s)).

    p_n is the degree-n polynomial that makes integrals against exp(-x^2)
    exactly Gauss-Hermite summable (degree n rule coverage, no envelope
    stripping at the nodes).
    """
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = np.pi ** -0.25 * np.ones_like(s)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * s * out[0]
    for k in range(1, n_max):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * s * out[k] - np.sqrt(k / (k + 1.0)) * out[k - 1]
    return out


def find_peaks(series, min_height: float, min_separation: float) -> list[tuple[float, float]]:
    """Local maxima of a uniformly sampled series, refined sub-grid.

    `series` needs `t0`, `dt` and `values` attributes (see TimeSeries).
    Maxima below `min_height` are dropped; of any cluster closer than
    `min_separation` only the highest survives (greedy by height).  Each
    kept peak is refined by a 3-point parabolic fit in both position and
    height.  Returns (t, height) pairs sorted by t.
    """
    values = np.asarray(series.values)
    if np.iscomplexobj(values):
        values = np.abs(values)
    n = values.size
    if n == 0:
        raise ValueError("empty series")
    dt = float(series.dt)
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    t0 = float(series.t0)

    interior = np.arange(1, n - 1)
    is_max = (values[interior] >= values[interior - 1]) & (values[interior] >= values[interior + 1])
    # plateau guard: keep only the first sample of a flat run
    is_max &= ~((values[interior] == values[interior - 1]) & (values[interior] == values[interior + 1]))
    cand = interior[is_max & (values[interior] >= min_height)]

    kept: list[int] = []
    for i in sorted(cand, key=lambda i: (-values[i], i)):
        if all(abs(i - j) * dt >= min_separation for j in kept):
            kept.append(i)

    peaks = []
    for i in kept:
        ym, y0, yp = values[i - 1], values[i], values[i + 1]
        denom = ym - 2.0 * y0 + yp
        if denom < 0.0:
            delta = 0.5 * (ym - yp) / denom
            height = y0 - 0.25 * (ym - yp) * delta
        else:
            delta, height = 0.0, y0
        peaks.append((t0 + (i + delta) * dt, float(height)))
    peaks.sort()
    return peaks
