"""Distribution functions and decreasing rearrangements.

A grid function has an atomic, uniform measure, so its rearrangement is an
exact step function: sort ``|f|`` in descending order and let every sample
occupy one cell volume of the ``t`` axis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import GridFunction


@dataclass(frozen=True, eq=False)
class DecreasingProfile:
    """Non-negative, non-increasing step function on ``(0, inf)``.

    ``values[k]`` is taken on ``[t_{k-1}, t_k)`` with ``t_{-1} = 0`` and the
    profile vanishes after the last breakpoint. This is the right-continuous
    version, i.e. ``f*(t) = inf{s >= 0 : d_f(s) <= t}``.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.breakpoints, dtype=float).ravel().copy()
        v = np.asarray(self.values, dtype=float).ravel().copy()
        if t.shape != v.shape or t.size == 0:
            raise ValueError("breakpoints and values must be non-empty and of equal length")
        if not (np.all(np.isfinite(t)) and t[0] > 0 and np.all(np.diff(t) > 0)):
            raise ValueError("breakpoints must be finite, positive and strictly increasing")
        if not (np.all(np.isfinite(v)) and np.all(v >= 0)):
            raise ValueError("values must be finite and non-negative")
        if np.any(np.diff(v) > 0):
            raise ValueError("values must be non-increasing")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "breakpoints", t)
        object.__setattr__(self, "values", v)
        cum = np.concatenate([[0.0], np.cumsum(v * np.diff(t, prepend=0.0))])
        cum.flags.writeable = False
        object.__setattr__(self, "_cumulative", cum)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_samples(cls, samples, cell_volume: float) -> "DecreasingProfile":
        v = np.sort(np.abs(np.asarray(samples, dtype=float).ravel()), kind="stable")[::-1]
        t = cell_volume * np.arange(1, v.size + 1)
        return cls(t, v)

    @classmethod
    def indicator(cls, length: float, height: float = 1.0) -> "DecreasingProfile":
        return cls([length], [height])

    @classmethod
    def from_function(
        cls,
        phi: Callable[[np.ndarray], np.ndarray],
        t_max: float,
        steps: int = 400,
        t_min: float | None = None,
    ) -> "DecreasingProfile":
        """Step approximation of a non-increasing ``phi`` on ``(0, t_max]``.

        Uniform steps by default; geometric steps from ``t_min`` when given
        (the first step then covers ``(0, t_min)``). Each step takes the value
        of ``phi`` at its midpoint.
        """
        if t_min is None:
            t = np.linspace(0, t_max, steps + 1)[1:]
        else:
            t = np.geomspace(t_min, t_max, steps)
        mid = 0.5 * (t + np.concatenate([[0.0], t[:-1]]))
        v = np.asarray(phi(mid), dtype=float)
        # clean up round-off that would break monotonicity
        v = np.minimum.accumulate(np.maximum(v, 0.0))
        return cls(t, v)

    # -- evaluation --------------------------------------------------------
    @property
    def support(self) -> float:
        """Right end of the last positive step."""
        pos = np.flatnonzero(self.values > 0)
        return float(self.breakpoints[pos[-1]]) if pos.size else 0.0

    @property
    def total(self) -> float:
        return float(self._cumulative[-1])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints, t, side="right")
        vals = np.append(self.values, 0.0)
        return vals[idx]

    def integral(self, t):
        """``int_0^t phi``, exact for the step function."""
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints, t, side="right")
        vals = np.append(self.values, 0.0)
        left = np.concatenate([[0.0], self.breakpoints])
        return self._cumulative[idx] + vals[idx] * (t - left[idx])

    def double_star(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0):
            raise ValueError("double_star needs t > 0")
        return self.integral(t) / t

    def weak_sup(self, exponent: float) -> float:
        """``sup_t t^exponent phi(t)`` for ``exponent >= 0``.

        The supremum over a step is approached at its right end, so it is the
        maximum of ``v_k t_k^exponent``.
        """
        return float(np.max(self.values * self.breakpoints ** exponent))

    def power_integral(self, p: float) -> float:
        """``int_0^inf phi^p dt``."""
        return float(np.sum(self.values ** p * np.diff(self.breakpoints, prepend=0.0)))

    def truncate(self, t_cut: float) -> "DecreasingProfile":
        """Profile of ``phi * indicator((0, t_cut))``."""
        keep = self.breakpoints < t_cut
        t = np.append(self.breakpoints[keep], t_cut)
        k = int(keep.sum())
        v = np.append(self.values[keep], self.values[k] if k < self.values.size else 0.0)
        return DecreasingProfile(t, v)

    def dilate(self, sigma: float) -> "DecreasingProfile":
        """Profile of ``t -> phi(sigma * t)``."""
        return DecreasingProfile(self.breakpoints / sigma, self.values)

    def to_dict(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "DecreasingProfile":
        return cls(data["breakpoints"], data["values"])


def distribution_function(f: GridFunction, level: float) -> float:
    """Measure of ``{|f| > level}``."""
    if level < 0:
        raise ValueError("level must be non-negative")
    return float(np.count_nonzero(np.abs(f.values) > level) * f.domain.cell_volume)


def decreasing_rearrangement(f: GridFunction) -> DecreasingProfile:
    return DecreasingProfile.from_samples(f.values, f.domain.cell_volume)


def double_star(profile: DecreasingProfile, t):
    """Average ``(1/t) int_0^t phi``."""
    out = profile.double_star(t)
    return float(out) if np.ndim(out) == 0 else out


def sum_decomposition(f: GridFunction, t: float) -> tuple[GridFunction, GridFunction]:
    """Split ``f`` at the level ``f*(t)`` into a peak part and a truncated part.

    Returns ``(g, h)`` with ``g = sgn f * max(|f| - f*(t), 0)`` and
    ``h = sgn f * min(|f|, f*(t))``.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    cut = float(decreasing_rearrangement(f)(t))
    a = np.abs(f.values)
    s = np.sign(f.values)
    g = s * np.maximum(a - cut, 0.0)
    h = s * np.minimum(a, cut)
    return f.with_values(g), f.with_values(h)
