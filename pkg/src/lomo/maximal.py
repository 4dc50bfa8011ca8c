"""Centered maximal operators on periodic grids and the Hardy functionals.

The supremum over ``r > 0`` is taken over a geometric :class:`RadiusGrid`.
For a fixed radius the ball sums at every cell center are one periodic
convolution of ``|f|`` with the ball stencil, done with real FFTs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .grid import Domain, GridFunction, stencil_mask
from .rearrangement import DecreasingProfile


@dataclass(frozen=True, eq=False)
class RadiusGrid:
    radii: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float).ravel().copy()
        if r.size < 16:
            raise ValueError(f"a radius grid needs at least 16 radii, got {r.size}")
        if not (r[0] > 0 and np.all(np.diff(r) > 0)):
            raise ValueError("radii must be positive and strictly increasing")
        ratios = r[1:] / r[:-1]
        if np.max(np.abs(ratios - ratios[0])) > 1e-12 * ratios[0]:
            raise ValueError("radii must be geometrically spaced")
        r.flags.writeable = False
        object.__setattr__(self, "radii", r)

    @classmethod
    def geometric(cls, r_min: float, r_max: float, count: int = 32) -> "RadiusGrid":
        ratio = (r_max / r_min) ** (1.0 / (count - 1))
        r = r_min * ratio ** np.arange(count)
        r[-1] = min(r[-1], r_max)
        return cls(r)

    @classmethod
    def for_domain(cls, domain: Domain, count: int = 32) -> "RadiusGrid":
        """Radii from one grid spacing up to half the box side."""
        return cls.geometric(domain.spacing, domain.side / 2, count)

    def __len__(self) -> int:
        return self.radii.size

    def __iter__(self):
        return iter(self.radii)


def _as_radii(radii) -> np.ndarray:
    if isinstance(radii, RadiusGrid):
        return radii.radii
    return np.asarray(radii, dtype=float).ravel()


def ball_sums(f: GridFunction, radii: Iterable[float], power: float = 1.0):
    """Yield ``(radius, cell_count, sums)`` with ``sums[x] = sum_{B(x,r)} |f|^power``.

    ``sums`` omits the cell volume factor.
    """
    dom = f.domain
    a = np.abs(f.values) ** power
    axes = tuple(range(dom.dim))
    fa = np.fft.rfftn(a)
    scale = float(a.max()) if a.size else 0.0
    for r in radii:
        mask = stencil_mask(dom, r)
        count = int(mask.sum())
        s = np.fft.irfftn(fa * np.fft.rfftn(mask.astype(float)), s=dom.shape, axes=axes)
        # FFT round-off: clip tiny negatives and snap near-zero noise
        s[s < 1e-13 * scale * count] = 0.0
        yield float(r), count, s


def fractional_maximal(f: GridFunction, alpha: float, radii) -> GridFunction:
    """``M_alpha f(x) = max_r |B(x,r)|^(alpha/n - 1) int_B |f|`` over the radius grid."""
    n = f.domain.dim
    _check_alpha(alpha, n)
    cv = f.domain.cell_volume
    out = np.zeros(f.domain.shape)
    for _, count, s in ball_sums(f, _as_radii(radii)):
        measure = count * cv
        np.maximum(out, measure ** (alpha / n - 1.0) * s * cv, out=out)
    return f.with_values(out)


def hardy_littlewood(f: GridFunction, radii) -> GridFunction:
    return fractional_maximal(f, 0.0, radii)


def hardy_operator(phi: DecreasingProfile, alpha: float, n: int, t):
    """``H(t) = t^(alpha/n - 1) int_0^t phi``."""
    _check_alpha(alpha, n)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    out = t ** (alpha / n - 1.0) * phi.integral(t)
    return float(out) if out.ndim == 0 else out


def sup_hardy(phi: DecreasingProfile, alpha: float, n: int, t):
    """``sup_{tau > t} tau^(alpha/n) phi**(tau)``.

    On a step ``[t_{k-1}, t_k)`` the function is ``a tau^(b-1) + v tau^b``
    with ``a >= 0``, ``v >= 0`` and ``b = alpha/n < 1``; its only critical
    point is a minimum, so the supremum is attained at ``t`` itself or at a
    breakpoint beyond ``t``. Past the support it decays like ``tau^(b-1)``.
    """
    _check_alpha(alpha, n)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    b = alpha / n
    bp = phi.breakpoints
    at_bp = bp ** (b - 1.0) * phi.integral(bp)
    suffix = np.maximum.accumulate(at_bp[::-1])[::-1]
    suffix = np.append(suffix, -np.inf)
    idx = np.searchsorted(bp, t, side="right")
    here = t ** (b - 1.0) * phi.integral(t)
    out = np.maximum(here, suffix[idx])
    return float(out) if out.ndim == 0 else out


def _check_alpha(alpha: float, n: int) -> None:
    if not 0 <= alpha < n:
        raise ValueError(f"alpha must lie in [0, {n}), got {alpha}")
