"""Uniform periodic grids standing in for R^n.

The box is ``[-L/2, L/2)^n`` with ``N`` cells per axis. Samples live at
cell centers ``-L/2 + (i + 1/2) h`` and every cell carries the weight
``h^n``, so integrals over a set of cells are plain weighted sums.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

# relative slack used to exclude cells sitting exactly on a ball boundary
_OPEN_BALL_TOL = 1e-12


def unit_ball_volume(dim: int) -> float:
    """Lebesgue measure of the unit ball in ``dim`` dimensions."""
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1)


@dataclass(frozen=True)
class Domain:
    dim: int
    side: float
    points_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if not self.side > 0:
            raise ValueError(f"side must be positive, got {self.side}")
        n = self.points_per_axis
        if n < 8 or n & (n - 1):
            raise ValueError(f"points_per_axis must be a power of two >= 8, got {n}")

    @property
    def spacing(self) -> float:
        return self.side / self.points_per_axis

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    @property
    def measure(self) -> float:
        return self.side ** self.dim

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.points_per_axis ** self.dim

    @property
    def omega(self) -> float:
        return unit_ball_volume(self.dim)

    def axis(self) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        h = self.spacing
        return -self.side / 2 + (np.arange(self.points_per_axis) + 0.5) * h

    def mesh(self) -> tuple[np.ndarray, ...]:
        ax = self.axis()
        return tuple(np.meshgrid(*([ax] * self.dim), indexing="ij"))

    def points(self) -> np.ndarray:
        """All cell centers as an ``(N**n, n)`` array in row-major order."""
        return np.stack([m.ravel() for m in self.mesh()], axis=1)

    def refine(self, factor: int = 2) -> "Domain":
        return Domain(self.dim, self.side, self.points_per_axis * factor)

    def wrapped_offsets(self) -> np.ndarray:
        """Signed integer offsets ``k`` in ``[-N/2, N/2)`` for every cell, per axis.

        Shape ``(n, N, ..., N)``; cell ``i`` sits ``k(i) * h`` away from cell 0
        under the periodic metric.
        """
        n = self.points_per_axis
        k = (np.arange(n) + n // 2) % n - n // 2
        return np.stack(np.meshgrid(*([k] * self.dim), indexing="ij"))


def make_domain(dim: int, side: float, points_per_axis: int) -> Domain:
    return Domain(int(dim), float(side), int(points_per_axis))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real samples on the cell centers of a :class:`Domain`.

    ``values`` is stored with shape ``domain.shape``; ``samples`` is the flat
    row-major view used by the file format.
    """

    domain: Domain
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.size != self.domain.size:
            raise ValueError(
                f"expected {self.domain.size} samples, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        arr = arr.reshape(self.domain.shape).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_callable(cls, domain: Domain, func: Callable[..., np.ndarray]) -> "GridFunction":
        """Sample ``func(x1, ..., xn)`` at the cell centers."""
        vals = np.broadcast_to(func(*domain.mesh()), domain.shape)
        return cls(domain, vals)

    @classmethod
    def constant(cls, domain: Domain, c: float) -> "GridFunction":
        return cls(domain, np.full(domain.shape, float(c)))

    @property
    def samples(self) -> np.ndarray:
        return self.values.ravel()

    def abs(self) -> "GridFunction":
        return GridFunction(self.domain, np.abs(self.values))

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.domain, values)

    def integral(self, power: float = 1.0) -> float:
        """``sum |f|^power * cell_volume``."""
        return float(np.sum(np.abs(self.values) ** power) * self.domain.cell_volume)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _check_same_domain(self, other)
        return GridFunction(self.domain, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _check_same_domain(self, other)
        return GridFunction(self.domain, self.values - other.values)

    def __mul__(self, c: float) -> "GridFunction":
        return GridFunction(self.domain, self.values * c)

    __rmul__ = __mul__

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "dim": self.domain.dim,
            "side": self.domain.side,
            "n_points": self.domain.points_per_axis,
            "samples": self.samples.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GridFunction":
        missing = {"dim", "side", "n_points", "samples"} - set(data)
        if missing:
            raise ValueError(f"grid function record lacks {sorted(missing)}")
        dom = make_domain(data["dim"], data["side"], data["n_points"])
        return cls(dom, np.asarray(data["samples"], dtype=float))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "GridFunction":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _check_same_domain(f: GridFunction, g: GridFunction) -> None:
    if f.domain != g.domain:
        raise ValueError("grid functions live on different domains")


@dataclass(frozen=True, eq=False)
class Ball:
    """Open periodic ball discretized by the cell-center-in-ball rule."""

    domain: Domain
    center: tuple[float, ...]
    radius: float
    cell_indices: np.ndarray = field(repr=False)

    @property
    def measure(self) -> float:
        return len(self.cell_indices) * self.domain.cell_volume

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.domain.size, dtype=bool)
        m[self.cell_indices] = True
        return m.reshape(self.domain.shape)


def periodic_distance(domain: Domain, center: Sequence[float]) -> np.ndarray:
    """Distance from every cell center to ``center`` on the torus."""
    L = domain.side
    d2 = np.zeros(domain.shape)
    for x, c in zip(domain.mesh(), center):
        d = np.mod(x - c + L / 2, L) - L / 2
        d2 += d * d
    return np.sqrt(d2)


def ball(domain: Domain, center, radius: float) -> Ball:
    center = tuple(float(c) for c in np.atleast_1d(center))
    if len(center) != domain.dim:
        raise ValueError(f"center has {len(center)} coordinates, domain has dim {domain.dim}")
    if not 0 < radius <= domain.side / 2:
        raise ValueError(f"radius must lie in (0, {domain.side / 2}], got {radius}")
    inside = periodic_distance(domain, center) < radius * (1 - _OPEN_BALL_TOL)
    return Ball(domain, center, float(radius), np.flatnonzero(inside.ravel()))


def ball_average(f: GridFunction, b: Ball) -> float:
    if len(b.cell_indices) == 0:
        raise ValueError("ball contains no cell centers")
    vals = np.abs(f.samples[b.cell_indices])
    return float(vals.sum() * f.domain.cell_volume / b.measure)


def restrict(f: GridFunction, b: Ball) -> GridFunction:
    """``f * indicator(b)``."""
    out = np.zeros(f.domain.size)
    out[b.cell_indices] = f.samples[b.cell_indices]
    return GridFunction(f.domain, out)


def translate(f: GridFunction, shift: Sequence[int]) -> GridFunction:
    """Periodic shift by whole cells: ``(translate f)(x) = f(x - shift*h)``."""
    shift = tuple(int(s) for s in np.atleast_1d(shift))
    return GridFunction(f.domain, np.roll(f.values, shift, axis=tuple(range(f.domain.dim))))


def stencil_mask(domain: Domain, radius: float) -> np.ndarray:
    """Cells of the ball of ``radius`` centered at the center of cell 0.

    Translating this mask by a whole number of cells gives the ball around any
    other cell center, which is what the convolution-based operators rely on.
    """
    k = domain.wrapped_offsets().astype(float)
    d2 = np.sum(k * k, axis=0)
    return d2 < (radius / domain.spacing) ** 2 * (1 - _OPEN_BALL_TOL)


def stencil_offsets(domain: Domain, radius: float) -> np.ndarray:
    """Integer offsets (shape ``(S, n)``) of the cells in :func:`stencil_mask`."""
    k = domain.wrapped_offsets()
    mask = stencil_mask(domain, radius)
    return np.stack([k[i][mask] for i in range(domain.dim)], axis=1)
