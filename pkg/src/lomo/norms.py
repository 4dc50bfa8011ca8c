"""Lorentz, Morrey and Lorentz-Morrey norms of grid functions.

Suprema over balls run over a :class:`SweepSpec` of grid-point centers and
radii. Because a sup over a finite sweep can only grow when the sweep grows,
every sweep value is a lower bound for the continuum quantity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import GridFunction, ball, restrict, stencil_offsets
from .maximal import RadiusGrid, _as_radii
from .rearrangement import DecreasingProfile, decreasing_rearrangement

_CHUNK = 1 << 22


@dataclass(frozen=True)
class SpaceParams:
    """Exponents of a Lorentz-Morrey space, plus the optional target pair (u, s)."""

    p: float
    q: float
    lam: float = 0.0
    u: float | None = None
    s: float | None = None

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        for name in ("q", "u", "s"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"need {name} > 0, got {v}")

    @property
    def conjugate(self) -> float:
        """``p'`` with ``1/p + 1/p' = 1``."""
        return math.inf if self.p == 1 else self.p / (self.p - 1)


@dataclass(frozen=True, eq=False)
class SweepSpec:
    """Centers (integer cell multi-indices, shape ``(M, n)``) and radii."""

    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.centers, dtype=int))
        r = _as_radii(self.radii)
        if c.shape[0] == 0 or r.size == 0:
            raise ValueError("sweep needs at least one center and one radius")
        if np.any(r <= 0):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radii", r)

    @property
    def n_balls(self) -> int:
        return self.centers.shape[0] * self.radii.size


def default_sweep(
    f: GridFunction,
    radii=None,
    max_centers: int = 4096,
    stride: int | None = None,
) -> SweepSpec:
    """Grid points at a stride keeping at most ``max_centers`` centers, plus the
    cell nearest the centroid of ``|f|``."""
    dom = f.domain
    N = dom.points_per_axis
    if stride is None:
        stride = 1
        while (N // stride) ** dom.dim > max_centers:
            stride *= 2
    ax = np.arange(0, N, stride)
    centers = np.stack(np.meshgrid(*([ax] * dom.dim), indexing="ij"), -1).reshape(-1, dom.dim)
    a = np.abs(f.values)
    if a.sum() > 0:
        idx = np.indices(dom.shape).reshape(dom.dim, -1)
        w = a.ravel() / a.sum()
        centroid = np.rint(idx @ w).astype(int) % N
        centers = np.unique(np.vstack([centers, centroid]), axis=0)
    if radii is None:
        radii = RadiusGrid.for_domain(dom)
    return SweepSpec(centers, _as_radii(radii))


@dataclass
class NormResult:
    norm: float
    argmax_center: tuple[float, ...] | None
    argmax_radius: float | None
    sweep_stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "argmax_center": list(self.argmax_center) if self.argmax_center is not None else None,
            "argmax_radius": self.argmax_radius,
            "sweep_stats": dict(self.sweep_stats),
        }


# -- Lorentz functionals -----------------------------------------------------

def _step_increments(k: np.ndarray, a: float) -> np.ndarray:
    """``k^a - (k-1)^a`` for integers ``k >= 1`` without cancellation."""
    k = np.asarray(k, dtype=float)
    out = np.ones_like(k)
    big = k > 1
    kb = k[big]
    out[big] = kb ** a * -np.expm1(a * np.log1p(-1.0 / kb))
    return out


def _lorentz_weights(count: int, cell_volume: float, p: float, q: float) -> np.ndarray:
    """``int_{(k-1)h}^{kh} t^(q/p - 1) dt`` for the cells ``k = 1..count``."""
    a = q / p
    return (p / q) * cell_volume ** a * _step_increments(np.arange(1, count + 1), a)


def _lorentz_sorted(v: np.ndarray, cell_volume: float, p: float, q: float) -> np.ndarray:
    """Lorentz functional of rows of descending-sorted values ``v``."""
    S = v.shape[-1]
    if math.isinf(q):
        t = cell_volume * np.arange(1, S + 1)
        return np.max(v * t ** (1.0 / p), axis=-1)
    w = _lorentz_weights(S, cell_volume, p, q)
    return np.sum(v ** q * w, axis=-1) ** (1.0 / q)


def _check_pq(p: float, q: float) -> None:
    if not p >= 1:
        raise ValueError(f"need p >= 1, got {p}")
    if not q > 0:
        raise ValueError(f"need q > 0, got {q}")


def lorentz_norm(f, p: float, q: float) -> float:
    """``(int_0^inf (t^(1/p) f*(t))^q dt/t)^(1/q)``, or ``sup t^(1/p) f*(t)`` for ``q = inf``.

    Accepts a :class:`GridFunction` or a :class:`DecreasingProfile`; either way
    the integral is evaluated in closed form on every step.
    """
    _check_pq(p, q)
    if isinstance(f, GridFunction):
        v = np.sort(np.abs(f.samples))[::-1]
        return float(_lorentz_sorted(v, f.domain.cell_volume, p, q))
    prof: DecreasingProfile = f
    if math.isinf(q):
        return prof.weak_sup(1.0 / p)
    a = q / p
    t = prof.breakpoints
    inc = np.diff(t ** a, prepend=0.0)
    return float(np.sum(prof.values ** q * (p / q) * inc) ** (1.0 / q))


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def lorentz_norm_double_star(f, p: float, q: float) -> float:
    """The same functional with ``f**`` in place of ``f*``.

    ``f**`` is not a step function, so each step interval is integrated with
    16-point Gauss-Legendre; the first step and the ``t^-1`` tail past the
    support are done in closed form.
    """
    _check_pq(p, q)
    if not p > 1:
        raise ValueError("the f** functional is finite only for p > 1")
    prof = decreasing_rearrangement(f) if isinstance(f, GridFunction) else f
    t = prof.breakpoints
    if math.isinf(q):
        return float(np.max(t ** (1.0 / p) * prof.double_star(t)))
    a = q / p
    total = prof.values[0] ** q * (p / q) * t[0] ** a
    lo, hi = t[:-1], t[1:]
    if lo.size:
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
        vals = prof.double_star(nodes) ** q * nodes ** (a - 1.0)
        total += float(np.sum(half * (vals @ _GL_W)))
    total += prof.total ** q * t[-1] ** (a - q) / (q - a)
    return float(total ** (1.0 / q))


# -- sweeps -------------------------------------------------------------------

def _gather_balls(f: GridFunction, sweep: SweepSpec):
    """Yield ``(radius, rows, values)`` with the samples of each swept ball.

    ``values`` has one row per center in ``rows`` (indices into
    ``sweep.centers``) and one column per cell of the ball.
    """
    dom = f.domain
    N = dom.points_per_axis
    flat = f.samples
    M = sweep.centers.shape[0]
    for r in sweep.radii:
        offs = stencil_offsets(dom, r)
        S = offs.shape[0]
        if S == 0:
            continue
        step = max(1, _CHUNK // S)
        for start in range(0, M, step):
            c = sweep.centers[start:start + step]
            idx = (c[:, None, :] + offs[None, :, :]) % N
            lin = np.ravel_multi_index(tuple(np.moveaxis(idx, -1, 0)), dom.shape)
            yield float(r), np.arange(start, start + c.shape[0]), flat[lin]


def _center_coords(f: GridFunction, c: np.ndarray) -> tuple[float, ...]:
    ax = f.domain.axis()
    return tuple(float(ax[i]) for i in c)


def lorentz_morrey_sweep(f: GridFunction, params, sweep: SweepSpec) -> list[NormResult]:
    """Lorentz-Morrey norms for several ``(p, q, lam)`` triples in one pass.

    Each ball is gathered and sorted once and reused for every triple.
    """
    params = [tuple(map(float, prm)) for prm in params]
    for p, q, _ in params:
        _check_pq(p, q)
    cv = f.domain.cell_volume
    best = [(-1.0, None, None) for _ in params]
    for r, rows, vals in _gather_balls(f, sweep):
        v = np.sort(np.abs(vals), axis=1)[:, ::-1]
        for j, (p, q, lam) in enumerate(params):
            terms = r ** (-lam / p) * _lorentz_sorted(v, cv, p, q)
            i = int(np.argmax(terms))
            if terms[i] > best[j][0]:
                best[j] = (float(terms[i]), rows[i], r)
    stats = {
        "n_centers": int(sweep.centers.shape[0]),
        "n_radii": int(sweep.radii.size),
        "n_balls": int(sweep.n_balls),
    }
    return [
        NormResult(b[0], _center_coords(f, sweep.centers[b[1]]), b[2], stats)
        if b[1] is not None else NormResult(0.0, None, None, stats)
        for b in best
    ]


def lorentz_morrey_norm(f: GridFunction, p: float, q: float, lam: float, sweep: SweepSpec) -> float:
    """``sup_{x,r} r^(-lam/p) ||f 1_B(x,r)||_{L_{p,q}}`` over the sweep."""
    return lorentz_morrey_sweep(f, [(p, q, lam)], sweep)[0].norm


def morrey_sweep(f: GridFunction, p: float, lam: float, sweep: SweepSpec) -> NormResult:
    if not p >= 1:
        raise ValueError(f"need p >= 1, got {p}")
    cv = f.domain.cell_volume
    best = (-1.0, None, None)
    for r, rows, vals in _gather_balls(f, sweep):
        terms = r ** (-lam / p) * (np.sum(np.abs(vals) ** p, axis=1) * cv) ** (1.0 / p)
        i = int(np.argmax(terms))
        if terms[i] > best[0]:
            best = (float(terms[i]), rows[i], r)
    stats = {"n_centers": int(sweep.centers.shape[0]), "n_radii": int(sweep.radii.size),
             "n_balls": int(sweep.n_balls)}
    if best[1] is None:
        return NormResult(0.0, None, None, stats)
    return NormResult(best[0], _center_coords(f, sweep.centers[best[1]]), best[2], stats)


def morrey_norm(f: GridFunction, p: float, lam: float, sweep: SweepSpec) -> float:
    """``sup_{x,r} r^(-lam/p) ||f||_{L_p(B(x,r))}`` over the sweep."""
    return morrey_sweep(f, p, lam, sweep).norm


def degenerate_space_probe(
    f: GridFunction, p: float, q: float, lam: float, center, radius: float
) -> float:
    """Growth factor of a single Lorentz-Morrey ball term when ``lam`` is outside ``[0, n]``.

    For ``lam > n`` returns ``term(radius/2) / term(radius)``; for ``lam < 0``
    returns ``term(2 radius) / term(radius)``. A factor above one that persists
    along the halving (doubling) chain means the sup is infinite.
    """
    n = f.domain.dim
    if 0 <= lam <= n:
        raise ValueError(f"lam must lie outside [0, {n}], got {lam}")
    if not np.any(f.values):
        raise ValueError("the probe needs a function that is not identically zero")

    def term(r):
        return r ** (-lam / p) * lorentz_norm(restrict(f, ball(f.domain, center, r)), p, q)

    other = radius / 2 if lam > n else 2 * radius
    base = term(radius)
    if base == 0:
        raise ValueError("the ball around center misses the support of f")
    return term(other) / base
