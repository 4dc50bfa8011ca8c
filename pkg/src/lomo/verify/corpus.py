"""Seeded test-function corpus.

Members are defined in physical coordinates, so the same corpus can be sampled
on grids of different resolution for refinement checks. Every member vanishes
outside the central half-box ``[-L/4, L/4]^n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..grid import Domain, GridFunction, unit_ball_volume

KINDS = ("ball", "union", "radial", "mode", "bandlimited", "spike")


def _radius(coords, center=None) -> np.ndarray:
    if center is None:
        center = [0.0] * len(coords)
    return np.sqrt(sum((x - c) ** 2 for x, c in zip(coords, center)))


def bump(r: np.ndarray, R: float) -> np.ndarray:
    """Smooth compactly supported window, equal to 1 at 0 and 0 for ``r >= R``."""
    s = np.clip(r / R, 0.0, 1.0)
    out = np.zeros_like(s)
    inside = s < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
    return out


# Non-increasing profiles on (0, inf), parametrized by a length scale ``a``
# (a measure, not a radius). Used for the radial members f(x) = phi(w_n |x|^n).
PROFILES: dict[str, Callable[[np.ndarray, float], np.ndarray]] = {
    "step": lambda t, a: (t < a).astype(float),
    "two_step": lambda t, a: np.where(t < a / 2, 2.0, np.where(t < a, 1.0, 0.0)),
    "linear": lambda t, a: np.clip(1.0 - t / a, 0.0, None),
    "exponential": lambda t, a: np.exp(-t / a),
    "gaussian": lambda t, a: np.exp(-(t / a) ** 2),
    "algebraic": lambda t, a: (1.0 + t / a) ** -2.0,
    "capped_power": lambda t, a: np.minimum(4.0, (t / a) ** -0.5),
    "plateau_tail": lambda t, a: np.where(t < a / 2, 1.0, 0.5 * np.exp(-(t - a / 2) / a)),
    "log": lambda t, a: np.log1p(a / np.maximum(t, 1e-300)).clip(max=3.0),
    "cosine": lambda t, a: np.where(t < a, 0.5 * (1 + np.cos(np.pi * np.minimum(t / a, 1.0))), 0.0),
    "slow_power": lambda t, a: (1.0 + t / a) ** -0.75,
    "sqrt_edge": lambda t, a: np.sqrt(np.clip(1.0 - t / a, 0.0, None)),
}


@dataclass(frozen=True)
class CorpusMember:
    name: str
    kind: str
    func: Callable[..., np.ndarray] = field(repr=False, compare=False)
    profile: str | None = None
    scale: float | None = None

    @property
    def radial(self) -> bool:
        return self.kind == "radial"

    def phi(self, t):
        """Radial profile as a function of measure (radial members only)."""
        if self.profile is None:
            raise ValueError(f"{self.name} is not a radial member")
        return PROFILES[self.profile](np.asarray(t, dtype=float), self.scale)

    def sample(self, domain: Domain) -> GridFunction:
        return GridFunction.from_callable(domain, self.func)

    def dilate(self, sigma: float) -> "CorpusMember":
        """``x -> f(sigma x)``."""
        func = self.func
        return CorpusMember(f"{self.name}@{sigma:g}", self.kind,
                            lambda *x: func(*(sigma * xi for xi in x)))


@dataclass
class Corpus:
    dim: int
    side: float = 4.0
    seed: int = 42
    size: int = 50
    members: list[CorpusMember] = field(default_factory=list)

    def __post_init__(self):
        if not self.members:
            self.members = list(_generate(self.dim, self.side, self.seed, self.size))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def radial(self) -> "Corpus":
        return self.subset(lambda m: m.radial)

    def subset(self, pred) -> "Corpus":
        return Corpus(self.dim, self.side, self.seed, 0, [m for m in self.members if pred(m)])

    def sample(self, domain: Domain) -> list[GridFunction]:
        return [m.sample(domain) for m in self.members]


def radial_member(dim: int, profile: str, scale: float, cutoff: float) -> CorpusMember:
    """``f(x) = phi(w_n |x|^n)`` for ``|x| < cutoff``."""
    omega = unit_ball_volume(dim)
    phi = PROFILES[profile]

    def func(*x):
        r = _radius(x)
        return np.where(r < cutoff, phi(omega * r ** dim, scale), 0.0)

    return CorpusMember(f"radial_{profile}", "radial", func, profile, scale)


def _generate(dim: int, side: float, seed: int, size: int):
    rng = np.random.default_rng(seed)
    R = side / 4  # members live in |x| < R
    omega = unit_ball_volume(dim)
    profiles = list(PROFILES)
    counters = dict.fromkeys(KINDS, 0)
    for i in range(size):
        kind = KINDS[i % len(KINDS)]
        j = counters[kind]
        counters[kind] += 1
        if kind == "ball":
            rad = rng.uniform(0.15, 0.6) * R
            c = rng.uniform(-1, 1, dim) * (R - rad) / np.sqrt(dim)
            h = rng.uniform(0.5, 2.0)
            func = _ball_func(c, rad, h)
        elif kind == "union":
            k = int(rng.integers(2, 4))
            rads = rng.uniform(0.1, 0.35, k) * R
            cs = [rng.uniform(-1, 1, dim) * (R - r_) / np.sqrt(dim) for r_ in rads]
            hs = rng.uniform(0.5, 2.0, k)
            func = _union_func(cs, rads, hs)
        elif kind == "radial":
            prof = profiles[j % len(profiles)]
            scale = rng.uniform(0.2, 0.6) * omega * R ** dim
            m = radial_member(dim, prof, scale, R)
            yield CorpusMember(f"{m.name}_{j}", m.kind, m.func, m.profile, m.scale)
            continue
        elif kind == "mode":
            k = rng.integers(1, 5, dim)
            ph = rng.uniform(0, 2 * np.pi)
            func = _mode_func(2 * np.pi * k / side, ph, R)
        elif kind == "bandlimited":
            m = 6
            ks = rng.integers(-6, 7, (m, dim)) * 2 * np.pi / side
            amps = rng.normal(size=m)
            phs = rng.uniform(0, 2 * np.pi, m)
            func = _band_func(ks, amps, phs, R)
        else:
            plateau = rng.uniform(0.3, 1.0)
            rad = rng.uniform(0.4, 0.8) * R
            n_sp = int(rng.integers(1, 4))
            sp_c = [rng.uniform(-1, 1, dim) * rad * 0.7 / np.sqrt(dim) for _ in range(n_sp)]
            sp_h = rng.uniform(2.0, 6.0, n_sp)
            width = side / 64
            func = _spike_func(plateau, rad, sp_c, sp_h, width)
        yield CorpusMember(f"{kind}_{j}", kind, func)


def _ball_func(c, rad, h):
    return lambda *x: h * (_radius(x, c) < rad)


def _union_func(cs, rads, hs):
    def func(*x):
        out = 0.0
        for c, r_, h in zip(cs, rads, hs):
            out = np.maximum(out, h * (_radius(x, c) < r_))
        return out
    return func


def _mode_func(xi, ph, R):
    return lambda *x: np.cos(sum(k * xx for k, xx in zip(xi, x)) + ph) * bump(_radius(x), R)


def _band_func(ks, amps, phs, R):
    def func(*x):
        out = 0.0
        for k, a, p in zip(ks, amps, phs):
            out = out + a * np.cos(sum(ki * xx for ki, xx in zip(k, x)) + p)
        return out * bump(_radius(x), R)
    return func


def _spike_func(plateau, rad, sp_c, sp_h, width):
    def func(*x):
        out = plateau * bump(_radius(x), rad) ** 0.25
        for c, h in zip(sp_c, sp_h):
            out = out + h * np.exp(-(_radius(x, c) / width) ** 2) * (_radius(x) < rad)
        return out
    return func


def random_pairs(corpus: Corpus, domain: Domain, count: int = 100, seed: int = 7):
    """Deterministic pairs ``(f, g)`` of signed, rescaled corpus members."""
    rng = np.random.default_rng(seed)
    fs = corpus.sample(domain)
    for _ in range(count):
        i, j = rng.integers(0, len(fs), 2)
        a, b = rng.uniform(-2, 2, 2)
        yield fs[i] * a, fs[j] * b
