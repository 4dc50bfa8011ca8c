"""Bochner-Riesz means and Schrodinger-type operators on the periodic grid.

Bochner-Riesz means are Fourier multipliers applied with the FFT. The
operators ``V^g (-Lap + V)^-b`` and ``V^g grad (-Lap + V)^-b`` use the
second-order periodic Laplacian; negative powers of the Hamiltonian come from
a dense symmetric eigendecomposition, or from the FFT when ``V`` is constant.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .grid import Domain, GridFunction
from .maximal import _as_radii

DENSE_BUDGET = 4096


@dataclass(frozen=True)
class MultiplierSpec:
    delta: float
    r: float
    dim: int = 1

    def __post_init__(self):
        if not self.delta > (self.dim - 1) / 2:
            raise ValueError(
                f"Bochner-Riesz order needs delta > (n-1)/2 = {(self.dim - 1) / 2}, got {self.delta}"
            )
        if not self.r > 0:
            raise ValueError("r must be positive")


def wavenumbers(domain: Domain) -> tuple[np.ndarray, ...]:
    """Physical wavenumbers ``2 pi k / L`` on the full FFT grid, one array per axis."""
    k = 2 * np.pi * np.fft.fftfreq(domain.points_per_axis, d=domain.spacing)
    return tuple(np.meshgrid(*([k] * domain.dim), indexing="ij"))


def bochner_riesz_symbol(domain: Domain, delta: float, r: float) -> np.ndarray:
    xi2 = sum(k * k for k in wavenumbers(domain))
    return np.maximum(1.0 - r * r * xi2, 0.0) ** delta


def bochner_riesz(f: GridFunction, spec: MultiplierSpec) -> GridFunction:
    if spec.dim != f.domain.dim:
        raise ValueError("multiplier spec and grid function disagree on dimension")
    m = bochner_riesz_symbol(f.domain, spec.delta, spec.r)
    out = np.fft.ifftn(m * np.fft.fftn(f.values))
    return f.with_values(out.real)


def maximal_bochner_riesz(f: GridFunction, delta: float, radii) -> GridFunction:
    """``sup_r |B_r^delta f|`` over the given scales."""
    n = f.domain.dim
    MultiplierSpec(delta, 1.0, n)  # validates delta
    fh = np.fft.fftn(f.values)
    out = np.zeros(f.domain.shape)
    for r in _as_radii(radii):
        m = bochner_riesz_symbol(f.domain, delta, r)
        np.maximum(out, np.abs(np.fft.ifftn(m * fh).real), out=out)
    return f.with_values(out)


# -- Schrodinger side ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SchrodingerSpec:
    potential: GridFunction
    gamma: float
    beta: float
    mode: str = "t1"

    def __post_init__(self):
        g, b = self.gamma, self.beta
        if np.min(self.potential.values) <= 0:
            raise ValueError("potential must be strictly positive")
        if self.mode == "t1":
            if not 0 <= g <= b <= 1:
                raise ValueError(f"T1 needs 0 <= gamma <= beta <= 1, got gamma={g}, beta={b}")
        elif self.mode == "t2":
            if not (0 <= g <= 0.5 <= b <= 1 and b - g >= 0.5):
                raise ValueError(
                    "T2 needs 0 <= gamma <= 1/2 <= beta <= 1 and beta - gamma >= 1/2, "
                    f"got gamma={g}, beta={b}"
                )
        else:
            raise ValueError(f"mode must be 't1' or 't2', got {self.mode!r}")

    @property
    def alpha(self) -> float:
        """Order of the fractional maximal operator dominating the operator."""
        a = 2 * (self.beta - self.gamma)
        return a if self.mode == "t1" else a - 1

    @property
    def constant_potential(self) -> float | None:
        v = self.potential.values
        return float(v.flat[0]) if np.all(v == v.flat[0]) else None


def laplacian_matrix(domain: Domain) -> sp.csr_matrix:
    """``-Lap_h``: periodic second differences summed over axes."""
    N, h = domain.points_per_axis, domain.spacing
    one = sp.diags([2.0 * np.ones(N), -np.ones(N - 1), -np.ones(N - 1)], [0, 1, -1], format="lil")
    one[0, N - 1] = -1.0
    one[N - 1, 0] = -1.0
    one = one.tocsr() / (h * h)
    out = sp.csr_matrix((N ** domain.dim, N ** domain.dim))
    for axis in range(domain.dim):
        mats = [sp.identity(N, format="csr")] * domain.dim
        mats[axis] = one
        term = mats[0]
        for m in mats[1:]:
            term = sp.kron(term, m, format="csr")
        out = out + term
    return out.tocsr()


def laplacian_symbol(domain: Domain) -> np.ndarray:
    """Eigenvalues of ``-Lap_h`` on the FFT grid: ``sum (2 - 2 cos(k h)) / h^2``."""
    h = domain.spacing
    return sum((2 - 2 * np.cos(k * h)) / h ** 2 for k in wavenumbers(domain))


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Dense ``-Lap_h + diag(V)`` with its spectral decomposition."""

    domain: Domain
    matrix: np.ndarray = field(repr=False)

    @cached_property
    def _eigh(self):
        return scipy.linalg.eigh(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eigh[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self._eigh[1]

    def power(self, s: float) -> np.ndarray:
        """Dense matrix of ``H^s``."""
        w, U = self._eigh
        return (U * w ** s) @ U.T

    def apply_power(self, x: np.ndarray, s: float) -> np.ndarray:
        w, U = self._eigh
        return U @ (w ** s * (U.T @ x))


_HAMILTONIANS: "weakref.WeakKeyDictionary[GridFunction, Hamiltonian]" = weakref.WeakKeyDictionary()


def cached_hamiltonian(potential: GridFunction) -> Hamiltonian:
    """Hamiltonian for ``potential``, decomposed once per potential object."""
    H = _HAMILTONIANS.get(potential)
    if H is None:
        H = _HAMILTONIANS[potential] = build_hamiltonian(potential)
    return H


def build_hamiltonian(potential: GridFunction) -> Hamiltonian:
    dom = potential.domain
    if dom.size > DENSE_BUDGET:
        raise ValueError(f"dense Hamiltonian limited to {DENSE_BUDGET} cells, got {dom.size}")
    if np.min(potential.values) <= 0:
        raise ValueError("potential must be strictly positive")
    A = laplacian_matrix(dom).toarray()
    A[np.diag_indices_from(A)] += potential.samples
    # exact symmetry: the stencil is symmetric, this removes any round-off asymmetry
    A = 0.5 * (A + A.T)
    return Hamiltonian(dom, A)


def _negative_power(f: GridFunction, spec: SchrodingerSpec, method: str) -> np.ndarray:
    """``(-Lap_h + V)^(-beta) f`` as an array of shape ``domain.shape``."""
    v = spec.constant_potential
    if method == "auto":
        method = "fft" if v is not None else "dense"
    if method == "fft":
        if v is None:
            raise ValueError("the FFT path needs a constant potential")
        sym = (laplacian_symbol(f.domain) + v) ** (-spec.beta)
        return np.fft.ifftn(sym * np.fft.fftn(f.values)).real
    if method == "dense":
        H = cached_hamiltonian(spec.potential)
        return H.apply_power(f.samples, -spec.beta).reshape(f.domain.shape)
    raise ValueError(f"unknown method {method!r}")


def t1_apply(f: GridFunction, spec: SchrodingerSpec, method: str = "auto") -> GridFunction:
    """``V^gamma (-Lap_h + V)^(-beta) f``."""
    if spec.mode != "t1":
        raise ValueError("spec is not in T1 mode")
    u = _negative_power(f, spec, method)
    return f.with_values(spec.potential.values ** spec.gamma * u)


def forward_gradient(u: np.ndarray, h: float) -> list[np.ndarray]:
    """Forward differences ``(u(x + h e_i) - u(x)) / h``; ``-Lap_h = D^T D``."""
    return [(np.roll(u, -1, axis=i) - u) / h for i in range(u.ndim)]


def t2_components(f: GridFunction, spec: SchrodingerSpec, method: str = "auto") -> list[GridFunction]:
    if spec.mode != "t2":
        raise ValueError("spec is not in T2 mode")
    u = _negative_power(f, spec, method)
    w = spec.potential.values ** spec.gamma
    return [f.with_values(w * d) for d in forward_gradient(u, f.domain.spacing)]


def t2_apply(f: GridFunction, spec: SchrodingerSpec, method: str = "auto") -> GridFunction:
    """Pointwise Euclidean length of ``V^gamma grad_h (-Lap_h + V)^(-beta) f``."""
    comps = t2_components(f, spec, method)
    return f.with_values(np.sqrt(sum(c.values ** 2 for c in comps)))


def domination_ratio(g: GridFunction, h: GridFunction, quantiles=(0.5, 0.9, 0.99)):
    """``sup |g| / h`` and quantiles of the pointwise ratio.

    Cells where ``g`` vanishes contribute a zero ratio. Raises if ``h <= 0``
    somewhere ``g`` does not vanish.
    """
    a = np.abs(np.asarray(g.values if isinstance(g, GridFunction) else g, dtype=float))
    b = np.asarray(h.values if isinstance(h, GridFunction) else h, dtype=float)
    nz = a > 0
    if np.any(b[nz] <= 0):
        raise ZeroDivisionError("dominating function vanishes where g does not")
    ratio = np.zeros_like(a)
    ratio[nz] = a[nz] / b[nz]
    qs = {f"q{int(round(100 * q))}": float(np.quantile(ratio, q)) for q in quantiles}
    return float(ratio.max()), qs
