"""Named suites and the runner used by the ``verify`` subcommand."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import checks
from .corpus import Corpus
from .report import VerificationReport

SUITES = ("sandwich", "lemma21", "lemma22", "lemma23", "thm31", "thm32", "cond31", "section4")

# base grid per dimension; refinement checks also run at twice this size
DEFAULT_GRID = {
    "sandwich": {1: 256, 2: 32, 3: 8},
    "lemma21": {1: 256, 2: 64, 3: 16},
    "lemma22": {1: 256, 2: 32, 3: 8},
    "lemma23": {1: 256, 2: 32, 3: 8},
    "thm31": {1: 256, 2: 16, 3: 8},
    "thm32": {1: 512},
    "section4": {1: 256, 2: 32, 3: 8},
}


def thread_count() -> int:
    """Worker threads, capped by ``LOMO_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("LOMO_THREADS", "1")))
    except ValueError:
        return 1


def _pair(N: int) -> tuple[int, int]:
    return (N, 2 * N)


def cond31_cases(dim: int, p: float = 1.5, alpha: float | None = None,
                 lam: float | None = None, shift: float = 0.15):
    """Balanced exponents and one shift of ``1/q`` on each side."""
    alpha = dim / 4 if alpha is None else alpha
    lam = dim / 2 if lam is None else lam
    inv_q = 1 / p - alpha / (dim - lam)
    return [(tag, p, 1 / (inv_q + d), alpha, lam)
            for tag, d in (("balanced", 0.0), ("plus", shift), ("minus", -shift))]


def _run_one(name: str, dim: int, grid: int | None, seed: int, options: dict) -> list[VerificationReport]:
    N = grid or DEFAULT_GRID.get(name, {}).get(dim)
    corpus = Corpus(dim, seed=seed)
    if name == "sandwich":
        return [checks.check_sandwich(corpus, grids=_pair(N))]
    if name == "lemma21":
        return [checks.check_lemma21(corpus, grid=N)]
    if name == "lemma22":
        return [checks.check_lemma22(corpus, options.get("alphas"), grids=_pair(N))]
    if name == "lemma23":
        return [checks.check_lemma23(corpus, options.get("alphas"), grids=_pair(N))]
    if name == "thm31":
        return [checks.check_theorem31(corpus, options.get("thm31_params"), grids=_pair(N))]
    if name == "thm32":
        if dim != 1:
            raise ValueError("the dilation suite is one-dimensional (n = 1)")
        return checks.thm32_suite(grid=N, **options.get("cond31", {}))
    if name == "cond31":
        out = []
        for tag, p, q, a, lam in cond31_cases(dim, **options.get("cond31", {})):
            out.append(checks.check_condition_31(p, p, q, q, a, lam, dim, check_id=f"cond31.{tag}"))
        return out
    if name == "section4":
        return [checks.check_section4(corpus, grids=_pair(N),
                                      dilation=options.get("dilation", True))]
    raise ValueError(f"unknown suite {name!r}")


def expand(selection) -> list[str]:
    names = []
    for s in selection:
        for name in (SUITES if s == "all" else [s]):
            if name not in SUITES:
                raise ValueError(f"unknown suite {name!r}")
            if name not in names:
                names.append(name)
    if not names:
        raise ValueError("empty suite selection")
    # fixed reporting order regardless of how the selection was written
    return sorted(names, key=SUITES.index)


def run_suites(selection, dim: int = 1, grid: int | None = None, seed: int = 42,
               options: dict | None = None, threads: int | None = None) -> list[VerificationReport]:
    """Run the selected suites; reports come back in the fixed suite order."""
    names = expand(selection)
    options = options or {}
    threads = threads or thread_count()
    if threads == 1 or len(names) == 1:
        results = [_run_one(n, dim, grid, seed, options) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_one, n, dim, grid, seed, options) for n in names]
            results = [f.result() for f in futures]
    return [r for group in results for r in group]
