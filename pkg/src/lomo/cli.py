"""Command-line entry point.

Exit codes: 0 success (for ``verify``: every selected suite passed), 1 a check
failed, 2 usage error. Configurations can be written to and read back from
JSON with ``--config``.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .grid import GridFunction

COMMANDS = ("rearrange", "maximal", "norm", "bochner-riesz", "schrodinger", "verify")
SPACES = ("lorentz", "morrey", "lorentz-morrey")


class ConfigError(ValueError):
    """Invalid configuration; reported as a usage error (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _float(text: str) -> float:
    return float(text)  # accepts "inf"


@dataclass(frozen=True)
class RunConfig:
    command: str
    dim: int = 1
    grid: int | None = None
    seed: int = 42
    input: str | None = None
    output: str | None = None
    report: str | None = None
    format: str = "json"
    suites: tuple[str, ...] = ()
    alpha: float | None = None
    radii_count: int = 32
    space: str | None = None
    p: float | None = None
    q: float | None = None
    lam: float | None = None
    centers_stride: int | None = None
    delta: float | None = None
    r: float | None = None
    maximal: bool = False
    mode: str = "t1"
    gamma: float | None = None
    beta: float | None = None
    potential: str | None = None

    def to_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and math.isinf(v):
                v = "inf" if v > 0 else "-inf"
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        kw = dict(data)
        if "suites" in kw:
            kw["suites"] = tuple(kw["suites"])
        for k in ("alpha", "p", "q", "lam", "delta", "r", "gamma", "beta"):
            if isinstance(kw.get(k), str):
                kw[k] = float(kw[k])
        return validate(cls(**kw))


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lomo", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="read the full configuration from a JSON file")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, io=True):
        p.add_argument("--n", dest="dim", type=int, default=1)
        p.add_argument("--grid", type=int)
        p.add_argument("--seed", type=int, default=42)
        if io:
            p.add_argument("--input", required=True, help="GridFunction JSON")
            p.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("rearrange", help="decreasing rearrangement of a grid function")
    common(p)

    p = sub.add_parser("maximal", help="fractional maximal function")
    common(p)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--radii-count", type=int, default=32)

    p = sub.add_parser("norm", help="Lorentz, Morrey or Lorentz-Morrey norm")
    common(p)
    p.add_argument("--space", choices=SPACES, required=True)
    p.add_argument("--p", type=_float, required=True)
    p.add_argument("--q", type=_float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--centers-stride", type=int)
    p.add_argument("--radii-count", type=int, default=32)

    p = sub.add_parser("bochner-riesz", help="Bochner-Riesz mean or its maximal version")
    common(p)
    p.add_argument("--delta", type=float, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=float)
    g.add_argument("--maximal", action="store_true")
    p.add_argument("--radii-count", type=int, default=32)

    p = sub.add_parser("schrodinger", help="V^g (-Lap+V)^-b f or V^g grad (-Lap+V)^-b f")
    common(p)
    p.add_argument("--mode", choices=("t1", "t2"), default="t1")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--potential", required=True, help="GridFunction JSON of a positive potential")

    p = sub.add_parser("verify", help="run verification suites")
    common(p, io=False)
    p.add_argument("--suite", dest="suites", action="append", default=None,
                   help="suite name or 'all' (repeatable)")
    p.add_argument("--report", help="write the report to this path (.json or .csv)")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--alpha", type=float)
    return ap


def parse_config(argv=None) -> RunConfig:
    """Parse command-line arguments (or a ``--config`` file) into a validated config."""
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = _parser().parse_args(argv)
    if ns.config:
        if ns.command:
            raise ConfigError("--config cannot be combined with a subcommand")
        try:
            data = json.loads(Path(ns.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config file {ns.config}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {ns.config} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file {ns.config} must hold a JSON object")
        return RunConfig.from_dict(data)
    if not ns.command:
        raise ConfigError("a subcommand is required: " + ", ".join(COMMANDS))
    kw = {k: v for k, v in vars(ns).items() if k != "config" and v is not None}
    if "suites" in kw:
        kw["suites"] = tuple(kw["suites"])
    if ns.command == "verify":
        if "suites" not in kw:
            raise ConfigError("empty suite selection: pass --suite NAME or --suite all")
        if "format" not in kw:
            kw["format"] = "csv" if str(kw.get("report", "")).endswith(".csv") else "json"
    return RunConfig.from_dict(kw)


def _verify_options(cfg: RunConfig, names: list[str]) -> dict:
    from .verify import checks

    n = cfg.dim
    opts = {}
    if cfg.alpha is not None:
        if not 0 <= cfg.alpha < n:
            raise ConfigError(f"fractional order needs 0 ≤ α < n = {n}, got α={cfg.alpha}")
        opts["alphas"] = [cfg.alpha]
    if "thm31" in names and (cfg.p, cfg.q, cfg.lam) != (None, None, None):
        ps = [cfg.p] if cfg.p is not None else [1.25, 2.0, 4.0]
        qs = [cfg.q] if cfg.q is not None else [1.0, 2.0]
        lams = [cfg.lam] if cfg.lam is not None else [0.0, n / 2]
        params = [(p, q, lam) for p in ps for q in qs for lam in lams]
        try:
            opts["thm31_params"] = checks.validate_thm31_params(params, n)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if "cond31" in names or "thm32" in names:
        c = {}
        if cfg.p is not None:
            c["p"] = cfg.p
        if cfg.alpha is not None:
            c["alpha"] = cfg.alpha
        if cfg.lam is not None:
            c["lam"] = cfg.lam
        p = c.get("p", 1.5)
        a = c.get("alpha", n / 4)
        lam = c.get("lam", n / 2)
        try:
            q = 1 / (1 / p - a / (n - lam)) if 1 / p - a / (n - lam) > 0 else math.inf
            checks.validate_thm32(p, p, q, q, a, lam, n)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from exc
        opts["cond31"] = c
    return opts


def validate(cfg: RunConfig) -> RunConfig:
    """Check ranges and hypotheses before any computation."""
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}; expected one of {', '.join(COMMANDS)}")
    if cfg.dim not in (1, 2, 3):
        raise ConfigError(f"dimension must be 1, 2 or 3, got {cfg.dim}")
    if cfg.grid is not None and (cfg.grid < 8 or cfg.grid & (cfg.grid - 1)):
        raise ConfigError(f"grid size must be a power of two >= 8, got {cfg.grid}")
    if cfg.format not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {cfg.format!r}")
    if cfg.radii_count < 16:
        raise ConfigError(f"need at least 16 radii, got {cfg.radii_count}")
    c = cfg.command
    if c == "maximal" and cfg.alpha is not None and cfg.alpha < 0:
        raise ConfigError(f"fractional order needs α ≥ 0, got {cfg.alpha}")
    if c == "norm":
        if cfg.space not in SPACES:
            raise ConfigError(f"--space must be one of {', '.join(SPACES)}")
        if cfg.p is None or not cfg.p >= 1:
            raise ConfigError(f"norm needs p ≥ 1, got {cfg.p}")
        if cfg.space != "morrey" and (cfg.q is None or not cfg.q > 0):
            raise ConfigError(f"{cfg.space} norm needs q > 0 (or inf), got {cfg.q}")
        if cfg.space != "lorentz" and cfg.lam is None:
            raise ConfigError(f"{cfg.space} norm needs --lambda")
    if c == "bochner-riesz":
        if cfg.delta is None or not cfg.delta > (cfg.dim - 1) / 2:
            raise ConfigError(f"Bochner-Riesz order needs δ > (n-1)/2, got {cfg.delta}")
        if not cfg.maximal and (cfg.r is None or cfg.r <= 0):
            raise ConfigError("--r must be positive (or pass --maximal)")
    if c == "schrodinger":
        g, b = cfg.gamma, cfg.beta
        if g is None or b is None:
            raise ConfigError("schrodinger needs --gamma and --beta")
        if cfg.mode == "t1" and not 0 <= g <= b <= 1:
            raise ConfigError(f"T1 needs 0 ≤ γ ≤ β ≤ 1, got γ={g}, β={b}")
        if cfg.mode == "t2" and not (0 <= g <= 0.5 <= b <= 1 and b - g >= 0.5):
            raise ConfigError(f"T2 needs 0 ≤ γ ≤ 1/2 ≤ β ≤ 1 and β−γ ≥ 1/2, got γ={g}, β={b}")
    if c == "verify":
        from .verify.suites import expand

        try:
            names = expand(cfg.suites)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if "thm32" in names and cfg.dim != 1:
            raise ConfigError("the thm32 dilation suite runs with --n 1 only")
        _verify_options(cfg, names)
    elif c in COMMANDS and cfg.input is None:
        raise ConfigError(f"{c} needs --input")
    return cfg


# -- execution ---------------------------------------------------------------------

def _load(path: str) -> GridFunction:
    try:
        return GridFunction.load(path)
    except OSError as exc:
        raise ConfigError(f"cannot read grid function {path}: {exc.strerror}") from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"{path} is not a valid grid function file: {exc}") from exc


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _emit_function(f: GridFunction, path: str | None) -> None:
    _emit(json.dumps(f.to_dict()), path)


def _run_norm(cfg: RunConfig, f: GridFunction) -> dict:
    from .maximal import RadiusGrid
    from .norms import NormResult, default_sweep, lorentz_morrey_sweep, lorentz_norm, morrey_sweep

    if cfg.space == "lorentz":
        return NormResult(lorentz_norm(f, cfg.p, cfg.q), None, None, {}).to_dict()
    sweep = default_sweep(f, RadiusGrid.for_domain(f.domain, cfg.radii_count),
                          stride=cfg.centers_stride)
    if cfg.space == "morrey":
        return morrey_sweep(f, cfg.p, cfg.lam, sweep).to_dict()
    return lorentz_morrey_sweep(f, [(cfg.p, cfg.q, cfg.lam)], sweep)[0].to_dict()


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration and return the exit code."""
    from .maximal import RadiusGrid, fractional_maximal
    from .rearrangement import decreasing_rearrangement

    if cfg.command == "verify":
        return _run_verify(cfg)
    f = _load(cfg.input)
    radii = RadiusGrid.for_domain(f.domain, cfg.radii_count)
    if cfg.command == "rearrange":
        _emit(json.dumps(decreasing_rearrangement(f).to_dict()), cfg.output)
    elif cfg.command == "maximal":
        _emit_function(fractional_maximal(f, cfg.alpha or 0.0, radii), cfg.output)
    elif cfg.command == "norm":
        _emit(json.dumps(_run_norm(cfg, f), sort_keys=True), cfg.output)
    elif cfg.command == "bochner-riesz":
        from .multipliers import MultiplierSpec, bochner_riesz, maximal_bochner_riesz

        if cfg.maximal:
            g = maximal_bochner_riesz(f, cfg.delta, radii)
        else:
            g = bochner_riesz(f, MultiplierSpec(cfg.delta, cfg.r, f.domain.dim))
        _emit_function(g, cfg.output)
    elif cfg.command == "schrodinger":
        from .multipliers import SchrodingerSpec, t1_apply, t2_apply

        V = _load(cfg.potential)
        if V.domain != f.domain:
            raise ConfigError("potential and input live on different grids")
        try:
            spec = SchrodingerSpec(V, cfg.gamma, cfg.beta, cfg.mode)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        g = t1_apply(f, spec) if cfg.mode == "t1" else t2_apply(f, spec)
        _emit_function(g, cfg.output)
    return 0


def _run_verify(cfg: RunConfig) -> int:
    from .verify import bundle, dumps, run_suites, to_csv
    from .verify.suites import expand

    names = expand(cfg.suites)
    opts = _verify_options(cfg, names)
    reports = run_suites(names, cfg.dim, cfg.grid, cfg.seed, opts)
    for r in reports:
        print(r.summary())
    if cfg.report:
        text = to_csv(reports) if cfg.format == "csv" else dumps(bundle(reports, cfg.to_dict()))
        _emit(text, cfg.report)
    return 0 if all(r.verdict for r in reports) else 1


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
