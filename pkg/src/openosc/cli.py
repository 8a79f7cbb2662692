"""Command line front end: batch jobs rendered as CSV or JSON reports.

One executable, one subcommand per job kind.  Parameters come from flags
or from a JSON config file (flags win key by key); every applied default
is echoed in the output metadata and reports contain nothing volatile,
so re-running a job reproduces its output byte for byte.

Exit codes: 0 success, 2 usage or config error, 3 domain/precondition
error, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .chain import (
    ChainAssignment,
    ChainParams,
    chain_effective_energy,
    chain_energy,
    chain_frequencies,
    grouped_form_energy,
)
from .errors import ConvergenceError, DomainError
from .gas import GasParams, joint_energy, q_min_gas
from .open_system import effective_frequency, is_accessible, q_min_vibrational
from .oracle import (
    CONFIGURATION_CAP,
    ModeSet,
    gc_average_occupation,
)
from .series import reduced_series, reduced_series_bound
from .spectra import OscillatorParams, mode_energy
from .stats import StatisticsKind, Thermo, mean_particle_number, occupation_number
from .summation import TruncationPolicy

__all__ = ["Job", "UsageError", "parse_job", "run_job", "execute_job", "main"]


class UsageError(Exception):
    """Malformed invocation or config; maps to exit code 2."""


@dataclass(frozen=True)
class Job:
    kind: str
    params: dict[str, Any]
    output: Path | None = None
    fmt: str = "csv"
    inner: "Job | None" = None


# --- parameter schema --------------------------------------------------------


@dataclass(frozen=True)
class _Param:
    type: str  # float | posfloat | int | nonneg | posint | stat | int_list | float_list
    default: Any = None
    required: bool = False
    help: str = ""


_SPECS: dict[str, dict[str, _Param]] = {
    "spectrum": {
        "omega": _Param("posfloat", 1.0, help="oscillator frequency"),
        "hbar": _Param("posfloat", 1.0, help="reduced Planck constant"),
        "mu": _Param("float", 0.0, help="chemical potential"),
        "qmax": _Param("nonneg", 10, help="highest ladder level reported"),
    },
    "gas": {
        "omega": _Param("posfloat", 1.0),
        "hbar": _Param("posfloat", 1.0),
        "mass": _Param("posfloat", 1.0),
        "box_length": _Param("posfloat", 1.0, help="periodic box length"),
        "mu": _Param("float", 0.0),
        "kmax": _Param("nonneg", 5, help="half-width of the k range"),
        "qmax": _Param("nonneg", 10),
    },
    "chain": {
        "omega": _Param("posfloat", 1.0),
        "hbar": _Param("posfloat", 1.0),
        "count": _Param("posint", required=True, help="number of chain sites"),
        "coupling": _Param("float", 0.0, help="nearest-neighbour coupling"),
        "mu": _Param("float", 0.0),
        "levels": _Param("int_list", None, help="ladder index per mode, e.g. 0,0,1"),
    },
    "stats": {
        "stat": _Param("stat", required=True, help="bose or fermi"),
        "beta": _Param("posfloat", 1.0, help="inverse temperature"),
        "mu": _Param("float", 0.0),
        "omega": _Param("posfloat", 1.0),
        "hbar": _Param("posfloat", 1.0),
        "rel_tol": _Param("posfloat", 1e-10, help="relative truncation tolerance"),
        "max_terms": _Param("posint", 10_000_000, help="term cap for the adaptive sum"),
    },
    "bounds": {
        "stat": _Param("stat", required=True),
        "mu": _Param("float", 0.0),
        "rel_tol": _Param("posfloat", 1e-10),
        "max_terms": _Param("posint", 10_000_000),
    },
    "oracle": {
        "stat": _Param("stat", required=True),
        "beta": _Param("posfloat", 1.0),
        "mu": _Param("float", 0.0),
        "omega": _Param("posfloat", 1.0),
        "hbar": _Param("posfloat", 1.0),
        "qmax": _Param("nonneg", 4, help="ladder modes 0..qmax when no energies given"),
        "cutoff": _Param("nonneg", 8, help="per-mode count cap for Bose enumeration"),
        "energies": _Param("float_list", None, help="explicit mode energies, e.g. 0.5,1.5"),
    },
    "sweep": {
        "param": _Param("str", "mu", help="numeric parameter of the inner job to sweep"),
        "start": _Param("float", required=True),
        "stop": _Param("float", required=True),
        "steps": _Param("posint", 7),
    },
}

_COLUMNS: dict[str, tuple[str, ...]] = {
    "spectrum": ("q", "energy", "omega_eff", "accessible"),
    "gas": ("k", "q", "energy", "effective_term", "q_min_k"),
    "chain": ("s", "omega_s"),
    "stats": ("level", "occupation"),
    "bounds": ("mu", "S_numeric", "tail_bound", "lemma_bound", "pass"),
    "oracle": ("mode", "closed_form", "oracle_value", "abs_error"),
}


def _convert(name: str, spec: _Param, raw: Any, source: str) -> Any:
    def fail(expected: str) -> UsageError:
        return UsageError(f"{source} value for {name!r} must be {expected}, got {raw!r}")

    if spec.type in ("float", "posfloat"):
        if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
            raise fail("a number")
        try:
            value = float(raw)
        except ValueError:
            raise fail("a number") from None
        if spec.type == "posfloat" and not value > 0.0:
            raise DomainError(f"{name} must be positive, got {value!r}")
        return value
    if spec.type in ("int", "nonneg", "posint"):
        if isinstance(raw, bool) or not isinstance(raw, (int, str)):
            raise fail("an integer")
        try:
            value = int(raw)
        except ValueError:
            raise fail("an integer") from None
        if spec.type == "nonneg" and value < 0:
            raise DomainError(f"{name} must be non-negative, got {value}")
        if spec.type == "posint" and value < 1:
            raise DomainError(f"{name} must be a positive integer, got {value}")
        return value
    if spec.type == "stat":
        if not isinstance(raw, str):
            raise fail("'bose' or 'fermi'")
        if raw.strip().lower() not in ("bose", "fermi"):
            raise UsageError(f"{source} value for 'stat' must be bose or fermi, got {raw!r}")
        return raw.strip().lower()
    if spec.type == "str":
        if not isinstance(raw, str):
            raise fail("a string")
        return raw
    if spec.type in ("int_list", "float_list"):
        cast = int if spec.type == "int_list" else float
        if isinstance(raw, str):
            parts = [p for p in raw.split(",") if p.strip() != ""]
        elif isinstance(raw, (list, tuple)):
            parts = list(raw)
        else:
            raise fail("a comma-separated list")
        try:
            return [cast(p) for p in parts]
        except (ValueError, TypeError):
            raise fail(f"a list of {cast.__name__}s") from None
    raise AssertionError(f"unhandled parameter type {spec.type}")


# --- parsing -----------------------------------------------------------------


def _add_kind_args(parser: argparse.ArgumentParser, kind: str) -> None:
    for name, spec in _SPECS[kind].items():
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, dest=name, default=None, help=spec.help or None)


def _add_io_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="JSON file with job parameters")
    parser.add_argument("-o", "--output", default=None, help="report path (stdout if absent)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="openosc",
        description="Effective spectra and occupation statistics of open oscillator systems.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    descriptions = {
        "spectrum": "ladder energies, effective frequencies and accessibility",
        "gas": "joint translational-vibrational levels and thresholds",
        "chain": "normal-mode frequencies and assignment energies",
        "stats": "mean occupations of one ladder",
        "bounds": "reduced series against its analytic ceiling",
        "oracle": "closed-form occupations against brute-force enumeration",
    }
    for kind, desc in descriptions.items():
        p = sub.add_parser(kind, help=desc)
        _add_kind_args(p, kind)
        _add_io_args(p)
    sweep = sub.add_parser("sweep", help="repeat an inner job over a parameter grid")
    _add_kind_args(sweep, "sweep")
    _add_io_args(sweep)
    inner = sweep.add_subparsers(dest="inner_kind")
    for ik in descriptions:
        ip = inner.add_parser(ik)
        _add_kind_args(ip, ik)
    return parser


def _load_config(path: str) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    return data


def _merge_params(
    kind: str,
    flags: dict[str, Any],
    config: dict[str, Any],
    config_label: str,
) -> dict[str, Any]:
    spec = _SPECS[kind]
    known = set(spec) | {"kind", "output", "format", "job"}
    for key in config:
        if key not in known:
            raise UsageError(f"unknown config key {key!r} for job kind {kind!r}")
    if "kind" in config and config["kind"] != kind:
        raise UsageError(
            f"config kind {config['kind']!r} does not match subcommand {kind!r}"
        )
    if "job" in config and kind != "sweep":
        raise UsageError(f"unknown config key 'job' for job kind {kind!r}")
    merged: dict[str, Any] = {}
    for name, p in spec.items():
        if flags.get(name) is not None:
            merged[name] = _convert(name, p, flags[name], "flag")
        elif name in config:
            merged[name] = _convert(name, p, config[name], config_label)
        elif p.required:
            raise UsageError(f"missing required parameter {name!r} for {kind!r}")
        else:
            merged[name] = p.default
    return merged


def _validate(kind: str, params: dict[str, Any]) -> None:
    """Kind-specific preconditions, checked before any computation."""
    if kind == "stats" and params["stat"] == "bose":
        if not params["mu"] < 0.5 * params["hbar"] * params["omega"]:
            raise DomainError(
                "Bose stats require mu < hbar*omega/2 = "
                f"{0.5 * params['hbar'] * params['omega']!r}, got {params['mu']!r}"
            )
    if kind == "bounds" and params["stat"] == "bose" and not params["mu"] < 0.5:
        raise DomainError(f"Bose bounds require mu < 1/2, got {params['mu']!r}")
    if kind == "oracle":
        energies = params["energies"]
        if energies is None:
            energies = [
                params["hbar"] * params["omega"] * (q + 0.5)
                for q in range(params["qmax"] + 1)
            ]
        if not energies:
            raise DomainError("oracle job needs at least one mode")
        limit = 1 if params["stat"] == "fermi" else params["cutoff"]
        if (limit + 1) ** len(energies) > CONFIGURATION_CAP:
            raise DomainError(
                f"{(limit + 1) ** len(energies)} configurations exceed the "
                f"cap of {CONFIGURATION_CAP}"
            )
        if params["stat"] == "bose" and min(energies) <= params["mu"]:
            raise DomainError(
                "Bose oracle requires every mode energy above mu, got "
                f"min energy {min(energies)!r} with mu {params['mu']!r}"
            )
    if kind == "chain" and params["levels"] is not None:
        if len(params["levels"]) != params["count"]:
            raise DomainError(
                f"levels cover {len(params['levels'])} modes, chain has {params['count']}"
            )
        if any(q < 0 for q in params["levels"]):
            raise DomainError("levels must be non-negative")
    if kind == "sweep":
        if params["steps"] < 1:
            raise DomainError("steps must be at least 1")


def parse_job(argv: Sequence[str]) -> Job:
    """Turn an argument vector into a validated Job.

    Raises UsageError for malformed input (unknown keys included) and
    DomainError for well-formed input that violates a precondition.
    """
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError("invalid arguments") from None
    kind = ns.kind
    config = _load_config(ns.config) if ns.config else {}
    flags = vars(ns)
    params = _merge_params(kind, flags, config, f"config[{kind}]")

    inner = None
    if kind == "sweep":
        inner_kind = getattr(ns, "inner_kind", None)
        inner_cfg = config.get("job", {})
        if inner_cfg and not isinstance(inner_cfg, dict):
            raise UsageError("config key 'job' must hold a JSON object")
        if inner_kind is None:
            inner_kind = inner_cfg.get("kind")
            if inner_kind is None:
                raise UsageError("sweep needs an inner job (subcommand or config 'job')")
            if inner_kind not in _COLUMNS:
                raise UsageError(f"unknown inner job kind {inner_kind!r}")
        if inner_kind == "sweep":
            raise UsageError("sweep cannot nest another sweep")
        inner_params = _merge_params(
            inner_kind, flags, inner_cfg, "config[job]"
        )
        swept = params["param"]
        ispec = _SPECS[inner_kind]
        if swept not in ispec or ispec[swept].type not in ("float", "posfloat"):
            raise UsageError(
                f"sweep parameter {swept!r} is not a numeric parameter of {inner_kind!r}"
            )
        _validate(kind, params)
        inner = Job(inner_kind, inner_params)
    else:
        _validate(kind, params)

    output = Path(ns.output) if ns.output else None
    if output is None and "output" in config:
        output = Path(str(config["output"]))
    fmt = ns.fmt or config.get("format")
    if fmt is None:
        fmt = "json" if output is not None and output.suffix == ".json" else "csv"
    if fmt not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {fmt!r}")
    return Job(kind, params, output, fmt, inner)


# --- execution ---------------------------------------------------------------


@dataclass
class Report:
    metadata: dict[str, Any]
    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)


def _run_spectrum(params: dict[str, Any]) -> Report:
    p = OscillatorParams(hbar=params["hbar"], omega=params["omega"])
    mu = params["mu"]
    meta = dict(params, job="spectrum", q_min=q_min_vibrational(mu, p))
    rows = [
        (q, mode_energy(q, p), effective_frequency(q, mu, p), is_accessible(q, mu, p))
        for q in range(params["qmax"] + 1)
    ]
    return Report(meta, _COLUMNS["spectrum"], rows)


def _run_gas(params: dict[str, Any]) -> Report:
    p = OscillatorParams(hbar=params["hbar"], mass=params["mass"], omega=params["omega"])
    g = GasParams(p, params["box_length"])
    mu = params["mu"]
    rows = []
    for k in range(-params["kmax"], params["kmax"] + 1):
        threshold = q_min_gas(mu, k, g)
        for q in range(params["qmax"] + 1):
            energy = joint_energy(k, q, g)
            rows.append((k, q, energy, energy - mu, threshold))
    return Report(dict(params, job="gas"), _COLUMNS["gas"], rows)


def _run_chain(params: dict[str, Any]) -> Report:
    ch = ChainParams(
        params["count"],
        OscillatorParams(hbar=params["hbar"], omega=params["omega"]),
        params["coupling"],
    )
    freqs = chain_frequencies(ch)
    meta = dict(params, job="chain")
    if params["levels"] is None:
        meta.pop("levels")
    else:
        a = ChainAssignment(tuple(params["levels"]))
        grouped = grouped_form_energy(a, params["mu"], ch)
        meta["chain_energy"] = chain_energy(a, ch)
        meta["chain_effective_energy"] = chain_effective_energy(a, params["mu"], ch)
        meta["grouped_energy"] = grouped.value
        meta["grouped_discrepancy"] = grouped.discrepancy
    rows = [(s, w) for s, w in enumerate(freqs, start=1)]
    return Report(meta, _COLUMNS["chain"], rows)


def _run_stats(params: dict[str, Any]) -> Report:
    kind = StatisticsKind.from_name(params["stat"])
    t = Thermo(params["beta"], params["mu"])
    p = OscillatorParams(hbar=params["hbar"], omega=params["omega"])
    policy = TruncationPolicy(rel_tol=params["rel_tol"], max_terms=params["max_terms"])
    result = mean_particle_number(t, p, kind, policy)
    if not result.converged:
        raise ConvergenceError(
            f"mean particle number did not converge within {policy.max_terms} terms"
        )
    meta = dict(
        params,
        job="stats",
        mean=result.value,
        tail_bound=result.tail_bound,
        terms_used=result.terms_used,
        converged=result.converged,
    )
    rows = [
        (q, occupation_number(mode_energy(q, p), t, kind))
        for q in range(result.terms_used)
    ]
    return Report(meta, _COLUMNS["stats"], rows)


def _run_bounds(params: dict[str, Any]) -> Report:
    kind = StatisticsKind.from_name(params["stat"])
    policy = TruncationPolicy(rel_tol=params["rel_tol"], max_terms=params["max_terms"])
    result = reduced_series(params["mu"], kind, policy)
    if not result.converged:
        raise ConvergenceError(
            f"reduced series did not converge within {policy.max_terms} terms"
        )
    ceiling = reduced_series_bound(params["mu"])
    ok = result.value + result.tail_bound <= ceiling
    row = (params["mu"], result.value, result.tail_bound, ceiling, ok)
    return Report(dict(params, job="bounds"), _COLUMNS["bounds"], [row])


def _run_oracle(params: dict[str, Any]) -> Report:
    kind = StatisticsKind.from_name(params["stat"])
    t = Thermo(params["beta"], params["mu"])
    if params["energies"] is not None:
        modes = ModeSet(tuple(params["energies"]))
    else:
        p = OscillatorParams(hbar=params["hbar"], omega=params["omega"])
        modes = ModeSet.from_oscillator(p, params["qmax"])
    cutoff = 1 if kind is StatisticsKind.FERMI else params["cutoff"]
    means = gc_average_occupation(modes, t, kind, cutoff)
    meta = dict(params, job="oracle", cutoff=cutoff, energies=list(modes.energies))
    rows = []
    for i, (e, mean) in enumerate(zip(modes.energies, means)):
        closed = occupation_number(e, t, kind)
        rows.append((i, closed, mean, abs(closed - mean)))
    return Report(meta, _COLUMNS["oracle"], rows)


def _run_sweep(job: Job) -> Report:
    params = job.params
    inner = job.inner
    assert inner is not None
    steps = params["steps"]
    span = params["stop"] - params["start"]
    grid = [
        params["start"] + i * span / (steps - 1) if steps > 1 else params["start"]
        for i in range(steps)
    ]
    swept = params["param"]
    meta = dict(params, job="sweep", inner_job=inner.kind)
    for name, value in inner.params.items():
        meta[name] = "swept" if name == swept else value
    if meta.get("levels") is None:
        meta.pop("levels", None)
    if meta.get("energies") is None:
        meta.pop("energies", None)
    columns = (swept,) + _COLUMNS[inner.kind]
    rows: list[tuple[Any, ...]] = []
    for value in grid:
        point = dict(inner.params)
        point[swept] = value
        _validate(inner.kind, point)
        block = _RUNNERS[inner.kind](point)
        rows.extend((value,) + row for row in block.rows)
    return Report(meta, columns, rows)


_RUNNERS = {
    "spectrum": _run_spectrum,
    "gas": _run_gas,
    "chain": _run_chain,
    "stats": _run_stats,
    "bounds": _run_bounds,
    "oracle": _run_oracle,
}


def run_job(job: Job) -> Report:
    """Execute a parsed job and return its report structure."""
    if job.kind == "sweep":
        return _run_sweep(job)
    return _RUNNERS[job.kind](job.params)


# --- rendering ---------------------------------------------------------------


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def render_csv(report: Report) -> str:
    lines = [f"# {key} = {_fmt(value)}" for key, value in sorted(report.metadata.items())]
    lines.append(",".join(report.columns))
    lines.extend(",".join(_fmt(cell) for cell in row) for row in report.rows)
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    payload = {
        "metadata": report.metadata,
        "columns": list(report.columns),
        "rows": [list(row) for row in report.rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def execute_job(job: Job) -> str:
    """Run the job, render its report, and write it to the target."""
    report = run_job(job)
    text = render_csv(report) if job.fmt == "csv" else render_json(report)
    if job.output is not None:
        job.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return text


def _emit_error(code: int, exc: BaseException, kind: str | None) -> None:
    payload = {
        "error": {
            "code": code,
            "type": type(exc).__name__,
            "message": str(exc),
            "job": kind,
        }
    }
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    kind = args[0] if args and not args[0].startswith("-") else None
    try:
        job = parse_job(args)
    except UsageError as exc:
        _emit_error(2, exc, kind)
        return 2
    except DomainError as exc:
        _emit_error(3, exc, kind)
        return 3
    try:
        execute_job(job)
    except DomainError as exc:
        _emit_error(3, exc, job.kind)
        return 3
    except ConvergenceError as exc:
        _emit_error(4, exc, job.kind)
        return 4
    except OSError as exc:
        _emit_error(1, exc, job.kind)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
