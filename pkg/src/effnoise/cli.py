"""Command-line front end emitting deterministic CSV datasets.

Subcommands: channel, lifetime, negativity, concat, validate.  Options can
come from flags or from a JSON config file (flags win).  All numeric output
uses 17 significant digits so files round-trip losslessly and golden-file
comparisons are byte-exact; sweeps dispatched to a worker pool are written
back in grid order, so the bytes do not depend on --jobs.

Exit codes: 0 success, 2 usage or config error, 3 resource limit exceeded,
4 validation failure.
"""

from __future__ import annotations

import functools
import json
import multiprocessing
import os
import sys
from typing import Callable, Sequence

import click

from . import codes as codes_mod
from .codes import from_definition, validate as validate_code
from .concat import critical_rate
from .effective import derive_effective, p_eff_estimate
from .entanglement import find_crossing, lifetime_pcrit, negativity_curve
from .errors import ResourceLimitError
from .pauli import PauliChannel, phase_noise, white_noise

BUILTIN_CODES = ("repetition", "ghz", "cluster_ring", "trivial")

EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_VALIDATION = 4


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_p_grid(text: str) -> list[float]:
    """start:stop:count with 0 <= start <= stop <= 1 and count >= 1."""
    try:
        start_s, stop_s, count_s = str(text).split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise click.UsageError(f"bad p-grid {text!r}, expected start:stop:count")
    if count < 1 or not 0.0 <= start <= stop <= 1.0:
        raise click.UsageError(
            f"bad p-grid {text!r}: need 0 <= start <= stop <= 1, count >= 1"
        )
    if count == 1:
        return [start]
    return [start + (stop - start) * k / (count - 1) for k in range(count)]


def parse_int_list(text: str, name: str) -> list[int]:
    """Comma list ("3,5,7"), inclusive range ("2:100"), or single int."""
    try:
        text = str(text)
        if "," in text:
            vals = [int(v) for v in text.split(",")]
        elif ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            vals = list(range(lo, hi + 1))
        else:
            vals = [int(text)]
    except ValueError:
        raise click.UsageError(f"bad {name} {text!r}")
    if not vals:
        raise click.UsageError(f"empty {name}")
    return vals


@functools.lru_cache(maxsize=None)
def _builtin_code(kind: str, m: int):
    if kind == "repetition":
        return codes_mod.repetition_code(m)
    if kind == "ghz":
        return codes_mod.ghz_code(m)
    if kind == "cluster_ring":
        return codes_mod.cluster_ring_code(m)
    if kind == "trivial":
        return codes_mod.trivial_code()
    raise click.UsageError(f"unknown code {kind!r}")


def _resolve_code(kind: str, m: int, file_doc: dict | None):
    if file_doc is not None:
        return from_definition(file_doc)
    return _builtin_code(kind, m)


def _load_json(path: str, what: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read {what} {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(
            f"cannot parse {what} {path}: {exc.msg} at line {exc.lineno}"
        )
    if not isinstance(doc, dict):
        raise click.UsageError(f"{what} {path} must hold a JSON object")
    return doc


def _noise_family(
    noise: str, lam: str | None
) -> tuple[Callable[[float], PauliChannel], bool]:
    """Returns (p -> channel, swept); swept is False for a fixed custom channel."""
    if noise == "white":
        return white_noise, True
    if noise == "phase":
        return phase_noise, True
    if noise == "custom":
        if not lam:
            raise click.UsageError("--noise custom requires --lambda a,b,c,d")
        try:
            channel = PauliChannel(tuple(float(v) for v in str(lam).split(",")))
        except ValueError as exc:
            raise click.UsageError(f"bad --lambda {lam!r}: {exc}")
        return (lambda _p: channel), False
    raise click.UsageError(f"unknown noise kind {noise!r}")


def _merge_config(ctx: click.Context, config_path: str | None) -> dict:
    """Parameters merged from the command line and a JSON config file.

    Command-line values always win; config keys may use either option
    spellings ("p-grid") or parameter names ("p_grid").
    """
    params = dict(ctx.params)
    params.pop("config_path", None)
    if config_path is None:
        return params
    doc = _load_json(config_path, "config")
    aliases: dict[str, str] = {}
    for param in ctx.command.params:
        aliases[param.name] = param.name
        for opt in param.opts:
            aliases[opt.lstrip("-").replace("-", "_")] = param.name
    for key, value in doc.items():
        norm = key.replace("-", "_")
        if norm == "command":
            if str(value) != ctx.command.name:
                raise click.UsageError(
                    f"config is for command {value!r}, not {ctx.command.name!r}"
                )
            continue
        if norm not in aliases:
            raise click.UsageError(f"config key {key!r} is not an option here")
        name = aliases[norm]
        if name == "config_path":
            continue
        src = ctx.get_parameter_source(name)
        if src is not None and src.name == "COMMANDLINE":
            continue
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        params[name] = value
    return params


def _emit(out: str | None, header: str, rows: Sequence[str]) -> None:
    text = header + "\n" + "".join(r + "\n" for r in rows)
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _pool_map(jobs, func, items: list):
    jobs = int(jobs) if jobs is not None else (os.cpu_count() or 1)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with multiprocessing.Pool(processes=jobs) as pool:
        return pool.map(func, items, chunksize=1)


def _default_ms(kind: str) -> str:
    return "5" if kind == "cluster_ring" else "1,3,5,7"


def _code_selector(kind: str) -> dict | None:
    """None for built-ins, the parsed definition for *.json paths."""
    if kind.endswith(".json"):
        doc = _load_json(kind, "code file")
        if "m" not in doc:
            raise click.UsageError(f"code file {kind} is missing field 'm'")
        return doc
    if kind not in BUILTIN_CODES:
        raise click.UsageError(f"unknown code {kind!r}")
    return None


def _parse_selectors(code_list: str, m_list) -> list[tuple[str, int, dict | None]]:
    """Expand "ghz:1,3;cluster_ring:5"-style selectors into (kind, m, doc).

    File-based selectors carry their size in the definition, so they expand
    to exactly one (kind, m, doc) cell.
    """
    out: list[tuple[str, int, dict | None]] = []
    for part in code_list.split(";"):
        if not part:
            continue
        if ":" in part:
            kind, mpart = part.split(":", 1)
        else:
            kind, mpart = part, (m_list or _default_ms(part))
        file_doc = _code_selector(kind)
        if file_doc is not None:
            out.append((kind, int(file_doc["m"]), file_doc))
        else:
            out += [(kind, m, file_doc)
                    for m in parse_int_list(mpart, "--code m-list")]
    if not out:
        raise click.UsageError("no code selectors given")
    return out


_COMMON = [
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="Output CSV path (stdout when omitted)."),
    click.option("--jobs", type=int, default=None,
                 help="Worker processes (default: machine parallelism)."),
    click.option("--config", "config_path", type=click.Path(), default=None,
                 help="JSON config file; flags override it."),
]


def with_common(fn):
    for opt in reversed(_COMMON):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(package_name="effnoise")
def main() -> None:
    """Effective logical noise channels for stabilizer-encoded qubits."""


# ---------------------------------------------------------------------------
# channel

_CHANNEL_HEADER = "code,m,p,lambda0,lambda1,lambda2,lambda3,mu0,mu1,mu2,mu3,p_eff"


def _channel_cell(args: tuple) -> str:
    kind, m, file_doc, noise, lam, p, swept = args
    code = _resolve_code(kind, m, file_doc)
    family, _ = _noise_family(noise, lam)
    eff = derive_effective(code, family(p))
    lam0 = eff.projected(0).lambdas
    mu = eff.mean.lambdas
    peff = fmt(p_eff_estimate(p)) if kind == "cluster_ring" and swept else "NA"
    fields = [code.label if file_doc else kind, str(code.m),
              fmt(p) if swept else "NA"]
    fields += [fmt(v) for v in lam0] + [fmt(v) for v in mu] + [peff]
    return ",".join(fields)


@main.command()
@click.option("--code", default="repetition",
              help="Built-in code name or path to a code-definition JSON file.")
@click.option("--m", "m_list", default=None, help="Comma list of code sizes.")
@click.option("--noise", default="white", help="white | phase | custom.")
@click.option("--lambda", "lam", default=None, help="Custom channel a,b,c,d.")
@click.option("--p-grid", default="0:1:101", help="start:stop:count.")
@with_common
@click.pass_context
def channel(ctx, **_kw):
    """Trivial-syndrome and mean channel sweep."""
    cfg = _merge_config(ctx, ctx.params["config_path"])
    kind = str(cfg["code"])
    file_doc = _code_selector(kind)
    if file_doc is not None:
        ms = [int(file_doc["m"])]
    else:
        ms = parse_int_list(cfg["m_list"] or _default_ms(kind), "--m")
    family, swept = _noise_family(str(cfg["noise"]), cfg["lam"])
    ps = parse_p_grid(cfg["p_grid"]) if swept else [0.0]
    cells = [(kind, m, file_doc, str(cfg["noise"]), cfg["lam"], p, swept)
             for m in ms for p in ps]
    rows = _pool_map(cfg["jobs"], _channel_cell, cells)
    _emit(cfg["out"], _CHANNEL_HEADER, rows)


# ---------------------------------------------------------------------------
# lifetime

_LIFETIME_HEADER = "encoding,m,N,p_crit,residual"


def _lifetime_cell(args: tuple) -> str:
    kind, m, file_doc, noise, lam, n, tol = args
    code = _resolve_code(kind, m, file_doc)
    family, _ = _noise_family(noise, lam)

    def projected_family(p: float) -> PauliChannel:
        return derive_effective(code, family(p)).projected(0)

    res = lifetime_pcrit(projected_family, n, tol)
    if not res.bracketed:
        click.echo(
            f"warning: {kind} m={m} N={n}: PPT sign constant on [0,1], "
            f"reporting p_crit={res.p_crit:g}", err=True)
    return ",".join([
        code.label if file_doc else kind, str(code.m), str(n),
        fmt(res.p_crit), fmt(res.residual),
    ])


@main.command()
@click.option("--code", "code_list", default="ghz",
              help="Semicolon list of code[:m-list] selectors.")
@click.option("--m", "m_list", default=None,
              help="Fallback m list for selectors without one.")
@click.option("--noise", default="white", help="white | phase.")
@click.option("--lambda", "lam", default=None, hidden=True)
@click.option("--n-grid", default="4", help="System sizes (list or lo:hi).")
@click.option("--tol", type=float, default=1e-6, help="Bisection tolerance.")
@with_common
@click.pass_context
def lifetime(ctx, **_kw):
    """Entanglement-lifetime bound p_crit per (encoding, m, N)."""
    cfg = _merge_config(ctx, ctx.params["config_path"])
    tol = float(cfg["tol"])
    if tol <= 0:
        raise click.UsageError("--tol must be positive")
    ns = parse_int_list(cfg["n_grid"], "--n-grid")
    _noise_family(str(cfg["noise"]), cfg["lam"])
    selectors = _parse_selectors(str(cfg["code_list"]), cfg["m_list"])
    cells = [(kind, m, doc, str(cfg["noise"]), cfg["lam"], n, tol)
             for kind, m, doc in selectors for n in ns]
    rows = _pool_map(cfg["jobs"], _lifetime_cell, cells)
    _emit(cfg["out"], _LIFETIME_HEADER, rows)


# ---------------------------------------------------------------------------
# negativity

_NEGATIVITY_HEADER = "encoding,m,N,negativity"


def _negativity_cell(args: tuple) -> list[str]:
    kind, m, file_doc, noise, lam, p, ns = args
    code = _resolve_code(kind, m, file_doc)
    family, _ = _noise_family(noise, lam)
    mean = derive_effective(code, family(p)).mean
    label = code.label if file_doc else kind
    return [",".join([label, str(code.m), str(n), fmt(v)])
            for n, v in negativity_curve(mean, ns)]


@main.command()
@click.option("--code", "code_list", default="ghz:1,3,5;cluster_ring:5",
              help="Semicolon list of code[:m-list] selectors.")
@click.option("--m", "m_list", default=None,
              help="Fallback m list for selectors without one.")
@click.option("--noise", default="white", help="white | phase | custom.")
@click.option("--lambda", "lam", default=None, help="Custom channel a,b,c,d.")
@click.option("--p-grid", default="0.95:0.95:1",
              help="Single-point grid: the p to evaluate at.")
@click.option("--n-grid", default="2:100", help="System sizes (list or lo:hi).")
@with_common
@click.pass_context
def negativity(ctx, **_kw):
    """Mean-channel GHZ negativity (1 : N-1 split) versus system size."""
    cfg = _merge_config(ctx, ctx.params["config_path"])
    ps = parse_p_grid(cfg["p_grid"])
    if len(ps) != 1:
        raise click.UsageError("negativity expects a single-point --p-grid")
    ns = parse_int_list(cfg["n_grid"], "--n-grid")
    selectors = _parse_selectors(str(cfg["code_list"]), cfg["m_list"])
    noise, lam = str(cfg["noise"]), cfg["lam"]
    _noise_family(noise, lam)
    cells = [(kind, m, doc, noise, lam, ps[0], ns) for kind, m, doc in selectors]
    blocks = _pool_map(cfg["jobs"], _negativity_cell, cells)
    rows = [row for block in blocks for row in block]
    _emit(cfg["out"], _NEGATIVITY_HEADER, rows)

    curves: dict[tuple[str, int], list[tuple[int, float]]] = {}
    for row in rows:
        kind_s, m_s, n_s, v_s = row.split(",")
        curves.setdefault((kind_s, int(m_s)), []).append((int(n_s), float(v_s)))
    ghz5, cr5 = curves.get(("ghz", 5)), curves.get(("cluster_ring", 5))
    if ghz5 and cr5:
        ncrit = find_crossing(ghz5, cr5)
        msg = (f"N_crit = {ncrit}" if ncrit is not None
               else "no crossing of the m=5 curves in this N range")
        click.echo(msg, err=cfg["out"] is None)


# ---------------------------------------------------------------------------
# concat

_CONCAT_HEADER = "m1,m2,p_c,grid_checked"


def _concat_cell(args: tuple) -> str:
    m1, m2, tol = args
    res = critical_rate(m1, m2, tol)
    return ",".join([
        str(m1), str(m2),
        fmt(res.p_c) if res.p_c is not None else "NA",
        "true" if res.grid_checked else "false",
    ])


@main.command()
@click.option("--m1", "m1_list", default="3", help="Comma list of inner sizes.")
@click.option("--m2", "m2_list", default="3", help="Comma list of outer sizes.")
@click.option("--tol", type=float, default=1e-6, help="Bisection tolerance.")
@with_common
@click.pass_context
def concat(ctx, **_kw):
    """Critical rate p_c grid for the generalized Shor code."""
    cfg = _merge_config(ctx, ctx.params["config_path"])
    tol = float(cfg["tol"])
    if tol <= 0:
        raise click.UsageError("--tol must be positive")
    cells = [(m1, m2, tol)
             for m1 in parse_int_list(cfg["m1_list"], "--m1")
             for m2 in parse_int_list(cfg["m2_list"], "--m2")]
    rows = _pool_map(cfg["jobs"], _concat_cell, cells)
    _emit(cfg["out"], _CONCAT_HEADER, rows)


# ---------------------------------------------------------------------------
# validate


@main.command()
@click.argument("code_files", nargs=-1, type=click.Path())
@click.option("--skip-builtins", is_flag=True, default=False,
              help="Validate only the given code files.")
def validate(code_files, skip_builtins):
    """Structural validation of built-in and user-defined codes."""
    targets = []
    if not skip_builtins:
        targets.append(codes_mod.trivial_code())
        targets += [codes_mod.repetition_code(m) for m in (3, 5, 7)]
        targets += [codes_mod.ghz_code(m) for m in (3, 5, 7)]
        targets.append(codes_mod.cluster_ring_code(5))
    for path in code_files:
        targets.append(from_definition(_load_json(path, "code file")))
    all_ok = True
    for code in targets:
        report = validate_code(code)
        all_ok &= report.ok
        for line in report.lines():
            click.echo(line)
    if not all_ok:
        sys.exit(EXIT_VALIDATION)


def run() -> None:
    """Entry point mapping library errors onto the documented exit codes."""
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)
    except ResourceLimitError as exc:
        click.echo(f"resource limit: {exc}", err=True)
        sys.exit(EXIT_RESOURCE)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    run()
