"""Command-line front end: obstate evaluation, cross-ratios, the sweep harness.

All output is deterministic given the flags: reports carry no timestamps,
hostnames, or library versions, so identical invocations are byte-identical
(the acceptance suite checks this).  The seed defaults to the MATRYOSHKA_SEED
environment variable when set.
"""

from __future__ import annotations

import csv
import json

import click

from . import classical, obstate, properties
from .crossratio import INF, classical_cr, is_inf
from .errors import AplineError


def _parse_scalar(token: str):
    t = token.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    try:
        return float(token)
    except ValueError:
        try:
            return complex(token)
        except ValueError:
            raise click.BadParameter(f"not a number or 'inf': {token!r}")


def _format_scalar(v) -> str:
    if is_inf(v):
        return "inf"
    if isinstance(v, complex):
        if abs(v.imag) <= 1e-12 * (1.0 + abs(v)):
            v = v.real
        else:
            return f"{v.real:.12g}{v.imag:+.12g}j"
    return f"{float(v):.12g}"


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


@click.group()
def main() -> None:
    """Operator-valued cross-ratio geometry on the matrix projective line."""


# --- expect -------------------------------------------------------------------------

@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json/--text", "as_json", default=True,
              help="Machine-readable JSON (default) or a short text summary.")
def expect(path: str, as_json: bool) -> None:
    """Evaluate the obstate described by the JSON file at PATH.

    The file holds the four points: {"A": ..., "W": ..., "A0": ...,
    "Winf": ..., "strong": bool}.  Points are given as {"chart": matrix},
    {"density": matrix}, {"basis_re": ..., "basis_im": ...}, or the
    strings "zero" / "infinity"; matrices as {"n": int, "re": [[...]],
    "im": [[...]]} or plain nested lists.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        o = obstate.obstate_from_json(payload)
        rep = obstate.report(o)
    except (AplineError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"{path}: {exc}")
    if as_json:
        _emit_json(rep)
        return
    click.echo(f"expectation          {_format_scalar(rep['expectation'])}")
    for key in ("variance", "pure_expectation"):
        if key in rep:
            click.echo(f"{key:<20} {_format_scalar(rep[key])}")
    if "distribution" in rep:
        pairs = ", ".join(f"{v:.6g}: {w:.6g}" for v, w in rep["distribution"])
        click.echo(f"distribution         {pairs}")
    for key in ("pure", "positive", "cyclically_ordered"):
        click.echo(f"{key:<20} {rep[key]}")


# --- crossratio ---------------------------------------------------------------------

@main.command()
@click.argument("values", nargs=4)
def crossratio(values) -> None:
    """Classical cross-ratio (A, B; C, D) of four scalars ('inf' allowed)."""
    a, b, c, d = (_parse_scalar(v) for v in values)
    try:
        click.echo(_format_scalar(classical_cr(a, b, c, d)))
    except AplineError as exc:
        raise click.ClickException(str(exc))


# --- check --------------------------------------------------------------------------

def _text_report(report: dict) -> str:
    lines = [
        "property sweep: seed={seed} trials={trials} n={n} backend={backend}".format(
            seed=report["seed"], trials=report["trials"],
            n=",".join(str(n) for n in report["n_list"]),
            backend=report["backend"])
    ]
    for pid, res in report["properties"].items():
        status = "PASS" if res["ok"] else "FAIL"
        worst = res["worst_residual"]
        worst_s = worst if isinstance(worst, str) else f"{worst:.3e}"
        lines.append(f"  [{status}] {pid:<28} worst {worst_s:>10}  "
                     f"({res['pass_count']}/{res['pass_count'] + res['fail_count']})")
        if not res["ok"]:
            ex = res.get("example_failure", {})
            lines.append(f"         first failure: trial={ex.get('trial')} "
                         f"n={ex.get('n')} sub_seed={ex.get('sub_seed')} "
                         f"residual={ex.get('residual')}"
                         + (f" error={ex['error']}" if "error" in ex else ""))
    total = len(report["properties"])
    good = sum(1 for r in report["properties"].values() if r["ok"])
    verdict = "all properties passed" if report["ok"] else "FAILURES PRESENT"
    lines.append(f"{verdict} ({good}/{total})")
    return "\n".join(lines)


@main.command()
@click.option("--n", "n_list", multiple=True, type=int,
              help="Dimension to sweep (repeatable; default 1 2 3 4 6).")
@click.option("--trials", default=properties.DEFAULT_TRIALS, show_default=True,
              type=click.IntRange(min=1), help="Trials per property.")
@click.option("--seed", envvar="MATRYOSHKA_SEED", default=0, show_default=True,
              type=int, help="Sweep seed (env MATRYOSHKA_SEED).")
@click.option("--tol", default=None, type=float,
              help="Override every property tolerance.")
@click.option("--backend", default="float", show_default=True,
              type=click.Choice(["float", "exact"]),
              help="Numeric backend for the trials.")
@click.option("--property", "property_ids", multiple=True,
              help="Run only these property ids (repeatable).")
@click.option("--json/--text", "as_json", default=True,
              help="Machine-readable JSON (default) or a text table.")
@click.pass_context
def check(ctx, n_list, trials, seed, tol, backend, property_ids, as_json) -> None:
    """Run the seeded property sweep and exit 0 iff every property passes."""
    if backend == "exact":
        raise click.ClickException(
            "backend 'exact' is not available in this build; use --backend float")
    ns = tuple(n_list) if n_list else properties.DEFAULT_N_LIST
    if any(n < 1 for n in ns):
        raise click.ClickException("--n must be >= 1")
    try:
        report = properties.run_sweep(
            n_list=ns, trials=trials, seed=seed,
            properties=list(property_ids) or None, tol=tol, backend=backend)
    except KeyError as exc:
        known = ", ".join(properties.property_ids())
        raise click.ClickException(f"{exc.args[0]}; known ids: {known}")
    if as_json:
        _emit_json(report)
    else:
        click.echo(_text_report(report))
    ctx.exit(0 if report["ok"] else 1)


# --- classical ----------------------------------------------------------------------

def _values_from_json(obj, what: str) -> list:
    if isinstance(obj, dict):
        vals = obj.get("values", obj.get("weights"))
        if vals is None:
            raise click.ClickException(f"{what}: expected a 'values' list")
        if "m" in obj and int(obj["m"]) != len(vals):
            raise click.ClickException(
                f"{what}: declared m={obj['m']} but {len(vals)} values given")
    elif isinstance(obj, list):
        vals = obj
    else:
        raise click.ClickException(f"{what}: expected an object or a list")
    return [_parse_scalar(v) if isinstance(v, str) else float(v) for v in vals]


def _load_classical_problem(path: str) -> dict:
    """Named functions/measures from a JSON object or a name-prefixed CSV."""
    if path.endswith(".csv"):
        out: dict = {}
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#"):
                    continue
                name, *tokens = row
                out[name.strip()] = [_parse_scalar(t) for t in tokens]
        return out
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict):
        raise click.ClickException(f"{path}: expected a JSON object")
    return {name: _values_from_json(obj, name) for name, obj in payload.items()}


def _need(problem: dict, names, path: str) -> list:
    missing = [n for n in names if n not in problem]
    if missing:
        raise click.ClickException(f"{path}: missing entries {', '.join(missing)}")
    return [problem[n] for n in names]


@main.group()
def classical_cmd() -> None:
    """Finite classical model: pairings and function obstates."""


main.add_command(classical_cmd, name="classical")


@classical_cmd.command("pairing")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def classical_pairing(path: str) -> None:
    """Pairing sum(mu_p f_p g_p) from a file with entries mu, f, g."""
    problem = _load_classical_problem(path)
    mu_w, f_v, g_v = _need(problem, ("mu", "f", "g"), path)
    try:
        value = classical.pairing(classical.Measure(mu_w),
                                  classical.ClassicalFn(f_v),
                                  classical.ClassicalFn(g_v))
    except (AplineError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(_format_scalar(value))


@classical_cmd.command("obstate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def classical_obstate(path: str) -> None:
    """Obstate coordinates of f in the frame (f1, f0, finf).

    Needs entries f, f1, f0, finf; when mu and h are also present, the
    paired expectation is reported as well.
    """
    problem = _load_classical_problem(path)
    f_v, f1_v, f0_v, finf_v = _need(problem, ("f", "f1", "f0", "finf"), path)
    try:
        coords = classical.fn_obstate(
            classical.ClassicalFn(f_v), classical.ClassicalFn(f1_v),
            classical.ClassicalFn(f0_v), classical.ClassicalFn(finf_v))
        out = {"coordinates": [
            "inf" if is_inf(v) else float(v) for v in coords.values]}
        if "mu" in problem and "h" in problem:
            ev = classical.pairing(classical.Measure(problem["mu"]), coords,
                                   classical.ClassicalFn(problem["h"]))
            out["expectation"] = "inf" if is_inf(ev) else float(ev)
    except (AplineError, ValueError) as exc:
        raise click.ClickException(str(exc))
    _emit_json(out)


if __name__ == "__main__":  # pragma: no cover
    main()
