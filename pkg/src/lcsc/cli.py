"""Command line: ``lcsc check FILE`` and ``lcsc fixture NAME``."""
from __future__ import annotations

import sys

import click

from .bundle import load
from .checks import PROPERTIES, dot_report, run_check
from .description import serialize
from .errors import LcscError
from .fixtures import FIXTURES, generate_fixture

ERROR_EXIT = 3


def _pairs(items):
    out = {}
    for item in items:
        if "=" not in item:
            raise click.BadParameter(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Check combinatorial properties of finite left cancellative categories and their
    Zappa-Szép products with groupoid actions."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--property", "prop", default="all", type=click.Choice(PROPERTIES), show_default=True)
@click.option("--horizon", "horizons", type=int, multiple=True,
              help="Truncation; repeat to compare windows (Hausdorff growth certificate).")
@click.option("--cap", type=int, default=1 << 16, show_default=True, help="Filter-enumeration cap.")
@click.option("--format", "fmt", type=click.Choice(["json", "text", "dot"]), default="json", show_default=True)
@click.option("--debug-verify", is_flag=True, help="Re-run shortcuts against brute force.")
@click.option("--param", "params", multiple=True, help="Extra check parameter, e.g. g=3 (repeatable).")
def check(file, prop, horizons, cap, fmt, debug_verify, params):
    """Evaluate a property of the category described in FILE."""
    try:
        extra = _pairs(params)
        hs = sorted(set(horizons))
        bundle = load(file, horizon=hs[0] if hs else None)
        opts = {"horizons": hs, "cap": cap, "debug_verify": debug_verify}
        if "g" in extra:
            opts["g"] = extra.pop("g").split(",")
        opts.update(extra)
        if fmt == "dot":
            click.echo(dot_report(bundle, opts), nl=False)
            sys.exit(0)
        res = run_check(bundle, prop, opts)
    except LcscError as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        w = getattr(e, "witness", ())
        if w:
            click.echo(f"witness: {list(w)}", err=True)
        sys.exit(ERROR_EXIT)
    click.echo(res.to_json() if fmt == "json" else res.to_text(), nl=fmt == "json")
    sys.exit(res.exit_code)


@main.command()
@click.argument("name", type=click.Choice(FIXTURES))
@click.argument("params", nargs=-1)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
def fixture(name, params, output):
    """Print a generated fixture description, e.g. ``lcsc fixture sec6 N=3 horizon=4 P=3``."""
    try:
        text = serialize(generate_fixture(name, _pairs(params)))
    except LcscError as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        sys.exit(ERROR_EXIT)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
