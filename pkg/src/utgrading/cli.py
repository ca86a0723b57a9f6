"""Command line entry points: local runs, config validation, and a thin
HTTP-client mode against a running service."""

import json
import sys

import click

from .config import validate as validate_config
from .runner import render_json, render_text, run_raw


def _load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _apply_overrides(raw, budget, seed, fmt):
    if budget is not None:
        raw["budget"] = budget
    if seed is not None:
        raw["seed"] = seed
    if fmt is not None:
        raw["format"] = fmt
    return raw


@click.group()
def main():
    """Exact enumeration of graded automorphisms of upper triangular matrices."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the report here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default=None)
@click.option("--budget", type=int, default=None, help="Max enumeration candidates.")
@click.option("--seed", type=int, default=None, help="RNG seed for sampled checks.")
@click.option("--server", default=None, help="Run remotely against this base URL.")
@click.option("--timing/--no-timing", default=False,
              help="Record per-task wall time (off keeps reports byte-identical).")
def run(config_path, out_path, fmt, budget, seed, server, timing):
    """Run the configured tasks and emit a report."""
    raw = _apply_overrides(_load_config(config_path), budget, seed, fmt)
    if server:
        code, report = _remote_run(server, raw)
    else:
        code, report = run_raw(raw, include_timing=timing)
    text = render_json(report) if raw.get("format", "text") == "json" else render_text(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(code)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--server", default=None, help="Validate remotely against this base URL.")
def validate(config_path, server):
    """Check a config file; exit 0 if valid, 1 otherwise."""
    raw = _load_config(config_path)
    if server:
        import httpx

        resp = httpx.post(server.rstrip("/") + "/validate", json=raw, timeout=60.0)
        resp.raise_for_status()
        diags = resp.json()["diagnostics"]
    else:
        diags = validate_config(raw)
    if diags:
        for d in diags:
            click.echo(f"{d['path'] or '/'}: {d['message']}")
        sys.exit(1)
    click.echo("ok")


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Start the HTTP service."""
    import uvicorn

    uvicorn.run("utgrading.service:app", host=host, port=port)


def _remote_run(server, raw):
    import httpx

    resp = httpx.post(server.rstrip("/") + "/run", json=raw, timeout=None)
    resp.raise_for_status()
    data = resp.json()
    return data["exit_code"], data["report"]


if __name__ == "__main__":
    main()
