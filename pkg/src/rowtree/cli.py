"""Batch driver and service launcher.

`run` replays an operation script against a dataset and writes one of the
document forms; `serve` starts the HTTP service. Exit codes: 0 success,
1 unreadable input or unwritable output, 2 validation failure (the
message names the failing operation index).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .document import build_document, counts_document, path_document, render_text, to_json
from .errors import BatchOpError, DatasetError, EngineError
from .graph import load_dataset
from .ops import apply_batch
from .session import create_session
from .topology import all_shortest_paths

OUTPUTS = ("layout", "text", "counts", "paths")


def run_script(data_dir: str, script_path: str, out_path: str, fmt: str | None = None) -> int:
    try:
        raw = Path(script_path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot read script: {exc}", err=True)
        return 1
    try:
        script = json.loads(raw)
    except ValueError as exc:
        click.echo(f"script is not valid JSON: {exc}", err=True)
        return 2

    if not isinstance(script, dict) or not isinstance(script.get("dataset"), str):
        click.echo("script must be an object with a 'dataset' name", err=True)
        return 2
    ops = script.get("ops", [])
    if not isinstance(ops, list):
        click.echo("script 'ops' must be a list", err=True)
        return 2
    output = fmt or script.get("output", "layout")
    if output not in OUTPUTS:
        click.echo(f"unknown output {output!r}; expected one of {', '.join(OUTPUTS)}", err=True)
        return 2

    dataset_path = Path(data_dir) / script["dataset"]
    try:
        graph = load_dataset(dataset_path)
    except DatasetError as exc:
        click.echo(f"cannot load dataset: {exc}", err=True)
        return 1

    session = create_session(graph, script["dataset"])
    try:
        apply_batch(session, ops)
    except BatchOpError as exc:
        click.echo(str(exc), err=True)
        return 2

    if output == "layout":
        text = to_json(build_document(session))
    elif output == "text":
        text = render_text(build_document(session))
    elif output == "counts":
        text = to_json(counts_document(session))
    else:
        spec = script.get("paths")
        if not isinstance(spec, dict) or "a" not in spec or "b" not in spec:
            click.echo("paths output needs a 'paths' object with 'a' and 'b'", err=True)
            return 2
        try:
            result = all_shortest_paths(session, spec["a"], spec["b"])
        except EngineError as exc:
            click.echo(str(exc), err=True)
            return 2
        text = to_json(path_document(session, result))

    try:
        if out_path == "-":
            sys.stdout.write(text)
        else:
            Path(out_path).write_text(text, encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot write output: {exc}", err=True)
        return 1
    return 0


@click.group()
def main() -> None:
    """Explore typed graphs as linearized row trees."""


@main.command()
@click.option("--data", "data_dir", required=True, help="Directory holding dataset folders.")
@click.option("--script", "script_path", required=True, help="Operation script (JSON).")
@click.option("--out", "out_path", required=True, help="Output file, or - for stdout.")
@click.option("--format", "fmt", type=click.Choice(["layout", "text"]), default=None,
              help="Override the script's output selector.")
def run(data_dir: str, script_path: str, out_path: str, fmt: str | None) -> None:
    """Replay an operation script and write the resulting document."""
    sys.exit(run_script(data_dir, script_path, out_path, fmt))


@main.command()
@click.option("--data", "data_dir", default=None, help="Directory holding dataset folders.")
@click.option("--sessions", "session_dir", default=None, help="Directory for session logs.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(data_dir: str | None, session_dir: str | None, host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir, session_dir), host=host, port=port)


if __name__ == "__main__":
    main()
