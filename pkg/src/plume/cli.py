"""Headless command line over the engine.

Every subcommand reads and writes the canonical document file. Exit code 0
on success; engine failures print a machine-readable JSON error on stderr
and exit 1.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import metrics as metrics_mod
from . import model, scope, suggestions
from .config import load_config, apply_data_paths, generation_config, make_generator
from .errors import PlumeError
from .generation import GenerationConfig, MockGenerator, generate_all, refine

DEFAULT_FILE = "dashboard.json"


def _fail(exc: PlumeError) -> None:
    click.echo(json.dumps({"code": exc.code, "message": exc.message}), err=True)
    sys.exit(1)


def _read_doc(path: str) -> model.DashboardDocument:
    try:
        return model.load(Path(path).read_bytes())
    except FileNotFoundError:
        _fail(PlumeError("unknown-document", f"no document file at {path}"))
    except PlumeError as exc:
        _fail(exc)


def _write_doc(path: str, doc: model.DashboardDocument) -> None:
    Path(path).write_bytes(model.save(doc))


def _generator(mock: bool, config_path: str | None):
    if mock:
        return MockGenerator(), GenerationConfig()
    config = load_config(config_path)
    apply_data_paths(config)
    return make_generator(config), generation_config(config)


file_option = click.option(
    "--file", "-f", "path", default=DEFAULT_FILE, show_default=True,
    help="Canonical document file to read and write.",
)


@click.group()
def main():
    """Scaffold, measure, and generate dashboard text."""


@main.command()
@file_option
@click.option("--id", "doc_id", default=None, help="Fixed document id (default: random).")
@click.option("--force", is_flag=True, help="Overwrite an existing file.")
def new(path: str, doc_id: str | None, force: bool):
    """Create a fresh document with an empty root frame."""
    if Path(path).exists() and not force:
        _fail(PlumeError("already-resolved", f"{path} already exists (use --force)"))
    doc = model.create_document(doc_id)
    _write_doc(path, doc)
    click.echo(f"created {path} (document {doc.id})")


@main.command()
@file_option
def validate(path: str):
    """Check the document parses and satisfies every invariant."""
    doc = _read_doc(path)
    click.echo(f"ok: {len(doc.frames)} frames, {len(doc.charts)} charts, {len(doc.snippets)} snippets")


@main.command()
@file_option
def suggest(path: str):
    """List pending suggestions in sidebar order."""
    doc = _read_doc(path)
    pending = suggestions.pending_suggestions(doc)
    if not pending:
        click.echo("no pending suggestions")
        return
    for sug in pending:
        marker = "advisory" if sug.is_advisory else "role"
        click.echo(f"{sug.id}  [{marker}] {sug.title}: {sug.description}")


@main.command()
@file_option
@click.option("--role", "role", default=None, help="Accept the suggestion for one role.")
@click.option("--all", "accept_all_flag", is_flag=True, help="Accept every pending role suggestion.")
def accept(path: str, role: str | None, accept_all_flag: bool):
    """Accept suggestions, inserting placeholders into matching frames."""
    if bool(role) == accept_all_flag:
        _fail(PlumeError("malformed-request", "pass exactly one of --role or --all"))
    doc = _read_doc(path)
    try:
        if accept_all_flag:
            created = suggestions.accept_all(doc)
        else:
            created = suggestions.accept_suggestion(doc, f"sg-{role}")
    except PlumeError as exc:
        _fail(exc)
    _write_doc(path, doc)
    click.echo(f"created {len(created)} placeholder(s): {' '.join(created)}")


@main.command()
@file_option
@click.option("--snippet", "snippet_id", default=None, help="Analyze one snippet.")
@click.option("--all", "all_flag", is_flag=True, help="Analyze every non-placeholder snippet.")
def metrics(path: str, snippet_id: str | None, all_flag: bool):
    """Word count, lexical density, and FK grade against role guidelines."""
    if bool(snippet_id) == all_flag:
        _fail(PlumeError("malformed-request", "pass exactly one of --snippet or --all"))
    doc = _read_doc(path)
    targets = [snippet_id] if snippet_id else [
        sid for sid, s in doc.snippets.items() if s.state is not model.SnippetState.PLACEHOLDER
    ]
    header = f"{'snippet':<10} {'role':<12} {'words':>5} {'density':>8} {'fk':>7}  conformance"
    click.echo(header)
    for sid in targets:
        try:
            report = metrics_mod.analyze(doc, sid)
        except PlumeError as exc:
            _fail(exc)
        role = doc.snippets[sid].role.value
        judged = metrics_mod.conformance(report, metrics_mod.guideline_for(role))
        click.echo(
            f"{sid:<10} {role:<12} {report.word_count:>5} {report.lexical_density:>7.1f}% "
            f"{report.fk_grade:>7.2f}  words {judged.word_count}, "
            f"fk {judged.fk_grade}, density {judged.lexical_density}"
        )


@main.command()
@file_option
@click.option("--targets", default=None, help="Comma-separated snippet ids.")
@click.option("--all", "all_flag", is_flag=True, help="Plan every non-locked snippet.")
def plan(path: str, targets: str | None, all_flag: bool):
    """Dry-run: print the bottom-up generation order, one level per line."""
    if bool(targets) == all_flag:
        _fail(PlumeError("malformed-request", "pass exactly one of --targets or --all"))
    doc = _read_doc(path)
    ids = targets.split(",") if targets else list(doc.snippets)
    try:
        result = scope.generation_plan(doc, ids)
    except PlumeError as exc:
        _fail(exc)
    for i, level in enumerate(result.levels):
        click.echo(f"level {i}: {' '.join(level)}")
    if not result.levels:
        click.echo("nothing to generate")


@main.command()
@file_option
@click.option("--targets", default=None, help="Comma-separated snippet ids.")
@click.option("--all", "all_flag", is_flag=True, help="Generate every non-locked snippet.")
@click.option("--mock", is_flag=True, help="Use the deterministic mock generator.")
@click.option("--config", "config_path", default=None, help="Service config file (for live mode).")
def generate(path: str, targets: str | None, all_flag: bool, mock: bool, config_path: str | None):
    """Generate text bottom-up through the configured generator."""
    if bool(targets) == all_flag:
        _fail(PlumeError("malformed-request", "pass exactly one of --targets or --all"))
    doc = _read_doc(path)
    ids = targets.split(",") if targets else list(doc.snippets)
    try:
        port, gen_config = _generator(mock, config_path)
        report = generate_all(doc, ids, port, gen_config)
    except PlumeError as exc:
        _fail(exc)
    _write_doc(path, doc)
    click.echo(f"generated {len(report.generated)} snippet(s)")
    for sid, reason in report.failed.items():
        click.echo(f"failed {sid}: {reason}", err=True)
    if report.failed:
        sys.exit(1)


@main.command()
@file_option
@click.option("--snippet", "snippet_id", required=True)
@click.option("--kind", type=click.Choice(["regenerate", "shorten", "simplify"]), required=True)
@click.option("--mock", is_flag=True, help="Use the deterministic mock generator.")
@click.option("--config", "config_path", default=None, help="Service config file (for live mode).")
def refine_cmd(path: str, snippet_id: str, kind: str, mock: bool, config_path: str | None):
    """Regenerate, shorten, or simplify one snippet in place."""
    doc = _read_doc(path)
    try:
        port, gen_config = _generator(mock, config_path)
        content = refine(doc, snippet_id, kind, port, gen_config)
    except PlumeError as exc:
        _fail(exc)
    _write_doc(path, doc)
    click.echo(content)


# click derives command names from function names; keep `refine` as the verb.
refine_cmd.name = "refine"
main.add_command(refine_cmd)


@main.command()
@click.option("--config", "config_path", default=None, help="Service config file.")
@click.option("--host", default=None, help="Override the listen host.")
@click.option("--port", default=None, type=int, help="Override the listen port.")
def serve(config_path: str | None, host: str | None, port: int | None):
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app

    try:
        config = load_config(config_path)
        app = create_app(config)
    except PlumeError as exc:
        _fail(exc)
    uvicorn.run(
        app,
        host=host or config.listen_host,
        port=port or config.listen_port,
    )


if __name__ == "__main__":
    main()
