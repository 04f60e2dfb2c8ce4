"""Command line entry points: serve, load, ingest, query, stats.

The CLI is stateless between invocations: every command resolves the working
snapshot from config (falling back to the packaged demo data), and commands
that mutate the graph write the snapshot back before exiting.
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from kgatlas import fixture
from kgatlas.config import AppConfig, load_config, resolve_corpus_dir
from kgatlas.cypher import execute, is_write_query, parse
from kgatlas.errors import KgAtlasError
from kgatlas.graph import GraphStore
from kgatlas.ingest import ProductQuery, Providers, run_pipeline
from kgatlas.schema import validate


def _load_store(config: AppConfig) -> GraphStore:
    path = Path(config.snapshot_path)
    if path.exists():
        return GraphStore.load(path)
    return GraphStore.load(fixture.FIXTURE_PATH)


def _providers(config: AppConfig) -> Providers:
    if config.providers.mode == "live":
        from kgatlas.providers.live import build_live_providers
        return build_live_providers()
    from kgatlas.providers.mock import build_mock_providers
    return build_mock_providers(resolve_corpus_dir(config))


def _language_model(config: AppConfig):
    if config.providers.mode == "live":
        import os

        from kgatlas.providers import live
        return live.LiveLanguageModel(
            os.environ.get(live.ENV_LLM_ENDPOINT, ""),
            os.environ.get(live.ENV_LLM_API_KEY),
            os.environ.get(live.ENV_LLM_MODEL, "gpt-4o-mini"),
        )
    from kgatlas.providers.mock import MockLanguageModel
    return MockLanguageModel()


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Path to a JSON config file (or set KGATLAS_CONFIG).")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None) -> None:
    """Product graph explorer: build, query and serve the catalog graph."""
    try:
        ctx.obj = load_config(config_path)
    except KgAtlasError as exc:
        raise click.ClickException(str(exc)) from exc


@cli.command()
@click.option("--host", default=None, help="Bind address (overrides config).")
@click.option("--port", type=int, default=None, help="Port (overrides config).")
@click.option("--snapshot", type=click.Path(), default=None,
              help="Snapshot to serve (overrides config).")
@click.pass_obj
def serve(config: AppConfig, host: str | None, port: int | None, snapshot: str | None) -> None:
    """Serve the HTTP API (and the UI bundle when configured)."""
    import uvicorn

    from kgatlas.service import create_app

    if host:
        config.host = host
    if port:
        config.port = port
    if snapshot:
        config.snapshot_path = snapshot
    if config.ui_dir is None and Path("frontend/dist").is_dir():
        config.ui_dir = "frontend/dist"
    try:
        store = _load_store(config)
        app = create_app(store, _language_model(config), config)
    except KgAtlasError as exc:
        raise click.ClickException(str(exc)) from exc
    counts = store.stats()
    click.echo(f"serving {counts['nodes']} nodes / {counts['relationships']} relationships "
               f"on http://{config.host}:{config.port}")
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        raise click.ClickException(f"cannot serve on {config.host}:{config.port}: {exc}") from exc


@cli.command()
@click.argument("snapshot", type=click.Path(exists=True))
@click.pass_obj
def load(config: AppConfig, snapshot: str) -> None:
    """Validate SNAPSHOT and install it as the working dataset."""
    try:
        store = GraphStore.load(snapshot)
    except KgAtlasError as exc:
        raise click.ClickException(str(exc)) from exc
    store.snapshot(config.snapshot_path)
    counts = store.stats()
    click.echo(f"loaded {counts['nodes']} nodes / {counts['relationships']} relationships "
               f"into {config.snapshot_path}")


@cli.command()
@click.option("--validate", "run_validate", is_flag=True,
              help="Also print schema violations as JSON lines.")
@click.pass_obj
def stats(config: AppConfig, run_validate: bool) -> None:
    """Print node and relationship counts as JSON."""
    try:
        store = _load_store(config)
    except KgAtlasError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(json.dumps(store.stats(), ensure_ascii=False, sort_keys=True))
    if run_validate:
        for violation in validate(store):
            click.echo(json.dumps(violation.to_dict(), ensure_ascii=False, sort_keys=True))


@cli.command()
@click.argument("text")
@click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
              help="Query parameter; VALUE is parsed as JSON, else kept as text.")
@click.pass_obj
def query(config: AppConfig, text: str, params: tuple[str, ...]) -> None:
    """Run a query; MERGE queries persist the updated snapshot."""
    bound: dict[str, object] = {}
    for item in params:
        name, sep, raw = item.partition("=")
        if not sep or not name:
            raise click.ClickException(f"--param needs NAME=VALUE, got {item!r}")
        try:
            bound[name] = json.loads(raw)
        except json.JSONDecodeError:
            bound[name] = raw
    try:
        store = _load_store(config)
        ast = parse(text)
        table = execute(ast, bound, store)
    except KgAtlasError as exc:
        raise click.ClickException(str(exc)) from exc
    if is_write_query(ast):
        store.snapshot(config.snapshot_path)
    for row in table.to_dicts():
        click.echo(json.dumps(row, ensure_ascii=False, sort_keys=True))


@cli.command()
@click.option("--query", "query_path", type=click.Path(exists=True), default=None,
              help="JSON file {\"name\", \"spec_params\"}; defaults to the demo request.")
@click.option("--providers", "mode", type=click.Choice(["mock", "live"]), default=None,
              help="Provider wiring (overrides config).")
@click.option("--corpus", type=click.Path(exists=True, file_okay=False), default=None,
              help="Corpus directory for the mock search engine.")
@click.option("--page-target", type=int, default=20, show_default=True,
              help="Stop searching once this many unique pages are collected.")
@click.option("--out-report", type=click.Path(), default="ingest-report.json",
              show_default=True, help="Where to write the run report.")
@click.option("--figures", "figures_dir", type=click.Path(), default=None,
              help="Also render run figures (PNG) into this directory.")
@click.pass_obj
def ingest(config: AppConfig, query_path: str | None, mode: str | None, corpus: str | None,
           page_target: int, out_report: str, figures_dir: str | None) -> None:
    """Run the ingestion pipeline and print ranked results as TSV."""
    if mode:
        config.providers.mode = mode
    if corpus:
        config.providers.corpus_dir = corpus
    if query_path:
        raw = json.loads(Path(query_path).read_text(encoding="utf-8"))
    else:
        raw = fixture.CANONICAL_QUERY
    try:
        request = ProductQuery(name=raw["name"], spec_params=dict(raw.get("spec_params", {})))
        store = _load_store(config)
        results = run_pipeline(request, _providers(config), store,
                               page_target=page_target, report_path=out_report)
    except (KgAtlasError, KeyError, TypeError) as exc:
        raise click.ClickException(str(exc)) from exc
    store.snapshot(config.snapshot_path)
    click.echo("name\tbrand\tmodel\tprice\tsimilarity\tsource_url")
    for scored in results:
        product = scored.product
        click.echo(f"{product.name}\t{product.brand}\t{product.model}\t{product.price}"
                   f"\t{scored.similarity:.6f}\t{product.source_url}")
    if figures_dir:
        from kgatlas.reporting import render_report_figures
        report = json.loads(Path(out_report).read_text(encoding="utf-8"))
        paths = render_report_figures(report, [r.to_dict() for r in results], figures_dir)
        for path in paths:
            click.echo(f"figure: {path}", err=True)


main = cli

if __name__ == "__main__":
    main()
