"""Command line entry points for the full pipeline.

Exit codes: 0 success, 2 invalid configuration, 3 unknown seed or article,
4 backend unavailable, 5 any other pipeline error. Flag values override the
--config file, which overrides built-in defaults.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .errors import (
    ArticleNotFound,
    BackendUnavailable,
    InvalidConfig,
    NoRevisionBefore,
    SeedNotFound,
    SeedNotInGraph,
    SnapshotBuildError,
    WikinetError,
)
from .evaluation import EvalConfig, RankedResult, compare_variants, load_judgments, render_table
from .pipeline import RunConfig, canonical_json, make_source, run_build, run_series
from .records import parse_timestamp
from .store import Store

EXIT_CONFIG = 2
EXIT_NOT_FOUND = 3
EXIT_BACKEND = 4
EXIT_PIPELINE = 5


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, SnapshotBuildError):
        return _exit_code(exc.cause)
    if isinstance(exc, (InvalidConfig, ValueError)):
        return EXIT_CONFIG
    if isinstance(exc, (SeedNotFound, SeedNotInGraph, ArticleNotFound, NoRevisionBefore)):
        return EXIT_NOT_FOUND
    if isinstance(exc, BackendUnavailable):
        return EXIT_BACKEND
    return EXIT_PIPELINE


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(_exit_code(exc))


def _load_config(
    config_path: str | None,
    **flags,
) -> RunConfig:
    data: dict = {}
    if config_path:
        with open(config_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    for key, value in flags.items():
        if value is not None:
            data[key] = value
    return RunConfig.from_dict(data)


def _make_store(store_dir: str | None) -> Store | None:
    return Store(store_dir) if store_dir else None


@click.group()
def main() -> None:
    """Build ranked semantic networks from encyclopedia link data."""


@main.command()
@click.argument("term")
@click.option("--limit", default=10, show_default=True)
@click.option("--backend", default="live", show_default=True, help="'live' or a fixture corpus path")
@click.option("--store", "store_dir", default=None, help="article cache directory")
def search(term: str, limit: int, backend: str, store_dir: str | None) -> None:
    """Print candidate seed titles for TERM."""
    try:
        source = make_source(RunConfig(backend=backend), store=_make_store(store_dir))
        for title in source.search_seeds(term, limit):
            click.echo(title)
    except (WikinetError, ValueError) as exc:
        _fail(exc)


def _common_options(fn):
    options = [
        click.option("--seeds", default=None, help="comma-separated seed titles"),
        click.option("--weights", default=None, help="bid,imp,qua,act layer weights"),
        click.option("--threshold", type=float, default=None),
        click.option("--max-nodes", "max_nodes", type=int, default=None),
        click.option("--window-days", "window_days", type=int, default=None),
        click.option("--window-end", "window_end", default=None, help="RFC 3339 end of the actuality window"),
        click.option("--depth", "frontier_depth", type=int, default=None),
        click.option("--include-web/--wiki-only", "include_web", default=None),
        click.option("--backend", default=None, help="'live' or a fixture corpus path"),
        click.option("--config", "config_path", default=None, help="JSON config file"),
        click.option("--store", "store_dir", default=None, help="article cache directory"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _config_from_flags(config_path, seeds, **flags) -> RunConfig:
    if seeds is not None:
        flags["seeds"] = [s.strip() for s in seeds.split(",") if s.strip()]
    return _load_config(config_path, **flags)


@main.command()
@_common_options
@click.option("--out", "out_dir", required=True, help="output directory")
def build(out_dir: str, config_path: str | None, store_dir: str | None, seeds, **flags) -> None:
    """Collect, rank and filter a topic graph; write the export and
    centrality tables."""
    try:
        config = _config_from_flags(config_path, seeds, **flags)
        source = make_source(config, store=_make_store(store_dir))
        result = run_build(source, config)
    except (WikinetError, ValueError) as exc:
        _fail(exc)
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "graph.json").write_text(canonical_json(result.export), encoding="utf-8")
    (out / "centrality_degree.tsv").write_text(result.degree.as_table(), encoding="utf-8")
    (out / "centrality_betweenness.tsv").write_text(result.betweenness.as_table(), encoding="utf-8")
    click.echo(
        f"wrote {out / 'graph.json'} "
        f"({result.graph.node_count} nodes, {result.graph.edge_count} edges)"
    )


@main.command("map")
@_common_options
@click.option("--timestamps", required=True, help="comma-separated RFC 3339 timestamps")
@click.option("--out", "out_path", required=True, help="series document path")
def map_series(
    out_path: str, timestamps: str, config_path: str | None, store_dir: str | None, seeds, **flags
) -> None:
    """Rebuild the filtered topic graph at each timestamp and write the
    animation series document."""
    try:
        stamps = [parse_timestamp(t.strip()) for t in timestamps.split(",") if t.strip()]
        config = _config_from_flags(config_path, seeds, **flags)
        source = make_source(config, store=_make_store(store_dir))
        document = run_series(source, config, stamps)
    except (WikinetError, ValueError) as exc:
        _fail(exc)
        return
    Path(out_path).write_text(canonical_json(document), encoding="utf-8")
    click.echo(f"wrote {out_path} ({len(document['frames'])} frames)")


@main.command()
@click.argument("results", nargs=-1, required=True)
@click.option("--judgments", "judgments_path", required=True, help="JSONL of (query, item, rating)")
@click.option("--query", "query_name", default=None, help="query to evaluate (defaults to the only one)")
@click.option("--k", type=int, default=10, show_default=True)
@click.option("--log-base", type=float, default=2.0, show_default=True)
@click.option("--out", "out_path", default=None, help="also write scores as JSON")
def eval(results, judgments_path, query_name, k, log_base, out_path) -> None:
    """Score ranking variants (JSON list files) against a judgment file."""
    try:
        cfg = EvalConfig(k=k, log_base=log_base)
        judgment_sets = load_judgments(judgments_path)
        if query_name is None:
            if len(judgment_sets) != 1:
                raise InvalidConfig(
                    f"judgment file has {len(judgment_sets)} queries; pass --query"
                )
            query_name = next(iter(judgment_sets))
        if query_name not in judgment_sets:
            raise InvalidConfig(f"no judgments for query {query_name!r}")
        variants = {}
        for path in results:
            with open(path, "r", encoding="utf-8") as fh:
                variants[Path(path).stem] = RankedResult(json.load(fh))
        rows = compare_variants(variants, judgment_sets[query_name], cfg)
    except (WikinetError, ValueError) as exc:
        _fail(exc)
        return
    click.echo(render_table(rows, cfg), nl=False)
    if out_path:
        document = {"query": query_name, "k": cfg.k, "scores": dict(rows)}
        Path(out_path).write_text(canonical_json(document), encoding="utf-8")


@main.command()
@click.option("--backend", default="live", show_default=True)
@click.option("--store", "store_dir", default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8040, show_default=True)
@click.option("--frontend", "frontend_dir", default=None, help="serve the browser explorer from this directory")
def serve(backend: str, store_dir: str | None, host: str, port: int, frontend_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(
        default_backend=backend, store=_make_store(store_dir), frontend_dir=frontend_dir
    )
    uvicorn.run(app, host=host, port=port)


@main.group()
def corpus() -> None:
    """Move article data between a cache store and fixture corpora."""


@corpus.command("export")
@click.option("--store", "store_dir", required=True)
@click.option("--out", "out_dir", required=True)
def corpus_export(store_dir: str, out_dir: str) -> None:
    """Write the cache store as a portable fixture corpus."""
    count = Store(store_dir).export_corpus(out_dir)
    click.echo(f"exported {count} articles to {out_dir}")


@corpus.command("import")
@click.option("--corpus", "corpus_dir", required=True)
@click.option("--store", "store_dir", required=True)
def corpus_import(corpus_dir: str, store_dir: str) -> None:
    """Warm a cache store from a fixture corpus."""
    count = Store(store_dir).import_corpus(corpus_dir)
    click.echo(f"imported {count} articles into {store_dir}")


if __name__ == "__main__":
    main()
