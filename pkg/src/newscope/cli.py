"""Command line interface: index, serve, query, bench."""
from __future__ import annotations

import json
import time
from datetime import date
from pathlib import Path

import click

from .config import EngineConfig
from .corpus import parse_corpus
from .errors import EngineError
from .index import build_index, load_index, save_index
from .service import QueryEngine, create_app, state_json


def _load_config(path: str | None) -> EngineConfig:
    if path is None:
        return EngineConfig()
    return EngineConfig.from_file(path)


def _parse_cli_date(value: str | None, name: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise click.ClickException(f"invalid {name} date: {value!r}")


@click.group()
def main() -> None:
    """Exploratory search over dated news archives."""


@main.command("index")
@click.argument("corpus", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path),
              help="Output index directory.")
def index_cmd(corpus: Path, out: Path) -> None:
    """Build an index directory from a JSONL corpus."""
    t0 = time.perf_counter()
    try:
        with open(corpus, "rb") as fh:
            docs = parse_corpus(fh)
        bundle = build_index(docs)
    except (EngineError, ValueError) as e:
        raise click.ClickException(str(e))
    save_index(bundle, out)
    dt = time.perf_counter() - t0
    span = bundle.corpus_span
    click.echo(f"indexed {bundle.n_docs} documents "
               f"({len(bundle.vocab)} terms, {len(bundle.phrases)} phrases, "
               f"{span[0]} .. {span[1]}) into {out} in {dt:.1f}s")


@main.command("serve")
@click.argument("index_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--port", type=int, default=None, help="Port to listen on.")
@click.option("--host", default=None, help="Host to bind.")
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None,
              help="Static UI directory to serve at / (default: frontend/dist if present).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="INI config file.")
def serve_cmd(index_dir: Path, port: int | None, host: str | None,
              ui_dir: str | None, config_path: str | None) -> None:
    """Serve the HTTP API for a built index."""
    import uvicorn

    cfg = _load_config(config_path)
    try:
        bundle = load_index(index_dir)
    except EngineError as e:
        raise click.ClickException(str(e))
    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    app = create_app(bundle, cfg, ui_dir=ui_dir)
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port, log_level="info")


@main.command("query")
@click.argument("index_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--q", "query", required=True, help="Free text query.")
@click.option("--f", "facet", default=None, help="Facet phrase.")
@click.option("--from", "date_from", default=None, help="Start date (YYYY-MM-DD).")
@click.option("--to", "date_to", default=None, help="End date (YYYY-MM-DD).")
@click.option("--seed", type=int, default=None, help="Sampling seed.")
@click.option("--json", "as_json", is_flag=True, help="Print the raw JSON response.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="INI config file.")
def query_cmd(index_dir: Path, query: str, facet: str | None, date_from: str | None,
              date_to: str | None, seed: int | None, as_json: bool,
              config_path: str | None) -> None:
    """Run one query against a built index and print the state response."""
    cfg = _load_config(config_path)
    try:
        bundle = load_index(index_dir)
        engine = QueryEngine(bundle, cfg)
        result = engine.state(query, facet, _parse_cli_date(date_from, "from"),
                              _parse_cli_date(date_to, "to"), seed=seed)
    except (EngineError, ValueError, KeyError) as e:
        raise click.ClickException(str(e))
    payload = state_json(result)
    if as_json:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    st = result.state
    click.echo(f"query: {st.query!r}  facet: {st.facet!r}  "
               f"span: {st.start} .. {st.end}  seed: {result.seed}")
    click.echo(f"total_docs: {result.total_docs}")
    click.echo("subjects:")
    for rank, s in enumerate(result.subjects, 1):
        click.echo(f"  {rank:2d}. {s.phrase:<40s} qf={s.qf:<6d} df={s.df:<6d} score={s.score:.4f}")
    click.echo("summary:")
    for c in result.summary:
        click.echo(f"  [tier {c.tier}] {c.date} {c.doc_id}#{c.sentence_index}: {c.text}")


@main.command("bench")
@click.argument("index_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--queries", "queries_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSONL file of state requests (q, f, start, end, seed).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="INI config file.")
def bench_cmd(index_dir: Path, queries_path: Path, config_path: str | None) -> None:
    """Replay a query file over /api/state and report latency percentiles."""
    import numpy as np
    from fastapi.testclient import TestClient

    cfg = _load_config(config_path)
    try:
        bundle = load_index(index_dir)
    except EngineError as e:
        raise click.ClickException(str(e))
    app = create_app(bundle, cfg)

    requests = []
    with open(queries_path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                requests.append(json.loads(line))
    if not requests:
        raise click.ClickException("query file is empty")

    latencies = []
    with TestClient(app) as client:
        for req in requests:
            params = {"q": req["q"]}
            for key in ("f", "start", "end", "seed"):
                if req.get(key) is not None:
                    params[key] = req[key]
            t0 = time.perf_counter()
            resp = client.get("/api/state", params=params)
            latencies.append((time.perf_counter() - t0) * 1000.0)
            if resp.status_code != 200:
                raise click.ClickException(
                    f"request {params} failed with status {resp.status_code}: {resp.text}")

    arr = np.array(latencies)
    click.echo(f"queries: {len(arr)}")
    click.echo(f"p50 {np.percentile(arr, 50):.1f} ms")
    click.echo(f"p99 {np.percentile(arr, 99):.1f} ms")
    click.echo(f"max {arr.max():.1f} ms")


if __name__ == "__main__":
    main()
