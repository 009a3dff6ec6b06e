"""Command-line entry point tying the corpus, store, network, and API together.

Exit codes: 0 success, 1 validation/verification/transfer failure, 2 usage
error. Analytics commands accept --json for machine-readable output that is
byte-for-byte the same JSON the HTTP API serves.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .corpus import CorpusSpec, generate_corpus
from .nanopub import (
    NanopubError,
    NotTrustyError,
    discover_nanopubs,
    make_trusty,
    trusty_artifact,
    validate,
    verify_trusty,
)
from .npclient import FetchError, benchmark as run_benchmark, fetch_all
from .npserver import ServerConfig, serve as serve_np_server
from .payloads import (
    CommentFilters,
    FilterError,
    article_alias_map,
    build_cq,
    build_comments,
    cq_table,
)
from .rdf import Iri, ParseError, parse_trig
from .store import QuadStore, StoreError, UnknownArticleError


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_store(path: str) -> QuadStore:
    try:
        return QuadStore.load_path(path)
    except (StoreError, NanopubError, ParseError) as exc:
        _fail(str(exc))
        raise AssertionError("unreachable")


def _split_servers(servers: tuple[str, ...]) -> list[str]:
    out: list[str] = []
    for chunk in servers:
        out.extend(s.strip() for s in chunk.split(",") if s.strip())
    if not out:
        raise click.UsageError("at least one --servers URL is required")
    return out


@click.group()
@click.version_option(package_name="linkflows")
def cli() -> None:
    """Nanopublication tooling for fine-grained article reviewing."""


@cli.command("gen-corpus")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), help="write one .trig per nanopublication here")
@click.option("--single-file", type=click.Path(path_type=Path), help="write the whole corpus as one TriG file")
@click.option("--json", "as_json", is_flag=True, help="print the summary as JSON")
def gen_corpus(seed: int, out_dir: Path | None, single_file: Path | None, as_json: bool) -> None:
    """Generate the synthetic review corpus."""
    if out_dir is None and single_file is None:
        raise click.UsageError("pass --out DIR and/or --single-file FILE")
    corpus = generate_corpus(CorpusSpec(seed=seed))

    aliases = {f"a{i + 1}": uri.value for i, uri in enumerate(corpus.article_uris)}
    summary = {
        "seed": seed,
        "nanopubs": len(corpus.nanopubs),
        "triples": sum(len(np.quads) for np in corpus.nanopubs),
        "articles": aliases,
        "top_index": corpus.top_index.value,
        "index_uris": [u.value for u in corpus.index_uris],
    }
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for np in corpus.nanopubs:
            (out_dir / f"{trusty_artifact(np).code}.trig").write_text(np.to_trig(), encoding="utf-8")
        (out_dir / "corpus.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    if single_file is not None:
        single_file.parent.mkdir(parents=True, exist_ok=True)
        single_file.write_text("".join(np.to_trig() + "\n" for np in corpus.nanopubs), encoding="utf-8")

    if as_json:
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(f"generated {summary['nanopubs']} nanopublications ({summary['triples']} triples)")
        click.echo(f"top index: {summary['top_index']}")
        for alias, uri in aliases.items():
            click.echo(f"  {alias}: {uri}")


@cli.command("validate")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path))
def validate_files(files: tuple[Path, ...]) -> None:
    """Structurally validate nanopublications in FILES."""
    failures = 0
    for file in files:
        try:
            nanopubs = discover_nanopubs(parse_trig(file.read_text(encoding="utf-8")))
        except (ParseError, NanopubError) as exc:
            click.echo(f"{file}: {exc}", err=True)
            failures += 1
            continue
        for np in nanopubs:
            report = validate(np)
            if report.valid:
                click.echo(f"{file}: {np.uri.value}: valid")
            else:
                click.echo(f"{file}: {np.uri.value}: {report}", err=True)
                failures += 1
    if failures:
        sys.exit(1)


@cli.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--base", default=None, help="publish base for the trusty URI")
@click.option("--out", "out_file", type=click.Path(path_type=Path), help="write the trusty TriG here (default: stdout)")
def mktrusty(file: Path, base: str | None, out_file: Path | None) -> None:
    """Turn a pre-trusty (urn:temp:) nanopublication into a trusty one."""
    try:
        nanopubs = discover_nanopubs(parse_trig(file.read_text(encoding="utf-8")))
        if len(nanopubs) != 1:
            _fail(f"{file} holds {len(nanopubs)} nanopublications, expected 1")
        np = make_trusty(nanopubs[0], Iri(base) if base else None)
    except (ParseError, NanopubError) as exc:
        _fail(str(exc))
        return
    if out_file is not None:
        out_file.write_text(np.to_trig(), encoding="utf-8")
    else:
        click.echo(np.to_trig(), nl=False)
    click.echo(np.uri.value, err=True)


@cli.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path))
def verify(files: tuple[Path, ...]) -> None:
    """Verify the artifact codes of nanopublications in FILES."""
    failures = 0
    for file in files:
        try:
            nanopubs = discover_nanopubs(parse_trig(file.read_text(encoding="utf-8")))
        except (ParseError, NanopubError) as exc:
            click.echo(f"{file}: {exc}", err=True)
            failures += 1
            continue
        for np in nanopubs:
            try:
                ok = verify_trusty(np)
            except NotTrustyError as exc:
                click.echo(f"{file}: {exc}", err=True)
                failures += 1
                continue
            if ok:
                click.echo(f"{file}: {np.uri.value}: OK")
            else:
                click.echo(f"{file}: {np.uri.value}: TRUSTY_MISMATCH", err=True)
                failures += 1
    if failures:
        sys.exit(1)


@cli.command()
@click.option("--server", required=True, help="nanopub server base URL")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path))
def publish(server: str, files: tuple[Path, ...]) -> None:
    """POST nanopublication FILES to a server."""
    import httpx

    failures = 0
    with httpx.Client() as client:
        for file in files:
            try:
                response = client.post(
                    f"{server.rstrip('/')}/np",
                    content=file.read_bytes(),
                    headers={"Content-Type": "application/trig"},
                    timeout=30.0,
                )
            except httpx.HTTPError as exc:
                click.echo(f"{file}: {exc}", err=True)
                failures += 1
                continue
            if response.status_code in (200, 201):
                click.echo(f"{file}: {response.json()['artifact']}")
            else:
                click.echo(f"{file}: HTTP {response.status_code}: {response.text}", err=True)
                failures += 1
    if failures:
        sys.exit(1)


@cli.command()
@click.option("--index", "index_uri", required=True, help="URI of the index nanopublication")
@click.option("--servers", multiple=True, required=True, help="server base URL (repeat or comma-separate)")
@click.option("--parallelism", type=int, default=10, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), help="write fetched nanopublications here")
@click.option("--json", "as_json", is_flag=True)
def fetch(index_uri: str, servers: tuple[str, ...], parallelism: int, out_dir: Path | None, as_json: bool) -> None:
    """Fetch and verify every member of an index from the server network."""
    try:
        nanopubs, report = fetch_all(index_uri, _split_servers(servers), parallelism)
    except (FetchError, ValueError) as exc:
        _fail(str(exc))
        return
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for np in nanopubs:
            (out_dir / f"{trusty_artifact(np).code}.trig").write_text(np.to_trig(), encoding="utf-8")
    if as_json:
        click.echo(json.dumps(report.to_json_dict(), indent=2))
    else:
        click.echo(f"fetched {report.fetched} nanopublications in {report.elapsed_ms:.0f} ms")
        for uri, error in report.failed:
            click.echo(f"failed: {uri}: {error}", err=True)
    if report.failed:
        sys.exit(1)


@cli.command("benchmark")
@click.option("--index", "index_uri", required=True)
@click.option("--servers", multiple=True, required=True)
@click.option("--parallelism", type=int, default=10, show_default=True)
@click.option("--runs", type=int, default=50, show_default=True)
@click.option("--batches", type=int, default=5, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), help="write per-run timings here")
@click.option("--json", "as_json", is_flag=True)
def benchmark_cmd(
    index_uri: str, servers: tuple[str, ...], parallelism: int, runs: int, batches: int,
    csv_path: Path | None, as_json: bool,
) -> None:
    """Time repeated index retrievals (the 50-run, 5-batch protocol)."""
    try:
        report = run_benchmark(index_uri, _split_servers(servers), parallelism, runs, batches)
    except (FetchError, ValueError) as exc:
        _fail(str(exc))
        return
    if csv_path is not None:
        csv_path.write_text(report.to_csv(), encoding="utf-8")
    if as_json:
        click.echo(json.dumps(report.to_json_dict(), indent=2))
    else:
        click.echo(
            f"{runs} runs x parallelism {parallelism}: "
            f"mean {report.mean_ms:.1f} ms, min {report.min_ms:.1f} ms, max {report.max_ms:.1f} ms"
        )
        for i, mean in enumerate(report.batch_means):
            click.echo(f"  batch {i + 1}: {mean:.1f} ms")


@cli.command()
@click.option("--store", "store_path", envvar="LINKFLOWS_STORE", required=True,
              type=click.Path(exists=True, path_type=Path), help="corpus directory or file [env: LINKFLOWS_STORE]")
@click.option("--json", "as_json", is_flag=True)
def stats(store_path: Path, as_json: bool) -> None:
    """Descriptive statistics of a loaded corpus."""
    store = _load_store(str(store_path))
    if as_json:
        click.echo(json.dumps(store.stats().to_json_dict(), indent=2))
    else:
        click.echo(store.stats().to_table(), nl=False)


@cli.command()
@click.option("--store", "store_path", envvar="LINKFLOWS_STORE", required=True,
              type=click.Path(exists=True, path_type=Path), help="corpus directory or file [env: LINKFLOWS_STORE]")
@click.option("--article", required=True, help="article alias (a1, a2, ...)")
@click.option("--question", type=int, required=True, help="competency question 1..7")
@click.option("--threshold", type=int, default=None, help="impact cut-off for question 5")
@click.option("--mode", default=None, help="counting mode for question 6")
@click.option("--json", "as_json", is_flag=True)
def cq(store_path: Path, article: str, question: int, threshold: int | None, mode: str | None, as_json: bool) -> None:
    """Answer one competency question for one article."""
    store = _load_store(str(store_path))
    try:
        if as_json:
            payload = build_cq(store, article, question, threshold, mode)
            click.echo(json.dumps(payload.model_dump(), indent=2))
        else:
            click.echo(cq_table(store, article, question, threshold, mode), nl=False)
    except UnknownArticleError as exc:
        raise click.UsageError(f"unknown article: {article}") from exc
    except FilterError as exc:
        raise click.UsageError(str(exc)) from exc


@cli.command()
@click.option("--store", "store_path", envvar="LINKFLOWS_STORE", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--article", required=True)
@click.option("--reviewer", default=None)
@click.option("--positivity", default=None)
@click.option("--aspect", default=None)
@click.option("--actionability", default=None)
@click.option("--impact-min", type=int, default=None)
@click.option("--section", default=None, help="top-level section URI or 'article-level'")
def comments(store_path: Path, article: str, reviewer: str | None, positivity: str | None,
             aspect: str | None, actionability: str | None, impact_min: int | None,
             section: str | None) -> None:
    """List review comments matching the given filters, as JSON."""
    store = _load_store(str(store_path))
    filters = CommentFilters(
        article=article, reviewer=reviewer, positivity=positivity, aspect=aspect,
        actionability=actionability, impact_min=impact_min, section=section,
    )
    try:
        click.echo(json.dumps(build_comments(store, filters).model_dump(), indent=2))
    except UnknownArticleError as exc:
        raise click.UsageError(f"unknown article: {article}") from exc
    except FilterError as exc:
        raise click.UsageError(str(exc)) from exc


@cli.command("serve-np")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--dir", "storage_dir", required=True, type=click.Path(path_type=Path))
@click.option("--latency-ms", type=int, default=0, show_default=True, help="artificial per-request latency")
def serve_np(host: str, port: int, storage_dir: Path, latency_ms: int) -> None:
    """Run a nanopublication server."""
    serve_np_server(ServerConfig(host=host, port=port, storage_dir=storage_dir, latency_ms=latency_ms))


@cli.command("serve-api")
@click.option("--store", "store_path", envvar="LINKFLOWS_STORE", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--frontend", "frontend_dir", type=click.Path(path_type=Path), default=None,
              help="directory with the built dashboard bundle")
def serve_api_cmd(store_path: Path, host: str, port: int, frontend_dir: Path | None) -> None:
    """Run the analytics API (and the dashboard, when a bundle is given)."""
    from .api import serve_api

    store = _load_store(str(store_path))
    aliases = ", ".join(article_alias_map(store))
    click.echo(f"serving {len(store.nanopubs)} nanopublications (articles: {aliases}) on {host}:{port}", err=True)
    serve_api(store, host=host, port=port, frontend_dir=frontend_dir)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
