"""Parallel fetch client for nanopub servers, plus the timing benchmark.

Requests are spread round-robin over the given servers with a bounded number
in flight; a failed fetch is retried once on the next server. Every fetched
nanopublication must verify against its artifact code, so a server returning
tampered bytes can only ever contribute to the failure list.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import httpx

from .nanopub import (
    Nanopublication,
    NanopubIndex,
    TRUSTY_CODE_RE,
    index_members,
    nanopub_from_quads,
    parse_index,
    trusty_artifact,
    verify_trusty,
)
from .rdf import Iri, parse_trig


class FetchError(Exception):
    """The index (or the benchmark protocol) could not be satisfied."""


@dataclass(frozen=True)
class FetchReport:
    index_uri: str
    fetched: int
    failed: tuple[tuple[str, str], ...]  # (uri, error)
    elapsed_ms: float
    per_server: dict[str, int]

    def to_json_dict(self) -> dict:
        return {
            "index": self.index_uri,
            "fetched": self.fetched,
            "failed": [{"uri": u, "error": e} for u, e in self.failed],
            "elapsed_ms": round(self.elapsed_ms, 3),
            "per_server": dict(self.per_server),
        }


@dataclass(frozen=True)
class TimingReport:
    parallelism: int
    batches: int
    runs_ms: tuple[float, ...]

    @property
    def mean_ms(self) -> float:
        return statistics.fmean(self.runs_ms)

    @property
    def min_ms(self) -> float:
        return min(self.runs_ms)

    @property
    def max_ms(self) -> float:
        return max(self.runs_ms)

    @property
    def batch_means(self) -> tuple[float, ...]:
        per_batch = len(self.runs_ms) // self.batches
        return tuple(
            statistics.fmean(self.runs_ms[i * per_batch:(i + 1) * per_batch])
            for i in range(self.batches)
        )

    def to_csv(self) -> str:
        per_batch = len(self.runs_ms) // self.batches
        lines = ["run,batch,elapsed_ms"]
        for i, ms in enumerate(self.runs_ms):
            lines.append(f"{i + 1},{i // per_batch + 1},{ms:.3f}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "parallelism": self.parallelism,
            "runs": len(self.runs_ms),
            "batches": self.batches,
            "mean_ms": round(self.mean_ms, 3),
            "min_ms": round(self.min_ms, 3),
            "max_ms": round(self.max_ms, 3),
            "batch_means_ms": [round(b, 3) for b in self.batch_means],
        }


def _artifact_code(uri: str) -> str:
    match = TRUSTY_CODE_RE.search(uri)
    if match is None:
        raise FetchError(f"not a trusty URI: {uri}")
    return match.group(0)


def _get_nanopub(client: httpx.Client, server: str, code: str, timeout: float) -> Nanopublication:
    response = client.get(f"{server.rstrip('/')}/np/{code}", params={"format": "nq"}, timeout=timeout)
    if response.status_code != 200:
        raise FetchError(f"HTTP {response.status_code} from {server}")
    np = nanopub_from_quads(parse_trig(response.text))
    if trusty_artifact(np).code != code:
        raise FetchError(f"server returned artifact {trusty_artifact(np).code}, wanted {code}")
    if not verify_trusty(np):
        raise FetchError(f"verification failed for {np.uri.value}")
    return np


def _fetch_any(client: httpx.Client, servers: Sequence[str], uri: Iri, timeout: float) -> Nanopublication:
    code = _artifact_code(uri.value)
    errors = []
    for server in servers:
        try:
            return _get_nanopub(client, server, code, timeout)
        except Exception as exc:  # noqa: BLE001 - collect per-server reasons and report them all
            errors.append(f"{server}: {exc}")
    raise FetchError(f"unresolvable on all servers: {uri.value} ({'; '.join(errors)})")


def resolve_index(
    client: httpx.Client, index_uri: Iri, servers: Sequence[str], timeout: float
) -> tuple[NanopubIndex, list[Iri]]:
    """Fetch the index entry point and walk its chain to the full member list."""
    entry = parse_index(_fetch_any(client, servers, index_uri, timeout))
    members = index_members(entry, lambda uri: _fetch_any(client, servers, uri, timeout))
    return entry, members


def fetch_all(
    index_uri: Iri | str,
    servers: Sequence[str],
    parallelism: int = 10,
    timeout: float = 10.0,
) -> tuple[list[Nanopublication], FetchReport]:
    """Fetch and verify every member of an index, bounded-parallel.

    The result is sorted by URI and is independent of parallelism and server
    order; fetch failures (after one retry on the next server) end up in the
    report instead.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    if not servers:
        raise ValueError("at least one server is required")
    index_uri = Iri(index_uri) if isinstance(index_uri, str) else index_uri

    started = time.perf_counter()
    per_server: dict[str, int] = {s: 0 for s in servers}
    failed: list[tuple[str, str]] = []
    fetched: dict[str, Nanopublication] = {}

    with httpx.Client(limits=httpx.Limits(max_connections=max(parallelism, 10))) as client:
        _, members = resolve_index(client, index_uri, servers, timeout)

        def fetch_member(task: tuple[int, Iri]) -> tuple[Iri, Nanopublication | None, str, str]:
            position, member = task
            primary = servers[position % len(servers)]
            fallback = servers[(position + 1) % len(servers)]
            code = _artifact_code(member.value)
            try:
                return member, _get_nanopub(client, primary, code, timeout), primary, ""
            except Exception as first:  # noqa: BLE001 - retry once on the next server
                try:
                    return member, _get_nanopub(client, fallback, code, timeout), fallback, ""
                except Exception as second:  # noqa: BLE001
                    return member, None, "", f"{primary}: {first}; {fallback}: {second}"

        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            for member, np, server, error in pool.map(fetch_member, enumerate(members)):
                if np is None:
                    failed.append((member.value, error))
                else:
                    fetched[member.value] = np
                    per_server[server] += 1

    results = [fetched[uri] for uri in sorted(fetched)]
    report = FetchReport(
        index_uri=index_uri.value,
        fetched=len(results),
        failed=tuple(failed),
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
        per_server=per_server,
    )
    return results, report


def benchmark(
    index_uri: Iri | str,
    servers: Sequence[str],
    parallelism: int = 10,
    runs: int = 50,
    batches: int = 5,
    timeout: float = 10.0,
) -> TimingReport:
    """Repeat fetch_all and record wall-clock per run, in batches.

    Any fetch failure aborts the benchmark.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if batches < 1 or runs % batches != 0:
        raise ValueError("runs must be a positive multiple of batches")
    runs_ms: list[float] = []
    for _ in range(runs):
        started = time.perf_counter()
        _, report = fetch_all(index_uri, servers, parallelism, timeout)
        if report.failed:
            uris = ", ".join(uri for uri, _ in report.failed[:3])
            raise FetchError(f"benchmark aborted, {len(report.failed)} fetches failed ({uris} ...)")
        runs_ms.append((time.perf_counter() - started) * 1000.0)
    return TimingReport(parallelism=parallelism, batches=batches, runs_ms=tuple(runs_ms))
