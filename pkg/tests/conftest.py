from __future__ import annotations

import threading
import time
from pathlib import Path

import pytest
import uvicorn

from linkflows.corpus import ArticleLayout, CorpusSpec, generate_corpus
from linkflows.store import QuadStore

FIXTURES = Path(__file__).parent / "fixtures"

MINI_SPEC = CorpusSpec(
    seed=5,
    articles=(
        ArticleLayout("Mini article", sections=3, top_sections=2, paragraphs=6, figures=1),
    ),
    reviews=((3, 2),),
    assertion_total=None,
)


@pytest.fixture(scope="session")
def corpus42():
    return generate_corpus(CorpusSpec(seed=42))


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory) -> Path:
    """A seed-42 corpus written to disk once, via the CLI surface."""
    from click.testing import CliRunner

    from linkflows.cli import cli

    out = tmp_path_factory.mktemp("corpus") / "seed42"
    result = CliRunner().invoke(cli, ["gen-corpus", "--seed", "42", "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out


@pytest.fixture(scope="session")
def store42(corpus42):
    return QuadStore.load(corpus42.nanopubs)


@pytest.fixture(scope="session")
def mini_corpus():
    return generate_corpus(MINI_SPEC)


class ServerThread:
    """A uvicorn server on an ephemeral port, running in a daemon thread."""

    def __init__(self, app):
        self._config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
        self.server = uvicorn.Server(self._config)
        self.thread = threading.Thread(target=self.server.run, daemon=True)
        self.app = app

    def start(self) -> "ServerThread":
        self.thread.start()
        deadline = time.time() + 10
        while not self.server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start within 10s")
            time.sleep(0.01)
        self.port = self.server.servers[0].sockets[0].getsockname()[1]
        self.url = f"http://127.0.0.1:{self.port}"
        return self

    def stop(self) -> None:
        self.server.should_exit = True
        self.thread.join(timeout=10)


@pytest.fixture
def server_factory(tmp_path):
    """Start nanopub servers backed by fresh storage dirs; stopped on teardown."""
    from linkflows.npserver import create_np_app, seed_storage

    started: list[ServerThread] = []
    counter = [0]

    def factory(nanopubs=(), latency_ms: int = 0) -> ServerThread:
        counter[0] += 1
        storage = tmp_path / f"srv{counter[0]}"
        seed_storage(storage, nanopubs)
        app = create_np_app(storage, latency_ms=latency_ms)
        handle = ServerThread(app).start()
        handle.storage = storage
        started.append(handle)
        return handle

    yield factory
    for handle in started:
        handle.stop()


class ServerProcess:
    """A nanopub server in its own process, via the CLI entry point."""

    def __init__(self, storage: Path, latency_ms: int = 0):
        import socket
        import subprocess
        import sys

        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            self.port = probe.getsockname()[1]
        self.url = f"http://127.0.0.1:{self.port}"
        self.storage = storage
        self.process = subprocess.Popen(
            [
                sys.executable, "-m", "linkflows.cli", "serve-np",
                "--port", str(self.port), "--dir", str(storage),
                "--latency-ms", str(latency_ms),
            ],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )

    def wait_ready(self, timeout: float = 20.0) -> "ServerProcess":
        import httpx

        deadline = time.time() + timeout
        while time.time() < deadline:
            try:
                if httpx.get(f"{self.url}/stats", timeout=1.0).status_code == 200:
                    return self
            except httpx.HTTPError:
                time.sleep(0.05)
        self.stop()
        raise RuntimeError(f"server on port {self.port} did not come up")

    def stop(self) -> None:
        self.process.terminate()
        try:
            self.process.wait(timeout=10)
        except Exception:
            self.process.kill()


@pytest.fixture
def server_process_factory(tmp_path):
    """Like server_factory, but each server runs in its own OS process."""
    from linkflows.npserver import seed_storage

    started: list[ServerProcess] = []
    counter = [0]

    def factory(nanopubs=(), latency_ms: int = 0) -> ServerProcess:
        counter[0] += 1
        storage = tmp_path / f"proc{counter[0]}"
        seed_storage(storage, nanopubs)
        handle = ServerProcess(storage, latency_ms=latency_ms).wait_ready()
        started.append(handle)
        return handle

    yield factory
    for handle in started:
        handle.stop()
