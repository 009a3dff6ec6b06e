from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from linkflows.api import create_api_app
from linkflows.cli import cli
from linkflows.payloads import build_cq
from linkflows.store import QuadStore

from conftest import FIXTURES


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


def test_gen_corpus_writes_files_and_summary(runner, corpus_dir: Path):
    trig_files = list(corpus_dir.glob("*.trig"))
    assert len(trig_files) == 627
    summary = json.loads((corpus_dir / "corpus.json").read_text())
    assert summary["nanopubs"] == 627
    assert summary["triples"] == 10437
    assert set(summary["articles"]) == {"a1", "a2", "a3"}
    assert summary["top_index"].split("/")[-1].startswith("RA")


def test_gen_corpus_requires_destination(runner):
    result = runner.invoke(cli, ["gen-corpus", "--seed", "1"])
    assert result.exit_code == 2


def test_stats_json(runner, corpus_dir: Path):
    result = runner.invoke(cli, ["stats", "--store", str(corpus_dir), "--json"])
    assert result.exit_code == 0, result.output
    stats = json.loads(result.output)
    assert stats["triples"]["total"] == 10437
    assert stats["elements"]["paragraphs"] == 279


def test_cq_table_output(runner, corpus_dir: Path):
    result = runner.invoke(cli, ["cq", "--store", str(corpus_dir), "--article", "a1", "--question", "1"])
    assert result.exit_code == 0, result.output
    assert "reviewer" in result.output
    assert "17" in result.output and "50" in result.output


def test_cq_json_equals_api_payload(runner, corpus_dir: Path):
    store = QuadStore.load_path(corpus_dir)
    with TestClient(create_api_app(store)) as client:
        for question in range(1, 8):
            result = runner.invoke(
                cli, ["cq", "--store", str(corpus_dir), "--article", "a1", "--question", str(question), "--json"]
            )
            assert result.exit_code == 0, result.output
            via_cli = json.loads(result.output)
            via_api = client.get(f"/api/articles/a1/cq/{question}").json()
            assert via_cli == via_api == build_cq(store, "a1", question).model_dump()


def test_cq_unknown_article_is_usage_error(runner, corpus_dir: Path):
    result = runner.invoke(cli, ["cq", "--store", str(corpus_dir), "--article", "a9", "--question", "1"])
    assert result.exit_code == 2


def test_cq_missing_question_is_usage_error(runner, corpus_dir: Path):
    result = runner.invoke(cli, ["cq", "--store", str(corpus_dir), "--article", "a1"])
    assert result.exit_code == 2


def test_store_env_var(runner, corpus_dir: Path, monkeypatch):
    monkeypatch.setenv("LINKFLOWS_STORE", str(corpus_dir))
    result = runner.invoke(cli, ["cq", "--article", "a1", "--question", "3", "--json"])
    assert result.exit_code == 0, result.output


def test_validate_ok_and_verify_ok(runner, corpus_dir: Path):
    sample = next(iter(sorted(corpus_dir.glob("*.trig"))))
    assert runner.invoke(cli, ["validate", str(sample)]).exit_code == 0
    assert runner.invoke(cli, ["verify", str(sample)]).exit_code == 0


def test_verify_tampered_file(runner, corpus_dir: Path, tmp_path: Path):
    sample = next(iter(sorted(corpus_dir.glob("*.trig"))))
    tampered = tmp_path / "tampered.trig"
    tampered.write_text(sample.read_text().replace("09:00:00Z", "09:00:01Z"), encoding="utf-8")
    result = runner.invoke(cli, ["verify", str(tampered)])
    assert result.exit_code == 1
    assert "TRUSTY_MISMATCH" in result.output


def test_mktrusty_fixture(runner, tmp_path: Path):
    out = tmp_path / "trusty.trig"
    result = runner.invoke(
        cli, ["mktrusty", str(FIXTURES / "sample_review_comment.trig"), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert runner.invoke(cli, ["verify", str(out)]).exit_code == 0


def test_comments_command(runner, corpus_dir: Path):
    result = runner.invoke(
        cli,
        ["comments", "--store", str(corpus_dir), "--article", "a1", "--positivity", "negative", "--impact-min", "4"],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["count"] == len(payload["comments"])
    assert all(c["impact"] >= 4 and c["positivity"] == "negative" for c in payload["comments"])
