from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharedcon.bundle import (
    BundleFormatError,
    CorpusValidationError,
    parse_corpus,
    write_corpus,
)
from sharedcon.corpus import Corpus
from sharedcon.synth import GeneratorConfig, generate

from conftest import build_mini_corpus


def _read(path):
    return {p.name: p.read_bytes() for p in sorted(path.iterdir()) if p.is_file()}


def test_round_trip_mini_corpus(tmp_path, mini_corpus):
    first = tmp_path / "one"
    write_corpus(mini_corpus, first)
    parsed = parse_corpus(first)
    assert parsed == mini_corpus

    second = tmp_path / "two"
    write_corpus(parsed, second)
    assert _read(first) == _read(second)
    assert parse_corpus(second) == mini_corpus


def test_two_writes_are_byte_identical(tmp_path, mini_corpus):
    write_corpus(mini_corpus, tmp_path / "one")
    write_corpus(mini_corpus, tmp_path / "two")
    assert _read(tmp_path / "one") == _read(tmp_path / "two")


def test_empty_corpus_writes_manifest_only(tmp_path):
    out = write_corpus(Corpus(dialogues=()), tmp_path / "empty")
    assert [p.name for p in sorted(out.iterdir())] == ["corpus.manifest"]
    assert parse_corpus(out) == Corpus(dialogues=())


def test_zip_round_trip(tmp_path, mini_corpus):
    archive = tmp_path / "corpus.zip"
    write_corpus(mini_corpus, archive)
    assert parse_corpus(archive) == mini_corpus
    # determinism also holds for archives
    other = tmp_path / "again.zip"
    write_corpus(mini_corpus, other)
    assert archive.read_bytes() == other.read_bytes()


def test_small_fixture_file_parses(tmp_path):
    (tmp_path / "corpus.manifest").write_text(
        json.dumps({"format_version": "1", "rounds": 1,
                    "dyads": [{"dyad": "d", "speakers": ["a", "b"], "rounds": 1}]})
    )
    records = [
        {"dyad": "d", "round": 1, "fribble": "f1", "director": "a", "speaker": "a",
         "global_index": 0, "tokens": [["bal", "bal", "NOUN", False]]},
        {"dyad": "d", "round": 1, "fribble": "f1", "director": "a", "speaker": "b",
         "global_index": 1, "tokens": [["ja", "ja", "INTJ", False]]},
    ]
    (tmp_path / "transcripts.ndj").write_text(
        "".join(json.dumps(r) + "\n" for r in records)
    )
    corpus = parse_corpus(tmp_path)
    assert len(corpus.dialogues) == 1
    assert len(corpus.dialogues[0].trials) == 1
    assert corpus.dialogues[0].trials[0].matcher == "b"


@pytest.mark.parametrize(
    "mutation, fragment",
    [
        (lambda r: r.update(tokens=[["x", "x", "XYZ", False]]), "unknown POS"),
        (lambda r: r.pop("fribble"), "missing field"),
        (lambda r: r.update(tokens=[]), "non-empty"),
        (lambda r: r.update(global_index="zero"), "integers"),
        (lambda r: r.update(dyad="ghost"), "not in manifest"),
    ],
)
def test_malformed_records_report_line_and_reason(tmp_path, mutation, fragment):
    (tmp_path / "corpus.manifest").write_text(
        json.dumps({"format_version": "1", "rounds": 1,
                    "dyads": [{"dyad": "d", "speakers": ["a", "b"], "rounds": 1}]})
    )
    record = {"dyad": "d", "round": 1, "fribble": "f1", "director": "a", "speaker": "a",
              "global_index": 0, "tokens": [["bal", "bal", "NOUN", False]]}
    mutation(record)
    (tmp_path / "transcripts.ndj").write_text(json.dumps(record) + "\n")
    with pytest.raises(BundleFormatError) as err:
        parse_corpus(tmp_path)
    assert fragment in str(err.value)
    assert "transcripts.ndj:1" in str(err.value)


def test_version_mismatch_rejected(tmp_path):
    (tmp_path / "corpus.manifest").write_text(
        json.dumps({"format_version": "99", "rounds": 1, "dyads": []})
    )
    with pytest.raises(BundleFormatError) as err:
        parse_corpus(tmp_path)
    assert "format_version" in str(err.value)


def test_conflicting_director_reported_as_duplicate_trial(tmp_path):
    (tmp_path / "corpus.manifest").write_text(
        json.dumps({"format_version": "1", "rounds": 1,
                    "dyads": [{"dyad": "d", "speakers": ["a", "b"], "rounds": 1}]})
    )
    records = [
        {"dyad": "d", "round": 1, "fribble": "f1", "director": "a", "speaker": "a",
         "global_index": 0, "tokens": [["bal", "bal", "NOUN", False]]},
        {"dyad": "d", "round": 1, "fribble": "f1", "director": "b", "speaker": "b",
         "global_index": 1, "tokens": [["ja", "ja", "INTJ", False]]},
    ]
    (tmp_path / "transcripts.ndj").write_text(
        "".join(json.dumps(r) + "\n" for r in records)
    )
    with pytest.raises(BundleFormatError) as err:
        parse_corpus(tmp_path)
    assert "duplicate trial" in str(err.value)


def test_invalid_corpus_raises_unless_check_disabled(tmp_path):
    (tmp_path / "corpus.manifest").write_text(
        json.dumps({"format_version": "1", "rounds": 1,
                    "dyads": [{"dyad": "d", "speakers": ["a", "a"], "rounds": 1}]})
    )
    with pytest.raises(CorpusValidationError):
        parse_corpus(tmp_path)
    corpus = parse_corpus(tmp_path, check=False)
    assert corpus.dialogues[0].speakers == ("a", "a")


@settings(max_examples=25, deadline=None)
@given(
    dyads=st.integers(min_value=1, max_value=3),
    fribbles=st.integers(min_value=1, max_value=3),
    rounds=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_round_trip_identity_on_random_corpora(tmp_path_factory, dyads, fribbles, rounds, seed):
    corpus, _ = generate(
        GeneratorConfig(
            dyads=dyads, fribbles=fribbles, rounds=rounds, seed=seed,
            reuse_probability=(0.5,) * rounds,
            type_prune_schedule=(2,) * rounds,
        )
    )
    out = tmp_path_factory.mktemp("bundle")
    write_corpus(corpus, out)
    assert parse_corpus(out) == corpus


def test_manifest_extras_round_out_to_manifest(tmp_path):
    corpus = build_mini_corpus()
    out = write_corpus(corpus, tmp_path / "b", manifest_extras={"pseudo": True, "pseudo_seed": 7})
    manifest = json.loads((out / "corpus.manifest").read_text())
    assert manifest["pseudo"] is True
    assert manifest["pseudo_seed"] == 7
    assert parse_corpus(out) == corpus
