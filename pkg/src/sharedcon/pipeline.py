"""End-to-end pipeline: extraction, typing, analyses, table output.

Given a corpus bundle, this produces a deterministic output directory:
construction and type dumps (ndjson), long-format analysis row tables
(CSV), plot-ready per-round aggregates (CSV) and a JSON stats summary.
Pseudo-pair results, when requested, land in parallel files with
identical schemas.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import analyses as _analyses
from .analyses import AnalysisRow, DialogueAnalysis, analyze_corpus
from .bundle import parse_corpus
from .configfile import ConfigError, as_bool, as_int, as_int_list, parse_kv_file
from .corpus import Corpus
from .pseudo import build_pseudo_corpus

ROW_HEADER = ("analysis", "dyad", "fribble", "round", "speaker", "phase", "core", "metric", "value")

_ANALYSES = {
    1: _analyses.analysis1,
    2: _analyses.analysis2,
    3: _analyses.analysis3,
}


@dataclass(frozen=True, slots=True)
class PipelineConfig:
    """What to run and where to put it."""

    corpus: Path
    out: Path
    seed: int = 0
    analyses: tuple[int, ...] = (1, 2, 3)
    pseudo: bool = False

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        entries = parse_kv_file(path)
        if "corpus" not in entries or "out" not in entries:
            raise ConfigError("pipeline config needs 'corpus' and 'out' paths")
        which = as_int_list(entries, "analyses", (1, 2, 3))
        bad = sorted(set(which) - set(_ANALYSES))
        if bad:
            raise ConfigError(f"unknown analyses requested: {bad}")
        return cls(
            corpus=Path(entries["corpus"]),
            out=Path(entries["out"]),
            seed=as_int(entries, "seed", 0),
            analyses=which,
            pseudo=as_bool(entries, "pseudo", False),
        )


def _format_value(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)


def _write_rows(rows: Sequence[AnalysisRow], path: Path) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ROW_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.analysis,
                row.dyad,
                row.fribble,
                "" if row.round is None else row.round,
                row.speaker,
                row.phase,
                row.core,
                row.metric,
                _format_value(row.value),
            ]
        )
    path.write_text(buffer.getvalue(), encoding="utf-8")


def read_rows(path: str | Path) -> list[AnalysisRow]:
    """Read a row table back into :class:`AnalysisRow` objects."""
    rows = []
    with open(path, newline="", encoding="utf-8") as handle:
        for record in csv.DictReader(handle):
            rows.append(
                AnalysisRow(
                    analysis=record["analysis"],
                    dyad=record["dyad"],
                    fribble=record["fribble"],
                    round=int(record["round"]) if record["round"] else None,
                    speaker=record["speaker"],
                    phase=record["phase"],
                    core=record["core"],
                    metric=record["metric"],
                    value=float(record["value"]),
                )
            )
    return rows


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")


def _dump_constructions(per_dialogue: Sequence[DialogueAnalysis], path: Path) -> None:
    lines = []
    for da in per_dialogue:
        for fribble, constrs in da.constructions.items():
            for c in constrs:
                lines.append(
                    json.dumps(
                        {
                            "dyad": da.dialogue.dyad,
                            "fribble": fribble,
                            "lemmas": list(c.lemmas),
                            "is_maximal": c.is_maximal,
                            "occurrences": [
                                {
                                    "speaker": o.speaker,
                                    "round": o.round,
                                    "utterance_index": o.utterance_index,
                                    "token_offset": o.token_offset,
                                }
                                for o in c.occurrences
                            ],
                        },
                        sort_keys=True,
                        separators=(",", ":"),
                        ensure_ascii=False,
                    )
                )
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _dump_types(per_dialogue: Sequence[DialogueAnalysis], path: Path) -> None:
    lines = []
    for da in per_dialogue:
        for fribble, timeline in da.timelines.items():
            for t in timeline.types:
                lines.append(
                    json.dumps(
                        {
                            "dyad": da.dialogue.dyad,
                            "fribble": fribble,
                            "core": t.core,
                            "rounds_used": sorted(t.rounds_used),
                            "occurrence_count": t.occurrence_count,
                            "first_round": t.first_round,
                            "last_round": t.last_round,
                            "members": [list(m.lemmas) for m in t.members],
                        },
                        sort_keys=True,
                        separators=(",", ":"),
                        ensure_ascii=False,
                    )
                )
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _run_side(
    corpus: Corpus,
    which: Sequence[int],
    out: Path,
    suffix: str,
) -> dict:
    per_dialogue = analyze_corpus(corpus)
    _dump_constructions(per_dialogue, out / f"constructions{suffix}.ndj")
    _dump_types(per_dialogue, out / f"types{suffix}.ndj")
    summary: dict = {}
    all_rows: dict[int, list[AnalysisRow]] = {}
    for n in which:
        rows, stats = _ANALYSES[n](corpus, per_dialogue)
        _write_rows(rows, out / f"analysis{n}{suffix}.csv")
        summary[f"analysis{n}"] = stats
        all_rows[n] = rows
    _write_aggregates(all_rows, out, suffix)
    return summary


def _write_aggregates(all_rows: dict[int, list[AnalysisRow]], out: Path, suffix: str) -> None:
    """Plot-ready per-round tables behind the three headline figures."""
    if 1 in all_rows:
        by_round: dict[int, list[float]] = {}
        for row in all_rows[1]:
            if row.metric == "round_coverage" and row.round is not None:
                by_round.setdefault(row.round, []).append(row.value)
        _write_csv(
            out / f"round_coverage{suffix}.csv",
            ("round", "mean_coverage", "n_dialogues"),
            [
                (r, _format_value(sum(v) / len(v)), len(v))
                for r, v in sorted(by_round.items())
            ],
        )
    if 2 in all_rows:
        buckets: dict[tuple[str, int], list[float]] = {}
        for row in all_rows[2]:
            if row.metric == "name_type_similarity_by_round" and row.round is not None:
                buckets.setdefault((row.phase, row.round), []).append(row.value)
        _write_csv(
            out / f"name_similarity_by_round{suffix}.csv",
            ("phase", "round", "mean_similarity", "n"),
            [
                (phase, r, _format_value(sum(v) / len(v)), len(v))
                for (phase, r), v in sorted(buckets.items())
            ],
        )
    if 3 in all_rows:
        cells: dict[tuple[str, str], dict[str, float]] = {}
        for row in all_rows[3]:
            if row.metric in ("convergence_n_types", "s_post"):
                cells.setdefault((row.dyad, row.fribble), {})[row.metric] = row.value
        _write_csv(
            out / f"typecount_vs_spost{suffix}.csv",
            ("dyad", "fribble", "n_types", "s_post"),
            [
                (
                    dyad, fribble,
                    _format_value(values["convergence_n_types"]),
                    _format_value(values["s_post"]),
                )
                for (dyad, fribble), values in sorted(cells.items())
                if "convergence_n_types" in values and "s_post" in values
            ],
        )


def run_pipeline(config: PipelineConfig) -> Path:
    """Run extraction, typing and the selected analyses; write the bundle.

    Returns the output directory.  The same config always produces
    byte-identical outputs.
    """
    corpus = parse_corpus(config.corpus)
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)

    summary: dict = {
        "config": {
            "corpus": str(config.corpus),
            "seed": config.seed,
            "analyses": list(config.analyses),
            "pseudo": config.pseudo,
        },
        "corpus": {
            "n_dyads": len(corpus.dialogues),
            "n_namings": len(corpus.namings),
        },
    }
    summary["real"] = _run_side(corpus, config.analyses, out, "")
    if config.pseudo:
        pseudo_corpus = build_pseudo_corpus(corpus, config.seed)
        summary["pseudo"] = _run_side(pseudo_corpus, config.analyses, out, "_pseudo")

    (out / "summary.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return out
