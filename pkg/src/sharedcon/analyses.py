"""The three corpus analyses.

Each analysis emits long-format rows (one metric value per row, keyed by
dyad/fribble/round/speaker/phase/core where applicable) plus a summary
statistics dict.  Every summary number is recomputable from the rows.
The closed set of metric names is :data:`METRIC_NAMES`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .construction_types import TypeTimeline, build_timeline, dominant_type
from .corpus import Corpus, Dialogue, NamingRecord, Phase
from .extraction import SharedConstruction, extract_shared_constructions
from .metrics import (
    ConvergenceRecord,
    DegenerateDataError,
    StatResult,
    convergence,
    dialogue_coverage,
    lexical_cosine,
    name_overlap,
    spearman,
    t_test,
    utterance_coverage,
)

METRIC_NAMES = frozenset(
    {
        # analysis 1
        "n_constructions",
        "n_types",
        "round_coverage",
        "dialogue_coverage",
        "first_round_types",
        "last_round_types",
        # analysis 2
        "self_similarity",
        "name_type_similarity",
        "name_type_similarity_by_round",
        "name_overlaps",
        "name_max_type_similarity",
        "name_mean_type_similarity",
        "participant_usage_count",
        # analysis 3
        "s_pre",
        "s_post",
        "delta",
        "convergence_n_types",
        "dominant_frequency",
        "dominant_recency",
        "dominant_excluded",
    }
)


@dataclass(frozen=True, slots=True)
class AnalysisRow:
    """One metric value with its grouping keys (empty string = n/a)."""

    analysis: str
    dyad: str
    fribble: str = ""
    round: int | None = None
    speaker: str = ""
    phase: str = ""
    core: str = ""
    metric: str = ""
    value: float = 0.0


@dataclass(slots=True)
class DialogueAnalysis:
    """Extraction + typing results for one dialogue."""

    dialogue: Dialogue
    constructions: dict[str, list[SharedConstruction]]
    timelines: dict[str, TypeTimeline]


def analyze_dialogue(dialogue: Dialogue) -> DialogueAnalysis:
    constructions = extract_shared_constructions(dialogue)
    timelines = {
        fribble: build_timeline(dialogue.dyad, fribble, constrs)
        for fribble, constrs in constructions.items()
    }
    return DialogueAnalysis(dialogue=dialogue, constructions=constructions, timelines=timelines)


def analyze_corpus(corpus: Corpus) -> list[DialogueAnalysis]:
    return [analyze_dialogue(d) for d in corpus.dialogues]


def _stat_dict(result: StatResult, label: str = "statistic") -> dict:
    return {label: result.statistic, "p": result.p_value, "n": result.n}


def _degenerate(n: int, label: str = "statistic") -> dict:
    return {label: None, "p": None, "n": n, "degenerate": True}


def _safe_spearman(x: Sequence[float], y: Sequence[float]) -> dict:
    if len(x) < 3:
        return _degenerate(len(x), "rho")
    try:
        return _stat_dict(spearman(x, y), "rho")
    except DegenerateDataError:
        return _degenerate(len(x), "rho")


def _mean(values: Sequence[float]) -> float | None:
    return sum(values) / len(values) if values else None


def _std(values: Sequence[float]) -> float | None:
    if len(values) < 2:
        return None
    m = sum(values) / len(values)
    return (sum((v - m) ** 2 for v in values) / (len(values) - 1)) ** 0.5


def analysis1(
    corpus: Corpus,
    per_dialogue: Sequence[DialogueAnalysis],
) -> tuple[list[AnalysisRow], dict]:
    """Presence of shared constructions and their use over rounds."""
    rows: list[AnalysisRow] = []
    complete_dyads = 0
    coverage_points: list[tuple[int, float]] = []
    dialogue_coverages: list[float] = []
    type_counts: list[int] = []
    first_counts: list[float] = []
    last_counts: list[float] = []
    pooled: dict[int, list[int]] = {}

    for da in per_dialogue:
        dialogue = da.dialogue
        fribbles = dialogue.fribbles()
        if fribbles and all(da.constructions.get(f) for f in fribbles):
            complete_dyads += 1

        for fribble in fribbles:
            constrs = da.constructions.get(fribble, [])
            timeline = da.timelines.get(fribble)
            types = timeline.types if timeline else ()
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad, fribble=fribble,
                    metric="n_constructions", value=float(len(constrs)),
                )
            )
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad, fribble=fribble,
                    metric="n_types", value=float(len(types)),
                )
            )
            type_counts.append(len(types))
            first = sum(1 for t in types if 1 in t.rounds_used)
            last = sum(1 for t in types if dialogue.rounds in t.rounds_used)
            first_counts.append(float(first))
            last_counts.append(float(last))
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad, fribble=fribble,
                    metric="first_round_types", value=float(first),
                )
            )
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad, fribble=fribble,
                    metric="last_round_types", value=float(last),
                )
            )

        per_round = utterance_coverage(dialogue, da.constructions)
        for round_, fraction in enumerate(per_round, start=1):
            if fraction is None:
                continue
            coverage_points.append((round_, fraction))
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad, round=round_,
                    metric="round_coverage", value=fraction,
                )
            )
        overall = dialogue_coverage(dialogue, da.constructions)
        if overall is not None:
            dialogue_coverages.append(overall)
            rows.append(
                AnalysisRow(
                    analysis="1", dyad=dialogue.dyad,
                    metric="dialogue_coverage", value=overall,
                )
            )

        # pooled per-round counts for the alternative aggregate
        covered_sites = {
            f: {o.utterance_index for c in cs for o in c.occurrences}
            for f, cs in da.constructions.items()
        }
        for trial in dialogue.trials:
            bucket = pooled.setdefault(trial.round, [0, 0])
            sites = covered_sites.get(trial.fribble, set())
            for utt in trial.utterances:
                bucket[1] += 1
                if utt.global_index in sites:
                    bucket[0] += 1

    if coverage_points:
        trend = _safe_spearman(
            [float(r) for r, _ in coverage_points], [c for _, c in coverage_points]
        )
    else:
        trend = _degenerate(0, "rho")

    if first_counts and len(first_counts) >= 2:
        try:
            first_last = _stat_dict(t_test(first_counts, last_counts, paired=True), "t")
        except DegenerateDataError:
            first_last = _degenerate(len(first_counts), "t")
    else:
        first_last = _degenerate(len(first_counts), "t")

    mean_by_round: dict[str, float] = {}
    points_by_round: dict[int, list[float]] = {}
    for round_, fraction in coverage_points:
        points_by_round.setdefault(round_, []).append(fraction)
    for round_ in sorted(points_by_round):
        mean_by_round[str(round_)] = _mean(points_by_round[round_])

    stats = {
        "n_dyads": len(per_dialogue),
        "dyad_fraction_all_fribbles": (
            complete_dyads / len(per_dialogue) if per_dialogue else None
        ),
        "mean_dialogue_coverage": _mean(dialogue_coverages),
        "mean_round_coverage": mean_by_round,
        "pooled_round_coverage": {
            str(r): (pooled[r][0] / pooled[r][1]) if pooled[r][1] else None
            for r in sorted(pooled)
        },
        "coverage_trend": trend,
        "mean_types_per_fribble": _mean([float(c) for c in type_counts]),
        "first_round_mean_types": _mean(first_counts),
        "last_round_mean_types": _mean(last_counts),
        "first_vs_last_types": first_last,
    }
    return rows, stats


def _namings_by_key(corpus: Corpus) -> dict[tuple[str, str, Phase], NamingRecord]:
    return {(n.speaker, n.fribble, n.phase): n for n in corpus.namings}


def analysis2(
    corpus: Corpus,
    per_dialogue: Sequence[DialogueAnalysis],
) -> tuple[list[AnalysisRow], dict]:
    """Individual names versus interactively shared construction types."""
    names = _namings_by_key(corpus)
    phases_present = {n.phase for n in corpus.namings}
    if Phase.PRE not in phases_present or Phase.POST not in phases_present:
        missing = [p.value for p in (Phase.PRE, Phase.POST) if p not in phases_present]
        return [], {"skipped": f"missing naming phase(s): {', '.join(missing)}"}

    rows: list[AnalysisRow] = []
    self_sims: list[float] = []
    overlap_fractions: dict[Phase, dict[str, list[bool]]] = {Phase.PRE: {}, Phase.POST: {}}
    recency_pairs: list[tuple[float, float]] = []
    frequency_pairs: list[tuple[float, float]] = []
    by_round_sims: dict[tuple[str, int], list[float]] = {}

    for da in per_dialogue:
        dialogue = da.dialogue
        for fribble in dialogue.fribbles():
            timeline = da.timelines.get(fribble)
            types = timeline.types if timeline else ()
            for speaker in dialogue.speakers:
                pre = names.get((speaker, fribble, Phase.PRE))
                post = names.get((speaker, fribble, Phase.POST))
                if pre is not None and post is not None:
                    sim = lexical_cosine(pre.lemmas, post.lemmas)
                    self_sims.append(sim)
                    rows.append(
                        AnalysisRow(
                            analysis="2", dyad=dialogue.dyad, fribble=fribble,
                            speaker=speaker, metric="self_similarity", value=sim,
                        )
                    )
                for phase, record in ((Phase.PRE, pre), (Phase.POST, post)):
                    if record is None:
                        continue
                    overlap = name_overlap(record, types)
                    overlap_fractions[phase].setdefault(speaker, []).append(overlap.overlaps)
                    rows.append(
                        AnalysisRow(
                            analysis="2", dyad=dialogue.dyad, fribble=fribble,
                            speaker=speaker, phase=phase.value,
                            metric="name_overlaps", value=float(overlap.overlaps),
                        )
                    )
                    rows.append(
                        AnalysisRow(
                            analysis="2", dyad=dialogue.dyad, fribble=fribble,
                            speaker=speaker, phase=phase.value,
                            metric="name_max_type_similarity", value=overlap.max_similarity,
                        )
                    )
                    if overlap.per_type:
                        rows.append(
                            AnalysisRow(
                                analysis="2", dyad=dialogue.dyad, fribble=fribble,
                                speaker=speaker, phase=phase.value,
                                metric="name_mean_type_similarity",
                                value=sum(overlap.per_type) / len(overlap.per_type),
                            )
                        )
                    for t, sim in zip(types, overlap.per_type):
                        rows.append(
                            AnalysisRow(
                                analysis="2", dyad=dialogue.dyad, fribble=fribble,
                                speaker=speaker, phase=phase.value, core=t.core,
                                metric="name_type_similarity", value=sim,
                            )
                        )
                        for round_ in sorted(t.rounds_used):
                            by_round_sims.setdefault((phase.value, round_), []).append(sim)
                            rows.append(
                                AnalysisRow(
                                    analysis="2", dyad=dialogue.dyad, fribble=fribble,
                                    round=round_, speaker=speaker, phase=phase.value,
                                    core=t.core, metric="name_type_similarity_by_round",
                                    value=sim,
                                )
                            )
                        if phase is Phase.POST:
                            usage = sum(
                                sum(1 for o in m.occurrences if o.speaker == speaker)
                                for m in t.members
                            )
                            rows.append(
                                AnalysisRow(
                                    analysis="2", dyad=dialogue.dyad, fribble=fribble,
                                    speaker=speaker, core=t.core,
                                    metric="participant_usage_count", value=float(usage),
                                )
                            )
                            recency_pairs.append((float(t.last_round), sim))
                            frequency_pairs.append((float(usage), sim))

    def _overlap_stats(phase: Phase) -> dict:
        fractions = [
            sum(flags) / len(flags)
            for flags in overlap_fractions[phase].values()
            if flags
        ]
        return {
            "mean": _mean(fractions),
            "std": _std(fractions),
            "n_speakers": len(fractions),
        }

    stats = {
        "mean_self_similarity": _mean(self_sims),
        "std_self_similarity": _std(self_sims),
        "overlap_rate_pre": _overlap_stats(Phase.PRE),
        "overlap_rate_post": _overlap_stats(Phase.POST),
        "recency_effect": _safe_spearman(
            [x for x, _ in recency_pairs], [y for _, y in recency_pairs]
        ),
        "frequency_effect": _safe_spearman(
            [x for x, _ in frequency_pairs], [y for _, y in frequency_pairs]
        ),
        "mean_similarity_by_round": {
            f"{phase}:{round_}": _mean(values)
            for (phase, round_), values in sorted(by_round_sims.items())
        },
    }
    return rows, stats


def analysis3(
    corpus: Corpus,
    per_dialogue: Sequence[DialogueAnalysis],
) -> tuple[list[AnalysisRow], dict]:
    """Naming convergence versus construction-type dynamics."""
    names = _namings_by_key(corpus)
    rows: list[AnalysisRow] = []
    records: list[ConvergenceRecord] = []
    type_count_pairs: list[tuple[float, float]] = []
    freq_pairs: list[tuple[float, float]] = []
    rec_pairs: list[tuple[float, float]] = []
    skipped = 0
    excluded = 0

    for da in per_dialogue:
        dialogue = da.dialogue
        speaker_a, speaker_b = dialogue.speakers
        for fribble in dialogue.fribbles():
            pre_a = names.get((speaker_a, fribble, Phase.PRE))
            pre_b = names.get((speaker_b, fribble, Phase.PRE))
            post_a = names.get((speaker_a, fribble, Phase.POST))
            post_b = names.get((speaker_b, fribble, Phase.POST))
            if None in (pre_a, pre_b, post_a, post_b):
                skipped += 1
                continue
            record = convergence(pre_a, pre_b, post_a, post_b, dyad=dialogue.dyad)
            records.append(record)
            for metric, value in (
                ("s_pre", record.s_pre),
                ("s_post", record.s_post),
                ("delta", record.delta),
            ):
                rows.append(
                    AnalysisRow(
                        analysis="3", dyad=dialogue.dyad, fribble=fribble,
                        metric=metric, value=value,
                    )
                )

            timeline = da.timelines.get(fribble)
            types = timeline.types if timeline else ()
            n_types = float(len(types))
            rows.append(
                AnalysisRow(
                    analysis="3", dyad=dialogue.dyad, fribble=fribble,
                    metric="convergence_n_types", value=n_types,
                )
            )
            type_count_pairs.append((n_types, record.s_post))

            dominant = dominant_type(timeline) if timeline else None
            if dominant is None:
                excluded += 1
                rows.append(
                    AnalysisRow(
                        analysis="3", dyad=dialogue.dyad, fribble=fribble,
                        metric="dominant_excluded", value=1.0,
                    )
                )
                continue
            frequency = float(len(dominant.rounds_used))
            recency = float(dominant.last_round)
            rows.append(
                AnalysisRow(
                    analysis="3", dyad=dialogue.dyad, fribble=fribble,
                    core=dominant.core, metric="dominant_frequency", value=frequency,
                )
            )
            rows.append(
                AnalysisRow(
                    analysis="3", dyad=dialogue.dyad, fribble=fribble,
                    core=dominant.core, metric="dominant_recency", value=recency,
                )
            )
            freq_pairs.append((frequency, record.s_post))
            rec_pairs.append((recency, record.s_post))

    stats = {
        "n_cells": len(records),
        "n_skipped_missing_names": skipped,
        "n_excluded_no_types": excluded,
        "mean_s_pre": _mean([r.s_pre for r in records]),
        "mean_s_post": _mean([r.s_post for r in records]),
        "mean_delta": _mean([r.delta for r in records]),
        "types_vs_s_post": _safe_spearman(
            [x for x, _ in type_count_pairs], [y for _, y in type_count_pairs]
        ),
        "dominant_frequency_vs_s_post": _safe_spearman(
            [x for x, _ in freq_pairs], [y for _, y in freq_pairs]
        ),
        "dominant_recency_vs_s_post": _safe_spearman(
            [x for x, _ in rec_pairs], [y for _, y in rec_pairs]
        ),
    }
    return rows, stats
