"""Pseudo-pair control corpora.

A pseudo dialogue recombines speech from two real dialogues that never
interacted: for every referent and round it takes the utterances of
whoever held the director role in the first source dialogue and of
whoever held the matcher role in the second.  Any cross-speaker reuse
found in such a dialogue is stimulus-driven rather than interaction-
driven, which is exactly what the baseline is meant to isolate.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import Corpus, Dialogue, NamingRecord, Phase, Trial, Utterance


class IncompatibleSourcesError(ValueError):
    """Raised when two source dialogues do not cover the same referents."""


@dataclass(frozen=True, slots=True)
class PseudoPairPlan:
    """Seeded assignment of (director-source, matcher-source) dyads."""

    seed: int
    assignments: tuple[tuple[str, str], ...]


def plan_pseudo_pairs(dyads: list[str], seed: int) -> PseudoPairPlan:
    """Pair every dyad with a different dyad, deterministically per seed.

    Each dyad appears exactly once as director source and once as matcher
    source, and never with itself (a seeded random cyclic derangement).
    """
    if len(dyads) < 2:
        raise ValueError(f"need at least 2 dyads to build pseudo-pairs, got {len(dyads)}")
    if len(set(dyads)) != len(dyads):
        raise ValueError("dyad ids must be unique")
    rng = random.Random(f"pseudo-pairs:{seed}")
    cycle = sorted(dyads)
    rng.shuffle(cycle)
    assignments = [
        (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    ]
    assignments.sort(key=lambda pair: pair[0])
    return PseudoPairPlan(seed=seed, assignments=tuple(assignments))


def pseudo_dyad_id(director_source: str, matcher_source: str) -> str:
    return f"{director_source}+{matcher_source}"


def _role_speaker_id(source_dyad: str, role: str) -> str:
    return f"{source_dyad}:{role}"


def materialize_pseudo_dialogue(
    entry: tuple[str, str],
    corpus: Corpus,
) -> tuple[Dialogue, list[NamingRecord]]:
    """Build the pseudo dialogue for one plan entry.

    Utterance content is never modified, only regrouped: per trial the
    director block (source 1) precedes the matcher block (source 2), each
    in original order, with global indices reassigned.  Naming records
    for each side come from the human who held that side's role in the
    referent's earliest trial.
    """
    director_src, matcher_src = entry
    d1 = corpus.dialogue(director_src)
    d2 = corpus.dialogue(matcher_src)
    if {t.fribble for t in d1.trials} != {t.fribble for t in d2.trials}:
        raise IncompatibleSourcesError(
            f"dialogues {director_src} and {matcher_src} cover different referent sets"
        )

    dir_speaker = _role_speaker_id(director_src, "director")
    mat_speaker = _role_speaker_id(matcher_src, "matcher")
    dyad = pseudo_dyad_id(director_src, matcher_src)

    d1_trials = {(t.fribble, t.round): t for t in d1.trials}
    d2_trials = {(t.fribble, t.round): t for t in d2.trials}

    trials: list[Trial] = []
    gidx = 0
    rounds = max(d1.rounds, d2.rounds)
    for round_ in range(1, rounds + 1):
        for fribble in d1.fribbles():
            src1 = d1_trials.get((fribble, round_))
            src2 = d2_trials.get((fribble, round_))
            block: list[Utterance] = []
            if src1 is not None:
                for utt in src1.utterances:
                    if utt.speaker == src1.director:
                        block.append(
                            Utterance(speaker=dir_speaker, tokens=utt.tokens, global_index=gidx)
                        )
                        gidx += 1
            if src2 is not None:
                for utt in src2.utterances:
                    if utt.speaker == src2.matcher:
                        block.append(
                            Utterance(speaker=mat_speaker, tokens=utt.tokens, global_index=gidx)
                        )
                        gidx += 1
            if block:
                trials.append(
                    Trial(
                        fribble=fribble,
                        round=round_,
                        director=dir_speaker,
                        matcher=mat_speaker,
                        utterances=tuple(block),
                    )
                )

    dialogue = Dialogue(
        dyad=dyad,
        speakers=(dir_speaker, mat_speaker),
        rounds=rounds,
        trials=tuple(trials),
    )

    namings: list[NamingRecord] = []
    by_key = {(n.speaker, n.fribble, n.phase): n for n in corpus.namings}
    for fribble in d1.fribbles():
        reps = []
        own1 = [t for t in d1.trials if t.fribble == fribble]
        if own1:
            reps.append((min(own1, key=lambda t: t.round).director, dir_speaker))
        own2 = [t for t in d2.trials if t.fribble == fribble]
        if own2:
            reps.append((min(own2, key=lambda t: t.round).matcher, mat_speaker))
        for human, virtual in reps:
            for phase in (Phase.PRE, Phase.POST):
                source = by_key.get((human, fribble, phase))
                if source is not None:
                    namings.append(
                        NamingRecord(
                            speaker=virtual,
                            fribble=fribble,
                            phase=phase,
                            lemmas=source.lemmas,
                        )
                    )
    return dialogue, namings


def build_pseudo_corpus(corpus: Corpus, seed: int) -> Corpus:
    """Materialize the full pseudo-pair control corpus for ``corpus``."""
    plan = plan_pseudo_pairs([d.dyad for d in corpus.dialogues], seed)
    dialogues = []
    namings: list[NamingRecord] = []
    for entry in plan.assignments:
        dialogue, own_namings = materialize_pseudo_dialogue(entry, corpus)
        dialogues.append(dialogue)
        namings.extend(own_namings)
    dialogues.sort(key=lambda d: d.dyad)
    namings.sort(key=lambda n: (n.speaker, n.fribble, n.phase.value))
    return Corpus(dialogues=tuple(dialogues), namings=tuple(namings))
