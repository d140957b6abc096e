"""Mining of shared lemmatised constructions.

For each dyad and referent, all trials across rounds are combined and every
contiguous lemma sequence used by *both* speakers is collected.  Matching
runs over the full lemma stream (function words included, disfluencies
removed) and never crosses an utterance boundary.  Two filters then drop
sequences consisting exclusively of function words and sequences that the
dyad used for more than one referent, which tend to be generic phrases.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import CONTENT_POS, Dialogue, Trial, Utterance, lemma_stream

Lemmas = tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Occurrence:
    """One match site of a construction inside a specific utterance."""

    speaker: str
    round: int
    utterance_index: int
    token_offset: int


@dataclass(frozen=True, slots=True)
class SharedConstruction:
    """A lemma sequence used by both speakers for one referent."""

    lemmas: Lemmas
    fribble: str
    occurrences: tuple[Occurrence, ...]
    is_maximal: bool
    content_lemmas: frozenset[str]

    def first_site(self) -> tuple[int, int]:
        first = self.occurrences[0]
        return (first.utterance_index, first.token_offset)

    def rounds_used(self) -> frozenset[int]:
        return frozenset(o.round for o in self.occurrences)


def _ngrams(stream: Sequence[str]) -> Iterable[tuple[int, Lemmas]]:
    n = len(stream)
    for start in range(n):
        for end in range(start + 1, n + 1):
            yield start, tuple(stream[start:end])


def _ngram_set(utterances: Iterable[Utterance]) -> set[Lemmas]:
    grams: set[Lemmas] = set()
    for utt in utterances:
        stream = lemma_stream(utt)
        for _, gram in _ngrams(stream):
            grams.add(gram)
    return grams


def _mark_maximal(shared: set[Lemmas]) -> dict[Lemmas, bool]:
    # A sequence is maximal iff no shared sequence extends it by one lemma
    # on either side; with downward closure this equals "not a proper
    # contiguous subsequence of another shared sequence".
    extendable: set[Lemmas] = set()
    for seq in shared:
        if len(seq) >= 2:
            extendable.add(seq[1:])
            extendable.add(seq[:-1])
    return {seq: seq not in extendable for seq in sorted(shared)}


def cross_speaker_sequences(
    utterances_a: Sequence[Utterance],
    utterances_b: Sequence[Utterance],
) -> dict[Lemmas, bool]:
    """Every contiguous lemma sequence used by both sides.

    Returns a mapping from each shared sequence to its maximality flag.
    """
    shared = _ngram_set(utterances_a) & _ngram_set(utterances_b)
    return _mark_maximal(shared)


def filter_function_word_only(
    seqs: Iterable[Lemmas],
    content_lemmas: frozenset[str] | set[str],
) -> list[Lemmas]:
    """Drop sequences with no content lemma, preserving input order.

    ``content_lemmas`` is the evidence set for the surrounding trials: a
    lemma counts as content if any of its occurrences there bears a
    content POS tag.
    """
    return [seq for seq in seqs if any(lemma in content_lemmas for lemma in seq)]


def filter_multi_referent(
    per_fribble: Mapping[str, Iterable[Lemmas]],
) -> dict[str, list[Lemmas]]:
    """Drop any sequence shared under two or more referents of the dyad."""
    fribble_count: dict[Lemmas, int] = {}
    as_lists = {fribble: list(seqs) for fribble, seqs in per_fribble.items()}
    for seqs in as_lists.values():
        for seq in set(seqs):
            fribble_count[seq] = fribble_count.get(seq, 0) + 1
    return {
        fribble: [seq for seq in seqs if fribble_count[seq] == 1]
        for fribble, seqs in as_lists.items()
    }


def content_evidence(trials: Iterable[Trial]) -> frozenset[str]:
    """Lemmas that occur with a content POS tag anywhere in the trials."""
    evidence: set[str] = set()
    for trial in trials:
        for utt in trial.utterances:
            for token in utt.tokens:
                if token.pos in CONTENT_POS and not token.disfluency:
                    evidence.add(token.lemma)
    return frozenset(evidence)


def _collect_sites(
    trials: Iterable[Trial],
    seqs: set[Lemmas],
) -> dict[Lemmas, list[Occurrence]]:
    sites: dict[Lemmas, list[Occurrence]] = {seq: [] for seq in seqs}
    for trial in trials:
        for utt in trial.utterances:
            stream = lemma_stream(utt)
            for offset, gram in _ngrams(stream):
                if gram in sites:
                    sites[gram].append(
                        Occurrence(
                            speaker=utt.speaker,
                            round=trial.round,
                            utterance_index=utt.global_index,
                            token_offset=offset,
                        )
                    )
    for occurrences in sites.values():
        occurrences.sort(key=lambda o: (o.utterance_index, o.token_offset))
    return sites


def extract_shared_constructions(
    dialogue: Dialogue,
) -> dict[str, list[SharedConstruction]]:
    """Run the full mining pipeline for one dialogue.

    Returns surviving constructions per referent, each with every match
    site attached (overlapping matches included), ordered by first
    occurrence, then length, then lexicographically.
    """
    by_fribble = dialogue.trials_by_fribble()
    speaker_a, speaker_b = dialogue.speakers

    shared_per_fribble: dict[str, dict[Lemmas, bool]] = {}
    evidence_per_fribble: dict[str, frozenset[str]] = {}
    for fribble, trials in by_fribble.items():
        utts_a = [u for t in trials for u in t.utterances if u.speaker == speaker_a]
        utts_b = [u for t in trials for u in t.utterances if u.speaker == speaker_b]
        shared_per_fribble[fribble] = cross_speaker_sequences(utts_a, utts_b)
        evidence_per_fribble[fribble] = content_evidence(trials)

    filtered = {
        fribble: filter_function_word_only(shared.keys(), evidence_per_fribble[fribble])
        for fribble, shared in shared_per_fribble.items()
    }
    surviving = filter_multi_referent(filtered)

    result: dict[str, list[SharedConstruction]] = {}
    for fribble, seqs in surviving.items():
        sites = _collect_sites(by_fribble[fribble], set(seqs))
        evidence = evidence_per_fribble[fribble]
        maximal = shared_per_fribble[fribble]
        constructions = [
            SharedConstruction(
                lemmas=seq,
                fribble=fribble,
                occurrences=tuple(sites[seq]),
                is_maximal=maximal[seq],
                content_lemmas=frozenset(l for l in seq if l in evidence),
            )
            for seq in seqs
        ]
        constructions.sort(key=lambda c: (c.first_site(), len(c.lemmas), c.lemmas))
        result[fribble] = constructions
    return result
