"""In-memory data model for referential-communication dialogue corpora.

A corpus holds two-person dialogues from a repeated director-matcher game
(one trial per referent per round) plus the names each participant gave to
each referent before and after the interaction.  All types are immutable
after construction and safe to share across workers.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class POS(str, Enum):
    """Coarse part-of-speech tagset (Universal Dependencies style)."""

    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    DET = "DET"
    ADP = "ADP"
    CCONJ = "CCONJ"
    SCONJ = "SCONJ"
    NUM = "NUM"
    PART = "PART"
    INTJ = "INTJ"
    AUX = "AUX"
    ADV_OTHER = "ADV_OTHER"
    X = "X"


#: Tags that count as content words; everything else is a function word.
CONTENT_POS = frozenset({POS.NOUN, POS.VERB, POS.ADJ, POS.ADV})


class Phase(str, Enum):
    """Naming-task phase relative to the interactive game."""

    PRE = "pre"
    POST = "post"


@dataclass(frozen=True, slots=True)
class Token:
    """One transcribed word with its lemma, tag and disfluency flag."""

    surface: str
    lemma: str
    pos: POS
    disfluency: bool = False


@dataclass(frozen=True, slots=True)
class Utterance:
    """One speaker turn; ``global_index`` orders utterances within a dialogue."""

    speaker: str
    tokens: tuple[Token, ...]
    global_index: int


@dataclass(frozen=True, slots=True)
class Trial:
    """One director/matcher episode for one referent in one round."""

    fribble: str
    round: int
    director: str
    matcher: str
    utterances: tuple[Utterance, ...]


@dataclass(frozen=True, slots=True)
class Dialogue:
    """All trials of one dyad, played over a fixed number of rounds."""

    dyad: str
    speakers: tuple[str, str]
    rounds: int
    trials: tuple[Trial, ...]

    def fribbles(self) -> list[str]:
        """Referent ids appearing in this dialogue, in first-trial order."""
        seen: dict[str, None] = {}
        for trial in self.trials:
            seen.setdefault(trial.fribble, None)
        return list(seen)

    def trials_by_fribble(self) -> dict[str, list[Trial]]:
        """Trials grouped per referent, each group ordered by round."""
        groups: dict[str, list[Trial]] = {}
        for trial in self.trials:
            groups.setdefault(trial.fribble, []).append(trial)
        for trials in groups.values():
            trials.sort(key=lambda t: t.round)
        return groups


@dataclass(frozen=True, slots=True)
class NamingRecord:
    """Name (as a set of content lemmas) one speaker gave to one referent."""

    speaker: str
    fribble: str
    phase: Phase
    lemmas: frozenset[str]


@dataclass(frozen=True, slots=True)
class Corpus:
    """A set of dialogues plus the individual naming records."""

    dialogues: tuple[Dialogue, ...]
    namings: tuple[NamingRecord, ...] = ()

    def dialogue(self, dyad: str) -> Dialogue:
        for d in self.dialogues:
            if d.dyad == dyad:
                return d
        raise KeyError(dyad)


def lemma_stream(utterance: Utterance) -> list[str]:
    """All lemmas of the utterance in order, disfluent tokens removed."""
    return [t.lemma for t in utterance.tokens if not t.disfluency]


def content_lemmas(utterance: Utterance) -> list[str]:
    """Lemmas of non-disfluent content tokens (NOUN/VERB/ADJ/ADV), in order."""
    return [
        t.lemma
        for t in utterance.tokens
        if t.pos in CONTENT_POS and not t.disfluency
    ]


@dataclass(frozen=True, slots=True)
class Violation:
    """One invariant violation found by :func:`validate`."""

    code: str
    location: str
    message: str


def _lemma_ok(lemma: str) -> bool:
    return (
        bool(lemma)
        and lemma == lemma.lower()
        and lemma == unicodedata.normalize("NFC", lemma)
    )


def _check_tokens(tokens: Iterable[Token], where: str) -> Iterator[Violation]:
    for i, token in enumerate(tokens):
        if not _lemma_ok(token.lemma):
            yield Violation(
                "bad-lemma",
                f"{where} token {i}",
                f"lemma {token.lemma!r} must be non-empty, lowercase and NFC-normalized",
            )


def _check_dialogue(dialogue: Dialogue) -> Iterator[Violation]:
    where = f"dialogue {dialogue.dyad}"
    speakers = set(dialogue.speakers)
    if len(speakers) != 2:
        yield Violation("bad-speakers", where, "a dialogue needs exactly two distinct speakers")
    if dialogue.rounds < 1:
        yield Violation("bad-rounds", where, f"rounds must be >= 1, got {dialogue.rounds}")

    seen_cells: set[tuple[str, int]] = set()
    last_index: int | None = None
    for trial in dialogue.trials:
        twhere = f"{where} trial ({trial.fribble}, round {trial.round})"
        if trial.round < 1 or trial.round > dialogue.rounds:
            yield Violation("bad-round", twhere, f"round {trial.round} outside 1..{dialogue.rounds}")
        if trial.director == trial.matcher:
            yield Violation("role-clash", twhere, "director and matcher must differ")
        if {trial.director, trial.matcher} != speakers:
            yield Violation("foreign-roles", twhere, "director/matcher must be the dyad's two speakers")
        cell = (trial.fribble, trial.round)
        if cell in seen_cells:
            yield Violation("duplicate-trial", twhere, "referent/round pair occurs twice")
        seen_cells.add(cell)
        if not trial.utterances:
            yield Violation("empty-trial", twhere, "trial has no utterances")
        for utt in trial.utterances:
            uwhere = f"{twhere} utterance {utt.global_index}"
            if utt.speaker not in speakers:
                yield Violation("foreign-speaker", uwhere, f"speaker {utt.speaker!r} not in dyad")
            if not utt.tokens:
                yield Violation("empty-utterance", uwhere, "utterance has no tokens")
            if last_index is not None and utt.global_index <= last_index:
                yield Violation(
                    "bad-order", uwhere,
                    "global_index must be strictly increasing within a dialogue",
                )
            last_index = utt.global_index
            yield from _check_tokens(utt.tokens, uwhere)


def validate(corpus: Corpus) -> list[Violation]:
    """Check every corpus invariant; violations are data, never exceptions."""
    violations: list[Violation] = []

    dyads_seen: set[str] = set()
    speaker_home: dict[str, str] = {}
    for dialogue in corpus.dialogues:
        if dialogue.dyad in dyads_seen:
            violations.append(
                Violation("duplicate-dyad", f"dialogue {dialogue.dyad}", "dyad id occurs twice")
            )
        dyads_seen.add(dialogue.dyad)
        for speaker in set(dialogue.speakers):
            if speaker in speaker_home and speaker_home[speaker] != dialogue.dyad:
                violations.append(
                    Violation(
                        "shared-speaker",
                        f"dialogue {dialogue.dyad}",
                        f"speaker {speaker!r} also appears in dialogue {speaker_home[speaker]}; "
                        "speaker ids must be unique across dyads",
                    )
                )
            speaker_home.setdefault(speaker, dialogue.dyad)
        violations.extend(_check_dialogue(dialogue))

    fribbles_of: dict[str, set[str]] = {}
    for dialogue in corpus.dialogues:
        for speaker in dialogue.speakers:
            fribbles_of.setdefault(speaker, set()).update(
                t.fribble for t in dialogue.trials
            )

    seen_namings: set[tuple[str, str, Phase]] = set()
    for naming in corpus.namings:
        nwhere = f"naming ({naming.speaker}, {naming.fribble}, {naming.phase.value})"
        if not naming.lemmas:
            violations.append(Violation("empty-name", nwhere, "name has no lemmas"))
        for lemma in naming.lemmas:
            if not _lemma_ok(lemma):
                violations.append(
                    Violation("bad-lemma", nwhere, f"lemma {lemma!r} is not normalized")
                )
        if naming.speaker not in fribbles_of:
            violations.append(
                Violation("unknown-speaker", nwhere, "speaker appears in no dialogue")
            )
        elif naming.fribble not in fribbles_of[naming.speaker]:
            violations.append(
                Violation("unknown-fribble", nwhere, "referent never described by this speaker's dyad")
            )
        key = (naming.speaker, naming.fribble, naming.phase)
        if key in seen_namings:
            violations.append(Violation("duplicate-naming", nwhere, "naming record occurs twice"))
        seen_namings.add(key)

    return violations
