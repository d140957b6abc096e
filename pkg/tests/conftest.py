"""Shared fixtures.

``mini_corpus`` is a hand-encoded two-referent dialogue built to exercise
every pipeline stage with hand-computable results: one referent accretes
four construction types (one of which, "boiler", is used in all six
rounds, 11 times, and ends up in both post-interaction names), the other
referent shares only the generic lemma "hoofd", which the multi-referent
filter must remove from both.
"""
from __future__ import annotations

import pytest

from sharedcon.corpus import (
    POS,
    Corpus,
    Dialogue,
    NamingRecord,
    Phase,
    Token,
    Trial,
    Utterance,
)


def tok(lemma: str, pos: str, surface: str | None = None, disfluency: bool = False) -> Token:
    return Token(
        surface=surface if surface is not None else lemma,
        lemma=lemma,
        pos=POS(pos),
        disfluency=disfluency,
    )


def utt(speaker: str, gidx: int, *tokens: Token) -> Utterance:
    return Utterance(speaker=speaker, tokens=tokens, global_index=gidx)


def name(speaker: str, fribble: str, phase: Phase, *lemmas: str) -> NamingRecord:
    return NamingRecord(speaker=speaker, fribble=fribble, phase=phase, lemmas=frozenset(lemmas))


def build_mini_dialogue() -> Dialogue:
    a, b = "a", "b"
    trials = [
        # round 1
        Trial("f08", 1, a, b, (
            utt(a, 0, tok("dat", "DET"), tok("boek", "NOUN"), tok("bovenop", "ADV")),
            utt(a, 1, tok("uh", "INTJ", disfluency=True), tok("pinocchio", "NOUN"),
                tok("met", "ADP"), tok("de", "DET"), tok("lang", "ADJ", surface="lange"),
                tok("neus", "NOUN")),
            utt(b, 2, tok("een", "DET"), tok("boiler", "NOUN")),
            utt(a, 3, tok("ja", "INTJ"), tok("de", "DET"), tok("boiler", "NOUN")),
            utt(b, 4, tok("boek", "NOUN"), tok("bovenop", "ADV"), tok("ja", "INTJ")),
        )),
        Trial("f09", 1, b, a, (
            utt(a, 5, tok("het", "DET"), tok("hoofd", "NOUN"), tok("van", "ADP"),
                tok("dat", "DET"), tok("ding", "NOUN")),
            utt(b, 6, tok("ja", "INTJ"), tok("hoofd", "NOUN")),
        )),
        # round 2
        Trial("f08", 2, b, a, (
            utt(b, 7, tok("pinocchio", "NOUN"), tok("ja", "INTJ")),
            utt(b, 8, tok("met", "ADP"), tok("dat", "DET"), tok("hoofd", "NOUN"),
                tok("erbij", "ADV")),
            utt(a, 9, tok("ja", "INTJ"), tok("dat", "DET"), tok("boek", "NOUN")),
            utt(a, 10, tok("ja", "INTJ"), tok("hoofd", "NOUN"), tok("van", "ADP"),
                tok("de", "DET"), tok("boiler", "NOUN")),
            utt(b, 11, tok("de", "DET"), tok("boiler", "NOUN"), tok("ja", "INTJ")),
        )),
        Trial("f09", 2, a, b, (
            utt(a, 12, tok("ja", "INTJ"), tok("het", "DET"), tok("hoofd", "NOUN")),
            utt(b, 13, tok("dat", "DET"), tok("hoofd", "NOUN"), tok("ja", "INTJ")),
        )),
        # round 3
        Trial("f08", 3, a, b, (
            utt(a, 14, tok("pinocchio", "NOUN"), tok("en", "CCONJ"), tok("de", "DET"),
                tok("boiler", "NOUN")),
            utt(b, 15, tok("dat", "DET"), tok("boek", "NOUN"), tok("ja", "INTJ")),
            utt(b, 16, tok("de", "DET"), tok("boiler", "NOUN"), tok("van", "ADP"),
                tok("pinocchio", "NOUN")),
        )),
        # round 4
        Trial("f08", 4, b, a, (
            utt(b, 17, tok("de", "DET"), tok("boiler", "NOUN")),
            utt(a, 18, tok("ja", "INTJ"), tok("boiler", "NOUN")),
        )),
        # round 5
        Trial("f08", 5, a, b, (
            utt(a, 19, tok("die", "DET"), tok("boiler", "NOUN"), tok("ja", "INTJ")),
            utt(b, 20, tok("boiler", "NOUN")),
        )),
        # round 6
        Trial("f08", 6, b, a, (
            utt(b, 21, tok("de", "DET"), tok("boiler", "NOUN")),
            utt(a, 22, tok("ja", "INTJ")),
        )),
    ]
    return Dialogue(dyad="d01", speakers=(a, b), rounds=6, trials=tuple(trials))


def build_mini_corpus() -> Corpus:
    namings = sorted(
        [
            name("a", "f08", Phase.PRE, "pinocchio", "wetenschap", "kunst"),
            name("a", "f08", Phase.POST, "boiler"),
            name("b", "f08", Phase.PRE, "diamant", "balk", "bovenop"),
            name("b", "f08", Phase.POST, "boiler"),
            name("a", "f09", Phase.PRE, "hoofd"),
            name("a", "f09", Phase.POST, "hoofd"),
            name("b", "f09", Phase.PRE, "ding"),
            name("b", "f09", Phase.POST, "romp"),
        ],
        key=lambda n: (n.speaker, n.fribble, n.phase.value),
    )
    return Corpus(dialogues=(build_mini_dialogue(),), namings=tuple(namings))


@pytest.fixture
def mini_dialogue() -> Dialogue:
    return build_mini_dialogue()


@pytest.fixture
def mini_corpus() -> Corpus:
    return build_mini_corpus()
