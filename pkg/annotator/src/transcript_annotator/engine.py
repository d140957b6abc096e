"""Morphosyntactic annotation engines.

The built-in Dutch engine combines a bundled lexicon with reversal rules
for the most common inflections (plural -en/-s, diminutives, adjectival
-e).  It is deliberately small and fully deterministic: the engine name
and version are pinned in every bundle it produces.  A spaCy-backed
engine can be selected when the library and a language model are
installed.
"""
from __future__ import annotations

import unicodedata
from importlib import resources

VALID_POS = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "CCONJ", "SCONJ",
    "NUM", "PART", "INTJ", "AUX", "ADV_OTHER", "X",
}


class EngineUnavailableError(RuntimeError):
    """Raised when the requested engine or language model is missing."""


def _normalize(lemma: str) -> str:
    return unicodedata.normalize("NFC", lemma.lower())


def _load_lexicon() -> dict[str, tuple[str, str]]:
    lexicon: dict[str, tuple[str, str]] = {}
    text = resources.files("transcript_annotator.data").joinpath("nl_lexicon.tsv").read_text(
        encoding="utf-8"
    )
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        surface, lemma, pos = line.split("\t")
        lexicon[_normalize(surface)] = (_normalize(lemma), pos)
    return lexicon


def _undouble(stem: str) -> str:
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
        return stem[:-1]
    return stem


def _devoice(stem: str) -> str:
    if stem.endswith("v"):
        return stem[:-1] + "f"
    if stem.endswith("z"):
        return stem[:-1] + "s"
    return stem


class BuiltinDutchEngine:
    """Lexicon plus suffix heuristics; unknown words default to NOUN."""

    name = "builtin-nl"
    version = "1"

    def __init__(self) -> None:
        self._lexicon = _load_lexicon()

    def analyze(self, surface: str) -> tuple[str, str]:
        word = _normalize(surface)
        hit = self._lexicon.get(word)
        if hit is not None:
            return hit

        for suffix in ("etje", "pje", "tje", "je"):
            if word.endswith(suffix) and len(word) > len(suffix) + 2:
                return _undouble(word[: -len(suffix)]), "NOUN"
        if word.endswith("en") and len(word) > 4:
            return _devoice(_undouble(word[:-2])), "NOUN"
        if word.endswith("'s") and len(word) > 3:
            return word[:-2], "NOUN"
        if word.endswith("s") and len(word) > 4:
            return word[:-1], "NOUN"
        for suffix in ("ige", "ig", "lijke", "lijk", "ische", "isch"):
            if word.endswith(suffix) and len(word) > len(suffix) + 1:
                lemma = word[:-1] if suffix in ("ige", "lijke", "ische") else word
                return lemma, "ADJ"
        return word, "NOUN"


#: spaCy's coarse tagset -> the bundle tagset (there is no PUNCT/SYM slot:
#: such tokens are dropped at tokenization, this map is a safety net).
SPACY_POS_MAP = {
    "NOUN": "NOUN",
    "PROPN": "NOUN",
    "VERB": "VERB",
    "ADJ": "ADJ",
    "ADV": "ADV",
    "PRON": "PRON",
    "DET": "DET",
    "ADP": "ADP",
    "CCONJ": "CCONJ",
    "CONJ": "CCONJ",
    "SCONJ": "SCONJ",
    "NUM": "NUM",
    "PART": "PART",
    "INTJ": "INTJ",
    "AUX": "AUX",
    "PUNCT": "X",
    "SYM": "X",
    "SPACE": "X",
    "X": "X",
}


def map_spacy_pos(tag: str) -> tuple[str, bool]:
    """Map a spaCy coarse tag; flags whether it was unmappable."""
    if tag in SPACY_POS_MAP:
        return SPACY_POS_MAP[tag], False
    return "X", True


class SpacyEngine:
    """Optional spaCy-backed engine; requires an installed language model."""

    def __init__(self, language: str) -> None:
        try:
            import spacy
        except ImportError as exc:
            raise EngineUnavailableError(
                "spaCy is not installed; install the 'spacy' extra or use the builtin engine"
            ) from exc
        model = f"{language}_core_news_sm"
        try:
            self._nlp = spacy.load(model, disable=("parser", "ner"))
        except OSError as exc:
            raise EngineUnavailableError(f"missing language model {model!r}") from exc
        self.name = f"spacy:{model}"
        self.version = spacy.__version__
        self.unmapped: set[str] = set()

    def analyze(self, surface: str) -> tuple[str, str]:
        doc = self._nlp(surface)
        if not len(doc):
            return _normalize(surface), "X"
        token = doc[0]
        pos, unmapped = map_spacy_pos(token.pos_)
        if unmapped:
            self.unmapped.add(token.pos_)
        return _normalize(token.lemma_), pos


def make_engine(kind: str, language: str):
    if language != "nl" and kind == "builtin":
        raise EngineUnavailableError(
            f"builtin engine only supports language 'nl', got {language!r}"
        )
    if kind == "builtin":
        return BuiltinDutchEngine()
    if kind == "spacy":
        return SpacyEngine(language)
    raise EngineUnavailableError(f"unknown engine {kind!r}")
