"""Raw transcript to corpus bundle conversion.

Raw input is line-delimited JSON with one record per utterance: ``dyad``,
``speaker``, ``round``, ``fribble``, ``director`` and ``text``.  Output is
a corpus bundle directory (``corpus.manifest`` + ``transcripts.ndj``) in
the format the analysis toolkit consumes; the engine name and version are
pinned in the manifest so annotation stays reproducible.
"""
from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

FORMAT_VERSION = "1"

# words, including internal apostrophes/hyphens; punctuation is dropped
# (the bundle tagset has no punctuation slot), digit runs become NUM
_TOKEN_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*|\d+", re.UNICODE)


class RawTranscriptError(ValueError):
    """Raised for malformed raw records; carries file/line context."""

    def __init__(self, message: str, *, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(slots=True)
class RawRecord:
    dyad: str
    speaker: str
    round: int
    fribble: str
    director: str
    text: str


def parse_raw(path: str | Path) -> list[RawRecord]:
    records = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RawTranscriptError(f"invalid JSON: {exc}", line=lineno)
        for field in ("dyad", "speaker", "round", "fribble", "director", "text"):
            if field not in obj:
                raise RawTranscriptError(f"missing field {field!r}", line=lineno)
        if not isinstance(obj["round"], int):
            raise RawTranscriptError("round must be an integer", line=lineno)
        records.append(
            RawRecord(
                dyad=str(obj["dyad"]),
                speaker=str(obj["speaker"]),
                round=obj["round"],
                fribble=str(obj["fribble"]),
                director=str(obj["director"]),
                text=str(obj["text"]),
            )
        )
    if not records:
        raise RawTranscriptError("no records found")
    return records


def load_disfluency_lexicon(path: str | Path) -> frozenset[str]:
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            entries.add(unicodedata.normalize("NFC", word))
    return frozenset(entries)


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(unicodedata.normalize("NFC", text))


def annotate_records(
    records: list[RawRecord],
    engine,
    disfluencies: frozenset[str],
) -> dict:
    """Annotate raw records into manifest + transcript record dicts."""
    dyad_speakers: dict[str, set[str]] = {}
    for record in records:
        dyad_speakers.setdefault(record.dyad, set()).update(
            (record.speaker, record.director)
        )
    for dyad, speakers in sorted(dyad_speakers.items()):
        if len(speakers) != 2:
            raise RawTranscriptError(
                f"dyad {dyad!r} involves {len(speakers)} speakers, expected exactly 2"
            )

    transcript_rows = []
    for dyad in sorted(dyad_speakers):
        own = [r for r in records if r.dyad == dyad]
        own.sort(key=lambda r: r.round)  # stable: keeps input order within a round
        for gidx, record in enumerate(own):
            tokens = []
            for surface in tokenize(record.text):
                lemma, pos = engine.analyze(surface)
                disfluent = surface.lower() in disfluencies or lemma in disfluencies
                tokens.append([surface, lemma, pos, disfluent])
            if not tokens:
                raise RawTranscriptError(
                    f"utterance without tokens for dyad {dyad!r}: {record.text!r}"
                )
            transcript_rows.append(
                {
                    "dyad": record.dyad,
                    "round": record.round,
                    "fribble": record.fribble,
                    "director": record.director,
                    "speaker": record.speaker,
                    "global_index": gidx,
                    "tokens": tokens,
                }
            )

    manifest = {
        "format_version": FORMAT_VERSION,
        "rounds": max(r.round for r in records),
        "dyads": [
            {
                "dyad": dyad,
                "speakers": sorted(speakers),
                "rounds": max(r.round for r in records if r.dyad == dyad),
            }
            for dyad, speakers in sorted(dyad_speakers.items())
        ],
        "annotation": {"engine": engine.name, "version": engine.version},
    }
    return {"manifest": manifest, "transcripts": transcript_rows}


def write_bundle(annotated: dict, out: str | Path) -> Path:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "corpus.manifest").write_text(
        json.dumps(annotated["manifest"], sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    rows = sorted(
        annotated["transcripts"], key=lambda r: (r["dyad"], r["round"], r["global_index"])
    )
    (out / "transcripts.ndj").write_text(
        "".join(
            json.dumps(row, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
            for row in rows
        ),
        encoding="utf-8",
    )
    return out
