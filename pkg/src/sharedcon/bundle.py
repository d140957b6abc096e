"""On-disk corpus bundle format.

A bundle is a directory (or a ``.zip`` archive) holding up to three UTF-8
files:

* ``corpus.manifest`` -- JSON object with ``format_version``, ``rounds`` and
  the ``dyads`` roster (dyad id, its two speakers, its round count).
* ``transcripts.ndj`` -- one JSON object per utterance, sorted by
  (dyad, round, global_index).
* ``namings.ndj`` -- one JSON object per naming record.

Empty corpora serialize to a manifest-only bundle; missing record files are
read as empty.  Writing is deterministic: the same corpus always produces
byte-identical files.
"""
from __future__ import annotations

import io
import json
import zipfile
from pathlib import Path
from typing import Any, Mapping

from .corpus import (
    POS,
    Corpus,
    Dialogue,
    NamingRecord,
    Phase,
    Token,
    Trial,
    Utterance,
    validate,
)

FORMAT_VERSION = "1"
MANIFEST_NAME = "corpus.manifest"
TRANSCRIPTS_NAME = "transcripts.ndj"
NAMINGS_NAME = "namings.ndj"


class BundleFormatError(Exception):
    """Raised for malformed bundles; carries a file/line locator."""

    def __init__(self, message: str, *, file: str = "", line: int | None = None):
        self.file = file
        self.line = line
        where = file
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class CorpusValidationError(Exception):
    """Raised when a parsed bundle violates corpus invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(f"{v.code} at {v.location}" for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"corpus invalid: {head}{more}")


def _read_bundle_files(path: Path) -> dict[str, str]:
    if path.is_dir():
        out = {}
        for name in (MANIFEST_NAME, TRANSCRIPTS_NAME, NAMINGS_NAME):
            file = path / name
            if file.exists():
                out[name] = file.read_text(encoding="utf-8")
        return out
    if path.is_file() and path.suffix == ".zip":
        out = {}
        with zipfile.ZipFile(path) as zf:
            for name in (MANIFEST_NAME, TRANSCRIPTS_NAME, NAMINGS_NAME):
                try:
                    out[name] = zf.read(name).decode("utf-8")
                except KeyError:
                    pass
        return out
    raise BundleFormatError(f"not a bundle directory or .zip archive: {path}")


def _require(record: Mapping[str, Any], field: str, file: str, line: int) -> Any:
    if field not in record:
        raise BundleFormatError(f"missing field {field!r}", file=file, line=line)
    return record[field]


def _parse_manifest(text: str) -> dict[str, Any]:
    try:
        manifest = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFormatError(f"manifest is not valid JSON: {exc}", file=MANIFEST_NAME)
    if not isinstance(manifest, dict):
        raise BundleFormatError("manifest must be a JSON object", file=MANIFEST_NAME)
    version = manifest.get("format_version")
    if version is None:
        raise BundleFormatError("manifest lacks format_version", file=MANIFEST_NAME)
    if version != FORMAT_VERSION:
        raise BundleFormatError(
            f"format_version {version!r} unsupported (expected {FORMAT_VERSION!r})",
            file=MANIFEST_NAME,
        )
    if "dyads" not in manifest or not isinstance(manifest["dyads"], list):
        raise BundleFormatError("manifest lacks a dyads list", file=MANIFEST_NAME)
    return manifest


def _iter_records(text: str, file: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise BundleFormatError(f"invalid JSON record: {exc}", file=file, line=lineno)
        if not isinstance(record, dict):
            raise BundleFormatError("record must be a JSON object", file=file, line=lineno)
        yield lineno, record


def _parse_token(raw: Any, file: str, line: int) -> Token:
    if not isinstance(raw, (list, tuple)) or len(raw) != 4:
        raise BundleFormatError(
            "token must be a [surface, lemma, pos, disfluency] quadruple",
            file=file, line=line,
        )
    surface, lemma, pos, disfluency = raw
    if not isinstance(surface, str) or not isinstance(lemma, str):
        raise BundleFormatError("token surface/lemma must be strings", file=file, line=line)
    try:
        tag = POS(pos)
    except ValueError:
        raise BundleFormatError(f"unknown POS tag {pos!r}", file=file, line=line)
    if not isinstance(disfluency, bool):
        raise BundleFormatError("token disfluency must be a boolean", file=file, line=line)
    return Token(surface=surface, lemma=lemma, pos=tag, disfluency=disfluency)


def parse_corpus(path: str | Path, *, check: bool = True) -> Corpus:
    """Read a bundle into a :class:`Corpus`.

    With ``check`` (the default) the parsed corpus is validated and a
    :class:`CorpusValidationError` is raised on violations; pass
    ``check=False`` to obtain the corpus for offline validation.
    """
    files = _read_bundle_files(Path(path))
    if MANIFEST_NAME not in files:
        raise BundleFormatError("bundle lacks a manifest", file=MANIFEST_NAME)
    manifest = _parse_manifest(files[MANIFEST_NAME])

    roster: dict[str, dict[str, Any]] = {}
    for entry in manifest["dyads"]:
        if not isinstance(entry, dict) or "dyad" not in entry or "speakers" not in entry:
            raise BundleFormatError("roster entries need dyad and speakers", file=MANIFEST_NAME)
        speakers = entry["speakers"]
        if not isinstance(speakers, list) or len(speakers) != 2:
            raise BundleFormatError(
                f"dyad {entry['dyad']!r} must list exactly two speakers", file=MANIFEST_NAME
            )
        roster[str(entry["dyad"])] = entry

    # (dyad, fribble, round) -> {director, utterances}
    trials: dict[tuple[str, str, int], dict[str, Any]] = {}
    for lineno, record in _iter_records(files.get(TRANSCRIPTS_NAME, ""), TRANSCRIPTS_NAME):
        dyad = str(_require(record, "dyad", TRANSCRIPTS_NAME, lineno))
        if dyad not in roster:
            raise BundleFormatError(f"dyad {dyad!r} not in manifest", file=TRANSCRIPTS_NAME, line=lineno)
        speaker = str(_require(record, "speaker", TRANSCRIPTS_NAME, lineno))
        director = str(_require(record, "director", TRANSCRIPTS_NAME, lineno))
        fribble = str(_require(record, "fribble", TRANSCRIPTS_NAME, lineno))
        round_ = _require(record, "round", TRANSCRIPTS_NAME, lineno)
        gidx = _require(record, "global_index", TRANSCRIPTS_NAME, lineno)
        if not isinstance(round_, int) or not isinstance(gidx, int):
            raise BundleFormatError("round/global_index must be integers", file=TRANSCRIPTS_NAME, line=lineno)
        tokens = _require(record, "tokens", TRANSCRIPTS_NAME, lineno)
        if not isinstance(tokens, list) or not tokens:
            raise BundleFormatError("tokens must be a non-empty list", file=TRANSCRIPTS_NAME, line=lineno)

        key = (dyad, fribble, round_)
        slot = trials.setdefault(key, {"director": director, "utterances": []})
        if slot["director"] != director:
            raise BundleFormatError(
                f"duplicate trial {key}: director restated as {director!r} "
                f"(was {slot['director']!r})",
                file=TRANSCRIPTS_NAME, line=lineno,
            )
        slot["utterances"].append(
            Utterance(
                speaker=speaker,
                tokens=tuple(_parse_token(t, TRANSCRIPTS_NAME, lineno) for t in tokens),
                global_index=gidx,
            )
        )

    namings: list[NamingRecord] = []
    for lineno, record in _iter_records(files.get(NAMINGS_NAME, ""), NAMINGS_NAME):
        phase_raw = _require(record, "phase", NAMINGS_NAME, lineno)
        try:
            phase = Phase(phase_raw)
        except ValueError:
            raise BundleFormatError(f"unknown phase {phase_raw!r}", file=NAMINGS_NAME, line=lineno)
        lemmas = _require(record, "lemmas", NAMINGS_NAME, lineno)
        if not isinstance(lemmas, list):
            raise BundleFormatError("lemmas must be a list", file=NAMINGS_NAME, line=lineno)
        namings.append(
            NamingRecord(
                speaker=str(_require(record, "speaker", NAMINGS_NAME, lineno)),
                fribble=str(_require(record, "fribble", NAMINGS_NAME, lineno)),
                phase=phase,
                lemmas=frozenset(str(l) for l in lemmas),
            )
        )

    dialogues = []
    for dyad in sorted(roster):
        entry = roster[dyad]
        speakers = tuple(str(s) for s in entry["speakers"])
        rounds = int(entry.get("rounds", manifest.get("rounds", 0)))
        own = [
            (key, slot) for key, slot in trials.items() if key[0] == dyad
        ]
        built = []
        for (d, fribble, round_), slot in own:
            utterances = tuple(sorted(slot["utterances"], key=lambda u: u.global_index))
            matcher_pool = [s for s in speakers if s != slot["director"]]
            matcher = matcher_pool[0] if matcher_pool else slot["director"]
            built.append(
                Trial(
                    fribble=fribble,
                    round=round_,
                    director=slot["director"],
                    matcher=matcher,
                    utterances=utterances,
                )
            )
        built.sort(key=lambda t: (t.round, t.utterances[0].global_index))
        dialogues.append(
            Dialogue(dyad=dyad, speakers=speakers, rounds=rounds, trials=tuple(built))
        )

    namings.sort(key=lambda n: (n.speaker, n.fribble, n.phase.value))
    corpus = Corpus(dialogues=tuple(dialogues), namings=tuple(namings))
    if check:
        violations = validate(corpus)
        if violations:
            raise CorpusValidationError(violations)
    return corpus


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _render(corpus: Corpus, manifest_extras: Mapping[str, Any] | None) -> dict[str, str]:
    manifest: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "rounds": max((d.rounds for d in corpus.dialogues), default=0),
        "dyads": [
            {"dyad": d.dyad, "speakers": list(d.speakers), "rounds": d.rounds}
            for d in sorted(corpus.dialogues, key=lambda d: d.dyad)
        ],
    }
    if manifest_extras:
        for key in manifest_extras:
            if key in manifest:
                raise ValueError(f"manifest extra {key!r} clashes with a core field")
        manifest.update(manifest_extras)
    files = {MANIFEST_NAME: json.dumps(manifest, sort_keys=True, indent=2, ensure_ascii=False) + "\n"}

    records = []
    for dialogue in corpus.dialogues:
        for trial in dialogue.trials:
            for utt in trial.utterances:
                records.append(
                    (
                        dialogue.dyad, trial.round, utt.global_index,
                        {
                            "dyad": dialogue.dyad,
                            "round": trial.round,
                            "fribble": trial.fribble,
                            "director": trial.director,
                            "speaker": utt.speaker,
                            "global_index": utt.global_index,
                            "tokens": [
                                [t.surface, t.lemma, t.pos.value, t.disfluency]
                                for t in utt.tokens
                            ],
                        },
                    )
                )
    records.sort(key=lambda r: (r[0], r[1], r[2]))
    if records:
        files[TRANSCRIPTS_NAME] = "".join(_dump(r[3]) + "\n" for r in records)

    namings = sorted(corpus.namings, key=lambda n: (n.speaker, n.fribble, n.phase.value))
    if namings:
        files[NAMINGS_NAME] = "".join(
            _dump(
                {
                    "speaker": n.speaker,
                    "fribble": n.fribble,
                    "phase": n.phase.value,
                    "lemmas": sorted(n.lemmas),
                }
            )
            + "\n"
            for n in namings
        )
    return files


def write_corpus(
    corpus: Corpus,
    path: str | Path,
    *,
    manifest_extras: Mapping[str, Any] | None = None,
) -> Path:
    """Serialize ``corpus`` to a bundle directory (or ``.zip``) at ``path``."""
    path = Path(path)
    files = _render(corpus, manifest_extras)
    if path.suffix == ".zip":
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_STORED) as zf:
            for name in sorted(files):
                info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
                zf.writestr(info, files[name])
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(buffer.getvalue())
    else:
        path.mkdir(parents=True, exist_ok=True)
        for name in (MANIFEST_NAME, TRANSCRIPTS_NAME, NAMINGS_NAME):
            target = path / name
            if name in files:
                target.write_text(files[name], encoding="utf-8")
            elif target.exists():
                target.unlink()
    return path
