"""Synthetic referential-game corpora with known ground truth.

Each (dyad, referent) cell plants a set of construction cores that both
speakers embed in their utterances with a per-round reuse probability; a
prune schedule controls how many cores survive each round.  Padding comes
from three vocabularies with controlled sharing:

* function words -- shared by everyone, removed by the function-word filter;
* stimulus lemmas -- one pool per referent, split disjointly between the two
  speakers of a dyad (so real pairs never share them) but overlapping across
  dyads (so pseudo-pairs do, at a round-constant rate);
* private padding -- unique per (dyad, speaker, referent), never shared.

Post-interaction names copy a surviving core (sampled proportionally to the
speaker's own usage) with a configurable adoption probability; otherwise
names are drawn from a private naming vocabulary, as all pre-interaction
names are.  The generator is deterministic per seed, with per-dyad derived
sub-seeds.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import POS, Corpus, Dialogue, NamingRecord, Phase, Token, Trial, Utterance

_FUNCTION_WORDS: tuple[tuple[str, POS], ...] = (
    ("de", POS.DET),
    ("het", POS.DET),
    ("een", POS.DET),
    ("dat", POS.DET),
    ("die", POS.DET),
    ("en", POS.CCONJ),
    ("of", POS.CCONJ),
    ("op", POS.ADP),
    ("in", POS.ADP),
    ("van", POS.ADP),
    ("met", POS.ADP),
    ("aan", POS.ADP),
    ("ja", POS.INTJ),
    ("nou", POS.INTJ),
    ("niet", POS.PART),
    ("wel", POS.ADV_OTHER),
)

_CONTENT_POS_CYCLE = (POS.NOUN, POS.ADJ, POS.VERB, POS.ADV)


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    """Knobs for the synthetic corpus generator."""

    dyads: int = 66
    fribbles: int = 16
    rounds: int = 6
    content_vocab: int = 8          # stimulus pool size per referent
    function_vocab: int = 12
    reuse_probability: tuple[float, ...] = (0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
    type_prune_schedule: tuple[int, ...] = (3, 3, 3, 3, 3, 3)
    name_adoption_probability: float = 0.6
    seed: int = 0
    stimulus_probability: float = 0.25
    utterances_per_speaker: int = 2
    utterance_length: tuple[int, int] = (4, 9)
    disfluency_probability: float = 0.1
    private_vocab: int = 6          # padding pool size per (dyad, speaker, referent)
    cores_jitter: int = 0           # planted cores drawn from [K - jitter, K]
    distractor_overlap: bool = False
    name_length: tuple[int, int] = (1, 3)

    def check(self) -> list[str]:
        problems = []
        if self.dyads < 1:
            problems.append("dyads must be >= 1")
        if self.fribbles < 1:
            problems.append("fribbles must be >= 1")
        if self.rounds < 1:
            problems.append("rounds must be >= 1")
        if len(self.reuse_probability) != self.rounds:
            problems.append("reuse_probability must have one entry per round")
        if len(self.type_prune_schedule) != self.rounds:
            problems.append("type_prune_schedule must have one entry per round")
        for name, probs in (
            ("reuse_probability", self.reuse_probability),
            ("stimulus_probability", (self.stimulus_probability,)),
            ("name_adoption_probability", (self.name_adoption_probability,)),
            ("disfluency_probability", (self.disfluency_probability,)),
        ):
            if any(not 0.0 <= p <= 1.0 for p in probs):
                problems.append(f"{name} entries must lie in [0, 1]")
        if any(k < 1 for k in self.type_prune_schedule):
            problems.append("type_prune_schedule entries must be >= 1")
        if self.cores_jitter < 0:
            problems.append("cores_jitter must be >= 0")
        if self.content_vocab < 2:
            problems.append("content_vocab must be >= 2 (it is split between speakers)")
        if self.function_vocab < 1:
            problems.append("function_vocab must be >= 1")
        if self.utterances_per_speaker < 1:
            problems.append("utterances_per_speaker must be >= 1")
        if not 1 <= self.utterance_length[0] <= self.utterance_length[1]:
            problems.append("utterance_length must be a non-empty (min, max) range")
        if not 1 <= self.name_length[0] <= self.name_length[1]:
            problems.append("name_length must be a non-empty (min, max) range")
        return problems


@dataclass(slots=True)
class GroundTruthCell:
    """Generator bookkeeping for one (dyad, referent) cell."""

    dyad: str
    fribble: str
    cores: tuple[str, ...]
    survivors_by_round: tuple[tuple[str, ...], ...]
    expected_dominant: str
    usage: dict[str, dict[str, int]] = field(default_factory=dict)
    adopted: dict[str, str | None] = field(default_factory=dict)


def _content_token(lemma: str, index: int) -> Token:
    return Token(surface=lemma, lemma=lemma, pos=_CONTENT_POS_CYCLE[index % 4])


def _function_pool(config: GeneratorConfig) -> list[Token]:
    pool = [
        Token(surface=w, lemma=w, pos=pos)
        for w, pos in _FUNCTION_WORDS[: config.function_vocab]
    ]
    for i in range(len(pool), config.function_vocab):
        pool.append(Token(surface=f"fw{i}", lemma=f"fw{i}", pos=POS.DET))
    return pool


def generate(config: GeneratorConfig) -> tuple[Corpus, list[GroundTruthCell]]:
    """Build a synthetic corpus plus its ground truth."""
    problems = config.check()
    if problems:
        raise ValueError("invalid generator config: " + "; ".join(problems))

    function_pool = _function_pool(config)
    generic_pool = [f"generiek{i}" for i in range(4)]  # cross-referent, both speakers
    k_max = max(config.type_prune_schedule)

    dialogues = []
    namings: list[NamingRecord] = []
    cells: list[GroundTruthCell] = []

    for d in range(config.dyads):
        rng = random.Random(f"synth:{config.seed}:dyad:{d}")
        dyad = f"dyad{d:03d}"
        speakers = (f"{dyad}a", f"{dyad}b")

        # per-referent vocabularies
        stim_half: dict[tuple[str, str], list[str]] = {}
        private: dict[tuple[str, str], list[str]] = {}
        cores_of: dict[str, list[str]] = {}
        survivors_of: dict[str, list[tuple[str, ...]]] = {}
        usage: dict[str, dict[str, dict[str, int]]] = {}

        fribbles = [f"f{i:02d}" for i in range(config.fribbles)]
        for fi, fribble in enumerate(fribbles):
            stimulus_pool = [f"vorm{fi:02d}n{i}" for i in range(config.content_vocab)]
            rng.shuffle(stimulus_pool)
            half = len(stimulus_pool) // 2
            stim_half[(speakers[0], fribble)] = stimulus_pool[:half]
            stim_half[(speakers[1], fribble)] = stimulus_pool[half:]
            for s in speakers:
                private[(s, fribble)] = [
                    f"vul{d:03d}{s[-1]}f{fi:02d}n{i}" for i in range(config.private_vocab)
                ]
            k_cell = k_max if config.cores_jitter == 0 else rng.randint(
                max(1, k_max - config.cores_jitter), k_max
            )
            cores_of[fribble] = [f"kern{fi:02d}d{d:03d}n{i}" for i in range(k_cell)]
            survivors_of[fribble] = [
                tuple(cores_of[fribble][: min(config.type_prune_schedule[r], k_cell)])
                for r in range(config.rounds)
            ]
            usage[fribble] = {s: {} for s in speakers}

        # dialogue transcript
        trials = []
        gidx = 0
        for round_ in range(1, config.rounds + 1):
            reuse = config.reuse_probability[round_ - 1]
            for fi, fribble in enumerate(fribbles):
                director = speakers[(round_ + fi) % 2]
                matcher = speakers[(round_ + fi + 1) % 2]
                utterances = []
                for s in (director, matcher):
                    for _ in range(config.utterances_per_speaker):
                        tokens: list[Token] = []
                        for core in survivors_of[fribble][round_ - 1]:
                            if rng.random() < reuse:
                                tokens.append(_content_token(core, 0))
                                usage[fribble][s][core] = usage[fribble][s].get(core, 0) + 1
                        if rng.random() < config.stimulus_probability:
                            lemma = rng.choice(stim_half[(s, fribble)])
                            tokens.append(_content_token(lemma, 1))
                        if config.distractor_overlap and rng.random() < 0.2:
                            lemma = rng.choice(generic_pool)
                            tokens.append(_content_token(lemma, 0))
                        target_len = rng.randint(*config.utterance_length)
                        while len(tokens) < target_len:
                            if rng.random() < 0.5:
                                tokens.append(rng.choice(function_pool))
                            else:
                                lemma = rng.choice(private[(s, fribble)])
                                tokens.append(_content_token(lemma, rng.randrange(4)))
                        rng.shuffle(tokens)
                        if rng.random() < config.disfluency_probability:
                            tokens.insert(
                                0, Token(surface="uh", lemma="uh", pos=POS.INTJ, disfluency=True)
                            )
                        utterances.append(
                            Utterance(speaker=s, tokens=tuple(tokens), global_index=gidx)
                        )
                        gidx += 1
                trials.append(
                    Trial(
                        fribble=fribble,
                        round=round_,
                        director=director,
                        matcher=matcher,
                        utterances=tuple(utterances),
                    )
                )
        dialogues.append(
            Dialogue(dyad=dyad, speakers=speakers, rounds=config.rounds, trials=tuple(trials))
        )

        # naming task and ground truth
        for fi, fribble in enumerate(fribbles):
            adopted: dict[str, str | None] = {}
            for s in speakers:
                name_pool = [
                    f"naam{d:03d}{s[-1]}f{fi:02d}n{i}" for i in range(config.private_vocab)
                ]
                pre = rng.sample(name_pool, rng.randint(*config.name_length))
                namings.append(
                    NamingRecord(
                        speaker=s, fribble=fribble, phase=Phase.PRE, lemmas=frozenset(pre)
                    )
                )
                survivors = survivors_of[fribble][config.rounds - 1]
                if survivors and rng.random() < config.name_adoption_probability:
                    weights = [1 + usage[fribble][s].get(c, 0) for c in survivors]
                    core = rng.choices(survivors, weights=weights, k=1)[0]
                    post = [core]
                    adopted[s] = core
                else:
                    post = rng.sample(name_pool, rng.randint(*config.name_length))
                    adopted[s] = None
                namings.append(
                    NamingRecord(
                        speaker=s, fribble=fribble, phase=Phase.POST, lemmas=frozenset(post)
                    )
                )

            survivors_rounds = survivors_of[fribble]
            rounds_survived = {
                core: sum(1 for r in survivors_rounds if core in r)
                for core in cores_of[fribble]
            }
            dominant = max(
                cores_of[fribble], key=lambda c: (rounds_survived[c], -cores_of[fribble].index(c))
            )
            cells.append(
                GroundTruthCell(
                    dyad=dyad,
                    fribble=fribble,
                    cores=tuple(cores_of[fribble]),
                    survivors_by_round=tuple(survivors_rounds),
                    expected_dominant=dominant,
                    usage={s: dict(sorted(u.items())) for s, u in usage[fribble].items()},
                    adopted=adopted,
                )
            )

    namings.sort(key=lambda n: (n.speaker, n.fribble, n.phase.value))
    corpus = Corpus(dialogues=tuple(dialogues), namings=tuple(namings))
    return corpus, cells


def write_ground_truth(cells: list[GroundTruthCell], path: str | Path) -> Path:
    """Write ground-truth cells as one JSON record per line."""
    path = Path(path)
    lines = []
    for cell in cells:
        lines.append(
            json.dumps(
                {
                    "dyad": cell.dyad,
                    "fribble": cell.fribble,
                    "cores": list(cell.cores),
                    "survivors_by_round": [list(s) for s in cell.survivors_by_round],
                    "expected_dominant": cell.expected_dominant,
                    "usage": cell.usage,
                    "adopted": cell.adopted,
                },
                sort_keys=True,
                separators=(",", ":"),
                ensure_ascii=False,
            )
        )
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path
