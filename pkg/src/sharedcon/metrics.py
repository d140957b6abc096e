"""Similarity and statistics kernel.

Lexical cosine similarity over binary lemma vectors, utterance coverage,
name/type overlap, naming convergence, tie-corrected Spearman rank
correlation and t tests.  All functions are pure.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import t as t_dist

from .construction_types import ConstructionType
from .corpus import Dialogue, NamingRecord
from .extraction import SharedConstruction


#: Binary lemma vector: presence/absence of each lemma, as a set.
LemmaVector = frozenset[str]


class DegenerateDataError(ValueError):
    """Raised when a statistic is undefined for the given data."""


@dataclass(frozen=True, slots=True)
class StatResult:
    """A test statistic with its two-sided p value and sample size."""

    statistic: float
    p_value: float
    n: int


@dataclass(frozen=True, slots=True)
class ConvergenceRecord:
    """Cross-speaker name similarity before and after the interaction."""

    dyad: str
    fribble: str
    s_pre: float
    s_post: float
    delta: float


@dataclass(frozen=True, slots=True)
class NameOverlap:
    """Similarity of one name against a list of construction types."""

    overlaps: bool
    max_similarity: float
    per_type: tuple[float, ...]


def lexical_cosine(a: Iterable[str], b: Iterable[str]) -> float:
    """Cosine similarity of two binary lemma vectors.

    With lemma sets this is |a & b| / (sqrt(|a|) * sqrt(|b|)): lemma
    overlap controlled for expression length, in [0, 1].
    """
    set_a, set_b = frozenset(a), frozenset(b)
    if not set_a or not set_b:
        raise DegenerateDataError("similarity is undefined for an empty lemma set")
    return len(set_a & set_b) / (math.sqrt(len(set_a)) * math.sqrt(len(set_b)))


def _coverage_counts(
    dialogue: Dialogue,
    constructions: Mapping[str, Sequence[SharedConstruction]],
) -> tuple[list[int], list[int]]:
    covered_index: dict[str, set[int]] = {}
    for fribble, constrs in constructions.items():
        covered_index[fribble] = {
            o.utterance_index for c in constrs for o in c.occurrences
        }
    totals = [0] * dialogue.rounds
    covered = [0] * dialogue.rounds
    for trial in dialogue.trials:
        sites = covered_index.get(trial.fribble, set())
        for utt in trial.utterances:
            totals[trial.round - 1] += 1
            if utt.global_index in sites:
                covered[trial.round - 1] += 1
    return covered, totals


def utterance_coverage(
    dialogue: Dialogue,
    constructions: Mapping[str, Sequence[SharedConstruction]],
) -> list[float | None]:
    """Per-round fraction of utterances containing a shared construction.

    An utterance counts as covered when it hosts at least one occurrence
    of a surviving construction of its own trial's referent.  Rounds
    without utterances yield ``None``.
    """
    covered, totals = _coverage_counts(dialogue, constructions)
    return [
        (covered[i] / totals[i]) if totals[i] else None
        for i in range(dialogue.rounds)
    ]


def dialogue_coverage(
    dialogue: Dialogue,
    constructions: Mapping[str, Sequence[SharedConstruction]],
) -> float | None:
    """Fraction of all utterances of the dialogue containing a construction."""
    covered, totals = _coverage_counts(dialogue, constructions)
    total = sum(totals)
    if total == 0:
        return None
    return sum(covered) / total


def name_overlap(
    name: NamingRecord,
    types: Sequence[ConstructionType],
) -> NameOverlap:
    """Similarity of a naming record to each construction type."""
    sims = tuple(lexical_cosine(name.lemmas, t.lemma_vector()) for t in types)
    max_sim = max(sims, default=0.0)
    return NameOverlap(overlaps=max_sim > 0, max_similarity=max_sim, per_type=sims)


def convergence(
    pre_a: NamingRecord,
    pre_b: NamingRecord,
    post_a: NamingRecord,
    post_b: NamingRecord,
    *,
    dyad: str,
) -> ConvergenceRecord:
    """Pre/post cross-speaker naming similarity for one referent."""
    fribbles = {r.fribble for r in (pre_a, pre_b, post_a, post_b)}
    if len(fribbles) != 1:
        raise ValueError(f"naming records mix referents: {sorted(fribbles)}")
    s_pre = lexical_cosine(pre_a.lemmas, pre_b.lemmas)
    s_post = lexical_cosine(post_a.lemmas, post_b.lemmas)
    return ConvergenceRecord(
        dyad=dyad,
        fribble=pre_a.fribble,
        s_pre=s_pre,
        s_post=s_post,
        delta=s_post - s_pre,
    )


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks with ties replaced by their rank average."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="mergesort")
    ranks = np.empty(len(arr), dtype=float)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _two_sided_p(t_stat: float, df: float) -> float:
    if math.isinf(t_stat):
        return 0.0
    return float(2.0 * t_dist.sf(abs(t_stat), df))


def spearman(
    x: Sequence[float],
    y: Sequence[float],
    *,
    permutations: int | None = None,
    seed: int = 0,
) -> StatResult:
    """Tie-corrected Spearman rank correlation with a two-sided p value.

    rho is the Pearson correlation of the average ranks; p comes from the
    t approximation with n-2 degrees of freedom, or from a seeded
    permutation test when ``permutations`` is given (useful for small n).
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 pairs, got {n}")
    rx, ry = average_ranks(x), average_ranks(y)
    dx, dy = rx - rx.mean(), ry - ry.mean()
    denom = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    if denom == 0.0:
        raise DegenerateDataError("rank correlation undefined for a constant vector")
    rho = float(np.dot(dx, dy)) / denom
    rho = max(-1.0, min(1.0, rho))

    if permutations is not None:
        rng = random.Random(seed)
        ry_list = list(ry)
        hits = 0
        for _ in range(permutations):
            rng.shuffle(ry_list)
            ry_perm = np.asarray(ry_list)
            dyp = ry_perm - ry_perm.mean()
            denom_p = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dyp, dyp)))
            rho_p = float(np.dot(dx, dyp)) / denom_p
            if abs(rho_p) >= abs(rho) - 1e-12:
                hits += 1
        return StatResult(statistic=rho, p_value=(hits + 1) / (permutations + 1), n=n)

    if abs(rho) >= 1.0 - 1e-15:
        return StatResult(statistic=rho, p_value=0.0, n=n)
    t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return StatResult(statistic=rho, p_value=_two_sided_p(t_stat, n - 2), n=n)


def t_test(
    a: Sequence[float],
    b: Sequence[float],
    *,
    paired: bool = False,
    permutations: int | None = None,
    seed: int = 0,
) -> StatResult:
    """Two-sided t test: paired, or Welch's for independent samples.

    A seeded permutation/sign-flip p value is used instead of the
    classical one when ``permutations`` is given.
    """
    if len(a) < 2 or len(b) < 2:
        raise ValueError("need at least 2 observations per sample")
    if paired:
        if len(a) != len(b):
            raise ValueError(f"paired samples differ in size: {len(a)} vs {len(b)}")
        diffs = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
        n = len(diffs)
        mean = float(diffs.mean())
        var = float(diffs.var(ddof=1))
        if var == 0.0:
            if mean == 0.0:
                return StatResult(statistic=0.0, p_value=1.0, n=n)
            raise DegenerateDataError("paired t undefined: zero-variance non-zero differences")
        t_stat = mean / math.sqrt(var / n)
        df = n - 1

        if permutations is not None:
            rng = random.Random(seed)
            hits = 0
            for _ in range(permutations):
                signs = np.asarray([rng.choice((-1.0, 1.0)) for _ in range(n)])
                flipped = diffs * signs
                var_p = float(flipped.var(ddof=1))
                if var_p == 0.0:
                    t_perm = 0.0
                else:
                    t_perm = float(flipped.mean()) / math.sqrt(var_p / n)
                if abs(t_perm) >= abs(t_stat) - 1e-12:
                    hits += 1
            return StatResult(statistic=t_stat, p_value=(hits + 1) / (permutations + 1), n=n)
        return StatResult(statistic=t_stat, p_value=_two_sided_p(t_stat, df), n=n)

    xs = np.asarray(a, dtype=float)
    ys = np.asarray(b, dtype=float)
    na, nb = len(xs), len(ys)
    va, vb = float(xs.var(ddof=1)), float(ys.var(ddof=1))
    se_sq = va / na + vb / nb
    if se_sq == 0.0:
        if float(xs.mean()) == float(ys.mean()):
            return StatResult(statistic=0.0, p_value=1.0, n=na + nb)
        raise DegenerateDataError("t undefined: both samples have zero variance")
    t_stat = (float(xs.mean()) - float(ys.mean())) / math.sqrt(se_sq)
    df = se_sq * se_sq / (
        (va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1)
    )

    if permutations is not None:
        rng = random.Random(seed)
        pooled = list(xs) + list(ys)
        hits = 0
        for _ in range(permutations):
            rng.shuffle(pooled)
            pa = np.asarray(pooled[:na])
            pb = np.asarray(pooled[na:])
            se_p = float(pa.var(ddof=1)) / na + float(pb.var(ddof=1)) / nb
            t_perm = 0.0 if se_p == 0.0 else (float(pa.mean()) - float(pb.mean())) / math.sqrt(se_p)
            if abs(t_perm) >= abs(t_stat) - 1e-12:
                hits += 1
        return StatResult(statistic=t_stat, p_value=(hits + 1) / (permutations + 1), n=na + nb)
    return StatResult(statistic=t_stat, p_value=_two_sided_p(t_stat, df), n=na + nb)
