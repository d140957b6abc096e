"""Independent brute-force oracles used by the test suite only.

Everything here re-derives results from first principles, without calling
the package's own implementations, so the two routes can be compared
exactly.
"""
from __future__ import annotations

import math

import mpmath

from sharedcon.corpus import Dialogue

_CONTENT_TAGS = {"NOUN", "VERB", "ADJ", "ADV"}

# ---------------------------------------------------------------- extraction


def _utterance_slices(lemmas: list[str]) -> list[tuple[str, ...]]:
    out = []
    for i in range(len(lemmas)):
        for j in range(i, len(lemmas)):
            out.append(tuple(lemmas[i : j + 1]))
    return out


def oracle_surviving_sets(dialogue: Dialogue) -> dict[str, set[tuple[str, ...]]]:
    """Brute-force n-gram intersection plus both filters, per referent."""
    speaker_a, speaker_b = dialogue.speakers

    shared_sets: dict[str, set[tuple[str, ...]]] = {}
    content_of: dict[str, set[str]] = {}
    fribbles: list[str] = []
    for trial in dialogue.trials:
        if trial.fribble not in fribbles:
            fribbles.append(trial.fribble)

    for fribble in fribbles:
        grams = {speaker_a: set(), speaker_b: set()}
        content: set[str] = set()
        for trial in dialogue.trials:
            if trial.fribble != fribble:
                continue
            for utterance in trial.utterances:
                lemmas = [t.lemma for t in utterance.tokens if not t.disfluency]
                grams[utterance.speaker].update(_utterance_slices(lemmas))
                for token in utterance.tokens:
                    if not token.disfluency and token.pos.value in _CONTENT_TAGS:
                        content.add(token.lemma)
        shared = grams[speaker_a] & grams[speaker_b]
        # function-word-only filter
        shared = {seq for seq in shared if any(lemma in content for lemma in seq)}
        shared_sets[fribble] = shared
        content_of[fribble] = content

    # multi-referent filter: exact sequence shared under >= 2 referents
    counts: dict[tuple[str, ...], int] = {}
    for shared in shared_sets.values():
        for seq in shared:
            counts[seq] = counts.get(seq, 0) + 1
    return {
        fribble: {seq for seq in shared if counts[seq] == 1}
        for fribble, shared in shared_sets.items()
    }


# ---------------------------------------------------------------- statistics


def naive_ranks(values: list[float]) -> list[float]:
    """Average ranks via counting, no sorting machinery."""
    ranks = []
    for v in values:
        less = sum(1 for w in values if w < v)
        equal = sum(1 for w in values if w == v)
        ranks.append(less + (equal + 1) / 2.0)
    return ranks


def _pearson(x: list[float], y: list[float]) -> float:
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    num = sum((a - mx) * (b - my) for a, b in zip(x, y))
    den = math.sqrt(sum((a - mx) ** 2 for a in x) * sum((b - my) ** 2 for b in y))
    return num / den


def t_sf_two_sided(t_stat: float, df: float) -> float:
    """P(|T| >= t) for T ~ t(df), via the regularized incomplete beta."""
    if math.isinf(t_stat):
        return 0.0
    x = df / (df + t_stat * t_stat)
    return float(mpmath.betainc(df / 2.0, 0.5, 0, x, regularized=True))


def oracle_spearman(x: list[float], y: list[float]) -> tuple[float, float]:
    rho = _pearson(naive_ranks(x), naive_ranks(y))
    n = len(x)
    if abs(rho) >= 1.0 - 1e-15:
        return rho, 0.0
    t_stat = rho * math.sqrt((n - 2) / (1 - rho * rho))
    return rho, t_sf_two_sided(t_stat, n - 2)


def _sample_var(values: list[float]) -> float:
    n = len(values)
    mean = sum(values) / n
    return sum((v - mean) ** 2 for v in values) / (n - 1)


def oracle_welch_t(a: list[float], b: list[float]) -> tuple[float, float]:
    na, nb = len(a), len(b)
    va, vb = _sample_var(a), _sample_var(b)
    se_sq = va / na + vb / nb
    t_stat = (sum(a) / na - sum(b) / nb) / math.sqrt(se_sq)
    df = se_sq**2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    return t_stat, t_sf_two_sided(t_stat, df)


def oracle_paired_t(a: list[float], b: list[float]) -> tuple[float, float]:
    diffs = [x - y for x, y in zip(a, b)]
    n = len(diffs)
    t_stat = (sum(diffs) / n) / math.sqrt(_sample_var(diffs) / n)
    return t_stat, t_sf_two_sided(t_stat, n - 1)
