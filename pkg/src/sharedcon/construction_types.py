"""Grouping of shared constructions into construction types.

Constructions that revolve around the same content lemma (e.g. "dat boek
bovenop", "boek bovenop", "boek") form one type, labelled by that lemma
(the core).  Each construction joins the type of its most heavily used
candidate core; per-type statistics aggregate the member occurrences.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .extraction import SharedConstruction


@dataclass(frozen=True, slots=True)
class ConstructionType:
    """A group of shared constructions with a common content-lemma core."""

    core: str
    members: tuple[SharedConstruction, ...]
    rounds_used: frozenset[int]
    occurrence_count: int
    first_round: int
    last_round: int

    def lemma_vector(self) -> frozenset[str]:
        """Union of the members' content lemmas; always contains the core."""
        lemmas = {self.core}
        for member in self.members:
            lemmas.update(member.content_lemmas)
        return frozenset(lemmas)


@dataclass(frozen=True, slots=True)
class TypeTimeline:
    """All construction types of one (dyad, referent), by first use."""

    dyad: str
    fribble: str
    types: tuple[ConstructionType, ...]


def group_into_types(
    constructions: Sequence[SharedConstruction],
) -> list[ConstructionType]:
    """Partition constructions of one (dyad, referent) into types.

    Candidate cores are the content lemmas of the constructions.  Each
    construction is assigned to the candidate with the highest total
    occurrence count over all constructions containing it; ties break by
    earliest first occurrence, then lexicographically.
    """
    score: dict[str, int] = {}
    first_use: dict[str, tuple[int, int]] = {}
    for construction in constructions:
        weight = len(construction.occurrences)
        site = construction.first_site()
        for lemma in construction.content_lemmas:
            score[lemma] = score.get(lemma, 0) + weight
            if lemma not in first_use or site < first_use[lemma]:
                first_use[lemma] = site

    groups: dict[str, list[SharedConstruction]] = {}
    for construction in constructions:
        if not construction.content_lemmas:
            raise ValueError(
                f"construction {construction.lemmas} has no content lemma; "
                "run the function-word filter first"
            )
        core = min(
            construction.content_lemmas,
            key=lambda lemma: (-score[lemma], first_use[lemma], lemma),
        )
        groups.setdefault(core, []).append(construction)

    types = []
    for core, members in groups.items():
        rounds = frozenset(o.round for m in members for o in m.occurrences)
        types.append(
            ConstructionType(
                core=core,
                members=tuple(members),
                rounds_used=rounds,
                occurrence_count=sum(len(m.occurrences) for m in members),
                first_round=min(rounds),
                last_round=max(rounds),
            )
        )
    types.sort(
        key=lambda t: (
            t.first_round,
            min(m.first_site() for m in t.members),
            t.core,
        )
    )
    return types


def build_timeline(
    dyad: str,
    fribble: str,
    constructions: Sequence[SharedConstruction],
) -> TypeTimeline:
    return TypeTimeline(dyad=dyad, fribble=fribble, types=tuple(group_into_types(constructions)))


def dominant_type(timeline: TypeTimeline) -> ConstructionType | None:
    """The type used in the most rounds; ``None`` for an empty timeline.

    Ties break by later last round, then higher occurrence count, then
    lexicographically smallest core.
    """
    if not timeline.types:
        return None
    return min(
        timeline.types,
        key=lambda t: (-len(t.rounds_used), -t.last_round, -t.occurrence_count, t.core),
    )


def type_features(t: ConstructionType, rounds_total: int) -> tuple[int, int]:
    """(frequency, recency) = (#rounds used, last round used)."""
    if not (1 <= t.first_round <= t.last_round <= rounds_total):
        raise ValueError(
            f"type rounds {t.first_round}..{t.last_round} outside 1..{rounds_total}"
        )
    return (len(t.rounds_used), t.last_round)
