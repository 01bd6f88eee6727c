"""Popularity indices and the proportional reward map.

All arithmetic is exact (``fractions.Fraction``), so equalities such as
budget balance hold with zero tolerance. Indices are returned in their
canonical un-normalized form; normalization to the revenue total happens
only in :func:`rewards`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .core import Problem, derive


class ZeroTotalIndex(ValueError):
    pass


class MissingWeights(ValueError):
    pass


class NonpositiveWeight(ValueError):
    pass


class UnknownRule(ValueError):
    pass


@dataclass(frozen=True)
class IndexVector:
    """Per-artist importance scores, aligned with ``Problem.artists``."""

    artists: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, artist: str) -> Fraction:
        return self.values[self.artists.index(artist)]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.artists, self.values))


@dataclass(frozen=True)
class AllocationReport:
    """An index together with the payouts it induces; payouts sum to ``total``."""

    index: IndexVector
    rewards: tuple[Fraction, ...]
    total: int


def shapley_index(p: Problem) -> IndexVector:
    """Each user's unit subscription split equally among the artists they streamed."""
    stats = derive(p)
    acc = {a: Fraction(0) for a in p.artists}
    for u in p.users:
        listened = stats.listening[u]
        share = Fraction(1, len(listened))
        for a in listened:
            acc[a] += share
    return IndexVector(p.artists, tuple(acc[a] for a in p.artists))


def pro_rata_index(p: Problem) -> IndexVector:
    """Raw total stream counts per artist."""
    stats = derive(p)
    return IndexVector(
        p.artists, tuple(Fraction(stats.total_by_artist[a]) for a in p.artists)
    )


def user_centric_index(p: Problem) -> IndexVector:
    """Each user's unit subscription split in proportion to that user's streams."""
    stats = derive(p)
    acc = {a: Fraction(0) for a in p.artists}
    for j, u in enumerate(p.users):
        total = stats.total_by_user[u]
        for i, a in enumerate(p.artists):
            x = p.streams[i][j]
            if x:
                acc[a] += Fraction(x, total)
    return IndexVector(p.artists, tuple(acc[a] for a in p.artists))


def active_uniform_index(p: Problem) -> IndexVector:
    """Revenue split equally among the artists with at least one fan."""
    stats = derive(p)
    active = [a for a in p.artists if stats.fans[a]]
    share = Fraction(p.m, len(active))
    return IndexVector(
        p.artists,
        tuple(share if a in set(active) else Fraction(0) for a in p.artists),
    )


def uniform_index(p: Problem) -> IndexVector:
    """Revenue split equally among all artists, streamed or not."""
    share = Fraction(p.m, p.n)
    return IndexVector(p.artists, tuple(share for _ in p.artists))


def user_weighted_index(p: Problem, weights: Mapping[str, Fraction]) -> IndexVector:
    """Equal split of a per-user weight among the artists that user streamed."""
    w = _check_weights(weights, p.users, "user")
    stats = derive(p)
    acc = {a: Fraction(0) for a in p.artists}
    for u in p.users:
        listened = stats.listening[u]
        share = Fraction(w[u], len(listened))
        for a in listened:
            acc[a] += share
    return IndexVector(p.artists, tuple(acc[a] for a in p.artists))


def artist_weighted_index(p: Problem, weights: Mapping[str, Fraction]) -> IndexVector:
    """Each user's unit split among streamed artists in proportion to artist weights."""
    w = _check_weights(weights, p.artists, "artist")
    stats = derive(p)
    acc = {a: Fraction(0) for a in p.artists}
    for u in p.users:
        listened = stats.listening[u]
        denom = sum(w[a] for a in listened)
        for a in listened:
            acc[a] += Fraction(w[a], denom)
    return IndexVector(p.artists, tuple(acc[a] for a in p.artists))


def _check_weights(weights, ids, kind: str) -> dict[str, Fraction]:
    if weights is None:
        raise MissingWeights(f"{kind} weights are required")
    out = {}
    for ident in ids:
        if ident not in weights:
            raise MissingWeights(f"missing weight for {kind} {ident!r}")
        w = Fraction(weights[ident])
        if w <= 0:
            raise NonpositiveWeight(f"weight for {kind} {ident!r} must be positive")
        out[ident] = w
    return out


def rewards(index: IndexVector, p: Problem) -> AllocationReport:
    """Distribute the revenue total ``m`` proportionally to index values.

    Invariant under positive scaling of the index vector.
    """
    total = index.total
    if total <= 0:
        raise ZeroTotalIndex("index values sum to zero")
    payouts = tuple(v / total * p.m for v in index.values)
    return AllocationReport(index=index, rewards=payouts, total=p.m)


# ---------------------------------------------------------------------------
# Named rules
#
# A rule bundles an index with a name so audits and reports can refer to it.
# The two weighted rules draw default weights per identifier from a fixed
# seed, so the same user (or artist) keeps the same weight across reduced and
# split problems.

@dataclass(frozen=True)
class IndexRule:
    name: str
    fn: Callable[[Problem], IndexVector]

    def __call__(self, p: Problem) -> IndexVector:
        return self.fn(p)


TABLE_RULE_NAMES = ("shapley", "pro-rata", "user-centric")
ALL_RULE_NAMES = TABLE_RULE_NAMES + (
    "active-uniform", "uniform", "user-weighted", "artist-weighted",
)


def default_weight(seed: int, kind: str, ident: str) -> int:
    """Deterministic positive weight for one identifier, independent of context."""
    return random.Random(f"{kind}:{seed}:{ident}").randint(1, 97)


def make_rule(name: str, seed: int = 0, weights: Mapping[str, Fraction] | None = None) -> IndexRule:
    """Build a named rule; ``weights`` overrides the seeded defaults where applicable."""
    if name == "shapley":
        return IndexRule(name, shapley_index)
    if name == "pro-rata":
        return IndexRule(name, pro_rata_index)
    if name == "user-centric":
        return IndexRule(name, user_centric_index)
    if name == "active-uniform":
        return IndexRule(name, active_uniform_index)
    if name == "uniform":
        return IndexRule(name, uniform_index)
    if name == "user-weighted":
        if weights is not None:
            return IndexRule(name, lambda p: user_weighted_index(p, weights))
        return IndexRule(
            name,
            lambda p: user_weighted_index(
                p, {u: default_weight(seed, "user", u) for u in p.users}
            ),
        )
    if name == "artist-weighted":
        if weights is not None:
            return IndexRule(name, lambda p: artist_weighted_index(p, weights))
        return IndexRule(
            name,
            lambda p: artist_weighted_index(
                p, {a: default_weight(seed, "artist", a) for a in p.artists}
            ),
        )
    raise UnknownRule(f"unknown index rule {name!r}")
