"""Coalition games over artists: pessimistic and optimistic worth, duality,
and a definition-level Shapley oracle.

Coalitions are bitmasks over artist positions (artist at position ``k`` is bit
``k``); the worth function is materialized eagerly as a table of length 2^n.
Worth tables are exact integers for the constructed games, and the Shapley
oracle returns exact fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .core import Problem, derive
from .indices import IndexVector

DEFAULT_TABLE_CAP = 20
DEFAULT_PERMUTATION_CAP = 10


class TooManyArtists(ValueError):
    pass


@dataclass(frozen=True)
class CoalitionGame:
    players: tuple[str, ...]
    worth: tuple[int, ...]
    stance: str

    @property
    def n(self) -> int:
        return len(self.players)

    def value(self, members) -> int:
        """Worth of a coalition given as an iterable of player identifiers."""
        mask = 0
        for a in members:
            mask |= 1 << self.players.index(a)
        return self.worth[mask]


def _user_mask_counts(p: Problem) -> list[int]:
    """counts[S] = number of users whose whole listening list lies inside S."""
    n = p.n
    counts = [0] * (1 << n)
    pos = {a: i for i, a in enumerate(p.artists)}
    stats = derive(p)
    for u in p.users:
        mask = 0
        for a in stats.listening[u]:
            mask |= 1 << pos[a]
        counts[mask] += 1
    # subset-sum (zeta) transform
    for b in range(n):
        bit = 1 << b
        for s in range(1 << n):
            if s & bit:
                counts[s] += counts[s ^ bit]
    return counts


def _check_cap(p: Problem, cap: int):
    if p.n > cap:
        raise TooManyArtists(f"{p.n} artists exceeds the enumeration cap {cap}")


def pessimistic_game(p: Problem, cap: int = DEFAULT_TABLE_CAP) -> CoalitionGame:
    """worth(S) = number of users who streamed only artists in S."""
    _check_cap(p, cap)
    return CoalitionGame(p.artists, tuple(_user_mask_counts(p)), "pessimistic")


def optimistic_game(p: Problem, cap: int = DEFAULT_TABLE_CAP) -> CoalitionGame:
    """worth(S) = number of users who streamed at least one artist in S."""
    _check_cap(p, cap)
    counts = _user_mask_counts(p)
    full = (1 << p.n) - 1
    worth = tuple(p.m - counts[full ^ s] if s else 0 for s in range(1 << p.n))
    return CoalitionGame(p.artists, worth, "optimistic")


def dual_game(g: CoalitionGame) -> CoalitionGame:
    """worth*(S) = worth(N) - worth(N \\ S); an involution on games."""
    full = (1 << g.n) - 1
    grand = g.worth[full]
    worth = tuple(grand - g.worth[full ^ s] for s in range(1 << g.n))
    return CoalitionGame(g.players, worth, f"dual-of-{g.stance}")


def shapley_value_brute_force(
    g: CoalitionGame,
    method: str = "auto",
    permutation_cap: int = DEFAULT_PERMUTATION_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> IndexVector:
    """Shapley value straight from the definition.

    ``permutation`` averages marginal contributions over all n! player orders
    (the literal definition); ``subset`` uses the equivalent subset-weighted
    sum, which reaches larger n. ``auto`` picks permutation up to
    ``permutation_cap`` and subset up to ``table_cap``.
    """
    n = g.n
    if method == "auto":
        method = "permutation" if n <= permutation_cap else "subset"
    if method == "permutation":
        if n > permutation_cap:
            raise TooManyArtists(
                f"{n} artists exceeds the permutation cap {permutation_cap}"
            )
        return _shapley_permutations(g)
    if method == "subset":
        if n > table_cap:
            raise TooManyArtists(f"{n} artists exceeds the enumeration cap {table_cap}")
        return _shapley_subsets(g)
    raise ValueError(f"unknown method {method!r}")


def _shapley_permutations(g: CoalitionGame) -> IndexVector:
    n = g.n
    totals = [0] * n
    worth = g.worth
    for order in permutations(range(n)):
        mask = 0
        prev = 0
        for i in order:
            mask |= 1 << i
            w = worth[mask]
            totals[i] += w - prev
            prev = w
    fact = math.factorial(n)
    return IndexVector(g.players, tuple(Fraction(t, fact) for t in totals))


def _shapley_subsets(g: CoalitionGame) -> IndexVector:
    n = g.n
    worth = g.worth
    fact = math.factorial
    # per-player, per-coalition-size integer sums of marginal contributions
    sums = [[0] * n for _ in range(n)]
    for s in range(1 << n):
        size = s.bit_count()
        ws = worth[s]
        for i in range(n):
            bit = 1 << i
            if not s & bit:
                sums[i][size] += worth[s | bit] - ws
    nfact = fact(n)
    values = []
    for i in range(n):
        total = sum(
            fact(size) * fact(n - size - 1) * sums[i][size] for size in range(n)
        )
        values.append(Fraction(total, nfact))
    return IndexVector(g.players, tuple(values))
