"""Executable axiom checks, randomized falsification search, and the
rules-versus-axioms table.

Each axiom is encoded as an exact-rational check of its defining
(in)equality on a single instance. An audit runs the check over a fixed
exhaustive small grid of problems plus seeded random trials; the first
counterexample wins and is returned as a replayable witness (the stored
instance reproduces the violation bit-for-bit through
:func:`check_instance`). Audits are sequential and fully deterministic in
the seed.

Quantified axioms ("for each pair", "for each subset") are checked over
every applicable pair or subset inside each instance; user subsets are
enumerated exhaustively up to 10 users and sampled above that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .core import (
    Problem,
    ProblemError,
    build_problem,
    derive,
    remove_artist,
    remove_user,
    split_by_users,
)
from .indices import IndexRule, make_rule, rewards

AXIOM_IDS = (
    "additivity",
    "reasonable_lower_bound",
    "equal_global_impact_of_users",
    "symmetry_on_fans",
    "order_preservation",
    "non_unilateral_manipulability",
    "equal_impact_of_artists",
    "null_artists",
    "pairwise_homogeneity",
    "click_fraud_proofness",
)

SUBSET_ENUMERATION_CAP = 10


class ShapeMismatch(ValueError):
    """Instance data does not fit the axiom's expected shape."""


class UnknownAxiom(ValueError):
    pass


@dataclass(frozen=True)
class SizeBounds:
    """Dimensions and entry ranges for randomly generated problems.

    A small fraction of trials use ``heavy_entry`` as the entry cap, which is
    what exposes ratio-sensitive violations (for example, reward shifts under
    a single user's extreme stream counts).
    """

    max_artists: int = 5
    max_users: int = 5
    max_entry: int = 5
    heavy_entry: int = 200
    heavy_chance: float = 0.15


@dataclass(frozen=True)
class Violation:
    description: str
    details: dict


@dataclass(frozen=True)
class Verdict:
    axiom: str
    rule: str
    outcome: str  # "holds" or "counterexample"
    trials: int
    grid_cases: int
    skipped: int
    seed: int
    witness: dict | None = None
    details: dict | None = None

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"


def problem_to_dict(p: Problem) -> dict:
    return {
        "artists": list(p.artists),
        "users": list(p.users),
        "streams": [list(row) for row in p.streams],
    }


def problem_from_dict(d: dict) -> Problem:
    return build_problem(d["artists"], d["users"], d["streams"])


# ---------------------------------------------------------------------------
# Single-instance checks


def check_instance(axiom: str, rule: IndexRule, instance: dict):
    """Evaluate one axiom on one instance with exact arithmetic.

    Returns ``(violation, skipped)`` where ``violation`` is ``None`` when the
    axiom's condition holds on the instance and ``skipped`` counts quantified
    cases whose reduced problem falls outside the model (only relevant to the
    artist-removal axiom).
    """
    try:
        checker = _CHECKERS[axiom]
    except KeyError:
        raise UnknownAxiom(f"unknown axiom {axiom!r}") from None
    return checker(rule, instance)


def _get_problem(instance: dict, key: str = "problem") -> Problem:
    try:
        return problem_from_dict(instance[key])
    except KeyError:
        raise ShapeMismatch(f"instance is missing {key!r}") from None
    except ProblemError as exc:
        raise ShapeMismatch(f"invalid {key!r}: {exc}") from None


def _check_additivity(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    try:
        first, second = instance["first_users"], instance["second_users"]
        p1, p2 = split_by_users(p, first, second)
    except (KeyError, ProblemError) as exc:
        raise ShapeMismatch(str(exc)) from None
    whole = rule(p)
    part1 = rule(p1)
    part2 = rule(p2)
    for a in p.artists:
        if whole[a] != part1[a] + part2[a]:
            return Violation(
                "index on the whole problem differs from the sum over the user split",
                {
                    "artist": a,
                    "whole": str(whole[a]),
                    "first_part": str(part1[a]),
                    "second_part": str(part2[a]),
                },
            ), 0
    return None, 0


def _nonempty_subsets(items):
    n = len(items)
    for mask in range(1, 1 << n):
        yield [items[k] for k in range(n) if mask >> k & 1]


def _check_reasonable_lower_bound(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    stats = derive(p)
    report = rewards(rule(p), p)
    payout = dict(zip(p.artists, report.rewards))
    subsets = instance.get("user_subsets")
    if subsets is None:
        if p.m > SUBSET_ENUMERATION_CAP:
            raise ShapeMismatch(
                f"{p.m} users requires sampled subsets in the instance"
            )
        subsets = _nonempty_subsets(list(p.users))
    for group in subsets:
        streamed = set()
        for u in group:
            streamed |= stats.listening[u]
        got = sum((payout[a] for a in streamed), Fraction(0))
        if got < len(group):
            return Violation(
                "artists streamed by a user group receive less than the group paid",
                {
                    "user_group": sorted(group),
                    "streamed_artists": sorted(streamed),
                    "reward_sum": str(got),
                    "amount_paid": len(group),
                },
            ), 0
    return None, 0


def _check_equal_global_impact_of_users(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    if p.m < 2:
        return None, 0
    totals = {u: rule(remove_user(p, u)).total for u in p.users}
    base = p.users[0]
    for u in p.users[1:]:
        if totals[u] != totals[base]:
            return Violation(
                "removing different users shifts the index total by different amounts",
                {
                    "user": base,
                    "other_user": u,
                    "total_without_user": str(totals[base]),
                    "total_without_other": str(totals[u]),
                },
            ), 0
    return None, 0


def _check_symmetry_on_fans(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    stats = derive(p)
    vec = rule(p)
    for x, a in enumerate(p.artists):
        for b in p.artists[x + 1:]:
            if stats.fans[a] == stats.fans[b] and vec[a] != vec[b]:
                return Violation(
                    "two artists with identical fan sets get different index values",
                    {
                        "artist": a,
                        "other_artist": b,
                        "fans": sorted(stats.fans[a]),
                        "value": str(vec[a]),
                        "other_value": str(vec[b]),
                    },
                ), 0
    return None, 0


def _check_order_preservation(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    vec = rule(p)
    for x, a in enumerate(p.artists):
        for y, b in enumerate(p.artists):
            if x == y:
                continue
            if all(p.streams[x][j] <= p.streams[y][j] for j in range(p.m)):
                if vec[a] > vec[b]:
                    return Violation(
                        "an artist dominated stream-by-stream outranks the dominating artist",
                        {
                            "dominated_artist": a,
                            "dominating_artist": b,
                            "dominated_value": str(vec[a]),
                            "dominating_value": str(vec[b]),
                        },
                    ), 0
    return None, 0


def _check_non_unilateral_manipulability(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    q = _get_problem(instance, "modified")
    artist = instance.get("artist")
    if artist not in p.artists:
        raise ShapeMismatch(f"unknown artist {artist!r}")
    if p.artists != q.artists or p.users != q.users:
        raise ShapeMismatch("both problems must share artists and users")
    i = p.artists.index(artist)
    for x in range(p.n):
        if x != i and p.streams[x] != q.streams[x]:
            raise ShapeMismatch("problems differ outside the manipulating artist's row")
    for j in range(p.m):
        lo, hi = p.streams[i][j], q.streams[i][j]
        if lo > hi or (lo == 0) != (hi == 0):
            raise ShapeMismatch(
                "modified row must weakly increase streams without changing the fan set"
            )
    before = rule(p)[artist]
    after = rule(q)[artist]
    if after > before:
        return Violation(
            "inflating own streams from existing fans raised the artist's index",
            {
                "artist": artist,
                "value_before": str(before),
                "value_after": str(after),
            },
        ), 0
    return None, 0


def _check_equal_impact_of_artists(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    if p.n < 2:
        return None, 0
    vec = rule(p)
    reduced: dict[str, object] = {}
    for a in p.artists:
        removal = remove_artist(p, a)
        reduced[a] = None if removal.silenced else rule(removal.to_problem())
    skipped = 0
    for x, a in enumerate(p.artists):
        for b in p.artists[x + 1:]:
            # removal outside the model (a silenced user): not pass, not fail
            if reduced[a] is None or reduced[b] is None:
                skipped += 1
                continue
            lhs = vec[a] - reduced[b][a]
            rhs = vec[b] - reduced[a][b]
            if lhs != rhs:
                return Violation(
                    "one artist's departure changes the other's index asymmetrically",
                    {
                        "artist": a,
                        "other_artist": b,
                        "change_for_artist": str(lhs),
                        "change_for_other": str(rhs),
                    },
                ), skipped
    return None, skipped


def _check_null_artists(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    stats = derive(p)
    vec = rule(p)
    for a in p.artists:
        if stats.total_by_artist[a] == 0 and vec[a] != 0:
            return Violation(
                "an artist with zero streams has a nonzero index",
                {"artist": a, "value": str(vec[a])},
            ), 0
    return None, 0


def _row_ratio(row, other) -> Fraction | None:
    """The positive constant ratio other/row, or None when no such ratio exists."""
    ratio = None
    for x, y in zip(row, other):
        if (x == 0) != (y == 0):
            return None
        if x:
            r = Fraction(y, x)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
    return ratio  # None when the base row is all zero


def _check_pairwise_homogeneity(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    vec = rule(p)
    for x, a in enumerate(p.artists):
        for y, b in enumerate(p.artists):
            if x == y:
                continue
            ratio = _row_ratio(p.streams[x], p.streams[y])
            if ratio is None:
                continue
            if vec[b] != ratio * vec[a]:
                return Violation(
                    "a constant per-user stream ratio between two artists is not preserved",
                    {
                        "artist": a,
                        "other_artist": b,
                        "ratio": str(ratio),
                        "value": str(vec[a]),
                        "other_value": str(vec[b]),
                    },
                ), 0
    return None, 0


def _check_click_fraud_proofness(rule: IndexRule, instance: dict):
    p = _get_problem(instance)
    q = _get_problem(instance, "modified")
    user = instance.get("user")
    if user not in p.users:
        raise ShapeMismatch(f"unknown user {user!r}")
    if p.artists != q.artists or p.users != q.users:
        raise ShapeMismatch("both problems must share artists and users")
    j = p.users.index(user)
    for x in range(p.n):
        row_p = p.streams[x][:j] + p.streams[x][j + 1:]
        row_q = q.streams[x][:j] + q.streams[x][j + 1:]
        if row_p != row_q:
            raise ShapeMismatch("problems differ outside the manipulating user's column")
    before = dict(zip(p.artists, rewards(rule(p), p).rewards))
    after = dict(zip(q.artists, rewards(rule(q), q).rewards))
    for a in p.artists:
        delta = after[a] - before[a]
        if delta > 1 or delta < -1:
            return Violation(
                "one user's altered streams moved an artist's payout by more than that user's subscription",
                {
                    "artist": a,
                    "user": user,
                    "reward_before": str(before[a]),
                    "reward_after": str(after[a]),
                },
            ), 0
    return None, 0


_CHECKERS = {
    "additivity": _check_additivity,
    "reasonable_lower_bound": _check_reasonable_lower_bound,
    "equal_global_impact_of_users": _check_equal_global_impact_of_users,
    "symmetry_on_fans": _check_symmetry_on_fans,
    "order_preservation": _check_order_preservation,
    "non_unilateral_manipulability": _check_non_unilateral_manipulability,
    "equal_impact_of_artists": _check_equal_impact_of_artists,
    "null_artists": _check_null_artists,
    "pairwise_homogeneity": _check_pairwise_homogeneity,
    "click_fraud_proofness": _check_click_fraud_proofness,
}


# ---------------------------------------------------------------------------
# Exhaustive small grid
#
# Literal exhaustion over every small matrix is infeasible, so the grid covers
# two complete families that are rich enough to witness every "No" cell of the
# rules-vs-axioms table: all 0/1 support matrices up to 3x3, and all 2x2
# matrices with entries in {0, 1, 3}.


@lru_cache(maxsize=1)
def _grid_problems() -> tuple[dict, ...]:
    out = []
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            for combo in product((0, 1), repeat=n * m):
                rows = [list(combo[i * m:(i + 1) * m]) for i in range(n)]
                if all(any(rows[i][j] for i in range(n)) for j in range(m)):
                    out.append(_grid_dict(rows))
    for combo in product((0, 1, 3), repeat=4):
        rows = [list(combo[:2]), list(combo[2:])]
        if all(any(rows[i][j] for i in range(2)) for j in range(2)):
            out.append(_grid_dict(rows))
    return tuple(out)


def _grid_dict(rows) -> dict:
    n, m = len(rows), len(rows[0])
    return {
        "artists": [f"a{i + 1}" for i in range(n)],
        "users": [f"u{j + 1}" for j in range(m)],
        "streams": rows,
    }


def _column_variants(col):
    variants = []
    rev = list(reversed(col))
    if rev != list(col):
        variants.append(rev)
    total = sum(col)
    spike = [0] * len(col)
    spike[0] = total
    if spike != list(col) and spike not in variants:
        variants.append(spike)
    scaled = [10 * x for x in col]
    variants.append(scaled)
    return variants


@lru_cache(maxsize=None)
def grid_instances(axiom: str) -> tuple[dict, ...]:
    """Deterministic exhaustive instances for one axiom."""
    if axiom not in AXIOM_IDS:
        raise UnknownAxiom(f"unknown axiom {axiom!r}")
    problems = _grid_problems()
    out = []
    if axiom == "additivity":
        for d in problems:
            users = d["users"]
            if len(users) < 2:
                continue
            for mask in range(1, 1 << (len(users) - 1)):
                first = [users[0]] + [
                    users[k + 1] for k in range(len(users) - 1) if mask >> k & 1
                ]
                second = [u for u in users if u not in first]
                if second:
                    out.append({"problem": d, "first_users": first, "second_users": second})
    elif axiom == "non_unilateral_manipulability":
        for d in problems:
            for i, a in enumerate(d["artists"]):
                if not any(d["streams"][i]):
                    continue
                rows = [list(r) for r in d["streams"]]
                rows[i] = [3 * x for x in rows[i]]
                out.append({
                    "problem": d,
                    "modified": {**d, "streams": rows},
                    "artist": a,
                })
    elif axiom == "click_fraud_proofness":
        for d in problems:
            for j, u in enumerate(d["users"]):
                col = [row[j] for row in d["streams"]]
                for new_col in _column_variants(col):
                    rows = [list(r) for r in d["streams"]]
                    for i in range(len(rows)):
                        rows[i][j] = new_col[i]
                    out.append({
                        "problem": d,
                        "modified": {**d, "streams": rows},
                        "user": u,
                    })
    else:
        out = [{"problem": d} for d in problems]
    return tuple(out)


# ---------------------------------------------------------------------------
# Random instance generation


def _random_matrix(rng: random.Random, n: int, m: int, max_entry: int, zero_chance: float):
    rows = [
        [0 if rng.random() < zero_chance else rng.randint(1, max_entry) for _ in range(m)]
        for _ in range(n)
    ]
    for j in range(m):
        if all(rows[i][j] == 0 for i in range(n)):
            rows[rng.randrange(n)][j] = rng.randint(1, max_entry)
    return rows


def _random_problem_dict(
    rng: random.Random,
    bounds: SizeBounds,
    min_n: int = 1,
    min_m: int = 1,
    zero_chance: float = 0.35,
) -> dict:
    n = rng.randint(min_n, max(min_n, bounds.max_artists))
    m = rng.randint(min_m, max(min_m, bounds.max_users))
    max_entry = (
        bounds.heavy_entry if rng.random() < bounds.heavy_chance else bounds.max_entry
    )
    rows = _random_matrix(rng, n, m, max_entry, zero_chance)
    return _grid_dict(rows)


def _bump_column(rng, rows, j, avoid):
    """Make column j positive without touching rows in ``avoid`` when possible."""
    candidates = [x for x in range(len(rows)) if x not in avoid] or list(avoid)
    rows[rng.choice(candidates)][j] = rng.randint(1, 3)


def generate_instance(axiom: str, rng: random.Random, bounds: SizeBounds) -> dict:
    """Draw one random instance of the shape the axiom expects."""
    if axiom == "additivity":
        d = _random_problem_dict(rng, bounds, min_m=2)
        users = d["users"]
        while True:
            first = [u for u in users if rng.random() < 0.5]
            second = [u for u in users if u not in first]
            if first and second:
                return {"problem": d, "first_users": first, "second_users": second}
    if axiom == "symmetry_on_fans":
        d = _random_problem_dict(rng, bounds, min_n=2)
        if rng.random() < 0.7:
            rows = d["streams"]
            n, m = len(rows), len(rows[0])
            i, k = rng.sample(range(n), 2)
            rows[k] = [
                0 if rows[i][j] == 0 else rng.randint(1, bounds.max_entry)
                for j in range(m)
            ]
            for j in range(m):
                if all(rows[x][j] == 0 for x in range(n)):
                    if n > 2:
                        _bump_column(rng, rows, j, {i, k})
                    else:
                        v = rng.randint(1, bounds.max_entry)
                        rows[i][j] = v
                        rows[k][j] = rng.randint(1, bounds.max_entry)
        return {"problem": d}
    if axiom == "order_preservation":
        d = _random_problem_dict(rng, bounds, min_n=2)
        if rng.random() < 0.6:
            rows = d["streams"]
            n, m = len(rows), len(rows[0])
            i, k = rng.sample(range(n), 2)
            rows[k] = [x + rng.randint(0, 2) for x in rows[i]]
            for j in range(m):
                if all(rows[x][j] == 0 for x in range(n)):
                    # bumping the dominating row keeps the domination intact
                    rows[k][j] += rng.randint(1, 2)
        return {"problem": d}
    if axiom == "non_unilateral_manipulability":
        d = _random_problem_dict(rng, bounds)
        rows = d["streams"]
        active = [i for i in range(len(rows)) if any(rows[i])]
        i = rng.choice(active)
        new_row = [
            x + (rng.randint(0, bounds.max_entry) if x else 0) for x in rows[i]
        ]
        modified = [list(r) for r in rows]
        modified[i] = new_row
        return {
            "problem": d,
            "modified": {**d, "streams": modified},
            "artist": d["artists"][i],
        }
    if axiom == "equal_impact_of_artists":
        # dense matrices keep most artist removals inside the model
        d = _random_problem_dict(rng, bounds, min_n=2, zero_chance=0.15)
        return {"problem": d}
    if axiom == "null_artists":
        d = _random_problem_dict(rng, bounds, min_n=2)
        rows = d["streams"]
        n, m = len(rows), len(rows[0])
        i = rng.randrange(n)
        rows[i] = [0] * m
        for j in range(m):
            if all(rows[x][j] == 0 for x in range(n)):
                _bump_column(rng, rows, j, {i})
        return {"problem": d}
    if axiom == "pairwise_homogeneity":
        d = _random_problem_dict(rng, bounds, min_n=2)
        if rng.random() < 0.7:
            rows = d["streams"]
            n, m = len(rows), len(rows[0])
            i, k = rng.sample(range(n), 2)
            if not any(rows[i]):
                rows[i] = [rng.randint(1, bounds.max_entry) for _ in rows[i]]
            mult = rng.choice((2, 3))
            rows[k] = [mult * x for x in rows[i]]
            for j in range(m):
                if all(rows[x][j] == 0 for x in range(n)):
                    if n > 2:
                        _bump_column(rng, rows, j, {i, k})
                    else:
                        v = rng.randint(1, bounds.max_entry)
                        rows[i][j] = v
                        rows[k][j] = mult * v
        return {"problem": d}
    if axiom == "click_fraud_proofness":
        d = _random_problem_dict(rng, bounds)
        rows = d["streams"]
        n = len(rows)
        j = rng.randrange(len(d["users"]))
        col = [rows[i][j] for i in range(n)]
        style = rng.random()
        if style < 0.4:
            new_col = [0] * n
            new_col[rng.randrange(n)] = rng.randint(1, bounds.heavy_entry)
        elif style < 0.7:
            new_col = list(reversed(col))
        else:
            scale = rng.randint(2, 50)
            new_col = [scale * x for x in col]
        modified = [list(r) for r in rows]
        for i in range(n):
            modified[i][j] = new_col[i]
        return {
            "problem": d,
            "modified": {**d, "streams": modified},
            "user": d["users"][j],
        }
    if axiom == "reasonable_lower_bound":
        d = _random_problem_dict(rng, bounds)
        inst = {"problem": d}
        if len(d["users"]) > SUBSET_ENUMERATION_CAP:
            inst["user_subsets"] = [
                [u for u in d["users"] if rng.random() < 0.5] or [d["users"][0]]
                for _ in range(256)
            ]
        return inst
    if axiom == "equal_global_impact_of_users":
        return {"problem": _random_problem_dict(rng, bounds, min_m=2)}
    raise UnknownAxiom(f"unknown axiom {axiom!r}")


# ---------------------------------------------------------------------------
# Audits


def audit(
    axiom: str,
    rule: IndexRule,
    trials: int = 500,
    seed: int = 42,
    bounds: SizeBounds = SizeBounds(),
    include_grid: bool = True,
) -> Verdict:
    """Search for a counterexample: exhaustive grid first, then seeded trials.

    Deterministic in ``seed``; the earliest counterexample in the fixed scan
    order is the one reported.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    skipped = 0
    grid_cases = 0
    if include_grid:
        for instance in grid_instances(axiom):
            grid_cases += 1
            violation, sk = check_instance(axiom, rule, instance)
            skipped += sk
            if violation is not None:
                return Verdict(
                    axiom, rule.name, "counterexample", 0, grid_cases, skipped,
                    seed, witness=instance, details=violation.details,
                )
    rng = random.Random(f"{seed}|{axiom}|{rule.name}")
    for k in range(trials):
        instance = generate_instance(axiom, rng, bounds)
        violation, sk = check_instance(axiom, rule, instance)
        skipped += sk
        if violation is not None:
            return Verdict(
                axiom, rule.name, "counterexample", k + 1, grid_cases, skipped,
                seed, witness=instance, details=violation.details,
            )
    return Verdict(axiom, rule.name, "holds", trials, grid_cases, skipped, seed)


def replay_witness(verdict: Verdict, rule: IndexRule) -> bool:
    """Re-run the single-instance check on a stored witness.

    True when the recorded violation reproduces exactly.
    """
    if verdict.witness is None:
        return False
    violation, _ = check_instance(verdict.axiom, rule, verdict.witness)
    return violation is not None and violation.details == verdict.details


# ---------------------------------------------------------------------------
# The rules-vs-axioms table


TABLE1_EXPECTED: dict[str, dict[str, bool]] = {
    "additivity": {"shapley": True, "pro-rata": True, "user-centric": True},
    "reasonable_lower_bound": {"shapley": True, "pro-rata": False, "user-centric": True},
    "equal_global_impact_of_users": {"shapley": True, "pro-rata": False, "user-centric": True},
    "symmetry_on_fans": {"shapley": True, "pro-rata": False, "user-centric": False},
    "order_preservation": {"shapley": True, "pro-rata": True, "user-centric": True},
    "non_unilateral_manipulability": {"shapley": True, "pro-rata": False, "user-centric": False},
    "null_artists": {"shapley": True, "pro-rata": True, "user-centric": True},
    "equal_impact_of_artists": {"shapley": True, "pro-rata": True, "user-centric": False},
    "pairwise_homogeneity": {"shapley": False, "pro-rata": True, "user-centric": True},
    "click_fraud_proofness": {"shapley": True, "pro-rata": False, "user-centric": True},
}


@dataclass(frozen=True)
class TableCell:
    axiom: str
    rule: str
    expected_holds: bool
    verdict: Verdict

    @property
    def matches(self) -> bool:
        return self.verdict.holds == self.expected_holds


@dataclass(frozen=True)
class TableResult:
    trials: int
    seed: int
    cells: tuple[TableCell, ...]

    @property
    def all_match(self) -> bool:
        return all(c.matches for c in self.cells)

    @property
    def mismatches(self) -> tuple[TableCell, ...]:
        return tuple(c for c in self.cells if not c.matches)


def reproduce_table(
    trials: int = 500, seed: int = 42, bounds: SizeBounds = SizeBounds()
) -> TableResult:
    """Audit every (axiom, rule) cell of the expected satisfaction table."""
    cells = []
    for axiom in AXIOM_IDS:
        for name in ("shapley", "pro-rata", "user-centric"):
            verdict = audit(axiom, make_rule(name, seed=seed), trials, seed, bounds)
            cells.append(
                TableCell(axiom, name, TABLE1_EXPECTED[axiom][name], verdict)
            )
    return TableResult(trials, seed, tuple(cells))


# ---------------------------------------------------------------------------
# Independence suites
#
# Three characterization axiom sets; within each, every deviant rule is
# expected to fail exactly one designated axiom and pass the rest.


THEOREM_AXIOM_SETS: dict[str, tuple[str, ...]] = {
    "fan-symmetry": (
        "additivity",
        "reasonable_lower_bound",
        "equal_global_impact_of_users",
        "symmetry_on_fans",
    ),
    "manipulation": (
        "additivity",
        "reasonable_lower_bound",
        "equal_global_impact_of_users",
        "order_preservation",
        "non_unilateral_manipulability",
    ),
    "artist-removal": (
        "additivity",
        "reasonable_lower_bound",
        "equal_global_impact_of_users",
        "equal_impact_of_artists",
    ),
}

INDEPENDENCE_CLAIMS: tuple[tuple[str, str, str], ...] = (
    # (axiom set, deviant rule, the one axiom it is expected to fail)
    ("fan-symmetry", "active-uniform", "additivity"),
    ("fan-symmetry", "uniform", "reasonable_lower_bound"),
    ("fan-symmetry", "user-weighted", "equal_global_impact_of_users"),
    ("fan-symmetry", "user-centric", "symmetry_on_fans"),
    ("manipulation", "active-uniform", "additivity"),
    ("manipulation", "uniform", "reasonable_lower_bound"),
    ("manipulation", "user-weighted", "equal_global_impact_of_users"),
    ("manipulation", "artist-weighted", "order_preservation"),
    ("manipulation", "user-centric", "non_unilateral_manipulability"),
    ("artist-removal", "active-uniform", "additivity"),
    ("artist-removal", "uniform", "reasonable_lower_bound"),
    ("artist-removal", "user-weighted", "equal_global_impact_of_users"),
    ("artist-removal", "user-centric", "equal_impact_of_artists"),
)


@dataclass(frozen=True)
class IndependenceCell:
    axiom_set: str
    rule: str
    axiom: str
    expected_holds: bool
    verdict: Verdict

    @property
    def matches(self) -> bool:
        return self.verdict.holds == self.expected_holds


@dataclass(frozen=True)
class IndependenceResult:
    trials: int
    seed: int
    cells: tuple[IndependenceCell, ...]

    @property
    def all_match(self) -> bool:
        return all(c.matches for c in self.cells)

    @property
    def mismatches(self) -> tuple[IndependenceCell, ...]:
        return tuple(c for c in self.cells if not c.matches)


def independence_suite(
    trials: int = 200, seed: int = 42, bounds: SizeBounds = SizeBounds()
) -> IndependenceResult:
    """Audit every deviant rule against its characterization axiom set."""
    cells = []
    verdict_cache: dict[tuple[str, str], Verdict] = {}
    for set_name, rule_name, fails in INDEPENDENCE_CLAIMS:
        rule = make_rule(rule_name, seed=seed)
        for axiom in THEOREM_AXIOM_SETS[set_name]:
            key = (rule_name, axiom)
            if key not in verdict_cache:
                verdict_cache[key] = audit(axiom, rule, trials, seed, bounds)
            cells.append(
                IndependenceCell(
                    set_name, rule_name, axiom, axiom != fails, verdict_cache[key]
                )
            )
    return IndependenceResult(trials, seed, tuple(cells))
