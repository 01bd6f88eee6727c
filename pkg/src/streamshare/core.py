"""Streaming-problem data model: artists, users, and the play-count matrix.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = tuple[tuple[int, ...], ...]


class ProblemError(ValueError):
    """Base class for invalid streaming-problem data."""


class EmptyArtists(ProblemError):
    pass


class EmptyUsers(ProblemError):
    pass


class DimensionMismatch(ProblemError):
    pass


class NegativeStream(ProblemError):
    pass


class DuplicateId(ProblemError):
    pass


class SilentUser(ProblemError):
    """A user whose stream counts sum to zero; the model assumes every user streamed something."""

    def __init__(self, user: str):
        super().__init__(f"user {user!r} has no streams")
        self.user = user


class UnknownArtist(ProblemError):
    pass


class UnknownUser(ProblemError):
    pass


class LastArtist(ProblemError):
    pass


class LastUser(ProblemError):
    pass


class BadPartition(ProblemError):
    pass


@dataclass(frozen=True)
class Problem:
    """A platform snapshot: who streamed whom how often.

    ``streams[i][j]`` is the number of times user ``users[j]`` played content
    by artist ``artists[i]``. Construct through :func:`build_problem`, which
    validates all invariants.
    """

    artists: tuple[str, ...]
    users: tuple[str, ...]
    streams: Matrix

    @property
    def n(self) -> int:
        return len(self.artists)

    @property
    def m(self) -> int:
        return len(self.users)

    def row(self, i: int) -> tuple[int, ...]:
        return self.streams[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.streams)


@dataclass(frozen=True)
class DerivedStats:
    """Per-artist and per-user statistics of one problem."""

    total_by_artist: dict[str, int]
    total_by_user: dict[str, int]
    fans: dict[str, frozenset[str]]
    listening: dict[str, frozenset[str]]
    profile: dict[str, tuple[int, ...]]


@dataclass(frozen=True)
class ArtistRemoval:
    """Raw result of deleting one artist's row.

    Removing a row can leave users with an all-zero column, which violates the
    everyone-streams-something assumption. The silenced users are surfaced
    rather than dropped silently; callers decide how to proceed.
    """

    artists: tuple[str, ...]
    users: tuple[str, ...]
    streams: Matrix
    silenced: tuple[str, ...]

    def to_problem(self) -> Problem:
        """Return the reduced problem, failing if any user was silenced."""
        if self.silenced:
            raise SilentUser(self.silenced[0])
        return build_problem(self.artists, self.users, self.streams)

    def drop_silenced(self) -> Problem:
        """Return the reduced problem with silenced users' columns removed."""
        keep = [j for j, u in enumerate(self.users) if u not in self.silenced]
        if not keep:
            raise EmptyUsers("removing the artist silenced every user")
        users = tuple(self.users[j] for j in keep)
        streams = tuple(tuple(row[j] for j in keep) for row in self.streams)
        return build_problem(self.artists, users, streams)


def build_problem(artists, users, streams) -> Problem:
    """Validate and construct a :class:`Problem`.

    Checks shape, entry types, identifier uniqueness, and that every user
    streamed at least once.
    """
    artists = tuple(artists)
    users = tuple(users)
    if not artists:
        raise EmptyArtists("at least one artist is required")
    if not users:
        raise EmptyUsers("at least one user is required")
    if len(set(artists)) != len(artists):
        raise DuplicateId("duplicate artist identifier")
    if len(set(users)) != len(users):
        raise DuplicateId("duplicate user identifier")
    rows = tuple(tuple(row) for row in streams)
    if len(rows) != len(artists):
        raise DimensionMismatch(
            f"expected {len(artists)} rows, got {len(rows)}"
        )
    for a, row in zip(artists, rows):
        if len(row) != len(users):
            raise DimensionMismatch(
                f"row for artist {a!r} has {len(row)} entries, expected {len(users)}"
            )
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise NegativeStream(f"stream count {x!r} is not an integer")
            if x < 0:
                raise NegativeStream(f"negative stream count {x} for artist {a!r}")
    for j, u in enumerate(users):
        if sum(row[j] for row in rows) == 0:
            raise SilentUser(u)
    return Problem(artists, users, rows)


def derive(p: Problem) -> DerivedStats:
    """Compute totals, fan sets, listening lists, and per-user profiles."""
    total_by_artist = {
        a: sum(row) for a, row in zip(p.artists, p.streams)
    }
    total_by_user = {}
    fans = {a: set() for a in p.artists}
    listening = {}
    profile = {}
    for j, u in enumerate(p.users):
        col = p.column(j)
        total_by_user[u] = sum(col)
        listened = frozenset(p.artists[i] for i, x in enumerate(col) if x > 0)
        listening[u] = listened
        profile[u] = col
        for a in listened:
            fans[a].add(u)
    return DerivedStats(
        total_by_artist=total_by_artist,
        total_by_user=total_by_user,
        fans={a: frozenset(s) for a, s in fans.items()},
        listening=listening,
        profile=profile,
    )


def remove_artist(p: Problem, artist: str) -> ArtistRemoval:
    """Delete one artist's row, reporting any users left with zero streams."""
    if artist not in p.artists:
        raise UnknownArtist(f"unknown artist {artist!r}")
    if p.n < 2:
        raise LastArtist("cannot remove the only artist")
    i = p.artists.index(artist)
    artists = p.artists[:i] + p.artists[i + 1:]
    streams = p.streams[:i] + p.streams[i + 1:]
    silenced = tuple(
        u for j, u in enumerate(p.users)
        if sum(row[j] for row in streams) == 0
    )
    return ArtistRemoval(artists, p.users, streams, silenced)


def remove_user(p: Problem, user: str) -> Problem:
    """Delete one user's column; the result is always a valid problem."""
    if user not in p.users:
        raise UnknownUser(f"unknown user {user!r}")
    if p.m < 2:
        raise LastUser("cannot remove the only user")
    j = p.users.index(user)
    users = p.users[:j] + p.users[j + 1:]
    streams = tuple(row[:j] + row[j + 1:] for row in p.streams)
    return build_problem(p.artists, users, streams)


def split_by_users(p: Problem, first, second) -> tuple[Problem, Problem]:
    """Split the user set into two disjoint nonempty groups, keeping all artists.

    Column order within each part follows the original problem.
    """
    first = set(first)
    second = set(second)
    if not first or not second:
        raise BadPartition("both parts must be nonempty")
    if first & second:
        raise BadPartition("parts overlap")
    if first | second != set(p.users):
        raise BadPartition("parts do not cover the user set")
    return _restrict(p, first), _restrict(p, second)


def _restrict(p: Problem, keep: set[str]) -> Problem:
    cols = [j for j, u in enumerate(p.users) if u in keep]
    users = tuple(p.users[j] for j in cols)
    streams = tuple(tuple(row[j] for j in cols) for row in p.streams)
    return build_problem(p.artists, users, streams)
