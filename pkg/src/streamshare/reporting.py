"""CSV matrix ingestion and report serialization.

Reports carry payouts both as exact fraction strings (authoritative) and as
fixed six-decimal renderings. Rendering is deterministic: the same inputs
produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from . import axioms
from .core import Problem, build_problem
from .game import dual_game, optimistic_game, pessimistic_game
from .indices import make_rule, rewards

SCHEMA_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


def parse_matrix(text: str) -> Problem:
    """Parse the CSV matrix format: header "artist,<users...>", one row per artist."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]  # ignore blank lines
    if not rows:
        raise ParseError("empty input")
    header = rows[0]
    if len(header) < 2:
        raise ParseError("header must name at least one user", line=1)
    users = [c.strip() for c in header[1:]]
    artists = []
    streams = []
    width = len(header)
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise ParseError(
                f"expected {width} fields, got {len(row)}", line=lineno
            )
        artists.append(row[0].strip())
        counts = []
        for col, cell in enumerate(row[1:], start=2):
            try:
                value = int(cell.strip())
            except ValueError:
                raise ParseError(
                    f"stream count {cell.strip()!r} is not an integer",
                    line=lineno, column=col,
                ) from None
            counts.append(value)
        streams.append(counts)
    if not artists:
        raise ParseError("no artist rows")
    return build_problem(artists, users, streams)


def serialize_matrix(p: Problem) -> str:
    """Inverse of :func:`parse_matrix` (modulo whitespace)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["artist", *p.users])
    for a, row in zip(p.artists, p.streams):
        writer.writerow([a, *row])
    return out.getvalue()


def _frac(x: Fraction) -> str:
    return str(x)


def _dec(x: Fraction) -> str:
    return f"{float(x):.6f}"


# ---------------------------------------------------------------------------
# Documents


def allocation_document(
    p: Problem,
    rule_names,
    price: Fraction = Fraction(1),
    seed: int = 42,
) -> dict:
    """One report section per requested index; ``price`` scales displayed payouts only."""
    sections = []
    for name in rule_names:
        rule = make_rule(name, seed=seed)
        vec = rule(p)
        report = rewards(vec, p)
        sections.append({
            "index": name,
            "values": [_frac(v) for v in vec.values],
            "rewards": [
                {
                    "artist": a,
                    "fraction": _frac(r),
                    "decimal": _dec(r),
                    "payout": _dec(r * price),
                }
                for a, r in zip(p.artists, report.rewards)
            ],
            "reward_total": _frac(sum(report.rewards, Fraction(0))),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "allocation",
        "problem": {
            "artists": list(p.artists),
            "users": list(p.users),
            "n": p.n,
            "m": p.m,
        },
        "price_multiplier": _frac(price),
        "sections": sections,
    }


def game_export_lines(p: Problem, stance: str, cap: int | None = None) -> list[str]:
    """One "bitmask,worth" line per coalition, ascending bitmask order.

    Bit k of the mask is the artist at position k, so the mask string's
    rightmost character is the first artist.
    """
    kwargs = {} if cap is None else {"cap": cap}
    if stance == "pessimistic":
        g = pessimistic_game(p, **kwargs)
    elif stance == "optimistic":
        g = optimistic_game(p, **kwargs)
    elif stance == "dual":
        g = dual_game(pessimistic_game(p, **kwargs))
    else:
        raise ValueError(f"unknown stance {stance!r}")
    return [
        f"{mask:0{p.n}b},{worth}" for mask, worth in enumerate(g.worth)
    ]


def game_document(p: Problem, stance: str, cap: int | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "game",
        "stance": stance,
        "players": list(p.artists),
        "rows": game_export_lines(p, stance, cap),
    }


def verdict_to_dict(v: axioms.Verdict) -> dict:
    out = {
        "axiom": v.axiom,
        "rule": v.rule,
        "outcome": v.outcome,
        "trials": v.trials,
        "grid_cases": v.grid_cases,
        "skipped": v.skipped,
        "seed": v.seed,
    }
    if v.witness is not None:
        out["witness"] = v.witness
        out["details"] = v.details
    return out


def audit_document(verdicts) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "audit",
        "verdicts": [verdict_to_dict(v) for v in verdicts],
    }


def table_document(result: axioms.TableResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "table",
        "trials": result.trials,
        "seed": result.seed,
        "all_match": result.all_match,
        "cells": [
            {
                "axiom": c.axiom,
                "rule": c.rule,
                "expected": "holds" if c.expected_holds else "counterexample",
                "matches": c.matches,
                **verdict_to_dict(c.verdict),
            }
            for c in result.cells
        ],
    }


def independence_document(result: axioms.IndependenceResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "independence",
        "trials": result.trials,
        "seed": result.seed,
        "all_match": result.all_match,
        "cells": [
            {
                "axiom_set": c.axiom_set,
                "axiom": c.axiom,
                "rule": c.rule,
                "expected": "holds" if c.expected_holds else "counterexample",
                "matches": c.matches,
                **verdict_to_dict(c.verdict),
            }
            for c in result.cells
        ],
    }


# ---------------------------------------------------------------------------
# Rendering


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(doc: dict) -> str:
    kind = doc["kind"]
    if kind == "allocation":
        return _text_allocation(doc)
    if kind == "game":
        return "\n".join(doc["rows"]) + "\n"
    if kind == "audit":
        lines = [_text_verdict(v) for v in doc["verdicts"]]
        return "".join(lines)
    if kind in ("table", "independence"):
        return _text_cells(doc)
    raise ValueError(f"unknown document kind {kind!r}")


def _text_allocation(doc: dict) -> str:
    p = doc["problem"]
    lines = [
        f"problem: {p['n']} artists ({', '.join(p['artists'])}), "
        f"{p['m']} users ({', '.join(p['users'])})",
        f"price multiplier: {doc['price_multiplier']}",
    ]
    for sec in doc["sections"]:
        lines.append(f"index {sec['index']}:")
        for artist, value, rw in zip(p["artists"], sec["values"], sec["rewards"]):
            lines.append(
                f"  {artist}: value={value} reward={rw['fraction']} "
                f"({rw['decimal']}) payout={rw['payout']}"
            )
        lines.append(f"  reward total: {sec['reward_total']}")
    return "\n".join(lines) + "\n"


def _text_matrix(d: dict, indent: str = "    ") -> list[str]:
    lines = [indent + "artist," + ",".join(d["users"])]
    for a, row in zip(d["artists"], d["streams"]):
        lines.append(indent + a + "," + ",".join(str(x) for x in row))
    return lines


def _text_verdict(v: dict, prefix: str = "") -> str:
    lines = [
        f"{prefix}{v['axiom']} x {v['rule']}: {v['outcome']} "
        f"(grid={v['grid_cases']}, trials={v['trials']}, "
        f"skipped={v['skipped']}, seed={v['seed']})"
    ]
    if "witness" in v:
        details = ", ".join(f"{k}={val}" for k, val in sorted(v["details"].items()))
        lines.append(f"  violation: {details}")
        lines.append("  witness problem:")
        lines.extend(_text_matrix(v["witness"]["problem"]))
        if "modified" in v["witness"]:
            lines.append("  witness modified problem:")
            lines.extend(_text_matrix(v["witness"]["modified"]))
        for key in ("artist", "user", "first_users", "second_users"):
            if key in v["witness"]:
                lines.append(f"  witness {key}: {v['witness'][key]}")
    return "\n".join(lines) + "\n"


def _text_cells(doc: dict) -> str:
    head = "axiom satisfaction table" if doc["kind"] == "table" else "independence suite"
    lines = [
        f"{head}: trials={doc['trials']} seed={doc['seed']} "
        f"all_match={doc['all_match']}",
    ]
    out = "".join(lines) + "\n"
    for c in doc["cells"]:
        mark = "ok " if c["matches"] else "MISMATCH "
        label = f"[{c['axiom_set']}] " if "axiom_set" in c else ""
        out += mark + label + _text_verdict(c, prefix="")
    return out
