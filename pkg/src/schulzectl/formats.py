"""Text formats: election files, relation lists, edge lists, graph export.

Election file::

    # comment
    #@ distinguished: p          (annotation, kept in order)
    candidates: a, b, c
    pool: d                      (optional; pool members also appear in ballots)
    3: a > b > c > d
    unregistered:                (optional; ballots below form W)
    1: d > a > b > c

Relations file: ``winner > loser : weight`` per line, optionally preceded by
a ``candidates:`` line fixing the order.  Edge list: ``u v`` per line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .election import (
    CANDIDATE_RE,
    Election,
    PairMatrix,
    ValidationError,
    compute_net_advantage,
    winners,
)


class FormatError(ValidationError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class ElectionFile:
    election: Election
    pool: tuple[str, ...] = ()
    unregistered: tuple[tuple[int, tuple[str, ...]], ...] = ()
    annotations: dict[str, str] = field(default_factory=dict)


_COUNT_RE = re.compile(r"^\s*(\S+?)\s*:(.*)$")


def _names(text: str, lineno: int, offset: int) -> list[str]:
    out = []
    col = offset
    for raw in text.split(","):
        name = raw.strip()
        here = col + (len(raw) - len(raw.lstrip())) + 1
        if not name:
            raise FormatError(lineno, here, "empty candidate name")
        if not re.fullmatch(CANDIDATE_RE, name):
            raise FormatError(lineno, here, f"bad characters in candidate name {name!r}")
        if name in out:
            raise FormatError(lineno, here, f"duplicate candidate {name!r}")
        out.append(name)
        col += len(raw) + 1
    return out


def _ballot(line: str, lineno: int, cands: list[str]) -> tuple[int, tuple[str, ...]]:
    m = _COUNT_RE.match(line)
    if not m:
        raise FormatError(lineno, 1, "expected 'COUNT: a > b > ...'")
    count_text, rest = m.group(1), m.group(2)
    if not count_text.isdigit() or int(count_text) < 1:
        raise FormatError(lineno, line.index(count_text) + 1, f"bad voter count {count_text!r}")
    col = line.index(":") + 1
    ranking: list[str] = []
    known = set(cands)
    for raw in rest.split(">"):
        name = raw.strip()
        here = col + (len(raw) - len(raw.lstrip())) + 1
        if not name:
            raise FormatError(lineno, here, "empty position in ranking")
        if not re.fullmatch(CANDIDATE_RE, name):
            raise FormatError(lineno, here, f"bad characters in candidate name {name!r}")
        if name not in known:
            raise FormatError(lineno, here, f"unknown candidate {name!r}")
        if name in ranking:
            raise FormatError(lineno, here, f"candidate {name!r} ranked twice")
        ranking.append(name)
        col += len(raw) + 1
    missing = [c for c in cands if c not in ranking]
    if missing:
        raise FormatError(lineno, len(line), f"ranking omits {', '.join(missing)}")
    return int(count_text), tuple(ranking)


def parse_election(text: str) -> ElectionFile:
    cands: list[str] | None = None
    pool: list[str] = []
    ballots: list[tuple[int, tuple[str, ...]]] = []
    unregistered: list[tuple[int, tuple[str, ...]]] = []
    annotations: dict[str, str] = {}
    target = ballots
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        stripped = line.strip()
        if stripped.startswith("#@"):
            body = stripped[2:]
            if ":" not in body:
                raise FormatError(lineno, 1, "annotation needs 'key: value'")
            key, value = body.split(":", 1)
            annotations[key.strip()] = value.strip()
            continue
        if not stripped or stripped.startswith("#"):
            continue
        head = stripped.split(":", 1)[0].strip()
        offset = line.index(":") + 1 if ":" in line else 0
        if head == "candidates":
            if cands is not None:
                raise FormatError(lineno, 1, "second 'candidates:' line")
            cands = _names(line[offset:], lineno, offset)
        elif head == "pool":
            if cands is None:
                raise FormatError(lineno, 1, "'pool:' before 'candidates:'")
            pool = _names(line[offset:], lineno, offset)
            clash = [d for d in pool if d in cands]
            if clash:
                raise FormatError(lineno, offset + 1, f"pool candidate {clash[0]!r} already declared")
        elif head == "unregistered":
            if line[offset:].strip():
                raise FormatError(lineno, offset + 1, "'unregistered:' takes no value")
            target = unregistered
        else:
            if cands is None:
                raise FormatError(lineno, 1, "ballot before 'candidates:' line")
            target.append(_ballot(line, lineno, cands + pool))
    if cands is None:
        raise FormatError(1, 1, "missing 'candidates:' line")
    e = Election(tuple(cands + pool), tuple(ballots))
    return ElectionFile(e, tuple(pool), tuple(unregistered), annotations)


def serialize_election(
    e: Election | ElectionFile,
    pool: tuple[str, ...] = (),
    unregistered=(),
    annotations: dict[str, str] | None = None,
) -> str:
    """Canonical text: annotations, candidates, pool, ballots, unregistered."""
    if isinstance(e, ElectionFile):
        pool, unregistered, annotations, e = e.pool, e.unregistered, e.annotations, e.election
    lines = [f"#@ {k}: {v}" for k, v in (annotations or {}).items()]
    base = [c for c in e.candidates if c not in set(pool)]
    lines.append("candidates: " + ", ".join(base))
    if pool:
        lines.append("pool: " + ", ".join(pool))
    lines += [f"{n}: {' > '.join(r)}" for n, r in e.ballots]
    if unregistered:
        lines.append("unregistered:")
        lines += [f"{n}: {' > '.join(r)}" for n, r in unregistered]
    return "\n".join(lines) + "\n"


def canonical(text: str) -> str:
    return serialize_election(parse_election(text))


# --- relations ------------------------------------------------------------


def parse_relations(text: str) -> tuple[tuple[str, ...], list[tuple[str, str, int]]]:
    cands: list[str] | None = None
    seen: list[str] = []
    rels: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.strip().startswith("candidates:"):
            off = line.index(":") + 1
            cands = _names(line[off:], lineno, off)
            continue
        m = re.fullmatch(r"\s*(\S+)\s*>\s*(\S+)\s*:\s*(\S+)\s*", line)
        if not m:
            raise FormatError(lineno, 1, "expected 'winner > loser : weight'")
        w, l, weight = m.groups()
        for name in (w, l):
            if not re.fullmatch(CANDIDATE_RE, name):
                raise FormatError(lineno, line.index(name) + 1, f"bad characters in candidate name {name!r}")
            if cands is not None and name not in cands:
                raise FormatError(lineno, line.index(name) + 1, f"unknown candidate {name!r}")
            if name not in seen:
                seen.append(name)
        try:
            value = int(weight)
        except ValueError:
            raise FormatError(lineno, line.rindex(weight) + 1, f"weight {weight!r} is not an integer") from None
        if value < 0:
            raise FormatError(lineno, line.rindex(weight) + 1, "weight must be nonnegative")
        rels.append((w, l, value))
    return tuple(cands if cands is not None else seen), rels


# --- graphs ---------------------------------------------------------------


def parse_edge_list(text: str) -> tuple[tuple[str, ...], list[tuple[str, str]]]:
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) > 2:
            raise FormatError(lineno, 1, "expected 'u v' (or a lone vertex)")
        for name in parts:
            if not re.fullmatch(CANDIDATE_RE, name):
                raise FormatError(lineno, raw.index(name) + 1, f"bad characters in vertex name {name!r}")
            if name not in verts:
                verts.append(name)
        if len(parts) == 2:
            edges.append((parts[0], parts[1]))
    return tuple(verts), edges


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def election_dot(e: Election, net: PairMatrix | None = None) -> str:
    """Directed graph with an edge a -> b labelled netadv(a, b) for every positive margin."""
    net = net or compute_net_advantage(e)
    ws = set(winners(e))
    lines = ["digraph election {"]
    for c in e.candidates:
        extra = " [peripheries=2]" if c in ws else ""
        lines.append(f"  {_quote(c)}{extra};")
    for a in e.candidates:
        for b in e.candidates:
            w = net[a, b]
            if w > 0:
                lines.append(f'  {_quote(a)} -> {_quote(b)} [label="{w}", weight={w}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def election_json(e: Election) -> str:
    net = compute_net_advantage(e)
    edges = [
        {"from": a, "to": b, "weight": net[a, b]}
        for a in e.candidates
        for b in e.candidates
        if net[a, b] > 0
    ]
    return json.dumps(
        {"candidates": list(e.candidates), "edges": edges, "winners": list(winners(e))},
        sort_keys=True,
    ) + "\n"
