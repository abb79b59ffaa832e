"""Graph readers and writers: edge-list text, JSON and DOT overlays."""

from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any, Iterable, Mapping, Sequence

from .errors import DomainError
from .graph import Graph, build_graph, from_labeled_edges


def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line; ``#`` starts a comment.

    A bare ``v`` line declares an isolated vertex.  Labels must be integers;
    they are renumbered densely in increasing order.
    """
    pairs = []
    isolated = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise DomainError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if len(vals) == 1:
            isolated.append(vals[0])
        elif len(vals) == 2:
            pairs.append((vals[0], vals[1]))
        else:
            raise DomainError(f"line {lineno}: expected 'u v', got {raw!r}")
        if min(vals) < 0:
            raise DomainError(f"line {lineno}: negative vertex id")
    return from_labeled_edges(pairs, isolated)


def graph_to_dict(G: Graph) -> dict[str, Any]:
    out: dict[str, Any] = {"n": G.n, "edges": [[u, v] for u, v in G.edges()]}
    if G.labels != tuple(range(G.n)):
        out["labels"] = list(G.labels)
    return out


def graph_from_dict(data: Mapping[str, Any]) -> Graph:
    try:
        n = int(data["n"])
        edges = [tuple(e) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed graph document: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise DomainError("every edge must be a pair")
    return build_graph(edges, n=n, labels=data.get("labels"))


def dumps_graph(G: Graph) -> str:
    return json.dumps(graph_to_dict(G))


def loads_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def read_graph(path: str | FsPath) -> Graph:
    """Read JSON (by a leading ``{``) or edge-list text."""
    text = FsPath(path).read_text()
    if not text.strip():
        raise DomainError(f"{path}: empty input")
    if text.lstrip().startswith("{"):
        return loads_graph(text)
    return parse_edge_list(text)


_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


def to_dot(G: Graph, highlight: Mapping[str, Iterable[int]] | None = None,
           paths: Sequence[Sequence[int]] = (), name: str = "G") -> str:
    """DOT text for ``G``; ``highlight`` colours named vertex groups, ``paths`` bold edges."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    colour: dict[int, str] = {}
    for i, (group, vs) in enumerate((highlight or {}).items()):
        c = _PALETTE[i % len(_PALETTE)]
        lines.append(f"  // {group}: {c}")
        for v in vs:
            colour.setdefault(v, c)
    for v in range(G.n):
        attrs = [f'label="{G.labels[v]}"']
        if v in colour:
            attrs.append(f'color="{colour[v]}", style=filled, fillcolor="{colour[v]}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    bold = {}
    for i, p in enumerate(paths):
        c = _PALETTE[(i + 3) % len(_PALETTE)]
        for a, b in zip(p, p[1:]):
            bold[(min(a, b), max(a, b))] = c
    for u, v in G.edges():
        if (u, v) in bold:
            lines.append(f'  {u} -- {v} [penwidth=3, color="{bold[(u, v)]}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
