"""Oriented overlap graphs, local complementation, and the graph move gcdr.

The overlap graph of a signed permutation has one vertex per internal pointer.
Two vertices share an edge exactly when their occurrence arcs strictly cross
by position key (nesting and disjointness give no edge).  A vertex is oriented
when its two occurrences sit on opposite-sign entries -- precisely the
condition for cdr to apply there.

Local complementation at a vertex set S complements all edges inside S and
flips every orientation flag in S.  gcdr at an oriented vertex v is local
complementation at the closed neighborhood of v; it mirrors cdr at v through
the overlap-graph construction, leaving v unoriented and isolated.

Vertices are labeled by their pointer's low value, an int; graph equality is
label-sensitive exact equality, not isomorphism.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable

from . import ops
from .ops import NotApplicableError
from .perm import as_entries


def _label(v: int) -> str:
    return f"({v},{v + 1})"


_LABEL_RE = re.compile(r"\((\d+),(\d+)\)")


def _parse_label(text: str) -> int:
    m = _LABEL_RE.fullmatch(text)
    if not m or int(m.group(2)) != int(m.group(1)) + 1:
        raise ValueError(f"bad vertex label {text!r}, expected \"(i,i+1)\"")
    return int(m.group(1))


@dataclass(frozen=True)
class OrientedGraph:
    """A finite graph with a per-vertex oriented/unoriented flag.

    Immutable and hashable, so graphs serve directly as memo keys in the game
    solver and the search code.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    oriented: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "oriented", frozenset(self.oriented))
        if not self.oriented <= self.vertices:
            raise ValueError("oriented flags on unknown vertices")

    def is_oriented(self, v: int) -> bool:
        return v in self.oriented

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u if w == v else w for u, w in self.edges if v in (u, w))

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def oriented_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.oriented))

    def isolated_vertices(self) -> tuple[int, ...]:
        touched = {u for e in self.edges for u in e}
        return tuple(sorted(self.vertices - touched))


def build_overlap_graph(p) -> OrientedGraph:
    """The oriented overlap graph of a signed permutation.

    >>> g = build_overlap_graph((1, -5, -2, 4, -3, 6))
    >>> sorted(g.oriented)
    [1, 3, 4, 5]
    """
    entries = as_entries(p)
    arcs = ops._arcs(entries)
    m = len(arcs)
    edges = set()
    for pi in range(m):
        k1, k2 = arcs[pi][0], arcs[pi][1]
        for qi in range(pi + 1, m):
            l1, l2 = arcs[qi][0], arcs[qi][1]
            if ops._interleave(k1, k2, l1, l2):
                edges.add((pi + 1, qi + 1))
    oriented = frozenset(i + 1 for i in range(m) if not arcs[i][4])
    return OrientedGraph(frozenset(range(1, m + 1)), frozenset(edges), oriented)


def local_complement(g: OrientedGraph, s: Iterable[int]) -> OrientedGraph:
    """Complement the edges inside s and flip orientation flags on s.
    Vertices of s outside the graph are ignored, so a disjoint s is a no-op.
    An involution for fixed s."""
    s = frozenset(s) & g.vertices
    inside = sorted(s)
    new_edges = {e for e in g.edges if not (e[0] in s and e[1] in s)}
    for a in range(len(inside)):
        for b in range(a + 1, len(inside)):
            e = (inside[a], inside[b])
            if e not in g.edges:
                new_edges.add(e)
    return OrientedGraph(g.vertices, frozenset(new_edges), g.oriented ^ s)


def gcdr(g: OrientedGraph, v: int) -> OrientedGraph:
    """Local complementation at the closed neighborhood of the oriented vertex
    v.  Afterwards v is unoriented and isolated.  Raises NotApplicableError on
    an unoriented v; see try_gcdr for the lenient form."""
    if v not in g.vertices:
        raise ValueError(f"vertex {v} not in graph")
    if v not in g.oriented:
        raise NotApplicableError(f"gcdr at {v}: vertex is not oriented")
    return local_complement(g, g.closed_neighborhood(v))


def try_gcdr(g: OrientedGraph, v: int) -> tuple[OrientedGraph, bool]:
    """Lenient gcdr: unoriented vertices leave the graph unchanged."""
    if v not in g.vertices:
        raise ValueError(f"vertex {v} not in graph")
    if v not in g.oriented:
        return g, False
    return local_complement(g, g.closed_neighborhood(v)), True


def apply_gcdr_sequence(g: OrientedGraph, seq: Iterable[int]) -> OrientedGraph:
    """Apply gcdr at each vertex in turn (strict)."""
    for v in seq:
        g = gcdr(g, v)
    return g


def is_oriented_sequence(g: OrientedGraph, seq: Iterable[int]) -> bool:
    """True when each vertex of seq is oriented at its turn."""
    for v in seq:
        if v not in g.oriented:
            return False
        g = gcdr(g, v)
    return True


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    oriented: bool  # contains at least one oriented vertex


@dataclass(frozen=True)
class ComponentReport:
    """Connected classes of size >= 2 ("components") and isolated vertices,
    each tagged with its orientation status.  Together they partition the
    vertex set."""

    components: tuple[Component, ...]
    isolated: tuple[tuple[int, bool], ...]   # (vertex, oriented flag)


def component_report(g: OrientedGraph) -> ComponentReport:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[int] = set()
    components = []
    isolated = []
    for v in sorted(g.vertices):
        if v in seen:
            continue
        if not adj[v]:
            isolated.append((v, v in g.oriented))
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        components.append(Component(frozenset(comp), bool(comp & g.oriented)))
    components.sort(key=lambda c: min(c.vertices))
    return ComponentReport(tuple(components), tuple(isolated))


def has_unoriented_component(g: OrientedGraph) -> bool:
    """A component (size >= 2) with no oriented vertex exists.  Isolated
    unoriented vertices do not count."""
    return any(not c.oriented for c in component_report(g).components)


def is_terminal(g: OrientedGraph) -> bool:
    """No oriented vertex remains (the end state of a maximal sequence)."""
    return not g.oriented


def is_total_terminal(g: OrientedGraph) -> bool:
    """Only isolated, unoriented vertices remain."""
    return not g.oriented and not g.edges


# ---------------------------------------------------------------------------
# serialization


def to_text(g: OrientedGraph) -> str:
    """Line-oriented form: one vertex line then one edge line per element,
    deterministically ordered.  Parsed back by graph_from_text."""
    lines = [
        f"vertex {_label(v)} {'oriented' if v in g.oriented else 'unoriented'}"
        for v in sorted(g.vertices)
    ]
    lines += [f"edge {_label(u)} {_label(v)}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + ("\n" if lines else "")


def graph_from_text(text: str) -> OrientedGraph:
    """Parse the to_text form.  Blank lines and '#' comments are ignored."""
    vertices = set()
    edges = set()
    oriented = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 3 and parts[2] in ("oriented", "unoriented"):
            v = _parse_label(parts[1])
            vertices.add(v)
            if parts[2] == "oriented":
                oriented.add(v)
        elif parts[0] == "edge" and len(parts) == 3:
            edges.add((_parse_label(parts[1]), _parse_label(parts[2])))
        else:
            raise ValueError(f"line {ln}: cannot parse graph line {raw!r}")
    return OrientedGraph(frozenset(vertices), frozenset(edges), frozenset(oriented))


def to_dot(g: OrientedGraph) -> str:
    """Graphviz form; oriented vertices get style=filled."""
    lines = ["graph overlap {", "  node [shape=circle];"]
    for v in sorted(g.vertices):
        attr = " [style=filled]" if v in g.oriented else ""
        lines.append(f'  "{_label(v)}"{attr};')
    for u, v in sorted(g.edges):
        lines.append(f'  "{_label(u)}" -- "{_label(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_oriented_graph(rng: random.Random, n_vertices: int,
                          edge_probability: float = 0.5) -> OrientedGraph:
    """Erdos-Renyi graph on vertices 1..n with independent orientation flags."""
    verts = range(1, n_vertices + 1)
    edges = frozenset(
        (u, v) for u in verts for v in verts
        if u < v and rng.random() < edge_probability
    )
    oriented = frozenset(v for v in verts if rng.random() < 0.5)
    return OrientedGraph(frozenset(verts), edges, oriented)
