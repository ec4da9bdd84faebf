"""Finite directed multigraphs stored as edge-multiplicity matrices.

A multiplicity is either a nonnegative ``int`` or :data:`INF` (countably many
parallel edges).  ``INF`` is ``math.inf`` so that ``INF + k == INF`` and
``INF >= k`` hold without special casing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

INF = math.inf
Multiplicity = Union[int, float]

_U64_MAX = 2**64 - 1
_LABEL_RE = re.compile(r'^[^\s#|,{}"]+$')


class GraphError(ValueError):
    """Invalid graph data or an operation applied outside its domain."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


def _check_mult(m) -> Multiplicity:
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        raise GraphError(f"multiplicity must be a nonnegative int or INF, got {m!r}")
    if m < 0:
        raise GraphError(f"negative multiplicity {m}")
    if m > _U64_MAX:
        raise GraphError(f"multiplicity {m} exceeds 64-bit range")
    return m


def mult_str(m: Multiplicity) -> str:
    return "inf" if m == INF else str(m)


@dataclass(frozen=True)
class Graph:
    """Immutable multigraph; ``mult[v][w]`` counts edges from ``v`` to ``w``.

    Vertices are indexed in declaration order and every matrix or bitset in the
    package indexes against that order.
    """

    labels: tuple[str, ...]
    mult: tuple[tuple[Multiplicity, ...], ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        if len(set(labels)) != n:
            dup = next(x for x in labels if labels.count(x) > 1)
            raise GraphError(f"duplicate vertex label {dup!r}")
        for lab in labels:
            if not _LABEL_RE.match(lab):
                raise GraphError(f"invalid vertex label {lab!r}")
        rows = tuple(tuple(_check_mult(m) for m in row) for row in self.mult)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GraphError(f"multiplicity matrix must be {n}x{n}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "mult", rows)

    @classmethod
    def from_matrix(cls, mult: Sequence[Sequence[Multiplicity]],
                    labels: Sequence[str] | None = None) -> "Graph":
        if labels is None:
            labels = [f"v{i}" for i in range(len(mult))]
        return cls(tuple(labels), tuple(tuple(r) for r in mult))

    @classmethod
    def from_edges(cls, labels: Sequence[str],
                   edges: Iterable[tuple[str, str, Multiplicity]]) -> "Graph":
        idx = {lab: i for i, lab in enumerate(labels)}
        m = [[0] * len(labels) for _ in labels]
        for s, r, k in edges:
            m[idx[s]][idx[r]] = m[idx[s]][idx[r]] + k
        return cls.from_matrix(m, labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(x) for x in labels]

    # vertex classification -------------------------------------------------

    def is_sink(self, v: int) -> bool:
        return all(m == 0 for m in self.mult[v])

    def is_infinite_emitter(self, v: int) -> bool:
        return any(m == INF for m in self.mult[v])

    def is_regular(self, v: int) -> bool:
        return not self.is_sink(v) and not self.is_infinite_emitter(v)

    @property
    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if self.is_sink(v)]

    @property
    def infinite_emitters(self) -> list[int]:
        return [v for v in range(self.n) if self.is_infinite_emitter(v)]

    @property
    def regular_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.is_regular(v)]

    @property
    def is_row_finite(self) -> bool:
        return not self.infinite_emitters

    @property
    def is_amplified(self) -> bool:
        return all(m == 0 or m == INF for row in self.mult for m in row)

    def edge_count(self) -> Multiplicity:
        return sum((m for row in self.mult for m in row), 0)

    def successors(self, v: int) -> list[int]:
        return [w for w, m in enumerate(self.mult[v]) if m]

    def predecessors(self, w: int) -> list[int]:
        return [v for v in range(self.n) if self.mult[v][w]]

    # reachability ----------------------------------------------------------

    @cached_property
    def _reach_pos_masks(self) -> tuple[int, ...]:
        n = self.n
        succ = [sum(1 << w for w in self.successors(v)) for v in range(n)]
        out = []
        for v in range(n):
            seen = 0
            frontier = succ[v]
            while frontier & ~seen:
                new = frontier & ~seen
                seen |= new
                frontier = 0
                for w in range(n):
                    if new >> w & 1:
                        frontier |= succ[w]
            out.append(seen)
        return tuple(out)

    def reachability(self) -> "Reachability":
        return Reachability(self._reach_pos_masks)

    def vertex_set(self, mask: int) -> list[str]:
        return [self.labels[i] for i in range(self.n) if mask >> i & 1]

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for i in self.indices(labels):
            mask |= 1 << i
        return mask

    def __str__(self) -> str:
        return format_graph(self)


@dataclass(frozen=True)
class Reachability:
    """Path relations as row bitmasks: bit ``w`` of ``pos[v]`` means a path of
    positive length from ``v`` to ``w``.  ``refl`` adds the length-zero paths."""

    pos: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.pos)

    @property
    def refl(self) -> tuple[int, ...]:
        return tuple(m | 1 << v for v, m in enumerate(self.pos))

    def reach_pos(self, v: int, w: int) -> bool:
        return bool(self.pos[v] >> w & 1)

    def reach(self, v: int, w: int) -> bool:
        return v == w or self.reach_pos(v, w)

    def matrix(self, reflexive: bool = False) -> list[list[bool]]:
        rows = self.refl if reflexive else self.pos
        return [[bool(rows[v] >> w & 1) for w in range(self.n)] for v in range(self.n)]


def reachability(g: Graph) -> Reachability:
    return g.reachability()


def vertex_matrix(g: Graph) -> list[list[Multiplicity]]:
    return [list(row) for row in g.mult]


def regular_rows(g: Graph) -> list[int]:
    """Vertices whose rows survive in the reduced vertex matrix."""
    return g.regular_vertices


# cycles ----------------------------------------------------------------------

def simple_cycle_count_at(g: Graph, v: int, cap: int = 2) -> int:
    """Number of simple cycles based at ``v``, saturated at ``cap``.

    A simple cycle based at ``v`` is a closed path of positive length that
    visits ``v`` only at its two ends; other vertices may repeat.  Parallel
    edges give distinct cycles.  Any cycle away from ``v`` that can be entered
    from ``v`` and left towards ``v`` yields infinitely many.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    n = g.n
    m = g.mult
    others = [u for u in range(n) if u != v]
    # vertices reachable from v and co-reachable to v, both avoiding v
    fwd = _closure_avoiding(g, [u for u in others if m[v][u]], v, forward=True)
    bwd = _closure_avoiding(g, [u for u in others if m[u][v]], v, forward=False)
    live = fwd & bwd
    total = m[v][v]
    if total >= cap:
        return cap
    if not live:
        return int(total)
    if _has_cycle(g, live):
        return cap

    # walks from u to v through live vertices; the live subgraph is acyclic
    memo: dict[int, Multiplicity] = {}

    def to_base(u: int) -> Multiplicity:
        if u in memo:
            return memo[u]
        acc = m[u][v]
        for w in live:
            if m[u][w] and acc < cap:
                acc = acc + _mul(m[u][w], to_base(w))
        memo[u] = min(acc, cap)
        return memo[u]

    for u in live:
        if m[v][u]:
            total = total + _mul(m[v][u], to_base(u))
            if total >= cap:
                return cap
    return int(total)


def _mul(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    return 0 if a == 0 or b == 0 else a * b


def _closure_avoiding(g: Graph, start: list[int], avoid: int, forward: bool) -> set[int]:
    seen = set(start)
    stack = list(start)
    while stack:
        u = stack.pop()
        nxt = g.successors(u) if forward else g.predecessors(u)
        for w in nxt:
            if w != avoid and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _has_cycle(g: Graph, vertices: set[int]) -> bool:
    state = dict.fromkeys(vertices, 0)  # 0 new, 1 on stack, 2 done
    for root in vertices:
        if state[root]:
            continue
        stack = [(root, iter(g.successors(root)))]
        state[root] = 1
        while stack:
            u, it = stack[-1]
            for w in it:
                if w not in state:
                    continue
                if state[w] == 1:
                    return True
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(g.successors(w))))
                    break
            else:
                state[u] = 2
                stack.pop()
    return False


def satisfies_condition_K(g: Graph) -> bool:
    return all(simple_cycle_count_at(g, v, 2) != 1 for v in range(g.n))


def induced_subgraph(g: Graph, vertices: Iterable[int] | int) -> Graph:
    """Restriction of ``g`` to a vertex subset (indices or bitmask); order kept."""
    if isinstance(vertices, int):
        keep = [i for i in range(g.n) if vertices >> i & 1]
    else:
        keep = sorted(set(vertices))
    return Graph(tuple(g.labels[i] for i in keep),
                 tuple(tuple(g.mult[i][j] for j in keep) for i in keep))


def is_amplified(g: Graph) -> bool:
    return g.is_amplified


def permute(g: Graph, order: Sequence[int]) -> Graph:
    """Relabel so that new vertex ``i`` is old vertex ``order[i]``."""
    return Graph(tuple(g.labels[i] for i in order),
                 tuple(tuple(g.mult[i][j] for j in order) for i in order))


# text format -----------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    ``vertices a b ...`` declares vertices (may repeat on several lines),
    ``edge src dst mult`` adds ``mult`` parallel edges (``inf`` allowed) and
    ``#`` starts a comment.  Repeated edge lines for the same pair add up.
    """
    labels: list[str] = []
    seen: dict[str, int] = {}
    edges: list[tuple[int, str, str, Multiplicity]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "vertices":
            if len(parts) < 2:
                raise GraphParseError(lineno, "'vertices' needs at least one name")
            for name in parts[1:]:
                if name in seen:
                    raise GraphParseError(lineno, f"duplicate vertex label {name!r}")
                if not _LABEL_RE.match(name):
                    raise GraphParseError(lineno, f"invalid vertex label {name!r}")
                seen[name] = lineno
                labels.append(name)
        elif kw == "edge":
            if len(parts) != 4:
                raise GraphParseError(lineno, "expected 'edge <src> <dst> <mult>'")
            _, src, dst, tok = parts
            if tok.lower() == "inf":
                k: Multiplicity = INF
            else:
                try:
                    k = int(tok)
                except ValueError:
                    raise GraphParseError(lineno, f"bad multiplicity {tok!r}") from None
                if k < 0:
                    raise GraphParseError(lineno, f"negative multiplicity {k}")
                if k > _U64_MAX:
                    raise GraphParseError(lineno, f"multiplicity {k} exceeds 64-bit range")
            edges.append((lineno, src, dst, k))
        else:
            raise GraphParseError(lineno, f"unknown keyword {kw!r}")
    idx = {lab: i for i, lab in enumerate(labels)}
    m: list[list[Multiplicity]] = [[0] * len(labels) for _ in labels]
    for lineno, src, dst, k in edges:
        for name in (src, dst):
            if name not in idx:
                raise GraphParseError(lineno, f"undeclared vertex {name}")
        total = m[idx[src]][idx[dst]] + k
        if total != INF and total > _U64_MAX:
            raise GraphParseError(lineno, "multiplicity exceeds 64-bit range")
        m[idx[src]][idx[dst]] = total
    return Graph.from_matrix(m, labels)


def format_graph(g: Graph) -> str:
    lines = []
    if g.n:
        lines.append("vertices " + " ".join(g.labels))
    for i, row in enumerate(g.mult):
        for j, k in enumerate(row):
            if k:
                lines.append(f"edge {g.labels[i]} {g.labels[j]} {mult_str(k)}")
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"digraph {name} {{"]
    for lab in g.labels:
        out.append(f'  "{lab}";')
    for i, row in enumerate(g.mult):
        for j, k in enumerate(row):
            if k:
                label = "∞" if k == INF else str(k)
                out.append(f'  "{g.labels[i]}" -> "{g.labels[j]}" [label="{label}"];')
    out.append("}")
    return "\n".join(out) + "\n"
