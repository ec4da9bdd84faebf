"""Graph moves that preserve the Leavitt path algebra (or its Morita class)."""

from __future__ import annotations

from typing import Sequence

from .graph import INF, Graph, GraphError


class MoveError(GraphError):
    pass


def amplify(g: Graph) -> Graph:
    return Graph(g.labels, tuple(tuple(INF if m else 0 for m in row) for row in g.mult))


def transitive_closure_graph(g: Graph) -> Graph:
    """Add one edge ``v -> w`` wherever a positive-length path exists but no edge.

    Uses positive-length reachability: a vertex gets a loop only when it lies
    on a cycle.
    """
    pos = g.reachability().pos
    return Graph(g.labels, tuple(
        tuple(m if m else (1 if pos[v] >> w & 1 else 0) for w, m in enumerate(row))
        for v, row in enumerate(g.mult)))


def amplified_transitive_closure(g: Graph) -> Graph:
    pos = g.reachability().pos
    return Graph(g.labels, tuple(
        tuple(INF if pos[v] >> w & 1 else 0 for w in range(g.n)) for v in range(g.n)))


def move_T(g: Graph, path: Sequence[str | int]) -> Graph:
    """Add countably many edges from the start to the end of ``path``.

    ``path`` lists vertices ``v0, ..., vk``; each step needs an edge and the
    first step needs infinitely many parallel edges.
    """
    idx = [p if isinstance(p, int) else g.index(p) for p in path]
    if len(idx) < 2:
        raise MoveError("move T needs a path with at least one edge")
    for a, b in zip(idx, idx[1:]):
        if not g.mult[a][b]:
            raise MoveError(f"broken path: no edge {g.labels[a]} -> {g.labels[b]}")
    v0, vk = idx[0], idx[-1]
    if g.mult[v0][idx[1]] != INF:
        raise MoveError(
            f"hypothesis violated: only {g.mult[v0][idx[1]]} parallel edges "
            f"{g.labels[v0]} -> {g.labels[idx[1]]}, need infinitely many")
    rows = [list(r) for r in g.mult]
    rows[v0][vk] = INF
    return Graph.from_matrix(rows, g.labels)


def remove_source(g: Graph, v: str | int) -> Graph:
    i = v if isinstance(v, int) else g.index(v)
    if any(g.mult[u][i] for u in range(g.n)):
        raise MoveError(f"{g.labels[i]} is not a source: it receives edges")
    keep = [j for j in range(g.n) if j != i]
    return Graph(tuple(g.labels[j] for j in keep),
                 tuple(tuple(g.mult[a][b] for b in keep) for a in keep))


MOVES = {
    "amplify": amplify,
    "transitive-closure": transitive_closure_graph,
    "amplified-transitive-closure": amplified_transitive_closure,
    "move-T": move_T,
    "remove-source": remove_source,
}
