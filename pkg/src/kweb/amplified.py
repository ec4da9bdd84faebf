"""Canonical labelling of small digraphs and the amplified-graph decision.

Two amplified graphs with finitely many vertices have isomorphic Leavitt path
algebras exactly when their amplified transitive closures are isomorphic, and
those are determined by the positive-length reachability relation.  The
decision therefore reduces to canonical forms of small 0/1 relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Sequence

from .graph import INF, Graph
from .moves import amplified_transitive_closure


class CanonicalBoundError(RuntimeError):
    pass


def _key(m) -> tuple[int, int]:
    return (1, 0) if m == INF else (0, int(m))


def _refine(matrix: Sequence[Sequence[Hashable]]) -> list[int]:
    """Colour refinement; colours are ranks of isomorphism-invariant signatures."""
    n = len(matrix)
    colour = [0] * n
    sig = [(_key(matrix[v][v]),) for v in range(n)]
    while True:
        sig = [(sig[v][0],
                colour[v],
                tuple(sorted((colour[w], _key(matrix[v][w])) for w in range(n) if w != v)),
                tuple(sorted((colour[u], _key(matrix[u][v])) for u in range(n) if u != v)))
               for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_labeling(matrix: Sequence[Sequence]) -> tuple[tuple, list[int]]:
    """``(canon, perm)``: the lexicographically least relabelled matrix among
    orders that list colour classes in increasing colour, and one order
    achieving it (``perm[i]`` is the original vertex placed at position ``i``).
    """
    n = len(matrix)
    colour = _refine(matrix)
    classes = [sorted(v for v in range(n) if colour[v] == c) for c in sorted(set(colour))]
    best = None
    best_perm: list[int] = []
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [v for part in parts for v in part]
        cand = tuple(tuple(_key(matrix[perm[i]][perm[j]]) for j in range(n)) for i in range(n))
        if best is None or cand < best:
            best, best_perm = cand, perm
    return best if best is not None else (), best_perm


@dataclass(frozen=True)
class CanonicalAmplified:
    """Canonical form of the positive-length reachability relation."""

    n: int
    canon: tuple[int, ...]  # row bitmasks, bit j of row i = relation (i, j)
    perm: tuple[int, ...]

    def hex(self) -> str:
        bits = "".join("1" if r >> j & 1 else "0" for r in self.canon for j in range(self.n))
        return f"{self.n}:" + (f"{int(bits, 2):x}" if bits else "0")


def canonical_form(g: Graph, bound: int = 10) -> CanonicalAmplified:
    if g.n > bound:
        raise CanonicalBoundError(f"{g.n} vertices exceeds canonical form bound {bound}")
    pos = g.reachability().pos
    rel = [[1 if pos[v] >> w & 1 else 0 for w in range(g.n)] for v in range(g.n)]
    canon, perm = canonical_labeling(rel)
    rows = tuple(sum(1 << j for j, (_, x) in enumerate(row) if x) for row in canon)
    return CanonicalAmplified(g.n, rows, tuple(perm))


def are_LPA_isomorphic_amplified(g1: Graph, g2: Graph,
                                 bound: int = 10) -> tuple[bool, dict[str, str] | None]:
    """Decide ``L(amplify(g1)) ~= L(amplify(g2))``; on success also return the
    vertex bijection identifying the amplified transitive closures."""
    c1 = canonical_form(amplified_transitive_closure(g1), bound)
    c2 = canonical_form(amplified_transitive_closure(g2), bound)
    if c1.n != c2.n or c1.canon != c2.canon:
        return False, None
    return True, {g1.labels[a]: g2.labels[b] for a, b in zip(c1.perm, c2.perm)}


def digraph_isomorphic(g1: Graph, g2: Graph, bound: int = 10) -> dict[str, str] | None:
    """Vertex bijection matching multiplicity matrices exactly, or ``None``."""
    if g1.n != g2.n:
        return None
    if g1.n > bound:
        raise CanonicalBoundError(f"{g1.n} vertices exceeds bound {bound}")
    c1, p1 = canonical_labeling(g1.mult)
    c2, p2 = canonical_labeling(g2.mult)
    if c1 != c2:
        return None
    return {g1.labels[a]: g2.labels[b] for a, b in zip(p1, p2)}
