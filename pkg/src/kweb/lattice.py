"""Hereditary and saturated vertex sets and the lattice they form.

Vertex sets are bitmasks over the vertex order of a fixed :class:`Graph`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .graph import Graph, satisfies_condition_K


class LatticeBoundError(RuntimeError):
    pass


class ConditionKWarning(UserWarning):
    pass


class ConditionKError(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def hereditary_closure(g: Graph, s: int) -> int:
    refl = g.reachability().refl
    out = 0
    for v in range(g.n):
        if s >> v & 1:
            out |= refl[v]
    return out


def is_hereditary(g: Graph, s: int) -> bool:
    return hereditary_closure(g, s) == s


def _regular_targets(g: Graph) -> list[tuple[int, int]]:
    """``(v, targets_mask)`` for every regular vertex."""
    out = []
    for v in g.regular_vertices:
        out.append((v, sum(1 << w for w in g.successors(v))))
    return out


def is_saturated(g: Graph, s: int) -> bool:
    return all(s >> v & 1 or t & ~s for v, t in _regular_targets(g))


def saturation(g: Graph, s: int) -> int:
    if not is_hereditary(g, s):
        raise ValueError("saturation expects a hereditary set")
    return _saturate(_regular_targets(g), s)


def _saturate(reg: list[tuple[int, int]], s: int) -> int:
    changed = True
    while changed:
        changed = False
        for v, t in reg:
            if not s >> v & 1 and not t & ~s:
                s |= 1 << v
                changed = True
    return s


def sat_hered_closure(g: Graph, s: int) -> int:
    return _saturate(_regular_targets(g), hereditary_closure(g, s))


@dataclass(frozen=True)
class IdealLattice:
    """Saturated hereditary subsets of a graph, ordered by inclusion.

    ``elements`` are bitmasks sorted by ``(popcount, value)`` so the bottom
    (empty set) comes first and the top (all vertices) last; ``hasse`` lists
    cover pairs ``(i, j)`` with ``elements[i]`` covered by ``elements[j]``.
    """

    graph: Graph
    elements: tuple[int, ...]
    hasse: tuple[tuple[int, int], ...]
    condition_k: bool

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise KeyError(f"{mask:#b} is not saturated hereditary") from None

    @property
    def _index(self) -> dict[int, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i] & ~self.elements[j] == 0

    def meet(self, i: int, j: int) -> int:
        return self.index(self.elements[i] & self.elements[j])

    def join(self, i: int, j: int) -> int:
        return self.index(sat_hered_closure(self.graph, self.elements[i] | self.elements[j]))

    def labels(self, i: int) -> list[str]:
        return self.graph.vertex_set(self.elements[i])

    def pairs(self) -> list[tuple[int, int]]:
        """All ``(i, j)`` with ``elements[i] <= elements[j]``, degenerate ones included."""
        k = len(self.elements)
        return [(i, j) for i in range(k) for j in range(k) if self.leq(i, j)]

    def triples(self) -> list[tuple[int, int, int]]:
        k = len(self.elements)
        return [(a, b, c) for a in range(k) for b in range(k) if self.leq(a, b)
                for c in range(k) if self.leq(b, c)]

    def to_json(self) -> dict:
        return {
            "elements": [self.labels(i) for i in range(len(self.elements))],
            "hasse": [list(e) for e in self.hasse],
            "flags": {"conditionK": self.condition_k},
        }

    def to_dot(self) -> str:
        out = ["digraph lattice {", "  rankdir=BT;"]
        for i in range(len(self.elements)):
            name = "{" + ",".join(self.labels(i)) + "}"
            out.append(f'  n{i} [label="{name}"];')
        for i, j in self.hasse:
            out.append(f"  n{i} -> n{j};")
        out.append("}")
        return "\n".join(out) + "\n"


def hasse_diagram(elements: list[int]) -> list[tuple[int, int]]:
    def below(a, b):
        return a != b and a & ~b == 0

    covers = []
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if below(a, b) and not any(below(a, c) and below(c, b) for c in elements):
                covers.append((i, j))
    return covers


def enumerate_lattice(g: Graph, bound: int = 20, strict: bool = False) -> IdealLattice:
    """All saturated hereditary subsets of ``g``.

    Every such set is the join of the closures of its vertices, so closing
    the singleton closures under join (with the empty set added) produces the
    whole family.
    """
    if g.n > bound:
        raise LatticeBoundError(f"{g.n} vertices exceeds lattice enumeration bound {bound}")
    cond_k = satisfies_condition_K(g)
    if not cond_k:
        msg = "graph fails Condition (K): saturated hereditary sets need not index all ideals"
        if strict:
            raise ConditionKError(msg)
        warnings.warn(msg, ConditionKWarning, stacklevel=2)
    reg = _regular_targets(g)
    refl = g.reachability().refl
    gens = sorted({_saturate(reg, refl[v]) for v in range(g.n)})
    family = {0, _saturate(reg, (1 << g.n) - 1)}
    family.update(gens)
    frontier = list(family)
    while frontier:
        new = []
        for a in frontier:
            for b in gens:
                if b & ~a:
                    c = _saturate(reg, a | b)
                    if c not in family:
                        family.add(c)
                        new.append(c)
        frontier = new
    elements = sorted(family, key=lambda x: (popcount(x), x))
    return IdealLattice(g, tuple(elements), tuple(hasse_diagram(elements)), cond_k)


def meet(lat: IdealLattice, a: int, b: int) -> int:
    """Meet of two lattice elements given as bitmasks."""
    return lat.elements[lat.meet(lat.index(a), lat.index(b))]


def join(lat: IdealLattice, a: int, b: int) -> int:
    return lat.elements[lat.join(lat.index(a), lat.index(b))]
