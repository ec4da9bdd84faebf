"""Ideal-related K-theory of graph algebras.

For saturated hereditary sets ``H1 <= H2`` the subquotient is carried by the
induced subgraph on ``D = H2 - H1``.  With ``M = 1 - B^t`` (rows: vertices of
``D``, columns: vertices regular in the carrier) we get ``K0 = coker M`` and
``K1 = ker M``.  For ``H1 <= H2 <= H3`` the presentation of ``H3/H1`` is block
upper triangular over the one of ``H2/H1``, and the snake lemma gives the
six-term sequence (the map ``K0(H3/H2) -> K1(H2/H1)`` is zero).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import zmod
from .config import DEFAULT, Config
from .graph import Graph, induced_subgraph
from .lattice import IdealLattice, enumerate_lattice
from .zmod import FGAbelianGroup, GroupHom, IntMatrix, Vector

log = logging.getLogger(__name__)


class KWebError(RuntimeError):
    pass


class VertexBoundError(KWebError):
    pass


class ConventionError(KWebError):
    """A quotient block does not present the quotient's own carrier graph."""


class ExactnessFailure(KWebError):
    """A computed six-term sequence is not exact; always a bug."""


def set_label(g: Graph, mask: int) -> str:
    return "{" + ",".join(g.vertex_set(mask)) + "}"


# K-groups of one subquotient --------------------------------------------------

def carrier_presentation(g: Graph, vertices: Sequence[int],
                         regular: Sequence[int] | None = None) -> tuple[list[int], IntMatrix]:
    """``(regular, 1 - B^t)`` for the induced subgraph on ``vertices``.

    ``regular`` may be forced (used for quotient blocks); otherwise it is the
    set of vertices regular in the induced subgraph.
    """
    vs = list(vertices)
    if regular is None:
        sub = induced_subgraph(g, vs)
        regular = [vs[i] for i in sub.regular_vertices]
    regular = list(regular)
    M = [[int(w == v) - int(g.mult[v][w]) for v in regular] for w in vs]
    return regular, M


@dataclass(frozen=True, eq=False)
class KGroups:
    """``K0``/``K1`` of the subquotient on ``vertices`` with its presentation.

    ``k1_basis`` has one column per generator of ``k1``, living in
    ``Z^regular``.  Vertex and unit classes are canonical coordinates in
    ``k0``.
    """

    graph: Graph
    vertices: tuple[int, ...]
    regular: tuple[int, ...]
    presentation: IntMatrix = field(repr=False)
    k0: FGAbelianGroup
    k1: FGAbelianGroup
    k1_basis: IntMatrix = field(repr=False)

    @property
    def vertex_class(self) -> dict[str, Vector]:
        n = len(self.vertices)
        return {self.graph.labels[v]: self.k0.element([int(i == j) for j in range(n)])
                for i, v in enumerate(self.vertices)}

    @property
    def unit_class(self) -> Vector:
        return self.k0.element([1] * len(self.vertices))

    def to_json(self) -> dict:
        return {
            "k0": self.k0.summary(),
            "k1": self.k1.summary(),
            "unit_class": list(self.unit_class),
            "vertex_classes": {k: list(v) for k, v in self.vertex_class.items()},
        }


def k_groups(g: Graph, vertices: Sequence[int], regular: Sequence[int] | None = None) -> KGroups:
    vs = tuple(vertices)
    reg, M = carrier_presentation(g, vs, regular)
    k0 = zmod.cokernel(M, rows=len(vs))
    k1, basis = zmod.kernel(M, cols=len(reg))
    return KGroups(g, vs, tuple(reg), M, k0, k1, basis)


def k_groups_of_pair(g: Graph, lat: IdealLattice, key: tuple[int, int]) -> KGroups:
    i, j = key
    if not lat.leq(i, j):
        raise KWebError(f"invalid subquotient key {key}: not an inclusion")
    diff = lat.elements[j] & ~lat.elements[i]
    return k_groups(g, [v for v in range(g.n) if diff >> v & 1])


# six-term sequences ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SixTerm:
    """Cyclic sequence ``K0(I) -> K0(M) -> K0(Q) -> K1(I) -> K1(M) -> K1(Q) -> K0(I)``
    for ``I = H2/H1``, ``M = H3/H1``, ``Q = H3/H2``."""

    key: tuple[int, int, int]
    ideal: KGroups
    middle: KGroups
    quotient: KGroups
    iota0: GroupHom
    pi0: GroupHom
    delta0: GroupHom
    iota1: GroupHom
    pi1: GroupHom
    delta1: GroupHom
    convention_ok: bool = True

    @property
    def cyclic(self) -> list[GroupHom]:
        return [self.iota0, self.pi0, self.delta0, self.iota1, self.pi1, self.delta1]

    def exactness(self) -> list[bool]:
        maps = self.cyclic
        return [zmod.is_exact_at(maps[k], maps[(k + 1) % 6]) for k in range(6)]

    def compositions_vanish(self) -> bool:
        maps = self.cyclic
        return all(zmod.compose(maps[k], maps[(k + 1) % 6]).is_zero for k in range(6))

    def is_exact(self) -> bool:
        return all(self.exactness())

    def to_json(self) -> dict:
        names = ["iota0", "pi0", "delta0", "iota1", "pi1", "delta1"]
        return {n: f.matrix for n, f in zip(names, self.cyclic)}


def _coords_in_basis(basis: IntMatrix, ncols: int, vec: Sequence[int]) -> list[int]:
    y = zmod.solve(basis, vec, ncols)
    if y is None:
        raise ExactnessFailure("kernel element outside kernel basis span")
    return y


def _embed(src: Sequence[int], dst: Sequence[int], vec: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(dst)}
    out = [0] * len(dst)
    for v, x in zip(src, vec):
        out[pos[v]] = x
    return out


def _restrict(src: Sequence[int], dst: Sequence[int], vec: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(src)}
    return [vec[pos[v]] for v in dst]


def _basis_cols(kg: KGroups) -> list[list[int]]:
    return [zmod.column(kg.k1_basis, j) for j in range(kg.k1.ngens)]


def six_term(g: Graph, lat: IdealLattice, a: int, b: int, c: int,
             cache: dict | None = None, strict: bool = False) -> SixTerm:
    if not (lat.leq(a, b) and lat.leq(b, c)):
        raise KWebError(f"invalid triple {(a, b, c)}")
    cache = {} if cache is None else cache

    def pair(i, j):
        if (i, j) not in cache:
            cache[i, j] = k_groups_of_pair(g, lat, (i, j))
        return cache[i, j]

    I, Mid = pair(a, b), pair(a, c)
    Q = pair(b, c)
    # the quotient block of the middle presentation
    q_reg = [v for v in Mid.regular if v in set(Q.vertices)]
    convention_ok = q_reg == list(Q.regular)
    if not convention_ok:
        msg = (f"triple {set_label(g, lat.elements[a])} <= {set_label(g, lat.elements[b])} <= "
               f"{set_label(g, lat.elements[c])}: quotient block differs from quotient carrier")
        if strict:
            raise ConventionError(msg)
        log.warning(msg)
        Q = k_groups(g, Q.vertices, q_reg)

    def amb(src, dst):
        pos = {v: i for i, v in enumerate(src)}
        return [[int(pos.get(w) == j) for j in range(len(src))] for w in dst]

    iota0 = GroupHom.from_ambient(I.k0, Mid.k0, amb(I.vertices, Mid.vertices))
    pi0 = GroupHom.from_ambient(Mid.k0, Q.k0, amb(Mid.vertices, Q.vertices))
    delta0 = GroupHom.zero(Q.k0, I.k1)

    iota1_cols = [_coords_in_basis(Mid.k1_basis, Mid.k1.ngens, _embed(I.regular, Mid.regular, z))
                  for z in _basis_cols(I)]
    iota1 = GroupHom(I.k1, Mid.k1, zmod.from_columns(iota1_cols, Mid.k1.ngens))
    pi1_cols = [_coords_in_basis(Q.k1_basis, Q.k1.ngens, _restrict(Mid.regular, Q.regular, z))
                for z in _basis_cols(Mid)]
    pi1 = GroupHom(Mid.k1, Q.k1, zmod.from_columns(pi1_cols, Q.k1.ngens))

    # connecting map: lift a kernel vector of the quotient block, apply the
    # middle presentation, read the ideal part in coker of the ideal block
    delta_cols = []
    for z in _basis_cols(Q):
        lifted = _embed(Q.regular, Mid.regular, z)
        image = zmod.matvec(Mid.presentation, lifted)
        if any(_restrict(Mid.vertices, Q.vertices, image)):
            raise ExactnessFailure("lift of a quotient kernel vector leaves the ideal")
        delta_cols.append(I.k0.element(_restrict(Mid.vertices, I.vertices, image)))
    delta1 = GroupHom(Q.k1, I.k0, zmod.from_columns(delta_cols, I.k0.ngens))
    return SixTerm((a, b, c), I, Mid, Q, iota0, pi0, delta0, iota1, pi1, delta1, convention_ok)


# the invariant ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KWeb:
    lattice: IdealLattice
    groups: dict[tuple[int, int], KGroups]
    sequences: dict[tuple[int, int, int], SixTerm]
    metadata: dict[str, bool]

    @property
    def graph(self) -> Graph:
        return self.lattice.graph

    def pair_key(self, i: int, j: int) -> str:
        g, el = self.graph, self.lattice.elements
        return f"{set_label(g, el[i])}|{set_label(g, el[j])}"

    def total(self) -> KGroups:
        return self.groups[0, self.lattice.top]

    def to_json(self, include_degenerate: bool = False) -> dict:
        el = self.lattice.elements
        groups = {self.pair_key(i, j): kg.to_json() for (i, j), kg in self.groups.items()
                  if include_degenerate or i != j}
        seqs = {}
        for (a, b, c), st in self.sequences.items():
            if not include_degenerate and (a == b or b == c):
                continue
            key = f"{self.pair_key(a, b)}|{set_label(self.graph, el[c])}"
            seqs[key] = st.to_json()
        return {
            "vertices": list(self.graph.labels),
            "lattice": self.lattice.to_json(),
            "groups": groups,
            "sequences": seqs,
            "metadata": dict(self.metadata),
        }

    def to_dot(self) -> str:
        g, lat = self.graph, self.lattice
        out = ["digraph kweb {", "  rankdir=BT;"]
        for i in range(len(lat)):
            if i == 0:
                info = "0"
            else:
                kg = self.groups[0, i]
                info = f"K0={kg.k0}\\nK1={kg.k1}"
            out.append(f'  n{i} [label="{set_label(g, lat.elements[i])}\\n{info}"];')
        for i, j in lat.hasse:
            kg = self.groups[i, j]
            out.append(f'  n{i} -> n{j} [label="K0={kg.k0}, K1={kg.k1}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def build_kweb(g: Graph, config: Config = DEFAULT, verify: bool = True) -> KWeb:
    """Groups for every lattice pair and six-term sequences for every triple.

    Each sequence is checked for exactness at all six nodes; a failure raises
    :class:`ExactnessFailure` instead of returning data.
    """
    if g.n > config.max_vertices:
        raise VertexBoundError(f"{g.n} vertices exceeds max_vertices={config.max_vertices}")
    lat = enumerate_lattice(g, config.lattice_enum_bound, config.strict_condition_k)
    cache: dict[tuple[int, int], KGroups] = {}
    for key in lat.pairs():
        cache[key] = k_groups_of_pair(g, lat, key)
    sequences = {}
    convention_ok = True
    for a, b, c in lat.triples():
        st = six_term(g, lat, a, b, c, cache, strict=config.strict_condition_k)
        convention_ok &= st.convention_ok
        if verify:
            exact = st.exactness()
            if not all(exact) or not st.compositions_vanish():
                raise ExactnessFailure(
                    f"sequence {(a, b, c)} not exact at nodes "
                    f"{[k for k, ok in enumerate(exact) if not ok]}")
        sequences[a, b, c] = st
    metadata = {
        "conditionK": lat.condition_k,
        "rowFinite": g.is_row_finite,
        "amplified": g.is_amplified,
        "conventionVerified": (g.is_row_finite or g.is_amplified) and convention_ok,
    }
    return KWeb(lat, cache, sequences, metadata)


# positive cone ---------------------------------------------------------------

class Positivity(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def is_positive(kg: KGroups, x: Sequence[int], bound: int = 1000) -> Positivity:
    """Membership of ``x`` in the cone generated by the vertex classes.

    Looks for ``y`` with ``lift(x) + M y >= 0`` (``M`` the presentation).  A
    found ``y`` is verified exactly; "no" is reported only with an exact
    Farkas certificate or when the relation image is zero.
    """
    lift = kg.k0.lift_element(kg.k0.reduce(x))
    M = kg.presentation
    ncols = len(kg.regular)
    if all(v >= 0 for v in lift):
        return Positivity.YES
    if ncols == 0 or all(v == 0 for row in M for v in row):
        return Positivity.NO
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, linprog, milp

    A = np.array(M, dtype=float)
    l = np.array(lift, dtype=float)
    res = milp(c=np.zeros(ncols), integrality=np.ones(ncols),
               bounds=Bounds(-bound, bound),
               constraints=LinearConstraint(A, lb=-l, ub=np.inf))
    if res.status == 0 and res.x is not None:
        y = [int(round(v)) for v in res.x]
        if all(v >= 0 for v in (a + b for a, b in zip(lift, zmod.matvec(M, y)))):
            return Positivity.YES
    # Farkas: z >= 0, M^t z = 0, lift . z = -1 certifies infeasibility over R
    far = linprog(c=np.zeros(len(lift)), A_eq=np.vstack([A.T, l[None, :]]),
                  b_eq=np.concatenate([np.zeros(ncols), [-1.0]]), bounds=(0, None))
    if far.status == 0:
        z = [Fraction(v).limit_denominator(10**6) for v in far.x]
        if (all(v >= 0 for v in z)
                and all(sum(M[i][j] * z[i] for i in range(len(z))) == 0 for j in range(ncols))
                and sum(a * b for a, b in zip(lift, z)) < 0):
            return Positivity.NO
    return Positivity.UNKNOWN


# comparison ------------------------------------------------------------------

@dataclass
class Verdict:
    """Outcome of comparing two K-webs.

    ``category`` is one of ``Distinguished``, ``Consistent``,
    ``AmplifiedIsomorphic``, ``AmplifiedNonIsomorphic``.  A ``Consistent``
    verdict matches lattices and all groups (and optionally the unit class);
    it does not certify that the matched groups intertwine the sequence maps.
    """

    category: str
    witness: str | None = None
    lattice_map: list[tuple[list[str], list[str]]] | None = None
    unit_matched: bool | None = None
    vertex_bijection: dict[str, str] | None = None
    naturality_verified: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def distinguished(self) -> bool:
        return self.category in ("Distinguished", "AmplifiedNonIsomorphic")

    def to_json(self) -> dict:
        out: dict = {"category": self.category}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.lattice_map is not None:
            out["lattice_map"] = [[a, b] for a, b in self.lattice_map]
            out["per_pair_factors_match"] = True
        if self.unit_matched is not None:
            out["unit_matched"] = self.unit_matched
        if self.vertex_bijection is not None:
            out["vertex_bijection"] = self.vertex_bijection
        if self.category == "Consistent":
            out["naturality_verified"] = self.naturality_verified
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class LatticeIsoBoundError(KWebError):
    pass


def _signature(w: KWeb, i: int) -> tuple:
    lat = w.lattice
    k = len(lat)
    below = sum(1 for j in range(k) if lat.leq(j, i))
    above = sum(1 for j in range(k) if lat.leq(i, j))
    up = sum(1 for a, _ in lat.hasse if a == i)
    down = sum(1 for _, b in lat.hasse if b == i)
    lo, hi = w.groups[0, i], w.groups[i, lat.top]
    return (below, above, up, down,
            lo.k0.torsion, lo.k0.free_rank, lo.k1.free_rank,
            hi.k0.torsion, hi.k0.free_rank, hi.k1.free_rank)


def lattice_isomorphisms(w1: KWeb, w2: KWeb, budget: int = 10_000):
    """Yield order isomorphisms ``w1.lattice -> w2.lattice`` as index lists,
    pruned by order-theoretic and K-theoretic signatures."""
    L1, L2 = w1.lattice, w2.lattice
    k = len(L1)
    if k != len(L2):
        return
    sig1 = [_signature(w1, i) for i in range(k)]
    sig2 = [_signature(w2, i) for i in range(k)]
    if sorted(sig1) != sorted(sig2):
        return
    cands = [[j for j in range(k) if sig2[j] == sig1[i]] for i in range(k)]
    order = sorted(range(k), key=lambda i: len(cands[i]))
    phi: dict[int, int] = {}
    used: set[int] = set()
    count = 0

    def extend(pos):
        nonlocal count
        if pos == k:
            count += 1
            if count > budget:
                raise LatticeIsoBoundError(f"more than {budget} lattice isomorphisms")
            yield [phi[i] for i in range(k)]
            return
        i = order[pos]
        for c in cands[i]:
            if c in used:
                continue
            if all(L1.leq(i, a) == L2.leq(c, b) and L1.leq(a, i) == L2.leq(b, c)
                   for a, b in phi.items()):
                phi[i] = c
                used.add(c)
                yield from extend(pos + 1)
                del phi[i]
                used.discard(c)

    yield from extend(0)


def _first_group_mismatch(w1: KWeb, w2: KWeb, phi: list[int]) -> str | None:
    for (i, j), kg in w1.groups.items():
        other = w2.groups[phi[i], phi[j]]
        for deg, a, b in ((0, kg.k0, other.k0), (1, kg.k1, other.k1)):
            if not zmod.groups_isomorphic(a, b):
                return (f"K{deg} of {w1.pair_key(i, j)} is {a} but K{deg} of "
                        f"{w2.pair_key(phi[i], phi[j])} is {b}")
    return None


def compare_kwebs(w1: KWeb, w2: KWeb, require_unit: bool = False,
                  config: Config = DEFAULT, amplified_shortcut: bool = True) -> Verdict:
    amplified_note = None
    if amplified_shortcut and w1.metadata["amplified"] and w2.metadata["amplified"]:
        from .amplified import are_LPA_isomorphic_amplified

        iso, bij = are_LPA_isomorphic_amplified(w1.graph, w2.graph, config.iso_search_bound)
        if require_unit:
            # the amplified classification says nothing about unit classes,
            # so a unit comparison runs the general path and keeps this as a note
            amplified_note = ("amplified classification: "
                              + ("isomorphic" if iso else "not isomorphic"))
        elif iso:
            return Verdict("AmplifiedIsomorphic", vertex_bijection=bij)
        else:
            return Verdict("AmplifiedNonIsomorphic",
                           witness="amplified transitive closures are not isomorphic")

    L1, L2 = w1.lattice, w2.lattice
    if len(L1) != len(L2):
        return Verdict("Distinguished", witness=f"ideal lattices have {len(L1)} and {len(L2)} elements")
    t1, t2 = w1.total(), w2.total()
    for deg, a, b in ((0, t1.k0, t2.k0), (1, t1.k1, t2.k1)):
        if not zmod.groups_isomorphic(a, b):
            return Verdict("Distinguished", witness=(
                f"K{deg} of {w1.pair_key(0, L1.top)} is {a} but K{deg} of "
                f"{w2.pair_key(0, L2.top)} is {b}"))
    first_mismatch = None
    match = None
    for phi in lattice_isomorphisms(w1, w2, config.lattice_iso_budget):
        bad = _first_group_mismatch(w1, w2, phi)
        if bad is None:
            match = phi
            break
        first_mismatch = first_mismatch or bad
    if match is None:
        if first_mismatch is None:
            first_mismatch = "no lattice isomorphism matches the K-groups of the pairs (bottom, x) and (x, top)"
        return Verdict("Distinguished", witness=first_mismatch)

    lattice_map = [(L1.labels(i), L2.labels(match[i])) for i in range(len(L1))]
    verdict = Verdict("Consistent", lattice_map=lattice_map)
    if require_unit:
        res = zmod.iso_with_element(t1.k0, t1.unit_class, t2.k0, t2.unit_class,
                                    config.unit_search_budget)
        if res.status == "none":
            return Verdict("Distinguished", witness=(
                f"no isomorphism {t1.k0} -> {t2.k0} carries the unit class "
                f"{list(t1.unit_class)} to {list(t2.unit_class)}"))
        verdict.unit_matched = res.status == "found"
        if res.status == "unknown":
            verdict.notes.append("unit class search exhausted its budget")
    if amplified_note:
        verdict.notes.append(amplified_note)
    verdict.notes.append("naturality of the matched groups is not verified")
    return verdict
