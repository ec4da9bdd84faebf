"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of lists of Python ints (arbitrary precision).  A
matrix ``A`` with ``rows x cols`` shape is read as the map ``Z^cols -> Z^rows``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Sequence

IntMatrix = list[list[int]]
Vector = tuple[int, ...]


class IllDefinedHom(ValueError):
    """A matrix does not descend to a homomorphism between the given groups."""


# matrix helpers --------------------------------------------------------------

def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: IntMatrix, cols: int | None = None) -> tuple[int, int]:
    r = len(A)
    c = len(A[0]) if r else (cols or 0)
    return r, c


def matmul(A: IntMatrix, B: IntMatrix, inner: int | None = None, cols: int | None = None) -> IntMatrix:
    """Product ``A @ B``; ``cols`` gives the width when ``B`` has no rows."""
    if not A:
        return []
    n = len(B) if B else (inner or 0)
    m = len(B[0]) if B else (cols or 0)
    Bt = list(zip(*B)) if B else [()] * m
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A] if n else [[0] * m for _ in A]


def matvec(A: IntMatrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: IntMatrix, cols: int = 0) -> IntMatrix:
    if not A:
        return [[] for _ in range(cols)]
    return [list(c) for c in zip(*A)]


def hstack(A: IntMatrix, B: IntMatrix, rows: int) -> IntMatrix:
    A = A if A else [[] for _ in range(rows)]
    B = B if B else [[] for _ in range(rows)]
    return [a + b for a, b in zip(A, B)]


def column(A: IntMatrix, j: int) -> list[int]:
    return [row[j] for row in A]


def from_columns(cols: Sequence[Sequence[int]], rows: int) -> IntMatrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [list(r) for r in zip(*cols)]


# Smith normal form -----------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular; inverses are carried
    along so that canonical coordinates can be mapped back exactly."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: IntMatrix, cols: int | None = None) -> SmithDecomposition:
    """Smith normal form by smallest-pivot elimination.

    ``cols`` is needed only for matrices with zero rows.
    """
    m, n = shape(A, cols)
    D = [list(map(int, row)) for row in A]
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    # row op R_i += q R_j  (U <- E U, U_inv <- U_inv E^-1)
    def add_row(i, j, q):
        if q:
            D[i] = [a + q * b for a, b in zip(D[i], D[j])]
            U[i] = [a + q * b for a, b in zip(U[i], U[j])]
            for row in U_inv:
                row[j] -= q * row[i]

    def add_col(i, j, q):
        if q:
            for row in D:
                row[i] += q * row[j]
            for row in V:
                row[i] += q * row[j]
            V_inv[j] = [a - q * b for a, b in zip(V_inv[j], V_inv[i])]

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in U_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    diag = tuple(D[i][i] for i in range(min(m, n)))
    return SmithDecomposition(U, D, V, U_inv, V_inv, diag)


def invariant_factors(A: IntMatrix, cols: int | None = None) -> tuple[int, ...]:
    return tuple(d for d in smith_normal_form(A, cols).diagonal if d)


# finitely generated abelian groups -------------------------------------------

@dataclass(frozen=True, eq=False)
class FGAbelianGroup:
    """``Z^ambient / im(relations)`` in invariant-factor form.

    Elements are handled in canonical coordinates: one residue per torsion
    factor (reduced into ``[0, d)``) followed by ``free_rank`` integers.
    ``proj`` sends ambient vectors to canonical coordinates and ``lift`` holds
    an ambient representative of each canonical generator (as columns).
    """

    torsion: tuple[int, ...]
    free_rank: int
    ambient: int
    relations: IntMatrix = field(repr=False)
    proj: IntMatrix = field(repr=False)
    lift: IntMatrix = field(repr=False)

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return prod(self.torsion) if self.is_finite else None

    def reduce(self, coords: Sequence[int]) -> Vector:
        return tuple(c % d if d else c for c, d in zip(coords, self.moduli))

    def element(self, ambient_vec: Sequence[int]) -> Vector:
        """Canonical coordinates of the class of an ambient vector."""
        return self.reduce(matvec(self.proj, ambient_vec))

    def zero(self) -> Vector:
        return (0,) * self.ngens

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> Vector:
        return self.reduce([k * a for a in x])

    def element_order(self, x: Sequence[int]) -> int:
        """Order of an element; 0 means infinite order."""
        x = self.reduce(x)
        if any(x[len(self.torsion):]):
            return 0
        o = 1
        for c, d in zip(x, self.torsion):
            o = o * (d // gcd(c, d)) // gcd(o, d // gcd(c, d))
        return o

    def lift_element(self, x: Sequence[int]) -> list[int]:
        return matvec(self.lift, x)

    def summary(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def isomorphic(self, other: "FGAbelianGroup") -> bool:
        return groups_isomorphic(self, other)


def cokernel(A: IntMatrix, rows: int | None = None) -> FGAbelianGroup:
    """``coker(A: Z^cols -> Z^rows)``.  ``rows`` is required when ``A`` is empty."""
    m = len(A) if A else (rows or 0)
    if not A:
        A = [[] for _ in range(m)]
    n = len(A[0]) if A else 0
    snf = smith_normal_form(A, n)
    d = list(snf.diagonal) + [0] * (m - len(snf.diagonal))
    keep = [i for i in range(m) if d[i] != 1]
    # torsion factors first, then free coordinates
    tors = [i for i in keep if d[i] > 1]
    free = [i for i in keep if d[i] == 0]
    order = tors + free
    proj = [list(snf.U[i]) for i in order]
    lift = from_columns([column(snf.U_inv, i) for i in order], m)
    return FGAbelianGroup(tuple(d[i] for i in tors), len(free), m,
                          [list(r) for r in A], proj, lift)


def free_group(rank: int) -> FGAbelianGroup:
    return cokernel([], rows=rank)


def cyclic(d: int) -> FGAbelianGroup:
    """``Z/d`` (``d == 0`` gives ``Z``)."""
    return cokernel([[d]])


def direct_sum_group(torsion: Sequence[int], free_rank: int) -> FGAbelianGroup:
    k = len(torsion) + free_rank
    rel = [[0] * len(torsion) for _ in range(k)]
    for i, d in enumerate(torsion):
        rel[i][i] = d
    return cokernel(rel, rows=k)


def kernel(A: IntMatrix, cols: int | None = None) -> tuple[FGAbelianGroup, IntMatrix]:
    """Kernel of ``A`` as a free group with a basis (columns of the second value)."""
    m, n = shape(A, cols)
    if m == 0:
        return free_group(n), identity(n)
    snf = smith_normal_form(A, n)
    r = snf.rank
    basis = from_columns([column(snf.V, j) for j in range(r, n)], n)
    return free_group(n - r), basis


def solve(A: IntMatrix, b: Sequence[int], cols: int | None = None) -> list[int] | None:
    """An integer solution of ``A x = b`` or ``None``."""
    m, n = shape(A, cols)
    if m == 0:
        return [0] * n
    return _solve_snf(smith_normal_form(A, n), b, m, n)


def _solve_snf(snf: SmithDecomposition, b: Sequence[int], m: int, n: int) -> list[int] | None:
    c = matvec(snf.U, b)
    y = [0] * n
    for i in range(m):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(snf.V, y)


# homomorphisms ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism given by an integer matrix on canonical generators."""

    domain: FGAbelianGroup
    codomain: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        mat = [[int(x) for x in row] for row in self.matrix]
        if len(mat) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in mat):
            raise ValueError(f"matrix shape does not match {self.codomain.ngens}x{self.domain.ngens}")
        # reduce entries so equal maps have equal matrices
        mat = [[v % d if d else v for v in row] for row, d in zip(mat, self.codomain.moduli)]
        for j, d in enumerate(self.domain.torsion):
            img = [d * row[j] for row in mat]
            if any(self.codomain.reduce(img)):
                raise IllDefinedHom(f"generator of order {d} maps to an element of different order")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_ambient(cls, domain: FGAbelianGroup, codomain: FGAbelianGroup,
                     matrix: IntMatrix) -> "GroupHom":
        """Hom induced by an ambient map ``Z^domain.ambient -> Z^codomain.ambient``.

        Checks that relations of the domain land in the relation lattice of
        the codomain.
        """
        rows, cols = codomain.ambient, domain.ambient
        if len(matrix) != rows or any(len(r) != cols for r in matrix):
            raise ValueError("ambient matrix has wrong shape")
        nrel = len(domain.relations[0]) if domain.relations else 0
        for j in range(nrel):
            if any(codomain.element(matvec(matrix, column(domain.relations, j)))):
                raise IllDefinedHom("relation not preserved")
        cols_out = [codomain.element(matvec(matrix, column(domain.lift, j)))
                    for j in range(domain.ngens)]
        return cls(domain, codomain, from_columns(cols_out, codomain.ngens))

    @classmethod
    def zero(cls, domain: FGAbelianGroup, codomain: FGAbelianGroup) -> "GroupHom":
        return cls(domain, codomain, zeros(codomain.ngens, domain.ngens))

    @classmethod
    def identity(cls, group: FGAbelianGroup) -> "GroupHom":
        return cls(group, group, identity(group.ngens))

    def __call__(self, x: Sequence[int]) -> Vector:
        return apply(self, x)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for row in self.matrix for v in row)


def hom(domain: FGAbelianGroup, codomain: FGAbelianGroup, matrix: IntMatrix) -> GroupHom:
    return GroupHom(domain, codomain, matrix)


def apply(f: GroupHom, x: Sequence[int]) -> Vector:
    x = f.domain.reduce(x)
    return f.codomain.reduce(matvec(f.matrix, x) if f.matrix else [])


def compose(f: GroupHom, g: GroupHom) -> GroupHom:
    """``g o f`` (apply ``f`` first)."""
    if f.codomain is not g.domain and not _same_shape(f.codomain, g.domain):
        raise ValueError("codomain of f must be the domain of g")
    mat = matmul(g.matrix, f.matrix, f.codomain.ngens, f.domain.ngens)
    if not mat:
        mat = zeros(g.codomain.ngens, f.domain.ngens)
    return GroupHom(f.domain, g.codomain, mat)


def _same_shape(a: FGAbelianGroup, b: FGAbelianGroup) -> bool:
    return a.torsion == b.torsion and a.free_rank == b.free_rank


# subgroups and exactness ------------------------------------------------------

def _cover_relations(G: FGAbelianGroup) -> list[list[int]]:
    """Columns generating the relation lattice of ``G`` in its free cover."""
    k = G.ngens
    return [[d if i == j else 0 for i in range(k)] for j, d in enumerate(G.torsion)]


def image_lattice(f: GroupHom) -> list[list[int]]:
    """Generators of ``im(f) + relations`` in the free cover of the codomain."""
    C = f.codomain
    cols = [column(f.matrix, j) for j in range(f.domain.ngens)]
    return cols + _cover_relations(C)


def kernel_lattice(g: GroupHom) -> list[list[int]]:
    """Generators of the preimage of ``ker(g)`` in the free cover of the domain."""
    Dm, C = g.domain, g.codomain
    k = Dm.ngens
    if k == 0:
        return []
    rel = _cover_relations(C)
    # x with g x in relation lattice: kernel of [G | -R]
    if C.ngens == 0:
        return [column(identity(k), j) for j in range(k)]
    big = hstack(g.matrix, from_columns([[-v for v in c] for c in rel], C.ngens), C.ngens)
    ncols = k + len(rel)
    _, basis = kernel(big, ncols)
    nb = len(basis[0]) if basis and basis[0] else 0
    return [column(basis, j)[:k] for j in range(nb)]


class SubLattice:
    """Sublattice of ``Z^dim`` spanned by ``gens``, with a membership test."""

    def __init__(self, gens: list[list[int]], dim: int):
        self.gens = [list(g) for g in gens if any(g)]
        self.dim = dim
        self._snf = (smith_normal_form(from_columns(self.gens, dim), len(self.gens))
                     if self.gens and dim else None)

    def __contains__(self, vec: Sequence[int]) -> bool:
        if not any(vec):
            return True
        if self._snf is None:
            return False
        return _solve_snf(self._snf, vec, self.dim, len(self.gens)) is not None

    def issubset(self, other: "SubLattice") -> bool:
        return all(g in other for g in self.gens)

    def __eq__(self, other) -> bool:
        return self.issubset(other) and other.issubset(self)


def same_lattice(a: list[list[int]], b: list[list[int]], dim: int) -> bool:
    return SubLattice(a, dim) == SubLattice(b, dim)


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """True iff ``im(f) == ker(g)`` inside the middle group."""
    if not _same_shape(f.codomain, g.domain):
        raise ValueError("f and g are not composable")
    dim = g.domain.ngens
    if dim == 0:
        return True
    return same_lattice(image_lattice(f), kernel_lattice(g), dim)


# isomorphism -----------------------------------------------------------------

def groups_isomorphic(G1: FGAbelianGroup, G2: FGAbelianGroup) -> bool:
    return G1.free_rank == G2.free_rank and G1.torsion == G2.torsion


@dataclass(frozen=True)
class ElementIso:
    """Outcome of :func:`iso_with_element`: ``status`` is ``"found"``,
    ``"none"`` (definitively no such isomorphism) or ``"unknown"``
    (search budget exhausted)."""

    status: str
    hom: GroupHom | None = None

    def __bool__(self) -> bool:
        return self.status == "found"


def _divisible_by(G: FGAbelianGroup, x: Vector, k: int) -> bool:
    """Whether ``x`` lies in ``k G``."""
    for c, d in zip(x, G.moduli):
        if d == 0:
            if c % k:
                return False
        elif c % gcd(k, d):
            return False
    return True


def _primitive_basis(v: Sequence[int]) -> tuple[int, IntMatrix, IntMatrix]:
    """For ``v`` in ``Z^r`` return ``(c, W, W_inv)`` with ``W v = c e_1``,
    ``c >= 0`` and ``W`` unimodular."""
    r = len(v)
    snf = smith_normal_form([[x] for x in v], 1)
    # U v V = (c, 0, ...); V = [+-1]
    s = snf.V[0][0]
    W = [[s * x for x in row] for row in snf.U]
    W_inv = [[s * x for x in row] for row in snf.U_inv]
    c = snf.diagonal[0] if snf.diagonal else 0
    if r and c == 0:
        W, W_inv = identity(r), identity(r)
    return c, W, W_inv


def _solve_multiple(T: tuple[int, ...], c: int, delta: Sequence[int]) -> list[int] | None:
    """Solve ``c s = delta`` in ``Z/T[0] + Z/T[1] + ...``."""
    s = []
    for dlt, d in zip(delta, T):
        g = gcd(c, d)
        if dlt % g:
            return None
        if c == 0:
            s.append(0)
            continue
        dd = d // g
        s.append((dlt // g) * pow(c // g, -1, dd) % dd if dd > 1 else 0)
    return s


def _torsion_automorphisms(T: tuple[int, ...]):
    """Yield matrices of all automorphisms of ``Z/T[0] + ... + Z/T[k-1]``."""
    k = len(T)
    cand = []
    for j, dj in enumerate(T):
        # images of generator j: elements killed by dj
        ranges = [[(di // gcd(di, dj)) * t for t in range(gcd(di, dj))] for di in T]
        cand.append(list(itertools.product(*ranges)))
    for images in itertools.product(*cand):
        mat = from_columns(images, k)
        big = hstack(mat, [[T[i] if i == j else 0 for j in range(k)] for i in range(k)], k)
        factors = invariant_factors(big, 2 * k)
        if len(factors) == k and all(d == 1 for d in factors):
            yield mat


def iso_with_element(G1: FGAbelianGroup, u1: Sequence[int], G2: FGAbelianGroup,
                     u2: Sequence[int], bound: int = 100_000) -> ElementIso:
    """Search for an isomorphism ``G1 -> G2`` sending ``u1`` to ``u2``.

    Writing ``G = T + Z^r`` and ``u = (t, f)`` with ``f = c w``, ``w``
    primitive, automorphisms can move ``f`` to ``c e_1`` and shear ``t`` by
    anything in ``c T``; the only search left is over ``Aut(T)``, which is
    finite.  ``bound`` caps the number of torsion automorphisms examined.
    """
    if not groups_isomorphic(G1, G2):
        return ElementIso("none")
    u1, u2 = G1.reduce(u1), G2.reduce(u2)
    if G1.element_order(u1) != G2.element_order(u2):
        return ElementIso("none")
    T = G1.torsion
    k, r = len(T), G1.free_rank
    t1, f1 = u1[:k], u1[k:]
    t2, f2 = u2[:k], u2[k:]
    c1, W1, _ = _primitive_basis(f1) if r else (0, [], [])
    c2, _, W2_inv = _primitive_basis(f2) if r else (0, [], [])
    if c1 != c2:
        return ElementIso("none")
    c = c1
    exps = [d for d in T] + ([c] if c else [])
    for q in range(2, max(exps, default=1) + 1):
        if _divisible_by(G1, u1, q) != _divisible_by(G2, u2, q):
            return ElementIso("none")

    found = None
    tried = 0
    for alpha in _torsion_automorphisms(T) if k else iter([[]]):
        tried += 1
        if tried > bound:
            return ElementIso("unknown")
        at1 = matvec(alpha, t1) if k else []
        delta = [b - a for a, b in zip(at1, t2)]
        s = _solve_multiple(T, c, delta)
        if s is not None:
            found = (alpha, s)
            break
    if found is None:
        return ElementIso("none")
    alpha, s = found
    n = k + r
    # phi = diag(I, W2_inv) . shear(s on free coord 0) . diag(alpha, I) . diag(I, W1)
    A = identity(n)
    for i in range(k):
        for j in range(k):
            A[i][j] = alpha[i][j]
    B = identity(n)
    if r:
        for i in range(k):
            B[i][k] = s[i]
    C1 = identity(n)
    C2 = identity(n)
    for i in range(r):
        for j in range(r):
            C1[k + i][k + j] = W1[i][j]
            C2[k + i][k + j] = W2_inv[i][j]
    phi = matmul(C2, matmul(B, matmul(A, C1)))
    h = GroupHom(G1, G2, phi)
    assert apply(h, u1) == u2
    return ElementIso("found", h)
