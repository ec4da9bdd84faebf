import itertools
import random

import pytest
from hypothesis import given, strategies as st

from oracles import bareiss_det, rational_rank
from kweb import zmod
from kweb.zmod import (GroupHom, IllDefinedHom, apply, cokernel, compose, cyclic, direct_sum_group,
                       free_group, groups_isomorphic, hom, invariant_factors, is_exact_at,
                       iso_with_element, kernel, matmul, smith_normal_form, solve)


def int_matrices(max_rows=6, max_cols=6, lo=-9, hi=9):
    return st.integers(0, max_rows).flatmap(lambda m: st.integers(0, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda A: (A, n))))


def check_snf(A, n):
    m = len(A)
    d = smith_normal_form(A, n)
    S = matmul(matmul(d.U, A, m, n), d.V, n, n) if m and n else []
    if m and n:
        assert S == d.S
    for i in range(m):
        for j in range(n):
            assert d.S[i][j] == (d.diagonal[i] if i == j and i < len(d.diagonal) else 0)
    assert all(x >= 0 for x in d.diagonal)
    nz = [x for x in d.diagonal if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == d.rank
    if m:
        assert abs(bareiss_det(d.U)) == 1
        assert matmul(d.U, d.U_inv) == zmod.identity(m)
    if n:
        assert abs(bareiss_det(d.V)) == 1
        assert matmul(d.V, d.V_inv) == zmod.identity(n)
    return d


class TestSmith:
    def test_example(self):
        d = check_snf([[2, 4], [6, 8]], 2)
        assert d.diagonal == (2, 4)

    def test_zero_and_identity(self):
        assert invariant_factors([[0, 0], [0, 0]]) == ()
        assert smith_normal_form([[0, 0], [0, 0]]).S == [[0, 0], [0, 0]]
        assert smith_normal_form(zmod.identity(4)).diagonal == (1, 1, 1, 1)

    def test_rectangular(self):
        d = check_snf([[2, 4, 4], [-6, 6, 12]], 3)
        assert d.diagonal == (2, 6)

    @given(int_matrices())
    def test_properties(self, An):
        A, n = An
        d = check_snf(A, n)
        if A and n:
            assert d.rank == rational_rank(A)
            if len(A) == n:
                det = 1
                for x in d.diagonal:
                    det *= x
                assert det == abs(bareiss_det(A)) or (len(d.diagonal) < n and bareiss_det(A) == 0)

    @given(int_matrices(5, 5, -20, 20))
    def test_agrees_with_sympy(self, An):
        from sympy import Matrix, ZZ
        from sympy.matrices.normalforms import invariant_factors as sym_if
        A, n = An
        if not A or not n:
            return
        ours = invariant_factors(A, n)
        theirs = tuple(sorted(abs(int(x)) for x in sym_if(Matrix(A), domain=ZZ) if x))
        assert ours == theirs

    @given(int_matrices(5, 5), st.randoms(use_true_random=False))
    def test_permutation_invariance(self, An, rnd):
        A, n = An
        rows = list(range(len(A)))
        cols = list(range(n))
        rnd.shuffle(rows)
        rnd.shuffle(cols)
        B = [[A[i][j] for j in cols] for i in rows]
        assert invariant_factors(A, n) == invariant_factors(B, n)


class TestGroups:
    def test_cokernel_examples(self):
        G = cokernel([[-2]])
        assert G.torsion == (2,) and G.free_rank == 0 and str(G) == "Z/2"
        assert str(cokernel([], rows=3)) == "Z + Z + Z"
        assert cokernel([[1]]).is_trivial and str(cokernel([[1]])) == "0"
        assert str(cokernel([[2, 0], [0, 0]])) == "Z/2 + Z"

    def test_kernel_example(self):
        K, basis = kernel([[1, 1]])
        assert K.free_rank == 1
        col = [basis[0][0], basis[1][0]]
        assert col in ([1, -1], [-1, 1])

    @given(int_matrices(5, 5))
    def test_kernel_basis(self, An):
        A, n = An
        K, B = kernel(A, n)
        assert K.free_rank == n - (rational_rank(A) if A and n else 0)
        if A and K.free_rank:
            assert all(v == 0 for v in (x for row in matmul(A, B, n, K.free_rank) for x in row))
        if K.free_rank:
            # the basis is saturated: its columns span a direct summand
            assert invariant_factors(B, K.free_rank) == (1,) * K.free_rank

    @given(int_matrices(5, 5))
    def test_proj_lift_roundtrip(self, An):
        A, n = An
        m = len(A)
        G = cokernel(A, rows=m)
        assert len(G.torsion) + G.free_rank <= m
        for j in range(G.ngens):
            e = [int(i == j) for i in range(G.ngens)]
            assert G.element(G.lift_element(e)) == G.reduce(e)
        for j in range(n):
            assert G.element([row[j] for row in A]) == G.zero()

    def test_element_order(self):
        G = direct_sum_group([2, 4], 1)
        assert G.element_order((1, 2, 0)) == 2
        assert G.element_order((1, 1, 0)) == 4
        assert G.element_order((0, 0, 3)) == 0
        assert G.order is None and direct_sum_group([2, 4], 0).order == 8

    def test_solve(self):
        assert solve([[2, 0], [0, 3]], [4, 9]) == [2, 3]
        assert solve([[2]], [3]) is None


class TestHoms:
    def test_identity(self):
        Z4 = cyclic(4)
        assert apply(GroupHom.identity(Z4), [3]) == (3,)

    def test_reduction(self):
        f = hom(free_group(1), cyclic(2), [[1]])
        assert f([2]) == (0,)

    def test_ill_defined(self):
        with pytest.raises(IllDefinedHom):
            hom(cyclic(2), free_group(1), [[1]])
        with pytest.raises(IllDefinedHom):
            hom(cyclic(2), cyclic(4), [[1]])
        assert hom(cyclic(4), cyclic(2), [[1]])([3]) == (1,)

    def test_from_ambient_checks_relations(self):
        with pytest.raises(IllDefinedHom):
            GroupHom.from_ambient(cokernel([[2]]), cokernel([[3]]), [[1]])
        f = GroupHom.from_ambient(cokernel([[2]]), cokernel([[4]]), [[2]])
        assert f([1]) == (2,)

    def test_compose_order(self):
        f = hom(free_group(1), cyclic(4), [[1]])
        g = hom(cyclic(4), cyclic(2), [[1]])
        assert compose(f, g)([3]) == (1,)


class TestExactness:
    def setup_method(self):
        self.Z2, self.Z4 = cyclic(2), cyclic(4)
        self.inj = hom(self.Z2, self.Z4, [[2]])
        self.proj = hom(self.Z4, self.Z2, [[1]])

    def test_short_exact(self):
        zero = free_group(0)
        assert is_exact_at(self.inj, self.proj)
        assert is_exact_at(GroupHom.zero(zero, self.Z2), self.inj)
        assert is_exact_at(self.proj, GroupHom.zero(self.Z2, zero))

    def test_not_exact(self):
        Z = free_group(1)
        zero_map = GroupHom.zero(Z, Z)
        assert not is_exact_at(zero_map, zero_map)
        # the doubling map on Z/4 has kernel {0,2} and image {0,2}
        dbl = hom(self.Z4, self.Z4, [[2]])
        assert is_exact_at(dbl, dbl)
        assert not is_exact_at(GroupHom.identity(self.Z4), GroupHom.identity(self.Z4))

    def test_surjection_then_zero(self):
        Z = free_group(1)
        f = hom(Z, self.Z4, [[1]])
        assert is_exact_at(f, GroupHom.zero(self.Z4, Z))


def _elements(G):
    return list(itertools.product(*[range(d) for d in G.torsion]))


def _brute_automorphisms(G):
    """All automorphisms of a finite group by brute force over generator images."""
    els = _elements(G)
    out = []
    for imgs in itertools.product(els, repeat=G.ngens):
        try:
            h = hom(G, G, [list(r) for r in zip(*imgs)] if imgs else [])
        except IllDefinedHom:
            continue
        if len({h(x) for x in els}) == len(els):
            out.append(h)
    return out


class TestElementIso:
    def test_factor_mismatch(self):
        assert not groups_isomorphic(direct_sum_group([2, 4], 0), cyclic(8))

    def test_integers(self):
        Z = free_group(1)
        res = iso_with_element(Z, [1], Z, [-1])
        assert res.status == "found" and res.hom([1]) == (-1,)
        assert iso_with_element(Z, [1], Z, [2]).status == "none"

    @pytest.mark.parametrize("torsion", [(2,), (4,), (6,), (2, 2), (2, 4), (3, 6)])
    def test_finite_groups_against_brute_force(self, torsion):
        G = direct_sum_group(torsion, 0)
        auts = _brute_automorphisms(G)
        els = _elements(G)
        for u1 in els:
            reachable = {h(u1) for h in auts}
            for u2 in els:
                res = iso_with_element(G, u1, G, u2)
                assert res.status == ("found" if u2 in reachable else "none"), (u1, u2)
                if res:
                    assert res.hom(u1) == tuple(u2)

    @given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=2), st.integers(1, 2),
           st.randoms(use_true_random=False))
    def test_mixed_groups_find_images(self, tors, r, rnd):
        tors = sorted(tors)
        # keep a valid divisibility chain
        if len(tors) == 2 and tors[1] % tors[0]:
            tors = [tors[0], tors[0] * tors[1]]
        G = direct_sum_group(tors, r)
        k = len(tors)
        auts = _brute_automorphisms(direct_sum_group(tors, 0)) if k else []
        alpha = rnd.choice(auts).matrix if auts else []
        gamma = zmod.identity(r)
        for _ in range(4):
            i, j = rnd.sample(range(r), 2) if r > 1 else (0, 0)
            if i != j:
                q = rnd.randint(-2, 2)
                gamma = [[gamma[a][b] + (q * gamma[j][b] if a == i else 0) for b in range(r)]
                         for a in range(r)]
            else:
                gamma = [[-x for x in row] for row in gamma]
        phi = [[0] * (k + r) for _ in range(k + r)]
        for a in range(k):
            for b in range(k):
                phi[a][b] = alpha[a][b]
            for b in range(r):
                phi[a][k + b] = rnd.randint(0, 5)
        for a in range(r):
            for b in range(r):
                phi[k + a][k + b] = gamma[a][b]
        aut = hom(G, G, phi)
        u1 = [rnd.randint(0, 7) for _ in range(k)] + [rnd.randint(-6, 6) for _ in range(r)]
        u2 = aut(u1)
        res = iso_with_element(G, u1, G, u2)
        assert res.status == "found"
        assert res.hom(u1) == u2
        # the returned map is bijective: its matrix with the relations spans everything
        rel = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(tors)]
        rel += [[0] * k for _ in range(r)]
        stacked = zmod.hstack(res.hom.matrix, rel, k + r)
        assert invariant_factors(stacked) == (1,) * (k + r)
        assert cokernel(res.hom.matrix, rows=k + r).free_rank == 0

    def test_divisibility_obstruction(self):
        G = direct_sum_group([2], 1)
        assert iso_with_element(G, [0, 1], G, [1, 1]).status == "found"
        # (0, 2) is twice (0, 1) while (1, 2) is not divisible by 2
        assert iso_with_element(G, [0, 2], G, [1, 2]).status == "none"

    def test_budget(self):
        G = direct_sum_group([2, 2, 2], 0)
        res = iso_with_element(G, [1, 0, 0], G, [0, 0, 1], bound=1)
        assert res.status in ("found", "unknown")


def test_random_seed_smoke():
    rng = random.Random(7)
    for _ in range(50):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        check_snf(A, n)
