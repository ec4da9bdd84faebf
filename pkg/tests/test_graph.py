import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import condition_K_brute, first_return_walks, reach_pos_floyd
from kweb import (INF, Graph, GraphError, GraphParseError, format_graph, induced_subgraph,
                  is_amplified, parse_graph, reachability, regular_rows, satisfies_condition_K,
                  simple_cycle_count_at, vertex_matrix)
from kweb.graph import permute, to_dot


def G(m, labels=None):
    return Graph.from_matrix(m, labels)


PATH3 = G([[0, 1, 0], [0, 0, 1], [0, 0, 0]], "v w x".split())


class TestParse:
    def test_single_edge(self):
        g = parse_graph("vertices v w\nedge v w 1")
        assert g.n == 2 and g.mult == ((0, 1), (0, 0))
        assert g.labels == ("v", "w")

    def test_inf_loop(self):
        assert parse_graph("vertices v\nedge v v inf").mult == ((INF,),)

    def test_undeclared(self):
        with pytest.raises(GraphParseError, match="undeclared vertex x"):
            parse_graph("vertices v\nedge v x 1")

    @pytest.mark.parametrize("text, line", [
        ("vertices v v", 1),
        ("vertices v\nedge v v -1", 2),
        ("vertices v\n\nedge v v", 3),
        ("vertices v\nedges v v 1", 2),
        ("vertices v\nedge v v two", 2),
        ("vertices\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GraphParseError) as exc:
            parse_graph(text)
        assert exc.value.lineno == line
        assert str(exc.value).startswith(f"line {line}:")

    def test_comments_blank_lines_and_summing(self):
        g = parse_graph("# header\nvertices a\n\nedge a b 2  # trailing\nvertices b\nedge a b 1\n")
        assert g.mult == ((0, 3), (0, 0))

    def test_inf_absorbs_sum(self):
        assert parse_graph("vertices a\nedge a a 2\nedge a a INF").mult == ((INF,),)

    def test_empty_text(self):
        assert parse_graph("").n == 0

    @given(graphs(5, values=(0, 1, 2, 7, INF)))
    def test_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g


class TestGraphModel:
    def test_constructor_rejects_bad_data(self):
        with pytest.raises(GraphError):
            G([[0, 1]])
        with pytest.raises(GraphError):
            G([[-1]])
        with pytest.raises(GraphError):
            G([[1.5]])
        with pytest.raises(GraphError):
            G([[2**64]])
        with pytest.raises(GraphError):
            G([[0, 0], [0, 0]], ["a", "a"])
        with pytest.raises(GraphError):
            G([[0]], ["a|b"])

    def test_vertex_matrix_and_regular_rows(self):
        g = G([[3]])
        assert vertex_matrix(g) == [[3]] and regular_rows(g) == [0]
        assert regular_rows(G([[0, 1], [0, 0]])) == [0]
        amp = G([[0, INF], [0, 0]])
        assert regular_rows(amp) == []
        assert amp.infinite_emitters == [0] and amp.sinks == [1]

    @given(graphs(6, values=(0, 1, INF)))
    def test_vertex_classes_partition(self, g):
        parts = [set(g.sinks), set(g.infinite_emitters), set(g.regular_vertices)]
        assert set().union(*parts) == set(range(g.n))
        assert sum(map(len, parts)) == g.n

    def test_dot(self):
        dot = to_dot(G([[0, INF], [2, 0]], ["a", "b"]))
        assert '"a" -> "b" [label="∞"]' in dot and '"b" -> "a" [label="2"]' in dot
        assert dot.startswith("digraph")


class TestReachability:
    def test_path(self):
        r = reachability(PATH3)
        pairs = {(i, j) for i in range(3) for j in range(3) if r.reach_pos(i, j)}
        assert pairs == {(0, 1), (1, 2), (0, 2)}

    def test_two_cycle(self):
        r = reachability(G([[0, 1], [1, 0]]))
        assert all(r.reach_pos(i, j) for i in range(2) for j in range(2))

    def test_edgeless(self):
        r = reachability(G([[0, 0], [0, 0]]))
        assert r.matrix() == [[False, False], [False, False]]
        assert r.matrix(reflexive=True) == [[True, False], [False, True]]

    @given(graphs(7, values=(0, 1, INF)))
    def test_matches_floyd_warshall(self, g):
        r = reachability(g)
        assert r.matrix() == reach_pos_floyd(g.mult)
        m = r.matrix(reflexive=True)
        n = g.n
        assert all(m[i][i] for i in range(n))
        assert all(not (m[i][j] and m[j][k]) or m[i][k]
                   for i in range(n) for j in range(n) for k in range(n))


class TestCycles:
    @pytest.mark.parametrize("m, v, cap, expected", [
        ([[1]], 0, 2, 1),
        ([[2]], 0, 2, 2),
        ([[1, 1], [1, 0]], 0, 3, 2),
        ([[0, 1], [0, 0]], 0, 2, 0),
        ([[INF]], 0, 5, 5),
        ([[0, 1], [1, 1]], 0, 2, 2),
    ])
    def test_examples(self, m, v, cap, expected):
        assert simple_cycle_count_at(G(m), v, cap) == expected

    def test_cap_must_be_positive(self):
        with pytest.raises(ValueError):
            simple_cycle_count_at(G([[1]]), 0, 0)

    @pytest.mark.parametrize("m, expected", [
        ([[1]], False),
        ([[2]], True),
        ([[0, 1, 0], [0, 0, 1], [0, 0, 0]], True),
        ([[0, 1], [1, 0]], False),
        ([[0, 0], [0, 0]], True),
        ([[INF]], True),
        ([[0, 1], [1, 1]], True),
    ])
    def test_condition_K_examples(self, m, expected):
        assert satisfies_condition_K(G(m)) is expected

    @given(graphs(4, values=(0, 1, 2)), st.integers(1, 4))
    def test_counts_match_walk_enumeration(self, g, cap):
        for v in range(g.n):
            assert simple_cycle_count_at(g, v, cap) == first_return_walks(g.mult, v, cap)

    @given(graphs(5, values=(0, 1, 2)))
    def test_condition_K_matches_oracle(self, g):
        assert satisfies_condition_K(g) == condition_K_brute(g.mult)


class TestSubgraphs:
    def test_examples(self):
        sub = induced_subgraph(PATH3, [1, 2])
        assert sub.labels == ("w", "x") and sub.mult == ((0, 1), (0, 0))
        assert induced_subgraph(PATH3, range(3)) == PATH3
        assert induced_subgraph(PATH3, []).n == 0
        assert induced_subgraph(PATH3, 0b110) == sub

    @given(graphs(6), st.data())
    def test_restriction_commutes(self, g, data):
        s = data.draw(st.sets(st.integers(0, max(g.n - 1, 0))).filter(
            lambda x: all(i < g.n for i in x)))
        t = data.draw(st.sets(st.sampled_from(sorted(s))) if s else st.just(set()))
        keep = sorted(s)
        inner = induced_subgraph(induced_subgraph(g, keep), [keep.index(i) for i in t])
        assert inner == induced_subgraph(g, t)

    def test_is_amplified(self):
        assert is_amplified(G([[INF]]))
        assert not is_amplified(G([[1]]))
        assert is_amplified(G([[0, 0], [0, 0]]))

    @given(graphs(5), st.randoms(use_true_random=False))
    def test_permute_preserves_condition_K(self, g, rnd):
        order = list(range(g.n))
        rnd.shuffle(order)
        h = permute(g, order)
        assert satisfies_condition_K(h) == satisfies_condition_K(g)
        assert sorted(map(sorted, h.mult)) == sorted(map(sorted, g.mult))
