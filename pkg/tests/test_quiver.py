import pytest

from plabica.plabic import (
    PlabicError,
    build_checkboard,
    build_dual_checkboard,
    build_rectangle,
)
from plabica.quiver import Quiver, mutate_quiver, quiver_from_graph
from plabica.subsets import KSubset, dihedral_group


def _no_forbidden_structure(Q):
    for (u, v), m in Q.arrows.items():
        assert u != v, "loop"
        assert (v, u) not in Q.arrows, "2-cycle"
        assert not (Q.frozen[u] and Q.frozen[v]), "frozen-frozen arrow"
        assert m > 0


class TestConstruction:
    def test_rec_3_6_counts(self):
        Q = quiver_from_graph(build_rectangle(3, 6))
        assert len(Q.frozen) == 10
        assert sum(Q.frozen.values()) == 6

    def test_rec_2_4_star(self):
        Q = quiver_from_graph(build_rectangle(2, 4))
        mutable = Q.mutable_vertices()
        assert mutable == [KSubset(4, [2, 4])]
        w = mutable[0]
        into = Q.arrows_into(w)
        out = Q.arrows_out_of(w)
        assert set(into) | set(out) == {
            KSubset(4, [1, 2]),
            KSubset(4, [2, 3]),
            KSubset(4, [3, 4]),
            KSubset(4, [1, 4]),
        }
        assert len(into) == 2 and len(out) == 2

    def test_structure_clean(self):
        for k, n in [(2, 5), (3, 6), (3, 7)]:
            for builder in (build_rectangle, build_checkboard, build_dual_checkboard):
                _no_forbidden_structure(quiver_from_graph(builder(k, n)))

    def test_square_face_vertex_degrees(self):
        # quadrilateral faces receive two in- and two out-arrows
        G = build_checkboard(3, 6)
        Q = quiver_from_graph(G)
        for lab in G.mutable_labels():
            assert sum(Q.arrows_into(lab).values()) == 2
            assert sum(Q.arrows_out_of(lab).values()) == 2

    def test_two_cycles_cancel(self):
        frozen = {"a": False, "b": False}
        Q = Quiver(frozen, {("a", "b"): 2, ("b", "a"): 1})
        assert Q.arrows == {("a", "b"): 1}

    def test_not_reduced_rejected(self):
        from tests.test_plabic import two_cycle_graph

        with pytest.raises(PlabicError):
            quiver_from_graph(two_cycle_graph("black", "black"))


class TestMutation:
    def test_involution(self):
        Q = quiver_from_graph(build_checkboard(3, 7))
        for w in Q.mutable_vertices():
            assert mutate_quiver(mutate_quiver(Q, w), w) == Q

    def test_post_mutation_structure(self):
        Q = quiver_from_graph(build_checkboard(3, 6))
        for w in Q.mutable_vertices():
            _no_forbidden_structure(mutate_quiver(Q, w))

    def test_frozen_rejected(self):
        Q = quiver_from_graph(build_checkboard(2, 5))
        frozen_vertex = next(v for v, fr in Q.frozen.items() if fr)
        with pytest.raises(PlabicError):
            mutate_quiver(Q, frozen_vertex)

    def test_worked_example(self):
        # the worked mutation figure: a doubled composite appears at B -> D
        # and the composite F -> D cancels against the old D -> F
        frozen = {v: False for v in "ABwDEF"}
        arrows = {
            ("A", "B"): 1,
            ("B", "w"): 2,
            ("w", "D"): 1,
            ("D", "F"): 1,
            ("F", "w"): 1,
            ("B", "E"): 1,
        }
        M = mutate_quiver(Quiver(frozen, arrows), "w")
        assert M.arrows == {
            ("A", "B"): 1,
            ("w", "B"): 2,
            ("D", "w"): 1,
            ("w", "F"): 1,
            ("B", "E"): 1,
            ("B", "D"): 2,
        }


class TestCompatibility:
    @pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 6)])
    def test_graph_vs_quiver_mutation(self, k, n):
        G = build_checkboard(k, n)
        for lab in G.mutable_labels():
            H = G.mutate(lab)
            new = (set(H.label_collection().labels) - set(G.label_collection().labels)).pop()
            assert quiver_from_graph(H) == mutate_quiver(quiver_from_graph(G), lab).relabel(
                {lab: new}
            )

    def test_compatibility_commutes_with_action(self):
        G = build_checkboard(2, 6)
        for g in dihedral_group(6)[:4]:
            H = G.dihedral_act(g)
            for lab in H.mutable_labels():
                HH = H.mutate(lab)
                new = (
                    set(HH.label_collection().labels) - set(H.label_collection().labels)
                ).pop()
                assert quiver_from_graph(HH) == mutate_quiver(
                    quiver_from_graph(H), lab
                ).relabel({lab: new})


def test_json_and_dot():
    Q = quiver_from_graph(build_rectangle(2, 4))
    data = Q.to_json()
    assert len(data["vertices"]) == 5
    assert all("multiplicity" in a for a in data["arrows"])
    assert Q.to_dot().startswith("digraph")
