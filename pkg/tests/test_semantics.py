"""Semantic oracle tests, checked against independent brute-force enumeration."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from euler_tactics.diagram import Conjunction, Implication, UnitaryDiagram, Zone, venn_zones
from euler_tactics.semantics import (
    ImplicationPresent,
    VocabularyMismatch,
    cells_of_zone,
    empty_cells,
    entails,
    equivalent,
    goal_valid,
)

from conftest import (
    bf_cells_of_zone,
    bf_entails,
    chain_theorem,
    conjunctive_diagrams,
    empty_set_diagram,
    flat_theorem,
    random_conjunctive,
    subset_diagram,
    unitary_diagrams,
)

Z = Zone
ABC = frozenset({"A", "B", "C"})


def cells(*label_sets):
    return frozenset(frozenset(s) for s in label_sets)


class TestCellsOfZone:
    def test_free_label_varies(self):
        got = cells_of_zone(Z("B"), frozenset({"B", "C"}), ABC)
        assert got == cells({"B"}, {"A", "B"})

    def test_no_free_labels(self):
        assert cells_of_zone(Z(), frozenset({"A"}), frozenset({"A"})) == cells(set())

    def test_vocabulary_mismatch(self):
        with pytest.raises(VocabularyMismatch):
            cells_of_zone(Z("A"), frozenset({"A"}), frozenset({"B"}))

    @given(unitary_diagrams(), st.data())
    def test_matches_brute_force_and_cardinality(self, d, data):
        v = ABC | frozenset({"D"})
        zone = data.draw(st.sampled_from(sorted(venn_zones(d.contours))))
        got = cells_of_zone(zone, d.contours, v)
        assert got == frozenset(bf_cells_of_zone(zone, d.contours, v))
        assert len(got) == 2 ** (len(v) - len(d.contours))


class TestEmptyCells:
    def test_subset_diagram_forces_outside_cells(self):
        # A ⊆ B over {A,B}: the missing (A) zone expands to two cells of {A,B,C}
        got = empty_cells(subset_diagram("A", "B"), ABC)
        assert got == cells({"A"}, {"A", "C"})

    def test_unshaded_venn_forces_nothing(self):
        d = UnitaryDiagram({"A", "B"}, venn_zones(["A", "B"]))
        assert empty_cells(d, ABC) == frozenset()

    def test_conjunction_is_union(self):
        u = subset_diagram("A", "B")
        assert empty_cells(Conjunction(u, u), ABC) == empty_cells(u, ABC)

    @given(conjunctive_diagrams(), conjunctive_diagrams())
    def test_union_property(self, a, b):
        v = ABC
        assert empty_cells(Conjunction(a, b), v) == empty_cells(a, v) | empty_cells(b, v)

    def test_rejects_implications(self):
        u = UnitaryDiagram()
        with pytest.raises(ImplicationPresent):
            empty_cells(Implication(u, u), ABC)


class TestEntails:
    def test_subset_chain(self):
        premise = Conjunction(subset_diagram("A", "B"), subset_diagram("B", "C"))
        conclusion = subset_diagram("A", "C")
        # conclusion forces exactly the A-outside-C cells, premise forces more
        assert empty_cells(conclusion, ABC) == cells({"A"}, {"A", "B"})
        assert empty_cells(premise, ABC) == cells({"A"}, {"A", "C"}, {"B"}, {"A", "B"})
        assert entails(premise, conclusion)
        assert not entails(conclusion, premise)

    @given(conjunctive_diagrams())
    def test_reflexive(self, d):
        assert entails(d, d)

    def test_unshaded_diagram_does_not_force_emptiness(self):
        premise = UnitaryDiagram({"A"}, [Z(), Z("A")])
        assert not entails(premise, empty_set_diagram("A"))

    @given(conjunctive_diagrams(), conjunctive_diagrams(), conjunctive_diagrams())
    def test_monotone_in_premise(self, a, b, c):
        if entails(a, c):
            assert entails(Conjunction(a, b), c)

    def test_vocabulary_extension_invariance(self):
        rng = random.Random(7)
        for _ in range(200):
            a = random_conjunctive(rng)
            b = random_conjunctive(rng)
            v = ABC
            extended = v | {"Fresh"}
            base = empty_cells(b, v) <= empty_cells(a, v)
            ext = empty_cells(b, extended) <= empty_cells(a, extended)
            assert base == ext

    def test_agrees_with_model_enumeration(self):
        rng = random.Random(11)
        for _ in range(300):
            a = random_conjunctive(rng)
            b = random_conjunctive(rng)
            assert entails(a, b) == bf_entails(a, b)


class TestEquivalent:
    def test_missing_and_shaded_zone_interchange(self):
        d = subset_diagram("A", "B")
        shaded_instead = UnitaryDiagram(
            {"A", "B"}, [Z(), Z("A"), Z("B"), Z(["A", "B"])], [Z("A")]
        )
        assert equivalent(d, shaded_instead)

    def test_shading_changes_meaning(self):
        a = UnitaryDiagram({"A"}, [Z(), Z("A")])
        b = UnitaryDiagram({"A"}, [Z(), Z("A")], [Z("A")])
        assert not equivalent(a, b)

    def test_transitive_on_random_triples(self):
        rng = random.Random(23)
        checked = 0
        for _ in range(3000):
            a, b, c = (random_conjunctive(rng, max_units=2) for _ in range(3))
            if equivalent(a, b) and equivalent(b, c):
                checked += 1
                assert equivalent(a, c)
        assert checked > 0


class TestGoalValid:
    def test_reflexive_goal(self):
        u = subset_diagram("A", "B")
        assert goal_valid(Implication(u, u))

    def test_flat_benchmark(self):
        assert goal_valid(flat_theorem())
        assert goal_valid(chain_theorem())

    def test_unshaded_premise_does_not_prove_emptiness(self):
        goal = Implication(UnitaryDiagram({"A"}, [Z(), Z("A")]), empty_set_diagram("A"))
        assert not goal_valid(goal)
