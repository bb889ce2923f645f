"""Clutter and proof metrics."""

from fractions import Fraction

from hypothesis import given

from euler_tactics.diagram import Conjunction, Implication, UnitaryDiagram, Zone, normalize
from euler_tactics.engine import ProofState, apply_rule, new_proof
from euler_tactics.metrics import (
    clutter_state,
    clutter_unitary,
    metrics_json,
    proof_metrics,
)
from euler_tactics.rules import RuleApplication, RuleName

from conftest import fig1_d1, unitary_diagrams

Z = Zone


class TestClutter:
    def test_fig1_clutter(self):
        assert clutter_unitary(fig1_d1()) == 5

    def test_unshaded_venn_two_contours(self):
        from euler_tactics.diagram import venn_diagram

        assert clutter_unitary(venn_diagram(["A", "B"])) == 4

    def test_trivial_diagram(self):
        assert clutter_unitary(UnitaryDiagram()) == 1

    @given(unitary_diagrams())
    def test_invariant_under_normalize(self, d):
        assert clutter_unitary(normalize(d)) == clutter_unitary(d)


class TestClutterState:
    def test_empty_state_is_zero(self):
        assert clutter_state(ProofState()) == 0

    def test_reflexive_goal_counts_both_sides(self):
        d1 = fig1_d1()
        assert clutter_state(ProofState([Implication(d1, d1)])) == 10

    def test_additive_over_subgoals(self):
        d1 = fig1_d1()
        goal = Implication(d1, d1)
        assert clutter_state(ProofState([goal, goal])) == 20

    def test_antecedent_only_mode(self):
        d1 = fig1_d1()
        goal = Implication(Conjunction(d1, d1), d1)
        s = ProofState([goal])
        assert clutter_state(s) == 15
        assert clutter_state(s, include_consequents=False) == 10


class TestProofMetrics:
    def test_fresh_proof(self):
        d1 = fig1_d1()
        p = new_proof(Implication(d1, d1))
        m = proof_metrics(p)
        assert m.length == 0
        assert m.max_velocity == 0
        assert m.total_clutter == 10
        assert m.average_clutter == Fraction(10)

    def test_introduce_shaded_zone_velocity_is_two(self):
        d1 = fig1_d1()
        p = new_proof(Implication(d1, d1))
        p = apply_rule(
            p, RuleApplication(RuleName.INTRODUCE_SHADED_ZONE, 0, zone=Z(["A", "B"]))
        )
        m = proof_metrics(p)
        assert m.max_velocity == 2

    def test_erase_shading_velocity_is_one(self):
        d1 = fig1_d1()
        p = new_proof(Implication(d1, d1))
        p = apply_rule(p, RuleApplication(RuleName.ERASE_SHADING, 0, zone=Z("A")))
        assert proof_metrics(p).max_velocity == 1

    def test_introduce_contour_velocity_counts_zones_and_shading(self):
        d1 = fig1_d1()  # 4 zones, 1 shaded: introducing a contour duplicates both
        p = new_proof(Implication(d1, d1))
        p = apply_rule(p, RuleApplication(RuleName.INTRODUCE_CONTOUR, 0, contour="D"))
        assert proof_metrics(p).max_velocity == 4 + 1

    def test_average_is_exact(self):
        d1 = fig1_d1()
        p = new_proof(Implication(d1, d1))
        p = apply_rule(p, RuleApplication(RuleName.ERASE_SHADING, 0, zone=Z("A")))
        m = proof_metrics(p)
        assert m.average_clutter == Fraction(19, 2)
        assert m.average_clutter * len(p.states) == m.total_clutter


class TestMetricsJson:
    def test_fixed_keys(self):
        d1 = fig1_d1()
        p = new_proof(Implication(d1, d1))
        got = metrics_json(proof_metrics(p))
        assert got == {
            "length": 0,
            "total_clutter": 10,
            "average_clutter": {"num": 10, "den": 1},
            "max_velocity": 0,
        }
