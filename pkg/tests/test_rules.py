"""Inference rule behaviour and soundness against the semantic oracle."""

import random

import pytest
from hypothesis import given

from euler_tactics.diagram import (
    BACKGROUND,
    Conjunction,
    UnitaryDiagram,
    Zone,
    missing_zones,
    venn_zones,
)
from euler_tactics.rules import (
    BackgroundZoneProtected,
    ContourAbsent,
    ContourAlreadyPresent,
    ContourNotCopyable,
    ConjunctsDiffer,
    NotForcedEmpty,
    RuleError,
    ZoneNotMissing,
    ZoneNotShaded,
    ZoneSetMismatch,
    combine,
    copy_contour,
    copy_shading,
    erase_contour,
    erase_shading,
    idempotency,
    introduce_contour,
    introduce_shaded_zone,
    remove_shaded_zone,
)
from euler_tactics.semantics import entails, equivalent

from conftest import all_unitary_diagrams, fig1_d1, random_unitary, unitary_diagrams

Z = Zone


def venn_ab(shaded=()):
    return UnitaryDiagram({"A", "B"}, venn_zones(["A", "B"]), shaded)


class TestEraseContour:
    def test_shaded_unshaded_merge_loses_shading(self):
        d = venn_ab(shaded=[Z("A")])
        got = erase_contour(d, "B")
        assert got == UnitaryDiagram({"A"}, [Z(), Z("A")])
        assert entails(d, got)

    def test_both_halves_shaded_keep_shading(self):
        d = venn_ab(shaded=[Z("A"), Z(["A", "B"])])
        got = erase_contour(d, "B")
        assert got == UnitaryDiagram({"A"}, [Z(), Z("A")], [Z("A")])
        # all information about the remaining contour is preserved
        assert equivalent(got, got) and entails(d, got)

    def test_erase_last_contour(self):
        d = UnitaryDiagram({"A"}, [Z(), Z("A")])
        assert erase_contour(d, "A") == UnitaryDiagram()

    def test_shaded_missing_merge_keeps_shading(self):
        # (A) shaded, (A B) missing: both halves denote the empty set
        d = UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z("B")], [Z("A")])
        got = erase_contour(d, "B")
        assert got.shaded == frozenset({Z("A")})

    def test_absent_contour_rejected(self):
        with pytest.raises(ContourAbsent):
            erase_contour(UnitaryDiagram(), "A")

    @given(unitary_diagrams())
    def test_always_entailed(self, d):
        for c in sorted(d.contours):
            assert entails(d, erase_contour(d, c))


class TestEraseShading:
    def test_removes_one_zone(self):
        d = venn_ab(shaded=[Z("A"), Z(["A", "B"])])
        assert erase_shading(d, Z(["A", "B"])).shaded == frozenset({Z("A")})

    def test_zones_unchanged(self):
        d = venn_ab(shaded=[Z("A")])
        got = erase_shading(d, Z("A"))
        assert got.zones == d.zones and got.shaded == frozenset()
        assert entails(d, got)

    def test_unshaded_zone_rejected(self):
        with pytest.raises(ZoneNotShaded):
            erase_shading(venn_ab(), Z("A"))


class TestIntroduceContour:
    def test_splits_every_zone_and_shading(self):
        d = UnitaryDiagram({"A"}, [Z(), Z("A")], [Z("A")])
        got = introduce_contour(d, "B")
        assert got == UnitaryDiagram(
            {"A", "B"},
            [Z(), Z("B"), Z("A"), Z(["A", "B"])],
            [Z("A"), Z(["A", "B"])],
        )

    @given(unitary_diagrams())
    def test_zone_count_doubles_and_equivalence(self, d):
        got = introduce_contour(d, "New")
        assert len(got.zones) == 2 * len(d.zones)
        assert equivalent(d, got)

    @given(unitary_diagrams())
    def test_introduce_then_erase_is_identity(self, d):
        assert erase_contour(introduce_contour(d, "New"), "New") == d

    def test_present_contour_rejected(self):
        with pytest.raises(ContourAlreadyPresent):
            introduce_contour(venn_ab(), "A")


class TestShadedZoneIntroductionRemoval:
    def test_fig1_gains_zone(self):
        d1 = fig1_d1()
        got = introduce_shaded_zone(d1, Z(["A", "B"]))
        assert len(got.zones) == 5
        assert got.shaded == d1.shaded | {Z(["A", "B"])}
        assert equivalent(d1, got)

    def test_all_missing_zones_yield_venn_form(self):
        d = fig1_d1()
        for z in sorted(missing_zones(d)):
            d = introduce_shaded_zone(d, z)
        assert len(d.zones) == 8

    def test_mutual_inverses(self):
        d1 = fig1_d1()
        z = Z(["A", "B"])
        assert remove_shaded_zone(introduce_shaded_zone(d1, z), z) == d1

    @given(unitary_diagrams())
    def test_equivalences(self, d):
        for z in sorted(missing_zones(d)):
            assert equivalent(d, introduce_shaded_zone(d, z))
        for z in sorted(d.shaded - {BACKGROUND}):
            assert equivalent(d, remove_shaded_zone(d, z))

    def test_present_zone_not_introducible(self):
        with pytest.raises(ZoneNotMissing):
            introduce_shaded_zone(venn_ab(), Z("A"))

    def test_background_protected(self):
        d = UnitaryDiagram({"A"}, [Z(), Z("A")], [Z()])
        with pytest.raises(BackgroundZoneProtected):
            remove_shaded_zone(d, Z())

    def test_unshaded_zone_not_removable(self):
        with pytest.raises(ZoneNotShaded):
            remove_shaded_zone(venn_ab(), Z("A"))


class TestCombine:
    def test_shading_unions(self):
        a = venn_ab(shaded=[Z("A")])
        b = venn_ab()
        assert combine(a, b).shaded == frozenset({Z("A")})
        c = venn_ab(shaded=[Z(["A", "B"])])
        assert combine(a, c).shaded == frozenset({Z("A"), Z(["A", "B"])})

    def test_commutative_shading(self):
        a = venn_ab(shaded=[Z("A")])
        b = venn_ab(shaded=[Z("B")])
        assert combine(a, b).shaded == combine(b, a).shaded

    def test_zone_mismatch_rejected(self):
        a = venn_ab()
        b = UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z("B")])
        with pytest.raises(ZoneSetMismatch):
            combine(a, b)

    @given(unitary_diagrams())
    def test_equivalence_with_conjunction(self, d):
        other = UnitaryDiagram(d.contours, d.zones, frozenset())
        assert equivalent(Conjunction(d, other), combine(d, other))


class TestCopyContour:
    def test_contour_placed_inside(self):
        # src says B sits inside A; dst only knows A
        src = UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z(["A", "B"])])
        dst = UnitaryDiagram({"A"}, [Z(), Z("A")])
        got = copy_contour(src, dst, "B")
        assert got == UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z(["A", "B"])])

    def test_disjointness_preserved(self):
        src = UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z("B")])
        dst = UnitaryDiagram({"A"}, [Z(), Z("A")])
        got = copy_contour(src, dst, "B")
        assert Z(["A", "B"]) not in got.zones
        assert equivalent(Conjunction(src, dst), Conjunction(src, got))

    def test_contour_already_there_rejected(self):
        d = venn_ab()
        with pytest.raises(ContourNotCopyable):
            copy_contour(d, d, "A")

    def test_accepted_copies_are_equivalences(self):
        rng = random.Random(5)
        accepted = 0
        for _ in range(400):
            src = random_unitary(rng, labels=("A", "B", "C"))
            dst = random_unitary(rng, labels=("B", "C", "D"))
            for c in sorted(src.contours - dst.contours):
                try:
                    got = copy_contour(src, dst, c)
                except RuleError:
                    continue
                accepted += 1
                assert equivalent(Conjunction(src, dst), Conjunction(src, got))
        assert accepted > 50


class TestCopyShading:
    def test_shades_the_corresponding_region(self):
        # src knows B is empty; dst draws B split by C
        src = UnitaryDiagram(
            {"A", "B"}, venn_zones(["A", "B"]), [Z("B"), Z(["A", "B"])]
        )
        dst = UnitaryDiagram({"B", "C"}, venn_zones(["B", "C"]))
        targets = frozenset({Z("B"), Z(["B", "C"])})
        got = copy_shading(src, dst, targets)
        assert got.shaded == targets
        assert equivalent(Conjunction(src, dst), Conjunction(src, got))

    def test_empty_targets_no_op(self):
        src = venn_ab()
        dst = venn_ab()
        assert copy_shading(src, dst, frozenset()) == dst

    def test_unforced_zone_rejected(self):
        src = venn_ab()
        dst = venn_ab()
        with pytest.raises(NotForcedEmpty):
            copy_shading(src, dst, frozenset({Z("A")}))

    def test_already_shaded_target_rejected(self):
        src = venn_ab(shaded=[Z("A")])
        dst = venn_ab(shaded=[Z("A")])
        with pytest.raises(RuleError):
            copy_shading(src, dst, frozenset({Z("A")}))


class TestIdempotency:
    def test_identical_conjuncts(self):
        u = venn_ab(shaded=[Z("A")])
        assert idempotency(Conjunction(u, u)) == u

    def test_reordered_construction_is_identical(self):
        a = UnitaryDiagram(["A", "B"], [Z(), Z("A"), Z("B"), Z(["B", "A"])])
        b = UnitaryDiagram(["B", "A"], [Z(["A", "B"]), Z("B"), Z("A"), Z()])
        assert idempotency(Conjunction(a, b)) == a

    def test_different_conjuncts_rejected(self):
        with pytest.raises(ConjunctsDiffer):
            idempotency(Conjunction(venn_ab(), venn_ab(shaded=[Z("A")])))


class TestSoundnessSweep:
    """Small exhaustive sweep; the full one lives in the acceptance suite."""

    def test_unary_rules_on_single_contour_corpus(self):
        for d in all_unitary_diagrams(labels=("A",)):
            for c in sorted(d.contours):
                assert entails(d, erase_contour(d, c))
            for z in sorted(d.shaded):
                assert entails(d, erase_shading(d, z))
            assert equivalent(d, introduce_contour(d, "B"))
            for z in sorted(missing_zones(d)):
                assert equivalent(d, introduce_shaded_zone(d, z))
            for z in sorted(d.shaded - {BACKGROUND}):
                assert equivalent(d, remove_shaded_zone(d, z))
