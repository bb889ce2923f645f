"""Shared fixtures: diagram builders, benchmark theorems and brute-force oracles.

The oracles here are written independently of the package internals (plain
set arithmetic and model enumeration) so they can vouch for the semantics
module rather than mirror it.
"""

from __future__ import annotations

import random
from itertools import chain, combinations

import pytest
from hypothesis import strategies as st

from euler_tactics.diagram import (
    BACKGROUND,
    Conjunction,
    Implication,
    UnitaryDiagram,
    Zone,
    unitary_items,
    venn_zones,
)

Z = Zone


# ---------------------------------------------------------------------------
# Diagram builders


def subset_diagram(small: str, big: str) -> UnitaryDiagram:
    """small ⊆ big: the small-outside-big zone is missing."""
    return UnitaryDiagram({small, big}, [Z(), Z(big), Z({small, big})])


def disjoint_diagram(a: str, b: str) -> UnitaryDiagram:
    """a ∩ b = ∅: the overlap zone is missing."""
    return UnitaryDiagram({a, b}, [Z(), Z(a), Z(b)])


def fig1_d1() -> UnitaryDiagram:
    """Three contours, four zones, shading inside A only."""
    return UnitaryDiagram({"A", "B", "C"}, [Z(), Z("A"), Z("B"), Z("C")], [Z("A")])


def empty_set_diagram(label: str) -> UnitaryDiagram:
    """label = ∅ expressed by shading its only zone."""
    return UnitaryDiagram({label}, [Z(), Z(label)], [Z(label)])


def flat_theorem() -> Implication:
    """Five-contour benchmark with a flat conjunction structure."""
    return Implication(
        Conjunction(
            Conjunction(subset_diagram("C", "B"), disjoint_diagram("D", "B")),
            Conjunction(subset_diagram("E", "A"), disjoint_diagram("A", "E")),
        ),
        _pairwise_disjoint_consequent(),
    )


def deep_theorem() -> Implication:
    """The same content as flat_theorem with a nested conjunction structure."""
    return Implication(
        Conjunction(
            Conjunction(
                subset_diagram("C", "B"),
                Conjunction(subset_diagram("E", "A"), disjoint_diagram("D", "B")),
            ),
            disjoint_diagram("A", "E"),
        ),
        _pairwise_disjoint_consequent(),
    )


def _pairwise_disjoint_consequent() -> UnitaryDiagram:
    return UnitaryDiagram({"C", "D", "E"}, [Z(), Z("C"), Z("D"), Z("E")], [Z("E")])


def chain_theorem() -> Implication:
    """A ⊆ B and B ⊆ C entail A ⊆ C."""
    return Implication(
        Conjunction(subset_diagram("A", "B"), subset_diagram("B", "C")),
        subset_diagram("A", "C"),
    )


@pytest.fixture
def t_flat() -> Implication:
    return flat_theorem()


@pytest.fixture
def t_deep() -> Implication:
    return deep_theorem()


# ---------------------------------------------------------------------------
# Exhaustive and random corpora


def powerset(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def all_unitary_diagrams(labels=("A", "B")) -> list[UnitaryDiagram]:
    """Every unitary diagram whose contours are a subset of ``labels``."""
    out = []
    for contours in powerset(labels):
        venn = sorted(venn_zones(contours))
        optional = [z for z in venn if z != BACKGROUND]
        for extra in powerset(optional):
            zones = (BACKGROUND,) + tuple(extra)
            for shaded in powerset(zones):
                out.append(UnitaryDiagram(contours, zones, shaded))
    return out


def random_unitary(rng: random.Random, labels=("A", "B", "C")) -> UnitaryDiagram:
    contours = [l for l in labels if rng.random() < 0.7]
    venn = sorted(venn_zones(contours))
    zones = {BACKGROUND} | {z for z in venn if rng.random() < 0.6}
    shaded = {z for z in zones if rng.random() < 0.3}
    return UnitaryDiagram(contours, zones, shaded)


def random_conjunctive(rng: random.Random, labels=("A", "B", "C"), max_units=3):
    units = [random_unitary(rng, labels) for _ in range(rng.randint(1, max_units))]
    tree = units[0]
    for u in units[1:]:
        tree = Conjunction(tree, u) if rng.random() < 0.5 else Conjunction(u, tree)
    return tree


def random_valid_goal(rng: random.Random, labels=("A", "B", "C")) -> Implication:
    """A random implication that holds: the consequent only claims
    emptiness for regions the premise already forces empty, weakened at
    random (shading dropped or zones left missing)."""
    from euler_tactics.semantics import cells_of_zone, empty_cells

    premise = random_conjunctive(rng, labels=labels, max_units=3)
    contour_pool = sorted({l for _, u in unitary_items(premise) for l in u.contours})
    sub = frozenset(l for l in contour_pool if rng.random() < 0.7)
    if rng.random() < 0.2:
        sub |= {"Fresh"}
    v = frozenset(contour_pool) | sub
    forced = empty_cells(premise, v)
    zones, shaded = {BACKGROUND}, set()
    for z in sorted(venn_zones(sub)):
        if cells_of_zone(z, sub, v) <= forced:
            choice = rng.random()
            if choice < 0.4 and z.in_set:
                continue  # claim emptiness via missingness
            zones.add(z)
            if choice < 0.8:
                shaded.add(z)
        else:
            zones.add(z)
    return Implication(premise, UnitaryDiagram(sub, zones, shaded))


# ---------------------------------------------------------------------------
# Independent brute-force oracles


def bf_cells_of_zone(z: Zone, d_contours, v) -> set[frozenset]:
    """All subsets of v whose projection onto the contours is the zone."""
    return {frozenset(c) for c in powerset(v) if frozenset(c) & frozenset(d_contours) == z.in_set}


def bf_forced_insets(u: UnitaryDiagram) -> set[frozenset]:
    """In-sets over u's contours that u declares empty (shaded or missing)."""
    present = {z.in_set for z in u.zones}
    shaded = {z.in_set for z in u.shaded}
    return {frozenset(s) for s in powerset(u.contours) if frozenset(s) not in present} | shaded


def bf_required_mask(d, cells: list[frozenset]) -> int:
    """Bitmask of cells the diagram requires empty (bit i = cells[i])."""
    mask = 0
    for _, u in unitary_items(d):
        forced = bf_forced_insets(u)
        for i, cell in enumerate(cells):
            if cell & u.contours in forced:
                mask |= 1 << i
    return mask


def bf_entails(premise, conclusion) -> bool:
    """Model-enumeration entailment: every emptiness assignment satisfying
    the premise satisfies the conclusion.  Exponential in 2^|v|; use with
    vocabularies of at most 3 labels."""
    v = set()
    for d in (premise, conclusion):
        for _, u in unitary_items(d):
            v |= u.contours
    cells = [frozenset(c) for c in powerset(sorted(v))]
    need_p = bf_required_mask(premise, cells)
    need_c = bf_required_mask(conclusion, cells)
    for model in range(1 << len(cells)):  # bit i set = cells[i] is empty
        if need_p & ~model == 0 and need_c & ~model != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Hypothesis strategies

LABELS = ("A", "B", "C")


@st.composite
def unitary_diagrams(draw, labels=LABELS, max_contours=3):
    contours = draw(
        st.frozensets(st.sampled_from(list(labels)), max_size=min(max_contours, len(labels)))
    )
    venn = sorted(venn_zones(contours))
    zones = frozenset({BACKGROUND}) | draw(st.frozensets(st.sampled_from(venn)))
    shaded = draw(st.frozensets(st.sampled_from(sorted(zones))))
    return UnitaryDiagram(contours, zones, shaded)


@st.composite
def conjunctive_diagrams(draw, labels=LABELS):
    return draw(
        st.recursive(
            unitary_diagrams(labels),
            lambda kids: st.builds(Conjunction, kids, kids),
            max_leaves=4,
        )
    )
