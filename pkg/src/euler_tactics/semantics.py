"""Decision oracle for the conjunctive Euler fragment.

The only constraints a shaded or missing zone can express are "this region
is empty", so the semantics of a conjunctive diagram is exactly the set of
atomic cells (minimal regions over a full vocabulary of labels) it forces
empty.  Entailment is cell-set inclusion, which is sound and complete for
this fragment and doubles as a runtime side-condition and test oracle.
"""

from __future__ import annotations

from itertools import chain, combinations
from typing import Iterable

from .diagram import (
    CompoundDiagram,
    EulerError,
    Implication,
    Zone,
    all_contours,
    missing_zones,
    unitary_items,
)

# A cell is an atomic Venn region over the full vocabulary, named by the
# labels it lies inside; a vocabulary is just a label set.
Cell = frozenset[str]
Vocabulary = frozenset[str]


class SemanticsError(EulerError):
    code = "semantics-error"


class VocabularyMismatch(SemanticsError):
    code = "vocabulary-mismatch"


class ImplicationPresent(SemanticsError):
    code = "implication-node-present"


class MalformedGoal(SemanticsError):
    code = "malformed-goal"


def _subsets(labels: Iterable[str]) -> list[frozenset[str]]:
    items = sorted(labels)
    return [
        frozenset(c)
        for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))
    ]


def cells_of_zone(z: Zone, d_contours: frozenset[str], v: Vocabulary) -> frozenset[Cell]:
    """Cells of ``v`` whose projection onto ``d_contours`` is the zone.

    These are the atomic regions the zone decomposes into once contours
    outside the diagram are taken into account.
    """
    if not z.in_set <= d_contours:
        raise VocabularyMismatch(f"zone {z} not over contours {sorted(d_contours)}")
    if not d_contours <= v:
        raise VocabularyMismatch(
            f"contours {sorted(d_contours)} not within vocabulary {sorted(v)}"
        )
    free = v - d_contours
    return frozenset(z.in_set | extra for extra in _subsets(free))


def empty_cells(d: CompoundDiagram, v: Vocabulary) -> frozenset[Cell]:
    """All cells of ``v`` the diagram forces empty.

    Shaded zones and missing zones both denote empty regions; a
    conjunction forces the union of what its conjuncts force.
    """
    if isinstance(d, Implication):
        raise ImplicationPresent("empty_cells is defined on conjunctive diagrams only")
    out: set[Cell] = set()
    for _, u in unitary_items(d):
        if not u.contours <= v:
            raise VocabularyMismatch(
                f"diagram contours {sorted(u.contours)} exceed vocabulary {sorted(v)}"
            )
        for z in u.shaded | missing_zones(u):
            out |= cells_of_zone(z, u.contours, v)
    return frozenset(out)


def entails(premise: CompoundDiagram, conclusion: CompoundDiagram) -> bool:
    """True iff every model of the premise satisfies the conclusion.

    Complete for this fragment: a diagram is satisfied exactly when its
    forced cells are empty, so entailment is inclusion of forced-cell sets
    over the shared vocabulary.
    """
    v = all_contours(premise) | all_contours(conclusion)
    return empty_cells(conclusion, v) <= empty_cells(premise, v)


def equivalent(a: CompoundDiagram, b: CompoundDiagram) -> bool:
    v = all_contours(a) | all_contours(b)
    return empty_cells(a, v) == empty_cells(b, v)


def goal_valid(g: Implication) -> bool:
    """Whether an implication subgoal holds semantically."""
    if not isinstance(g, Implication):
        raise MalformedGoal(f"not an implication goal: {g!r}")
    return entails(g.antecedent, g.consequent)
