"""Abstract syntax of Euler diagrams.

A zone is identified by its in-set: the contour labels it lies inside.
A unitary diagram stores its contours, the zones that are drawn (present)
and the zones that are shaded; every combinatorially possible zone that is
not drawn is *missing* and denotes the empty set.  Compound diagrams are
binary conjunction trees of unitary diagrams, with a single implication
allowed only at the root of a proof goal.

All values are immutable and hashable; sets are stored as frozensets, so
structural equality is order-insensitive by construction and the fixed
total order used for deterministic iteration lives in the ``sorted_*``
helpers and the printer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Iterator, Union

LABEL_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# Path steps into a compound diagram: "L"/"R" select the left/right child
# of a Conjunction (or antecedent/consequent of an Implication).
LEFT = "L"
RIGHT = "R"
Path = tuple[str, ...]


class EulerError(Exception):
    """Base for all errors raised by the prover; ``code`` is a stable slug."""

    code = "error"


class DiagramError(EulerError):
    code = "invalid-diagram"


class InvalidLabel(DiagramError):
    code = "invalid-label"


class InvalidPath(EulerError):
    code = "invalid-path"


def check_label(name: str) -> str:
    if not isinstance(name, str) or not LABEL_PATTERN.match(name):
        raise InvalidLabel(f"invalid contour label: {name!r}")
    return name


def _label_set(labels: "Iterable[str] | str") -> frozenset[str]:
    # a bare string is one label, not a sequence of characters
    return frozenset([labels] if isinstance(labels, str) else labels)


@dataclass(frozen=True)
class Zone:
    """A zone, identified by the set of contours it lies inside."""

    in_set: frozenset[str]

    def __init__(self, in_set: "Iterable[str] | str" = ()):
        object.__setattr__(self, "in_set", _label_set(in_set))
        for name in self.in_set:
            check_label(name)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.in_set))

    def sort_key(self) -> tuple[int, tuple[str, ...]]:
        return (len(self.in_set), self.labels)

    def __lt__(self, other: "Zone") -> bool:
        if not isinstance(other, Zone):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Zone({set(self.in_set)!r})" if self.in_set else "Zone()"

    def __str__(self) -> str:
        return "(" + " ".join(self.labels) + ")"


BACKGROUND = Zone()


@dataclass(frozen=True)
class UnitaryDiagram:
    """A single Euler diagram: contours, present zones and shaded zones.

    Invariants, checked on construction: every zone's in-set is a subset
    of the contours, shaded zones are present, and the background zone
    (empty in-set) is always present.
    """

    contours: frozenset[str]
    zones: frozenset[Zone]
    shaded: frozenset[Zone]

    def __init__(
        self,
        contours: "Iterable[str] | str" = (),
        zones: Iterable[Zone] = (BACKGROUND,),
        shaded: Iterable[Zone] = (),
    ):
        object.__setattr__(self, "contours", _label_set(contours))
        object.__setattr__(self, "zones", frozenset(zones))
        object.__setattr__(self, "shaded", frozenset(shaded))
        for name in self.contours:
            check_label(name)
        for z in self.zones:
            if not z.in_set <= self.contours:
                raise DiagramError(f"zone {z} uses contours outside {sorted(self.contours)}")
        if BACKGROUND not in self.zones:
            raise DiagramError("the background zone () must be present")
        if not self.shaded <= self.zones:
            missing = sorted(self.shaded - self.zones)
            raise DiagramError(f"shaded zones not among present zones: {missing}")

    def sorted_contours(self) -> list[str]:
        return sorted(self.contours)

    def sorted_zones(self) -> list[Zone]:
        return sorted(self.zones)

    def sorted_shaded(self) -> list[Zone]:
        return sorted(self.shaded)

    def __repr__(self) -> str:
        return (
            f"UnitaryDiagram({self.sorted_contours()}, "
            f"{[str(z) for z in self.sorted_zones()]}, "
            f"{[str(z) for z in self.sorted_shaded()]})"
        )


@dataclass(frozen=True)
class Conjunction:
    left: "CompoundDiagram"
    right: "CompoundDiagram"

    def __post_init__(self):
        for side in (self.left, self.right):
            if isinstance(side, Implication):
                raise DiagramError("implication cannot be nested under a conjunction")
            if not isinstance(side, (UnitaryDiagram, Conjunction)):
                raise DiagramError(f"not a diagram: {side!r}")


@dataclass(frozen=True)
class Implication:
    """A proof goal: antecedent implies consequent.

    Only allowed at the root of a subgoal; both sides are conjunction
    trees of unitary diagrams.
    """

    antecedent: "CompoundDiagram"
    consequent: "CompoundDiagram"

    def __post_init__(self):
        for side in (self.antecedent, self.consequent):
            if isinstance(side, Implication):
                raise DiagramError("implications cannot be nested")
            if not isinstance(side, (UnitaryDiagram, Conjunction)):
                raise DiagramError(f"not a diagram: {side!r}")


CompoundDiagram = Union[UnitaryDiagram, Conjunction, Implication]


def venn_zones(contours: "Iterable[str] | str") -> frozenset[Zone]:
    """All 2^n zones over the given contours (one per subset)."""
    labels = sorted(_label_set(contours))
    subsets = chain.from_iterable(combinations(labels, k) for k in range(len(labels) + 1))
    return frozenset(Zone(s) for s in subsets)


def missing_zones(d: UnitaryDiagram) -> frozenset[Zone]:
    """The combinatorially possible zones of ``d`` that are not drawn."""
    return venn_zones(d.contours) - d.zones


def is_venn_form(d: UnitaryDiagram) -> bool:
    return len(d.zones) == 2 ** len(d.contours)


def venn_diagram(contours: Iterable[str], shaded: Iterable[Zone] = ()) -> UnitaryDiagram:
    """Venn-form diagram over ``contours`` with the given shading."""
    return UnitaryDiagram(contours, venn_zones(contours), shaded)


def normalize(d: CompoundDiagram) -> CompoundDiagram:
    """Canonical form of a diagram.

    Set-based storage makes every diagram inherently canonical, so this
    validates the tree shape and returns it unchanged; it exists so that
    callers can state parse/print and equality contracts against it.
    """
    if not isinstance(d, (UnitaryDiagram, Conjunction, Implication)):
        raise DiagramError(f"not a diagram: {d!r}")
    return d


def diagram_equal(a: CompoundDiagram, b: CompoundDiagram) -> bool:
    """Structural equality up to normalization (order-insensitive)."""
    return normalize(a) == normalize(b)


def _children(d: CompoundDiagram) -> tuple[CompoundDiagram, CompoundDiagram] | None:
    if isinstance(d, Conjunction):
        return d.left, d.right
    if isinstance(d, Implication):
        return d.antecedent, d.consequent
    return None


def subdiagram_at(d: CompoundDiagram, path: Path) -> CompoundDiagram:
    """The subtree addressed by ``path``; the empty path is ``d`` itself."""
    node = d
    for i, step in enumerate(path):
        kids = _children(node)
        if kids is None:
            raise InvalidPath(f"path {'/'.join(path)} walks off a unitary leaf at step {i}")
        if step == LEFT:
            node = kids[0]
        elif step == RIGHT:
            node = kids[1]
        else:
            raise InvalidPath(f"bad path step {step!r} (expected L or R)")
    return node


def replace_at(d: CompoundDiagram, path: Path, replacement: CompoundDiagram) -> CompoundDiagram:
    """``d`` with the subtree at ``path`` replaced; all other nodes kept."""
    if not path:
        return replacement
    kids = _children(d)
    if kids is None:
        raise InvalidPath(f"path {'/'.join(path)} walks off a unitary leaf")
    step, rest = path[0], path[1:]
    if step == LEFT:
        left, right = replace_at(kids[0], rest, replacement), kids[1]
    elif step == RIGHT:
        left, right = kids[0], replace_at(kids[1], rest, replacement)
    else:
        raise InvalidPath(f"bad path step {step!r} (expected L or R)")
    if isinstance(d, Conjunction):
        return Conjunction(left, right)
    return Implication(left, right)


def iter_subtrees(d: CompoundDiagram, prefix: Path = ()) -> Iterator[tuple[Path, CompoundDiagram]]:
    """Preorder (node, left, right) traversal: left-to-right, outermost first."""
    yield prefix, d
    kids = _children(d)
    if kids is not None:
        yield from iter_subtrees(kids[0], prefix + (LEFT,))
        yield from iter_subtrees(kids[1], prefix + (RIGHT,))


def iter_subtrees_postorder(
    d: CompoundDiagram, prefix: Path = ()
) -> Iterator[tuple[Path, CompoundDiagram]]:
    """Postorder traversal: innermost (deepest-leftmost) nodes first."""
    kids = _children(d)
    if kids is not None:
        yield from iter_subtrees_postorder(kids[0], prefix + (LEFT,))
        yield from iter_subtrees_postorder(kids[1], prefix + (RIGHT,))
    yield prefix, d


def unitary_items(d: CompoundDiagram) -> list[tuple[Path, UnitaryDiagram]]:
    """All unitary leaves with their paths, in left-to-right order."""
    return [(p, n) for p, n in iter_subtrees(d) if isinstance(n, UnitaryDiagram)]


def unitary_pairs(d: CompoundDiagram) -> list[tuple[Path, Conjunction]]:
    """Conjunctions of two unitary diagrams, innermost-leftmost first."""
    return [
        (p, n)
        for p, n in iter_subtrees_postorder(d)
        if isinstance(n, Conjunction)
        and isinstance(n.left, UnitaryDiagram)
        and isinstance(n.right, UnitaryDiagram)
    ]


def all_contours(d: CompoundDiagram) -> frozenset[str]:
    """Union of the contour sets of every unitary diagram in the tree."""
    out: set[str] = set()
    for _, u in unitary_items(d):
        out |= u.contours
    return frozenset(out)
