"""The nine inference rules, as total functions with explicit preconditions.

Every rule takes and returns immutable diagrams.  Used backwards inside a
goal's antecedent, a rule rewriting A to A' is sound when A entails A':
erase contour and erase shading strictly remove information, the rest are
equivalences.  Copy contour is additionally gated by the semantic oracle,
so an application is only accepted when the rewritten conjunction is
equivalent to the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagram import (
    Conjunction,
    EulerError,
    BACKGROUND,
    Path,
    UnitaryDiagram,
    Zone,
    diagram_equal,
    missing_zones,
)
from . import semantics
from .semantics import cells_of_zone, empty_cells


class RuleError(EulerError):
    code = "rule-error"


class ContourAbsent(RuleError):
    code = "contour-absent"


class ContourAlreadyPresent(RuleError):
    code = "contour-already-present"


class ZoneNotShaded(RuleError):
    code = "zone-not-shaded"


class ZoneNotMissing(RuleError):
    code = "zone-not-missing"


class BackgroundZoneProtected(RuleError):
    code = "background-zone-protected"


class ZoneSetMismatch(RuleError):
    code = "zone-set-mismatch"


class ContourNotCopyable(RuleError):
    code = "contour-not-copyable"


class NotForcedEmpty(RuleError):
    code = "not-forced-empty"


class ConjunctsDiffer(RuleError):
    code = "conjuncts-differ"


class RuleName(str, Enum):
    ERASE_CONTOUR = "erase_contour"
    ERASE_SHADING = "erase_shading"
    INTRODUCE_CONTOUR = "introduce_contour"
    INTRODUCE_SHADED_ZONE = "introduce_shaded_zone"
    REMOVE_SHADED_ZONE = "remove_shaded_zone"
    COMBINE = "combine"
    COPY_CONTOUR = "copy_contour"
    COPY_SHADING = "copy_shading"
    IDEMPOTENCY = "idempotency"


# Rules 1-5 target a unitary leaf; 6-9 target a conjunction node.
UNITARY_RULES = frozenset(
    {
        RuleName.ERASE_CONTOUR,
        RuleName.ERASE_SHADING,
        RuleName.INTRODUCE_CONTOUR,
        RuleName.INTRODUCE_SHADED_ZONE,
        RuleName.REMOVE_SHADED_ZONE,
    }
)
CONJUNCTION_RULES = frozenset(
    {RuleName.COMBINE, RuleName.COPY_CONTOUR, RuleName.COPY_SHADING, RuleName.IDEMPOTENCY}
)


class Direction(str, Enum):
    """Which conjunct is the source of a copy: ltr means left-to-right."""

    LEFT_TO_RIGHT = "ltr"
    RIGHT_TO_LEFT = "rtl"


@dataclass(frozen=True)
class RuleApplication:
    """One rule instance: which rule, on which subgoal, where, with what.

    ``path`` addresses a subtree of the subgoal's antecedent.  Exactly the
    argument fields the rule needs may be set; the rest stay None.
    """

    rule: RuleName
    goal_index: int
    path: Path = ()
    contour: str | None = None
    zone: Zone | None = None
    zones: frozenset[Zone] | None = None
    direction: Direction | None = None

    def __post_init__(self):
        if self.zones is not None:
            object.__setattr__(self, "zones", frozenset(self.zones))
        object.__setattr__(self, "path", tuple(self.path))


def erase_contour(d: UnitaryDiagram, c: str) -> UnitaryDiagram:
    """Remove a contour; each zone pair {z, z+c} merges to z.

    The merged zone is present if either half was present, and shaded only
    if both halves denoted the empty set (shaded or missing).  Removes
    information: the input entails the result.
    """
    if c not in d.contours:
        raise ContourAbsent(f"contour {c} not in diagram")
    zones: set[Zone] = set()
    shaded: set[Zone] = set()
    for base_set in {z.in_set - {c} for z in d.zones}:
        lo, hi = Zone(base_set), Zone(base_set | {c})
        merged = Zone(base_set)

        def denotes_empty(z: Zone) -> bool:
            return z not in d.zones or z in d.shaded

        zones.add(merged)
        if denotes_empty(lo) and denotes_empty(hi):
            shaded.add(merged)
    return UnitaryDiagram(d.contours - {c}, zones, shaded)


def erase_shading(d: UnitaryDiagram, z: Zone) -> UnitaryDiagram:
    """Remove the shading of one zone (information-removing)."""
    if z not in d.shaded:
        raise ZoneNotShaded(f"zone {z} is not shaded")
    return UnitaryDiagram(d.contours, d.zones, d.shaded - {z})


def introduce_contour(d: UnitaryDiagram, c: str) -> UnitaryDiagram:
    """Add a contour intersecting all present zones (an equivalence)."""
    if c in d.contours:
        raise ContourAlreadyPresent(f"contour {c} already present")
    zones = {z for base in d.zones for z in (base, Zone(base.in_set | {c}))}
    shaded = {z for base in d.shaded for z in (base, Zone(base.in_set | {c}))}
    return UnitaryDiagram(d.contours | {c}, zones, shaded)


def introduce_shaded_zone(d: UnitaryDiagram, z: Zone) -> UnitaryDiagram:
    """Replace a missing zone by a shaded one (an equivalence)."""
    if z not in missing_zones(d):
        raise ZoneNotMissing(f"zone {z} is not missing")
    return UnitaryDiagram(d.contours, d.zones | {z}, d.shaded | {z})


def remove_shaded_zone(d: UnitaryDiagram, z: Zone) -> UnitaryDiagram:
    """Replace a shaded zone by a missing one (an equivalence).

    The background zone stays: every diagram keeps its outside region.
    """
    if z not in d.shaded:
        raise ZoneNotShaded(f"zone {z} is not shaded")
    if z == BACKGROUND:
        raise BackgroundZoneProtected("the background zone cannot be removed")
    return UnitaryDiagram(d.contours, d.zones - {z}, d.shaded - {z})


def combine(left: UnitaryDiagram, right: UnitaryDiagram) -> UnitaryDiagram:
    """Merge two diagrams with identical zone sets; shading is unioned."""
    if left.contours != right.contours or left.zones != right.zones:
        raise ZoneSetMismatch("combine needs identical contour and zone sets")
    return UnitaryDiagram(left.contours, left.zones, left.shaded | right.shaded)


def copy_contour(src: UnitaryDiagram, dst: UnitaryDiagram, c: str) -> UnitaryDiagram:
    """Copy contour ``c`` from src into dst, respecting src's topology.

    For each footprint s over the shared contours S, src tells us whether
    c covers zones with that footprint (some present zone contains c) and
    whether it avoids them.  Each dst zone splits, keeps only its c-side
    or only its non-c side accordingly; surviving zones inherit shading.
    The result is accepted only if the oracle confirms the conjunction is
    unchanged semantically.
    """
    if c in dst.contours or c not in src.contours:
        raise ContourNotCopyable(f"contour {c} cannot be copied")
    shared = src.contours & dst.contours
    covers: set[frozenset[str]] = set()
    avoids: set[frozenset[str]] = set()
    for z in src.zones:
        footprint = z.in_set & shared
        if c in z.in_set:
            covers.add(footprint)
        else:
            avoids.add(footprint)
    zones: set[Zone] = set()
    shaded: set[Zone] = set()
    for z in dst.zones:
        footprint = z.in_set & shared
        inside = Zone(z.in_set | {c})
        cov, avd = footprint in covers, footprint in avoids
        if cov and not avd:
            survivors = [inside]
        elif avd and not cov:
            survivors = [z]
        else:
            # covers and avoids, or neither: the region is either genuinely
            # split or already forced empty in context, so split soundly.
            survivors = [z, inside]
        zones.update(survivors)
        if z in dst.shaded:
            shaded.update(survivors)
    result = UnitaryDiagram(dst.contours | {c}, zones, shaded)
    if not semantics.equivalent(Conjunction(src, dst), Conjunction(src, result)):
        raise ContourNotCopyable(f"copying contour {c} would change the diagram's meaning")
    return result


def copy_shading(
    src: UnitaryDiagram, dst: UnitaryDiagram, targets: frozenset[Zone]
) -> UnitaryDiagram:
    """Shade dst zones whose regions the conjunction already forces empty.

    An equivalence by construction: only entailed shading is added.
    """
    targets = frozenset(targets)
    bad = targets - (dst.zones - dst.shaded)
    if bad:
        raise RuleError(f"copy shading targets must be present and unshaded: {sorted(bad)}")
    v = src.contours | dst.contours
    forced = empty_cells(Conjunction(src, dst), v)
    for z in targets:
        if not cells_of_zone(z, dst.contours, v) <= forced:
            raise NotForcedEmpty(f"zone {z} is not forced empty by the conjunction")
    return UnitaryDiagram(dst.contours, dst.zones, dst.shaded | targets)


def idempotency(d: Conjunction) -> "UnitaryDiagram | Conjunction":
    """Collapse a conjunction of two identical diagrams to one of them."""
    if not isinstance(d, Conjunction):
        raise ConjunctsDiffer("idempotency applies to a conjunction")
    if not diagram_equal(d.left, d.right):
        raise ConjunctsDiffer("conjuncts are not identical")
    return d.left
