"""Tactics and tacticals.

A tactic is a partial function ``(state, index, acc) -> TacticResult | None``
operating on one subgoal of a proof state: None signals failure and leaves
the accumulated result unconsumed; on success the returned record list
extends the accumulator's and replays to the returned state.  Tacticals
(THEN, ORELSE, REPEAT, COND, DEPTH_FIRST, id, fail) compose tactics; the
thirteen built-in tactics range from single-rule wrappers to full
Venn-style and copy-style proof strategies.

Tactics only touch antecedents, require the consequent to be one unitary
diagram, and consult a cancellation check between rule steps so a caller
can abort long invocations.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable, Optional

from .diagram import (
    BACKGROUND,
    CompoundDiagram,
    Conjunction,
    EulerError,
    LEFT,
    RIGHT,
    Path,
    UnitaryDiagram,
    Zone,
    all_contours,
    diagram_equal,
    iter_subtrees,
    missing_zones,
    subdiagram_at,
    unitary_items,
    unitary_pairs,
)
from .engine import (
    Action,
    Discharge,
    EngineError,
    Proof,
    ProofState,
    StepRecord,
    TacticCall,
    append_step,
    apply_to_state,
)
from .rules import Direction, RuleApplication, RuleError, RuleName, copy_contour
from .semantics import cells_of_zone, empty_cells


@dataclass(frozen=True)
class TacticResult:
    """Steps applied so far in this invocation plus the state they lead to."""

    applied: tuple[StepRecord, ...]
    state: ProofState


Tactic = Callable[[ProofState, int, TacticResult], Optional[TacticResult]]
DiagramPredicate = Callable[[CompoundDiagram], bool]
Chooser = Callable[[CompoundDiagram], Optional[dict]]
GoalPredicate = Callable[[ProofState, int], bool]


class TacticFailed(EulerError):
    code = "tactic-failed"


class TacticCancelled(EulerError):
    code = "tactic-cancelled"


_cancel_check: ContextVar[Optional[Callable[[], bool]]] = ContextVar(
    "euler_tactics_cancel", default=None
)


@contextmanager
def cancellation(check: Optional[Callable[[], bool]]):
    """Install a cancellation probe consulted before every rule step."""
    token = _cancel_check.set(check)
    try:
        yield
    finally:
        _cancel_check.reset(token)


class _Steps:
    """Accumulates rule steps for one tactic invocation.

    Discarding the builder discards its work: states are immutable, so a
    failed tactic never leaks a partial rewrite.
    """

    def __init__(self, state: ProofState, index: int, name: str):
        self.state = state
        self.index = index
        self.name = name
        self.records: list[StepRecord] = []

    def goal(self):
        return self.state.subgoals[self.index]

    def node(self, path: Path) -> CompoundDiagram:
        return subdiagram_at(self.goal().antecedent, path)

    def step(self, action: Action) -> None:
        check = _cancel_check.get()
        if check is not None and check():
            raise TacticCancelled(f"tactic {self.name} cancelled")
        self.state = apply_to_state(self.state, action)
        self.records.append(StepRecord(action, self.name))

    def rule(self, rule: RuleName, path: Path = (), **args) -> None:
        self.step(RuleApplication(rule, self.index, path, **args))

    def result(self, acc: TacticResult) -> TacticResult:
        return TacticResult(acc.applied + tuple(self.records), self.state)


def _tactic_goal(state: ProofState, index: int):
    """The indexed subgoal if it has tactic form (unitary consequent)."""
    if not 0 <= index < len(state.subgoals):
        return None
    goal = state.subgoals[index]
    if not isinstance(goal.consequent, UnitaryDiagram):
        return None
    return goal


# ---------------------------------------------------------------------------
# Tacticals


def THEN(a: Tactic, b: Tactic) -> Tactic:
    """Run ``a`` then ``b`` on its result; fails if either fails."""

    def tac(state, index, acc):
        r = a(state, index, acc)
        if r is None:
            return None
        return b(r.state, index, r)

    return tac


def ORELSE(a: Tactic, b: Tactic) -> Tactic:
    """Run ``a``; only if it fails, run ``b`` on the original input."""

    def tac(state, index, acc):
        r = a(state, index, acc)
        if r is not None:
            return r
        return b(state, index, acc)

    return tac


def REPEAT(t: Tactic) -> Tactic:
    """Apply ``t`` until it fails; always succeeds (zero iterations allowed).

    Iteration also stops once ``t`` succeeds without adding steps, so a
    tactic that trivially succeeds cannot loop forever.
    """

    def tac(state, index, acc):
        cur = TacticResult(acc.applied, state)
        while True:
            r = t(cur.state, index, cur)
            if r is None:
                return cur
            if len(r.applied) == len(cur.applied):
                return r
            cur = r

    return tac


def COND(p: GoalPredicate, a: Tactic, b: Tactic) -> Tactic:
    """Run ``a`` if the predicate holds on the current state, else ``b``."""

    def tac(state, index, acc):
        return (a if p(state, index) else b)(state, index, acc)

    return tac


def DEPTH_FIRST(p: GoalPredicate, t: Tactic) -> Tactic:
    """Repeat ``t`` until ``p`` holds; fails if ``t`` fails or stalls first."""

    def tac(state, index, acc):
        cur = TacticResult(acc.applied, state)
        while not p(cur.state, index):
            r = t(cur.state, index, cur)
            if r is None or len(r.applied) == len(cur.applied):
                return None
            cur = r
        return cur

    return tac


def id_tactic(state: ProofState, index: int, acc: TacticResult):
    """Always succeeds, changing nothing."""
    return TacticResult(acc.applied, state)


def fail_tactic(state: ProofState, index: int, acc: TacticResult):
    """Always fails."""
    return None


def antecedent_is_unitary(state: ProofState, index: int) -> bool:
    if not 0 <= index < len(state.subgoals):
        return True
    return isinstance(state.subgoals[index].antecedent, UnitaryDiagram)


# ---------------------------------------------------------------------------
# Rule-level tactics


def rule_tactic(
    rule: RuleName, pred: DiagramPredicate, choose: Chooser, name: str | None = None
) -> Tactic:
    """Apply one rule at the first antecedent subtree satisfying ``pred``.

    The antecedent is walked depth-first left to right; the chooser runs
    on the first matching subtree to pick the rule's argument.  Failure of
    the predicate, the chooser or the rule itself fails the tactic.
    """
    tactic_name = name or f"rule:{rule.value}"

    def tac(state, index, acc):
        goal = _tactic_goal(state, index)
        if goal is None:
            return None
        for path, node in iter_subtrees(goal.antecedent):
            if not pred(node):
                continue
            args = choose(node)
            if args is None:
                return None
            b = _Steps(state, index, tactic_name)
            try:
                b.rule(rule, path, **args)
            except (RuleError, EngineError):
                return None
            return b.result(acc)
        return None

    return tac


def discharge_subgoal(state: ProofState, index: int, acc: TacticResult):
    """Remove the subgoal if it is a trivial implication."""
    b = _Steps(state, index, "discharge")
    try:
        b.step(Discharge(index))
    except EngineError:
        return None
    return b.result(acc)


# ---------------------------------------------------------------------------
# Low-level tactics (1-8)


def intro_all_shaded_zones(state, index, acc):
    """Venn-ify every unitary diagram in the antecedent (tactic 1)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    b = _Steps(state, index, "intro_all_shaded_zones")
    for path, u in unitary_items(goal.antecedent):
        for z in sorted(missing_zones(u)):
            b.rule(RuleName.INTRODUCE_SHADED_ZONE, path, zone=z)
    return b.result(acc)


def intro_all_shaded_zones_deepest(state, index, acc):
    """Venn-ify only the innermost conjunction of two unitaries (tactic 2)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    pairs = unitary_pairs(goal.antecedent)
    if not pairs:
        return None
    path, conj = pairs[0]
    b = _Steps(state, index, "intro_all_shaded_zones_deepest")
    for side_step, side in ((LEFT, conj.left), (RIGHT, conj.right)):
        for z in sorted(missing_zones(side)):
            b.rule(RuleName.INTRODUCE_SHADED_ZONE, path + (side_step,), zone=z)
    return b.result(acc)


def intro_all_contours(state, index, acc):
    """Give every antecedent unitary the antecedent-wide contour union (tactic 3)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    union = all_contours(goal.antecedent)
    b = _Steps(state, index, "intro_all_contours")
    for path, u in unitary_items(goal.antecedent):
        for c in sorted(union - u.contours):
            b.rule(RuleName.INTRODUCE_CONTOUR, path, contour=c)
    return b.result(acc)


def intro_all_contours_deepest(state, index, acc):
    """Equalise contours inside the innermost unitary conjunction (tactic 4)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    pairs = unitary_pairs(goal.antecedent)
    if not pairs:
        return None
    path, conj = pairs[0]
    union = conj.left.contours | conj.right.contours
    b = _Steps(state, index, "intro_all_contours_deepest")
    for side_step, side in ((LEFT, conj.left), (RIGHT, conj.right)):
        for c in sorted(union - side.contours):
            b.rule(RuleName.INTRODUCE_CONTOUR, path + (side_step,), contour=c)
    return b.result(acc)


def combine_all(state, index, acc):
    """Combine equal-zone-set conjunctions, innermost first, until none remain (tactic 5)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    b = _Steps(state, index, "combine_all")
    while True:
        for path, conj in unitary_pairs(b.goal().antecedent):
            left, right = conj.left, conj.right
            if left.contours == right.contours and left.zones == right.zones:
                b.rule(RuleName.COMBINE, path)
                break
        else:
            break
    if not b.records:
        return None
    return b.result(acc)


def _shading_intro_groups(
    left: UnitaryDiagram, right: UnitaryDiagram
) -> list[tuple[str, list[Zone]]]:
    """Preparation plan for copying shading within a conjunction.

    Per direction src->dst, the missing zones of dst worth introducing as
    shaded zones: with equal contour sets, the zones present in src but
    not in dst (so the conjuncts can become identical); otherwise the
    missing zones whose cells src alone forces empty (so dst can express
    src's information).  Zones are grouped by in-set restricted to the
    source's contours; smallest groups come first.
    """
    v = left.contours | right.contours
    groups: list[tuple[int, str, tuple[str, ...], list[Zone]]] = []
    for dst_step, src, dst in ((RIGHT, left, right), (LEFT, right, left)):
        if src.contours == dst.contours:
            wanted = src.zones - dst.zones
        else:
            forced_src = empty_cells(src, v)
            wanted = {
                m
                for m in missing_zones(dst)
                if cells_of_zone(m, dst.contours, v) <= forced_src
            }
        by_key: dict[tuple[str, ...], list[Zone]] = {}
        for m in sorted(wanted):
            by_key.setdefault(tuple(sorted(m.in_set & src.contours)), []).append(m)
        for key, zs in by_key.items():
            groups.append((len(zs), dst_step, key, zs))
    groups.sort(key=lambda g: (g[0], g[1], g[2]))
    return [(dst_step, zs) for _, dst_step, _, zs in groups]


def _copy_targets(dst: UnitaryDiagram, forced, v) -> frozenset[Zone]:
    return frozenset(
        z for z in dst.zones - dst.shaded if cells_of_zone(z, dst.contours, v) <= forced
    )


def prepare_copy_shading(state, index, acc):
    """Introduce one group of shaded zones to enable a shading copy (tactic 6)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    for path, conj in unitary_pairs(goal.antecedent):
        groups = _shading_intro_groups(conj.left, conj.right)
        if not groups:
            continue
        dst_step, zones = groups[0]
        b = _Steps(state, index, "prepare_copy_shading")
        for z in zones:
            b.rule(RuleName.INTRODUCE_SHADED_ZONE, path + (dst_step,), zone=z)
        return b.result(acc)
    return None


def prepare_copy_contours(state, index, acc):
    """Turn shaded zones of the innermost unitary conjunction into missing ones (tactic 7)."""
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    pairs = unitary_pairs(goal.antecedent)
    if not pairs:
        return None
    path, conj = pairs[0]
    b = _Steps(state, index, "prepare_copy_contours")
    _remove_shading_at(b, path)
    return b.result(acc)


def _remove_shading_at(b: _Steps, path: Path) -> None:
    conj = b.node(path)
    for side_step, side in ((LEFT, conj.left), (RIGHT, conj.right)):
        for z in sorted(side.shaded - {BACKGROUND}):
            b.rule(RuleName.REMOVE_SHADED_ZONE, path + (side_step,), zone=z)


def match_conclusion(state, index, acc):
    """Rewrite a single-unitary antecedent into the consequent (tactic 8).

    Five phases: introduce the consequent's extra contours, erase the
    antecedent's extra ones, introduce zones the consequent draws, erase
    shading the consequent lacks, and turn remaining consequent-missing
    shaded zones into missing zones.  Succeeds only if the result equals
    the consequent.
    """
    goal = _tactic_goal(state, index)
    if goal is None or not isinstance(goal.antecedent, UnitaryDiagram):
        return None
    cons = goal.consequent
    b = _Steps(state, index, "match_conclusion")

    def ante() -> UnitaryDiagram:
        return b.goal().antecedent

    for c in sorted(cons.contours - ante().contours):
        b.rule(RuleName.INTRODUCE_CONTOUR, (), contour=c)
    for c in sorted(ante().contours - cons.contours):
        b.rule(RuleName.ERASE_CONTOUR, (), contour=c)
    for z in sorted(cons.zones - ante().zones):
        b.rule(RuleName.INTRODUCE_SHADED_ZONE, (), zone=z)
    for z in sorted(ante().shaded & (cons.zones - cons.shaded)):
        b.rule(RuleName.ERASE_SHADING, (), zone=z)
    for z in sorted(ante().shaded - cons.zones):
        b.rule(RuleName.REMOVE_SHADED_ZONE, (), zone=z)
    if not diagram_equal(ante(), cons):
        return None
    return b.result(acc)


# ---------------------------------------------------------------------------
# High-level tactics (9-13)


def copy_contours_tactic(state, index, acc):
    """Copy every copyable contour within one conjunction (tactic 9).

    Picks the first conjunction of two unitaries where a contour actually
    copies: prepares it by removing shading, copies each contour of the
    symmetric difference in label order (each in its natural direction),
    and collapses identical conjuncts with idempotency.
    """
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    for path, _ in unitary_pairs(goal.antecedent):
        b = _Steps(state, index, "copy_contours")
        if _copy_contours_at(b, path):
            return b.result(acc)
    return None


def _copy_contours_at(b: _Steps, path: Path) -> bool:
    conj = b.node(path)
    labels = sorted(conj.left.contours ^ conj.right.contours)
    if not labels:
        return False
    _remove_shading_at(b, path)
    copied = 0
    for c in labels:
        conj = b.node(path)
        if c in conj.left.contours:
            direction, src, dst = Direction.LEFT_TO_RIGHT, conj.left, conj.right
        else:
            direction, src, dst = Direction.RIGHT_TO_LEFT, conj.right, conj.left
        try:
            copy_contour(src, dst, c)
        except RuleError:
            continue
        b.rule(RuleName.COPY_CONTOUR, path, contour=c, direction=direction)
        copied += 1
    if not copied:
        return False
    conj = b.node(path)
    if diagram_equal(conj.left, conj.right):
        b.rule(RuleName.IDEMPOTENCY, path)
    return True


def propagate_shading(state, index, acc):
    """Copy shading information within one conjunction (tactic 10).

    Picks the first conjunction of two unitaries admitting shading work:
    runs the copy-shading preparation to completion, copies the maximal
    forced-empty target set in each direction, and applies idempotency if
    the conjuncts became identical.  Already-identical conjuncts collapse
    directly.
    """
    goal = _tactic_goal(state, index)
    if goal is None:
        return None
    for path, _ in unitary_pairs(goal.antecedent):
        b = _Steps(state, index, "propagate_shading")
        if _propagate_shading_at(b, path):
            return b.result(acc)
    return None


def _propagate_shading_at(b: _Steps, path: Path) -> bool:
    conj = b.node(path)
    left, right = conj.left, conj.right
    if diagram_equal(left, right):
        b.rule(RuleName.IDEMPOTENCY, path)
        return True
    v = left.contours | right.contours
    # Rules 4 and 8 preserve the conjunction's meaning, so the forced set
    # computed here stays valid throughout the invocation.
    forced = empty_cells(Conjunction(left, right), v)
    for dst_step, zones in _shading_intro_groups(left, right):
        for z in zones:
            b.rule(RuleName.INTRODUCE_SHADED_ZONE, path + (dst_step,), zone=z)
    for direction in (Direction.LEFT_TO_RIGHT, Direction.RIGHT_TO_LEFT):
        conj = b.node(path)
        dst = conj.right if direction is Direction.LEFT_TO_RIGHT else conj.left
        targets = _copy_targets(dst, forced, v)
        if targets:
            b.rule(RuleName.COPY_SHADING, path, zones=targets, direction=direction)
    conj = b.node(path)
    if diagram_equal(conj.left, conj.right):
        b.rule(RuleName.IDEMPOTENCY, path)
    return bool(b.records)


venn_breadth = THEN(
    intro_all_shaded_zones,
    THEN(
        intro_all_contours,
        THEN(REPEAT(combine_all), THEN(match_conclusion, discharge_subgoal)),
    ),
)
"""Venn-style proof, breadth-first (tactic 11): Venn-ify everything, then combine."""

venn_depth = THEN(
    DEPTH_FIRST(
        antecedent_is_unitary,
        THEN(intro_all_shaded_zones_deepest, THEN(intro_all_contours_deepest, combine_all)),
    ),
    THEN(match_conclusion, discharge_subgoal),
)
"""Venn-style proof, depth-first (tactic 12): one innermost conjunction at a time."""

copy_shading_and_contours = THEN(
    DEPTH_FIRST(antecedent_is_unitary, ORELSE(propagate_shading, copy_contours_tactic)),
    THEN(match_conclusion, discharge_subgoal),
)
"""Copy-style proof (tactic 13): propagate shading, copy contours, then match."""


# ---------------------------------------------------------------------------
# Registry and proof-level application


@dataclass(frozen=True)
class TacticInfo:
    name: str
    fn: Tactic
    level: str  # "low" or "high"
    summary: str


REGISTRY: dict[str, TacticInfo] = {
    info.name: info
    for info in (
        TacticInfo(
            "intro_all_shaded_zones",
            intro_all_shaded_zones,
            "low",
            "introduce all missing zones in every antecedent diagram",
        ),
        TacticInfo(
            "intro_all_shaded_zones_deepest",
            intro_all_shaded_zones_deepest,
            "low",
            "introduce all missing zones in the innermost conjunction",
        ),
        TacticInfo(
            "intro_all_contours",
            intro_all_contours,
            "low",
            "introduce the union of contours into every antecedent diagram",
        ),
        TacticInfo(
            "intro_all_contours_deepest",
            intro_all_contours_deepest,
            "low",
            "equalise contours inside the innermost conjunction",
        ),
        TacticInfo("combine_all", combine_all, "low", "combine diagrams with equal zone sets"),
        TacticInfo(
            "prepare_copy_shading",
            prepare_copy_shading,
            "low",
            "introduce shaded zones so shading can be copied",
        ),
        TacticInfo(
            "prepare_copy_contours",
            prepare_copy_contours,
            "low",
            "turn shaded zones into missing zones before copying contours",
        ),
        TacticInfo(
            "match_conclusion",
            match_conclusion,
            "low",
            "transform a unitary antecedent into the consequent",
        ),
        TacticInfo("copy_contours", copy_contours_tactic, "high", "copy contours within a conjunction"),
        TacticInfo(
            "propagate_shading", propagate_shading, "high", "copy shading within a conjunction"
        ),
        TacticInfo("venn_breadth", venn_breadth, "high", "Venn-style proof, breadth-first"),
        TacticInfo("venn_depth", venn_depth, "high", "Venn-style proof, depth-first"),
        TacticInfo(
            "copy_shading_and_contours",
            copy_shading_and_contours,
            "high",
            "copy-style proof: shading first, then contours",
        ),
    )
}


def get_tactic(name: str) -> TacticInfo:
    try:
        return REGISTRY[name]
    except KeyError:
        raise TacticFailed(f"unknown tactic: {name}") from None


def run_tactic(
    tactic: Tactic,
    state: ProofState,
    index: int,
    cancel: Optional[Callable[[], bool]] = None,
) -> Optional[TacticResult]:
    """Invoke a tactic on one subgoal with a fresh accumulator."""
    with cancellation(cancel):
        return tactic(state, index, TacticResult((), state))


def apply_tactic(
    p: Proof,
    name: str,
    goal_index: int,
    cancel: Optional[Callable[[], bool]] = None,
) -> Proof:
    """Run a registered tactic and append its steps to the proof.

    Every recorded step is replayed through the engine, one proof state
    per rule application, and the invocation is logged as a TacticCall.
    Raises TacticFailed when the tactic returns None.
    """
    info = get_tactic(name)
    result = run_tactic(info.fn, p.current, goal_index, cancel)
    if result is None:
        raise TacticFailed(f"tactic {name} is not applicable to subgoal {goal_index}")
    start = len(p.steps)
    for step in result.applied:
        p = append_step(p, step)
    if p.current != result.state:
        raise EngineError(f"tactic {name} produced steps that do not replay to its state")
    call = TacticCall(name, goal_index, start, len(result.applied))
    return Proof(p.states, p.steps, p.tactic_calls + (call,))
