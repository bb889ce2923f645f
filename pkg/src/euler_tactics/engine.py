"""Backward proof machinery: proof states, indexed rule application, undo.

A proof is a list of proof states; each recorded step rewrites exactly one
subgoal of the previous state (or discharges a trivial one).  Rules apply
only inside a goal's antecedent; the consequent never changes.  A proof is
finished when the last state has no subgoals left.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .diagram import (
    CompoundDiagram,
    Conjunction,
    EulerError,
    Implication,
    InvalidPath,
    UnitaryDiagram,
    diagram_equal,
    replace_at,
    subdiagram_at,
)
from . import rules
from .rules import Direction, RuleApplication, RuleName


class EngineError(EulerError):
    code = "engine-error"


class BadIndex(EngineError):
    code = "bad-index"


class NotTrivial(EngineError):
    code = "not-trivial"


class MalformedGoal(EngineError):
    code = "malformed-goal"


@dataclass(frozen=True)
class Discharge:
    """Removal of a trivial subgoal (antecedent equals consequent)."""

    goal_index: int


Action = Union[RuleApplication, Discharge]


@dataclass(frozen=True)
class StepRecord:
    """One proof step plus the name of the tactic that produced it, if any."""

    action: Action
    provenance: str | None = None


@dataclass(frozen=True)
class ProofState:
    subgoals: tuple[Implication, ...]

    def __init__(self, subgoals=()):
        object.__setattr__(self, "subgoals", tuple(subgoals))


@dataclass(frozen=True)
class TacticCall:
    """A user-level tactic invocation covering steps[start:start+count]."""

    name: str
    goal_index: int
    start: int
    count: int


@dataclass(frozen=True)
class Proof:
    """States plus the steps between them; steps[i] maps states[i] to states[i+1]."""

    states: tuple[ProofState, ...]
    steps: tuple[StepRecord, ...] = ()
    tactic_calls: tuple[TacticCall, ...] = ()

    def __post_init__(self):
        if not self.states:
            raise EngineError("a proof has at least its initial state")
        if len(self.steps) != len(self.states) - 1:
            raise EngineError("step/state count mismatch")

    @property
    def current(self) -> ProofState:
        return self.states[-1]


def check_goal(goal: Implication, unitary_consequent: bool = False) -> Implication:
    """Validate a subgoal's shape.

    The antecedent is a conjunction tree of unitaries; at raw-rule level
    the consequent may be too, while the tactic layer restricts it to a
    single unitary diagram.
    """
    if not isinstance(goal, Implication):
        raise MalformedGoal("a subgoal must be an implication")
    if unitary_consequent and not isinstance(goal.consequent, UnitaryDiagram):
        raise MalformedGoal("the consequent must be a single unitary diagram")
    return goal


def new_proof(theorem: Implication) -> Proof:
    return Proof(states=(ProofState((check_goal(theorem),)),))


def _subgoal(state: ProofState, index: int) -> Implication:
    if not 0 <= index < len(state.subgoals):
        raise BadIndex(f"no subgoal with index {index}")
    return state.subgoals[index]


def _apply_unitary_rule(app: RuleApplication, node: CompoundDiagram) -> UnitaryDiagram:
    if not isinstance(node, UnitaryDiagram):
        raise InvalidPath(f"rule {app.rule.value} targets a unitary diagram")
    if app.rule is RuleName.ERASE_CONTOUR:
        return rules.erase_contour(node, _need(app.contour, "contour"))
    if app.rule is RuleName.ERASE_SHADING:
        return rules.erase_shading(node, _need(app.zone, "zone"))
    if app.rule is RuleName.INTRODUCE_CONTOUR:
        return rules.introduce_contour(node, _need(app.contour, "contour"))
    if app.rule is RuleName.INTRODUCE_SHADED_ZONE:
        return rules.introduce_shaded_zone(node, _need(app.zone, "zone"))
    return rules.remove_shaded_zone(node, _need(app.zone, "zone"))


def _need(value, name):
    if value is None:
        raise EngineError(f"rule argument {name} is required")
    return value


def _apply_conjunction_rule(app: RuleApplication, node: CompoundDiagram) -> CompoundDiagram:
    if not isinstance(node, Conjunction):
        raise InvalidPath(f"rule {app.rule.value} targets a conjunction")
    if app.rule is RuleName.IDEMPOTENCY:
        return rules.idempotency(node)
    left, right = node.left, node.right
    if not (isinstance(left, UnitaryDiagram) and isinstance(right, UnitaryDiagram)):
        raise InvalidPath(f"rule {app.rule.value} needs a conjunction of two unitary diagrams")
    if app.rule is RuleName.COMBINE:
        return rules.combine(left, right)
    direction = _need(app.direction, "direction")
    if direction is Direction.LEFT_TO_RIGHT:
        src, dst = left, right
    else:
        src, dst = right, left
    if app.rule is RuleName.COPY_CONTOUR:
        new_dst = rules.copy_contour(src, dst, _need(app.contour, "contour"))
    else:
        new_dst = rules.copy_shading(src, dst, _need(app.zones, "zones"))
    if direction is Direction.LEFT_TO_RIGHT:
        return Conjunction(src, new_dst)
    return Conjunction(new_dst, src)


def apply_to_state(state: ProofState, action: Action) -> ProofState:
    """Apply one action to a proof state, returning the next state."""
    if isinstance(action, Discharge):
        goal = _subgoal(state, action.goal_index)
        if not isinstance(goal.antecedent, UnitaryDiagram) or not diagram_equal(
            goal.antecedent, goal.consequent
        ):
            raise NotTrivial("the subgoal is not a trivial implication")
        remaining = list(state.subgoals)
        del remaining[action.goal_index]
        return ProofState(remaining)

    goal = _subgoal(state, action.goal_index)
    node = subdiagram_at(goal.antecedent, action.path)
    if action.rule in rules.UNITARY_RULES:
        new_node: CompoundDiagram = _apply_unitary_rule(action, node)
    else:
        new_node = _apply_conjunction_rule(action, node)
    new_antecedent = replace_at(goal.antecedent, action.path, new_node)
    subgoals = list(state.subgoals)
    subgoals[action.goal_index] = Implication(new_antecedent, goal.consequent)
    return ProofState(subgoals)


def append_step(p: Proof, step: StepRecord) -> Proof:
    """Extend the proof by one step, computing the successor state."""
    next_state = apply_to_state(p.current, step.action)
    return replace(p, states=p.states + (next_state,), steps=p.steps + (step,))


def apply_rule(p: Proof, app: RuleApplication, provenance: str | None = None) -> Proof:
    return append_step(p, StepRecord(app, provenance))


def discharge_trivial(p: Proof, goal_index: int, provenance: str | None = None) -> Proof:
    return append_step(p, StepRecord(Discharge(goal_index), provenance))


def undo_to(p: Proof, state_index: int) -> Proof:
    """Truncate the proof back to ``states[state_index]``."""
    if not 0 <= state_index < len(p.states):
        raise BadIndex(f"no state with index {state_index}")
    keep = state_index
    calls = tuple(c for c in p.tactic_calls if c.start + c.count <= keep)
    return Proof(states=p.states[: keep + 1], steps=p.steps[:keep], tactic_calls=calls)


def is_finished(p: Proof) -> bool:
    return not p.current.subgoals


def replay(theorem: Implication, steps: tuple[StepRecord, ...]) -> Proof:
    """Rebuild a proof by applying recorded steps from the initial goal."""
    p = new_proof(theorem)
    for step in steps:
        p = append_step(p, step)
    return p
