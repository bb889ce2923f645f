"""Readability metrics: clutter, proof length, clutter velocity.

Clutter of a unitary diagram is the number of present zones plus the
number of shaded zones.  A state's clutter sums over every unitary
diagram in every subgoal; consequents are included by default but can be
excluded, since either aggregation is defensible.  Averages use exact
rationals so tests can compare them without float tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import CompoundDiagram, Implication, UnitaryDiagram, unitary_items
from .engine import Proof, ProofState


@dataclass(frozen=True)
class ProofMetrics:
    length: int
    total_clutter: int
    average_clutter: Fraction
    max_velocity: int


def clutter_unitary(d: UnitaryDiagram) -> int:
    return len(d.zones) + len(d.shaded)


def clutter_diagram(d: CompoundDiagram) -> int:
    if isinstance(d, Implication):
        return clutter_diagram(d.antecedent) + clutter_diagram(d.consequent)
    return sum(clutter_unitary(u) for _, u in unitary_items(d))


def clutter_state(s: ProofState, include_consequents: bool = True) -> int:
    total = 0
    for goal in s.subgoals:
        total += clutter_diagram(goal.antecedent)
        if include_consequents:
            total += clutter_diagram(goal.consequent)
    return total


def proof_metrics(p: Proof, include_consequents: bool = True) -> ProofMetrics:
    clutters = [clutter_state(s, include_consequents) for s in p.states]
    velocities = [abs(b - a) for a, b in zip(clutters, clutters[1:])]
    return ProofMetrics(
        length=len(p.steps),
        total_clutter=sum(clutters),
        average_clutter=Fraction(sum(clutters), len(clutters)),
        max_velocity=max(velocities, default=0),
    )


def metrics_json(m: ProofMetrics) -> dict:
    """Fixed-key JSON form used by the CLI and the service."""
    return {
        "length": m.length,
        "total_clutter": m.total_clutter,
        "average_clutter": {
            "num": m.average_clutter.numerator,
            "den": m.average_clutter.denominator,
        },
        "max_velocity": m.max_velocity,
    }
