"""Tactical theorem prover for conjunctive Euler diagrams."""

from .diagram import (
    BACKGROUND,
    CompoundDiagram,
    Conjunction,
    DiagramError,
    EulerError,
    Implication,
    InvalidPath,
    Path,
    UnitaryDiagram,
    Zone,
    diagram_equal,
    is_venn_form,
    missing_zones,
    normalize,
    replace_at,
    subdiagram_at,
    venn_diagram,
    venn_zones,
)
from .semantics import Cell, Vocabulary, cells_of_zone, empty_cells, entails, equivalent, goal_valid
from .rules import Direction, RuleApplication, RuleError, RuleName
from .engine import (
    Discharge,
    Proof,
    ProofState,
    StepRecord,
    apply_rule,
    discharge_trivial,
    is_finished,
    new_proof,
    undo_to,
)
from .metrics import ProofMetrics, clutter_state, clutter_unitary, proof_metrics
from .tactics import REGISTRY, TacticFailed, TacticResult, apply_tactic, run_tactic
from .textio import ParseError, ProofScript, load_script, parse_diagram, parse_theorem, print_diagram, save_script

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
