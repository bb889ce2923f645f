"""Parser, printer and proof-script round-trips."""

import random

import pytest
from hypothesis import given

from euler_tactics.diagram import (
    Conjunction,
    Implication,
    UnitaryDiagram,
    Zone,
    normalize,
)
from euler_tactics.engine import Discharge, is_finished, new_proof
from euler_tactics.metrics import proof_metrics
from euler_tactics.rules import Direction, RuleApplication, RuleName
from euler_tactics.tactics import apply_tactic
from euler_tactics.textio import (
    ParseError,
    ReplayError,
    SemanticError,
    format_action,
    load_script,
    parse_diagram,
    parse_script,
    parse_theorem,
    parse_theorem_source,
    print_diagram,
    print_theorem,
    save_script,
)

from conftest import (
    all_unitary_diagrams,
    chain_theorem,
    conjunctive_diagrams,
    flat_theorem,
    random_conjunctive,
)

Z = Zone


class TestParseDiagram:
    def test_direct_transcription(self):
        got = parse_diagram("{contours: A B; zones: () (A) (A B); shaded: (A)}")
        assert got == UnitaryDiagram({"A", "B"}, [Z(), Z("A"), Z(["A", "B"])], [Z("A")])

    def test_background_required(self):
        with pytest.raises(SemanticError):
            parse_diagram("{contours: A; zones: (A); shaded:}")

    def test_conjunction(self):
        text = "({contours:; zones: (); shaded:} & {contours: A; zones: () (A); shaded:})"
        got = parse_diagram(text)
        assert isinstance(got, Conjunction)

    def test_undeclared_contour_rejected(self):
        with pytest.raises(SemanticError):
            parse_diagram("{contours: A; zones: () (B); shaded:}")

    def test_shaded_zone_must_be_listed(self):
        with pytest.raises(SemanticError):
            parse_diagram("{contours: A; zones: (); shaded: (A)}")

    def test_errors_carry_spans(self):
        text = "{contours: A; zones: () (B); shaded:}"
        with pytest.raises(SemanticError) as err:
            parse_diagram(text)
        span = err.value.span
        assert 0 <= span.start <= span.end <= len(text)
        assert span.line == 1
        assert text[span.start:span.end] == "(B)"

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_diagram("{contours A; zones: (); shaded:}")
        assert err.value.span.line == 1
        assert err.value.span.col > 1

    def test_comments_and_whitespace(self):
        text = "# heading\n{contours: A;  # inline\n zones: () (A); shaded:}\n"
        got = parse_diagram(text)
        assert got.contours == frozenset({"A"})

    def test_trailing_input_rejected(self):
        with pytest.raises(ParseError):
            parse_diagram("{contours:; zones: (); shaded:} extra")


class TestPrintDiagram:
    def test_canonical_sorted_output(self):
        d = UnitaryDiagram(["B", "A"], [Z(["B", "A"]), Z("A"), Z("B"), Z()], [Z("B"), Z("A")])
        assert print_diagram(d) == "{contours: A B; zones: () (A) (B) (A B); shaded: (A) (B)}"

    def test_roundtrip_exhaustive_two_contour_corpus(self):
        for d in all_unitary_diagrams(("A", "B")):
            assert parse_diagram(print_diagram(d)) == normalize(d)

    @given(conjunctive_diagrams())
    def test_roundtrip_random_compounds(self, d):
        assert parse_diagram(print_diagram(d)) == normalize(d)

    def test_print_is_stable(self):
        rng = random.Random(3)
        for _ in range(50):
            d = random_conjunctive(rng)
            text = print_diagram(d)
            assert print_diagram(parse_diagram(text)) == text

    def test_theorem_roundtrip(self):
        goal = flat_theorem()
        assert parse_theorem(print_theorem(goal)) == goal


class TestTheoremSource:
    def test_bare_theorem(self):
        name, goal = parse_theorem_source(print_theorem(chain_theorem()))
        assert name is None and goal == chain_theorem()

    def test_named_theorem(self):
        text = "theorem chain : " + print_theorem(chain_theorem())
        name, goal = parse_theorem_source(text)
        assert name == "chain" and goal == chain_theorem()


class TestActionSurfaceForms:
    cases = [
        RuleApplication(RuleName.ERASE_CONTOUR, 0, ("L",), contour="A"),
        RuleApplication(RuleName.ERASE_SHADING, 1, (), zone=Z(["A", "B"])),
        RuleApplication(RuleName.INTRODUCE_CONTOUR, 0, ("L", "R"), contour="X_1"),
        RuleApplication(RuleName.INTRODUCE_SHADED_ZONE, 0, ("R",), zone=Z()),
        RuleApplication(RuleName.REMOVE_SHADED_ZONE, 2, (), zone=Z("B")),
        RuleApplication(RuleName.COMBINE, 0, ("L",)),
        RuleApplication(
            RuleName.COPY_CONTOUR, 0, (), contour="C", direction=Direction.LEFT_TO_RIGHT
        ),
        RuleApplication(
            RuleName.COPY_SHADING,
            0,
            ("R", "R"),
            zones=frozenset({Z("A"), Z(["A", "B"])}),
            direction=Direction.RIGHT_TO_LEFT,
        ),
        RuleApplication(RuleName.COPY_SHADING, 0, (), zones=frozenset(), direction=Direction.LEFT_TO_RIGHT),
        RuleApplication(RuleName.IDEMPOTENCY, 0, ("R",)),
        Discharge(0),
    ]

    @pytest.mark.parametrize("action", cases, ids=lambda a: format_action(a))
    def test_every_action_roundtrips(self, action):
        theorem_line = "theorem t : " + print_theorem(chain_theorem())
        script = parse_script(theorem_line + "\n" + format_action(action) + "\n")
        assert len(script.entries) == 1
        entry = script.entries[0]
        got = entry.app if hasattr(entry, "app") else Discharge(entry.goal_index)
        assert got == action


class TestScripts:
    def test_save_load_replay_finished_proof(self, t_flat):
        p = apply_tactic(new_proof(t_flat), "venn_depth", 0)
        text = save_script(p, "flat")
        loaded = load_script(text)
        assert is_finished(loaded)
        assert loaded.states == p.states
        assert proof_metrics(loaded) == proof_metrics(p)

    def test_save_is_stable_under_reload(self, t_flat):
        p = apply_tactic(new_proof(t_flat), "venn_depth", 0)
        text = save_script(p, "flat")
        assert save_script(load_script(text), "flat") == text

    def test_load_by_rerunning_tactics(self, t_flat):
        p = apply_tactic(new_proof(t_flat), "venn_depth", 0)
        text = save_script(p, "flat")
        loaded = load_script(text, mode="tactics")
        assert is_finished(loaded)
        assert loaded.states == p.states

    def test_bad_index_reports_step_and_span(self):
        text = (
            "theorem t : " + print_theorem(chain_theorem()) + "\n"
            "apply erase_contour at 9 - A\n"
        )
        with pytest.raises(ReplayError) as err:
            load_script(text)
        assert err.value.step_number == 1
        assert err.value.span.line == 2

    def test_empty_step_list_is_fresh_proof(self):
        text = "theorem t : " + print_theorem(chain_theorem()) + "\n"
        p = load_script(text)
        assert len(p.states) == 1 and not is_finished(p)

    def test_tactic_line_without_block_reruns(self, t_flat):
        text = "theorem t : " + print_theorem(t_flat) + "\ntactic venn_depth at 0\n"
        p = load_script(text)
        assert is_finished(p)

    def test_comments_and_blanks_ignored(self):
        text = (
            "# a proof\n\n"
            "theorem t : " + print_theorem(chain_theorem()) + "  # goal\n\n"
            "tactic venn_depth at 0  # do it\n"
        )
        assert is_finished(load_script(text))

    def test_failed_tactic_rerun_is_replay_error(self):
        goal = Implication(
            UnitaryDiagram({"A"}, [Z(), Z("A")]),
            UnitaryDiagram({"A"}, [Z(), Z("A")], [Z("A")]),
        )
        text = "theorem bad : " + print_theorem(goal) + "\ntactic venn_depth at 0\n"
        with pytest.raises(ReplayError):
            load_script(text)

    def test_unterminated_block_rejected(self):
        text = "theorem t : " + print_theorem(chain_theorem()) + "\ntactic venn_depth at 0 {\n"
        with pytest.raises(ParseError):
            parse_script(text)

    def test_unknown_rule_rejected(self):
        text = "theorem t : " + print_theorem(chain_theorem()) + "\napply frobnicate at 0 -\n"
        with pytest.raises(ParseError):
            parse_script(text)

    def test_theorem_line_must_come_first(self):
        text = "discharge 0\ntheorem t : " + print_theorem(chain_theorem()) + "\n"
        with pytest.raises(ParseError):
            parse_script(text)
