"""Textual language for diagrams, theorems and proof scripts.

Diagram grammar (whitespace-insensitive, ``#`` starts a line comment)::

    theorem := diagram "|-" unitary
    diagram := unitary | "(" diagram "&" diagram ")"
    unitary := "{" "contours:" ident* ";" "zones:" zone* ";" "shaded:" zone* "}"
    zone    := "(" ident* ")"
    ident   := [A-Za-z][A-Za-z0-9_]*

Proof scripts are line-oriented::

    theorem <name> : <theorem>
    apply <rule> at <goal> <path> <args...>
    discharge <goal>
    tactic <name> at <goal> {      # recorded steps follow, one per line
        apply ...
    }

``<path>`` addresses a subtree of the goal's antecedent: ``-`` for the
root, otherwise ``/``-separated ``L``/``R`` steps.  Scripts record tactic
invocations both by name and as their expanded rule steps; ``load_script``
replays the steps by default and can re-run the tactics instead.

Printing is canonical (sorted, single-spaced), so parse∘print is identity
on normalized diagrams and printed scripts are byte-stable.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator, Union

from .diagram import (
    BACKGROUND,
    CompoundDiagram,
    Conjunction,
    EulerError,
    Implication,
    UnitaryDiagram,
    Zone,
    normalize,
)
from .engine import (
    Discharge,
    Proof,
    StepRecord,
    TacticCall,
    append_step,
    new_proof,
)
from .rules import Direction, RuleApplication, RuleName
from . import tactics as _tactics


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the source text, plus 1-based line/column."""

    start: int
    end: int
    line: int
    col: int


class ParseError(EulerError):
    code = "syntax-error"

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.span = span

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.col}: {self.args[0]}"


class SemanticError(ParseError):
    code = "semantic-error"


class ReplayError(EulerError):
    code = "replay-error"

    def __init__(self, step_number: int, cause: Exception, span: SourceSpan | None = None):
        super().__init__(f"step {step_number}: {cause}")
        self.step_number = step_number
        self.cause = cause
        self.span = span


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<turnstile>\|-)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<punct>[{}();:&/\-])
    """,
    re.VERBOSE,
)

_PUNCT_KINDS = {
    "{": "lbrace",
    "}": "rbrace",
    "(": "lparen",
    ")": "rparen",
    ";": "semi",
    ":": "colon",
    "&": "amp",
    "/": "slash",
    "-": "dash",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


class _Positions:
    def __init__(self, text: str, base_offset: int = 0, base_line: int = 1):
        self.base_offset = base_offset
        self.base_line = base_line
        self.line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def span(self, start: int, end: int) -> SourceSpan:
        i = bisect_right(self.line_starts, start) - 1
        return SourceSpan(
            start=self.base_offset + start,
            end=self.base_offset + end,
            line=self.base_line + i,
            col=start - self.line_starts[i] + 1,
        )


def tokenize(text: str, base_offset: int = 0, base_line: int = 1) -> list[Token]:
    pos_map = _Positions(text, base_offset, base_line)
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos_map.span(pos, pos + 1))
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        if kind == "punct":
            kind = _PUNCT_KINDS[m.group()]
        tokens.append(Token(kind, m.group(), pos_map.span(m.start(), m.end())))
    tokens.append(Token("eof", "", pos_map.span(len(text), len(text))))
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            wanted = what or kind
            found = tok.text or "end of input"
            raise ParseError(f"expected {wanted}, found {found!r}", tok.span)
        return self.next()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text != word:
            raise ParseError(f"expected {word!r}, found {tok.text or 'end of input'!r}", tok.span)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "eof"


# ---------------------------------------------------------------------------
# Diagram parsing

def _parse_zone(ts: _TokenStream) -> tuple[Zone, SourceSpan]:
    start = ts.expect("lparen", "a zone '('")
    labels = []
    while ts.peek().kind == "ident":
        labels.append(ts.next().text)
    end = ts.expect("rparen", "')' closing the zone")
    span = SourceSpan(start.span.start, end.span.end, start.span.line, start.span.col)
    if len(labels) != len(set(labels)):
        raise SemanticError("duplicate contour in zone", span)
    return Zone(labels), span


def _parse_unitary(ts: _TokenStream) -> UnitaryDiagram:
    opening = ts.expect("lbrace", "a unitary diagram '{'")
    ts.expect_keyword("contours")
    ts.expect("colon")
    contours: list[str] = []
    while ts.peek().kind == "ident":
        contours.append(ts.next().text)
    ts.expect("semi", "';' after contours")
    contour_set = frozenset(contours)

    ts.expect_keyword("zones")
    ts.expect("colon")
    zones: list[Zone] = []
    while ts.peek().kind == "lparen":
        z, span = _parse_zone(ts)
        if not z.in_set <= contour_set:
            bad = sorted(z.in_set - contour_set)
            raise SemanticError(f"zone uses undeclared contours {bad}", span)
        zones.append(z)
    ts.expect("semi", "';' after zones")

    ts.expect_keyword("shaded")
    ts.expect("colon")
    shaded: list[Zone] = []
    while ts.peek().kind == "lparen":
        z, span = _parse_zone(ts)
        if z not in zones:
            raise SemanticError(f"shaded zone {z} is not among the zones", span)
        shaded.append(z)
    ts.expect("rbrace", "'}' closing the diagram")

    if BACKGROUND not in zones:
        raise SemanticError("the background zone () must be listed", opening.span)
    return UnitaryDiagram(contour_set, zones, shaded)


def _parse_compound(ts: _TokenStream) -> CompoundDiagram:
    tok = ts.peek()
    if tok.kind == "lbrace":
        return _parse_unitary(ts)
    if tok.kind == "lparen":
        ts.next()
        left = _parse_compound(ts)
        ts.expect("amp", "'&' between conjuncts")
        right = _parse_compound(ts)
        ts.expect("rparen", "')' closing the conjunction")
        return Conjunction(left, right)
    raise ParseError(f"expected a diagram, found {tok.text or 'end of input'!r}", tok.span)


def parse_diagram(text: str) -> CompoundDiagram:
    """Parse a unitary or conjunctive diagram; the result is normalized."""
    ts = _TokenStream(tokenize(text))
    d = _parse_compound(ts)
    if not ts.at_end():
        raise ParseError(f"trailing input {ts.peek().text!r}", ts.peek().span)
    return normalize(d)


def _parse_theorem_tokens(ts: _TokenStream) -> Implication:
    antecedent = _parse_compound(ts)
    ts.expect("turnstile", "'|-'")
    consequent = _parse_unitary(ts)
    return Implication(antecedent, consequent)


def parse_theorem(text: str) -> Implication:
    """Parse ``diagram |- unitary`` into an implication goal."""
    ts = _TokenStream(tokenize(text))
    imp = _parse_theorem_tokens(ts)
    if not ts.at_end():
        raise ParseError(f"trailing input {ts.peek().text!r}", ts.peek().span)
    return imp


def parse_theorem_source(text: str) -> tuple[str | None, Implication]:
    """Parse a theorem file: either a bare theorem or ``theorem <name> : ...``."""
    ts = _TokenStream(tokenize(text))
    name = None
    tok = ts.peek()
    if tok.kind == "ident" and tok.text == "theorem":
        ts.next()
        name = ts.expect("ident", "a theorem name").text
        ts.expect("colon", "':' after the theorem name")
    imp = _parse_theorem_tokens(ts)
    if not ts.at_end():
        raise ParseError(f"trailing input {ts.peek().text!r}", ts.peek().span)
    return name, imp


# ---------------------------------------------------------------------------
# Printing

def print_zone(z: Zone) -> str:
    return "(" + " ".join(z.labels) + ")"


def print_unitary(u: UnitaryDiagram) -> str:
    def items(words: list[str]) -> str:
        return (" " + " ".join(words)) if words else ""

    return (
        "{contours:" + items(u.sorted_contours())
        + "; zones:" + items([print_zone(z) for z in u.sorted_zones()])
        + "; shaded:" + items([print_zone(z) for z in u.sorted_shaded()])
        + "}"
    )


def print_diagram(d: CompoundDiagram) -> str:
    """Canonical text of a conjunctive diagram (sorted, single-spaced)."""
    if isinstance(d, UnitaryDiagram):
        return print_unitary(d)
    if isinstance(d, Conjunction):
        return "(" + print_diagram(d.left) + " & " + print_diagram(d.right) + ")"
    raise EulerError("implications print as theorems, not diagrams")


def print_theorem(goal: Implication) -> str:
    return print_diagram(goal.antecedent) + " |- " + print_diagram(goal.consequent)


def _format_path(path: tuple[str, ...]) -> str:
    return "/".join(path) if path else "-"


def format_action(action: Union[RuleApplication, Discharge]) -> str:
    if isinstance(action, Discharge):
        return f"discharge {action.goal_index}"
    parts = [f"apply {action.rule.value} at {action.goal_index} {_format_path(action.path)}"]
    if action.rule in (RuleName.COPY_CONTOUR, RuleName.COPY_SHADING):
        parts.append(action.direction.value)
    if action.contour is not None:
        parts.append(action.contour)
    if action.zone is not None:
        parts.append(print_zone(action.zone))
    if action.zones is not None:
        parts.extend(print_zone(z) for z in sorted(action.zones))
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Proof scripts

@dataclass(frozen=True)
class ApplyEntry:
    app: RuleApplication
    span: SourceSpan


@dataclass(frozen=True)
class DischargeEntry:
    goal_index: int
    span: SourceSpan


@dataclass(frozen=True)
class TacticEntry:
    name: str
    goal_index: int
    inner: tuple[Union[ApplyEntry, DischargeEntry], ...]
    span: SourceSpan


ScriptEntry = Union[ApplyEntry, DischargeEntry, TacticEntry]


@dataclass(frozen=True)
class ProofScript:
    name: str
    theorem: Implication
    entries: tuple[ScriptEntry, ...]


def save_script(p: Proof, name: str = "proof") -> str:
    """Serialize a proof, grouping tactic-produced steps into blocks."""
    initial = p.states[0].subgoals
    if len(initial) != 1:
        raise EulerError("only single-theorem proofs can be saved")
    lines = [f"theorem {name} : {print_theorem(initial[0])}"]
    calls = {c.start: c for c in p.tactic_calls}
    i = 0
    while i < len(p.steps):
        call = calls.get(i)
        if call is not None:
            lines.append(f"tactic {call.name} at {call.goal_index} {{")
            for step in p.steps[i : i + call.count]:
                lines.append("  " + format_action(step.action))
            lines.append("}")
            i += call.count
        else:
            lines.append(format_action(p.steps[i].action))
            i += 1
    return "\n".join(lines) + "\n"


def _parse_path(ts: _TokenStream) -> tuple[str, ...]:
    tok = ts.peek()
    if tok.kind == "dash":
        ts.next()
        return ()
    steps = [ts.expect("ident", "a path (L/R or -)").text]
    while ts.peek().kind == "slash":
        ts.next()
        steps.append(ts.expect("ident", "L or R").text)
    for s in steps:
        if s not in ("L", "R"):
            raise ParseError(f"path steps are L or R, not {s!r}", tok.span)
    return tuple(steps)


def _parse_direction(ts: _TokenStream) -> Direction:
    tok = ts.expect("ident", "a direction (ltr or rtl)")
    try:
        return Direction(tok.text)
    except ValueError:
        raise ParseError(f"direction is ltr or rtl, not {tok.text!r}", tok.span) from None


def _parse_apply(ts: _TokenStream, span: SourceSpan) -> ApplyEntry:
    rule_tok = ts.expect("ident", "a rule name")
    try:
        rule = RuleName(rule_tok.text)
    except ValueError:
        raise ParseError(f"unknown rule {rule_tok.text!r}", rule_tok.span) from None
    ts.expect_keyword("at")
    goal = int(ts.expect("number", "a subgoal index").text)
    path = _parse_path(ts)
    contour = zone = zones = direction = None
    if rule in (RuleName.ERASE_CONTOUR, RuleName.INTRODUCE_CONTOUR):
        contour = ts.expect("ident", "a contour label").text
    elif rule in (
        RuleName.ERASE_SHADING,
        RuleName.INTRODUCE_SHADED_ZONE,
        RuleName.REMOVE_SHADED_ZONE,
    ):
        zone = _parse_zone(ts)[0]
    elif rule is RuleName.COPY_CONTOUR:
        direction = _parse_direction(ts)
        contour = ts.expect("ident", "a contour label").text
    elif rule is RuleName.COPY_SHADING:
        direction = _parse_direction(ts)
        targets = []
        while ts.peek().kind == "lparen":
            targets.append(_parse_zone(ts)[0])
        zones = frozenset(targets)
    app = RuleApplication(rule, goal, path, contour=contour, zone=zone, zones=zones, direction=direction)
    return ApplyEntry(app, span)


def _script_lines(text: str) -> Iterator[tuple[int, int, str]]:
    offset = 0
    for line_no, raw in enumerate(text.split("\n"), start=1):
        yield line_no, offset, raw
        offset += len(raw) + 1


def parse_script(text: str) -> ProofScript:
    """Parse a proof script; the theorem line must come first."""
    name = "proof"
    theorem: Implication | None = None
    entries: list[ScriptEntry] = []
    block: TacticEntry | None = None
    block_inner: list[Union[ApplyEntry, DischargeEntry]] = []

    for line_no, offset, raw in _script_lines(text):
        tokens = tokenize(raw, base_offset=offset, base_line=line_no)
        ts = _TokenStream(tokens)
        if ts.at_end():
            continue
        head = ts.peek()
        span = head.span
        if head.kind == "rbrace":
            ts.next()
            if block is None:
                raise ParseError("'}' without an open tactic block", span)
            entries.append(TacticEntry(block.name, block.goal_index, tuple(block_inner), block.span))
            block, block_inner = None, []
        elif head.kind == "ident" and head.text == "theorem":
            ts.next()
            if theorem is not None:
                raise ParseError("duplicate theorem line", span)
            name = ts.expect("ident", "a theorem name").text
            ts.expect("colon", "':' after the theorem name")
            theorem = _parse_theorem_tokens(ts)
        elif head.kind == "ident" and head.text == "apply":
            ts.next()
            if theorem is None:
                raise ParseError("the theorem line must come first", span)
            entry = _parse_apply(ts, span)
            (block_inner if block is not None else entries).append(entry)
        elif head.kind == "ident" and head.text == "discharge":
            ts.next()
            if theorem is None:
                raise ParseError("the theorem line must come first", span)
            goal = int(ts.expect("number", "a subgoal index").text)
            entry = DischargeEntry(goal, span)
            (block_inner if block is not None else entries).append(entry)
        elif head.kind == "ident" and head.text == "tactic":
            ts.next()
            if theorem is None:
                raise ParseError("the theorem line must come first", span)
            if block is not None:
                raise ParseError("tactic blocks cannot nest", span)
            tac_name = ts.expect("ident", "a tactic name").text
            ts.expect_keyword("at")
            goal = int(ts.expect("number", "a subgoal index").text)
            if ts.peek().kind == "lbrace":
                ts.next()
                block = TacticEntry(tac_name, goal, (), span)
                block_inner = []
            else:
                entries.append(TacticEntry(tac_name, goal, (), span))
        else:
            raise ParseError(
                f"expected theorem, apply, tactic or discharge, found {head.text!r}", span
            )
        if not ts.at_end():
            raise ParseError(f"trailing input {ts.peek().text!r}", ts.peek().span)

    if block is not None:
        raise ParseError("unterminated tactic block", block.span)
    if theorem is None:
        raise ParseError("script has no theorem line", SourceSpan(0, 0, 1, 1))
    return ProofScript(name, theorem, tuple(entries))


def load_script(text: str, mode: str = "steps") -> Proof:
    """Parse and replay a script into a proof.

    ``mode="steps"`` replays the recorded rule steps (tactic blocks are
    replayed step by step and logged as tactic calls); ``mode="tactics"``
    re-runs each named tactic instead, taking its result as authoritative.
    Either way every resulting step has gone through the engine; the first
    invalid step raises ReplayError with its source position.
    """
    if mode not in ("steps", "tactics"):
        raise ValueError(f"mode is 'steps' or 'tactics', not {mode!r}")
    script = parse_script(text)
    p = new_proof(script.theorem)

    def replay_one(p: Proof, entry, provenance: str | None) -> Proof:
        action = entry.app if isinstance(entry, ApplyEntry) else Discharge(entry.goal_index)
        try:
            return append_step(p, StepRecord(action, provenance))
        except EulerError as exc:
            raise ReplayError(len(p.steps) + 1, exc, entry.span) from exc

    for entry in script.entries:
        if isinstance(entry, (ApplyEntry, DischargeEntry)):
            p = replay_one(p, entry, None)
        elif mode == "tactics" or not entry.inner:
            try:
                p = _tactics.apply_tactic(p, entry.name, entry.goal_index)
            except EulerError as exc:
                raise ReplayError(len(p.steps) + 1, exc, entry.span) from exc
        else:
            start = len(p.steps)
            for sub in entry.inner:
                p = replay_one(p, sub, entry.name)
            call = TacticCall(entry.name, entry.goal_index, start, len(entry.inner))
            p = Proof(p.states, p.steps, p.tactic_calls + (call,))
    return p
