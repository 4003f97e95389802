"""Line-oriented knowledge-base language.

::

    # comment
    universe Bool = { true, false }
    var loaded@1 : Bool
    option threshold = 0.9
    fact F1: loaded@1 is {true}
    default D1: if loaded@1 is {true} then loaded@2 is {true}
    default D0: typically alive@2 is not {false}
    query alive@3
    query alive@3 is {true}

Sets are written ``{label/grade, ...}``; a bare ``label`` has grade 1 and
omitted labels have grade 0.  ``not`` complements the set that follows it.
A ``@N`` suffix on a variable name gives the variable time index ``N``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .errors import DomainError, ParseError
from .fuzzy import FuzzySet, Universe, complement
from .kb import DefaultRule, Fact, KBOptions, KnowledgeBase, Literal, Query
from .relational import Variable

KEYWORDS = {"universe", "var", "fact", "default", "query", "option",
            "if", "then", "and", "is", "not", "typically"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<number>-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_'\-]*)
  | (?P<punct>[{},/:=@])
    """,
    re.VERBOSE,
)

BUILTINS = ("nixon", "nixon-quaker-only", "nixon-republican-only", "nixon-both", "yale")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize_line(text: str, lineno: int) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), lineno, pos + 1))
        pos = m.end()
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int, line_len: int, state: _KBBuilder):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.eol_col = line_len + 1
        self.kb = state

    # -- token helpers ----------------------------------------------------
    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok if tok is not None else self.peek()
        col = tok.col if tok is not None else self.eol_col
        return ParseError(message, self.lineno, col)

    def next(self, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next(repr(text))
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False

    def ident(self, what: str) -> Token:
        tok = self.next(what)
        if tok.kind != "ident" or tok.text in KEYWORDS:
            raise self.error(f"expected {what}, found {tok.text!r}", tok)
        return tok

    def end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok.text!r}", tok)

    # -- grammar ----------------------------------------------------------
    def statement(self) -> None:
        tok = self.next("statement")
        handler = {
            "universe": self.universe_stmt,
            "var": self.var_stmt,
            "fact": self.fact_stmt,
            "default": self.default_stmt,
            "query": self.query_stmt,
            "option": self.option_stmt,
        }.get(tok.text)
        if handler is None:
            raise self.error(f"unknown statement {tok.text!r}", tok)
        handler()
        self.end()

    def label(self) -> Token:
        tok = self.next("label")
        if tok.kind == "number" and re.fullmatch(r"\d+", tok.text):
            return tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            raise self.error(f"expected label, found {tok.text!r}", tok)
        return tok

    def universe_stmt(self) -> None:
        name = self.ident("universe name")
        self.expect("=")
        self.expect("{")
        labels = [self.label().text]
        while self.accept(","):
            labels.append(self.label().text)
        self.expect("}")
        if name.text in self.kb.universes:
            raise self.error(f"duplicate universe {name.text!r}", name)
        try:
            self.kb.universes[name.text] = Universe(name.text, tuple(labels))
        except DomainError as e:
            raise self.error(str(e), name) from None

    def var_name(self) -> tuple[str, Optional[int], Token]:
        base = self.ident("variable name")
        time = None
        tok = self.peek()
        if tok is not None and tok.text == "@" and tok.col == base.col + len(base.text):
            self.i += 1
            t = self.next("time index")
            if t.kind != "number" or not re.fullmatch(r"-?\d+", t.text):
                raise self.error(f"time index must be an integer, found {t.text!r}", t)
            time = int(t.text)
            return f"{base.text}@{time}", time, base
        return base.text, time, base

    def var_stmt(self) -> None:
        name, time, tok = self.var_name()
        self.expect(":")
        utok = self.ident("universe name")
        if name in self.kb.variables:
            raise self.error(f"duplicate variable {name!r}", tok)
        if utok.text not in self.kb.universes:
            raise self.error(f"unknown universe {utok.text!r}", utok)
        self.kb.variables[name] = Variable(name, self.kb.universes[utok.text], time)

    def variable_ref(self) -> Variable:
        name, _, tok = self.var_name()
        if name not in self.kb.variables:
            raise self.error(f"unknown variable {name!r}", tok)
        return self.kb.variables[name]

    def set_expr(self, universe: Universe) -> FuzzySet:
        negate = self.accept("not")
        self.expect("{")
        grades: dict[str, float] = {}
        if not self.accept("}"):
            while True:
                lab = self.label()
                if lab.text not in universe.elements:
                    raise self.error(f"{lab.text!r} is not in universe {universe.name!r}", lab)
                if lab.text in grades:
                    raise self.error(f"label {lab.text!r} listed twice", lab)
                g = 1.0
                if self.accept("/"):
                    gt = self.next("grade")
                    if gt.kind != "number":
                        raise self.error(f"expected grade, found {gt.text!r}", gt)
                    g = float(gt.text)
                    if not 0.0 <= g <= 1.0:
                        raise self.error(f"grade {gt.text} outside [0, 1]", gt)
                grades[lab.text] = g
                if self.accept("}"):
                    break
                self.expect(",")
        s = FuzzySet.from_dict(universe, grades)
        return complement(s) if negate else s

    def literal(self) -> Literal:
        v = self.variable_ref()
        self.expect("is")
        return Literal(v, self.set_expr(v.universe))

    def item_id(self) -> Token:
        tok = self.ident("identifier")
        if tok.text in self.kb.ids:
            raise self.error(f"duplicate identifier {tok.text!r}", tok)
        self.kb.ids.add(tok.text)
        return tok

    def fact_stmt(self) -> None:
        tok = self.item_id()
        self.expect(":")
        self.kb.facts.append(Fact(tok.text, self.literal()))

    def default_stmt(self) -> None:
        tok = self.item_id()
        self.expect(":")
        self.accept("typically")
        antecedent = []
        if self.accept("if"):
            antecedent.append(self.literal())
            while self.accept("and"):
                antecedent.append(self.literal())
            self.expect("then")
        consequent = self.literal()
        try:
            self.kb.defaults.append(DefaultRule(tok.text, tuple(antecedent), consequent))
        except DomainError as e:
            raise self.error(str(e), tok) from None

    def query_stmt(self) -> None:
        v = self.variable_ref()
        if self.accept("is"):
            self.kb.queries.append(Query(v, self.set_expr(v.universe)))
            return
        self.kb.queries.append(Query(v))
        while self.accept(","):
            self.kb.queries.append(Query(self.variable_ref()))

    def option_stmt(self) -> None:
        key = self.ident("option name")
        self.expect("=")
        val = self.next("option value")
        try:
            if key.text in ("max_cells", "max_disjuncts"):
                if not re.fullmatch(r"\d+", val.text):
                    raise ValueError(f"{key.text} must be a positive integer")
                self.kb.options[key.text] = int(val.text)
            elif key.text == "threshold":
                t = float(val.text)
                if not 0.5 < t <= 1.0:
                    raise ValueError(f"threshold {val.text} outside (0.5, 1]")
                self.kb.options[key.text] = t
            elif key.text == "oracle_check":
                if val.text not in ("true", "false"):
                    raise ValueError("oracle_check must be true or false")
                self.kb.options[key.text] = val.text == "true"
            else:
                raise ValueError(f"unknown option {key.text!r}")
        except ValueError as e:
            raise self.error(str(e), val) from None


class _KBBuilder:
    def __init__(self):
        self.universes: dict[str, Universe] = {}
        self.variables: dict[str, Variable] = {}
        self.ids: set[str] = set()
        self.facts: list[Fact] = []
        self.defaults: list[DefaultRule] = []
        self.queries: list[Query] = []
        self.options: dict = {}


def parse_kb(text: str) -> KnowledgeBase:
    """Parse knowledge-base source.  Errors carry 1-based line and column."""
    state = _KBBuilder()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(line, lineno)
        if tokens:
            _LineParser(tokens, lineno, len(line), state).statement()
    try:
        return KnowledgeBase(
            universes=tuple(state.universes.values()),
            variables=tuple(state.variables.values()),
            facts=tuple(state.facts),
            defaults=tuple(state.defaults),
            queries=tuple(state.queries),
            options=KBOptions(**state.options),
        )
    except DomainError as e:
        raise ParseError(str(e)) from None


def _fmt_grade(g: float) -> str:
    return "1" if g == 1.0 else repr(g)


def format_literal_set(s: FuzzySet) -> str:
    items = [
        label if g == 1.0 else f"{label}/{_fmt_grade(g)}"
        for label, g in zip(s.universe.elements, s.grades)
        if g > 0.0
    ]
    return "{" + ", ".join(items) + "}"


def _fmt_literal(lit: Literal) -> str:
    return f"{lit.variable.name} is {format_literal_set(lit.set)}"


def format_kb(kb: KnowledgeBase) -> str:
    """Print a knowledge base back to source form.  Grades round-trip exactly."""
    lines = []
    defaults = KBOptions()
    for key in ("max_cells", "max_disjuncts", "threshold", "oracle_check"):
        val = getattr(kb.options, key)
        if val != getattr(defaults, key):
            text = str(val).lower() if isinstance(val, bool) else repr(val)
            lines.append(f"option {key} = {text}")
    for u in kb.universes:
        lines.append(f"universe {u.name} = {{ {', '.join(u.elements)} }}")
    for v in kb.variables:
        lines.append(f"var {v.name} : {v.universe.name}")
    for f in kb.facts:
        lines.append(f"fact {f.id}: {_fmt_literal(f.literal)}")
    for d in kb.defaults:
        if d.antecedent:
            ant = " and ".join(_fmt_literal(lit) for lit in d.antecedent)
            lines.append(f"default {d.id}: if {ant} then {_fmt_literal(d.consequent)}")
        else:
            lines.append(f"default {d.id}: {_fmt_literal(d.consequent)}")
    for q in kb.queries:
        if q.set is None:
            lines.append(f"query {q.variable.name}")
        else:
            lines.append(f"query {q.variable.name} is {format_literal_set(q.set)}")
    return "\n".join(lines) + "\n"


def load_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read())


def builtin_source(name: str) -> str:
    if name not in BUILTINS:
        raise DomainError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    return resources.files("possreason").joinpath("data").joinpath(f"{name}.kb").read_text("utf-8")


def builtin(name: str) -> KnowledgeBase:
    return parse_kb(builtin_source(name))
