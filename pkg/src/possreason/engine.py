"""Layer-by-layer inference with possibility-qualified defaults.

A default ``typically if P then C`` is held in material form

    not P  ∪  blocked(C)  ∪  C

where ``blocked(C)`` reads "C is not possible".  Introducing a layer of
rules conjoins the current knowledge ``h`` with every rule's material form
and distributes the result into disjuncts ``K ∧ blocked(C1) ∧ ... ∧
blocked(Cm)``.  Disjuncts with the same blocked terms are max-merged.
Each disjunct is then *effected*: every blocked term is replaced by the
scalar ``1 - Poss[Ci / K]`` and the disjunct contributes
``K ∧ min_i(1 - Poss[Ci / K])``.  The new ``h`` is the max over
contributions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import DomainError, ResourceError
from .fuzzy import EPS, FuzzySet, certainty, format_grade, format_set, intersect, possibility, union
from .kb import DEFAULT_MAX_DISJUNCTS, DefaultRule, KnowledgeBase, Literal
from .relational import (
    JointSpace,
    Relation,
    Variable,
    complement_rel,
    conjoin,
    conjoin_all,
    cylindrical_extend,
    disjoin,
    marginal,
    poss_against,
)
from .scheduler import PrioritySchedule, build_schedule


def apply_default(h: FuzzySet, a: FuzzySet) -> FuzzySet:
    """Combine knowledge ``V is h`` with the default ``typically V is a``.

    Returns ``h ∧ ((1 - Poss[a/h]) ∨ a)`` pointwise: ``h`` itself when ``a``
    is impossible given ``h``, ``a ∩ h`` when ``a`` is fully possible.
    """
    alpha = 1.0 - possibility(a, h)
    return union(intersect(h, FuzzySet(h.universe, (alpha,) * len(h.grades))), intersect(a, h))


@dataclass(frozen=True)
class BlockedTerm:
    """"``consequent`` is not possible"."""

    consequent: Literal

    def __post_init__(self):
        if max(self.consequent.set.grades) == 0.0:
            raise DomainError("blocked term over an empty set")

    def __str__(self) -> str:
        return f"#({self.consequent})"


@dataclass(frozen=True, eq=False)
class Disjunct:
    k: Relation
    blocked: frozenset[BlockedTerm] = frozenset()

    def describe(self) -> str:
        parts = [f"K[{self.k.nonzero_cells()}/{self.k.space.cells} cells, height {format_grade(self.k.height())}]"]
        parts.extend(sorted(str(b) for b in self.blocked))
        return " ∧ ".join(parts)


@dataclass(frozen=True)
class BlockCheck:
    term: BlockedTerm
    poss: float


@dataclass(frozen=True, eq=False)
class EffectedDisjunct:
    disjunct: Disjunct
    checks: tuple[BlockCheck, ...]
    beta: float
    contribution: Relation


@dataclass(frozen=True, eq=False)
class LayerRecord:
    index: int
    rule_ids: tuple[str, ...]
    effected: tuple[EffectedDisjunct, ...]
    pruned: int
    h: Relation


@dataclass(frozen=True, eq=False)
class KnowledgeState:
    h: Relation
    schedule: Optional[PrioritySchedule] = None
    trace: tuple[LayerRecord, ...] = ()
    inconsistent: bool = False

    @property
    def space(self) -> JointSpace:
        return self.h.space


def _extend_literal(lit: Literal, space: JointSpace) -> Relation:
    return cylindrical_extend(lit.set, lit.variable, space)


def material_form(rule: DefaultRule, space: JointSpace) -> list[Disjunct]:
    """``[not antecedent, blocked(consequent), consequent]``, first dropped if unconditional."""
    out = []
    if rule.antecedent:
        ant = conjoin_all((_extend_literal(lit, space) for lit in rule.antecedent), space)
        out.append(Disjunct(complement_rel(ant)))
    out.append(Disjunct(Relation.full(space), frozenset({BlockedTerm(rule.consequent)})))
    out.append(Disjunct(_extend_literal(rule.consequent, space)))
    return out


def _merge(disjuncts: Iterable[Disjunct]) -> dict[frozenset, Relation]:
    merged: dict[frozenset, Relation] = {}
    for d in disjuncts:
        if d.blocked in merged:
            merged[d.blocked] = disjoin(merged[d.blocked], d.k)
        else:
            merged[d.blocked] = d.k
    return merged


def distribute(
    h: Relation, rules: Iterable[DefaultRule], max_disjuncts: int = DEFAULT_MAX_DISJUNCTS
) -> list[Disjunct]:
    """Expand ``h ∧ form(r1) ∧ ... ∧ form(rm)`` into merged disjuncts (canonical order)."""
    current = {frozenset(): h}
    for rule in rules:
        form = _merge(material_form(rule, h.space))
        products = []
        for blocked, k in current.items():
            for fblocked, fk in form.items():
                products.append(Disjunct(conjoin(k, fk), blocked | fblocked))
        current = _merge(products)
        if len(current) > max_disjuncts:
            raise ResourceError(
                f"layer expands to {len(current)} disjuncts, limit is {max_disjuncts}"
            )
    return [Disjunct(k, b) for b, k in sorted(current.items(), key=lambda kv: _blocked_key(kv[0]))]


def _blocked_key(blocked: frozenset) -> tuple:
    return (len(blocked), sorted(str(b) for b in blocked))


def effect(d: Disjunct) -> EffectedDisjunct:
    checks = tuple(
        BlockCheck(b, poss_against(d.k, b.consequent.set, b.consequent.variable))
        for b in sorted(d.blocked, key=str)
    )
    beta = min((1.0 - c.poss for c in checks), default=1.0)
    contribution = d.k if beta == 1.0 else Relation(d.k.space, np.minimum(d.k.grades, beta))
    return EffectedDisjunct(d, checks, beta, contribution)


def introduce_layer(
    state: KnowledgeState,
    rules: Iterable[DefaultRule],
    *,
    index: int = 0,
    max_disjuncts: int = DEFAULT_MAX_DISJUNCTS,
) -> KnowledgeState:
    rules = list(rules)
    if not rules:
        return state
    disjuncts = distribute(state.h, rules, max_disjuncts)
    live = [d for d in disjuncts if not d.k.is_zero()]
    effected = tuple(effect(d) for d in live)
    h = Relation.zeros(state.h.space)
    for e in effected:
        h = disjoin(h, e.contribution)
    record = LayerRecord(
        index=index,
        rule_ids=tuple(r.id for r in rules),
        effected=effected,
        pruned=len(disjuncts) - len(live),
        h=h,
    )
    return KnowledgeState(
        h=h,
        schedule=state.schedule,
        trace=state.trace + (record,),
        inconsistent=state.inconsistent or h.height() < 1.0 - EPS,
    )


def initial_state(kb: KnowledgeBase, schedule: Optional[PrioritySchedule] = None) -> KnowledgeState:
    space = kb.joint_space()
    h = conjoin_all((_extend_literal(f.literal, space) for f in kb.facts), space)
    record = LayerRecord(0, tuple(f.id for f in kb.facts), (), 0, h)
    return KnowledgeState(h, schedule, (record,), h.height() < 1.0 - EPS)


def infer(kb: KnowledgeBase, *, passes: int = 1) -> KnowledgeState:
    """Run the full schedule once (``passes > 1`` re-runs the rule layers; experimental)."""
    schedule = build_schedule(kb)
    state = initial_state(kb, schedule)
    for _ in range(passes):
        for k, layer in enumerate(schedule.layers[1:], start=1):
            state = introduce_layer(
                state,
                [kb.rule(rule_id) for rule_id in layer],
                index=k,
                max_disjuncts=kb.options.max_disjuncts,
            )
    return state


ENTAILED = "ENTAILED"
REFUTED = "REFUTED"
UNKNOWN = "UNKNOWN"
INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class QueryResult:
    set: FuzzySet
    poss: float
    cert: float
    classification: str

    @property
    def label(self) -> str:
        support = self.set.support()
        if self.set.is_crisp and len(support) == 1:
            return support[0]
        return format_set(self.set)


@dataclass(frozen=True)
class Verdict:
    variable: Variable
    projected: FuzzySet
    results: tuple[QueryResult, ...]
    kb_height: float

    @property
    def primary(self) -> QueryResult:
        return self.results[0]

    @property
    def classification(self) -> str:
        return self.primary.classification

    def result_for(self, s: FuzzySet) -> QueryResult:
        for r in self.results:
            if r.set == s:
                return r
        raise KeyError(str(s))


def classify(poss: float, cert: float, kb_height: float, threshold: float = 1.0) -> str:
    if kb_height < 1.0 - EPS:
        return INCONSISTENT
    if cert >= threshold - EPS:
        return ENTAILED
    if poss <= 1.0 - threshold + EPS:
        return REFUTED
    return UNKNOWN


def query(
    state: KnowledgeState,
    v: Union[Variable, str],
    q: Optional[FuzzySet] = None,
    threshold: float = 1.0,
) -> Verdict:
    """Project the knowledge onto ``v`` and grade query sets against it.

    Without ``q`` every singleton of ``v``'s universe is graded, and the
    first one (in universe order) is the primary result.
    """
    if not 0.5 < threshold <= 1.0:
        raise DomainError(f"threshold {threshold} outside (0.5, 1]")
    if isinstance(v, str):
        matches = [var for var in state.space.variables if var.name == v]
        if not matches:
            raise DomainError(f"unknown variable {v!r}")
        v = matches[0]
    projected = marginal(state.h, v)
    kb_height = state.h.height()
    if state.inconsistent:
        kb_height = min(kb_height, min(r.h.height() for r in state.trace))
    sets = [q] if q is not None else [
        FuzzySet.crisp(v.universe, [label]) for label in v.universe.elements
    ]
    results = []
    for s in sets:
        p = possibility(s, projected)
        c = certainty(s, projected)
        results.append(QueryResult(s, p, c, classify(p, c, kb_height, threshold)))
    return Verdict(v, projected, tuple(results), kb_height)
