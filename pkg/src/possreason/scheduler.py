"""Priority schedule for introducing knowledge.

Facts come first.  Default rules are then layered by two meta-rules:

* specialization: a rule whose antecedent strictly contains another rule's
  antecedent is introduced before it;
* temporal: a rule whose consequent concerns an earlier time is introduced
  before one concerning a later time.

Rules are placed by longest-path rank in the resulting DAG, so rules that
are not ordered relative to each other share a layer and are introduced
simultaneously.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .errors import ScheduleError
from .kb import DefaultRule, KnowledgeBase

Edge = tuple[str, str]


@dataclass(frozen=True)
class PrioritySchedule:
    layers: tuple[tuple[str, ...], ...]
    temporal: frozenset[Edge] = frozenset()
    specialization: frozenset[Edge] = frozenset()
    warnings: tuple[str, ...] = ()

    @property
    def edges(self) -> frozenset[Edge]:
        return self.temporal | self.specialization

    def layer_of(self, item_id: str) -> int:
        for k, layer in enumerate(self.layers):
            if item_id in layer:
                return k
        raise KeyError(item_id)

    def describe(self) -> list[str]:
        return [f"layer {k}: {{{', '.join(layer)}}}" for k, layer in enumerate(self.layers)]


def specialization_edges(rules: Iterable[DefaultRule]) -> set[Edge]:
    """``(more specific, less specific)`` pairs by strict antecedent containment."""
    rules = list(rules)
    ants = {r.id: frozenset(r.antecedent) for r in rules}
    return {
        (r2.id, r1.id)
        for r1 in rules
        for r2 in rules
        if ants[r1.id] < ants[r2.id]
    }


def temporal_edges(rules: Iterable[DefaultRule]) -> set[Edge]:
    """``(earlier, later)`` pairs by consequent time; untimed rules are unordered."""
    timed = [r for r in rules if r.consequent.variable.time is not None]
    return {
        (r1.id, r2.id)
        for r1 in timed
        for r2 in timed
        if r1.consequent.variable.time < r2.consequent.variable.time
    }


def layer_rules(rule_ids: Iterable[str], edges: Iterable[Edge]) -> list[tuple[str, ...]]:
    """Longest-path layering of ``rule_ids`` under ``edges``; raises on a cycle."""
    g = nx.DiGraph()
    g.add_nodes_from(sorted(rule_ids))
    g.add_edges_from(sorted(edges))
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        names = tuple(u for u, _ in cycle)
        raise ScheduleError(
            "priority edges are cyclic: " + " -> ".join(names + names[:1]), names
        )
    rank: dict[str, int] = {}
    for node in nx.lexicographical_topological_sort(g):
        rank[node] = max((rank[p] + 1 for p in g.predecessors(node)), default=0)
    depth = max(rank.values(), default=-1) + 1
    return [tuple(sorted(n for n, k in rank.items() if k == i)) for i in range(depth)]


def build_schedule(kb: KnowledgeBase) -> PrioritySchedule:
    rules = kb.defaults
    temporal = temporal_edges(rules)
    special = specialization_edges(rules)
    warnings = []
    for a, b in sorted(special):
        if (b, a) in temporal:
            warnings.append(
                f"specialization edge {a} -> {b} conflicts with temporal edge {b} -> {a}; dropped"
            )
    special = {(a, b) for a, b in special if (b, a) not in temporal}
    layers = [tuple(sorted(f.id for f in kb.facts))]
    layers.extend(layer_rules((r.id for r in rules), temporal | special))
    return PrioritySchedule(
        layers=tuple(layers),
        temporal=frozenset(temporal),
        specialization=frozenset(special),
        warnings=tuple(warnings),
    )
