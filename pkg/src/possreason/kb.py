"""Knowledge-base data model: literals, facts, default rules."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, ResourceError
from .fuzzy import FuzzySet, Universe, format_set, height
from .relational import DEFAULT_MAX_CELLS, JointSpace, Variable

DEFAULT_MAX_DISJUNCTS = 10_000


@dataclass(frozen=True)
class Literal:
    """``variable is set``.  A negated atom is stored with the complemented set."""

    variable: Variable
    set: FuzzySet

    def __post_init__(self):
        if self.set.universe != self.variable.universe:
            raise DomainError(
                f"set on universe {self.set.universe.name!r} used with variable "
                f"{self.variable.name!r} over {self.variable.universe.name!r}"
            )

    def __str__(self) -> str:
        return f"{self.variable.name} is {format_set(self.set)}"


@dataclass(frozen=True)
class Fact:
    id: str
    literal: Literal


@dataclass(frozen=True)
class DefaultRule:
    """``typically if antecedent then consequent``; empty antecedent is unconditional."""

    id: str
    antecedent: tuple[Literal, ...]
    consequent: Literal

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        names = [lit.variable.name for lit in self.antecedent]
        if len(set(names)) != len(names):
            raise DomainError(f"rule {self.id}: antecedent mentions a variable twice")
        if self.consequent.variable.name in names:
            raise DomainError(
                f"rule {self.id}: consequent variable {self.consequent.variable.name!r} "
                "also occurs in the antecedent"
            )
        if height(self.consequent.set) == 0.0:
            raise DomainError(f"rule {self.id}: consequent set is empty")

    @property
    def unconditional(self) -> bool:
        return not self.antecedent

    def __str__(self) -> str:
        if not self.antecedent:
            return f"typically {self.consequent}"
        ant = " and ".join(str(lit) for lit in self.antecedent)
        return f"typically if {ant} then {self.consequent}"


@dataclass(frozen=True)
class Query:
    variable: Variable
    set: Optional[FuzzySet] = None


@dataclass(frozen=True)
class KBOptions:
    max_cells: int = DEFAULT_MAX_CELLS
    max_disjuncts: int = DEFAULT_MAX_DISJUNCTS
    threshold: float = 1.0
    oracle_check: bool = False

    def __post_init__(self):
        if not 0.5 < self.threshold <= 1.0:
            raise DomainError(f"threshold {self.threshold} outside (0.5, 1]")
        if self.max_cells < 1:
            raise DomainError("max_cells must be at least 1")
        if self.max_disjuncts < 1:
            raise DomainError("max_disjuncts must be at least 1")


@dataclass(frozen=True)
class KnowledgeBase:
    universes: tuple[Universe, ...] = ()
    variables: tuple[Variable, ...] = ()
    facts: tuple[Fact, ...] = ()
    defaults: tuple[DefaultRule, ...] = ()
    queries: tuple[Query, ...] = ()
    options: KBOptions = field(default_factory=KBOptions)

    def __post_init__(self):
        for name in ("universes", "variables", "facts", "defaults", "queries"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        self._validate()

    def _validate(self) -> None:
        _unique("universe", [u.name for u in self.universes])
        _unique("variable", [v.name for v in self.variables])
        _unique("identifier", [f.id for f in self.facts] + [d.id for d in self.defaults])
        universes = set(self.universes)
        variables = set(self.variables)
        for v in self.variables:
            if v.universe not in universes:
                raise DomainError(f"variable {v.name!r} uses undeclared universe {v.universe.name!r}")
        literals = [f.literal for f in self.facts]
        for d in self.defaults:
            literals.extend(d.antecedent)
            literals.append(d.consequent)
        for lit in literals:
            if lit.variable not in variables:
                raise DomainError(f"undeclared variable {lit.variable.name!r}")
        for q in self.queries:
            if q.variable not in variables:
                raise DomainError(f"query on undeclared variable {q.variable.name!r}")
        cells = math.prod(len(v.universe) for v in self.variables)
        if cells > self.options.max_cells:
            raise ResourceError(
                f"joint space has {cells} cells, limit is {self.options.max_cells}"
            )

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise DomainError(f"unknown variable {name!r}")

    def universe(self, name: str) -> Universe:
        for u in self.universes:
            if u.name == name:
                return u
        raise DomainError(f"unknown universe {name!r}")

    def rule(self, rule_id: str) -> DefaultRule:
        for d in self.defaults:
            if d.id == rule_id:
                return d
        raise DomainError(f"unknown rule {rule_id!r}")

    def joint_space(self) -> JointSpace:
        return JointSpace(self.variables, self.options.max_cells)

    def equivalent(self, other: KnowledgeBase) -> bool:
        """Same content up to declaration order."""
        return (
            set(self.universes) == set(other.universes)
            and set(self.variables) == set(other.variables)
            and set(self.facts) == set(other.facts)
            and set(self.defaults) == set(other.defaults)
            and set(self.queries) == set(other.queries)
            and self.options == other.options
        )


def _unique(kind: str, names: list[str]) -> None:
    seen = set()
    for n in names:
        if n in seen:
            raise DomainError(f"duplicate {kind} {n!r}")
        seen.add(n)
