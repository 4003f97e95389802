"""Fuzzy sets on finite labelled universes.

Conjunction is pointwise ``min``, disjunction pointwise ``max`` and negation
``1 - x``.  Because nothing else ever touches a grade, every grade produced
by this module is drawn from the closure of the input grades under those
three maps; crisp inputs therefore stay exactly crisp.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainError

#: Tolerance for comparing non-crisp grades.
EPS = 1e-9


@dataclass(frozen=True)
class Universe:
    name: str
    elements: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise DomainError(f"universe {self.name!r} is empty")
        if len(set(elements)) != len(elements):
            raise DomainError(f"universe {self.name!r} has duplicate labels")

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise DomainError(f"{label!r} is not an element of universe {self.name!r}") from None


@dataclass(frozen=True)
class FuzzySet:
    universe: Universe
    grades: tuple[float, ...]

    def __post_init__(self):
        grades = tuple(float(g) for g in self.grades)
        if len(grades) != len(self.universe):
            raise DomainError(
                f"expected {len(self.universe)} grades for universe "
                f"{self.universe.name!r}, got {len(grades)}"
            )
        for g in grades:
            if math.isnan(g) or not 0.0 <= g <= 1.0:
                raise DomainError(f"grade {g} outside [0, 1]")
        object.__setattr__(self, "grades", grades)

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_dict(cls, universe: Universe, grades: Mapping[str, float]) -> FuzzySet:
        """Build a set from ``{label: grade}``; labels not mentioned get grade 0."""
        vec = [0.0] * len(universe)
        for label, g in grades.items():
            vec[universe.index(label)] = g
        return cls(universe, tuple(vec))

    @classmethod
    def crisp(cls, universe: Universe, labels: Iterable[str]) -> FuzzySet:
        return cls.from_dict(universe, {label: 1.0 for label in labels})

    @classmethod
    def full(cls, universe: Universe) -> FuzzySet:
        return cls(universe, (1.0,) * len(universe))

    @classmethod
    def empty(cls, universe: Universe) -> FuzzySet:
        return cls(universe, (0.0,) * len(universe))

    # -- inspection -------------------------------------------------------
    def __getitem__(self, label: str) -> float:
        return self.grades[self.universe.index(label)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.universe.elements, self.grades))

    @property
    def is_crisp(self) -> bool:
        return all(g in (0.0, 1.0) for g in self.grades)

    def support(self) -> tuple[str, ...]:
        return tuple(e for e, g in zip(self.universe.elements, self.grades) if g > 0.0)

    def isclose(self, other: FuzzySet, tol: float = EPS) -> bool:
        _check_same(self, other)
        return all(abs(x - y) <= tol for x, y in zip(self.grades, other.grades))

    def __str__(self) -> str:
        return format_set(self)

    # -- algebra ----------------------------------------------------------
    def __and__(self, other: FuzzySet) -> FuzzySet:
        return intersect(self, other)

    def __or__(self, other: FuzzySet) -> FuzzySet:
        return union(self, other)

    def __invert__(self) -> FuzzySet:
        return complement(self)


def _check_same(a: FuzzySet, b: FuzzySet) -> None:
    if a.universe != b.universe:
        raise DomainError(
            f"universe mismatch: {a.universe.name!r} vs {b.universe.name!r}"
        )


def intersect(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    _check_same(a, b)
    return FuzzySet(a.universe, tuple(min(x, y) for x, y in zip(a.grades, b.grades)))


def union(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    _check_same(a, b)
    return FuzzySet(a.universe, tuple(max(x, y) for x, y in zip(a.grades, b.grades)))


def complement(a: FuzzySet) -> FuzzySet:
    return FuzzySet(a.universe, tuple(1.0 - x for x in a.grades))


def possibility(a: FuzzySet, g: FuzzySet) -> float:
    """Degree to which ``a`` is consistent with knowledge ``g``: max_x min(a(x), g(x))."""
    _check_same(a, g)
    return max(min(x, y) for x, y in zip(a.grades, g.grades))


def certainty(a: FuzzySet, g: FuzzySet) -> float:
    """Dual of :func:`possibility`: ``1 - Poss[not a / g]``."""
    return 1.0 - possibility(complement(a), g)


def height(a: FuzzySet) -> float:
    return max(a.grades)


def is_normal(a: FuzzySet, tol: float = 0.0) -> bool:
    return height(a) >= 1.0 - tol


def format_grade(g: float) -> str:
    """Six decimals; crisp 0 and 1 are printed bare."""
    if g == 0.0:
        return "0"
    if g == 1.0:
        return "1"
    return f"{g:.6f}"


def format_set(a: FuzzySet) -> str:
    """Render in the DSL's ``{label/grade, ...}`` notation (zero grades omitted)."""
    items = []
    for label, g in zip(a.universe.elements, a.grades):
        if g == 1.0:
            items.append(label)
        elif g > 0.0:
            items.append(f"{label}/{format_grade(g)}")
    return "{" + ", ".join(items) + "}"
