"""Explicit power-set computations.

Second-order sets grade every crisp subset of a universe.  Subsets are
encoded as bitmasks over the universe's element order (bit ``i`` set means
element ``i`` is a member).  This module is a brute-force check on the
closed-form default combination used by the engine; it is exponential in
the universe size and is never on the inference path.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceError
from .fuzzy import FuzzySet, Universe, union, intersect

ORACLE_MAX_ELEMENTS = 12


@lru_cache(maxsize=None)
def _membership(n: int) -> np.ndarray:
    """Boolean matrix ``m[mask, i]``: is element ``i`` in subset ``mask``."""
    masks = np.arange(1 << n)[:, None]
    m = (masks >> np.arange(n)[None, :]) & 1
    m = m.astype(bool)
    m.flags.writeable = False
    return m


def _check_size(universe: Universe, limit: int) -> None:
    if len(universe) > limit:
        raise ResourceError(
            f"universe {universe.name!r} has {len(universe)} elements; oracle limit is {limit}"
        )


@dataclass(frozen=True, eq=False)
class SecondOrderSet:
    universe: Universe
    grades: np.ndarray

    def __post_init__(self):
        arr = np.array(self.grades, dtype=float)
        if arr.shape != (1 << len(self.universe),):
            raise DomainError(f"expected {1 << len(self.universe)} subset grades, got {arr.shape}")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise DomainError("second-order grades must lie in [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "grades", arr)

    def __eq__(self, other):
        if not isinstance(other, SecondOrderSet):
            return NotImplemented
        return self.universe == other.universe and np.array_equal(self.grades, other.grades)

    __hash__ = None

    def mask_of(self, labels) -> int:
        return sum(1 << self.universe.index(label) for label in labels)

    def __getitem__(self, mask: int) -> float:
        return float(self.grades[mask])


def subset_mask(s: FuzzySet) -> int:
    """Bitmask of the support of a crisp set."""
    return sum(1 << i for i, g in enumerate(s.grades) if g > 0.0)


def qualify(a: FuzzySet, limit: int = ORACLE_MAX_ELEMENTS) -> SecondOrderSet:
    """The possibility qualification of ``a``: G -> Poss[a/G] for every crisp G."""
    _check_size(a.universe, limit)
    m = _membership(len(a.universe))
    grades = np.where(m, np.asarray(a.grades)[None, :], 0.0).max(axis=1)
    return SecondOrderSet(a.universe, grades)


def star(a: FuzzySet, limit: int = ORACLE_MAX_ELEMENTS) -> SecondOrderSet:
    """Negated qualification, i.e. "``a`` is not possible"."""
    return SecondOrderSet(a.universe, 1.0 - qualify(a, limit).grades)


def lift(b: FuzzySet, limit: int = ORACLE_MAX_ELEMENTS) -> SecondOrderSet:
    if not b.is_crisp:
        raise DomainError("only crisp sets can be lifted to a power-set singleton")
    _check_size(b.universe, limit)
    grades = np.zeros(1 << len(b.universe))
    grades[subset_mask(b)] = 1.0
    return SecondOrderSet(b.universe, grades)


def _check_pair(s1: SecondOrderSet, s2: SecondOrderSet) -> None:
    if s1.universe != s2.universe:
        raise DomainError(f"universe mismatch: {s1.universe.name!r} vs {s2.universe.name!r}")


def so_intersect(s1: SecondOrderSet, s2: SecondOrderSet) -> SecondOrderSet:
    _check_pair(s1, s2)
    return SecondOrderSet(s1.universe, np.minimum(s1.grades, s2.grades))


def so_union(s1: SecondOrderSet, s2: SecondOrderSet) -> SecondOrderSet:
    _check_pair(s1, s2)
    return SecondOrderSet(s1.universe, np.maximum(s1.grades, s2.grades))


def reduce(s: SecondOrderSet) -> FuzzySet:
    """Collapse to a first-order set: x gets max of s(G) over subsets G containing x.

    On a singleton ``{alpha/B}`` with crisp B this gives ``alpha AND B(x)``.
    """
    m = _membership(len(s.universe))
    grades = np.where(m, s.grades[:, None], 0.0).max(axis=0)
    return FuzzySet(s.universe, tuple(grades.tolist()))


def default_combine_oracle(a: FuzzySet, b: FuzzySet, limit: int = ORACLE_MAX_ELEMENTS) -> FuzzySet:
    """Combine "typically V is a" with "V is b" through the power set.

    Computes ``(a* ∩ b) ∪ (a ∩ b)`` with the first term evaluated as a
    second-order set and then reduced.
    """
    blocked = reduce(so_intersect(star(a, limit), lift(b, limit)))
    return union(blocked, intersect(a, b))
