"""Fuzzy relations over joint spaces of named variables.

A :class:`Relation` is a dense ``numpy`` array with one axis per variable of
its :class:`JointSpace`.  Variables in a joint space are always kept in
lexicographic order of their names, which fixes a canonical cell layout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import DomainError, ResourceError
from .fuzzy import FuzzySet, Universe

DEFAULT_MAX_CELLS = 1_000_000


@dataclass(frozen=True)
class Variable:
    name: str
    universe: Universe
    time: Optional[int] = None

    def __post_init__(self):
        if self.time is not None and not isinstance(self.time, int):
            raise DomainError(f"time index of {self.name!r} must be an integer")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class JointSpace:
    variables: tuple[Variable, ...]
    max_cells: int = DEFAULT_MAX_CELLS

    def __post_init__(self):
        variables = tuple(sorted(self.variables, key=lambda v: v.name))
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variables in joint space: {names}")
        object.__setattr__(self, "variables", variables)
        if self.cells > self.max_cells:
            raise ResourceError(
                f"joint space over {names} has {self.cells} cells, limit is {self.max_cells}"
            )

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(v.universe) for v in self.variables)

    @property
    def cells(self) -> int:
        return math.prod(self.shape)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __contains__(self, v: Variable) -> bool:
        return v in self.variables

    def axis(self, v: Variable) -> int:
        try:
            return self.variables.index(v)
        except ValueError:
            raise DomainError(f"variable {v.name!r} not in joint space {list(self.names)}") from None

    def union(self, other: JointSpace) -> JointSpace:
        merged = dict.fromkeys(self.variables)
        merged.update(dict.fromkeys(other.variables))
        return JointSpace(tuple(merged), max(self.max_cells, other.max_cells))

    def iter_cells(self) -> Iterator[tuple[str, ...]]:
        """Yield every cell as a tuple of labels, in array (C) order."""
        for idx in np.ndindex(*self.shape):
            yield tuple(v.universe.elements[i] for v, i in zip(self.variables, idx))


@dataclass(frozen=True, eq=False)
class Relation:
    space: JointSpace
    grades: np.ndarray

    def __post_init__(self):
        arr = np.array(self.grades, dtype=float)
        if arr.shape != self.space.shape:
            raise DomainError(f"grade array shape {arr.shape} != space shape {self.space.shape}")
        if arr.size and (np.isnan(arr).any() or arr.min() < 0.0 or arr.max() > 1.0):
            raise DomainError("relation grades must lie in [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "grades", arr)

    @classmethod
    def full(cls, space: JointSpace) -> Relation:
        return cls(space, np.ones(space.shape))

    @classmethod
    def zeros(cls, space: JointSpace) -> Relation:
        return cls(space, np.zeros(space.shape))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.space.variables == other.space.variables and np.array_equal(
            self.grades, other.grades
        )

    __hash__ = None

    def isclose(self, other: Relation, tol: float = 1e-9) -> bool:
        return self.space.variables == other.space.variables and bool(
            np.all(np.abs(self.grades - other.grades) <= tol)
        )

    def height(self) -> float:
        return float(self.grades.max()) if self.grades.size else 0.0

    def is_zero(self) -> bool:
        return not bool(self.grades.any())

    def nonzero_cells(self) -> int:
        return int(np.count_nonzero(self.grades))

    def to_fuzzy(self) -> FuzzySet:
        """View a one-variable relation as a fuzzy set on that variable's universe."""
        if len(self.space.variables) != 1:
            raise DomainError("only single-variable relations convert to fuzzy sets")
        return FuzzySet(self.space.variables[0].universe, tuple(self.grades.tolist()))

    def __and__(self, other: Relation) -> Relation:
        return conjoin(self, other)

    def __or__(self, other: Relation) -> Relation:
        return disjoin(self, other)

    def __invert__(self) -> Relation:
        return complement_rel(self)


def cylindrical_extend(s: FuzzySet, v: Variable, target: JointSpace) -> Relation:
    if s.universe != v.universe:
        raise DomainError(f"set universe {s.universe.name!r} does not match variable {v.name!r}")
    axis = target.axis(v)
    shape = [1] * len(target.variables)
    shape[axis] = len(s.grades)
    arr = np.broadcast_to(np.asarray(s.grades).reshape(shape), target.shape)
    return Relation(target, arr)


def extend(r: Relation, target: JointSpace) -> Relation:
    """Cylindrically extend a relation to a superspace."""
    if r.space.variables == target.variables:
        return r
    missing = [v.name for v in r.space.variables if v not in target]
    if missing:
        raise DomainError(f"variables {missing} not in target space")
    perm = [r.space.axis(v) for v in target.variables if v in r.space]
    arr = r.grades.transpose(perm)
    arr = arr.reshape([len(v.universe) if v in r.space else 1 for v in target.variables])
    return Relation(target, np.broadcast_to(arr, target.shape))


def _align(r1: Relation, r2: Relation) -> tuple[Relation, Relation]:
    if r1.space.variables == r2.space.variables:
        return r1, r2
    space = r1.space.union(r2.space)
    return extend(r1, space), extend(r2, space)


def conjoin(r1: Relation, r2: Relation) -> Relation:
    a, b = _align(r1, r2)
    return Relation(a.space, np.minimum(a.grades, b.grades))


def disjoin(r1: Relation, r2: Relation) -> Relation:
    a, b = _align(r1, r2)
    return Relation(a.space, np.maximum(a.grades, b.grades))


def complement_rel(r: Relation) -> Relation:
    return Relation(r.space, 1.0 - r.grades)


def conjoin_all(relations: Iterable[Relation], space: JointSpace) -> Relation:
    out = Relation.full(space)
    for r in relations:
        out = conjoin(out, r)
    return out


def project(r: Relation, keep: Iterable[Variable]) -> Relation:
    """Max-eliminate every variable not in ``keep``."""
    keep = set(keep)
    if not keep:
        raise DomainError("projection needs at least one variable; use Relation.height()")
    for v in keep:
        r.space.axis(v)
    drop = tuple(i for i, v in enumerate(r.space.variables) if v not in keep)
    arr = r.grades.max(axis=drop) if drop else r.grades
    return Relation(JointSpace(tuple(v for v in r.space.variables if v in keep), r.space.max_cells), arr)


def marginal(r: Relation, v: Variable) -> FuzzySet:
    return project(r, [v]).to_fuzzy()


def poss_against(r: Relation, s: FuzzySet, v: Variable) -> float:
    """Possibility of ``v is s`` given joint knowledge ``r``."""
    ext = cylindrical_extend(s, v, r.space)
    return float(np.minimum(r.grades, ext.grades).max())
