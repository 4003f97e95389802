"""Default reasoning with possibility-qualified rules over finite fuzzy sets."""
from .errors import (
    DomainError,
    OracleMismatch,
    ParseError,
    ReasoningError,
    ResourceError,
    ScheduleError,
)
from .fuzzy import FuzzySet, Universe, certainty, complement, height, intersect, possibility, union
from .kb import DefaultRule, Fact, KBOptions, KnowledgeBase, Literal, Query
from .relational import JointSpace, Relation, Variable
from .dsl import builtin, format_kb, load_kb, parse_kb

__version__ = "0.1.0"
