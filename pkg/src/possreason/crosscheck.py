"""Re-derive unconditional-default steps of an inference run through the power set."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ResourceError
from .engine import KnowledgeState, apply_default
from .fuzzy import FuzzySet
from .kb import KnowledgeBase
from .oracle import ORACLE_MAX_ELEMENTS, default_combine_oracle
from .relational import marginal


@dataclass(frozen=True)
class StepCheck:
    layer: int
    rule_id: str
    status: str  # "ok", "mismatch" or "skipped"
    detail: str
    engine: FuzzySet | None = None
    oracle: FuzzySet | None = None


def cross_check(
    kb: KnowledgeBase, state: KnowledgeState, tol: float = 1e-9, limit: int = ORACLE_MAX_ELEMENTS
) -> list[StepCheck]:
    """Compare every single-rule unconditional layer against the oracle.

    Projecting the engine's result onto the rule's variable must equal both
    the power-set combination and the closed-form default combination of the
    projected prior knowledge.  Applicable only when that prior is crisp.
    """
    checks = []
    for prev, rec in zip(state.trace, state.trace[1:]):
        rules = [kb.rule(rid) for rid in rec.rule_ids]
        for rule in rules:
            if not rule.unconditional:
                continue
            if len(rules) > 1:
                checks.append(StepCheck(rec.index, rule.id, "skipped", "shares its layer with other rules"))
                continue
            v = rule.consequent.variable
            before = marginal(prev.h, v)
            after = marginal(rec.h, v)
            try:
                expected = default_combine_oracle(rule.consequent.set, before, limit)
            except (DomainError, ResourceError) as e:
                checks.append(StepCheck(rec.index, rule.id, "skipped", str(e)))
                continue
            shortcut = apply_default(before, rule.consequent.set)
            if expected.isclose(after, tol) and shortcut.isclose(after, tol):
                checks.append(StepCheck(rec.index, rule.id, "ok", f"{v.name} agrees", after, expected))
            else:
                checks.append(StepCheck(
                    rec.index, rule.id, "mismatch",
                    f"{v.name}: engine {after}, oracle {expected}, closed form {shortcut}",
                    after, expected,
                ))
    return checks
