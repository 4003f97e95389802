"""Text and machine-readable (JSON) rendering of inference results."""
from __future__ import annotations

import json
from typing import Optional

from .crosscheck import StepCheck
from .engine import ENTAILED, KnowledgeState, LayerRecord, Verdict
from .fuzzy import FuzzySet, format_grade, format_set
from .relational import marginal
from .scheduler import PrioritySchedule


def grade_value(g: float):
    """JSON number carrying exactly what :func:`format_grade` prints."""
    text = format_grade(g)
    return int(text) if text in ("0", "1") else float(text)


def set_value(s: FuzzySet) -> dict:
    return {label: grade_value(g) for label, g in zip(s.universe.elements, s.grades)}


def headline(v: Verdict) -> str:
    primary = v.primary
    shown = next((r for r in v.results if r.classification == ENTAILED), primary)
    return (
        f"{v.variable.name}: {v.classification} "
        f"(poss({primary.label})={format_grade(primary.poss)}, "
        f"cert({shown.label})={format_grade(shown.cert)})"
    )


def verdict_lines(v: Verdict) -> list[str]:
    lines = [headline(v), f"  projected: {format_set(v.projected)}"]
    for r in v.results:
        lines.append(
            f"  {r.label}: poss={format_grade(r.poss)} cert={format_grade(r.cert)} {r.classification}"
        )
    return lines


def _h_line(state_h, indent: str = "  ") -> str:
    parts = [f"{v.name}={format_set(marginal(state_h, v))}" for v in state_h.space.variables]
    return f"{indent}h: " + " ".join(parts)


def layer_lines(rec: LayerRecord) -> list[str]:
    if rec.index == 0:
        lines = [f"layer 0: facts {{{', '.join(rec.rule_ids)}}}"]
    else:
        lines = [f"layer {rec.index}: introduce {{{', '.join(rec.rule_ids)}}}"]
        for n, e in enumerate(rec.effected, start=1):
            lines.append(f"  disjunct {n}: {e.disjunct.describe()}")
            for c in e.checks:
                lines.append(f"    {c.term}: poss={format_grade(c.poss)}")
            lines.append(f"    beta={format_grade(e.beta)}")
        lines.append(f"  pruned empty disjuncts: {rec.pruned}")
    if rec.h.space.variables:
        lines.append(_h_line(rec.h))
    return lines


def schedule_lines(schedule: PrioritySchedule) -> list[str]:
    lines = ["schedule:"]
    lines.extend("  " + line for line in schedule.describe())
    lines.extend(f"  warning: {w}" for w in schedule.warnings)
    return lines


def render_text(
    state: KnowledgeState,
    verdicts: list[Verdict],
    *,
    trace: bool = False,
    checks: Optional[list[StepCheck]] = None,
) -> str:
    lines = []
    if trace:
        if state.schedule is not None:
            lines.extend(schedule_lines(state.schedule))
        lines.append("trace:")
        for rec in state.trace:
            lines.extend(layer_lines(rec))
        lines.append("")
    if state.inconsistent:
        lines.append(f"warning: knowledge is inconsistent (height {format_grade(state.h.height())})")
    for v in verdicts:
        lines.extend(verdict_lines(v))
    if checks is not None:
        lines.append("oracle check:")
        if not checks:
            lines.append("  no applicable steps")
        for c in checks:
            lines.append(f"  layer {c.layer} {c.rule_id}: {c.status} ({c.detail})")
    return "\n".join(lines) + "\n"


def render_machine(
    source: str,
    state: KnowledgeState,
    verdicts: list[Verdict],
    *,
    trace: bool = False,
    checks: Optional[list[StepCheck]] = None,
) -> str:
    """JSON document; keys are documented in the README and are stable."""
    doc = {
        "input": source,
        "kb_height": grade_value(state.h.height()),
        "inconsistent": state.inconsistent,
        "schedule": [list(layer) for layer in state.schedule.layers] if state.schedule else [],
        "queries": [
            {
                "variable": v.variable.name,
                "classification": v.classification,
                "projected": set_value(v.projected),
                "results": [
                    {
                        "set": set_value(r.set),
                        "label": r.label,
                        "poss": grade_value(r.poss),
                        "cert": grade_value(r.cert),
                        "classification": r.classification,
                    }
                    for r in v.results
                ],
            }
            for v in verdicts
        ],
    }
    if trace:
        doc["trace"] = [
            {
                "layer": rec.index,
                "items": list(rec.rule_ids),
                "disjuncts": [
                    {
                        "description": e.disjunct.describe(),
                        "blocked": [
                            {"term": str(c.term), "poss": grade_value(c.poss)} for c in e.checks
                        ],
                        "beta": grade_value(e.beta),
                    }
                    for e in rec.effected
                ],
                "pruned": rec.pruned,
                "h": {v.name: set_value(marginal(rec.h, v)) for v in rec.h.space.variables},
            }
            for rec in state.trace
        ]
    if checks is not None:
        doc["oracle_checks"] = [
            {"layer": c.layer, "rule": c.rule_id, "status": c.status, "detail": c.detail}
            for c in checks
        ]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
