"""Does re-running the rule layers change the knowledge state?

Compares single-pass inference with two passes on the built-in examples and
on random small knowledge bases.  Purely exploratory: the engine's semantics
stay single-pass.
"""
import argparse

import numpy as np

from possreason.dsl import BUILTINS, builtin
from possreason.engine import infer
from possreason.errors import ReasoningError
from possreason.fuzzy import FuzzySet, Universe
from possreason.kb import DefaultRule, Fact, KnowledgeBase, Literal
from possreason.relational import Variable

BOOL = Universe("Bool", ("t", "f"))


def random_kb(rng: np.random.Generator) -> KnowledgeBase:
    n = int(rng.integers(2, 5))
    variables = tuple(Variable(f"v{i}", BOOL, int(rng.integers(0, 3)) if rng.random() < 0.5 else None)
                      for i in range(n))

    def lit(v):
        grades = tuple(rng.choice([0.0, 0.3, 1.0], 2))
        if max(grades) == 0.0:
            grades = (1.0, grades[1])
        return Literal(v, FuzzySet(BOOL, grades))

    facts = tuple(Fact(f"F{i}", lit(variables[i])) for i in range(int(rng.integers(0, n))))
    rules = []
    for i in range(int(rng.integers(1, 4))):
        cons = variables[int(rng.integers(n))]
        others = [v for v in variables if v != cons]
        k = int(rng.integers(0, min(2, len(others)) + 1))
        ant = tuple(lit(others[j]) for j in sorted(rng.choice(len(others), k, replace=False)))
        rules.append(DefaultRule(f"D{i}", ant, lit(cons)))
    return KnowledgeBase((BOOL,), variables, facts, tuple(rules))


def differs(kb: KnowledgeBase) -> float:
    one, two = infer(kb).h.grades, infer(kb, passes=2).h.grades
    return float(np.abs(one - two).max())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for name in BUILTINS:
        print(f"{name}: max |h1 - h2| = {differs(builtin(name)):.6f}")

    rng = np.random.default_rng(args.seed)
    changed = skipped = 0
    worst = 0.0
    for _ in range(args.samples):
        try:
            d = differs(random_kb(rng))
        except ReasoningError:  # cyclic schedules and the like
            skipped += 1
            continue
        changed += d > 1e-9
        worst = max(worst, d)
    ran = args.samples - skipped
    print(f"random: {changed}/{ran} changed by a second pass (worst {worst:.6f}, {skipped} skipped)")


if __name__ == "__main__":
    main()
