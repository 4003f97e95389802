"""Run the worked examples and print schedule, trace and verdicts for each."""
import argparse

from possreason.dsl import builtin
from possreason.engine import infer, query
from possreason.report import layer_lines, schedule_lines, verdict_lines

EXAMPLES = ("yale", "nixon", "nixon-quaker-only", "nixon-republican-only", "nixon-both")


def show(name: str, trace: bool) -> None:
    kb = builtin(name)
    state = infer(kb)
    print(f"== {name}")
    for line in schedule_lines(state.schedule):
        print(line)
    if trace:
        for rec in state.trace:
            for line in layer_lines(rec):
                print(line)
    for q in kb.queries:
        for line in verdict_lines(query(state, q.variable, q.set, kb.options.threshold)):
            print(line)
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(EXAMPLES))
    ap.add_argument("--trace", action="store_true")
    args = ap.parse_args()
    for name in args.names:
        show(name, args.trace)


if __name__ == "__main__":
    main()
