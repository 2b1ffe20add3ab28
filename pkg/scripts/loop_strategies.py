"""Compare reduction strategies on the two looping proof terms.

Full development revisits the starting term; leftmost-outermost on the
pair example keeps growing instead, so term sizes are printed per step.
"""

import argparse

from modulo.natded import (
    FULL, LEFTMOST_OUTERMOST, Cycle, build_loop_example, build_self_application, canonical,
    print_term, reduce, reduce_step,
)


def size(t) -> int:
    return len(repr(canonical(t)))


def trace(t, strategy: str, steps: int):
    for i in range(steps + 1):
        yield i, t
        t = reduce_step(t, strategy)
        if t is None:
            return


def main(steps: int):
    loop = build_loop_example().loop
    omega, _, _ = build_self_application()
    for label, t in (("t1 t2", loop), ("omega", omega)):
        for strategy in (FULL, LEFTMOST_OUTERMOST):
            r = reduce(t, 200, strategy)
            verdict = f"cycle of period {r.period}" if isinstance(r, Cycle) else type(r).__name__
            print(f"{label:<6} {strategy:<5} {verdict}")
    print("\nleftmost-outermost on t1 t2, term size per step:")
    for i, t in trace(loop, LEFTMOST_OUTERMOST, steps):
        print(f"  {i:>3}  {size(t):>6}  {print_term(t, unicode=True)[:90]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=12)
    main(ap.parse_args().steps)
