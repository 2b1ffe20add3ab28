"""Probe rewrite systems for finite models across the bundled algebras.

    python scripts/probe_superconsistency.py --m 1 2 --budget 200000
"""

import argparse
import time
from dataclasses import dataclass, field

from modulo import pha
from modulo.scenarios import sys_p_imp_p, sys_p_imp_q, sys_top_and_top, sys_translated_top_and_top
from modulo.semantics import superconsistency_probe


@dataclass
class ProbeConfig:
    ms: list[int] = field(default_factory=lambda: [1, 2])
    budget: int = 10**6


SYSTEMS = {
    "P -> top /\\ top": sys_top_and_top,
    "P -> (top => P => P) /\\ (top => P => P)": sys_translated_top_and_top,
    "P -> P => P": sys_p_imp_p,
    "P -> P => Q": sys_p_imp_q,
}


def main(cfg: ProbeConfig):
    algebras = list(pha.bundled().values())
    for label, make in SYSTEMS.items():
        t0 = time.perf_counter()
        rep = superconsistency_probe(make(), algebras, cfg.ms, cfg.budget)
        print(f"== {label}  ({time.perf_counter() - t0:.2f}s)")
        print(rep)
        print()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--budget", type=int, default=10**6)
    args = ap.parse_args()
    main(ProbeConfig(args.m, args.budget))
