"""Forward and backward proof translation over random classical proofs,
reporting size growth and failures."""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from statistics import mean

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import random_corpus  # noqa: E402

from modulo.atrans import atrans_system  # noqa: E402
from modulo.scenarios import S  # noqa: E402
from modulo.sequent import check_classical, check_intuitionistic, is_cut_free  # noqa: E402
from modulo.translate import FrozenAtom, forward_representation, translate_clas_to_int, translate_int_to_clas  # noqa: E402


@dataclass
class RoundTripConfig:
    proofs: int = 200
    steps: int = 8
    seed: int = 0


def main(cfg: RoundTripConfig) -> int:
    t0 = time.perf_counter()
    sizes, failures = [], []
    for name, R, p in random_corpus(cfg.proofs, cfg.seed, cfg.steps):
        ip = translate_clas_to_int(p, S, R)
        cp = translate_int_to_clas(ip, forward_representation(p.concl, S), S, R)
        ok = (check_intuitionistic(ip, atrans_system(R, S)).ok and not FrozenAtom(S).violations(ip)
              and is_cut_free(cp) and check_classical(cp, R).ok and cp.concl.same(p.concl))
        sizes.append((p.size(), ip.size(), cp.size()))
        if not ok:
            failures.append(name)
    dt = time.perf_counter() - t0
    print(f"{cfg.proofs} proofs in {dt:.2f}s, {len(failures)} failures")
    for label, i in (("classical", 0), ("intuitionistic", 1), ("back", 2)):
        print(f"  mean size {label:<15} {mean(s[i] for s in sizes):8.1f}  max {max(s[i] for s in sizes)}")
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--proofs", type=int, default=200)
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    sys.exit(main(RoundTripConfig(a.proofs, a.steps, a.seed)))
