"""Forward/converse round trip of the Carnot criteria on random admissible data.

For each instance: check the criterion, build a curve from the linear system, re-intersect it
with the three lines and compare; then move one point and confirm the construction is refused.
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from planelinsys import carnot as ct
from planelinsys.errors import CarnotViolated
from planelinsys.fields import PrimeField


@dataclass
class RoundTripConfig:
    p: int = 1009
    degrees: tuple = (4, 5, 6)
    count: int = 60
    seed: int = 0


def run(cfg: RoundTripConfig):
    F = PrimeField(cfg.p)
    rng = random.Random(cfg.seed)
    tally = Counter()
    for k in range(cfg.count):
        m = cfg.degrees[k % len(cfg.degrees)]
        case = (ct.TRIANGLE, ct.CONCURRENT)[k % 2]
        inst = ct.random_instance(F, m, rng, case)
        G = ct.construct_curve(inst, seed=k)
        tally[case, "ok"] += ct.instance_from_curve(G, inst.lines, case).divisors == inst.divisors
        # move the first point of the first line
        L = inst.lines[0]
        D = inst.divisors[0].entries
        while True:
            P = L.point_at(F.random(rng), F.one)
            if P not in {Q for Q, _ in D} and not any(M.contains(P) for M in inst.lines[1:]):
                break
        bad = ct.CarnotInstance(inst.lines, [type(inst.divisors[0])(L, [(P, 1)] + D[1:])]
                                + list(inst.divisors[1:]), case)
        try:
            ct.construct_curve(bad)
        except CarnotViolated:
            tally[case, "refused"] += 1
        tally[case, "total"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=1009)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t = time.time()
    tally = run(RoundTripConfig(p=args.p, count=args.count, seed=args.seed))
    for case in (ct.TRIANGLE, ct.CONCURRENT):
        print(f"{case:11s} round trip {tally[case, 'ok']}/{tally[case, 'total']}, "
              f"perturbed refused {tally[case, 'refused']}/{tally[case, 'total']}")
    print(f"{time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
