"""Compare intersection divisors with a point-by-point scan of P^2(F_p).

Small p only: the scan visits all p^2 + p + 1 points.
"""

import argparse
import random

from planelinsys.fields import PrimeField
from planelinsys.forms import TernaryForm, intersection_multiplicity, monomials
from planelinsys.geometry import ProjPoint, intersection_divisor, is_smooth


def projective_points(F):
    p = F.order
    for x in range(p):
        for y in range(p):
            yield (x, y, 1)
    for x in range(p):
        yield (x, 1, 0)
    yield (1, 0, 0)


def compare(G, C, seed=0):
    F = C.field
    D = intersection_divisor(G, C, seed=seed)
    rational = {}
    for P, mu in D.entries:
        if P.degree == 1:
            raw = P.coords if P.field == F else [c[0] for c in P.coords]
            rational[ProjPoint.from_raw(F, raw)] = mu
    scan = [ProjPoint.from_raw(F, v) for v in projective_points(F)
            if F.is_zero(G.evaluate_raw(F, v)) and F.is_zero(C.evaluate_raw(F, v))]
    agree = set(scan) == set(rational) and all(
        intersection_multiplicity(G, C, P) == rational[P] for P in scan)
    return D.degree == G.degree * C.degree, agree, len(scan)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=31)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    F = PrimeField(args.p)
    rng = random.Random(args.seed)
    done = 0
    while done < args.pairs:
        dC, dG = rng.randint(1, args.max_degree), rng.randint(1, args.max_degree)
        C = TernaryForm.from_vector(F, dC, [F.random(rng) for _ in monomials(dC)])
        G = TernaryForm.from_vector(F, dG, [F.random(rng) for _ in monomials(dG)])
        if C.is_zero() or G.is_zero() or not is_smooth(C):
            continue
        bezout, agree, k = compare(G, C, seed=done)
        print(f"deg G={dG} deg C={dC}: Bezout {'ok' if bezout else 'FAIL'}, "
              f"{k} rational common points, scan {'agrees' if agree else 'DISAGREES'}")
        done += 1


if __name__ == "__main__":
    main()
