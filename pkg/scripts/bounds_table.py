"""Print n(r), the Hartshorne bound at n(r) and the table status for a range of degrees."""

import argparse

from planelinsys import linsys as ls


def rows(d):
    for x in range(1, d - 2):
        for beta in range(x, -1, -1):
            r = (x + 1) * (x + 2) // 2 - beta
            n = ls.n_lower_bound(d, r)
            yield r, x, beta, n, ls.hartshorne_max_dim(d, n), x <= d - 6


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmin", type=int, default=7)
    ap.add_argument("--dmax", type=int, default=11)
    args = ap.parse_args()
    for d in range(args.dmin, args.dmax + 1):
        print(f"d = {d}, genus {ls.genus(d)}")
        print(f"  {'r':>3} {'x':>3} {'beta':>4} {'n(r)':>5} {'r_max(n)':>8}  status")
        for r, x, beta, n, rmax, ok in rows(d):
            print(f"  {r:>3} {x:>3} {beta:>4} {n:>5} {rmax:>8}  {'constructible' if ok else 'no bpf non-trivial'}")


if __name__ == "__main__":
    main()
