"""Helpers for building small smooth curves and rational points in tests."""

import random

from planelinsys.forms import TernaryForm, monomials
from planelinsys.geometry import DivisorOnCurve, ProjPoint, is_smooth
from planelinsys.upoly import roots


def random_smooth_curve(F, d, rng: random.Random, tries=50):
    for _ in range(tries):
        C = TernaryForm.from_vector(F, d, [F.random(rng) for _ in monomials(d)])
        if C.coefficient((0, d, 0)) and is_smooth(C):
            return C
    raise RuntimeError("no smooth curve found")


def rational_points(C, count, rng: random.Random, avoid=()):
    F = C.field
    out = []
    for _ in range(50 * count + 50):
        if len(out) == count:
            return out
        x0 = F.random(rng)
        f = C.affine_y_poly(F, x0)
        if f.degree < 1:
            continue
        for y0, _ in roots(f):
            P = ProjPoint.from_raw(F, (x0, y0, F.one))
            if P not in out and P not in avoid:
                out.append(P)
                break
    raise RuntimeError("not enough rational points")


def divisor(C, points, mult=1):
    return DivisorOnCurve(C, [(P, mult) for P in points])
