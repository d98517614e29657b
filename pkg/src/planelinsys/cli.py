"""Command line interface. Machine output is JSON on stdout; progress goes to stderr.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from . import carnot as ct
from . import constructor as cs
from . import linsys as ls
from .errors import DomainError
from .fields import QQ
from .forms import TernaryForm
from .geometry import DivisorOnCurve, DivisorOnLine, Line

log = logging.getLogger("planelinsys")


def _dump(obj, out=None):
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _seed(args):
    if getattr(args, "seed", None) is None:
        args.seed = random.SystemRandom().getrandbits(63)
    return args.seed


# --- formula commands ---------------------------------------------------------------

def cmd_bounds(args):
    n = ls.n_lower_bound(args.d, args.r)
    return n if args.bare else {"n_lower": n}


def cmd_hartshorne(args):
    r = ls.hartshorne_max_dim(args.d, args.n)
    return r if args.bare else {"r_max": r}


def cmd_decompose(args):
    dec = ls.decompose_r(args.r)
    return {"r": dec.r, "x": dec.x, "beta": dec.beta}


def cmd_table(args):
    d = args.d
    rows = []
    for x in range(1, d - 2):
        for beta in range(0, x + 1):
            r = (x + 1) * (x + 2) // 2 - beta
            status = "constructible" if x <= d - 6 else "no base-point-free non-trivial system"
            rows.append({"r": r, "x": x, "beta": beta, "n_lower": ls.n_lower_bound(d, r),
                         "status": status, "certifiable": 4 <= x + 3 <= d - 6})
    rows.sort(key=lambda t: t["r"])
    return {"d": d, "rows": rows}


# --- carnot -------------------------------------------------------------------------

def _instance(args):
    return ct.CarnotInstance.from_json(_load(args.instance))


def cmd_carnot_check(args):
    inst = _instance(args)
    v = ct.carnot_value(inst)
    F = inst.field
    return {"case": inst.case, "m": inst.m, "value": F.format(v.value),
            "target": F.format(ct.target_value(inst).value), "holds": ct.check_carnot(inst)}


def cmd_carnot_solve_last(args):
    obj = _load(args.instance)
    lines = [Line.from_json(L) for L in obj["lines"]]
    divs = [DivisorOnLine.from_json(D) for D in obj["divisors"]]
    P = ct.solve_last_coordinate(lines, divs, args.index, obj.get("case", ct.TRIANGLE))
    divs[args.index] = DivisorOnLine(lines[args.index], divs[args.index].entries + [(P, 1)])
    inst = ct.CarnotInstance(lines, divs, obj.get("case", ct.TRIANGLE))
    return {"point": P.to_json(), "instance": inst.to_json(), "holds": ct.check_carnot(inst)}


def cmd_carnot_construct(args):
    inst = _instance(args)
    G = ct.construct_curve(inst, seed=_seed(args))
    return {"seed": args.seed, "curve": G.to_json()}


def cmd_carnot_smooth(args):
    inst = _instance(args)
    G = ct.smooth_representative(inst, attempts=args.attempts, seed=_seed(args))
    return {"seed": args.seed, "curve": G.to_json()}


def cmd_carnot_random(args):
    F = _field(args)
    inst = ct.random_instance(F, args.m, random.Random(_seed(args)), case=args.case)
    return {"seed": args.seed, "instance": inst.to_json()}


def _field(args):
    from .fields import PrimeField
    return QQ if args.p == 0 else PrimeField(args.p)


# --- linsys -------------------------------------------------------------------------

def cmd_linsys_analyze(args):
    obj = _load(args.input)
    C = TernaryForm.from_json(obj["curve"])
    Z = DivisorOnCurve.from_json(obj.get("Z", {"entries": []}), C)
    pres = ls.SystemPresentation(C, int(obj["m"]), Z)
    rep = ls.analyze(pres, seed=_seed(args), samples=args.samples)
    out = rep.to_json()
    out["seed"] = args.seed
    return out


# --- construction -------------------------------------------------------------------

def cmd_construct(args):
    req = cs.ConstructionRequest(args.d, args.x, args.beta, args.p, _seed(args),
                                 smooth_attempts=args.attempts)
    t = time.time()
    log.info("constructing d=%d x=%d beta=%d over F_%d (seed %d)", args.d, args.x, args.beta, args.p, args.seed)
    cert = cs.construct(req)
    log.info("certified r=%d n=%d in %.1fs", cert.r, cert.n, time.time() - t)
    return cert.to_json()


def cmd_verify(args):
    obj = _load(args.certificate)
    cert = cs.verify(obj)
    return {"verified": True, "r": cert.r, "n": cert.n, "triviality": cert.triviality,
            "seed": obj.get("seed"), "checks": cert.checks}


def cmd_selftest(args):
    from .fields import PrimeField
    t = time.time()
    rng = random.Random(0)
    count = 0
    for F in (QQ, PrimeField(1009)):
        tri = [Line.from_raw(F, v) for v in ((F.one, F.zero, F.zero), (F.zero, F.one, F.zero),
                                              (F.zero, F.zero, F.one))]
        conc = [Line(F, (0, 1, -1)), tri[1], tri[2]]
        for _ in range(100):
            coeffs = [F.convert(rng.randint(1, 1000)) for _ in range(3)]
            M = Line.from_raw(F, coeffs)
            for lines, case in ((tri, ct.TRIANGLE), (conc, ct.CONCURRENT)):
                try:
                    divs = [DivisorOnLine(L, [(L.intersection(M), 1)]) for L in lines]
                    inst = ct.CarnotInstance(lines, divs, case)
                    ok = ct.check_carnot(inst)
                except DomainError:
                    continue
                if not ok:
                    raise AssertionError(f"Carnot identity fails for {M}")
                count += 1
    for r in range(2, 2001):
        dec = ls.decompose_r(r)
        assert (dec.x + 1) * (dec.x + 2) // 2 - dec.beta == r and 0 <= dec.beta <= dec.x
    return {"menelaus_checked": count, "decompose_checked": 1999, "ok": True,
            "seconds": round(time.time() - t, 3)}


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="accepted for compatibility; work runs in a single thread")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="planelinsys", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, help_):
        q = parent.add_parser(name, help=help_, parents=[common])
        q.set_defaults(fn=fn)
        return q

    def formula_cmds(parent, bare):
        q = add(parent, "bounds", cmd_bounds, "n(r) lower bound")
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--r", type=int, required=True)
        q.set_defaults(bare=bare)
        q = add(parent, "hartshorne", cmd_hartshorne, "maximal dimension of a g^r_n")
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.set_defaults(bare=bare)
        q = add(parent, "table", cmd_table, "n(r) for every admissible r")
        q.add_argument("--d", type=int, required=True)

    # top-level forms wrap the number in an object, the linsys forms print it bare
    formula_cmds(sub, False)
    q = add(sub, "decompose", cmd_decompose, "r = (x+1)(x+2)/2 - beta")
    q.add_argument("--r", type=int, required=True)

    c = sub.add_parser("carnot", help="Carnot criteria").add_subparsers(dest="carnot_command", required=True)
    q = add(c, "check", cmd_carnot_check, "evaluate the criterion")
    q.add_argument("--instance", required=True)
    q = add(c, "solve-last", cmd_carnot_solve_last, "complete an instance with one missing point")
    q.add_argument("--instance", required=True)
    q.add_argument("--index", type=int, default=2, help="0-based line index of the missing point")
    q = add(c, "construct", cmd_carnot_construct, "curve realizing an instance")
    q.add_argument("--instance", required=True)
    q.add_argument("--seed", type=int)
    q = add(c, "smooth", cmd_carnot_smooth, "smooth curve realizing an instance")
    q.add_argument("--instance", required=True)
    q.add_argument("--attempts", type=int, default=32)
    q.add_argument("--seed", type=int)
    q = add(c, "random", cmd_carnot_random, "random instance satisfying the criterion")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--case", choices=[ct.TRIANGLE, ct.CONCURRENT], default=ct.TRIANGLE)
    q.add_argument("--p", type=int, default=1009, help="prime; 0 for the rationals")
    q.add_argument("--seed", type=int)

    lsub = sub.add_parser("linsys", help="linear systems").add_subparsers(dest="linsys_command", required=True)
    q = add(lsub, "analyze", cmd_linsys_analyze, "analyze |m g2_d - Z|")
    q.add_argument("--input", required=True)
    q.add_argument("--samples", type=int, default=8)
    q.add_argument("--seed", type=int)
    formula_cmds(lsub, True)

    q = add(sub, "construct", cmd_construct, "build and certify a sharp example")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--beta", type=int, default=0)
    q.add_argument("--p", type=int, default=1009)
    q.add_argument("--seed", type=int)
    q.add_argument("--attempts", type=int, default=32)
    q = add(sub, "verify", cmd_verify, "re-run certification of a certificate")
    q.add_argument("certificate")
    add(sub, "selftest", cmd_selftest, "quick install sanity check")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        result = args.fn(args)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        _dump({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return 2
    _dump(result, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
