"""Build, certify and re-verify sharp examples; one certificate file per case.

    python3 scripts/run_construct.py --cases 10,1,0 10,1,1 11,2,0 --out certs/
"""

import argparse
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from planelinsys import constructor as cs


@dataclass
class RunConfig:
    cases: list = field(default_factory=lambda: [(10, 1, 0), (10, 1, 1), (11, 2, 0)])
    p: int = 1009
    seed: int = 42
    out: Path = Path("certs")


def run(cfg: RunConfig):
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for d, x, beta in cfg.cases:
        t = time.time()
        cert = cs.construct(cs.ConstructionRequest(d, x, beta, cfg.p, seed=cfg.seed))
        obj = cert.to_json()
        path = cfg.out / f"cert_d{d}_x{x}_b{beta}.json"
        path.write_text(json.dumps(obj, sort_keys=True) + "\n")
        cs.verify(json.loads(path.read_text()))
        rows.append({"d": d, "x": x, "beta": beta, "r": cert.r, "n": cert.n,
                     "triviality": cert.triviality, "seconds": round(time.time() - t, 2), "file": str(path)})
        logging.info("%s", rows[-1])
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="*", default=None, help="d,x,beta triples")
    ap.add_argument("--p", type=int, default=1009)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out", type=Path, default=Path("certs"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = RunConfig(p=args.p, seed=args.seed, out=args.out)
    if args.cases:
        cfg.cases = [tuple(int(v) for v in c.split(",")) for c in args.cases]
    for row in run(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
