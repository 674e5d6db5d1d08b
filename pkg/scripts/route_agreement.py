"""Random-trial agreement between the hessenberg, cmv and roots routes."""

import argparse
import math
import time
from dataclasses import dataclass

import numpy as np

from szegoq import quadrature, schur


@dataclass
class Config:
    trials: int = 200
    max_n: int = 32
    radius: float = 0.95
    seed: int = 20241014
    node_tol: float = 1e-9
    weight_tol: float = 1e-8


def main(cfg: Config) -> int:
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    worst = {"hessenberg": [0.0, 0.0], "roots": [0.0, 0.0]}
    for _ in range(cfg.trials):
        n = int(rng.integers(1, cfg.max_n + 1))
        r = np.sqrt(rng.uniform(0, cfg.radius**2, n))
        s = schur.explicit(r * np.exp(1j * rng.uniform(0, 2 * math.pi, n)))
        u = np.exp(1j * rng.uniform(0, 2 * math.pi))
        base = quadrature.rule_via_cmv(s, n, u)
        for m in worst:
            dz, dw = quadrature.match_rules(base, quadrature.compute_rule(s, n, u, m))
            worst[m] = [max(worst[m][0], dz), max(worst[m][1], dw)]
    ok = all(z <= cfg.node_tol and w <= cfg.weight_tol for z, w in worst.values())
    for m, (z, w) in worst.items():
        print(f"cmv vs {m:10s} nodes {z:.2e}  weights {w:.2e}")
    print(f"{cfg.trials} trials in {time.perf_counter() - t0:.1f}s: {'ok' if ok else 'FAIL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    raise SystemExit(main(Config(trials=a.trials, seed=a.seed)))
