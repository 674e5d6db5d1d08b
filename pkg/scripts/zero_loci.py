"""Zeros of the Rogers-Szego orthogonal Laurent polynomials (figure data).

Writes one CSV per (q, degree) with columns re, im, modulus.
"""

import argparse
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from szegoq import recurrences


@dataclass
class Config:
    qs: tuple[float, ...] = (0.1, 0.25, 0.5, 0.75, 0.9)
    degrees: tuple[int, ...] = (10, 11)
    out_dir: Path = Path("zeros_out")


def main(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for q in cfg.qs:
        for n in cfg.degrees:
            z = recurrences.rs_laurent_explicit(q, n).roots()
            z = z[np.argsort(np.angle(z))]
            want = math.sqrt(q) if n % 2 == 0 else 1 / math.sqrt(q)
            dev = float(np.max(np.abs(np.abs(z) - want)))
            path = cfg.out_dir / f"zeros_q{q}_n{n}.csv"
            with path.open("w") as fh:
                fh.write("re,im,modulus\n")
                for x in z:
                    fh.write(f"{x.real:.12g},{x.imag:.12g},{abs(x):.12g}\n")
            print(f"q={q:<4} n={n:2d}  |z| target {want:.6f}  max deviation {dev:.1e}  -> {path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Config().out_dir)
    raise SystemExit(main(Config(out_dir=ap.parse_args().out)))
