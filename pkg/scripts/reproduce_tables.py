"""Compare computed Rogers-Szego rules with the reference tables, entry by entry."""

import argparse
from dataclasses import dataclass, field

from szegoq import tables


@dataclass
class Config:
    which: list[int] = field(default_factory=lambda: list(range(1, 11)))
    methods: tuple[str, ...] = ("cmv", "hessenberg", "roots")
    show_entries: bool = False


def main(cfg: Config) -> int:
    failed = 0
    for k in cfg.which:
        for m in cfg.methods:
            r = tables.reproduce(k, m)
            t = r.table
            print(f"table {k:2d} q={t.q:<4} n={t.n} [{m:10s}] nodes {r.max_node_err:.1e}/{t.node_tol:g}"
                  f"  weights {r.max_weight_err:.1e}/{t.weight_tol:g}  {'ok' if r.passed else 'FAIL'}")
            failed += not r.passed
            if cfg.show_entries and m == cfg.methods[0]:
                for e in r.entries:
                    flag = "" if e.weight_err <= t.weight_tol else "  <-"
                    print(f"    {e.node.real:+.6f}{e.node.imag:+.6f}i  reference {e.ref_weight:<12.9g}"
                          f" computed {e.weight:.9g}{flag}")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--which", type=int, nargs="*", default=Config().which)
    ap.add_argument("--entries", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(Config(which=a.which, show_entries=a.entries)))
