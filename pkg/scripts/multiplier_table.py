"""Print the Schur multiplier of every catalog group by each applicable method."""

import argparse

from vcg.catalog import catalog
from vcg.groups import CapExceeded
from vcg.homology import METHODS, schur_multiplier


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=64)
    args = p.parse_args()
    print(f"{'group':14s} {'order':>5s}  " + "  ".join(f"{m:12s}" for m in METHODS))
    for g in catalog(args.max_order, extended=True):
        cells = []
        for m in METHODS:
            try:
                cells.append(str(schur_multiplier(g, m).group))
            except CapExceeded:
                cells.append("-")
        print(f"{g.name:14s} {g.order:5d}  " + "  ".join(f"{c:12s}" for c in cells))


if __name__ == "__main__":
    main()
