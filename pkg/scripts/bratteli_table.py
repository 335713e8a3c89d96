"""Print the branching diagram of spin tensor powers as a level table.

For each level n the table lists every irreducible label with its
multiplicity and classical dimension, then the running centralizer dimension
(sum of squared multiplicities) and how much of it the basic construction
from two levels down accounts for.  The remainder column is the size of the
genuinely new part of the n-th commutant.

Usage:
    python3 scripts/bratteli_table.py --family B --rank 2 --levels 4
"""

from __future__ import annotations

import argparse

from spincheck.weights import (RootData, basic_construction_dim, bratteli,
                               centralizer_dims, classical_dimension)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("B", "D"), default="B")
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--levels", type=int, default=4)
    args = ap.parse_args()

    rd = RootData(args.family, args.rank)
    diag = bratteli(rd, args.levels)
    cdims = centralizer_dims(diag)

    print(f"family {args.family}, rank {args.rank}: "
          f"spin module of dimension {1 << args.rank}")
    for n in range(1, args.levels + 1):
        level = diag.levels[n - 1]
        parts = ", ".join(
            f"{lbl} x{m} (dim {classical_dimension(lbl, rd)})"
            for lbl, m in sorted(level.items(), key=lambda kv: str(kv[0])))
        print(f"\nlevel {n}: {parts}")
        total = sum(m * classical_dimension(lbl, rd)
                    for lbl, m in level.items())
        print(f"  module dimension {total} = {1 << args.rank}^{n}")
        line = f"  centralizer dimension {cdims[n - 1]}"
        if n >= 3:
            old = basic_construction_dim(diag, n - 1)
            line += (f"  (basic construction from level {n - 2}: {old}, "
                     f"new part {cdims[n - 1] - old})")
        print(line)


if __name__ == "__main__":
    main()
