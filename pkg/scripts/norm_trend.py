#!/usr/bin/env python3
"""Prefix-norm growth experiment.

Prints ||T_f P_D|| for growing degree caps next to the symbol's sup-norm
on the closed ball: the truncated norms climb monotonically toward the
operator norm, which the sup-norm bounds from above.
"""

import argparse

from bergtoep.specialfn import SpaceParams
from bergtoep.symbols import monomial, z_power
from bergtoep.toeplitz import assemble, operator_norm, symbol_sup_bound

CASES = [
    ("z (disk)", SpaceParams(1, 0.0), z_power(1, (1,)), 1.0),
    ("z^2 (disk)", SpaceParams(1, 0.0), z_power(1, (2,)), 1.0),
    ("z (disk, alpha=2)", SpaceParams(1, 2.0), z_power(1, (1,)), 1.0),
    ("z1*conj(z2) (ball)", SpaceParams(2, 0.0), monomial(2, (1, 0), (0, 1)), 0.5),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--caps", default="5,10,20,40",
                        help="comma-separated degree caps")
    args = parser.parse_args()
    caps = [int(c) for c in args.caps.split(",")]

    for label, p, f, sup in CASES:
        if p.n > 1 and max(caps) > 24:
            caps_used = [c for c in caps if c <= 24]
        else:
            caps_used = caps
        norms = [operator_norm(assemble(p, f, D)) for D in caps_used]
        print(f"{label}  (sup-norm {sup}, coefficient bound {symbol_sup_bound(f):g})")
        for D, v in zip(caps_used, norms):
            print(f"  D={D:3d}  ||T_f P_D|| = {v:.12f}")
        print()


if __name__ == "__main__":
    main()
