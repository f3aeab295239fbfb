"""Transversal minima, retold with latin squares.

A full set of q-1 mutually orthogonal latin squares of order q is the same
data as an affine plane of order q, and a transversal of the plane is a
relabeled diagonal of the squares.  The positivity of the odd-order minimum
then reads: however you relabel the diagonal, SOME square has three equal
symbols in a row on it.  Even order breaks the pattern: the order-4 set
derived from GF(4) has a relabeling with no such witness.
"""

import argparse
import random

from collinea.algebra import field_make
from collinea.collinear import reciprocal_perm
from collinea.mols import diagonal_witness, mols_from_plane
from collinea.plane import affine_plane


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("q", type=int, nargs="?", default=5, help="odd prime power (default 5)")
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    q = args.q

    plane = affine_plane(field_make(q))
    squares = mols_from_plane(plane, q, 0)  # rows = verticals, so the grid is the identity
    print(f"order {q}: full MOLS set of {len(squares)} squares from AG(2,{q})")

    rng = random.Random(args.seed)
    relab = list(range(q))
    misses = 0
    example = None
    for _ in range(args.samples):
        rng.shuffle(relab)
        hit = diagonal_witness(squares, tuple(relab))
        if hit is None:
            misses += 1
        elif example is None:
            example = (list(relab), hit)
    print(f"{args.samples} random relabelings: {args.samples - misses} produced a "
          f"three-in-a-row witness, {misses} did not")
    if example:
        relab, (j, k, rows) = example
        print(f"e.g. relabeling {relab}: square {j} shows symbol {k} "
              f"at diagonal rows {list(rows)}")

    f4 = field_make(4)
    squares4 = mols_from_plane(affine_plane(f4), 4, 0)
    # the reciprocal map has a triple-free graph, so its relabeling must miss
    recip = reciprocal_perm(f4).images
    print(f"\norder 4 counterexample: relabeling {list(recip)} -> "
          f"{diagonal_witness(squares4, recip)}")


if __name__ == "__main__":
    main()
