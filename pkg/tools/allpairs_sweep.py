"""Sweep every parallel-class pair of every bundled affine fixture and
report the transversal minimum per pair.

Background check for the pinned (0, 1) pair documented in each fixture's
provenance: the minimum is pair-independent on the classical-flavored planes
but genuinely splits on hall_translation_deleted, dual_hall_special_deleted,
and hughes_real_deleted.  Takes a few minutes total.
"""

import time

from collinea.fixtures import AFFINE_FIXTURES, load_fixture
from collinea.search import SearchConfig, min_triples_plane


def main():
    for name in AFFINE_FIXTURES:
        plane = load_fixture(name)
        t0 = time.perf_counter()
        by_psi = {}
        for h in range(len(plane.parallel_classes)):
            for v in range(h + 1, len(plane.parallel_classes)):
                psi = min_triples_plane(plane, h, v, SearchConfig()).psi
                by_psi.setdefault(psi, []).append((h, v))
        print(f"{name}: {time.perf_counter() - t0:.0f}s")
        for psi in sorted(by_psi):
            print(f"  psi={psi}: {len(by_psi[psi])} pairs  {by_psi[psi]}")


if __name__ == "__main__":
    main()
