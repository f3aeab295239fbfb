"""Independent minimum-triple values over Z_n, for freezing into the tests.

No package imports: collinearity is the raw determinant test

    x1*(y2 - y3) + x2*(y3 - y1) + x3*(y1 - y2) == 0  (mod n)

and the sweeps fix sigma(0) = 0, justified because translating either
coordinate of every point leaves the determinant unchanged, so each count
class has a representative fixing 0.

For n with minimum 0 a single exhibited witness is a complete certificate
(the lower bound is trivial); those come from a pruned DFS.  For n = 9, 10
the full reduced factorial sweep runs (8! and 9! permutations).

Run:  python3 tools/zn_oracle.py
"""

import time
from itertools import combinations, permutations


def count_triples(n, perm, cap=None):
    c = 0
    for i, j, k in combinations(range(n), 3):
        if (i * (perm[j] - perm[k]) + j * (perm[k] - perm[i])
                + k * (perm[i] - perm[j])) % n == 0:
            c += 1
            if cap is not None and c > cap:
                return c
    return c


def zero_witness(n):
    """First permutation with sigma(0)=0 and no collinear triple, by DFS."""
    images = [0] * n
    used = [False] * n
    used[0] = True

    def ok(d):
        v = images[d]
        for i, j in combinations(range(d), 2):
            if (i * (images[j] - v) + j * (v - images[i])
                    + d * (images[i] - images[j])) % n == 0:
                return False
        return True

    def dfs(d):
        if d == n:
            return True
        for v in range(n):
            if not used[v]:
                images[d] = v
                used[v] = True
                if ok(d) and dfs(d + 1):
                    return True
                used[v] = False
        return False

    return tuple(images) if dfs(1) else None


def flat_min(n):
    best = None
    attain = 0
    witness = None
    rest = list(range(1, n))
    for tail in permutations(rest):
        perm = (0,) + tail
        c = count_triples(n, perm, cap=best)
        if best is None or c < best:
            best, attain, witness = c, 1, perm
        elif c == best:
            attain += 1
    return best, attain, witness


def main():
    print("n  psi  witness (sigma(0)=0 representative)")
    for n in (4, 6, 8, 12):
        w = zero_witness(n)
        assert w is not None and count_triples(n, w) == 0
        print(f"{n:<2} 0    {list(w)}")
    for n in (9, 10):
        t0 = time.time()
        psi, attain, w = flat_min(n)
        assert count_triples(n, w) == psi
        print(f"{n:<2} {psi}    {list(w)}   "
              f"({attain} reduced minimizers, {time.time() - t0:.0f}s)")


if __name__ == "__main__":
    main()
