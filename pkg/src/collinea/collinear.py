"""Permutation graphs and exact collinear triple/quadruple counts.

Works in three settings: GF(q) (slope-bucket counting), Z_n (exhaustive
determinant tests; collinearity there is *defined* as vanishing of the same
determinant mod n), and abstract affine planes (line intersection counts
against a transversal).
"""

import itertools
from dataclasses import dataclass
from math import comb

from .algebra import FieldSpec, RingSpec
from .errors import (
    ClassesNotDistinct,
    DegenerateParams,
    DuplicatePoint,
    EvenCharacteristic,
    PointNotInSet,
)


def ctx_order(ctx):
    return ctx.q if isinstance(ctx, FieldSpec) else ctx.n


@dataclass(frozen=True)
class PermGraph:
    """A permutation sigma of the canonical encodings, viewed as its graph
    {(x, sigma(x))} in ctx x ctx."""

    ctx: object
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = ctx_order(self.ctx)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"images are not a bijection on 0..{n-1}")

    def __len__(self):
        return len(self.images)


@dataclass(frozen=True)
class GenPerm:
    """Transversal S of an affine plane, one point per line of the h class,
    meeting every line of the v class exactly once."""

    plane: object
    h_class: int
    v_class: int
    cells: tuple

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        pl = self.plane
        n_cls = len(pl.parallel_classes)
        if not (0 <= self.h_class < n_cls and 0 <= self.v_class < n_cls):
            raise ValueError("parallel class index out of range")
        if self.h_class == self.v_class:
            raise ClassesNotDistinct("h and v must be different parallel classes")
        h_lines = pl.parallel_classes[self.h_class]
        if len(self.cells) != len(h_lines):
            raise ValueError("need exactly one chosen point per h line")
        for ln, p in zip(h_lines, self.cells):
            if p not in pl.lines[ln]:
                raise PointNotInSet(f"point {p} is not on h line {ln}")
        v_of = {}
        for j in pl.parallel_classes[self.v_class]:
            for p in pl.lines[j]:
                v_of[p] = j
        vs = [v_of[p] for p in self.cells]
        if len(set(vs)) != len(vs):
            raise ValueError("chosen points do not meet distinct v lines")


@dataclass(frozen=True)
class FracParams:
    """Parameters (alpha, beta, gamma) of a patched fractional map; the map is
    a permutation exactly when alpha*gamma != beta."""

    alpha: int
    beta: int
    gamma: int


def _det3(ctx, p1, p2, p3):
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    t1 = ctx.mul(x1, ctx.sub(y2, y3))
    t2 = ctx.mul(x2, ctx.sub(y3, y1))
    t3 = ctx.mul(x3, ctx.sub(y1, y2))
    return ctx.add(ctx.add(t1, t2), t3)


def is_collinear(ctx, p1, p2, p3):
    """Do the three distinct points satisfy the collinearity determinant?"""
    if p1 == p2 or p1 == p3 or p2 == p3:
        raise DuplicatePoint(f"points must be distinct: {p1}, {p2}, {p3}")
    return _det3(ctx, p1, p2, p3) == 0


def count_triples(perm):
    """Number of collinear triples among the graph points of perm.

    Field contexts bucket by (slope, intercept): three graph points are
    collinear iff they share a non-vertical line, and no line of slope s holds
    two points with equal x, so summing C(m, 3) over intercept buckets of each
    slope counts every triple exactly once.  Z_n falls back to testing all
    C(n, 3) determinants."""
    ctx = perm.ctx
    if isinstance(ctx, FieldSpec):
        q = ctx.q
        total = 0
        for s in range(q):
            buckets = [0] * q
            for x in range(q):
                buckets[ctx.sub(perm.images[x], ctx.mul(s, x))] += 1
            total += sum(comb(m, 3) for m in buckets if m > 2)
        return total
    n = ctx.n
    pts = [(x, perm.images[x]) for x in range(n)]
    return sum(
        1
        for a, b, c in itertools.combinations(pts, 3)
        if _det3(ctx, a, b, c) == 0
    )


def list_triples(perm):
    """The collinear triples as sorted x-coordinate tuples, lexicographic."""
    ctx = perm.ctx
    n = ctx_order(ctx)
    out = []
    for xs in itertools.combinations(range(n), 3):
        pts = [(x, perm.images[x]) for x in xs]
        if _det3(ctx, *pts) == 0:
            out.append(xs)
    return out


def count_quadruples(obj):
    """Collinear quadruples of a PermGraph or a GenPerm.

    Over a field, same bucketing as triples with C(m, 4); over a plane,
    C(m, 4) per unskipped line; over Z_n a 4-set counts when all four of its
    sub-triples have vanishing determinant."""
    if isinstance(obj, GenPerm):
        return _plane_line_count(obj, 4)
    ctx = obj.ctx
    if isinstance(ctx, FieldSpec):
        q = ctx.q
        total = 0
        for s in range(q):
            buckets = [0] * q
            for x in range(q):
                buckets[ctx.sub(obj.images[x], ctx.mul(s, x))] += 1
            total += sum(comb(m, 4) for m in buckets if m > 3)
        return total
    n = ctx.n
    pts = [(x, obj.images[x]) for x in range(n)]
    total = 0
    for quad in itertools.combinations(pts, 4):
        if all(_det3(ctx, *tri) == 0 for tri in itertools.combinations(quad, 3)):
            total += 1
    return total


def _plane_line_count(gp, r):
    skip = set(gp.plane.parallel_classes[gp.h_class]) | set(
        gp.plane.parallel_classes[gp.v_class]
    )
    chosen = set(gp.cells)
    total = 0
    for i, ln in enumerate(gp.plane.lines):
        if i in skip:
            continue
        m = sum(1 for p in ln if p in chosen)
        if m >= r:
            total += comb(m, r)
    return total


def count_triples_plane(gp):
    """Collinear triples of the transversal: C(m, 3) summed over all lines
    outside the two distinguished classes."""
    return _plane_line_count(gp, 3)


def closed_form_minimizer(f):
    """The explicit odd-q minimizer: x maps to 1 at x = 1, else x/(x-1)."""
    if f.p == 2:
        raise EvenCharacteristic("closed form needs odd q")
    images = []
    for x in range(f.q):
        images.append(1 if x == 1 else f.div(x, f.sub(x, 1)))
    return PermGraph(f, tuple(images))


def fractional_perm(f, params):
    """sigma(x) = (alpha*x + beta)/(x + gamma) away from the pole, patched by
    sigma(-gamma) = alpha."""
    a, b, g = params.alpha, params.beta, params.gamma
    if f.mul(a, g) == b:
        raise DegenerateParams("alpha*gamma = beta collapses the map")
    pole = f.neg(g)
    images = []
    for x in range(f.q):
        if x == pole:
            images.append(a)
        else:
            images.append(f.div(f.add(f.mul(a, x), b), f.add(x, g)))
    return PermGraph(f, tuple(images))


def reciprocal_perm(f):
    """x maps to 1/x, with 0 fixed."""
    return PermGraph(f, tuple(f.inv(x) if x else 0 for x in range(f.q)))


def _solve3(f, rows, rhs):
    """Unique solution of a 3x3 system over f, or None if singular."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    sol_cols = 3
    r = 0
    piv = []
    for c in range(sol_cols):
        pr = next((i for i in range(r, 3) if m[i][c] != 0), None)
        if pr is None:
            return None
        m[r], m[pr] = m[pr], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, v) for v in m[r]]
        for i in range(3):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [f.sub(a, f.mul(fac, b)) for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return tuple(m[i][3] for i in range(3))


def recognize_fractional(perm):
    """Recover FracParams reproducing perm exactly, or None.

    sigma(x)*(x + gamma) = alpha*x + beta is linear in (alpha, beta, gamma);
    three probe points pin the parameters when their graph points are not
    collinear.  Probes start at (0, 1, 2) and fall back through the other
    triples; each solution is verified against all q points before being
    returned, so the answer is the verified solution of the first workable
    probe."""
    f = perm.ctx
    if not isinstance(f, FieldSpec) or f.q < 3:
        return None
    q = f.q
    for xs in itertools.combinations(range(q), 3):
        rows = [(x, 1, f.neg(perm.images[x])) for x in xs]
        rhs = [f.mul(perm.images[x], x) for x in xs]
        sol = _solve3(f, rows, rhs)
        if sol is None:
            continue
        a, b, g = sol
        if f.mul(a, g) == b:
            continue
        if fractional_perm(f, FracParams(a, b, g)).images == perm.images:
            return FracParams(a, b, g)
    if all(_det3(f, *[(x, perm.images[x]) for x in xs]) == 0
           for xs in itertools.combinations(range(q), 3)):
        # fully collinear graph: every probe system is singular (only possible
        # at q = 3), so brute-force the parameter cube
        for a, b, g in itertools.product(range(q), repeat=3):
            if f.mul(a, g) == b:
                continue
            if fractional_perm(f, FracParams(a, b, g)).images == perm.images:
                return FracParams(a, b, g)
    return None


def transversal_from_bijection(plane, h_class, v_class, pi):
    """GenPerm whose i-th chosen point is the intersection of h line i with
    v line pi[i]; every bijection pi gives a valid transversal."""
    h_lines = plane.parallel_classes[h_class]
    v_lines = plane.parallel_classes[v_class]
    cells = []
    for i, j in enumerate(pi):
        inter = set(plane.lines[h_lines[i]]) & set(plane.lines[v_lines[j]])
        if len(inter) != 1:
            raise ClassesNotDistinct("classes do not cross properly")
        cells.append(inter.pop())
    return GenPerm(plane, h_class, v_class, tuple(cells))


def induced_transversal(perm):
    """View a field PermGraph inside ag2: h = the vertical class, v = the
    slope-0 class, chosen points (x, sigma(x))."""
    from .plane import affine_plane

    f = perm.ctx
    pl = affine_plane(f)
    q = f.q
    cells = tuple(i * q + perm.images[i] for i in range(q))
    return GenPerm(pl, q, 0, cells)
