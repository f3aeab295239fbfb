"""Branch-and-bound minimization of collinear triples.

Three search domains share one skeleton: DFS over domain points in ascending
order, candidate images in ascending order, with per-line occupancy counters
and the prune rule "partial count already >= incumbent".  Fields and planes
use precomputed counter-key tables (placing a point touches one counter per
eligible line); Z_n solves a linear congruence per placed pair to get, for
each depth, the triple increment of every candidate image at once.

Witness extraction is a separate lex-ordered pass with the exact minimum as a
fixed bound, so min_value, lex_least and parallel runs all report the same
canonical witnesses.
"""

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from math import comb, gcd

from .algebra import FieldSpec, RingSpec
from .collinear import (
    PermGraph,
    closed_form_minimizer,
    count_triples,
    count_triples_plane,
    list_triples,
    reciprocal_perm,
    transversal_from_bijection,
)
from .errors import NodeLimitExceeded
from .plane import plane_grid

MODES = ("min_value", "enumerate_all_min", "lex_least", "first_below")

# tasks handed to the pool per wave, in units of worker count
_WAVE_FACTOR = 8


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "min_value"
    bound: int = None  # first_below only: find a witness with count < bound
    parallel_depth: int = 0
    threads: int = None
    node_limit: int = None
    upper_bound_seed: int = None  # must be a count achieved by a known witness
    fix_first_image: bool = False  # sigma(0)=0 reduction; field/ring only

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.parallel_depth < 0:
            raise ValueError("parallel_depth must be >= 0")
        if self.mode == "first_below" and self.bound is None:
            raise ValueError("first_below needs a bound")


@dataclass(frozen=True)
class SearchOutcome:
    psi: int
    witnesses: tuple
    nodes_expanded: int
    prunes: int
    elapsed: float
    config: SearchConfig


def outcome_to_json(outcome):
    cfg = outcome.config
    return {
        "psi": outcome.psi,
        "witnesses": [list(w) for w in outcome.witnesses],
        "nodes_expanded": outcome.nodes_expanded,
        "prunes": outcome.prunes,
        "elapsed": outcome.elapsed,
        "config": {
            "mode": cfg.mode,
            "bound": cfg.bound,
            "parallel_depth": cfg.parallel_depth,
            "threads": cfg.threads,
            "node_limit": cfg.node_limit,
            "upper_bound_seed": cfg.upper_bound_seed,
            "fix_first_image": cfg.fix_first_image,
        },
    }


# -- bucket engine (fields and planes) ---------------------------------------
# keys[row * q + choice] lists the counters touched by that placement; a
# counter holding m points contributes C(m, 2) new triples when hit again.


def _tri_table(q):
    return [c * (c - 1) // 2 for c in range(q + 2)]


def _bucket_place(keys_row, cnt, tri):
    delta = 0
    for idx in keys_row:
        c = cnt[idx]
        delta += tri[c]
        cnt[idx] = c + 1
    return delta


def _bucket_unplace(keys_row, cnt):
    for idx in keys_row:
        cnt[idx] -= 1


def _bucket_value(q, keys, cnt_size, prefix, best, stats, node_limit, fix_first):
    """Exact minimum over completions of prefix, given an achievable incumbent
    (or an unreachable sentinel).  Returns the possibly improved incumbent."""
    tri = _tri_table(q)
    cnt = [0] * cnt_size
    used = 0
    cost = 0
    for x, y in enumerate(prefix):
        cost += _bucket_place(keys[x * q + y], cnt, tri)
        used |= 1 << y
    if cost >= best:
        stats[1] += 1
        return best
    start = len(prefix)

    def rec(x, used, cost):
        nonlocal best
        if x == q:
            best = cost
            return
        base = x * q
        first_only = fix_first and x == 0
        for y in range(q):
            m = 1 << y
            if used & m:
                continue
            if first_only and y > 0:
                break
            ks = keys[base + y]
            nc = cost + _bucket_place(ks, cnt, tri)
            stats[0] += 1
            if node_limit is not None and stats[0] > node_limit:
                _bucket_unplace(ks, cnt)
                raise NodeLimitExceeded(f"expanded more than {node_limit} nodes")
            if nc >= best:
                stats[1] += 1
            else:
                rec(x + 1, used | m, nc)
            _bucket_unplace(ks, cnt)

    rec(start, used, cost)
    return best


def _bucket_collect(q, keys, cnt_size, prefix, limit, first_only, stats, node_limit,
                    fix_first):
    """All completions with count < limit, in lex order (or just the first)."""
    tri = _tri_table(q)
    cnt = [0] * cnt_size
    used = 0
    cost = 0
    for x, y in enumerate(prefix):
        cost += _bucket_place(keys[x * q + y], cnt, tri)
        used |= 1 << y
    out = []
    if cost >= limit:
        stats[1] += 1
        return out
    assign = list(prefix)

    def rec(x, used, cost):
        if x == q:
            out.append(tuple(assign))
            return bool(first_only)
        base = x * q
        head = fix_first and x == 0
        for y in range(q):
            m = 1 << y
            if used & m:
                continue
            if head and y > 0:
                break
            ks = keys[base + y]
            nc = cost + _bucket_place(ks, cnt, tri)
            stats[0] += 1
            if node_limit is not None and stats[0] > node_limit:
                _bucket_unplace(ks, cnt)
                raise NodeLimitExceeded(f"expanded more than {node_limit} nodes")
            if nc >= limit:
                stats[1] += 1
                _bucket_unplace(ks, cnt)
            else:
                assign.append(y)
                done = rec(x + 1, used | m, nc)
                assign.pop()
                _bucket_unplace(ks, cnt)
                if done:
                    return True
        return False

    rec(len(prefix), used, cost)
    return out


# -- Z_n engine --------------------------------------------------------------
# For the pair (i, y_i), (j, y_j) and a new point (d, y), the determinant
# vanishes iff y*(j - i) = y_i*(j - d) + y_j*(d - i) mod n; solving that
# congruence for every placed pair fills incr[y] = new triples at image y.


def _zn_incr(n, ys, d):
    incr = [0] * n
    for j in range(1, d):
        yj = ys[j]
        for i in range(j):
            a = j - i
            c = (ys[i] * (j - d) + yj * (d - i)) % n
            g = gcd(a, n)
            if c % g:
                continue
            m = n // g
            y0 = ((c // g) * pow(a // g, -1, m)) % m
            for t in range(g):
                incr[y0 + t * m] += 1
    return incr


def _zn_value(n, prefix, best, stats, node_limit, fix_first):
    ys = list(prefix)
    used = 0
    cost = 0
    for d, y in enumerate(prefix):
        cost += _zn_incr(n, ys[:d], d)[y] if d >= 2 else 0
        used |= 1 << y
    if cost >= best:
        stats[1] += 1
        return best

    def rec(d, used, cost):
        nonlocal best
        if d == n:
            best = cost
            return
        incr = _zn_incr(n, ys, d) if d >= 2 else [0] * n
        head = fix_first and d == 0
        for y in range(n):
            m = 1 << y
            if used & m:
                continue
            if head and y > 0:
                break
            nc = cost + incr[y]
            stats[0] += 1
            if node_limit is not None and stats[0] > node_limit:
                raise NodeLimitExceeded(f"expanded more than {node_limit} nodes")
            if nc >= best:
                stats[1] += 1
            else:
                ys.append(y)
                rec(d + 1, used | m, nc)
                ys.pop()

    rec(len(prefix), used, cost)
    return best


def _zn_collect(n, prefix, limit, first_only, stats, node_limit, fix_first):
    ys = list(prefix)
    used = 0
    cost = 0
    for d, y in enumerate(prefix):
        cost += _zn_incr(n, ys[:d], d)[y] if d >= 2 else 0
        used |= 1 << y
    out = []
    if cost >= limit:
        stats[1] += 1
        return out

    def rec(d, used, cost):
        if d == n:
            out.append(tuple(ys))
            return bool(first_only)
        incr = _zn_incr(n, ys, d) if d >= 2 else [0] * n
        head = fix_first and d == 0
        for y in range(n):
            m = 1 << y
            if used & m:
                continue
            if head and y > 0:
                break
            nc = cost + incr[y]
            stats[0] += 1
            if node_limit is not None and stats[0] > node_limit:
                raise NodeLimitExceeded(f"expanded more than {node_limit} nodes")
            if nc >= limit:
                stats[1] += 1
            else:
                ys.append(y)
                done = rec(d + 1, used | m, nc)
                ys.pop()
                if done:
                    return True
        return False

    rec(len(prefix), used, cost)
    return out


# -- parallel waves ----------------------------------------------------------


def _bucket_task(args):
    kind, q, keys, cnt_size, prefix, a, b, node_budget, fix_first = args
    stats = [0, 0]
    if kind == "value":
        r = _bucket_value(q, keys, cnt_size, prefix, a, stats, node_budget, fix_first)
    else:
        r = _bucket_collect(q, keys, cnt_size, prefix, a, b, stats, node_budget, fix_first)
    return r, stats[0], stats[1]


def _zn_task(args):
    kind, n, prefix, a, b, node_budget, fix_first = args
    stats = [0, 0]
    if kind == "value":
        r = _zn_value(n, prefix, a, stats, node_budget, fix_first)
    else:
        r = _zn_collect(n, prefix, a, b, stats, node_budget, fix_first)
    return r, stats[0], stats[1]


def resolve_threads(threads):
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("COLLINEA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def _prefixes(q, depth, fix_first):
    """Distinct-image tuples of the given length, lexicographic."""
    depth = min(depth, q)
    out = []

    def gen(pre):
        if len(pre) == depth:
            out.append(tuple(pre))
            return
        cands = (0,) if (fix_first and not pre) else range(q)
        for y in cands:
            if y in pre:
                continue
            pre.append(y)
            gen(pre)
            pre.pop()

    gen([])
    return out


class _Waves:
    """Runs prefix tasks in deterministic chunked waves, merging in task
    order so the outcome never depends on completion timing."""

    def __init__(self, task_fn, make_args, cfg, stats):
        self.task_fn = task_fn
        self.make_args = make_args
        self.cfg = cfg
        self.stats = stats
        self.workers = resolve_threads(cfg.threads)

    def _budget(self):
        if self.cfg.node_limit is None:
            return None
        left = self.cfg.node_limit - self.stats[0]
        if left <= 0:
            raise NodeLimitExceeded(f"expanded more than {self.cfg.node_limit} nodes")
        return left

    def run_value(self, prefixes, best):
        chunk = self.workers * _WAVE_FACTOR
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            for base in range(0, len(prefixes), chunk):
                wave = prefixes[base : base + chunk]
                budget = self._budget()
                args = [self.make_args("value", p, best, None, budget) for p in wave]
                for r, nodes, prunes in pool.map(self.task_fn, args):
                    self.stats[0] += nodes
                    self.stats[1] += prunes
                    if r < best:
                        best = r
                if self.cfg.node_limit is not None and self.stats[0] > self.cfg.node_limit:
                    raise NodeLimitExceeded(
                        f"expanded more than {self.cfg.node_limit} nodes"
                    )
        return best

    def run_collect(self, prefixes, limit, first_only):
        chunk = self.workers * _WAVE_FACTOR
        out = []
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            for base in range(0, len(prefixes), chunk):
                wave = prefixes[base : base + chunk]
                budget = self._budget()
                args = [
                    self.make_args("collect", p, limit, first_only, budget) for p in wave
                ]
                for r, nodes, prunes in pool.map(self.task_fn, args):
                    self.stats[0] += nodes
                    self.stats[1] += prunes
                    if r and not (first_only and out):
                        out.extend(r)
                if self.cfg.node_limit is not None and self.stats[0] > self.cfg.node_limit:
                    raise NodeLimitExceeded(
                        f"expanded more than {self.cfg.node_limit} nodes"
                    )
                if first_only and out:
                    break
        return out[:1] if first_only else out


# -- orchestration -----------------------------------------------------------


def _run_search(size, cfg, seed_value, value_fn, collect_fn, waves, recount, max_count):
    t0 = time.perf_counter()
    stats = [0, 0]
    fix = cfg.fix_first_image

    def value_phase(best):
        if cfg.parallel_depth > 0:
            w = waves(stats)
            return w.run_value(_prefixes(size, cfg.parallel_depth, fix), best)
        return value_fn((), best, stats, cfg.node_limit, fix)

    def collect_phase(limit, first_only):
        if cfg.parallel_depth > 0:
            w = waves(stats)
            return w.run_collect(_prefixes(size, cfg.parallel_depth, fix), limit, first_only)
        return collect_fn((), limit, first_only, stats, cfg.node_limit, fix)

    if cfg.mode == "first_below":
        found = collect_phase(cfg.bound, True)
        psi = recount(found[0]) if found else None
        witnesses = tuple(found)
    else:
        sentinel = max_count + 1
        best = cfg.upper_bound_seed if cfg.upper_bound_seed is not None else seed_value
        if best is None:
            best = sentinel
        psi = value_phase(best)
        if cfg.mode == "enumerate_all_min":
            witnesses = tuple(collect_phase(psi + 1, False))
        else:  # min_value and lex_least: the canonical lex-least witness
            witnesses = tuple(collect_phase(psi + 1, True))
        if not witnesses:
            # only possible when the seeded incumbent undercut the true
            # minimum, so nothing attained the reported value
            raise ValueError(f"upper bound seed {best} is below the minimum")
    for w in witnesses:
        got = recount(w)
        if got != psi:
            raise AssertionError(f"witness {w} recounts to {got}, search said {psi}")
    elapsed = time.perf_counter() - t0
    return SearchOutcome(psi, witnesses, stats[0], stats[1], elapsed, cfg)


def _field_keys(f):
    q = f.q
    keys = []
    for x in range(q):
        for y in range(q):
            keys.append([s * q + f.sub(y, f.mul(s, x)) for s in range(q)])
    return keys


def min_triples_field(f, cfg=None):
    """Exact minimum number of collinear triples over all permutations of
    GF(q), with witnesses per the configured mode.  The incumbent is seeded
    from the closed-form family (odd q) or the reciprocal map (even q)."""
    cfg = cfg or SearchConfig()
    q = f.q
    keys = _field_keys(f)
    if cfg.upper_bound_seed is None and cfg.mode != "first_below":
        seed_perm = closed_form_minimizer(f) if f.p != 2 else reciprocal_perm(f)
        seed = count_triples(seed_perm)
    else:
        seed = None

    def value_fn(prefix, best, stats, nl, fix):
        return _bucket_value(q, keys, q * q, prefix, best, stats, nl, fix)

    def collect_fn(prefix, limit, first, stats, nl, fix):
        return _bucket_collect(q, keys, q * q, prefix, limit, first, stats, nl, fix)

    def waves(stats):
        def make_args(kind, prefix, a, b, budget):
            return (kind, q, keys, q * q, prefix, a, b, budget, cfg.fix_first_image)

        return _Waves(_bucket_task, make_args, cfg, stats)

    def recount(w):
        return len(list_triples(PermGraph(f, w)))

    return _run_search(q, cfg, seed, value_fn, collect_fn, waves, recount, comb(q, 3))


def min_triples_zn(n, cfg=None):
    """Exact minimum under determinant-mod-n collinearity."""
    if n < 3:
        raise ValueError("need n >= 3")
    cfg = cfg or SearchConfig()

    def value_fn(prefix, best, stats, nl, fix):
        return _zn_value(n, prefix, best, stats, nl, fix)

    def collect_fn(prefix, limit, first, stats, nl, fix):
        return _zn_collect(n, prefix, limit, first, stats, nl, fix)

    def waves(stats):
        def make_args(kind, prefix, a, b, budget):
            return (kind, n, prefix, a, b, budget, cfg.fix_first_image)

        return _Waves(_zn_task, make_args, cfg, stats)

    def recount(w):
        return count_triples(PermGraph(RingSpec(n), w))

    return _run_search(n, cfg, None, value_fn, collect_fn, waves, recount, comb(n, 3))


def min_triples_plane(ap, h_class, v_class, cfg=None):
    """Exact minimum over transversals of the (h, v) grid; witnesses are
    column tuples (row i picks column witness[i])."""
    cfg = cfg or SearchConfig()
    q = ap.order
    grid = plane_grid(ap, h_class, v_class)
    skip = set(ap.parallel_classes[h_class]) | set(ap.parallel_classes[v_class])
    lines_of = {}
    for li, ln in enumerate(ap.lines):
        if li in skip:
            continue
        for p in ln:
            lines_of.setdefault(p, []).append(li)
    keys = []
    for i in range(q):
        for j in range(q):
            keys.append(lines_of.get(grid[i][j], []))
    cnt_size = len(ap.lines)

    def value_fn(prefix, best, stats, nl, fix):
        return _bucket_value(q, keys, cnt_size, prefix, best, stats, nl, False)

    def collect_fn(prefix, limit, first, stats, nl, fix):
        return _bucket_collect(q, keys, cnt_size, prefix, limit, first, stats, nl, False)

    def waves(stats):
        def make_args(kind, prefix, a, b, budget):
            return (kind, q, keys, cnt_size, prefix, a, b, budget, False)

        return _Waves(_bucket_task, make_args, cfg, stats)

    def recount(w):
        gp = transversal_from_bijection(ap, h_class, v_class, w)
        return count_triples_plane(gp)

    return _run_search(q, cfg, None, value_fn, collect_fn, waves, recount, comb(q, 3))


def _dispatch(target, cfg):
    if isinstance(target, FieldSpec):
        return min_triples_field(target, cfg)
    if isinstance(target, RingSpec):
        return min_triples_zn(target.n, cfg)
    if isinstance(target, tuple) and len(target) == 3:
        ap, h, v = target
        return min_triples_plane(ap, h, v, cfg)
    raise TypeError("target must be FieldSpec, RingSpec, or (plane, h, v)")


def enumerate_minimizers(target, cfg=None):
    """All minimum-attaining witnesses in lexicographic order.  Field and
    ring targets come back as PermGraphs, plane targets as column tuples."""
    cfg = replace(cfg or SearchConfig(), mode="enumerate_all_min")
    out = _dispatch(target, cfg)
    if isinstance(target, FieldSpec):
        return [PermGraph(target, w) for w in out.witnesses]
    if isinstance(target, RingSpec):
        return [PermGraph(target, w) for w in out.witnesses]
    return list(out.witnesses)


def lex_least_minimizer(target, cfg=None):
    """The lexicographically least minimum-attaining witness."""
    cfg = replace(cfg or SearchConfig(), mode="lex_least")
    out = _dispatch(target, cfg)
    w = out.witnesses[0]
    if isinstance(target, (FieldSpec, RingSpec)):
        return PermGraph(target, w)
    return w
