"""Triple/quadruple counting cross-checked against naive determinant
enumeration, plus the named permutation families."""

import itertools
import random

import pytest

from collinea.algebra import RingSpec, field_make
from collinea.collinear import (
    FracParams,
    GenPerm,
    PermGraph,
    closed_form_minimizer,
    count_quadruples,
    count_triples,
    count_triples_plane,
    fractional_perm,
    induced_transversal,
    is_collinear,
    list_triples,
    reciprocal_perm,
    recognize_fractional,
    transversal_from_bijection,
)
from collinea.errors import (
    ClassesNotDistinct,
    DegenerateParams,
    DuplicatePoint,
    EvenCharacteristic,
    PointNotInSet,
)
from collinea.plane import affine_plane


def _naive_triples(perm):
    """Oracle: test the determinant on every 3-subset."""
    ctx = perm.ctx
    n = len(perm.images)
    pts = [(x, perm.images[x]) for x in range(n)]
    return sum(
        1 for tri in itertools.combinations(pts, 3) if is_collinear(ctx, *tri)
    )


def _naive_quadruples(perm):
    ctx = perm.ctx
    n = len(perm.images)
    pts = [(x, perm.images[x]) for x in range(n)]
    total = 0
    for quad in itertools.combinations(pts, 4):
        if all(is_collinear(ctx, *tri) for tri in itertools.combinations(quad, 3)):
            total += 1
    return total


def test_is_collinear_examples():
    f5 = field_make(5)
    assert is_collinear(f5, (0, 0), (1, 1), (2, 2))
    assert is_collinear(RingSpec(6), (0, 0), (1, 1), (2, 2))
    assert not is_collinear(f5, (0, 0), (1, 1), (2, 4))
    # hand check mod 4: 0*(1-3) + 1*(3-0) + 2*(0-1) = 3 - 2 = 1
    assert not is_collinear(RingSpec(4), (0, 0), (1, 1), (2, 3))
    with pytest.raises(DuplicatePoint):
        is_collinear(f5, (0, 0), (0, 0), (1, 1))


def test_count_triples_examples():
    f5 = field_make(5)
    assert count_triples(PermGraph(f5, (0, 1, 2, 3, 4))) == 10
    assert count_triples(PermGraph(f5, (0, 1, 2, 4, 3))) == 2
    assert count_triples(PermGraph(RingSpec(4), (0, 1, 3, 2))) == 0


def test_permgraph_rejects_non_bijection():
    with pytest.raises(ValueError):
        PermGraph(field_make(5), (0, 1, 2, 3, 3))
    with pytest.raises(ValueError):
        PermGraph(RingSpec(4), (0, 1, 2))


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13])
def test_bucket_count_matches_naive_oracle(q):
    rng = random.Random(4000 + q)
    f = field_make(q)
    base = list(range(q))
    for _ in range(60):
        rng.shuffle(base)
        perm = PermGraph(f, tuple(base))
        assert count_triples(perm) == _naive_triples(perm)
        assert count_quadruples(perm) == _naive_quadruples(perm)


@pytest.mark.parametrize("n", [4, 6, 8, 9, 10])
def test_ring_counts_match_naive_oracle(n):
    rng = random.Random(4100 + n)
    ctx = RingSpec(n)
    base = list(range(n))
    for _ in range(40):
        rng.shuffle(base)
        perm = PermGraph(ctx, tuple(base))
        assert count_triples(perm) == _naive_triples(perm)
        assert count_quadruples(perm) == _naive_quadruples(perm)


def test_list_triples_order_and_agreement():
    f5 = field_make(5)
    ident = PermGraph(f5, (0, 1, 2, 3, 4))
    listing = list_triples(ident)
    assert listing == sorted(listing)
    assert listing == list(itertools.combinations(range(5), 3))
    g5 = PermGraph(f5, (0, 1, 2, 4, 3))
    assert len(list_triples(g5)) == count_triples(g5)
    zn = PermGraph(RingSpec(6), (0, 1, 2, 3, 4, 5))
    assert len(list_triples(zn)) == count_triples(zn)


def test_count_quadruples_examples():
    f5 = field_make(5)
    assert count_quadruples(PermGraph(f5, (0, 1, 2, 3, 4))) == 5
    assert count_quadruples(PermGraph(f5, (0, 1, 2, 4, 3))) == 0
    assert count_quadruples(PermGraph(field_make(3), (0, 1, 2))) == 0


def test_closed_form_minimizer_images():
    assert closed_form_minimizer(field_make(3)).images == (0, 1, 2)
    assert closed_form_minimizer(field_make(5)).images == (0, 1, 2, 4, 3)
    assert closed_form_minimizer(field_make(7)).images == (0, 1, 2, 5, 6, 3, 4)
    with pytest.raises(EvenCharacteristic):
        closed_form_minimizer(field_make(4))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_closed_form_minimizer_count(q):
    perm = closed_form_minimizer(field_make(q))
    assert count_triples(perm) == (q - 1) // 2


def test_fractional_perm_examples():
    f5 = field_make(5)
    assert (
        fractional_perm(f5, FracParams(1, 0, f5.neg(1))).images
        == closed_form_minimizer(f5).images
    )
    with pytest.raises(DegenerateParams):
        fractional_perm(f5, FracParams(1, 1, 1))
    f7 = field_make(7)
    assert fractional_perm(f7, FracParams(0, 1, 0)).images == reciprocal_perm(f7).images


@pytest.mark.parametrize("q", [5, 7, 9])
def test_fractional_param_space(q):
    """Exactly q^2(q-1) parameter triples survive the degeneracy condition and
    every one yields a bijection (PermGraph validates on build)."""
    f = field_make(q)
    good = 0
    for a, b, g in itertools.product(range(q), repeat=3):
        if f.mul(a, g) == b:
            with pytest.raises(DegenerateParams):
                fractional_perm(f, FracParams(a, b, g))
        else:
            fractional_perm(f, FracParams(a, b, g))
            good += 1
    assert good == q * q * (q - 1)


def test_recognize_fractional_examples():
    f7 = field_make(7)
    got = recognize_fractional(closed_form_minimizer(f7))
    assert got == FracParams(1, 0, f7.neg(1))
    assert recognize_fractional(PermGraph(field_make(5), (0, 1, 2, 3, 4))) is None


def test_recognize_fully_collinear_graph():
    # q = 3 identity: every probe system is singular, brute-force path
    f3 = field_make(3)
    got = recognize_fractional(PermGraph(f3, (0, 1, 2)))
    assert got is not None
    assert fractional_perm(f3, got).images == (0, 1, 2)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_recognize_round_trips_every_param(q):
    f = field_make(q)
    for a, b, g in itertools.product(range(q), repeat=3):
        if f.mul(a, g) == b:
            continue
        perm = fractional_perm(f, FracParams(a, b, g))
        got = recognize_fractional(perm)
        assert got is not None
        assert fractional_perm(f, got).images == perm.images


def test_reciprocal_perm_values():
    assert reciprocal_perm(field_make(4)).images == (0, 1, 3, 2)
    assert reciprocal_perm(field_make(5)).images == (0, 1, 3, 2, 4)


@pytest.mark.parametrize("q", [4, 8, 16])
def test_reciprocal_char2_has_no_triples(q):
    assert count_triples(reciprocal_perm(field_make(q))) == 0


def test_reciprocal_odd_q_is_a_minimizer():
    f7 = field_make(7)
    assert count_triples(reciprocal_perm(f7)) == 3


def test_plane_count_examples():
    f3 = field_make(3)
    gp = induced_transversal(PermGraph(f3, (0, 1, 2)))
    assert count_triples_plane(gp) == 1
    f5 = field_make(5)
    gp5 = induced_transversal(closed_form_minimizer(f5))
    assert count_triples_plane(gp5) == 2
    assert count_quadruples(gp5) == 0


@pytest.mark.parametrize("q", [3, 5, 7])
def test_plane_count_matches_field_count(q):
    rng = random.Random(4200 + q)
    f = field_make(q)
    base = list(range(q))
    for _ in range(20):
        rng.shuffle(base)
        perm = PermGraph(f, tuple(base))
        gp = induced_transversal(perm)
        assert count_triples_plane(gp) == count_triples(perm)
        assert count_quadruples(gp) == count_quadruples(perm)


def test_genperm_validation():
    f3 = field_make(3)
    pl = affine_plane(f3)
    good = induced_transversal(PermGraph(f3, (0, 1, 2)))
    with pytest.raises(ClassesNotDistinct):
        GenPerm(pl, 3, 3, good.cells)
    with pytest.raises(PointNotInSet):
        GenPerm(pl, 3, 0, (4, 3, 8))  # 4 is not on the first vertical line
    with pytest.raises(ValueError):
        GenPerm(pl, 3, 0, (0, 3, 6))  # all three on the same horizontal line


def test_transversal_from_bijection_random():
    rng = random.Random(77)
    pl = affine_plane(field_make(5))
    pi = list(range(5))
    for _ in range(30):
        rng.shuffle(pi)
        gp = transversal_from_bijection(pl, 5, 0, tuple(pi))
        assert count_triples_plane(gp) >= 1  # odd order forces a triple
