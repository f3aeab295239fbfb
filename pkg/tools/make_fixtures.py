"""Generate the bundled order-9 plane fixtures under src/collinea/data/.

Three non-Desarguesian projective planes of order 9 are built from scratch:

  * Hall plane: projective completion of the plane derived from AG(2,9) by
    replacing its four GF(3)-rational parallel classes (slopes 0,1,2 and the
    verticals) with the coset classes of the four subspaces a*GF(3)^2.
  * Dual Hall: incidence transpose of the Hall plane.
  * Hughes plane: right action of GL(3,3) on the lines x1 + x2*t + x3 = 0
    over the twisted (regular nearfield) multiplication on GF(9).

Each plane is certified by an elation census: for every line L we count how
many of the 80 candidate nonidentity central collineations with axis L verify
as collineations.  A plane is a translation plane with respect to L exactly
when all 80 do.  The censuses (and the same count on the transposes) separate
the four projective planes of order 9: 91 translation lines for PG(2,9), one
for Hall, none for its dual (which instead has one in transpose), none either
way for Hughes.

Seven affine fixtures follow by line deletion with documented choices.  Run
from the repository root:  python3 tools/make_fixtures.py
"""

import os
import sys
from dataclasses import replace
from itertools import product

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from collinea.algebra import field_make
from collinea.plane import (
    AffinePlane,
    ProjectivePlane,
    affine_plane,
    delete_line,
    dual_plane,
    parallel_classes,
    projective_plane,
    save_plane,
    validate,
)

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "collinea", "data")

F9 = field_make(9)
GF3 = (0, 1, 2)  # the subfield, in the base-3 element encoding


# ---------------------------------------------------------------- Hall plane

def derived_hall_affine():
    """Derive AG(2,9): keep the six irrational slope classes, replace the
    rational slopes and verticals by cosets of the subspaces a*GF(3)^2."""
    f = F9
    q = 9
    lines = []
    for s in range(q):
        if s in GF3:
            continue
        for b in range(q):
            lines.append(tuple(sorted(x * q + f.add(f.mul(s, x), b) for x in range(q))))
    # GF(9)* / GF(3)* coset representatives
    reps = []
    seen = set()
    for a in range(1, q):
        if a in seen:
            continue
        reps.append(a)
        seen.update(f.mul(c, a) for c in (1, 2))
    assert reps == [1, 3, 4, 5]
    for a in reps:
        sub = sorted(f.mul(a, u) * q + f.mul(a, v) for u in GF3 for v in GF3)
        covered = set()
        for c, d in product(range(q), repeat=2):
            coset = tuple(sorted((f.add(p // q, c)) * q + f.add(p % q, d) for p in sub))
            if coset not in covered:
                covered.add(coset)
        assert len(covered) == q
        lines.extend(sorted(covered))
    assert len(lines) == q * q + q
    classes = parallel_classes(lines, q)
    ap = AffinePlane(q, tuple(lines), classes)
    rep = validate(ap)
    assert rep.ok, rep.failures[:3]
    return ap


def projective_completion(ap):
    """Append one point per parallel class and the line at infinity (last)."""
    q = ap.order
    class_of = {}
    for c, cls in enumerate(ap.parallel_classes):
        for i in cls:
            class_of[i] = c
    lines = []
    for i, ln in enumerate(ap.lines):
        lines.append(tuple(sorted(ln + (q * q + class_of[i],))))
    lines.append(tuple(range(q * q, q * q + q + 1)))
    return ProjectivePlane(q, tuple(lines))


# -------------------------------------------------------------- Hughes plane

def chi(v):
    """Square indicator on GF(9)*: +1 for the four squares, -1 otherwise."""
    return 1 if F9.pow_(v, 4) == 1 else -1


def nf_mul(a, b):
    """Twisted product a*b: ordinary ab when a is a square (or zero), a*b^3
    when a is not.  (GF(9),+,*) is the regular nearfield of order 9: the
    twist exponent is multiplicative, so * is associative, and the left
    factor distributes over sums."""
    if a == 0 or b == 0:
        return 0
    return F9.mul(a, b if chi(a) == 1 else F9.pow_(b, 3))


def nf_canonical(vec):
    """Scale vec on the left so its first nonzero coordinate becomes 1."""
    v = next(x for x in vec if x != 0)
    k = F9.inv(v) if chi(v) == 1 else F9.inv(F9.pow_(v, 3))
    return tuple(nf_mul(k, x) for x in vec)


def hughes_projective():
    q = 9
    vectors = [v for v in product(range(q), repeat=3) if any(v)]
    points = sorted({nf_canonical(v) for v in vectors})
    assert len(points) == 91
    index = {pt: i for i, pt in enumerate(points)}

    base_lines = {}
    for t in range(1, q):
        sol = {index[nf_canonical(v)] for v in vectors
               if F9.add(F9.add(v[0], nf_mul(v[1], t)), v[2]) == 0}
        assert len(sol) == 10
        base_lines[t] = frozenset(sol)

    mats = [m for m in product(GF3, repeat=9)
            if (m[0] * (m[4] * m[8] - m[5] * m[7])
                - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])) % 3 != 0]
    assert len(mats) == 11232  # |GL(3,3)|

    def act(pt, m):
        # row vector times matrix; entries of m lie in the central GF(3)
        out = []
        for j in range(3):
            s = 0
            for i in range(3):
                s = F9.add(s, F9.mul(pt[i], m[3 * i + j]))
            out.append(s)
        return index[nf_canonical(tuple(out))]

    lines = set()
    for t, base in base_lines.items():
        pts = [points[i] for i in base]
        for m in mats:
            lines.add(frozenset(act(p, m) for p in pts))
    assert len(lines) == 91, len(lines)

    pp = ProjectivePlane(q, tuple(sorted(tuple(sorted(ln)) for ln in lines)))
    rep = validate(pp)
    assert rep.ok, rep.failures[:3]

    # the invariant order-3 subplane: classes of all-subfield vectors
    real = {index[nf_canonical(v)] for v in product(GF3, repeat=3) if any(v)}
    assert len(real) == 13
    meet4 = [i for i, ln in enumerate(pp.lines) if len(real & set(ln)) == 4]
    meet1 = [i for i, ln in enumerate(pp.lines) if len(real & set(ln)) == 1]
    assert len(meet4) == 13 and len(meet1) == 78
    return pp, meet4, meet1


# ------------------------------------------------------------ elation census

def _incidence_tables(pp):
    n = pp.n_points
    pts = [set(ln) for ln in pp.lines]
    line_of = [[None] * n for _ in range(n)]
    for i, ln in enumerate(pp.lines):
        for a in ln:
            for b in ln:
                if a != b:
                    line_of[a][b] = i
    through = [[] for _ in range(n)]
    for i, ln in enumerate(pp.lines):
        for a in ln:
            through[a].append(i)
    meet = {}
    for a in range(n):
        for i in through[a]:
            for j in through[a]:
                if i < j:
                    meet[(i, j)] = a
    return pts, line_of, meet


def _candidate_verifies(pp, tables, axis_idx, center, q_pt, q_img):
    """Try to extend center/axis data plus q_pt -> q_img to a collineation."""
    pts, line_of, meet = tables
    axis = pts[axis_idx]

    def cross(i, j):
        return meet[(i, j)] if i < j else meet[(j, i)]

    meet_axis = {}
    for ln in range(len(pp.lines)):
        if ln != axis_idx:
            meet_axis[ln] = cross(ln, axis_idx)

    pq_line = line_of[center][q_pt]
    image = {}
    for x in axis:
        image[x] = x
    image[q_pt] = q_img
    base = None  # some mapped point off axis and pq_line, for the second pass
    for x in range(pp.n_points):
        if x in axis or x == q_pt or pts[pq_line].__contains__(x):
            continue
        m = meet_axis[line_of[q_pt][x]]
        image[x] = cross(line_of[center][x], line_of[m][q_img])
        if base is None:
            base = x
    for x in pts[pq_line]:
        if x == center or x == q_pt:
            continue
        m = meet_axis[line_of[base][x]]
        image[x] = cross(pq_line, line_of[m][image[base]])

    if len(set(image.values())) != pp.n_points:
        return False
    for ln, members in enumerate(pts):
        it = iter(members)
        a = image[next(it)]
        b = image[next(it)]
        target = pts[line_of[a][b]]
        if any(image[x] not in target for x in it):
            return False
    return True


def elation_census(pp):
    """For each line: how many of the 80 candidate elations verify."""
    tables = _incidence_tables(pp)
    pts = tables[0]
    counts = []
    for axis_idx in range(len(pp.lines)):
        axis = pts[axis_idx]
        q_pt = next(x for x in range(pp.n_points) if x not in axis)
        good = 0
        dead = False
        for center in sorted(axis):
            pq = tables[1][center][q_pt]
            for q_img in pts[pq]:
                if q_img == center or q_img == q_pt:
                    continue
                if _candidate_verifies(pp, tables, axis_idx, center, q_pt, q_img):
                    good += 1
                elif center == sorted(axis)[0]:
                    # one failure already rules out a translation line; finish
                    # the first center for the count, then stop
                    dead = True
            if dead:
                break
        counts.append(good)
    return counts


def translation_lines(census):
    return [i for i, c in enumerate(census) if c == 80]


# ------------------------------------------------------------------- driver

def stamp(plane, provenance, labels=None):
    return replace(plane, provenance=provenance, labels=labels or plane.labels)


def write(name, plane):
    path = os.path.join(DATA_DIR, name + ".json")
    with open(path, "wb") as fh:
        fh.write(save_plane(plane))
    kind = "projective" if isinstance(plane, ProjectivePlane) else "affine"
    print(f"  wrote {name}.json ({kind}, order {plane.order})")


def main():
    os.makedirs(DATA_DIR, exist_ok=True)

    print("PG(2,9) census (checker sanity)...")
    pg = projective_plane(F9)
    pg_census = elation_census(pg)
    assert len(translation_lines(pg_census)) == 91, "PG(2,9) must be transitive"
    print("  91/91 translation lines, as expected")

    print("Hall plane by derivation...")
    hall_aff = derived_hall_affine()
    hall = projective_completion(hall_aff)
    census = elation_census(hall)
    tl = translation_lines(census)
    assert tl == [90], f"expected the appended infinity line, got {tl}"
    dual_census = elation_census(dual_plane(hall))
    dtl = translation_lines(dual_census)
    assert dtl == [], f"Hall transpose should have no translation line, got {dtl}"
    print("  census: translation lines 1 (the infinity line), transpose 0")

    hall_prov = ("Hall plane of order 9: projective completion of the derivation "
                 "of AG(2,9) that trades the four GF(3)-rational parallel classes "
                 "for the coset classes of the subspaces a*GF(3)^2, a in "
                 "{1,x,1+x,2+x} over GF(9)=GF(3)[x]/(x^2+1).  Elation census: "
                 "line 90 admits all 80 nonidentity elations (translation line), "
                 "no other line and no line of the transpose admits them all.")
    hall = stamp(hall, hall_prov, {90: "translation line"})
    write("hall_projective", hall)

    dual_hall = dual_plane(hall)
    dual_prov = ("Incidence transpose of the order-9 Hall plane.  Its lines are "
                 "indexed by Hall points: 81 affine (orbit one), 10 on the "
                 "translation line (orbit two).  Elation census: no translation "
                 "line; the transpose has exactly one.")
    dual_hall = stamp(dual_hall, dual_prov,
                      {0: "dual of an affine point", 81: "dual of a translation-line point"})
    write("dual_hall_projective", dual_hall)

    print("Hughes plane from the twisted multiplication...")
    hughes, meet4, meet1 = hughes_projective()
    census = elation_census(hughes)
    assert translation_lines(census) == [], "Hughes has no translation line"
    dual_census = elation_census(dual_plane(hughes))
    assert translation_lines(dual_census) == [], "nor does its transpose"
    print("  census: no translation line either way; "
          f"{len(meet4)} lines meet the invariant subplane in 4 points")
    hughes_prov = ("Hughes plane of order 9: orbit of the lines x1 + x2*t + x3 = 0 "
                   "under GL(3,3) acting on row vectors over the regular nearfield "
                   "(GF(9) with a*b twisted to a*b^3 for nonsquare a).  13 lines "
                   "meet the invariant order-3 subplane in 4 points, 78 in one.  "
                   "Elation census: no translation line in the plane or its "
                   "transpose.")
    hughes = stamp(hughes, hughes_prov,
                   {meet4[0]: "meets the invariant order-3 subplane in 4 points",
                    meet1[0]: "meets the invariant order-3 subplane in 1 point"})
    write("hughes_projective", hughes)

    print("Affine fixtures...")
    # The transversal-pair minimum is NOT invariant under the choice of the
    # two distinguished classes on the non-Desarguesian planes, so each
    # fixture pins the pair it is meant to be searched with.
    pin = ("  Distinguished class pair for transversal searches: (0, 1).")
    ag = replace(affine_plane(F9),
                 provenance="AG(2,9) over GF(9) = GF(3)[x]/(x^2+1)." + pin)
    write("ag_2_9", ag)

    out = []
    for name, pp, idx in [
        ("hall_translation_deleted", hall, 90),
        ("hall_nontranslation_deleted", hall, 0),
        ("dual_hall_special_deleted", dual_hall, 81),
        ("dual_hall_generic_deleted", dual_hall, 0),
        ("hughes_real_deleted", hughes, meet4[0]),
        ("hughes_generic_deleted", hughes, meet1[0]),
    ]:
        ap = delete_line(pp, idx)
        ap = replace(ap, provenance=ap.provenance + "." + pin)
        write(name, ap)
        out.append(ap)

    for ap in out:
        rep = validate(ap)
        assert rep.ok, rep.failures[:3]
        assert len(ap.parallel_classes) == 10
    print("all affine fixtures validate: 10 parallel classes of 9")


if __name__ == "__main__":
    main()
