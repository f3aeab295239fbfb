"""Finite affine and projective planes as explicit incidence structures.

Desarguesian planes are built from a FieldSpec; anything else (the order-9
fixtures) enters through the JSON loader, which validates the plane axioms
before handing the structure to the rest of the toolkit.  All indexing is
deterministic so downstream search witnesses are reproducible byte-for-byte.
"""

import json
from dataclasses import dataclass, field

from .errors import ClassesNotDistinct, NotAPlane, ParseError


@dataclass(frozen=True)
class AffinePlane:
    """Order-q affine plane on points 0..q^2-1.  Lines are sorted point
    tuples; parallel_classes partitions the line indices, q+1 classes of q."""

    order: int
    lines: tuple
    parallel_classes: tuple
    labels: dict = field(default_factory=dict, compare=True)
    provenance: str = ""

    @property
    def n_points(self):
        return self.order * self.order

    def lines_through(self, point):
        return [i for i, ln in enumerate(self.lines) if point in ln]


@dataclass(frozen=True)
class ProjectivePlane:
    """Order-q projective plane on points 0..q^2+q."""

    order: int
    lines: tuple
    labels: dict = field(default_factory=dict, compare=True)
    provenance: str = ""

    @property
    def n_points(self):
        return self.order * self.order + self.order + 1

    def lines_through(self, point):
        return [i for i, ln in enumerate(self.lines) if point in ln]


def affine_plane(f):
    """AG(2, q) over the field f.  Point (x, y) is index x*q + y; line
    indices run through the q slope classes (s*q + b) and then verticals."""
    q = f.q
    lines = []
    for s in range(q):
        for b in range(q):
            lines.append(tuple(sorted(x * q + f.add(f.mul(s, x), b) for x in range(q))))
    for c in range(q):
        lines.append(tuple(c * q + y for y in range(q)))
    classes = [tuple(range(s * q, s * q + q)) for s in range(q)]
    classes.append(tuple(range(q * q, q * q + q)))
    return AffinePlane(q, tuple(lines), tuple(classes))


def _proj_points(q):
    """Normalized homogeneous triples, last nonzero coordinate equal to 1:
    (x, y, 1) in x*q+y order, then (x, 1, 0), then (1, 0, 0)."""
    pts = [(x, y, 1) for x in range(q) for y in range(q)]
    pts += [(x, 1, 0) for x in range(q)]
    pts.append((1, 0, 0))
    return pts


def projective_plane(f):
    """PG(2, q): lines are the solution sets of ax + by + cz = 0 with the
    coefficient triple normalized and enumerated the same way as points."""
    q = f.q
    pts = _proj_points(q)
    lines = []
    for a, b, c in pts:  # self-dual enumeration of coefficient triples
        on = []
        for i, (x, y, z) in enumerate(pts):
            s = f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z))
            if s == 0:
                on.append(i)
        lines.append(tuple(on))
    return ProjectivePlane(q, tuple(lines))


def delete_line(pp, line_index):
    """Affine restriction of pp: drop the chosen line and its points.

    Surviving points are renumbered in ascending old order; surviving lines
    keep their relative order; parallel classes group lines by the deleted
    point they used to pass through."""
    q = pp.order
    if not 0 <= line_index < len(pp.lines):
        raise IndexError(f"line index {line_index} out of range")
    removed = set(pp.lines[line_index])
    keep = [p for p in range(pp.n_points) if p not in removed]
    new_index = {p: i for i, p in enumerate(keep)}
    lines = []
    meets = []  # deleted point each survivor passed through
    labels = {}
    for i, ln in enumerate(pp.lines):
        if i == line_index:
            continue
        hit = [p for p in ln if p in removed]
        if len(hit) != 1:
            raise NotAPlane(f"line {i} meets the deleted line in {len(hit)} points")
        meets.append(hit[0])
        if i in pp.labels:
            labels[len(lines)] = pp.labels[i]
        lines.append(tuple(sorted(new_index[p] for p in ln if p not in removed)))
    by_point = {}
    for j, m in enumerate(meets):
        by_point.setdefault(m, []).append(j)
    classes = tuple(tuple(v) for v in sorted(by_point.values(), key=lambda v: v[0]))
    note = f"deleted line {line_index}"
    if line_index in pp.labels:
        note += f" ({pp.labels[line_index]})"
    prov = (pp.provenance + "; " if pp.provenance else "") + note
    return AffinePlane(q, tuple(lines), classes, labels, prov)


def parallel_classes(lines, q):
    """Partition line indices by the relation "equal or disjoint", verifying
    first that the lines form an affine plane of order q."""
    lines = [tuple(sorted(ln)) for ln in lines]
    if len(lines) != q * q + q:
        raise NotAPlane(f"expected {q*q+q} lines, got {len(lines)}")
    seen = {}
    for i, ln in enumerate(lines):
        if len(ln) != q:
            raise NotAPlane(f"line {i} has {len(ln)} points")
        for a in range(q):
            for b in range(a + 1, q):
                pair = (ln[a], ln[b])
                if pair in seen:
                    raise NotAPlane(f"pair {pair} on lines {seen[pair]} and {i}")
                seen[pair] = i
    if len(seen) != q * q * (q * q - 1) // 2:
        raise NotAPlane("some point pair lies on no line")
    par = []
    for i, ln in enumerate(lines):
        s = set(ln)
        par.append(frozenset(j for j, other in enumerate(lines) if i == j or not s & set(other)))
    for i, cls in enumerate(par):
        if len(cls) != q:
            raise NotAPlane(f"line {i} is parallel to {len(cls)-1} others, expected {q-1}")
        for j in cls:
            if par[j] != cls:
                raise NotAPlane(f"parallelism not transitive at lines {i}, {j}")
    classes = sorted({cls for cls in par}, key=min)
    return tuple(tuple(sorted(cls)) for cls in classes)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


_FAILURE_CAP = 100


def validate(plane):
    """Check every type invariant; the report carries one message per violated
    axiom instance, each with a witness."""
    fails = []

    def note(msg):
        if len(fails) < _FAILURE_CAP:
            fails.append(msg)

    q = plane.order
    n = plane.n_points
    projective = isinstance(plane, ProjectivePlane)
    want_lines = q * q + q + 1 if projective else q * q + q
    want_size = q + 1 if projective else q
    if len(plane.lines) != want_lines:
        note(f"line count {len(plane.lines)}, expected {want_lines}")
    cover = {}
    for i, ln in enumerate(plane.lines):
        if len(set(ln)) != want_size:
            note(f"line {i} has {len(set(ln))} distinct points, expected {want_size}")
        for p in ln:
            if not 0 <= p < n:
                note(f"line {i} contains out-of-range point {p}")
        sl = sorted(set(ln))
        for a in range(len(sl)):
            for b in range(a + 1, len(sl)):
                cover.setdefault((sl[a], sl[b]), []).append(i)
    for x in range(n):
        for y in range(x + 1, n):
            hits = cover.get((x, y), [])
            if len(hits) != 1:
                note(f"pair ({x}, {y}) lies on {len(hits)} lines: {hits}")
    if projective:
        for i in range(len(plane.lines)):
            si = set(plane.lines[i])
            for j in range(i + 1, len(plane.lines)):
                m = len(si & set(plane.lines[j]))
                if m != 1:
                    note(f"lines {i} and {j} meet in {m} points")
        deg = [0] * n
        for ln in plane.lines:
            for p in set(ln):
                deg[p] += 1
        for p, d in enumerate(deg):
            if d != q + 1:
                note(f"point {p} lies on {d} lines, expected {q+1}")
    else:
        cls = plane.parallel_classes
        if len(cls) != q + 1:
            note(f"{len(cls)} parallel classes, expected {q+1}")
        used = [j for c in cls for j in c]
        if sorted(used) != list(range(len(plane.lines))):
            note("parallel classes are not a partition of the line indices")
        for ci, c in enumerate(cls):
            if len(c) != q:
                note(f"class {ci} has {len(c)} lines, expected {q}")
            pts = [p for j in c if j < len(plane.lines) for p in plane.lines[j]]
            if len(pts) != len(set(pts)) or len(set(pts)) != n:
                note(f"class {ci} does not partition the point set")
    return ValidationReport(not fails, tuple(fails))


def plane_grid(ap, h_class, v_class):
    """Coordinatize the plane by two parallel classes: grid[i][j] is the point
    where line i of the h class meets line j of the v class."""
    n_cls = len(ap.parallel_classes)
    if not (0 <= h_class < n_cls and 0 <= v_class < n_cls):
        raise ValueError("parallel class index out of range")
    if h_class == v_class:
        raise ClassesNotDistinct("grid needs two different classes")
    q = ap.order
    col_of = {}
    for j, vline in enumerate(ap.parallel_classes[v_class]):
        for p in ap.lines[vline]:
            col_of[p] = j
    grid = [[None] * q for _ in range(q)]
    for i, hline in enumerate(ap.parallel_classes[h_class]):
        for p in ap.lines[hline]:
            grid[i][col_of[p]] = p
    return grid


def dual_plane(pp):
    """Transpose the incidence relation: point i of the dual is line i of pp,
    and dual line j collects the lines of pp through point j."""
    lines = []
    for p in range(pp.n_points):
        lines.append(tuple(i for i, ln in enumerate(pp.lines) if p in ln))
    return ProjectivePlane(pp.order, tuple(lines), {}, pp.provenance)


def save_plane(plane):
    """Serialize to the JSON interchange format (UTF-8 bytes)."""
    obj = {
        "type": "projective" if isinstance(plane, ProjectivePlane) else "affine",
        "order": plane.order,
        "points": plane.n_points,
        "lines": [list(ln) for ln in plane.lines],
    }
    if isinstance(plane, AffinePlane):
        obj["parallel_classes"] = [list(c) for c in plane.parallel_classes]
    if plane.labels:
        obj["labels"] = {str(i): tag for i, tag in sorted(plane.labels.items())}
    if plane.provenance:
        obj["provenance"] = plane.provenance
    return json.dumps(obj, indent=1).encode()


def load_plane(data, strict=True):
    """Parse and fully validate a plane file; validation failures are fatal.
    strict=False skips the axiom check (parse errors stay fatal) so a caller
    can collect the full violation report itself."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(str(e)) from e
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"not valid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object")
    for key in ("type", "order", "points", "lines"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    kind = obj["type"]
    if kind not in ("affine", "projective"):
        raise ParseError(f"unknown plane type {kind!r}")
    order = obj["order"]
    if not isinstance(order, int) or order < 2:
        raise ParseError("order must be an integer >= 2")
    if not isinstance(obj["lines"], list):
        raise ParseError("lines must be an array")
    lines = []
    for ln in obj["lines"]:
        if not isinstance(ln, list) or not all(isinstance(p, int) for p in ln):
            raise ParseError("each line must be an array of integers")
        lines.append(tuple(sorted(ln)))
    n_expect = order * order + (order + 1 if kind == "projective" else 0)
    if obj["points"] != n_expect:
        raise NotAPlane(f"point count {obj['points']}, expected {n_expect} for order {order}")
    labels = {}
    for k, v in obj.get("labels", {}).items():
        try:
            labels[int(k)] = str(v)
        except ValueError as e:
            raise ParseError(f"label key {k!r} is not a line index") from e
    prov = str(obj.get("provenance", ""))
    if kind == "projective":
        plane = ProjectivePlane(order, tuple(lines), labels, prov)
    else:
        if "parallel_classes" in obj:
            classes = tuple(tuple(c) for c in obj["parallel_classes"])
        else:
            classes = parallel_classes(lines, order)
        plane = AffinePlane(order, tuple(lines), classes, labels, prov)
    if strict:
        report = validate(plane)
        if not report.ok:
            raise NotAPlane(report.failures[0])
    return plane
