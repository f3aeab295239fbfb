"""Exact arithmetic in GF(p^k) and Z_n, plus dense linear algebra over the field.

Field elements are encoded as integers 0..q-1 read base-p: the digits are the
coefficients of the residue polynomial, constant term in the least significant
digit.  The encoding gives every field a canonical total order, which the rest
of the toolkit relies on whenever permutations are compared lexicographically.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, NotPrimePower

# Extension fields up to this order get dense op tables; beyond it every
# operation falls back to polynomial arithmetic.
_TABLE_LIMIT = 1024


def _digits(e, p, k):
    out = []
    for _ in range(k):
        out.append(e % p)
        e //= p
    return out


def _undigits(ds, p):
    e = 0
    for d in reversed(ds):
        e = e * p + d
    return e


def _poly_divmod(num, den, p):
    """Divide coefficient lists (constant term first) over GF(p)."""
    num = list(num)
    dn = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dn -= 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c == 0:
            continue
        f = (c * inv_lead) % p
        quot[i - dn] = f
        for j, d in enumerate(den):
            num[i - dn + j] = (num[i - dn + j] - f * d) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_is_zero(poly):
    return all(c == 0 for c in poly)


def _irreducible(coeffs, p):
    """Monic polynomial irreducible over GF(p)?  Trial division by every monic
    polynomial of degree 1..deg/2; fine at the orders this toolkit targets."""
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for m in range(p**d):
            den = _digits(m, p, d) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if _poly_is_zero(rem):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic context for GF(p^k).  `modulus` holds the k+1 coefficients of
    the monic reduction polynomial, constant term first; empty for k = 1."""

    p: int
    k: int
    modulus: tuple = ()

    @property
    def q(self):
        return self.p**self.k

    def elements(self):
        return range(self.q)

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        t = _tables(self)
        if t is not None:
            return t.add[a][b]
        p = self.p
        da, db = _digits(a, p, self.k), _digits(b, p, self.k)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        t = _tables(self)
        if t is not None:
            return t.neg[a]
        p = self.p
        return _undigits([(-x) % p for x in _digits(a, p, self.k)], p)

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        t = _tables(self)
        if t is not None:
            return t.mul[a][b]
        return self._polymul(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        t = _tables(self)
        if t is not None:
            return t.inv[a]
        return self.pow_(a, self.q - 2)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return self.mul(a, self.inv(b))

    def pow_(self, a, e):
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def _polymul(self, a, b):
        p, k = self.p, self.k
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _poly_divmod(prod, list(self.modulus), p)
        rem += [0] * (k - len(rem))
        return _undigits(rem[:k], p)


class _OpTables:
    __slots__ = ("add", "neg", "mul", "inv")

    def __init__(self, spec):
        q, p, k = spec.q, spec.p, spec.k
        digs = [_digits(e, p, k) for e in range(q)]
        self.neg = [_undigits([(-x) % p for x in digs[e]], p) for e in range(q)]
        self.add = [
            [_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q)]
            for a in range(q)
        ]
        self.mul = [[spec._polymul(a, b) for b in range(q)] for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[self.mul[a].index(1)] = a


@lru_cache(maxsize=None)
def _tables(spec):
    if spec.q > _TABLE_LIMIT:
        return None
    return _OpTables(spec)


@dataclass(frozen=True)
class RingSpec:
    """Arithmetic context for Z_n.  No division: Z_n has zero divisors."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ring modulus must be at least 2")

    def elements(self):
        return range(self.n)

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n


def field_make(q):
    """Build the FieldSpec of order q = p^k, choosing for k > 1 the
    lexicographically least monic irreducible modulus (high-to-low coefficient
    vectors compared as base-p numbers).  Raises NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = None
    for d in range(2, q + 1):
        if d * d > q:
            p = q  # q itself is prime
            break
        if q % d == 0:
            p = d
            break
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    if k == 1:
        return FieldSpec(p, 1, ())
    for upper in range(q):
        coeffs = _digits(upper, p, k) + [1]
        if _irreducible(coeffs, p):
            return FieldSpec(p, k, tuple(coeffs))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_arith(spec, op, *operands):
    """Dispatch a named field operation; validates encodings."""
    q = spec.q
    for v in operands:
        if not (0 <= v < q) and op != "pow":
            raise ValueError(f"{v} is not a valid element of GF({q})")
    if op == "add":
        return spec.add(*operands)
    if op == "sub":
        return spec.sub(*operands)
    if op == "mul":
        return spec.mul(*operands)
    if op == "div":
        return spec.div(*operands)
    if op == "neg":
        return spec.neg(*operands)
    if op == "inv":
        return spec.inv(*operands)
    if op == "pow":
        a, e = operands
        if not 0 <= a < q:
            raise ValueError(f"{a} is not a valid element of GF({q})")
        return spec.pow_(a, e)
    raise ValueError(f"unknown field operation {op!r}")


def ring_arith(spec, op, *operands):
    """Dispatch a named Z_n operation (add, sub, mul, neg only)."""
    for v in operands:
        if not 0 <= v < spec.n:
            raise ValueError(f"{v} is not a valid element of Z_{spec.n}")
    if op == "add":
        return spec.add(*operands)
    if op == "sub":
        return spec.sub(*operands)
    if op == "mul":
        return spec.mul(*operands)
    if op == "neg":
        return spec.neg(*operands)
    raise ValueError(f"unknown ring operation {op!r}")


@dataclass(frozen=True)
class FFMatrix:
    """Dense row-major matrix over a FieldSpec."""

    spec: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows x cols")
        q = self.spec.q
        if any(not 0 <= e < q for e in self.entries):
            raise ValueError("entry out of range for the ambient field")

    def at(self, i, j):
        return self.entries[i * self.cols + j]


def nullspace(m):
    """Basis of the right nullspace of `m`, reduced echelon convention: one
    vector per free column in ascending index order, the free variable set to 1
    and pivot variables back-substituted."""
    f = m.spec
    rows = [list(m.entries[i * m.cols : (i + 1) * m.cols]) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    pivot_of_col = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [f.sub(a, f.mul(fac, b)) for a, b in zip(rows[i], rows[r])]
        pivot_of_col[c] = r
        r += 1
    basis = []
    for c in range(ncols):
        if c in pivot_of_col:
            continue
        v = [0] * ncols
        v[c] = 1
        for pc, pr in pivot_of_col.items():
            v[pc] = f.neg(rows[pr][c])
        basis.append(tuple(v))
    return basis
