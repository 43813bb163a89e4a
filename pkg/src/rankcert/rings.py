"""Supported coefficient rings and exact dense matrices over them.

Five families are available, named in the same grammar the CLI accepts:

    Z           integers
    Z/8         Z/p^n, Artinian local with radical generator c = p
    F2[x]       polynomials over a prime field
    F2[x]/x^3   truncated polynomials, Artinian local with c = x
    F2*F3*F5    finite product of finite fields (von Neumann regular)

Every value is a canonical immutable object, so equality of values is
equality in the ring.  Nonzero elements of the local families are kept
as LocalValue(unit, val) with value = unit * c^val; the unit is the
least representative modulo c^(n-val), which makes the pair unique.
No floating point is used anywhere.
"""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import NamedTuple

from .errors import ParseError, PreconditionError
from .fields import make_field
from .polys import (
    format_poly,
    padd,
    parse_poly,
    pdivides,
    pmul,
    pneg,
    pnormalize,
)


class LocalValue(NamedTuple):
    unit: object
    val: int


class Ring:
    """Common interface; concrete families override everything."""

    spec = ""
    is_local = False
    is_product = False
    is_finite = False

    def normalize(self, raw):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_inverse(self, a):
        raise NotImplementedError

    def ideal_member(self, x, gen) -> bool:
        """True iff x lies in the principal ideal generated by gen."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def elements(self):
        raise PreconditionError(f"{self.spec} is infinite")

    def power(self, a, e: int):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def __eq__(self, other):
        return type(other) is type(self) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Ring({self.spec})"


class IntegerRing(Ring):
    spec = "Z"

    def __init__(self):
        self.zero = 0
        self.one = 1

    def normalize(self, raw):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ParseError(f"bad integer literal {raw!r}")
        return raw

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise PreconditionError(f"{a} is not a unit in Z")
        return a

    def ideal_member(self, x, gen):
        if gen == 0:
            return x == 0
        return x % gen == 0

    def parse(self, text):
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"bad integer literal {text!r}") from None

    def format(self, a):
        return str(a)


class PolyRing(Ring):
    """F_p[x]; values are coefficient tuples, lowest degree first."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.spec = f"F{p}[x]"
        self.zero = ()
        self.one = (1,)

    def normalize(self, raw):
        if isinstance(raw, (list, tuple)):
            return pnormalize(raw, self.p)
        if isinstance(raw, int) and not isinstance(raw, bool):
            return pnormalize((raw,), self.p)
        raise ParseError(f"bad polynomial literal {raw!r}")

    def add(self, a, b):
        return padd(a, b, self.p)

    def neg(self, a):
        return pneg(a, self.p)

    def mul(self, a, b):
        return pmul(a, b, self.p)

    def is_zero(self, a):
        return a == ()

    def is_unit(self, a):
        return len(a) == 1

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise PreconditionError(f"{self.format(a)} is not a unit in {self.spec}")
        return (pow(a[0], -1, self.p),)

    def ideal_member(self, x, gen):
        if not gen:
            return not x
        return pdivides(gen, x, self.p)

    def parse(self, text):
        return parse_poly(text, self.p)

    def format(self, a):
        return format_poly(a)


class _LocalRing(Ring):
    """Shared logic for the two Artinian local families."""

    is_local = True
    is_finite = True

    nil_degree: int  # least n with c^n = 0

    def radical_generator(self):
        raise NotImplementedError

    def _to_raw(self, v: LocalValue):
        raise NotImplementedError

    def valuation(self, a: LocalValue) -> int:
        """Exponent of c in the canonical form; nil_degree for zero."""
        return a.val

    def is_zero(self, a):
        return a.val >= self.nil_degree

    def is_unit(self, a):
        return a.val == 0

    def from_unit_val(self, unit_raw, val: int) -> LocalValue:
        raise NotImplementedError

    def generator_power(self, i: int) -> LocalValue:
        """c^i, with i = nil_degree giving zero."""
        if not 0 <= i <= self.nil_degree:
            raise PreconditionError(f"exponent {i} outside [0, {self.nil_degree}]")
        return self.power(self.radical_generator(), i)


class ModPrimePowerRing(_LocalRing):
    """Z/p^n with radical generator c = p."""

    def __init__(self, p: int, n: int):
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        if n < 1:
            raise ParseError("exponent must be >= 1")
        self.p = p
        self.nil_degree = n
        self.modulus = p**n
        self.size = self.modulus
        self.spec = f"Z/{self.modulus}"
        self.zero = LocalValue(0, n)
        self.one = LocalValue(1, 0)

    def normalize(self, raw):
        if isinstance(raw, LocalValue):
            raw = self._to_raw(raw)
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ParseError(f"bad residue literal {raw!r}")
        r = raw % self.modulus
        if r == 0:
            return self.zero
        val = 0
        while r % self.p == 0:
            r //= self.p
            val += 1
        return LocalValue(r % self.p ** (self.nil_degree - val), val)

    def _to_raw(self, v):
        if v.val >= self.nil_degree:
            return 0
        return (v.unit * self.p**v.val) % self.modulus

    def from_unit_val(self, unit_raw, val):
        if val >= self.nil_degree:
            return self.zero
        return self.normalize(unit_raw * self.p**val)

    def radical_generator(self):
        return self.normalize(self.p)

    def add(self, a, b):
        return self.normalize(self._to_raw(a) + self._to_raw(b))

    def neg(self, a):
        return self.normalize(-self._to_raw(a))

    def mul(self, a, b):
        v = a.val + b.val
        if v >= self.nil_degree:
            return self.zero
        return LocalValue((a.unit * b.unit) % self.p ** (self.nil_degree - v), v)

    def unit_inverse(self, a):
        if a.val != 0:
            raise PreconditionError(f"{self.format(a)} is not a unit in {self.spec}")
        return LocalValue(pow(a.unit, -1, self.modulus), 0)

    def ideal_member(self, x, gen):
        if self.is_zero(x):
            return True
        return x.val >= gen.val

    def parse(self, text):
        try:
            return self.normalize(int(text))
        except ValueError:
            raise ParseError(f"bad residue literal {text!r}") from None

    def format(self, a):
        return str(self._to_raw(a))

    def elements(self):
        return [self.normalize(i) for i in range(self.modulus)]


class TruncatedPolyRing(_LocalRing):
    """F_p[x]/(x^n) with radical generator c = x; units are coefficient tuples."""

    def __init__(self, p: int, n: int):
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        if n < 1:
            raise ParseError("exponent must be >= 1")
        self.p = p
        self.nil_degree = n
        self.size = p**n
        self.spec = f"F{p}[x]/x^{n}"
        self.zero = LocalValue((), n)
        self.one = LocalValue((1,), 0)

    def normalize(self, raw):
        if isinstance(raw, LocalValue):
            raw = self._to_raw(raw)
        if isinstance(raw, int) and not isinstance(raw, bool):
            raw = (raw,)
        if not isinstance(raw, (list, tuple)):
            raise ParseError(f"bad truncated polynomial literal {raw!r}")
        coeffs = pnormalize(tuple(raw)[: self.nil_degree], self.p)
        if not coeffs:
            return self.zero
        val = next(i for i, c in enumerate(coeffs) if c != 0)
        return LocalValue(coeffs[val:], val)

    def _to_raw(self, v):
        if v.val >= self.nil_degree:
            return ()
        return (0,) * v.val + tuple(v.unit)

    def from_unit_val(self, unit_raw, val):
        if val >= self.nil_degree:
            return self.zero
        unit = pnormalize(unit_raw, self.p)
        return self.normalize((0,) * val + unit)

    def radical_generator(self):
        return self.normalize((0, 1))

    def add(self, a, b):
        return self.normalize(padd(self._to_raw(a), self._to_raw(b), self.p))

    def neg(self, a):
        return self.normalize(pneg(self._to_raw(a), self.p))

    def mul(self, a, b):
        v = a.val + b.val
        if v >= self.nil_degree:
            return self.zero
        unit = pmul(a.unit, b.unit, self.p)[: self.nil_degree - v]
        return LocalValue(pnormalize(unit, self.p), v)

    def unit_inverse(self, a):
        if a.val != 0:
            raise PreconditionError(f"{self.format(a)} is not a unit in {self.spec}")
        # power series inversion of the unit up to degree n-1
        u = self._to_raw(a)
        inv0 = pow(u[0], -1, self.p)
        w = [inv0] + [0] * (self.nil_degree - 1)
        for k in range(1, self.nil_degree):
            acc = 0
            for i in range(1, k + 1):
                if i < len(u):
                    acc += u[i] * w[k - i]
            w[k] = (-inv0 * acc) % self.p
        return self.normalize(w)

    def ideal_member(self, x, gen):
        if self.is_zero(x):
            return True
        return x.val >= gen.val

    def parse(self, text):
        return self.normalize(parse_poly(text, self.p))

    def format(self, a):
        return format_poly(self._to_raw(a))

    def elements(self):
        out = []
        for coeffs in product(range(self.p), repeat=self.nil_degree):
            out.append(self.normalize(coeffs))
        return out


class FieldProductRing(Ring):
    """Finite product of finite fields; values are tuples of field encodings."""

    is_product = True
    is_finite = True

    def __init__(self, orders):
        if not orders:
            raise ParseError("empty field product")
        self.orders = tuple(int(q) for q in orders)
        self.fields = tuple(make_field(q) for q in self.orders)
        self.width = len(self.fields)
        self.spec = "*".join(f"F{q}" for q in self.orders)
        self.size = 1
        for q in self.orders:
            self.size *= q
        self.zero = (0,) * self.width
        self.one = (1,) * self.width

    def normalize(self, raw):
        if isinstance(raw, int) and not isinstance(raw, bool):
            # diagonal embedding of integers; constant coefficients live in F_p
            return tuple(raw % f.p for f in self.fields)
        if not isinstance(raw, (list, tuple)) or len(raw) != self.width:
            raise ParseError(f"bad product literal {raw!r}")
        out = []
        for c, f in zip(raw, self.fields):
            c = int(c)
            if not 0 <= c < f.size:
                raise ParseError(f"component {c} out of range for {f!r}")
            out.append(c)
        return tuple(out)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.fields, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.fields, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.fields, a, b))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def is_unit(self, a):
        return all(x != 0 for x in a)

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise PreconditionError(f"{self.format(a)} is not a unit in {self.spec}")
        return tuple(f.inv(x) for f, x in zip(self.fields, a))

    def ideal_member(self, x, gen):
        return all(g != 0 or c == 0 for c, g in zip(x, gen))

    def parse(self, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ParseError(f"product literal must look like (a,b,...): {text!r}")
        parts = s[1:-1].split(",")
        if len(parts) != self.width:
            raise ParseError(f"expected {self.width} components in {text!r}")
        try:
            return self.normalize([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"bad product literal {text!r}") from None

    def format(self, a):
        return "(" + ",".join(str(c) for c in a) + ")"

    def elements(self):
        return [tuple(t) for t in product(*(range(f.size) for f in self.fields))]

    def component_grid(self, M: "Matrix", i: int):
        """Entries of M projected to the i-th field, as tuple-of-tuples."""
        return tuple(tuple(e[i] for e in row) for row in M.entries)


_PRODUCT_RE = re.compile(r"^F(\d+)(\*F\d+)*$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def parse_ring(text: str) -> Ring:
    """Parse a ring spec such as Z, Z/8, F2[x], F2[x]/x^3, F2*F3*F5."""
    s = text.strip()
    if s == "Z":
        return IntegerRing()
    m = re.match(r"^Z/(\d+)$", s)
    if m:
        q = int(m.group(1))
        p, n = _factor_prime_power_or_raise(q)
        return ModPrimePowerRing(p, n)
    m = re.match(r"^F(\d+)\[x\]/x\^(\d+)$", s)
    if m:
        return TruncatedPolyRing(int(m.group(1)), int(m.group(2)))
    m = re.match(r"^F(\d+)\[x\]$", s)
    if m:
        return PolyRing(int(m.group(1)))
    if _PRODUCT_RE.match(s):
        return FieldProductRing([int(t[1:]) for t in s.split("*")])
    raise ParseError(f"unrecognized ring spec {text!r}")


def _factor_prime_power_or_raise(q: int):
    from .fields import factor_prime_power

    try:
        return factor_prime_power(q)
    except ParseError:
        raise ParseError(f"{q} is not a prime power") from None


class Matrix:
    """Immutable rectangular matrix of normalized ring values."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: Ring, rows):
        entries = tuple(tuple(ring.normalize(x) for x in row) for row in rows)
        if not entries or any(len(r) == 0 for r in entries):
            raise PreconditionError("matrices must have at least one row and column")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise PreconditionError("ragged matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return self.entries[i][j]

    def to_strings(self):
        return [[self.ring.format(x) for x in row] for row in self.entries]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.ring == self.ring
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        return f"Matrix({self.ring.spec}, {self.to_strings()})"


def matrix(ring: Ring, rows) -> Matrix:
    return Matrix(ring, rows)


def parse_matrix(ring: Ring, rows_of_strings) -> Matrix:
    return Matrix(ring, [[ring.parse(s) for s in row] for row in rows_of_strings])


def identity(ring: Ring, m: int) -> Matrix:
    if m < 1:
        raise PreconditionError("identity size must be >= 1")
    return Matrix(
        ring, [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
    )


def zeros(ring: Ring, r: int, c: int) -> Matrix:
    return Matrix(ring, [[ring.zero] * c for _ in range(r)])


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.ring != B.ring:
        raise PreconditionError("matrix product over different rings")
    if A.cols != B.rows:
        raise PreconditionError(f"cannot multiply {A.shape} by {B.shape}")
    ring = A.ring
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = ring.zero
            for t in range(A.cols):
                acc = ring.add(acc, ring.mul(A.entries[i][t], B.entries[t][j]))
            row.append(acc)
        out.append(row)
    return Matrix(ring, out)


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    if A.ring != B.ring:
        raise PreconditionError("block sum over different rings")
    ring = A.ring
    out = []
    for row in A.entries:
        out.append(list(row) + [ring.zero] * B.cols)
    for row in B.entries:
        out.append([ring.zero] * A.cols + list(row))
    return Matrix(ring, out)


def block_upper(A: Matrix, C: Matrix, B: Matrix) -> Matrix:
    """[[A, C], [0, B]]; C must be A.rows x B.cols."""
    if not (A.ring == B.ring == C.ring):
        raise PreconditionError("block sum over different rings")
    if C.rows != A.rows or C.cols != B.cols:
        raise PreconditionError("off-diagonal block has wrong shape")
    ring = A.ring
    out = []
    for ra, rc in zip(A.entries, C.entries):
        out.append(list(ra) + list(rc))
    for rb in B.entries:
        out.append([ring.zero] * A.cols + list(rb))
    return Matrix(ring, out)


def stack_vertical(A: Matrix, B: Matrix) -> Matrix:
    if A.ring != B.ring or A.cols != B.cols:
        raise PreconditionError("vertical stack needs equal column counts")
    return Matrix(A.ring, list(A.entries) + list(B.entries))


def det(M: Matrix):
    if M.rows != M.cols:
        raise PreconditionError("determinant of a non-square matrix")
    return _det_grid(M.ring, M.entries)


def _det_grid(ring: Ring, grid):
    """Cofactor expansion along the first row; valid over any commutative ring."""
    n = len(grid)
    memo = {}

    def rec(cols):
        r = n - len(cols)
        if not cols:
            return ring.one
        if cols in memo:
            return memo[cols]
        acc = ring.zero
        for idx, c in enumerate(cols):
            x = grid[r][c]
            if ring.is_zero(x):
                continue
            term = ring.mul(x, rec(cols[:idx] + cols[idx + 1 :]))
            acc = ring.add(acc, term) if idx % 2 == 0 else ring.sub(acc, term)
        memo[cols] = acc
        return acc

    return rec(tuple(range(n)))


def minor(M: Matrix, rows, cols):
    """Determinant of the submatrix with the given row/column index sets."""
    rows = sorted(rows)
    cols = sorted(cols)
    k = len(rows)
    if k == 0 or k != len(cols):
        raise PreconditionError("minor needs equal nonempty row and column sets")
    if len(set(rows)) != k or len(set(cols)) != k:
        raise PreconditionError("minor index sets must not repeat")
    if rows[0] < 0 or rows[-1] >= M.rows or cols[0] < 0 or cols[-1] >= M.cols:
        raise PreconditionError("minor index out of range")
    grid = tuple(tuple(M.entries[i][j] for j in cols) for i in rows)
    return _det_grid(M.ring, grid)


def minors_in_ideal(M: Matrix, k: int, gen) -> bool:
    """True iff every k x k minor of M lies in the ideal generated by gen."""
    if not 1 <= k <= min(M.rows, M.cols):
        raise PreconditionError(f"minor size {k} outside [1, {min(M.rows, M.cols)}]")
    gen = M.ring.normalize(gen)
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            if not M.ring.ideal_member(minor(M, rows, cols), gen):
                return False
    return True


def is_invertible(M: Matrix) -> bool:
    if M.rows != M.cols:
        raise PreconditionError("invertibility needs a square matrix")
    return M.ring.is_unit(det(M))
