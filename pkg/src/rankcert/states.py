"""States of the class monoid: cones, ranges, extensions, pullbacks.

The Grothendieck group of a free class monoid is Z^width; an element
[a] - [b] is stored as a reduced (pos, neg) pair.  State ranges come
from enumerating order relations against the order-unit v = <1>:

    p = sup { (n - k)/m : n * v <= m * a + k * v }
    q = inf { (n - k)/m : n * v >= m * a + k * v }

and every returned endpoint carries the witness relation that achieved
it.  The same enumeration against a finitely generated subsemigroup
with prescribed values gives the extension interval endpoints, with an
optional shifted variant allowing relations b + t * a <= c + (m + t) * a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundExceededError, PreconditionError, SearchBudgetError
from .fields import ExtensionField, PrimeField, field_rank
from .polys import is_irreducible, pdivmod, pscale
from .rings import IntegerRing, Matrix, PolyRing
from .semigroup import (
    Positive,
    check_element,
    leq,
    leq_provable,
    minor_refutation,
    monoid_add,
    monoid_identity,
    monoid_scale,
    order_unit,
    rank_profile,
    verify_formal_certificate,
)


# ---------------------------------------------------------------------------
# Grothendieck group elements and the positive cone


@dataclass(frozen=True)
class GroupElement:
    """[pos] - [neg], componentwise reduced so min(pos_i, neg_i) = 0."""

    pos: tuple
    neg: tuple


def group_element(a, b) -> GroupElement:
    if len(a) != len(b):
        raise PreconditionError("group element over mismatched monoids")
    diff = [x - y for x, y in zip(a, b)]
    pos = tuple(max(d, 0) for d in diff)
    neg = tuple(max(-d, 0) for d in diff)
    return GroupElement(pos, neg)


def group_diff(g: GroupElement) -> tuple:
    return tuple(p - n for p, n in zip(g.pos, g.neg))


def group_add(g: GroupElement, h: GroupElement) -> GroupElement:
    return group_element(monoid_add(g.pos, h.pos), monoid_add(g.neg, h.neg))


def group_neg(g: GroupElement) -> GroupElement:
    return GroupElement(g.neg, g.pos)


def group_sub(g: GroupElement, h: GroupElement) -> GroupElement:
    return group_add(g, group_neg(h))


def cone_member(ring, g: GroupElement) -> bool:
    """[a] - [b] is positive iff b + c <= a + c for some c.

    For the rank-induced local order and the componentwise regular
    order the relation is additive, so the c is irrelevant and the
    comparison reduces to leq(neg, pos).
    """
    return leq(ring, check_element(ring, g.neg), check_element(ring, g.pos))


@dataclass(frozen=True)
class GroupLawReport:
    closure_ok: bool
    antisymmetry_ok: bool
    order_unit_ok: bool
    elements_checked: int
    failures: tuple


def group_props_check(ring, max_norm: int = 3) -> GroupLawReport:
    """Exhaustive group-law check on elements [x] - [y], ||x||, ||y|| <= max_norm."""
    width = len(monoid_identity(ring))
    vecs = _vectors_up_to(width, max_norm)
    elems = [group_element(x, y) for x in vecs for y in vecs]
    members = [g for g in elems if cone_member(ring, g)]
    failures = []

    for g in members:
        for h in members:
            if not cone_member(ring, group_add(g, h)):
                failures.append(("closure", g, h))
    closure_ok = not failures

    anti = [
        g for g in members if cone_member(ring, group_neg(g)) and any(group_diff(g))
    ]
    antisymmetry_ok = not anti
    failures.extend(("antisymmetry", g) for g in anti)

    v = order_unit(ring)
    unit_ok = True
    bound = max_norm * max(1, width) + 1
    for g in elems:
        if not any(
            cone_member(ring, group_sub(group_element(monoid_scale(t, v), monoid_identity(ring)), g))
            for t in range(bound + 1)
        ):
            unit_ok = False
            failures.append(("order-unit", g))
    return GroupLawReport(
        closure_ok, antisymmetry_ok, unit_ok, len(elems), tuple(failures)
    )


def _vectors_up_to(width: int, norm: int):
    out = [()]
    for _ in range(width):
        out = [v + (t,) for v in out for t in range(norm + 1)]
    return [v for v in out if sum(v) <= norm]


# ---------------------------------------------------------------------------
# state ranges against the order-unit


@dataclass(frozen=True)
class StateRange:
    p_lb: Fraction
    q_ub: Fraction
    p_witness: tuple
    q_witness: tuple
    exact: object  # (low, high) Fractions when extreme states are known


def check_states_exist(ring, limit: int):
    """Raise unless (m+1)v is incomparable above m * v for all m <= limit."""
    v = order_unit(ring)
    for m in range(1, limit + 1):
        if leq(ring, monoid_scale(m + 1, v), monoid_scale(m, v)):
            raise PreconditionError(
                f"no states exist: {m + 1} * <1> <= {m} * <1> over {ring.spec}"
            )


def _exact_interval(ring, a):
    if ring.is_local:
        profile = rank_profile(ring, a)
        return (min(profile), max(profile))
    return (Fraction(min(a)), Fraction(max(a)))


def state_range(ring, a, n_bound: int = 12, m_bound: int = 12) -> StateRange:
    a = check_element(ring, a)
    if n_bound < 1 or m_bound < 1:
        raise PreconditionError("bounds must be >= 1")
    check_states_exist(ring, n_bound)
    v = order_unit(ring)
    best_p = best_q = None
    for n in range(n_bound + 1):
        lhs = monoid_scale(n, v)
        for k in range(n_bound + 1):
            for m in range(1, m_bound + 1):
                rhs = monoid_add(monoid_scale(m, a), monoid_scale(k, v))
                val = Fraction(n - k, m)
                if (best_p is None or val > best_p[0]) and leq(ring, lhs, rhs):
                    best_p = (val, (n, k, m))
                if (best_q is None or val < best_q[0]) and leq(ring, rhs, lhs):
                    best_q = (val, (n, k, m))
    if best_p is None or best_q is None:
        raise BoundExceededError(
            f"no witness relation found within bounds ({n_bound}, {m_bound})"
        )
    return StateRange(
        p_lb=best_p[0],
        q_ub=best_q[0],
        p_witness=best_p[1],
        q_witness=best_q[1],
        exact=_exact_interval(ring, a),
    )


# ---------------------------------------------------------------------------
# state extension from a finitely generated subsemigroup


@dataclass(frozen=True)
class StateSpec:
    generators: tuple  # monoid elements
    values: tuple  # Fractions, one per generator


def _span_with_values(ring, spec: StateSpec, ball: int):
    """Elements of the generated subsemigroup with ||.||_1 <= ball.

    Returns {element: value}; additivity conflicts and monotonicity
    violations on provable relations are rejected.
    """
    gens = [check_element(ring, g) for g in spec.generators]
    vals = [Fraction(v) for v in spec.values]
    if len(gens) != len(vals):
        raise PreconditionError("generator/value length mismatch")
    zero = monoid_identity(ring)
    elems = {}

    def visit(idx, cur, val):
        if idx == len(gens):
            prev = elems.get(cur)
            if prev is not None and prev != val:
                raise PreconditionError(
                    f"state spec is inconsistent: element {cur} gets values {prev} and {val}"
                )
            elems.setdefault(cur, val)
            return
        g, gv = gens[idx], vals[idx]
        t = 0
        elt, value = cur, val
        while sum(elt) <= ball:
            visit(idx + 1, elt, value)
            if sum(g) == 0 and t >= 1:
                break
            elt = monoid_add(elt, g)
            value = value + gv
            t += 1

    visit(0, zero, Fraction(0))

    ordered = sorted(elems)
    for x in ordered:
        for y in ordered:
            if elems[x] > elems[y] and leq(ring, x, y):
                raise PreconditionError(
                    f"state spec is inconsistent: {x} <= {y} but value "
                    f"{elems[x]} > {elems[y]}"
                )
    return elems


def state_extension(
    ring,
    spec: StateSpec,
    a,
    ball: int = 12,
    m_bound: int = 12,
    shifted: bool = False,
) -> StateRange:
    a = check_element(ring, a)
    check_states_exist(ring, max(ball, 1))
    v = order_unit(ring)
    elems = _span_with_values(ring, spec, ball)
    if elems.get(v) != Fraction(1):
        raise PreconditionError(
            "state spec must contain the order-unit <1> with value 1"
        )
    shifts = range(m_bound + 1) if shifted else (0,)
    best_p = best_q = None
    for b in sorted(elems):
        vb = elems[b]
        for c in sorted(elems):
            vc = elems[c]
            for m in range(1, m_bound + 1):
                val = Fraction(vb - vc, m)
                for mbar in shifts:
                    lhs = monoid_add(b, monoid_scale(mbar, a))
                    rhs = monoid_add(c, monoid_scale(m + mbar, a))
                    if (best_p is None or val > best_p[0]) and leq(ring, lhs, rhs):
                        best_p = (val, (b, c, m, mbar))
                    if (best_q is None or val < best_q[0]) and leq(ring, rhs, lhs):
                        best_q = (val, (b, c, m, mbar))
    if best_p is None or best_q is None:
        raise BoundExceededError(
            f"no witness relation found within bounds ({ball}, {m_bound})"
        )
    return StateRange(
        p_lb=best_p[0],
        q_ub=best_q[0],
        p_witness=best_p[1],
        q_witness=best_q[1],
        exact=None,
    )


# ---------------------------------------------------------------------------
# the square-zero endpoint: sup of rk(a) among states killing a^2


@dataclass(frozen=True)
class MinorSweep:
    """Record of the exhaustive refutation of all sub-1/2 relations."""

    bound: int
    candidates: int
    refuted: int

    @property
    def clean(self) -> bool:
        return self.candidates == self.refuted


@dataclass(frozen=True)
class RkSquareResult:
    value: Fraction
    upper: Positive  # chain certifying 2<a> <= <1> + <a^2>
    lower: MinorSweep


def _check_square_pair(ring, a, bound: int):
    if not isinstance(ring, (IntegerRing, PolyRing)):
        raise PreconditionError("rk_for_square needs Z or F_p[x]")
    a = ring.normalize(a)
    for m in range(bound + 1):
        if ring.ideal_member(ring.power(a, m), ring.power(a, m + 1)):
            raise PreconditionError(
                f"hypothesis fails: {ring.format(a)}^{m} lies in "
                f"({ring.format(a)}^{m + 1})"
            )
    return a


def _square_sweep(bound: int) -> MinorSweep:
    """Refute every grid relation c + m<a> <= b whose value ratio is < 1/2.

    Elements range over b = n<1> + l<a^2>, c = m1<1> + j<a^2> with all
    coefficients <= bound.  Each candidate must fail the minor-valuation
    necessary condition; a clean sweep pins the infimum at 1/2.
    """
    half = Fraction(1, 2)
    candidates = refuted = 0
    for n in range(bound + 1):
        for l in range(bound + 1):
            rhs = (0,) * n + (2,) * l
            for m1 in range(bound + 1):
                for j in range(bound + 1):
                    for m in range(1, bound + 1):
                        if Fraction(n - m1, m) >= half:
                            continue
                        candidates += 1
                        lhs = tuple(sorted((0,) * m1 + (1,) * m + (2,) * j))
                        if minor_refutation(lhs, rhs) is not None:
                            refuted += 1
    return MinorSweep(bound, candidates, refuted)


def rk_for_square(ring, a, bound: int = 6, depth: int = 8) -> RkSquareResult:
    """Certified sup of rk(a) over rank functions with rk(a^2) = 0.

    Upper side: an explicit chain for 2<a> <= <1> + <a^2> caps the value
    at 1/2.  Lower side: every enumerated relation that would push the
    infimum below 1/2 is refuted by its minor profile.
    """
    _check_square_pair(ring, a, bound)
    upper = leq_provable((1, 1), (0, 2), depth)
    if not isinstance(upper, Positive):
        raise SearchBudgetError("chain for 2<a> <= <1>+<a^2> not found; this is a bug")
    sweep = _square_sweep(bound)
    if not sweep.clean:
        raise SearchBudgetError(
            f"minor sweep left {sweep.candidates - sweep.refuted} relations "
            "unrefuted; this is a bug"
        )
    return RkSquareResult(Fraction(1, 2), upper, sweep)


def verify_rk_square(ring, a, result: RkSquareResult) -> bool:
    """Re-check both certificates of a rk_for_square result."""
    try:
        _check_square_pair(ring, a, result.lower.bound)
    except PreconditionError:
        return False
    if result.value != Fraction(1, 2):
        return False
    if not verify_formal_certificate((1, 1), (0, 2), result.upper):
        return False
    sweep = _square_sweep(result.lower.bound)
    return sweep.clean and sweep.candidates == result.lower.candidates


# ---------------------------------------------------------------------------
# pullback rank functions on Z and F_p[x]


class PullbackRank:
    """Rank through a quotient or fraction field of Z or F_p[x].

    pi = 0 gives the rank over the fraction field; a prime pi gives the
    rank over the residue field modulo pi.  Both are exact.
    """

    def __init__(self, ring, pi):
        if not isinstance(ring, (IntegerRing, PolyRing)):
            raise PreconditionError("pullback_rank needs Z or F_p[x]")
        self.ring = ring
        self.pi = ring.normalize(pi)
        if ring.is_zero(self.pi):
            self.field = None
            self.description = f"rank over the fraction field of {ring.spec}"
            return
        if isinstance(ring, IntegerRing):
            p = abs(self.pi)
            if not _is_prime_int(p):
                raise PreconditionError(f"{self.pi} is not prime in Z")
            self.field = PrimeField(p)
            self._reduce = lambda x: x % p
        else:
            if not is_irreducible(self.pi, ring.p):
                raise PreconditionError(
                    f"{ring.format(self.pi)} is not irreducible in {ring.spec}"
                )
            lead_inv = pow(self.pi[-1], -1, ring.p)
            monic = pscale(self.pi, lead_inv, ring.p)
            field = ExtensionField(ring.p, len(monic) - 1, monic)
            self.field = field
            self._reduce = lambda x: field.encode(pdivmod(x, monic, ring.p)[1])
        self.description = f"rank over {ring.spec} modulo ({ring.format(self.pi)})"

    def __call__(self, M: Matrix) -> Fraction:
        if M.ring != self.ring:
            raise PreconditionError("matrix is over a different ring")
        if self.field is None:
            return Fraction(_fraction_field_rank(self.ring, M))
        grid = [[self._reduce(x) for x in row] for row in M.entries]
        return Fraction(field_rank(self.field, grid))


def pullback_rank(ring, pi) -> PullbackRank:
    return PullbackRank(ring, pi)


def _fraction_field_rank(ring, M: Matrix) -> int:
    """Division-free row elimination over an integral domain."""
    grid = [list(row) for row in M.entries]
    nrows, ncols = M.rows, M.cols
    rank = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, nrows) if not ring.is_zero(grid[r][col])), None
        )
        if pivot is None:
            continue
        grid[rank], grid[pivot] = grid[pivot], grid[rank]
        pval = grid[rank][col]
        for r in range(rank + 1, nrows):
            x = grid[r][col]
            if not ring.is_zero(x):
                grid[r] = [
                    ring.sub(ring.mul(pval, grid[r][j]), ring.mul(x, grid[rank][j]))
                    for j in range(ncols)
                ]
        rank += 1
        if rank == nrows:
            break
    return rank


def _is_prime_int(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True
