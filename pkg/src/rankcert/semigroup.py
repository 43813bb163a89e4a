"""Matrix classes under subequivalence, their order, and certificates.

Over an Artinian local family with radical generator c and c^n = 0, the
classes of matrices under mutual subequivalence form the free abelian
monoid on the generators <c^0>, ..., <c^(n-1)>; a class is stored as the
tuple of generator multiplicities.  Over a product of fields a class is
the tuple of componentwise ranks.

The order is decided through the rank functions rk_k (local) or
componentwise rank comparison (regular), and every decision carries a
certificate: a replayable chain of elementary moves, an explicit
factorization, or a violated rank/minor-valuation inequality.  Move
indices follow the convention that index n names the class of the zero
matrix (c^n = 0), so a move may legally produce "generator n" and add
nothing.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SearchBudgetError
from .fields import field_mat_mul, field_paq, field_rank
from .normal_form import diagonalize
from .rings import Matrix, identity, mat_mul


# ---------------------------------------------------------------------------
# certificate vocabulary


@dataclass(frozen=True)
class PowerSwap:
    """Replace e_{j1} + e_{j2} by e_{j1+1} + e_{j2-1} (j1 < j2)."""

    j1: int
    j2: int


@dataclass(frozen=True)
class ExponentIncrease:
    """Replace e_i by e_{i+1}."""

    i: int


@dataclass(frozen=True)
class Drop:
    """Delete one copy of e_i."""

    i: int


@dataclass(frozen=True)
class Cancel:
    """Remove a common copy of e_i from both sides (order additivity)."""

    i: int


@dataclass(frozen=True)
class Positive:
    """Chain of moves transforming the right element down to the left one."""

    moves: tuple


@dataclass(frozen=True)
class NegativeRank:
    """rk_k(lhs original element) > rk_k(rhs), refuting lhs <= rhs."""

    k: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class NegativeMinor:
    """Minimal k-minor valuation dropped: lhs < rhs (None means +infinity)."""

    k: int
    lhs: object
    rhs: object


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()


# ---------------------------------------------------------------------------
# monoid elements


def monoid_width(ring) -> int:
    if ring.is_local:
        return ring.nil_degree
    if ring.is_product:
        return ring.width
    raise PreconditionError(f"{ring.spec} has no computed class monoid")


def monoid_identity(ring) -> tuple:
    return (0,) * monoid_width(ring)


def monoid_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def monoid_scale(m: int, a) -> tuple:
    return tuple(m * x for x in a)


def check_element(ring, a) -> tuple:
    a = tuple(int(x) for x in a)
    if len(a) != monoid_width(ring) or any(x < 0 for x in a):
        raise PreconditionError(f"bad monoid element {a} for {ring.spec}")
    return a


def class_of(A: Matrix) -> tuple:
    """Class of a matrix: generator multiplicities or componentwise ranks."""
    ring = A.ring
    if ring.is_local:
        vec = [0] * ring.nil_degree
        for e in diagonalize(A).exponents:
            vec[e] += 1
        return tuple(vec)
    if ring.is_product:
        return tuple(
            field_rank(f, ring.component_grid(A, i)) for i, f in enumerate(ring.fields)
        )
    raise PreconditionError(f"{ring.spec} has no computed class monoid")


def class_representative(ring, a) -> Matrix:
    """A diagonal matrix whose class is a."""
    a = check_element(ring, a)
    if ring.is_local:
        size = max(1, sum(a))
        diag = [ring.generator_power(i) for i in range(len(a)) for _ in range(a[i])]
        grid = [[ring.zero] * size for _ in range(size)]
        for t, x in enumerate(diag):
            grid[t][t] = x
        return Matrix(ring, grid)
    size = max(1, max(a))
    grid = [[ring.zero] * size for _ in range(size)]
    for t in range(size):
        grid[t][t] = tuple(1 if t < a[i] else 0 for i in range(ring.width))
    return Matrix(ring, grid)


# ---------------------------------------------------------------------------
# rank functions and the order


def rk(ring, k: int, a) -> Fraction:
    """rk_k of a class: sum over i < k of a_i (k - i)/k."""
    if not ring.is_local:
        raise PreconditionError("rk_k is defined for the local families")
    n = ring.nil_degree
    if not 1 <= k <= n:
        raise PreconditionError(f"k = {k} outside [1, {n}]")
    a = check_element(ring, a)
    return Fraction(sum(a[i] * (k - i) for i in range(k)), k)


def rank_profile(ring, a) -> tuple:
    return tuple(rk(ring, k, a) for k in range(1, ring.nil_degree + 1))


def leq(ring, a, b) -> bool:
    a = check_element(ring, a)
    b = check_element(ring, b)
    if ring.is_local:
        return all(
            rk(ring, k, a) <= rk(ring, k, b) for k in range(1, ring.nil_degree + 1)
        )
    return all(x <= y for x, y in zip(a, b))


def least_violating_k(ring, a, b):
    """Smallest k with rk_k(a) > rk_k(b), or None (local only)."""
    for k in range(1, ring.nil_degree + 1):
        if rk(ring, k, a) > rk(ring, k, b):
            return k
    return None


# ---------------------------------------------------------------------------
# witness chains (local)


def witness_chain(ring, a, b):
    """Certify a <= b with a move chain, or refute with a rank violation.

    Follows the inductive order argument: cancel common generators, and
    while supports are disjoint push the largest below-support generator
    of b upward with a PowerSwap against the next one above (index n,
    the identity, when none exists).
    """
    if not ring.is_local:
        raise PreconditionError("witness_chain applies to the local families")
    a = check_element(ring, a)
    b = check_element(ring, b)
    n = ring.nil_degree
    k_bad = least_violating_k(ring, a, b)
    if k_bad is not None:
        return NegativeRank(k_bad, rk(ring, k_bad, a), rk(ring, k_bad, b))
    if a == b:
        return Positive(())

    moves = []
    cur_a, cur_b = list(a), list(b)
    swap_budget = sum(b) * n * (n + 1)
    swaps = 0
    while sum(cur_a) > 0:
        common = next((i for i in range(n) if cur_a[i] and cur_b[i]), None)
        if common is not None:
            moves.append(Cancel(common))
            cur_a[common] -= 1
            cur_b[common] -= 1
            continue
        i_a = next(i for i in range(n) if cur_a[i])
        support_b = [i for i in range(n) if cur_b[i]]
        j1 = max(i for i in support_b if i < i_a)
        above = [i for i in support_b if i > j1]
        j2 = above[0] if above else n
        moves.append(PowerSwap(j1, j2))
        cur_b[j1] -= 1
        if j2 < n:
            cur_b[j2] -= 1
        if j1 + 1 < n:
            cur_b[j1 + 1] += 1
        cur_b[j2 - 1] += 1
        swaps += 1
        if swaps > swap_budget:
            raise SearchBudgetError(
                f"witness chain exceeded its bound {swap_budget}; this is a bug"
            )
        if least_violating_k(ring, tuple(cur_a), tuple(cur_b)) is not None:
            raise SearchBudgetError(
                "rank comparison broke during chain construction; this is a bug"
            )
    for i in range(n):
        moves.extend([Drop(i)] * cur_b[i])
    return Positive(tuple(moves))


def _apply_moves(n, start, target, moves):
    """Replay moves with index convention e_n = identity; None on a bad move."""
    cur = list(start)
    tgt = list(target)
    for mv in moves:
        if isinstance(mv, Cancel):
            i = mv.i
            if not (0 <= i < n and cur[i] >= 1 and tgt[i] >= 1):
                return None
            cur[i] -= 1
            tgt[i] -= 1
        elif isinstance(mv, PowerSwap):
            j1, j2 = mv.j1, mv.j2
            if not (0 <= j1 < j2 <= n and cur[j1] >= 1):
                return None
            if j2 < n and cur[j2] < 1:
                return None
            cur[j1] -= 1
            if j2 < n:
                cur[j2] -= 1
            if j1 + 1 < n:
                cur[j1 + 1] += 1
            if j2 - 1 < n:
                cur[j2 - 1] += 1
        elif isinstance(mv, ExponentIncrease):
            i = mv.i
            if not (0 <= i < n and cur[i] >= 1):
                return None
            cur[i] -= 1
            if i + 1 < n:
                cur[i + 1] += 1
        elif isinstance(mv, Drop):
            i = mv.i
            if not (0 <= i < n and cur[i] >= 1):
                return None
            cur[i] -= 1
        else:
            return None
    return cur, tgt


def verify_certificate(ring, a, b, cert) -> bool:
    """Re-check a certificate for the claim a <= b without re-deriving it."""
    try:
        a = check_element(ring, a)
        b = check_element(ring, b)
    except PreconditionError:
        return False
    if isinstance(cert, Positive):
        if not ring.is_local:
            return False
        replay = _apply_moves(ring.nil_degree, b, a, cert.moves)
        return replay is not None and replay[0] == replay[1]
    if isinstance(cert, NegativeRank):
        if not ring.is_local or not 1 <= cert.k <= ring.nil_degree:
            return False
        lhs = rk(ring, cert.k, a)
        rhs = rk(ring, cert.k, b)
        return lhs == cert.lhs and rhs == cert.rhs and lhs > rhs
    return False


# ---------------------------------------------------------------------------
# formal diagonal elements over (Z, a) or (F_p[x], a): minor profiles and
# a bounded, sound-but-incomplete order search


def minor_profile(exponents) -> tuple:
    """Prefix sums of the sorted exponents: minimal k-minor valuations."""
    exps = sorted(int(e) for e in exponents)
    if any(e < 0 for e in exps):
        raise PreconditionError("exponents must be nonnegative")
    out, acc = [], 0
    for e in exps:
        acc += e
        out.append(acc)
    return tuple(out)


def profile_value(profile, k):
    """mu_k, with None for +infinity (fewer than k diagonal entries)."""
    return profile[k - 1] if 1 <= k <= len(profile) else None


def minor_refutation(e_a, e_b):
    """Least k with mu_k(e_a) < mu_k(e_b), as a NegativeMinor; None if sound."""
    pa, pb = minor_profile(e_a), minor_profile(e_b)
    for k in range(1, max(len(pa), len(pb)) + 1):
        va, vb = profile_value(pa, k), profile_value(pb, k)
        if va is None:
            continue
        if vb is None or va < vb:
            return NegativeMinor(k, va, vb)
    return None


def leq_necessary(e_a, e_b) -> bool:
    """Necessary condition for diag(a^{e_a}) <= diag(a^{e_b})."""
    return minor_refutation(e_a, e_b) is None


def _formal_moves(cur, tgt, cap):
    """Canonical move list from a (current, target) multiset pair."""
    common = sorted((Counter(cur) & Counter(tgt)).elements())
    if common:
        return [Cancel(common[0])]
    moves = []
    values = sorted(set(cur))
    for i, j1 in enumerate(values):
        for j2 in values[i + 1 :]:
            if j1 + 1 <= cap:
                moves.append(PowerSwap(j1, j2))
    for v in values:
        if v + 1 <= cap:
            moves.append(ExponentIncrease(v))
    for v in values:
        moves.append(Drop(v))
    return moves


def _formal_apply(cur, tgt, mv):
    c = Counter(cur)
    t = Counter(tgt)
    if isinstance(mv, Cancel):
        if not (c[mv.i] and t[mv.i]):
            return None
        c[mv.i] -= 1
        t[mv.i] -= 1
    elif isinstance(mv, PowerSwap):
        if not (mv.j1 < mv.j2 and c[mv.j1] and c[mv.j2]):
            return None
        c[mv.j1] -= 1
        c[mv.j2] -= 1
        c[mv.j1 + 1] += 1
        c[mv.j2 - 1] += 1
    elif isinstance(mv, ExponentIncrease):
        if not c[mv.i]:
            return None
        c[mv.i] -= 1
        c[mv.i + 1] += 1
    elif isinstance(mv, Drop):
        if not c[mv.i]:
            return None
        c[mv.i] -= 1
    else:
        return None
    return tuple(sorted(c.elements())), tuple(sorted(t.elements()))


def leq_provable(e_a, e_b, depth: int = 8):
    """Bounded search for a chain proving diag(a^{e_a}) <= diag(a^{e_b}).

    Returns a Positive chain, a NegativeMinor refutation, or UNKNOWN.
    Sound in all three answers but incomplete: UNKNOWN decides nothing.
    """
    ea = tuple(sorted(int(e) for e in e_a))
    eb = tuple(sorted(int(e) for e in e_b))
    if any(e < 0 for e in ea + eb):
        raise PreconditionError("exponents must be nonnegative")
    refutation = minor_refutation(ea, eb)
    if refutation is not None:
        return refutation
    if ea == eb:
        return Positive(())
    cap = max(ea + eb, default=0) + depth + 1
    start = (eb, ea)
    queue = deque([(start, ())])
    seen = {start}
    while queue:
        (cur, tgt), moves = queue.popleft()
        if len(moves) >= depth:
            continue
        for mv in _formal_moves(cur, tgt, cap):
            nxt = _formal_apply(cur, tgt, mv)
            if nxt is None:
                continue
            chain = moves + (mv,)
            if nxt[0] == nxt[1]:
                return Positive(chain)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, chain))
    return UNKNOWN


def verify_formal_certificate(e_a, e_b, cert) -> bool:
    """Re-check a leq_provable certificate for multisets e_a <= e_b."""
    ea = tuple(sorted(int(e) for e in e_a))
    eb = tuple(sorted(int(e) for e in e_b))
    if isinstance(cert, Positive):
        state = (eb, ea)
        for mv in cert.moves:
            state = _formal_apply(state[0], state[1], mv)
            if state is None:
                return False
        return state[0] == state[1]
    if isinstance(cert, NegativeMinor):
        pa, pb = minor_profile(ea), minor_profile(eb)
        va, vb = profile_value(pa, cert.k), profile_value(pb, cert.k)
        if (va, vb) != (cert.lhs, cert.rhs):
            return False
        return va is not None and (vb is None or va < vb)
    return False


# ---------------------------------------------------------------------------
# product-of-fields factorizations


@dataclass(frozen=True)
class FactorResult:
    C: object
    D: object
    failing_component: object

    @property
    def ok(self) -> bool:
        return self.failing_component is None


def regular_factor(A: Matrix, B: Matrix) -> FactorResult:
    """Explicit C, D with A = C * B * D over a product of fields.

    When the componentwise rank comparison fails, returns the first
    failing component index instead.
    """
    ring = A.ring
    if not ring.is_product or B.ring != ring:
        raise PreconditionError("regular_factor needs matrices over one product ring")
    ra, rb = class_of(A), class_of(B)
    for i, (x, y) in enumerate(zip(ra, rb)):
        if x > y:
            return FactorResult(None, None, i)
    if A == B:
        return FactorResult(identity(ring, A.rows), identity(ring, A.cols), None)

    c_parts, d_parts = [], []
    for i, f in enumerate(ring.fields):
        rank_a, Pa, _, Qa, _ = field_paq(f, ring.component_grid(A, i))
        _, _, Pb_inv, _, Qb_inv = field_paq(f, ring.component_grid(B, i))
        E = [[1 if (s == t and s < rank_a) else 0 for t in range(B.rows)] for s in range(A.rows)]
        F = [[1 if (s == t and s < rank_a) else 0 for t in range(A.cols)] for s in range(B.cols)]
        c_parts.append(field_mat_mul(f, field_mat_mul(f, Pa, E), Pb_inv))
        d_parts.append(field_mat_mul(f, field_mat_mul(f, Qb_inv, F), Qa))

    def assemble(parts, r, c):
        return Matrix(
            ring,
            [
                [tuple(parts[i][s][t] for i in range(ring.width)) for t in range(c)]
                for s in range(r)
            ],
        )

    C = assemble(c_parts, A.rows, B.rows)
    D = assemble(d_parts, B.cols, A.cols)
    if mat_mul(mat_mul(C, B), D) != A:
        raise SearchBudgetError("regular factorization failed to verify; this is a bug")
    return FactorResult(C, D, None)


def verify_factor(A: Matrix, B: Matrix, result: FactorResult) -> bool:
    if not result.ok:
        i = result.failing_component
        if not isinstance(i, int) or not 0 <= i < A.ring.width:
            return False
        return class_of(A)[i] > class_of(B)[i]
    return mat_mul(mat_mul(result.C, B), result.D) == A


# ---------------------------------------------------------------------------
# existence of a rank function


def has_rank_function(ring, limit: int) -> bool:
    """Check I_{m+1} not<= I_m for all m <= limit."""
    if limit < 1:
        raise PreconditionError("limit must be >= 1")
    width = monoid_width(ring)
    unit = tuple(1 if (ring.is_product or i == 0) else 0 for i in range(width))
    for m in range(1, limit + 1):
        if leq(ring, monoid_scale(m + 1, unit), monoid_scale(m, unit)):
            return False
    return True


def order_unit(ring) -> tuple:
    """<1>: the class of the 1x1 identity matrix."""
    width = monoid_width(ring)
    if ring.is_local:
        return tuple(1 if i == 0 else 0 for i in range(width))
    return (1,) * width
