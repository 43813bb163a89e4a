import random
from fractions import Fraction

import pytest

from rankcert import (
    BoundExceededError,
    Positive,
    PowerSwap,
    PreconditionError,
    StateSpec,
    check_states_exist,
    cone_member,
    group_add,
    group_element,
    group_props_check,
    matrix,
    parse_ring,
    pullback_rank,
    rank_profile,
    rk,
    rk_for_square,
    state_extension,
    state_range,
    verify_rk_square,
)

from helpers import random_matrix

Z8 = parse_ring("Z/8")
E0, E1, E2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def vectors_up_to(width, norm):
    out = [()]
    for _ in range(width):
        out = [v + (t,) for v in out for t in range(norm + 1)]
    return [v for v in out if sum(v) <= norm]


# ---------------------------------------------------------------------------
# the positive cone


def test_cone_examples():
    assert cone_member(Z8, group_element(E0, E1))
    assert cone_member(Z8, group_element(E1, E1))
    assert not cone_member(Z8, group_element(E1, E0))


def test_cone_is_rank_criterion():
    for a in vectors_up_to(3, 3):
        for b in vectors_up_to(3, 3):
            expected = all(
                rk(Z8, k, b) <= rk(Z8, k, a) for k in (1, 2, 3)
            )
            assert cone_member(Z8, group_element(a, b)) == expected


def test_group_props_exhaustive():
    report = group_props_check(Z8, max_norm=3)
    assert report.closure_ok
    assert report.antisymmetry_ok
    assert report.order_unit_ok
    assert report.failures == ()


def test_cone_closure_random_pairs():
    rng = random.Random(2)
    vecs = vectors_up_to(3, 4)
    members = [
        group_element(a, b)
        for a in vecs
        for b in vecs
        if cone_member(Z8, group_element(a, b))
    ]
    for _ in range(200):
        g, h = rng.choice(members), rng.choice(members)
        assert cone_member(Z8, group_add(g, h))


def test_order_unit_bounds_e2():
    assert cone_member(Z8, group_element(E0, E2))


def test_regular_cone():
    ring = parse_ring("F2*F3")
    assert cone_member(ring, group_element((2, 1), (1, 1)))
    assert not cone_member(ring, group_element((1, 2), (2, 1)))


# ---------------------------------------------------------------------------
# state ranges


def test_state_range_e1():
    sr = state_range(Z8, E1, 12, 12)
    assert sr.p_lb == 0
    assert sr.q_ub == Fraction(2, 3)
    assert sr.exact == (Fraction(0), Fraction(2, 3))
    n, k, m = sr.q_witness
    # witness relation really holds: m*a + k*v <= n*v
    lhs = tuple(m * x + k * y for x, y in zip(E1, E0))
    assert all(
        rk(Z8, t, lhs) <= n * rk(Z8, t, E0) for t in (1, 2, 3)
    )
    assert Fraction(n - k, m) == Fraction(2, 3)


def test_state_range_normalized_at_unit():
    sr = state_range(Z8, E0, 8, 8)
    assert sr.p_lb == sr.q_ub == 1
    assert sr.exact == (Fraction(1), Fraction(1))


def test_state_range_zero_element():
    sr = state_range(Z8, (0, 0, 0), 6, 6)
    assert sr.p_lb == sr.q_ub == 0
    assert sr.exact == (Fraction(0), Fraction(0))


def test_state_range_monotone_refinement():
    for a in [E1, E2, (1, 1, 0), (0, 1, 2)]:
        prev = None
        for bound in range(4, 13):
            sr = state_range(Z8, a, bound, bound)
            if prev is not None:
                assert sr.p_lb >= prev.p_lb
                assert sr.q_ub <= prev.q_ub
            # the enumerated interval always brackets the exact one
            lo, hi = sr.exact
            assert sr.p_lb <= lo <= hi <= sr.q_ub
            prev = sr


def test_state_range_converges_to_extreme_ranks():
    for spec in ["Z/4", "Z/8", "Z/9"]:
        ring = parse_ring(spec)
        n = ring.nil_degree
        for a in vectors_up_to(n, 3):
            sr = state_range(ring, a, 12, 12)
            profile = rank_profile(ring, a)
            assert sr.p_lb == min(profile)
            assert sr.q_ub == max(profile)


def test_state_range_convex_combinations_lie_inside():
    rng = random.Random(17)
    for _ in range(200):
        a = tuple(rng.randrange(4) for _ in range(3))
        sr = state_range(Z8, a, 12, 12)
        weights = [rng.randrange(5) for _ in range(3)]
        if sum(weights) == 0:
            weights[rng.randrange(3)] = 1
        total = sum(weights)
        value = sum(
            Fraction(w, total) * rk(Z8, k + 1, a) for k, w in enumerate(weights)
        )
        assert sr.p_lb <= value <= sr.q_ub


def test_state_range_regular():
    ring = parse_ring("F2*F3")
    sr = state_range(ring, (1, 2), 12, 12)
    assert sr.p_lb == 1 and sr.q_ub == 2
    assert sr.exact == (Fraction(1), Fraction(2))


def test_state_range_bound_overflow():
    with pytest.raises(BoundExceededError):
        # m*a can never fit under n*v with such tiny n-bounds
        state_range(Z8, (9, 0, 0), 1, 1)


def test_check_states_exist_passes():
    for spec in ["Z/4", "Z/8", "Z/9", "F2[x]/x^3", "F3[x]/x^2", "F2*F3"]:
        check_states_exist(parse_ring(spec), 5)


# ---------------------------------------------------------------------------
# state extension


def test_extension_of_unit_subsemigroup_matches_state_range():
    spec = StateSpec(generators=(E0,), values=(Fraction(1),))
    for a in [E1, E2, (1, 1, 0)]:
        ext = state_extension(Z8, spec, a, ball=12, m_bound=12)
        sr = state_range(Z8, a, 12, 12)
        assert (ext.p_lb, ext.q_ub) == (sr.p_lb, sr.q_ub)


def test_extension_two_generator_instance():
    # W1 = <e0, e2> with values 1 and 0, extended at a = e1: the rank
    # functions fixing those values are the combinations of rk_1 and rk_2,
    # so the extension interval is [0, 1/2]; computed by enumeration.
    spec = StateSpec(generators=(E0, E2), values=(Fraction(1), Fraction(0)))
    ext = state_extension(Z8, spec, E1, ball=6, m_bound=6)
    assert ext.p_lb == 0
    assert ext.q_ub == Fraction(1, 2)
    b, c, m, mbar = ext.q_witness
    assert (b, c, m, mbar) == ((1, 0, 1), (0, 0, 0), 2, 0)


def test_extension_shifted_matches_unshifted():
    spec = StateSpec(generators=(E0, E2), values=(Fraction(1), Fraction(0)))
    plain = state_extension(Z8, spec, E1, ball=6, m_bound=6)
    shifted = state_extension(Z8, spec, E1, ball=6, m_bound=6, shifted=True)
    assert plain.p_lb == shifted.p_lb
    assert plain.q_ub == shifted.q_ub


def test_extension_rejects_additivity_conflict():
    spec = StateSpec(
        generators=(E0, (2, 0, 0)), values=(Fraction(1), Fraction(3))
    )
    with pytest.raises(PreconditionError):
        state_extension(Z8, spec, E1, ball=6, m_bound=4)


def test_extension_rejects_monotonicity_conflict():
    # e1 <= e0 but a larger value is assigned to e1
    spec = StateSpec(generators=(E0, E1), values=(Fraction(1), Fraction(2)))
    with pytest.raises(PreconditionError):
        state_extension(Z8, spec, E2, ball=6, m_bound=4)


def test_extension_requires_order_unit():
    spec = StateSpec(generators=(E2,), values=(Fraction(0),))
    with pytest.raises(PreconditionError):
        state_extension(Z8, spec, E1, ball=6, m_bound=4)


# ---------------------------------------------------------------------------
# the square-zero endpoint and pullback ranks


def test_rk_for_square_integers():
    z = parse_ring("Z")
    res = rk_for_square(z, 2, bound=6)
    assert res.value == Fraction(1, 2)
    assert res.upper == Positive((PowerSwap(0, 2),))
    assert res.lower.clean and res.lower.candidates > 0
    assert verify_rk_square(z, 2, res)


def test_rk_for_square_polynomials():
    ring = parse_ring("F2[x]")
    res = rk_for_square(ring, (0, 1), bound=6)
    assert res.value == Fraction(1, 2)
    assert res.lower.clean
    assert verify_rk_square(ring, (0, 1), res)


def test_rk_for_square_hypothesis_enforced():
    z = parse_ring("Z")
    with pytest.raises(PreconditionError):
        rk_for_square(z, 1, bound=4)  # 1 is a unit
    with pytest.raises(PreconditionError):
        rk_for_square(z, 0, bound=4)
    with pytest.raises(PreconditionError):
        rk_for_square(parse_ring("Z/8"), 2, bound=4)


def test_quotient_state_realizes_zero_endpoint():
    z = parse_ring("Z")
    rk2 = pullback_rank(z, 2)
    assert rk2(matrix(z, [[2]])) == 0
    assert rk2(matrix(z, [[4]])) == 0
    assert rk2(matrix(z, [[3]])) == 1


def test_pullback_examples():
    z = parse_ring("Z")
    assert pullback_rank(z, 0)(matrix(z, [[2]])) == 1
    assert pullback_rank(z, 3)(matrix(z, [[3, 0], [0, 2]])) == 1
    with pytest.raises(PreconditionError):
        pullback_rank(z, 4)
    f2x = parse_ring("F2[x]")
    with pytest.raises(PreconditionError):
        pullback_rank(f2x, f2x.parse("x^2+1"))  # (x+1)^2 over F2
    rkx = pullback_rank(f2x, f2x.parse("x^2+x+1"))
    assert rkx(matrix(f2x, [[(1, 1, 1)]])) == 0
    assert rkx(matrix(f2x, [[(1, 1)]])) == 1


def test_pullback_fraction_field_rank():
    z = parse_ring("Z")
    A = matrix(z, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert pullback_rank(z, 0)(A) == 2
    f3x = parse_ring("F3[x]")
    B = matrix(f3x, [[(0, 1), (1,)], [(0, 0, 1), (0, 1)]])
    # second row is x * first row: rank 1 over the fraction field
    assert pullback_rank(f3x, 0)(B) == 1


def test_pullback_rank_is_monotone_under_products():
    rng = random.Random(41)
    z = parse_ring("Z")
    rank = pullback_rank(z, 2)
    for _ in range(50):
        A = random_matrix(z, rng, 2, 2)
        B = random_matrix(z, rng, 2, 2)
        from rankcert import mat_mul

        assert rank(mat_mul(A, B)) <= min(rank(A), rank(B))
