import random
from fractions import Fraction
from itertools import product

import pytest

from rankcert import (
    UNKNOWN,
    Cancel,
    Drop,
    ExponentIncrease,
    NegativeMinor,
    NegativeRank,
    Positive,
    PowerSwap,
    PreconditionError,
    block_diag,
    block_upper,
    class_of,
    class_representative,
    has_rank_function,
    identity,
    leq,
    leq_necessary,
    leq_provable,
    mat_mul,
    matrix,
    minor_profile,
    order_unit,
    parse_ring,
    rank_profile,
    regular_factor,
    rk,
    verify_certificate,
    verify_factor,
    verify_formal_certificate,
    witness_chain,
)

from helpers import random_matrix

Z8 = parse_ring("Z/8")


def vectors_up_to(width, norm):
    out = [()]
    for _ in range(width):
        out = [v + (t,) for v in out for t in range(norm + 1)]
    return [v for v in out if sum(v) <= norm]


# ---------------------------------------------------------------------------
# classes


def test_class_of_identity():
    for m in (1, 2, 3):
        assert class_of(identity(Z8, m)) == (m, 0, 0)


def test_class_of_elimination_example():
    assert class_of(matrix(Z8, [[2, 1], [0, 4]])) == (1, 0, 0)


def test_class_of_product_components():
    ring = parse_ring("F2*F3")
    A = matrix(ring, [[(1, 1), (0, 1)], [(0, 2), (0, 0)]])
    # oracle per component: [[1,0],[0,0]] has rank 1 over F2,
    # [[1,1],[2,0]] has rank 2 over F3
    assert class_of(A) == (1, 2)


def test_class_representative_round_trip():
    rng = random.Random(5)
    for spec in ["Z/8", "F2*F3"]:
        ring = parse_ring(spec)
        for _ in range(30):
            vec = tuple(rng.randrange(3) for _ in order_unit(ring))
            assert class_of(class_representative(ring, vec)) == vec


# ---------------------------------------------------------------------------
# rank values


def test_rank_formula_values():
    assert rk(Z8, 2, (0, 1, 0)) == Fraction(1, 2)
    assert rk(Z8, 1, (0, 1, 0)) == 0
    assert rk(Z8, 3, (0, 0, 1)) == Fraction(1, 3)
    with pytest.raises(PreconditionError):
        rk(Z8, 4, (0, 0, 0))
    with pytest.raises(PreconditionError):
        rk(Z8, 0, (0, 0, 0))


def test_rank_additive():
    rng = random.Random(3)
    for _ in range(100):
        a = tuple(rng.randrange(4) for _ in range(3))
        b = tuple(rng.randrange(4) for _ in range(3))
        ab = tuple(x + y for x, y in zip(a, b))
        for k in (1, 2, 3):
            assert rk(Z8, k, ab) == rk(Z8, k, a) + rk(Z8, k, b)


# ---------------------------------------------------------------------------
# the order and witness chains


def test_leq_examples():
    assert leq(Z8, (0, 2, 0), (1, 0, 1))
    assert not leq(Z8, (1, 0, 1), (0, 2, 0))
    for a in vectors_up_to(3, 3):
        assert leq(Z8, (0, 0, 0), a)


def test_witness_chain_examples():
    cert = witness_chain(Z8, (0, 2, 0), (1, 0, 1))
    assert isinstance(cert, Positive)
    assert cert.moves[0] == PowerSwap(0, 2)
    assert verify_certificate(Z8, (0, 2, 0), (1, 0, 1), cert)

    neg = witness_chain(Z8, (1, 0, 0), (0, 2, 0))
    assert neg == NegativeRank(1, Fraction(1), Fraction(0))
    assert verify_certificate(Z8, (1, 0, 0), (0, 2, 0), neg)

    assert witness_chain(Z8, (1, 2, 0), (1, 2, 0)) == Positive(())


@pytest.mark.parametrize("spec", ["Z/4", "Z/8", "F2[x]/x^3"])
def test_exhaustive_equivalence_small(spec):
    ring = parse_ring(spec)
    n = ring.nil_degree
    vecs = vectors_up_to(n, 3)
    for a in vecs:
        for b in vecs:
            cert = witness_chain(ring, a, b)
            assert verify_certificate(ring, a, b, cert)
            if leq(ring, a, b):
                assert isinstance(cert, Positive)
            else:
                assert isinstance(cert, NegativeRank)


def test_partial_order_laws():
    vecs = vectors_up_to(3, 3)
    for a in vecs:
        assert leq(Z8, a, a)
        for b in vecs:
            if leq(Z8, a, b) and leq(Z8, b, a):
                assert a == b
            for c in vecs[:10]:
                if leq(Z8, a, b) and leq(Z8, b, c):
                    assert leq(Z8, a, c)


def test_order_compatible_with_addition():
    vecs = vectors_up_to(3, 2)
    for a in vecs:
        for b in vecs:
            if not leq(Z8, a, b):
                continue
            for c in vecs:
                assert leq(
                    Z8,
                    tuple(x + y for x, y in zip(a, c)),
                    tuple(x + y for x, y in zip(b, c)),
                )


def test_order_unit_law():
    n = Z8.nil_degree
    for a in vectors_up_to(3, 4):
        bound = tuple(sum(a) * n if i == 0 else 0 for i in range(3))
        assert leq(Z8, a, bound)


def test_verify_rejects_tampered_certificates():
    a, b = (1, 0, 0), (0, 2, 0)  # not leq
    fake = Positive((Drop(1), Drop(1), ExponentIncrease(0)))
    assert not verify_certificate(Z8, a, b, fake)
    # rk_1 would increase along such a chain, so replay cannot reach the target
    good = witness_chain(Z8, (0, 2, 0), (1, 0, 1))
    extra = Positive(good.moves + (Drop(0),))
    assert not verify_certificate(Z8, (0, 2, 0), (1, 0, 1), extra)
    assert not verify_certificate(
        Z8, (0, 1, 0), (1, 0, 0), NegativeRank(1, Fraction(0), Fraction(1))
    )
    # wrong recorded values
    assert not verify_certificate(
        Z8, (1, 0, 0), (0, 2, 0), NegativeRank(1, Fraction(2), Fraction(0))
    )


def test_chain_moves_respect_index_convention():
    # PowerSwap against the identity index n consumes one generator only
    cert = witness_chain(Z8, (0, 0, 2), (1, 0, 0))
    assert isinstance(cert, Positive)
    assert verify_certificate(Z8, (0, 0, 2), (1, 0, 0), cert)
    assert any(isinstance(m, PowerSwap) and m.j2 == 3 for m in cert.moves)


# ---------------------------------------------------------------------------
# minor profiles and the formal bounded search


def test_minor_profile_examples():
    assert minor_profile((0, 1, 2)) == (0, 1, 3)
    assert minor_profile(()) == ()
    assert leq_necessary((), (0,))  # the empty multiset is the zero class
    assert not leq_necessary((0,), ())
    assert leq_necessary((1, 1), (0, 2))


def test_minor_lemma_grid_reproduction():
    # m ones, k a's, j a^2's below n ones and l a^2's forces k <= 2(n-m)
    for m, n, k, j, l in product(range(7), repeat=5):
        if k == 0:
            continue
        lhs = (0,) * m + (1,) * k + (2,) * j
        rhs = (0,) * n + (2,) * l
        if k > 2 * (n - m):
            assert not leq_necessary(lhs, rhs), (m, n, k, j, l)


def test_leq_provable_examples():
    cert = leq_provable((1, 1), (0, 2))
    assert cert == Positive((PowerSwap(0, 2),))
    assert verify_formal_certificate((1, 1), (0, 2), cert)

    neg = leq_provable((0,), (1,))
    assert neg == NegativeMinor(1, 0, 1)
    assert verify_formal_certificate((0,), (1,), neg)

    inc = leq_provable((2,), (1,))
    assert inc == Positive((ExponentIncrease(1),))
    assert verify_formal_certificate((2,), (1,), inc)


def test_leq_provable_drop_and_cancel():
    cert = leq_provable((3,), (3, 5))
    assert isinstance(cert, Positive)
    assert verify_formal_certificate((3,), (3, 5), cert)
    assert leq_provable((), ()) == Positive(())


def test_leq_provable_unknown_stays_unknown():
    # equal profiles but no chain at depth 0 is reported as unknown
    assert leq_provable((1,), (0, 2), depth=0) is UNKNOWN


def test_formal_verify_rejects_bad_moves():
    assert not verify_formal_certificate((1, 1), (0, 2), Positive((PowerSwap(2, 0),)))
    assert not verify_formal_certificate((1, 1), (0, 2), Positive((Cancel(1),)))
    assert not verify_formal_certificate((0,), (1,), NegativeMinor(1, 0, 2))


# ---------------------------------------------------------------------------
# regular factorizations


def test_regular_factor_identity_and_zero():
    ring = parse_ring("F2*F3")
    A = matrix(ring, [[(1, 2), (0, 1)], [(1, 0), (0, 0)]])
    res = regular_factor(A, A)
    assert res.ok and res.C == identity(ring, 2) and res.D == identity(ring, 2)
    Z = matrix(ring, [[(0, 0), (0, 0)]])
    res = regular_factor(Z, A)
    assert res.ok and verify_factor(Z, A, res)


def test_regular_factor_rank_one_into_rank_two():
    ring = parse_ring("F2*F3")
    A = matrix(ring, [[(1, 0), (0, 0)], [(0, 0), (0, 0)]])
    B = matrix(ring, [[(1, 1), (0, 0)], [(0, 0), (0, 0)]])
    assert class_of(A) == (1, 0) and class_of(B) == (1, 1)
    res = regular_factor(A, B)
    assert res.ok
    assert mat_mul(mat_mul(res.C, B), res.D) == A
    assert verify_factor(A, B, res)


def test_regular_factor_failing_component():
    ring = parse_ring("F2*F3")
    A = identity(ring, 2)
    B = matrix(ring, [[(1, 1), (0, 0)], [(0, 0), (1, 0)]])  # ranks (2, 1)
    res = regular_factor(A, B)
    assert not res.ok and res.failing_component == 1
    assert verify_factor(A, B, res)


def test_regular_factor_random_round_trips():
    ring = parse_ring("F2*F3")
    rng = random.Random(9)
    done = 0
    while done < 60:
        A = random_matrix(ring, rng, rng.randrange(1, 3), rng.randrange(1, 3))
        B = random_matrix(ring, rng, rng.randrange(1, 3), rng.randrange(1, 3))
        res = regular_factor(A, B)
        assert verify_factor(A, B, res)
        if res.ok:
            assert leq(ring, class_of(A), class_of(B))
        else:
            assert not leq(ring, class_of(A), class_of(B))
        done += 1


# ---------------------------------------------------------------------------
# existence and axioms


def test_has_rank_function_examples():
    assert has_rank_function(parse_ring("Z/8"), 5)
    assert has_rank_function(parse_ring("F2*F3"), 5)
    assert has_rank_function(parse_ring("F2[x]/x^2"), 5)


def test_block_rank_axioms_sample():
    rng = random.Random(31)
    ring = parse_ring("Z/8")
    for _ in range(60):
        A = random_matrix(ring, rng, rng.randrange(1, 3), rng.randrange(1, 3))
        B = random_matrix(ring, rng, rng.randrange(1, 3), rng.randrange(1, 3))
        C = random_matrix(ring, rng, A.rows, B.cols)
        for k in (1, 2, 3):
            ra = rk(ring, k, class_of(A))
            rb = rk(ring, k, class_of(B))
            assert rk(ring, k, class_of(block_diag(A, B))) == ra + rb
            assert rk(ring, k, class_of(block_upper(A, C, B))) >= ra + rb
            if A.cols == B.rows:
                assert rk(ring, k, class_of(mat_mul(A, B))) <= min(ra, rb)


def test_rank_profile_length():
    assert rank_profile(Z8, (1, 1, 1)) == (
        Fraction(1),
        Fraction(3, 2),
        Fraction(2),
    )
