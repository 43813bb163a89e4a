"""Finitely presented modules given by relation matrices.

A module is encoded as R^m / R^n * A for a relations matrix A with m
columns; a free module R^m uses a single zero relations row, keeping
the matrix nonempty.  Over the local families the diagonal form of A
determines the isomorphism type: a diagonal entry c^i with i >= 1
contributes a torsion summand R/(c^i), a unit entry kills a generator,
and uncovered generators stay free.  Over a product of fields the type
is the tuple of component multiplicities.

The module-side Grothendieck group is written over the basis
[R], [R/(c^1)], ..., [R/(c^(n-1))] (local) or the simple components
(regular); phi/psi translate between it and the matrix-side group and
are mutually inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .normal_form import diagonalize
from .rings import Matrix, block_diag, stack_vertical, zeros
from .semigroup import class_of, monoid_width, order_unit, rk
from .states import GroupElement, cone_member, group_diff, group_element


@dataclass(frozen=True)
class Presentation:
    gens: int
    relations: Matrix


def presentation(gens: int, relations: Matrix) -> Presentation:
    if gens < 1:
        raise PreconditionError("a presentation needs at least one generator")
    if relations.cols != gens:
        raise PreconditionError(
            f"relations matrix has {relations.cols} columns for {gens} generators"
        )
    return Presentation(gens, relations)


def free_presentation(ring, m: int) -> Presentation:
    return presentation(m, zeros(ring, 1, m))


def direct_sum(P1: Presentation, P2: Presentation) -> Presentation:
    return presentation(P1.gens + P2.gens, block_diag(P1.relations, P2.relations))


def quotient_presentation(P: Presentation, extra: Matrix) -> Presentation:
    """Impose additional relation rows on the same generators."""
    return presentation(P.gens, stack_vertical(P.relations, extra))


@dataclass(frozen=True)
class LocalSignature:
    torsion: tuple  # exponents >= 1, sorted
    free_rank: int


@dataclass(frozen=True)
class RegularSignature:
    multiplicities: tuple


def signature(P: Presentation):
    ring = P.relations.ring
    if ring.is_local:
        exps = diagonalize(P.relations).exponents
        return LocalSignature(
            torsion=tuple(sorted(e for e in exps if e >= 1)),
            free_rank=P.gens - len(exps),
        )
    if ring.is_product:
        ranks = class_of(P.relations)
        return RegularSignature(tuple(P.gens - r for r in ranks))
    raise PreconditionError(f"{ring.spec} is not a supported module family")


def dim(k: int, P: Presentation) -> Fraction:
    """dim_k(R^m/R^n A) = m - rk_k(<A>), exact in [0, m]."""
    ring = P.relations.ring
    if not ring.is_local:
        raise PreconditionError("dim_k is defined for the local families")
    return P.gens - rk(ring, k, class_of(P.relations))


def presentations_equivalent(P1: Presentation, P2: Presentation) -> bool:
    if P1.relations.ring != P2.relations.ring:
        raise PreconditionError("presentations over different rings")
    return signature(P1) == signature(P2)


def module_leq(P1: Presentation, P2: Presentation) -> bool:
    """Quotient-module order: componentwise multiplicities (regular only)."""
    ring = P1.relations.ring
    if not ring.is_product or P2.relations.ring != ring:
        raise PreconditionError("module_leq applies to product-of-fields rings")
    s1 = signature(P1).multiplicities
    s2 = signature(P2).multiplicities
    return all(x <= y for x, y in zip(s1, s2))


def image_signature(A: Matrix) -> RegularSignature:
    """Class of the row-space module of A (regular only)."""
    if not A.ring.is_product:
        raise PreconditionError("image_signature applies to product-of-fields rings")
    return RegularSignature(class_of(A))


# ---------------------------------------------------------------------------
# module-side Grothendieck group, written as integer coefficient vectors


def module_basis_labels(ring):
    if ring.is_local:
        return ("[R]",) + tuple(f"[R/(c^{i})]" for i in range(1, ring.nil_degree))
    if ring.is_product:
        return tuple(f"[S{i}]" for i in range(ring.width))
    raise PreconditionError(f"{ring.spec} is not a supported module family")


def module_class(P: Presentation) -> tuple:
    """[R^m/R^n A] as nonnegative coordinates over the module basis."""
    sig = signature(P)
    ring = P.relations.ring
    if isinstance(sig, LocalSignature):
        coeffs = [0] * ring.nil_degree
        coeffs[0] = sig.free_rank
        for e in sig.torsion:
            coeffs[e] += 1
        return tuple(coeffs)
    return sig.multiplicities


def _module_unit(ring) -> tuple:
    if ring.is_local:
        return (1,) + (0,) * (ring.nil_degree - 1)
    return (1,) * ring.width


def phi(P: Presentation) -> GroupElement:
    """Matrix-side image of [R^m/R^n A]: m[<1>] - [<A>]."""
    ring = P.relations.ring
    unit = order_unit(ring)
    return group_element(
        tuple(P.gens * u for u in unit), class_of(P.relations)
    )


def psi(A: Matrix) -> tuple:
    """Module-side image of [<A>]: m[R] - [R^m/R^n A], via the signature."""
    P = presentation(A.cols, A)
    mc = module_class(P)
    unit = _module_unit(A.ring)
    return tuple(A.cols * u - c for u, c in zip(unit, mc))


def phi_group(ring, coeffs) -> GroupElement:
    """Linear extension of phi to the whole module-side group."""
    width = monoid_width(ring)
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != width:
        raise PreconditionError("module coefficients have the wrong length")
    if ring.is_local:
        diff = [sum(coeffs)] + [-c for c in coeffs[1:]]
    else:
        diff = list(coeffs)
    pos = tuple(max(d, 0) for d in diff)
    neg = tuple(max(-d, 0) for d in diff)
    return GroupElement(pos, neg)


def psi_group(ring, g: GroupElement) -> tuple:
    """Linear extension of psi to the whole matrix-side group."""
    d = group_diff(g)
    if len(d) != monoid_width(ring):
        raise PreconditionError("group element has the wrong width")
    if ring.is_local:
        return (sum(d),) + tuple(-x for x in d[1:])
    return tuple(d)


def module_cone_member(ring, coeffs) -> bool:
    """Positivity on the module side, transported through phi."""
    return cone_member(ring, phi_group(ring, coeffs))


def module_coeffs_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))
