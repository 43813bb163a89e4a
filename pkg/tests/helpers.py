"""Shared random generators for the test suite."""

from rankcert import Matrix, is_invertible


def random_value(ring, rng):
    if ring.spec == "Z":
        return rng.randrange(-6, 7)
    if ring.is_finite:
        return rng.choice(ring.elements())
    # F_p[x]: restrained degrees keep determinants small
    return ring.normalize([rng.randrange(ring.p) for _ in range(rng.randrange(4))])


def random_matrix(ring, rng, rows, cols):
    return Matrix(
        ring, [[random_value(ring, rng) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(ring, rng, size, attempts=300):
    for _ in range(attempts):
        M = random_matrix(ring, rng, size, size)
        if is_invertible(M):
            return M
    raise AssertionError(f"no invertible {size}x{size} over {ring.spec} found")


def random_monoid_element(ring, rng, max_norm):
    from rankcert import order_unit

    width = len(order_unit(ring))
    vec = [0] * width
    for _ in range(rng.randrange(max_norm + 1)):
        vec[rng.randrange(width)] += 1
    return tuple(vec)
