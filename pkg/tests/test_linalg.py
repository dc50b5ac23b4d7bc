import itertools
import random

from crowell.linalg import SolutionSpace, extended_gcd, solve_integer


def brute_force(matrix, n, ncols):
    return {
        v for v in itertools.product(range(n), repeat=ncols)
        if all(sum(a * b for a, b in zip(row, v)) % n == 0 for row in matrix)
    }


def test_extended_gcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0)]:
        g, s, t = extended_gcd(a, b)
        assert s * a + t * b == g
        assert g >= 0


def test_solve_integer():
    x = solve_integer([[2, 4], [1, 3]], [6, 5])
    assert x is not None
    assert [2 * x[0] + 4 * x[1], x[0] + 3 * x[1]] == [6, 5]
    assert solve_integer([[2, 4]], [3]) is None
    assert solve_integer([[1, 1], [1, 1]], [1, 2]) is None


def test_solve_integer_randomized():
    rng = random.Random(6)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        matrix = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        witness = [rng.randint(-3, 3) for _ in range(n)]
        rhs = [sum(a * b for a, b in zip(row, witness)) for row in matrix]
        x = solve_integer(matrix, rhs)
        assert x is not None
        assert [sum(a * b for a, b in zip(row, x)) for row in matrix] == rhs


def test_empty_system():
    space = SolutionSpace([], 5, 2)
    assert space.count() == 25
    assert len(list(space)) == 25


def test_composite_modulus():
    # 2x = 0 over Z/4 has the two solutions 0 and 2
    space = SolutionSpace([[2]], 4, 1)
    assert space.count() == 2
    assert sorted(space) == [(0,), (2,)]


def test_solution_space_matches_brute_force_randomized():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.choice([2, 3, 4, 5, 6, 8, 9])
        ncols = rng.randint(1, 4)
        matrix = [[rng.randrange(n) for _ in range(ncols)] for _ in range(rng.randint(0, 4))]
        expected = brute_force(matrix, n, ncols)
        space = SolutionSpace(matrix, n, ncols)
        listed = list(space)
        assert space.count() == len(expected)
        assert len(listed) == len(set(listed))
        assert set(listed) == expected
        probe = tuple(rng.randrange(n) for _ in range(ncols))
        assert space.contains(probe) == (probe in expected)
