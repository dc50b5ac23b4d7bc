"""
Exact linear algebra over Z and Z/n.

``solve_integer`` finds an integer solution of A x = b by unimodular column
operations (a column Hermite reduction), the way the bounded relation search
needs it. ``SolutionSpace`` holds the Howell-style echelon form of a
homogeneous system over Z/n and supports exact counting, membership and
enumeration even when n is composite.
"""

import itertools
import math
from typing import Iterator, List, Optional, Sequence, Tuple


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
    """
    One integer solution of matrix · x = rhs, or None.

    Args:
        matrix: m rows of n integers
        rhs: m integers

    Returns:
        List of n integers, or None when no integer solution exists
    """
    rows = [list(row) for row in matrix]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    # U tracks the column operations: A·U = H.
    transform = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots: List[Tuple[int, int]] = []
    col = 0
    for r in range(m):
        if col == n:
            break
        row = rows[r]
        for j in range(col + 1, n):
            if row[j] == 0:
                continue
            a, b = row[col], row[j]
            g, s, t = extended_gcd(a, b)
            p, q = a // g, b // g
            for target in itertools.chain(rows, transform):
                x, y = target[col], target[j]
                target[col] = s * x + t * y
                target[j] = -q * x + p * y
        if row[col] != 0:
            pivots.append((r, col))
            col += 1
    pivot_of_row = dict(pivots)
    y = [0] * n
    for r in range(m):
        known = sum(rows[r][c] * y[c] for c in range(col))
        residual = rhs[r] - known
        if r in pivot_of_row:
            c = pivot_of_row[r]
            if residual % rows[r][c]:
                return None
            y[c] = residual // rows[r][c]
        elif residual:
            return None
    return [sum(transform[i][k] * y[k] for k in range(n)) for i in range(n)]


def _unit_for(value: int, modulus: int) -> int:
    # Unit u with u*value ≡ gcd(value, modulus) (mod modulus).
    g = math.gcd(value, modulus)
    reduced_mod = modulus // g
    base = pow(value // g, -1, reduced_mod) if reduced_mod > 1 else 0
    for k in range(g + 1):
        candidate = (base + k * reduced_mod) % modulus
        if math.gcd(candidate, modulus) == 1:
            return candidate
    raise ArithmeticError(f"No unit lifts {base} modulo {modulus}")


class SolutionSpace:
    """
    Solutions of a homogeneous linear system over Z/n.

    The rows are kept in an echelon form whose pivots divide n and that is
    closed under multiplying a row by n / pivot. With that closure, back
    substitution from the last column never hits an unsolvable pivot
    equation, so the solution count is the product of the pivots times
    n to the number of free columns.
    """

    def __init__(self, matrix: Sequence[Sequence[int]], modulus: int, ncols: int):
        self.modulus = modulus
        self.ncols = ncols
        self.rows: List[Tuple[int, List[int]]] = self._echelon(matrix)
        self._pivot_rows = {col: row for col, row in self.rows}

    def _echelon(self, matrix: Sequence[Sequence[int]]) -> List[Tuple[int, List[int]]]:
        n = self.modulus
        pool = [[v % n for v in row] for row in matrix]
        pool = [row for row in pool if any(row)]
        result = []
        for col in range(self.ncols):
            active = [row for row in pool if row[col]]
            rest = [row for row in pool if not row[col]]
            if not active:
                pool = rest
                continue
            pivot = active[0]
            for other in active[1:]:
                a, b = pivot[col], other[col]
                g, s, t = extended_gcd(a, b)
                p, q = a // g, b // g
                new_pivot = [(s * x + t * y) % n for x, y in zip(pivot, other)]
                reduced = [(p * y - q * x) % n for x, y in zip(pivot, other)]
                pivot = new_pivot
                if any(reduced):
                    rest.append(reduced)
            unit = _unit_for(pivot[col], n)
            pivot = [(unit * x) % n for x in pivot]
            g = pivot[col]
            annihilated = [((n // g) * x) % n for x in pivot]
            if any(annihilated):
                rest.append(annihilated)
            result.append((col, pivot))
            pool = rest
        return result

    @property
    def free_columns(self) -> List[int]:
        return [c for c in range(self.ncols) if c not in self._pivot_rows]

    def count(self) -> int:
        total = self.modulus ** len(self.free_columns)
        for col, row in self.rows:
            total *= row[col]
        return total

    def contains(self, vector: Sequence[int]) -> bool:
        return all(
            sum(a * b for a, b in zip(row, vector)) % self.modulus == 0 for _, row in self.rows
        )

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        values = [0] * self.ncols
        yield from self._fill(self.ncols - 1, values)

    def _fill(self, col: int, values: List[int]) -> Iterator[Tuple[int, ...]]:
        if col < 0:
            yield tuple(values)
            return
        n = self.modulus
        row = self._pivot_rows.get(col)
        if row is None:
            choices = range(n)
        else:
            g = row[col]
            s = sum(row[j] * values[j] for j in range(col + 1, self.ncols)) % n
            target = (-s) % n
            if target % g:
                return
            step = n // g
            base = (target // g) % step
            choices = range(base, n, step)
        for choice in choices:
            values[col] = choice
            yield from self._fill(col - 1, values)
        values[col] = 0
