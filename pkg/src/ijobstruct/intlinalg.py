"""Exact integer linear algebra: Smith normal form and torus kernels.

All arithmetic uses Python's arbitrary-precision integers; nothing here ever
touches floating point.  Matrices are plain sequences of integer rows and are
returned as tuples of tuples.
"""

from dataclasses import dataclass
from math import lcm


class SingularMatrixError(ValueError):
    """Raised when an operation requires a nonsingular matrix."""


def _as_rows(mat):
    rows = tuple(tuple(int(x) for x in row) for row in mat)
    if not rows or not rows[0]:
        raise ValueError("matrix must be nonempty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(k):
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def mat_mul(a, b):
    a = _as_rows(a)
    b = _as_rows(b)
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in product")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def det(mat):
    """Determinant by fraction-free (Bareiss) elimination, exact."""
    rows = _as_rows(mat)
    n = len(rows)
    if len(rows[0]) != n:
        raise ValueError("determinant needs a square matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """U * M * V = D with unimodular U, V and D diagonal.

    Diagonal entries are nonnegative and each divides the next; zero entries
    (rank deficiency) sit at the end of the diagonal.
    """

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self):
        return tuple(
            self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))
        )

    @property
    def invariant_factors(self):
        """Nontrivial invariant factors (diagonal entries > 1)."""
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(mat):
    """Smith normal form with transforms.

    Pivot choice is the smallest nonzero absolute value in the trailing
    block, ties broken by lowest (row, column) index, so the decomposition
    is reproducible run to run.
    """
    rows = _as_rows(mat)
    m, n = len(rows), len(rows[0])
    d = [list(r) for r in rows]
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        if factor:
            d[dst] = [x + factor * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        if factor:
            for row in d:
                row[dst] += factor * row[src]
            for row in v:
                row[dst] += factor * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    a = abs(d[i][j])
                    if a and (pivot is None or a < pivot[0]):
                        pivot = (a, i, j)
            if pivot is None:
                break
            _, pi, pj = pivot
            swap_rows(t, pi)
            swap_cols(t, pj)
            if d[t][t] < 0:
                negate_row(t)
            p = d[t][t]
            for i in range(t + 1, m):
                add_row(t, i, -(d[i][t] // p))
            for j in range(t + 1, n):
                add_col(t, j, -(d[t][j] // p))
            if any(d[i][t] for i in range(t + 1, m)) or any(
                d[t][j] for j in range(t + 1, n)
            ):
                continue  # remainders smaller than the pivot; repick
            viol = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if d[i][j] % p
                ),
                None,
            )
            if viol is None:
                break
            add_row(viol, t, 1)  # drag the bad row up and restart the step
        if all(
            d[i][j] == 0 for i in range(t, m) for j in range(t, n)
        ):
            break

    return SnfDecomposition(
        U=tuple(tuple(r) for r in u),
        D=tuple(tuple(r) for r in d),
        V=tuple(tuple(r) for r in v),
    )


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group given by invariant factors and residue generators.

    Each generator is a pair (vector, modulus): the vector of numerators of a
    torus point with denominator equal to the modulus.
    """

    invariant_factors: tuple
    generators: tuple  # of (residue tuple, modulus)

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisor chain")
        if any(f < 2 for f in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    @property
    def order(self):
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def exponent(self):
        out = 1
        for f in self.invariant_factors:
            out = lcm(out, f)
        return out

    @property
    def is_trivial(self):
        return not self.invariant_factors


def torus_kernel(mat):
    """Solution group of B*w = 0 over the rational torus (residues mod 1).

    For nonsingular square B the solutions {w : B*w integral} modulo the
    integer lattice form a finite abelian group of order |det B|; generators
    come out of the Smith normal form as columns of the right transform.
    """
    rows = _as_rows(mat)
    n = len(rows)
    if len(rows[0]) != n:
        raise ValueError("torus_kernel needs a square matrix")
    snf = smith_normal_form(rows)
    diag = snf.diagonal
    if any(x == 0 for x in diag):
        raise SingularMatrixError("matrix is singular (det = 0)")
    gens = []
    factors = []
    for i, f in enumerate(diag):
        if f == 1:
            continue
        factors.append(f)
        column = tuple(snf.V[r][i] % f for r in range(n))
        gens.append((column, f))
    return FiniteAbelianGroup(
        invariant_factors=tuple(factors), generators=tuple(gens)
    )
