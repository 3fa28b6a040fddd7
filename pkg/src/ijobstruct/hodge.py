"""Primitive Hodge numbers and diagonal characters via the Jacobian ring.

The middle primitive Hodge piece h^{n-1-q,q} of a smooth degree-d
hypersurface in P^n is the degree (q+1)d - n - 1 part of the Jacobian ring
R = C[x]/(df/dx_0, ..., df/dx_n); its dimension is a coefficient of the
Hilbert series ((1 - t^{d-1})/(1 - t))^{n+1}.  A diagonal automorphism with
weight vector w acts on a residue class A*Omega/f^{q+1} by the character
<alpha, w> + sum(w) - (q+1)*mu, where mu is the common monomial weight.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ijobstruct.delsarte import is_invariant


class DimensionMismatchError(ArithmeticError):
    """Quotient dimension disagrees with the Hilbert coefficient.

    Signals that the partial derivatives do not form a regular sequence,
    i.e. the input matrix does not define a smooth hypersurface.
    """


@dataclass(frozen=True)
class HodgeVector:
    n: int
    d: int
    primitive: tuple  # h^{n-1-q, q} for q = 0 .. n-1

    def __getitem__(self, q):
        return self.primitive[q]

    def labels(self):
        return tuple(
            "h^{%d,%d}" % (self.n - 1 - q, q) for q in range(self.n)
        )


def hilbert_coefficient(n, d, e):
    """Coefficient of t^e in ((1 - t^{d-1})/(1 - t))^{n+1}."""
    if e < 0:
        return 0
    coeffs = [1]
    for _ in range(n + 1):
        new = [0] * (len(coeffs) + d - 2)
        for i, c in enumerate(coeffs):
            for j in range(d - 1):
                new[i + j] += c
        coeffs = new
    return coeffs[e] if e < len(coeffs) else 0


def hodge_numbers(n, d):
    """Primitive middle Hodge numbers of a smooth degree-d hypersurface in P^n."""
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    prim = tuple(
        hilbert_coefficient(n, d, (q + 1) * d - n - 1) for q in range(n)
    )
    return HodgeVector(n=n, d=d, primitive=prim)


def monomials(nvars, degree):
    """Exponent vectors of the given total degree, descending grevlex."""
    if degree < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), degree, nvars)
    out.sort(key=lambda a: tuple(reversed(a)))
    return out


@dataclass(frozen=True)
class JacobianRingBasis:
    degree: int
    basis: tuple  # monomial exponent vectors


@dataclass(frozen=True)
class CharacterMultiset:
    """Multiset of character exponents mod N on one Hodge piece."""

    modulus: int
    counts: tuple  # sorted (exponent, multiplicity) pairs

    def total(self):
        return sum(m for _, m in self.counts)

    def exponents(self):
        return tuple(e for e, _ in self.counts)

    def as_dict(self):
        return dict(self.counts)

    def negated(self):
        merged = {}
        for e, m in self.counts:
            key = (-e) % self.modulus
            merged[key] = merged.get(key, 0) + m
        return CharacterMultiset(
            modulus=self.modulus, counts=tuple(sorted(merged.items()))
        )


def _ideal_generators(matrix, e):
    """Degree-e spanning set of the Jacobian ideal as exponent/coefficient rows."""
    rows = matrix.rows
    nvars = matrix.nvars
    d = matrix.d
    gens = []
    if e - (d - 1) < 0:
        return gens
    for mono in monomials(nvars, e - (d - 1)):
        for j in range(nvars):
            terms = []
            for row in rows:
                if row[j] == 0:
                    continue
                exp = tuple(
                    mono[i] + row[i] - (1 if i == j else 0)
                    for i in range(nvars)
                )
                terms.append((exp, row[j]))
            if terms:
                gens.append(terms)
    return gens


def _echelon_nonpivots(columns, generators):
    """Echelon-reduce generator rows; return non-pivot column labels."""
    index = {mono: i for i, mono in enumerate(columns)}
    width = len(columns)
    mat = []
    for terms in generators:
        row = [Fraction(0)] * width
        for exp, coeff in terms:
            row[index[exp]] += coeff
        mat.append(row)
    pivots = []
    rank = 0
    for col in range(width):
        pivot_row = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        lead = mat[rank][col]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                factor = mat[i][col] / lead
                mat[i] = [
                    a - factor * b for a, b in zip(mat[i], mat[rank])
                ]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    return [columns[i] for i in range(width) if i not in pivot_set]


def jacobian_ring_basis(matrix, e):
    """Monomial basis of the degree-e piece of the Jacobian ring.

    Requires a smooth matrix; a dimension clash with the Hilbert coefficient
    raises DimensionMismatchError.
    """
    cols = monomials(matrix.nvars, e)
    basis = _echelon_nonpivots(cols, _ideal_generators(matrix, e))
    expected = hilbert_coefficient(matrix.n, matrix.d, e)
    if len(basis) != expected:
        raise DimensionMismatchError(
            "quotient dimension %d != Hilbert coefficient %d in degree %d"
            % (len(basis), expected, e)
        )
    return JacobianRingBasis(degree=e, basis=tuple(basis))


def diagonal_character(matrix, wclass, q):
    """Character multiset of a diagonal automorphism on h^{n-1-q,q}.

    The Jacobian ideal is weight-homogeneous, so elimination runs blockwise
    per monomial weight and every quotient class has a well-defined
    character exponent.
    """
    n, d = matrix.n, matrix.d
    N = wclass.modulus
    w = wclass.weights
    mu = wclass.common_weight
    if is_invariant(matrix, w, N) != mu:
        raise ValueError("weight class is not invariant for this matrix")
    e = (q + 1) * d - n - 1
    cols = monomials(matrix.nvars, e)
    expected = hilbert_coefficient(n, d, e)

    def weight_of(mono):
        return sum(a * b for a, b in zip(mono, w)) % N

    blocks = {}
    for mono in cols:
        blocks.setdefault(weight_of(mono), []).append(mono)
    gen_blocks = {}
    for terms in _ideal_generators(matrix, e):
        wt = weight_of(terms[0][0])
        gen_blocks.setdefault(wt, []).append(terms)

    shift = (sum(w) - (q + 1) * mu) % N
    counts = {}
    total = 0
    for wt in sorted(blocks):
        sub = _echelon_nonpivots(blocks[wt], gen_blocks.get(wt, []))
        total += len(sub)
        if sub:
            exp = (wt + shift) % N
            counts[exp] = counts.get(exp, 0) + len(sub)
    if total != expected:
        raise DimensionMismatchError(
            "quotient dimension %d != Hilbert coefficient %d in degree %d"
            % (total, expected, e)
        )
    return CharacterMultiset(modulus=N, counts=tuple(sorted(counts.items())))


def faithfulness_check(characters):
    """True iff the exponents across the pieces generate Z/N.

    Pass every middle Hodge piece of one diagonal generator; the generator
    acts faithfully on the integral middle cohomology iff the character
    exponents generate the full cyclic group.
    """
    characters = list(characters)
    if not characters:
        return False
    modulus = characters[0].modulus
    g = modulus
    for char in characters:
        if char.modulus != modulus:
            raise ValueError("characters have mixed moduli")
        for e, m in char.counts:
            if m:
                g = gcd(g, e)
    return g == 1
