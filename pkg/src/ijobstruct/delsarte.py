"""Delsarte hypersurfaces: exponent matrices, symmetries, smoothness.

A Delsarte hypersurface is cut out by a polynomial with exactly n+1 monomials
in n+1 variables, all coefficients 1, encoded by the square matrix whose rows
are the monomial exponent vectors.  This module computes the group of
diagonal automorphisms modulo scalars, the monomial (variable-permutation)
symmetries, the conjugation exponent tying the two together, and an exact
smoothness verdict for the supported stratum shapes.
"""

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from ijobstruct import _kernels
from ijobstruct.intlinalg import (
    FiniteAbelianGroup,
    SingularMatrixError,
    det,
    smith_normal_form,
    torus_kernel,
)


class NotNormalizingError(ValueError):
    """The permutation does not normalize the given diagonal class."""


@dataclass(frozen=True)
class ExponentMatrix:
    """Square matrix of monomial exponents, one row per monomial.

    n is the ambient projective dimension (the hypersurface lives in P^n and
    has n+1 variables), d the common row sum (the degree).
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("empty matrix")
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("exponent matrix must be square")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("exponents must be nonnegative")
        sums = {sum(r) for r in rows}
        if len(sums) != 1:
            raise ValueError("all rows must sum to the same degree")
        if sums == {0}:
            raise ValueError("degree must be positive")
        if len(set(rows)) != size:
            raise ValueError("rows must be pairwise distinct")

    @property
    def nvars(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows) - 1

    @property
    def d(self):
        return sum(self.rows[0])

    def determinant(self):
        return det(self.rows)

    def canonical(self):
        """Representative under simultaneous variable relabeling."""
        return ExponentMatrix(_kernels.canonical_form(self.rows))

    def to_text(self):
        lines = ["%d %d" % (self.n, self.d)]
        lines += [" ".join(str(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def matrix_from_text(text):
    """Parse the 'n d' header plus n+1 rows of n+1 integers."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("header must be two integers: n d")
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError("header must be two integers: n d") from None
    if len(lines) != n + 2:
        raise ValueError("expected %d rows, got %d" % (n + 1, len(lines) - 1))
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(x) for x in ln.split())
        except ValueError:
            raise ValueError("malformed matrix row: %r" % ln) from None
        if len(row) != n + 1:
            raise ValueError("row length %d != %d" % (len(row), n + 1))
        if sum(row) != d:
            raise ValueError("row sum %d != degree %d" % (sum(row), d))
        rows.append(row)
    return ExponentMatrix(tuple(rows))


def klein_matrix(n=4):
    """Loop matrix with rows 3e_i + e_{i+1}: the Klein quartic family."""
    size = n + 1
    rows = []
    for i in range(size):
        row = [0] * size
        row[i] = 3
        row[(i + 1) % size] = 1
        rows.append(tuple(row))
    return ExponentMatrix(tuple(rows))


def fermat_matrix(n=4, d=4):
    size = n + 1
    return ExponentMatrix(
        tuple(tuple(d if i == j else 0 for j in range(size)) for i in range(size))
    )


@dataclass(frozen=True)
class WeightClass:
    """Diagonal automorphism x_i -> zeta^{w_i} x_i up to a scalar shift.

    Two weight vectors give the same projective automorphism iff they differ
    by a constant vector; common_weight is the shared value of all row
    weights M*w mod N.
    """

    modulus: int
    weights: tuple
    common_weight: int

    def __post_init__(self):
        N = self.modulus
        if N < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(
            self, "weights", tuple(int(x) % N for x in self.weights)
        )
        object.__setattr__(self, "common_weight", int(self.common_weight) % N)

    @property
    def order(self):
        """Order of the projective automorphism (weights modulo shifts)."""
        w0 = self.weights[0]
        g = self.modulus
        for x in self.weights:
            g = gcd(g, x - w0)
        return self.modulus // g

    def canonical_weights(self):
        """Gauge w_0 = 0, then lex-min over unit multiples u*w mod N."""
        N = self.modulus
        base = tuple((x - self.weights[0]) % N for x in self.weights)
        best = base
        for u in range(2, N):
            if gcd(u, N) != 1:
                continue
            cand = tuple((u * x) % N for x in base)
            if cand < best:
                best = cand
        return best

    def same_class(self, other):
        return (
            self.modulus == other.modulus
            and self.canonical_weights() == other.canonical_weights()
        )


def is_invariant(matrix, weights, modulus):
    """Common row weight mu if all rows of M*w agree mod N, else None."""
    rows = matrix.rows
    if len(weights) != len(rows):
        raise ValueError(
            "weight vector length %d != %d" % (len(weights), len(rows))
        )
    vals = {
        sum(r * w for r, w in zip(row, weights)) % modulus for row in rows
    }
    if len(vals) == 1:
        return vals.pop()
    return None


def weight_class(matrix, weights, modulus):
    """Build an invariant WeightClass for the matrix, or raise ValueError."""
    mu = is_invariant(matrix, weights, modulus)
    if mu is None:
        raise ValueError("weights are not invariant for this matrix")
    return WeightClass(modulus=modulus, weights=tuple(weights), common_weight=mu)


def canonical_class(matrix, wclass):
    """Canonical representative of a weight class, with mu recomputed."""
    return weight_class(matrix, wclass.canonical_weights(), wclass.modulus)


@dataclass(frozen=True)
class DiagonalSymmetryGroup:
    """Diagonal automorphisms modulo scalars, with WeightClass generators."""

    invariant_factors: tuple
    generators: tuple  # one WeightClass per invariant factor

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
            out = out * f // gcd(out, f)
        return out

    @property
    def is_trivial(self):
        return not self.invariant_factors

    def abelian_group(self):
        return FiniteAbelianGroup(
            invariant_factors=self.invariant_factors,
            generators=tuple(
                (g.weights, g.modulus) for g in self.generators
            ),
        )


def diagonal_symmetry_group(matrix):
    """Group of diagonal automorphisms modulo scalars.

    Gauge-fixes w_0 = 0 and solves the row-difference system on the rational
    torus; the order always equals |det M| / d.
    """
    rows = matrix.rows
    n = matrix.n
    diff = tuple(
        tuple(rows[j][c] - rows[0][c] for c in range(1, n + 1))
        for j in range(1, n + 1)
    )
    kernel = torus_kernel(diff)  # SingularMatrixError iff det M = 0
    gens = []
    for vec, f in kernel.generators:
        lifted = (0,) + vec
        gens.append(weight_class(matrix, lifted, f))
    return DiagonalSymmetryGroup(
        invariant_factors=kernel.invariant_factors, generators=tuple(gens)
    )


def p_torsion_class(group, p):
    """A weight class of prime order p inside the diagonal group."""
    for wc, f in zip(reversed(group.generators), reversed(group.invariant_factors)):
        if f % p == 0:
            reduced = tuple(x % p for x in wc.weights)
            return WeightClass(
                modulus=p, weights=reduced, common_weight=wc.common_weight % p
            )
    raise ValueError("no element of order %d in the diagonal group" % p)


@dataclass(frozen=True)
class PermSymmetry:
    """Variable substitution x_i -> x_{mapping[i]} preserving the row set."""

    mapping: tuple

    def order(self):
        k = 1
        current = self.mapping
        ident = tuple(range(len(self.mapping)))
        while current != ident:
            current = tuple(self.mapping[i] for i in current)
            k += 1
        return k

    def compose(self, other):
        """Substitution self followed by other."""
        return PermSymmetry(tuple(other.mapping[m] for m in self.mapping))

    def apply_to_weights(self, weights):
        return tuple(weights[m] for m in self.mapping)

    def apply_to_support(self, support):
        return tuple(sorted(self.mapping[i] for i in support))

    @property
    def is_identity(self):
        return self.mapping == tuple(range(len(self.mapping)))


def permutation_symmetries(matrix):
    """All variable permutations preserving the row set, sorted."""
    perms = _kernels.row_set_symmetries(matrix.rows)
    return tuple(PermSymmetry(tuple(p)) for p in sorted(perms))


def conjugation_exponent(matrix, wclass, sigma):
    """Residue r with w o sigma = r*w + c*(1,...,1) mod N.

    This is the exponent in sigma phi sigma^{-1} = phi^r for the diagonal
    automorphism phi of the weight class.  Raises NotNormalizingError when no
    (r, c) solves the congruence.  If several r solve it (degenerate classes)
    the smallest unit solution is returned.
    """
    N = wclass.modulus
    w = wclass.weights
    if len(sigma.mapping) != len(w):
        raise ValueError("permutation and weight lengths differ")
    sw = sigma.apply_to_weights(w)
    valid = []
    for r in range(N):
        c = (sw[0] - r * w[0]) % N
        if all((r * wi + c - swi) % N == 0 for wi, swi in zip(w, sw)):
            valid.append(r)
    if not valid:
        raise NotNormalizingError(
            "permutation does not normalize the diagonal class"
        )
    units = [r for r in valid if gcd(r, N) == 1]
    return units[0] if units else valid[0]


# ---------------------------------------------------------------------------
# Smoothness
# ---------------------------------------------------------------------------
#
# For each torus stratum (a support set S of coordinates allowed to be
# nonzero) restrict all n+1 partial derivatives.  With unit coefficients the
# restricted equations have 0, 1, 2, or more surviving monomials:
#   * some equation with exactly 1 term  -> no critical point on the stratum
#   * all equations empty                -> the whole stratum is singular
#   * all nonempty equations have 2 terms -> a binomial system; solvable on
#     the torus iff every integer left-kernel vector of the exponent
#     difference matrix multiplies the constants to exactly 1
#   * anything with >= 3 terms           -> outside the supported family
# Euler's relation puts every critical point on the hypersurface, so f = 0
# does not need separate treatment.


@dataclass(frozen=True)
class StratumReason:
    support: tuple
    reason: str  # 'one-term' | 'binomial-inconsistent'
    detail: str


@dataclass(frozen=True)
class SingularWitness:
    support: tuple
    binomial_exponents: tuple  # rows of the exponent-difference matrix
    binomial_constants: tuple  # Fractions, one per binomial equation
    point: tuple  # complex coordinates, zero off the support
    gradient_norm: float


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: str  # 'smooth' | 'singular' | 'unsupported'
    witness: SingularWitness | None = None
    certificate: tuple = ()
    detail: str = ""

    @property
    def is_smooth(self):
        return self.verdict == "smooth"


def gradient_at(matrix, point):
    """The n+1 partial derivatives of f = sum of unit-coefficient monomials."""
    rows = matrix.rows
    nvars = matrix.nvars
    out = []
    for j in range(nvars):
        total = 0j
        for row in rows:
            if row[j] == 0:
                continue
            term = complex(row[j])
            for i in range(nvars):
                e = row[i] - (1 if i == j else 0)
                if e:
                    term *= point[i] ** e
            total += term
        out.append(total)
    return out


def _grad_norm(matrix, point):
    return sum(abs(g) ** 2 for g in gradient_at(matrix, point)) ** 0.5


def _stratum_equations(matrix, support):
    rows = matrix.rows
    nvars = matrix.nvars
    inside = set(support)
    eqs = []
    for j in range(nvars):
        terms = []
        for row in rows:
            if row[j] < 1:
                continue
            exp = tuple(
                row[i] - (1 if i == j else 0) for i in range(nvars)
            )
            if all(e == 0 or i in inside for i, e in enumerate(exp)):
                terms.append((row[j], exp))
        terms.sort(key=lambda t: t[1])
        eqs.append(terms)
    return eqs


def _principal_root(value, k):
    """Principal complex k-th root of a nonzero rational."""
    root = float(abs(value)) ** (1.0 / k)
    ang = 0.0 if value > 0 else cmath.pi
    return root * cmath.exp(1j * ang / k)


def _solve_binomial(matrix, support, vrows, consts):
    """Check torus solvability of x^V = c; return a witness point or None."""
    cols = list(support)
    vs = [[row[c] for c in cols] for row in vrows]
    snf = smith_normal_form(vs)
    diag = snf.diagonal
    rank = sum(1 for x in diag if x != 0)
    k = len(vs)
    # left kernel of V = rows of U past the rank
    for i in range(rank, k):
        prod = Fraction(1)
        for c, lam in zip(consts, snf.U[i]):
            prod *= Fraction(c) ** lam
        if prod != 1:
            return None, (snf.U[i], prod)
    # consistent: build a point via y_i^{d_i} = prod_j c_j^{U[i][j]}
    s = len(cols)
    y = []
    for i in range(s):
        if i < rank:
            b = Fraction(1)
            for c, uu in zip(consts, snf.U[i]):
                b *= Fraction(c) ** uu
            y.append(_principal_root(b, diag[i]))
        else:
            y.append(1.0 + 0j)
    point = [0j] * matrix.nvars
    for pos, c in enumerate(cols):
        val = 1.0 + 0j
        for m in range(s):
            e = snf.V[pos][m]
            if e:
                val *= y[m] ** e
        point[c] = val
    scale = max(abs(x) for x in point)
    point = tuple(x / scale for x in point)
    return point, None


def _analyze_stratum(matrix, support):
    eqs = _stratum_equations(matrix, support)
    sizes = [len(t) for t in eqs]
    if any(s == 1 for s in sizes):
        j = sizes.index(1)
        coeff, exp = eqs[j][0]
        return (
            "clean",
            StratumReason(
                support=support,
                reason="one-term",
                detail="d/dx%d has the single term %d*x^%s"
                % (j, coeff, list(exp)),
            ),
            None,
        )
    if all(s == 0 for s in sizes):
        point = tuple(
            1.0 + 0j if i in set(support) else 0j for i in range(matrix.nvars)
        )
        witness = SingularWitness(
            support=support,
            binomial_exponents=(),
            binomial_constants=(),
            point=point,
            gradient_norm=_grad_norm(matrix, point),
        )
        return ("singular", None, witness)
    if all(s in (0, 2) for s in sizes):
        vrows = []
        consts = []
        for terms in eqs:
            if not terms:
                continue
            (a, e1), (b, e2) = terms
            vrows.append(tuple(x - y for x, y in zip(e1, e2)))
            consts.append(Fraction(-b, a))
        point, refutation = _solve_binomial(matrix, support, vrows, consts)
        if point is None:
            lam, prod = refutation
            return (
                "clean",
                StratumReason(
                    support=support,
                    reason="binomial-inconsistent",
                    detail="kernel vector %s gives constant product %s != 1"
                    % (list(lam), prod),
                ),
                None,
            )
        witness = SingularWitness(
            support=support,
            binomial_exponents=tuple(vrows),
            binomial_constants=tuple(consts),
            point=point,
            gradient_norm=_grad_norm(matrix, point),
        )
        return ("singular", None, witness)
    return ("unsupported", None, None)


def _support_representatives(matrix, symmetries):
    """Nonempty supports, one per orbit of the permutation symmetries."""
    nvars = matrix.nvars
    seen = set()
    reps = []
    for size in range(1, nvars + 1):
        for sub in combinations(range(nvars), size):
            if sub in seen:
                continue
            reps.append(sub)
            for sym in symmetries:
                seen.add(sym.apply_to_support(sub))
    return reps


def smoothness_check(matrix):
    """Exact smoothness verdict for a unit-coefficient Delsarte hypersurface.

    Strata are enumerated up to the permutation symmetries of the matrix;
    symmetric strata have identical restricted systems, so the verdict is
    unaffected.  A singular stratum anywhere wins over an unsupported one.
    """
    symmetries = permutation_symmetries(matrix)
    reasons = []
    unsupported = []
    for support in _support_representatives(matrix, symmetries):
        kind, reason, witness = _analyze_stratum(matrix, support)
        if kind == "singular":
            return SmoothnessReport(verdict="singular", witness=witness)
        if kind == "unsupported":
            unsupported.append(support)
        else:
            reasons.append(reason)
    if unsupported:
        return SmoothnessReport(
            verdict="unsupported",
            detail="stratum %s has an equation with >= 3 surviving terms"
            % (list(unsupported[0]),),
        )
    return SmoothnessReport(verdict="smooth", certificate=tuple(reasons))
