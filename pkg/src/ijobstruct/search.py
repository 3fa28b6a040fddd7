"""Enumeration of symmetric Delsarte hypersurfaces ranked by the obstruction.

The default row family consists of the pure powers d*e_i and the near-powers
(d-1)*e_i + e_j, which covers Fermat matrices, chains, loops, and their block
mixtures.  Candidates are enumerated once per relabeling class (canonical
form = lexicographically minimal column permutation with sorted rows), then
pushed through smoothness, diagonal/permutation symmetry extraction, and the
obstruction engine.
"""

import json
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ijobstruct import _kernels
from ijobstruct.delsarte import (
    ExponentMatrix,
    NotNormalizingError,
    conjugation_exponent,
    diagonal_symmetry_group,
    p_torsion_class,
    permutation_symmetries,
    smoothness_check,
)
from ijobstruct.intlinalg import SingularMatrixError
from ijobstruct.hodge import hodge_numbers
from ijobstruct.obstruction import (
    DEFAULT_RULES,
    InvalidGroupError,
    MetacyclicGroup,
    ProblemInstance,
    is_prime,
    obstruct,
)

MAX_N = 5
MAX_D = 5


def default_family(n, d):
    """Rows of the form d*e_i or (d-1)*e_i + e_j, sorted."""
    size = n + 1
    rows = set()
    for i in range(size):
        row = [0] * size
        row[i] = d
        rows.add(tuple(row))
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            row = [0] * size
            row[i] = d - 1
            row[j] = 1
            rows.add(tuple(row))
    return tuple(sorted(rows))


@dataclass(frozen=True)
class SearchSpec:
    n: int = 4
    d: int = 4
    family: tuple = None
    min_prime: int = 31
    ruleset: frozenset = DEFAULT_RULES
    threads: int = 1

    def __post_init__(self):
        if not (2 <= self.n <= MAX_N and 2 <= self.d <= MAX_D):
            raise ValueError(
                "search is guarded to 2 <= n <= %d, 2 <= d <= %d" % (MAX_N, MAX_D)
            )
        if self.min_prime < 2:
            raise ValueError("minimum prime threshold must be >= 2")
        if self.family is None:
            object.__setattr__(self, "family", default_family(self.n, self.d))
        fam = tuple(tuple(int(x) for x in row) for row in self.family)
        if any(len(row) != self.n + 1 or sum(row) != self.d for row in fam):
            raise ValueError("family rows must have length n+1 and sum d")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "ruleset", frozenset(self.ruleset))


@lru_cache(maxsize=8)
def _canonical_subsets(family, size):
    seen = set()
    for rows in combinations(family, size):
        seen.add(_kernels.canonical_form(rows))
    return tuple(sorted(seen))


def enumerate_matrices(spec):
    """Canonical representatives of all (n+1)-subsets of the family, sorted."""
    for rows in _canonical_subsets(spec.family, spec.n + 1):
        yield ExponentMatrix(rows)


@dataclass(frozen=True)
class CandidateReport:
    matrix: ExponentMatrix
    hit: bool
    reason: str  # '' for hits, otherwise why the candidate dropped out
    smoothness: str
    invariant_factors: tuple = ()
    p: int = 0
    q: int = 0
    r: int = 0
    verdict: str = ""

    def to_json_dict(self):
        return {
            "v": 1,
            "n": self.matrix.n,
            "d": self.matrix.d,
            "rows": [list(row) for row in self.matrix.rows],
            "hit": self.hit,
            "reason": self.reason,
            "smoothness": self.smoothness,
            "diagonal_group": list(self.invariant_factors),
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "verdict": self.verdict,
        }


def evaluate_candidate(matrix, spec):
    """Full pipeline for one canonical matrix; never raises."""
    n_dim = max(hodge_numbers(matrix.n, matrix.d).primitive)
    report = smoothness_check(matrix)
    if not report.is_smooth:
        return CandidateReport(
            matrix=matrix,
            hit=False,
            reason=report.verdict,
            smoothness=report.verdict,
        )
    try:
        group = diagonal_symmetry_group(matrix)
    except SingularMatrixError:
        return CandidateReport(
            matrix=matrix,
            hit=False,
            reason="degenerate-exponent-matrix",
            smoothness="smooth",
        )
    primes = sorted(
        {f for f in _prime_factors(group.exponent) if f > n_dim and f >= spec.min_prime},
        reverse=True,
    )
    if not primes:
        return CandidateReport(
            matrix=matrix,
            hit=False,
            reason="no-prime-above-threshold",
            smoothness="smooth",
            invariant_factors=group.invariant_factors,
        )
    p = primes[0]
    wclass = p_torsion_class(group, p)
    for sigma in permutation_symmetries(matrix):
        q = sigma.order()
        if not is_prime(q):
            continue
        try:
            r = conjugation_exponent(matrix, wclass, sigma)
        except NotNormalizingError:
            continue
        if r % p == 1:
            continue
        try:
            instance = ProblemInstance(
                dimension=n_dim, group=MetacyclicGroup(p=p, q=q, r=r)
            )
        except InvalidGroupError:
            continue
        trace = obstruct(instance, spec.ruleset)
        return CandidateReport(
            matrix=matrix,
            hit=True,
            reason="",
            smoothness="smooth",
            invariant_factors=group.invariant_factors,
            p=p,
            q=q,
            r=r,
            verdict=trace.verdict,
        )
    return CandidateReport(
        matrix=matrix,
        hit=False,
        reason="no-normalizing-prime-symmetry",
        smoothness="smooth",
        invariant_factors=group.invariant_factors,
        p=p,
    )


def _prime_factors(m):
    out = set()
    f = 2
    while f * f <= m:
        while m % f == 0:
            out.add(f)
            m //= f
        f += 1
    if m > 1:
        out.add(m)
    return out


def _evaluate_for_pool(args):
    rows, spec = args
    return evaluate_candidate(ExponentMatrix(rows), spec)


def search(spec):
    """All hits, ranked by (verdict, p descending, canonical rows)."""
    candidates = list(enumerate_matrices(spec))
    if spec.threads > 1:
        with multiprocessing.Pool(spec.threads) as pool:
            reports = pool.map(
                _evaluate_for_pool,
                [(m.rows, spec) for m in candidates],
                chunksize=max(1, len(candidates) // (spec.threads * 8)),
            )
    else:
        reports = [evaluate_candidate(m, spec) for m in candidates]
    hits = [r for r in reports if r.hit]
    verdict_rank = {"contradiction": 0, "inconclusive": 1}
    hits.sort(
        key=lambda r: (verdict_rank.get(r.verdict, 2), -r.p, r.matrix.rows)
    )
    return hits


def search_jsonl(spec):
    """Deterministic JSON-lines rendering of the search hits."""
    lines = [
        json.dumps(r.to_json_dict(), separators=(", ", ": ")) for r in search(spec)
    ]
    return "".join(line + "\n" for line in lines)
