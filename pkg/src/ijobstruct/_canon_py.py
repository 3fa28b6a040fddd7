"""Pure-Python canonicalization kernels.

Same contract as the compiled module ijobstruct._canon; used as the fallback
when the extension is not built.  Matrices are tuples of equal-length integer
rows; permutations act on columns.
"""

from itertools import permutations

BACKEND = "python"


def canonical_form(rows):
    """Lexicographically smallest row-sorted matrix over column permutations."""
    size = len(rows[0])
    best = None
    for perm in permutations(range(size)):
        cand = sorted(tuple(row[p] for p in perm) for row in rows)
        if best is None or cand < best:
            best = cand
    return tuple(best)


def row_set_symmetries(rows):
    """All column permutations mapping the row set onto itself."""
    size = len(rows[0])
    rowset = sorted(rows)
    out = []
    for perm in permutations(range(size)):
        if sorted(tuple(row[p] for p in perm) for row in rows) == rowset:
            out.append(perm)
    return out
