"""Brute-force decision of group actions on compact Riemann surfaces.

A finite group G acts on a genus-g surface iff some signature
(h; m_1, ..., m_k), constrained by Riemann-Hurwitz

    2g - 2 = |G| (2h - 2) + |G| * sum(1 - 1/m_i),

admits a generating vector: elements a_1, b_1, ..., a_h, b_h, c_1, ..., c_k
with prod [a_i, b_i] * prod c_j = 1, ord(c_j) = m_j, generating G.  Groups
are given by explicit multiplication tables, so the search is exact and
works for plain cyclic groups and for metacyclic presentations alike.
"""

from dataclasses import dataclass

GENUS_CAP = 101  # default ceiling for range enumeration


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table with element orders and inverses; identity is 0."""

    label: str
    mul: tuple
    orders: tuple
    inverse: tuple

    @property
    def size(self):
        return len(self.orders)

    @property
    def is_abelian(self):
        m = self.mul
        n = self.size
        return all(m[a][b] == m[b][a] for a in range(n) for b in range(a))

    @classmethod
    def from_mul(cls, label, mul):
        n = len(mul)
        orders = []
        inverse = [None] * n
        for a in range(n):
            k, x = 1, a
            while x != 0:
                x = mul[x][a]
                k += 1
            orders.append(k)
            for b in range(n):
                if mul[a][b] == 0:
                    inverse[a] = b
                    break
        return cls(
            label=label,
            mul=tuple(tuple(row) for row in mul),
            orders=tuple(orders),
            inverse=tuple(inverse),
        )

    @classmethod
    def cyclic(cls, m):
        mul = [[(a + b) % m for b in range(m)] for a in range(m)]
        return cls.from_mul("Z/%d" % m, mul)

    @classmethod
    def metacyclic(cls, p, q, r):
        """Z/p x| Z/q with (i, j)(i', j') = (i + r^j i', j + j')."""
        r %= p
        if pow(r, q, p) != 1:
            raise ValueError("r^q must be 1 mod p")
        rpow = [pow(r, j, p) for j in range(q)]

        def idx(i, j):
            return i * q + j

        n = p * q
        mul = [[0] * n for _ in range(n)]
        for i in range(p):
            for j in range(q):
                for i2 in range(p):
                    for j2 in range(q):
                        mul[idx(i, j)][idx(i2, j2)] = idx(
                            (i + rpow[j] * i2) % p, (j + j2) % q
                        )
        return cls.from_mul("Z/%d x| Z/%d (r=%d)" % (p, q, r), mul)

    def commutator(self, a, b):
        m = self.mul
        return m[m[m[a][b]][self.inverse[a]]][self.inverse[b]]

    def closure(self, elements):
        """Subgroup generated by the given element indices."""
        seen = {0}
        frontier = [0]
        gens = [e for e in set(elements) if e != 0]
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
                y = self.mul[g][x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def conjugacy_class_reps(self, order=None):
        """Smallest-index representative of each conjugacy class."""
        n = self.size
        seen = set()
        reps = []
        for a in range(n):
            if a in seen:
                continue
            orbit = {self.mul[self.mul[t][a]][self.inverse[t]] for t in range(n)}
            seen |= orbit
            reps.append(a)
        if order is None:
            return reps
        return [a for a in reps if self.orders[a] == order]


@dataclass(frozen=True)
class Signature:
    """Quotient genus and branch periods of a candidate action."""

    quotient_genus: int
    periods: tuple

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(sorted(self.periods)))
        if self.quotient_genus < 0:
            raise ValueError("quotient genus must be >= 0")
        if any(m < 2 for m in self.periods):
            raise ValueError("branch periods must be > 1")

    def __str__(self):
        return "(%d; %s)" % (
            self.quotient_genus,
            ",".join(str(m) for m in self.periods) if self.periods else "-",
        )


def rh_genus(order, signature):
    """Genus from the Riemann-Hurwitz identity, or None if fractional."""
    total = order * (2 * signature.quotient_genus - 2)
    for m in signature.periods:
        if order % m:
            return None
        total += order - order // m
    if total % 2:
        return None
    return total // 2 + 1


def signatures_for_genus(group, genus):
    """All RH-consistent signatures of the group for one genus, sorted."""
    if genus < 2:
        raise ValueError("genus must be >= 2")
    order = group.size
    period_values = sorted(set(group.orders) - {1})
    vals = [order - order // m for m in period_values]
    out = []
    h = 0
    while order * (2 * h - 2) <= 2 * genus - 2:
        target = (2 * genus - 2) - order * (2 * h - 2)

        def extend(start, remaining, chosen):
            if remaining == 0:
                out.append(Signature(quotient_genus=h, periods=tuple(chosen)))
                return
            for i in range(start, len(period_values)):
                if vals[i] > remaining:
                    break
                chosen.append(period_values[i])
                extend(i, remaining - vals[i], chosen)
                chosen.pop()

        extend(0, target, [])
        h += 1
    out.sort(key=lambda s: (s.quotient_genus, s.periods))
    return out


def signatures_for_genus_range(group, gmax, gmin=2, cap=GENUS_CAP):
    """(genus, signature) pairs for gmin <= g <= min(gmax, cap)."""
    gmax = min(gmax, cap)
    pairs = []
    for g in range(gmin, gmax + 1):
        for sig in signatures_for_genus(group, g):
            pairs.append((g, sig))
    return pairs


def _order_candidates(group, m):
    return [a for a in range(group.size) if group.orders[a] == m]


def _branch_search(group, periods, target, prefix_closure, first_reps=None):
    """Find c_1..c_k with given orders, product = target, generating G
    together with prefix_closure.  Exact reachability pruning on suffixes."""
    k = len(periods)
    cands = []
    for pos, m in enumerate(periods):
        elems = _order_candidates(group, m)
        if pos == 0 and first_reps is not None:
            elems = [e for e in first_reps if group.orders[e] == m]
        if not elems:
            return False
        cands.append(elems)
    # reach[j]: products c_j * ... * c_{k-1} achievable from unrestricted slots
    reach = [None] * (k + 1)
    reach[k] = frozenset({0})
    for j in range(k - 1, -1, -1):
        full = _order_candidates(group, periods[j])
        acc = set()
        for c in full:
            row = group.mul[c]
            acc.update(row[x] for x in reach[j + 1])
        reach[j] = frozenset(acc)
    full_group = frozenset(range(group.size))

    def dfs(pos, prod, closure):
        # prod is c_1 * ... * c_{pos-1}; need the rest to finish at target
        need = group.mul[group.inverse[prod]][target]
        if pos == k:
            return need == 0 and closure == full_group
        if need not in reach[pos]:
            return False
        for c in cands[pos]:
            new_closure = closure
            if c not in closure:
                new_closure = group.closure(closure | {c})
            if dfs(pos + 1, group.mul[prod][c], new_closure):
                return True
        return False

    return dfs(0, 0, prefix_closure)


def has_generating_vector(group, signature):
    """Whether the signature is realized by an actual generating vector."""
    h = signature.quotient_genus
    periods = signature.periods
    order = group.size
    full_group = frozenset(range(order))
    is_cyclic = order in group.orders
    if h == 0:
        if is_cyclic and periods:
            # automorphisms act transitively on the elements of each order,
            # so the first branch element can be pinned to one of them
            reps = [a for a in range(order) if group.orders[a] == periods[0]][:1]
        else:
            reps = group.conjugacy_class_reps()
        return _branch_search(
            group, periods, 0, group.closure(frozenset()), first_reps=reps
        )
    if group.is_abelian and is_cyclic:
        # commutators vanish, and a hyperbolic slot can hold a generator,
        # so only the branch product condition remains
        return _branch_search(group, periods, 0, full_group)
    # enumerate distinct (commutator product, generated subgroup) states of
    # the hyperbolic part, then search branch elements against each
    states = {(0, group.closure(frozenset()))}
    for _ in range(h):
        new_states = set()
        for delta, closure in states:
            for a in range(order):
                for b in range(order):
                    comm = group.commutator(a, b)
                    d2 = group.mul[delta][comm]
                    c2 = closure
                    if a not in c2 or b not in c2:
                        c2 = group.closure(closure | {a, b})
                    new_states.add((d2, c2))
        states = new_states
    for delta, closure in sorted(states, key=lambda s: (s[0], sorted(s[1]))):
        # branch product must equal delta^{-1}
        if _branch_search(group, periods, group.inverse[delta], closure):
            return True
    return False


def exists_action(group, genus):
    """True iff the group acts on some compact surface of this exact genus."""
    for sig in signatures_for_genus(group, genus):
        if has_generating_vector(group, sig):
            return True
    return False
