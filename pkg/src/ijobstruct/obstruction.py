"""Rule engine deciding whether a metacyclic action obstructs a
product-of-Jacobians decomposition of a principally polarized abelian variety.

The engine works with a group Z/p x| Z/q (conjugation exponent r) acting
faithfully on an N-dimensional p.p.a.v. assumed isomorphic to a product of
Jacobians of smooth curves.  It chains genus bounds:

  R1  a faithful Z/p action descends faithfully to some isotypic block
  R2  p > N forbids order-p permutations of the factors, so Z/p acts
      faithfully on a single Jacobian factor B
  R3  an elliptic curve admits no polarized automorphism of order > 6,
      so p > 6 forces genus(B) >= 2
  R4  Wiman: an odd-order cyclic group on a genus-g Jacobian (g >= 2) has
      order at most 4g + 2
  R5  the Z/q-orbit of B has 1 or q elements; q * g > N rules out q, so B
      is invariant under the whole group
  R6  in a nontrivial semidirect product, faithfulness of Z/p on B forces
      faithfulness of the whole group on B
  R7  Schweizer: an odd metacyclic group on a genus-g Jacobian (g >= 4)
      has order at most 9(g - 1)
  R8  Hurwitz (alternate to R7): |Aut C| <= 84(g - 1) for g >= 2

plus the dimension constraint genus(B) <= N (step id DIM), which needs no
enabling because it is part of the instance semantics.  Every step records
the instantiated premises and the derived claim so a trace can be replayed
arithmetically without trusting the engine.
"""

import json
from dataclasses import dataclass

MAX_ELLIPTIC_ORDER = 6
WIMAN_SLOPE, WIMAN_OFFSET = 4, 2  # cyclic order <= 4g + 2
SCHWEIZER_FACTOR = 9  # odd metacyclic order <= 9(g - 1), g >= 4
HURWITZ_FACTOR = 84  # |Aut C| <= 84(g - 1), g >= 2

ALL_RULES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")
DEFAULT_RULES = frozenset(("R1", "R2", "R3", "R4", "R5", "R6", "R7"))

CERTIFICATE_NOTE = (
    "contradiction refutes a product-of-Jacobians decomposition; "
    "irrationality follows via the Clemens-Griffiths criterion, which is "
    "assumed, not verified, by this engine"
)


class InvalidGroupError(ValueError):
    """The (p, q, r) data does not define a metacyclic group."""


class UnknownRuleError(ValueError):
    """Rule id outside R1..R8."""


def is_prime(m):
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class MetacyclicGroup:
    """Presentation data for Z/p x| Z/q with conjugation exponent r."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.p)
        if pow(self.r, self.q, self.p) != 1:
            raise InvalidGroupError(
                "r^q = %d^%d is not 1 mod %d" % (self.r, self.q, self.p)
            )

    @property
    def order(self):
        return self.p * self.q

    @property
    def is_nontrivial_semidirect(self):
        return self.r != 1

    @property
    def is_odd(self):
        return self.p % 2 == 1 and self.q % 2 == 1


@dataclass(frozen=True)
class Finding:
    name: str
    ok: bool
    detail: str


def check_preconditions(group):
    """Primality, validity of r, semidirect nontriviality, oddness."""
    return [
        Finding("p-prime", is_prime(group.p), "p = %d" % group.p),
        Finding("q-prime", is_prime(group.q), "q = %d" % group.q),
        Finding(
            "r-valid",
            pow(group.r, group.q, group.p) == 1,
            "r^q = 1 mod p with r = %d" % group.r,
        ),
        Finding(
            "nontrivial-semidirect",
            group.is_nontrivial_semidirect,
            "r = %d%s" % (group.r, "" if group.r != 1 else " (direct product)"),
        ),
        Finding(
            "odd-order",
            group.is_odd,
            "|G| = %d" % group.order,
        ),
    ]


@dataclass(frozen=True)
class ProblemInstance:
    """An N-dimensional p.p.a.v. with a faithful metacyclic action."""

    dimension: int
    group: MetacyclicGroup
    faithful: bool = True

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    premises: dict
    claim: dict

    @property
    def text(self):
        return self.claim.get("text", "")


@dataclass(frozen=True)
class ObstructionTrace:
    instance: ProblemInstance
    ruleset: tuple
    steps: tuple
    verdict: str  # 'contradiction' | 'inconclusive'
    blockers: tuple = ()

    @property
    def is_contradiction(self):
        return self.verdict == "contradiction"

    def to_json_dict(self):
        g = self.instance.group
        return {
            "v": 1,
            "instance": {
                "N": self.instance.dimension,
                "p": g.p,
                "q": g.q,
                "r": g.r,
            },
            "ruleset": list(self.ruleset),
            "steps": [
                {"rule": s.rule, "premises": s.premises, "claim": s.claim}
                for s in self.steps
            ],
            "verdict": self.verdict,
            "blockers": list(self.blockers),
            "note": CERTIFICATE_NOTE,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def _ceil_div(a, b):
    return -(-a // b)


def obstruct(instance, ruleset=DEFAULT_RULES):
    """Run the rule chain on an instance; always returns a replayable trace."""
    ruleset = frozenset(ruleset)
    unknown = ruleset.difference(ALL_RULES)
    if unknown:
        raise UnknownRuleError("unknown rule ids: %s" % sorted(unknown))
    rules = tuple(r for r in ALL_RULES if r in ruleset)

    group = instance.group
    p, q, r = group.p, group.q, group.r
    n_dim = instance.dimension
    for finding in check_preconditions(group):
        if finding.name in ("p-prime", "q-prime", "r-valid") and not finding.ok:
            raise InvalidGroupError(
                "precondition %s failed: %s" % (finding.name, finding.detail)
            )

    steps = []

    def trace(verdict, blocker=None):
        return ObstructionTrace(
            instance=instance,
            ruleset=rules,
            steps=tuple(steps),
            verdict=verdict,
            blockers=(blocker,) if blocker else (),
        )

    def step(rule, premises, claim):
        steps.append(TraceStep(rule=rule, premises=premises, claim=claim))

    # R1: faithful restriction to an isotypic block
    if "R1" not in ruleset:
        return trace("inconclusive", "R1 not in ruleset")
    if not instance.faithful:
        return trace("inconclusive", "R1: action not assumed faithful")
    step(
        "R1",
        {"faithful": True, "p": p},
        {"text": "Z/%d acts faithfully on some isotypic block" % p},
    )

    # R2: no room for an order-p permutation of factors
    if "R2" not in ruleset:
        return trace("inconclusive", "R2 not in ruleset")
    if not p > n_dim:
        return trace(
            "inconclusive", "R2: p = %d <= %d = dim A" % (p, n_dim)
        )
    step(
        "R2",
        {"p": p, "N": n_dim},
        {
            "text": "p = %d > %d = dim A >= n_i: the symmetric group has no "
            "element of order p, so Z/%d acts faithfully on a single "
            "factor B" % (p, n_dim, p)
        },
    )

    # R3: exclude elliptic factors
    if "R3" not in ruleset:
        return trace("inconclusive", "R3 not in ruleset")
    if not p > MAX_ELLIPTIC_ORDER:
        return trace(
            "inconclusive",
            "R3: p = %d <= %d allows an elliptic factor" % (p, MAX_ELLIPTIC_ORDER),
        )
    genus_min = 2
    step(
        "R3",
        {"p": p, "max_elliptic_order": MAX_ELLIPTIC_ORDER},
        {
            "genus_min": genus_min,
            "text": "p = %d > %d rules out genus 1, so g >= 2" % (p, MAX_ELLIPTIC_ORDER),
        },
    )

    # R4: Wiman bound for the cyclic subgroup
    if "R4" not in ruleset:
        return trace("inconclusive", "R4 not in ruleset")
    if p % 2 == 0:
        return trace("inconclusive", "R4: p = %d is even" % p)
    wiman_min = _ceil_div(p - WIMAN_OFFSET, WIMAN_SLOPE)
    step(
        "R4",
        {"p": p, "odd": True, "genus_min": genus_min},
        {
            "genus_min": wiman_min,
            "text": "Wiman: %d <= 4g + 2 forces g >= %d" % (p, wiman_min),
        },
    )
    genus_min = max(genus_min, wiman_min)

    # dimension constraint: genus(B) <= dim A
    if genus_min > n_dim:
        step(
            "DIM",
            {"genus_min": genus_min, "N": n_dim},
            {
                "contradiction": True,
                "text": "no admissible genus: g >= %d > %d = dim A"
                % (genus_min, n_dim),
            },
        )
        return trace("contradiction")

    # R5: the orbit of B under Z/q is a fixed point
    if "R5" not in ruleset:
        return trace("inconclusive", "R5 not in ruleset")
    if not q * genus_min > n_dim:
        return trace(
            "inconclusive",
            "R5: q*g = %d*%d <= %d cannot exclude an orbit of size %d"
            % (q, genus_min, n_dim, q),
        )
    step(
        "R5",
        {"q": q, "genus_min": genus_min, "N": n_dim},
        {
            "text": "orbit of B has 1 or %d elements; %d*%d = %d > %d, so B "
            "is invariant under the whole group"
            % (q, q, genus_min, q * genus_min, n_dim)
        },
    )

    # R6: faithfulness of the full group on B
    if "R6" not in ruleset:
        return trace("inconclusive", "R6 not in ruleset")
    if not group.is_nontrivial_semidirect:
        return trace(
            "inconclusive", "R6: r = 1 gives a direct product"
        )
    step(
        "R6",
        {"p": p, "q": q, "r": r, "nontrivial_semidirect": True},
        {
            "text": "nontrivial semidirect product with Z/%d faithful on B "
            "forces the whole group faithful on B" % p
        },
    )

    # R7 (Schweizer) preferred, R8 (Hurwitz) as the alternate bound
    order = group.order
    if "R7" in ruleset:
        if not group.is_odd:
            return trace("inconclusive", "R7: |G| = %d is even" % order)
        if genus_min < 4:
            return trace(
                "inconclusive",
                "R7: genus lower bound %d < 4" % genus_min,
            )
        bound = SCHWEIZER_FACTOR * (n_dim - 1)
        if order > bound:
            step(
                "R7",
                {
                    "order": order,
                    "odd": True,
                    "metacyclic": True,
                    "genus_min": genus_min,
                    "genus_max": n_dim,
                },
                {
                    "contradiction": True,
                    "lhs": order,
                    "rhs": bound,
                    "text": "Schweizer: |G| <= 9(g - 1) <= %d, but %d > %d"
                    % (bound, order, bound),
                },
            )
            return trace("contradiction")
        return trace(
            "inconclusive",
            "R7: |G| = %d <= %d = 9*(%d - 1)" % (order, bound, n_dim),
        )
    if "R8" in ruleset:
        bound = HURWITZ_FACTOR * (n_dim - 1)
        if order > bound:
            step(
                "R8",
                {"order": order, "genus_min": genus_min, "genus_max": n_dim},
                {
                    "contradiction": True,
                    "lhs": order,
                    "rhs": bound,
                    "text": "Hurwitz: |Aut C| <= 84(g - 1) <= %d, but %d > %d"
                    % (bound, order, bound),
                },
            )
            return trace("contradiction")
        return trace(
            "inconclusive",
            "R8: |G| = %d <= %d = 84*(%d - 1)" % (order, bound, n_dim),
        )
    return trace("inconclusive", "no final bound rule (R7 or R8) in ruleset")


class CertificateError(ValueError):
    """Certificate JSON is malformed or a step fails replay."""


def verify_certificate(doc):
    """Replay a certificate and re-check every arithmetic claim.

    Independent of obstruct(): walks the recorded steps, re-deriving each
    claim from its premises and the instance.  Returns a list of
    (step_label, ok, message) triples covering structure, every step, and
    the verdict; raises CertificateError for structural damage.
    """
    results = []

    def check(label, ok, message):
        results.append((label, bool(ok), message))

    if not isinstance(doc, dict):
        raise CertificateError("certificate must be a JSON object")
    if doc.get("v") != 1:
        raise CertificateError("unsupported schema version %r" % doc.get("v"))
    for key in ("instance", "ruleset", "steps", "verdict"):
        if key not in doc:
            raise CertificateError("missing field %r" % key)
    inst = doc["instance"]
    for key in ("N", "p", "q", "r"):
        if not isinstance(inst.get(key), int):
            raise CertificateError("instance field %r must be an integer" % key)
    n_dim, p, q, r = inst["N"], inst["p"], inst["q"], inst["r"]
    check("instance.p-prime", is_prime(p), "p = %d" % p)
    check("instance.q-prime", is_prime(q), "q = %d" % q)
    check(
        "instance.r-valid",
        0 <= r < p and pow(r, q, p) == 1,
        "r = %d, r^q mod p = %d" % (r, pow(r, q, p) if p > 1 else 0),
    )
    ruleset = doc["ruleset"]
    check(
        "ruleset",
        all(x in ALL_RULES for x in ruleset),
        "rules %s" % (ruleset,),
    )

    genus_min = None
    have_block = False
    have_factor = False
    have_invariant = False
    have_full_faithful = False
    claimed_contradiction = False

    for idx, raw in enumerate(doc["steps"]):
        if not isinstance(raw, dict) or "rule" not in raw:
            raise CertificateError("step %d is malformed" % idx)
        rule = raw["rule"]
        premises = raw.get("premises", {})
        claim = raw.get("claim", {})
        label = "step[%d].%s" % (idx, rule)
        if rule == "R1":
            check(label, premises.get("faithful") is True, "faithful action assumed")
            have_block = True
        elif rule == "R2":
            check(label, have_block and p > n_dim, "p = %d > N = %d" % (p, n_dim))
            have_factor = True
        elif rule == "R3":
            ok = have_factor and p > MAX_ELLIPTIC_ORDER and claim.get("genus_min") == 2
            check(label, ok, "p = %d > %d gives g >= 2" % (p, MAX_ELLIPTIC_ORDER))
            genus_min = 2
        elif rule == "R4":
            derived = _ceil_div(p - WIMAN_OFFSET, WIMAN_SLOPE)
            ok = (
                genus_min is not None
                and genus_min >= 2
                and p % 2 == 1
                and claim.get("genus_min") == derived
            )
            check(label, ok, "Wiman gives g >= %d" % derived)
            genus_min = max(genus_min or 0, derived)
        elif rule == "DIM":
            ok = genus_min is not None and genus_min > n_dim
            check(label, ok, "g >= %s > N = %d" % (genus_min, n_dim))
            claimed_contradiction = claimed_contradiction or ok
        elif rule == "R5":
            ok = genus_min is not None and q * genus_min > n_dim
            check(label, ok, "q*g_min = %d > N = %d" % (q * (genus_min or 0), n_dim))
            have_invariant = True
        elif rule == "R6":
            ok = have_factor and have_invariant and r % p != 1
            check(label, ok, "nontrivial semidirect (r = %d) and faithful Z/p" % r)
            have_full_faithful = True
        elif rule == "R7":
            bound = SCHWEIZER_FACTOR * (n_dim - 1)
            ok = (
                have_full_faithful
                and genus_min is not None
                and genus_min >= 4
                and p % 2 == 1
                and q % 2 == 1
                and p * q > bound
                and claim.get("lhs") == p * q
                and claim.get("rhs") == bound
            )
            check(label, ok, "%d > %d = 9*(N - 1)" % (p * q, bound))
            claimed_contradiction = claimed_contradiction or ok
        elif rule == "R8":
            bound = HURWITZ_FACTOR * (n_dim - 1)
            ok = (
                have_full_faithful
                and genus_min is not None
                and genus_min >= 2
                and p * q > bound
                and claim.get("lhs") == p * q
                and claim.get("rhs") == bound
            )
            check(label, ok, "%d > %d = 84*(N - 1)" % (p * q, bound))
            claimed_contradiction = claimed_contradiction or ok
        else:
            raise CertificateError("step %d has unknown rule %r" % (idx, rule))

    verdict = doc["verdict"]
    if verdict == "contradiction":
        check("verdict", claimed_contradiction, "a step establishes the contradiction")
    elif verdict == "inconclusive":
        check(
            "verdict",
            not claimed_contradiction and bool(doc.get("blockers")),
            "no contradiction step and a blocker is named",
        )
    else:
        raise CertificateError("unknown verdict %r" % verdict)
    return results
