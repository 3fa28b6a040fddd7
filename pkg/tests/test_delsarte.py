import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ijobstruct.delsarte import (
    ExponentMatrix,
    NotNormalizingError,
    PermSymmetry,
    conjugation_exponent,
    diagonal_symmetry_group,
    fermat_matrix,
    gradient_at,
    is_invariant,
    klein_matrix,
    matrix_from_text,
    p_torsion_class,
    permutation_symmetries,
    smoothness_check,
    weight_class,
)
from ijobstruct.intlinalg import SingularMatrixError
from oracles import conjugation_solutions_brute, invariant_weight_vectors_brute, row_weights


# --- ExponentMatrix -------------------------------------------------------


def test_matrix_validation():
    with pytest.raises(ValueError):
        ExponentMatrix(((1, 2), (2, 1), (3, 0)))  # not square
    with pytest.raises(ValueError):
        ExponentMatrix(((2, 1), (1, 1)))  # unequal row sums
    with pytest.raises(ValueError):
        ExponentMatrix(((2, 1), (2, 1)))  # repeated rows
    with pytest.raises(ValueError):
        ExponentMatrix(((2, -1), (0, 1)))  # negative exponent


def test_text_roundtrip(klein):
    text = klein.to_text()
    assert text.splitlines()[0] == "4 4"
    assert matrix_from_text(text) == klein


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4\n",
        "1 4\n4 0\n1 3\n9 9\n",
        "1 4\n4 0\n1 2\n",  # bad row sum
        "1 4\n4 x\n1 3\n",
    ],
)
def test_text_parse_errors(text):
    with pytest.raises(ValueError):
        matrix_from_text(text)


def test_klein_shape(klein):
    assert klein.n == 4
    assert klein.d == 4
    assert klein.determinant() == 3**5 + 1


# --- is_invariant ---------------------------------------------------------


def test_invariant_paper_weights(klein):
    assert is_invariant(klein, (0, 3, -6, 21, 1), 61) == 3


def test_invariant_zero_vector(klein):
    assert is_invariant(klein, (0, 0, 0, 0, 0), 17) == 0


def test_invariant_rejects_unit_vector(klein):
    # direct evaluation oracle: the five row weights are not all equal
    assert sorted(row_weights(klein.rows, (1, 0, 0, 0, 0), 61)) == [0, 0, 0, 1, 3]
    assert is_invariant(klein, (1, 0, 0, 0, 0), 61) is None


def test_invariant_dimension_mismatch(klein):
    with pytest.raises(ValueError):
        is_invariant(klein, (1, 2, 3), 7)


# --- diagonal symmetry groups ---------------------------------------------


def test_klein_diagonal_group(klein):
    group = diagonal_symmetry_group(klein)
    assert group.invariant_factors == (61,)
    gen = group.generators[0]
    target = weight_class(klein, (0, 3, -6, 21, 1), 61)
    assert gen.same_class(target)
    assert is_invariant(klein, gen.weights, 61) == gen.common_weight


def test_fermat_diagonal_group(fermat):
    group = diagonal_symmetry_group(fermat)
    assert group.invariant_factors == (4, 4, 4, 4)
    assert group.order == 256 == 4**5 // 4
    for gen in group.generators:
        assert is_invariant(fermat, gen.weights, gen.modulus) is not None


def test_klein_curve_diagonal_group(klein_curve):
    group = diagonal_symmetry_group(klein_curve)
    assert group.invariant_factors == (7,)
    gen = group.generators[0]
    assert gen.same_class(weight_class(klein_curve, (0, 3, 1), 7))
    # brute-force oracle over all residue vectors mod 7 with w_0 = 0:
    # the invariant vectors are exactly the multiples of the generator
    brute = invariant_weight_vectors_brute(klein_curve.rows, 7)
    assert len(brute) == 7
    canon = {
        weight_class(klein_curve, w, 7).canonical_weights()
        for w in brute
        if any(w)
    }
    assert canon == {gen.canonical_weights()}


def test_group_order_times_degree_is_det(klein, fermat, klein_curve, chain):
    for m in (klein, fermat, klein_curve, chain):
        group = diagonal_symmetry_group(m)
        assert group.order * m.d == abs(m.determinant())


def test_singular_matrix_rejected():
    dependent = ExponentMatrix(((2, 2, 0), (1, 1, 2), (0, 0, 4)))
    assert dependent.determinant() == 0
    with pytest.raises(SingularMatrixError):
        diagonal_symmetry_group(dependent)


def test_p_torsion_class(fermat):
    group = diagonal_symmetry_group(fermat)
    wc = p_torsion_class(group, 2)
    assert wc.modulus == 2
    assert wc.order == 2
    with pytest.raises(ValueError):
        p_torsion_class(group, 3)


# --- permutation symmetries -------------------------------------------------


def test_fermat_permutations(fermat):
    perms = permutation_symmetries(fermat)
    assert len(perms) == 120


def test_klein_permutations(klein):
    perms = permutation_symmetries(klein)
    assert len(perms) == 5
    shift = PermSymmetry((1, 2, 3, 4, 0))
    assert shift in perms
    assert shift.order() == 5
    # closed under composition
    mappings = {p.mapping for p in perms}
    for a in perms:
        for b in perms:
            assert a.compose(b).mapping in mappings


def test_chain_permutations_trivial(chain):
    # exhaustive check of all 120 permutations happens inside; the only
    # symmetry left is the identity
    perms = permutation_symmetries(chain)
    assert len(perms) == 1
    assert perms[0].is_identity


# --- conjugation exponent ---------------------------------------------------


def test_conjugation_identity(klein):
    wc = weight_class(klein, (0, 3, -6, 21, 1), 61)
    ident = PermSymmetry((0, 1, 2, 3, 4))
    assert conjugation_exponent(klein, wc, ident) == 1


def test_conjugation_klein_shift(klein):
    wc = weight_class(klein, (0, 3, -6, 21, 1), 61)
    shift = PermSymmetry((1, 2, 3, 4, 0))
    r = conjugation_exponent(klein, wc, shift)
    assert r == (-3) % 61
    assert pow(r, 5, 61) == 1
    # brute-force oracle over all (r, c) pairs mod 61
    permuted = shift.apply_to_weights(wc.weights)
    sols = conjugation_solutions_brute(wc.weights, permuted, 61)
    assert sols == [(58, 3)]


def test_conjugation_power_consistency(klein):
    wc = weight_class(klein, (0, 3, -6, 21, 1), 61)
    for perm in permutation_symmetries(klein):
        r = conjugation_exponent(klein, wc, perm)
        assert pow(r, perm.order(), 61) == 1


def test_conjugation_fermat_transposition_does_not_normalize(fermat):
    # The transposition of x_0, x_1 conjugates diag(1, i, 1, 1, 1) to
    # diag(i, 1, 1, 1, 1), which is no power of it even projectively: the
    # defining congruence has no solution (components 2..4 force c = 0,
    # component 0 forces c = 1), confirmed by the brute-force oracle.
    wc = weight_class(fermat, (0, 1, 0, 0, 0), 4)
    swap = PermSymmetry((1, 0, 2, 3, 4))
    permuted = swap.apply_to_weights(wc.weights)
    assert conjugation_solutions_brute(wc.weights, permuted, 4) == []
    with pytest.raises(NotNormalizingError):
        conjugation_exponent(fermat, wc, swap)


# --- weight class canonical form -------------------------------------------


def test_canonical_weights_klein(klein):
    wc = weight_class(klein, (0, 3, -6, 21, 1), 61)
    canon = wc.canonical_weights()
    assert canon[0] == 0
    # canonicalization is idempotent and class-invariant
    wc2 = weight_class(klein, canon, 61)
    assert wc2.canonical_weights() == canon
    shifted = weight_class(klein, tuple((w + 5) % 61 for w in wc.weights), 61)
    assert shifted.canonical_weights() == canon
    scaled = weight_class(klein, tuple((13 * w) % 61 for w in wc.weights), 61)
    assert scaled.canonical_weights() == canon


def test_weight_class_order(klein):
    wc = weight_class(klein, (0, 3, -6, 21, 1), 61)
    assert wc.order == 61
    trivial = weight_class(klein, (5, 5, 5, 5, 5), 61)
    assert trivial.order == 1


# --- smoothness --------------------------------------------------------------


def test_klein_smooth(klein):
    report = smoothness_check(klein)
    assert report.verdict == "smooth"
    torus = [r for r in report.certificate if len(r.support) == 5]
    assert len(torus) == 1
    assert torus[0].reason == "binomial-inconsistent"


def test_klein_torus_stratum_product(klein):
    # the full-support binomial system is refuted by a rank-one kernel whose
    # consistency product is (-3)^{+-5}, never 1
    from ijobstruct.delsarte import _analyze_stratum

    kind, reason, witness = _analyze_stratum(klein, (0, 1, 2, 3, 4))
    assert kind == "clean"
    assert reason.reason == "binomial-inconsistent"
    assert "-243" in reason.detail or "-1/243" in reason.detail


def test_fermat_smooth(fermat):
    report = smoothness_check(fermat)
    assert report.verdict == "smooth"
    assert all(r.reason == "one-term" for r in report.certificate)


def test_cone_singular(cone):
    report = smoothness_check(cone)
    assert report.verdict == "singular"
    w = report.witness
    assert w.support == (4,)
    assert w.point[4] == 1
    assert all(z == 0 for z in w.point[:4])
    assert w.gradient_norm < 1e-9


def test_binomial_witness_gradient():
    # singular along a torus stratum: the witness comes out of the binomial
    # branch, with a reconstructed point satisfying x_0^3 = -x_4^3
    m = ExponentMatrix(
        (
            (0, 0, 1, 0, 3),
            (0, 0, 4, 0, 0),
            (0, 4, 0, 0, 0),
            (1, 0, 0, 3, 0),
            (3, 0, 1, 0, 0),
        )
    )
    report = smoothness_check(m)
    assert report.verdict == "singular"
    w = report.witness
    assert w.binomial_exponents  # genuinely the binomial branch
    assert w.gradient_norm < 1e-9
    # cross-check the reconstructed point against the full gradient
    grads = gradient_at(m, w.point)
    assert max(abs(g) for g in grads) < 1e-9


def test_unsupported_stratum_branch():
    from ijobstruct.delsarte import _analyze_stratum

    # d/dx_0 keeps three terms on the torus and no equation is one-term
    m = ExponentMatrix(((2, 2, 0), (2, 0, 2), (1, 2, 1)))
    kind, reason, witness = _analyze_stratum(m, (0, 1, 2))
    assert kind == "unsupported"
    assert reason is None and witness is None
    # a certified singular point elsewhere still decides the verdict
    report = smoothness_check(m)
    assert report.verdict == "singular"
    assert report.witness.support == (0,)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)))
def test_smoothness_invariant_under_relabeling(perm):
    base = ExponentMatrix(
        (
            (4, 0, 0, 0, 0),
            (0, 4, 0, 0, 0),
            (0, 0, 4, 0, 0),
            (0, 0, 0, 4, 0),
            (3, 1, 0, 0, 0),
        )
    )
    relabeled = ExponentMatrix(
        tuple(tuple(row[perm[j]] for j in range(5)) for row in base.rows)
    )
    assert smoothness_check(relabeled).verdict == smoothness_check(base).verdict


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)))
def test_smooth_verdict_invariant_on_klein(perm):
    base = klein_matrix()
    relabeled = ExponentMatrix(
        tuple(tuple(row[perm[j]] for j in range(5)) for row in base.rows)
    )
    assert smoothness_check(relabeled).verdict == "smooth"


def test_every_family_witness_meets_tolerance():
    # every singular verdict across the whole default quartic family must
    # carry a witness within the 1e-9 gradient budget
    from ijobstruct.search import SearchSpec, enumerate_matrices

    for matrix in enumerate_matrices(SearchSpec()):
        report = smoothness_check(matrix)
        if report.verdict == "singular":
            assert report.witness.gradient_norm < 1e-9, matrix.rows
