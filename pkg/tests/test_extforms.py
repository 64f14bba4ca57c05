import random
from itertools import combinations

import pytest

from adjtorelli.errors import (
    GradeError,
    NoDecompositionError,
    NonEulerNullError,
    RankOneConditionError,
)
from adjtorelli.exactla import Matrix, kernel_basis
from adjtorelli.extforms import (
    ExtForm,
    basis_one_form,
    divide_by_fundamental,
    euler_contract,
    fundamental_form,
    relift_expand,
    syzygy_decompose,
    syzygy_form,
    wedge,
)
from adjtorelli.polyring import Polynomial, monomial_basis

from conftest import random_homogeneous, x


def dx(nvars, *idxs):
    return ExtForm(nvars, len(idxs), {tuple(idxs): Polynomial.constant(nvars, 1)})


def random_form(nvars, grade, coeff_degree, rng, terms=3):
    subsets = list(combinations(range(nvars), grade))
    picked = {}
    for _ in range(terms):
        key = subsets[rng.randrange(len(subsets))]
        poly = random_homogeneous(nvars, coeff_degree, rng, bound=3)
        picked[key] = picked.get(key, Polynomial.zero(nvars)) + poly
    return ExtForm(nvars, grade, {k: p for k, p in picked.items() if not p.is_zero()})


# ----- wedge ---------------------------------------------------------------

def test_wedge_of_coordinate_differentials():
    w = wedge(dx(3, 0), dx(3, 1))
    assert w.terms == {(0, 1): Polynomial.constant(3, 1)}


def test_wedge_alternation():
    assert wedge(dx(3, 0), dx(3, 0)).is_zero()


def test_wedge_eta_pair_hand_expansion():
    # (x0 dx1 - x1 dx0) ^ (x0 dx2 - x2 dx0), expanded by hand
    w = wedge(basis_one_form(3, 0, 1), basis_one_form(3, 0, 2))
    expected = ExtForm(3, 2, {
        (1, 2): x(0, 3) ** 2,
        (0, 2): -(x(0, 3) * x(1, 3)),
        (0, 1): x(0, 3) * x(2, 3),
    })
    assert w == expected


def test_wedge_grade_overflow():
    with pytest.raises(GradeError):
        wedge(dx(2, 0, 1), dx(2, 0))


def test_wedge_graded_anticommutativity():
    rng = random.Random(3)
    for _ in range(25):
        nvars = rng.randint(2, 5)
        p = rng.randint(1, max(1, nvars - 1))
        q = rng.randint(1, max(1, nvars - p))
        a = random_form(nvars, p, rng.randint(0, 2), rng)
        b = random_form(nvars, q, rng.randint(0, 2), rng)
        lhs = wedge(a, b)
        rhs = wedge(b, a)
        if (p * q) % 2:
            rhs = -rhs
        assert lhs == rhs


# ----- Euler contraction ----------------------------------------------------

def test_contraction_kills_basis_one_forms():
    for nvars in (3, 4, 5):
        for i in range(nvars):
            for j in range(i + 1, nvars):
                assert euler_contract(basis_one_form(nvars, i, j)).is_zero()


def test_contraction_of_volume_is_fundamental():
    for nvars in (3, 4, 5):
        volume = dx(nvars, *range(nvars))
        assert euler_contract(volume) == fundamental_form(nvars)


def test_contraction_squares_to_zero_on_fundamental():
    for nvars in (3, 4, 5):
        assert euler_contract(fundamental_form(nvars)).is_zero()


def test_contraction_grade_zero_rejected():
    with pytest.raises(GradeError):
        euler_contract(ExtForm(3, 0, {(): Polynomial.constant(3, 1)}))


def test_contraction_is_derivation():
    rng = random.Random(17)
    for _ in range(40):
        nvars = rng.randint(2, 5)
        p = rng.randint(1, nvars - 1)
        q = rng.randint(1, nvars - p)
        a = random_form(nvars, p, rng.randint(0, 2), rng)
        b = random_form(nvars, q, rng.randint(0, 2), rng)
        lhs = euler_contract(wedge(a, b))
        rhs = wedge(euler_contract(a), b)
        second = wedge(a, euler_contract(b))
        rhs = rhs + (-second if p % 2 else second)
        assert lhs == rhs


def test_contraction_squared_vanishes():
    rng = random.Random(29)
    for _ in range(40):
        nvars = rng.randint(2, 5)
        grade = rng.randint(2, nvars)
        form = random_form(nvars, grade, rng.randint(0, 2), rng)
        assert euler_contract(euler_contract(form)).is_zero()


# ----- the named forms -------------------------------------------------------

def test_fundamental_form_p2_explicit():
    expected = ExtForm(3, 2, {
        (1, 2): x(0, 3),
        (0, 2): -x(1, 3),
        (0, 1): x(2, 3),
    })
    assert fundamental_form(3) == expected


def test_syzygy_form_p2_j0():
    expected = ExtForm(3, 1, {(2,): -x(1, 3), (1,): x(2, 3)})
    assert syzygy_form(3, 0) == expected


@pytest.mark.parametrize("nvars", [3, 4, 5])
def test_syzygy_gauge_relation(nvars):
    total = ExtForm.zero(nvars, nvars - 2)
    for j in range(nvars):
        total = total + syzygy_form(nvars, j).poly_mul(
            Polynomial.variable(nvars, j)
        )
    assert total.is_zero()


@pytest.mark.parametrize("nvars", [3, 4, 5])
def test_syzygy_forms_euler_null(nvars):
    for j in range(nvars):
        assert euler_contract(syzygy_form(nvars, j)).is_zero()


# ----- quotient by the fundamental form --------------------------------------

def test_divide_fundamental_identity():
    for nvars in (3, 4, 5):
        assert divide_by_fundamental(fundamental_form(nvars)) == \
            Polynomial.constant(nvars, 1)


def test_divide_fundamental_eta_wedge():
    w = wedge(basis_one_form(3, 0, 1), basis_one_form(3, 0, 2))
    assert divide_by_fundamental(w) == x(0, 3)


def test_divide_fundamental_rejects_non_euler_null():
    with pytest.raises(NonEulerNullError):
        divide_by_fundamental(dx(3, 1, 2))


def test_divide_fundamental_roundtrip():
    rng = random.Random(41)
    for _ in range(30):
        nvars = rng.randint(3, 5)
        p = random_homogeneous(nvars, rng.randint(0, 2), rng, bound=4)
        form = fundamental_form(nvars).poly_mul(p)
        assert divide_by_fundamental(form) == p


# ----- syzygy decomposition ---------------------------------------------------

def test_decompose_single_syzygy_form():
    parts = syzygy_decompose(syzygy_form(4, 1))
    expected = [Polynomial.zero(4) for _ in range(4)]
    expected[1] = Polynomial.constant(4, 1)
    assert list(parts) == expected


def test_decompose_zero_form():
    parts = syzygy_decompose(ExtForm.zero(4, 2))
    assert all(p.is_zero() for p in parts)


def test_decompose_roundtrip_on_eta_wedges():
    # wedges of two basis one-forms on P^3 decompose and re-assemble exactly
    pairs = list(combinations(range(4), 2))
    for (a, b) in combinations(range(len(pairs)), 2):
        w = wedge(
            basis_one_form(4, *pairs[a]),
            basis_one_form(4, *pairs[b]),
        )
        if w.is_zero():
            continue
        parts = syzygy_decompose(w)
        rebuilt = ExtForm.zero(4, 2)
        for j, part in enumerate(parts):
            rebuilt = rebuilt + syzygy_form(4, j).poly_mul(part)
        assert rebuilt == w


def test_decompose_rejects_non_euler_null():
    with pytest.raises(NoDecompositionError):
        syzygy_decompose(dx(4, 0, 2))


def test_decompose_gauge_kernel_is_coordinate_multiples():
    """Kernel of the assembly map is spanned by (x0*g, ..., xn*g)."""
    nvars, coeff_degree = 4, 2
    subsets = tuple(combinations(range(nvars), nvars - 2))
    monos = monomial_basis(nvars, coeff_degree)
    width = len(monos)
    lower = monomial_basis(nvars, coeff_degree - 1)

    def flatten(form):
        from adjtorelli.extforms import _flatten
        return _flatten(form, subsets, coeff_degree)

    columns = []
    for j in range(nvars):
        for mono in lower:
            form = syzygy_form(nvars, j).poly_mul(
                Polynomial.from_monomial(nvars, mono)
            )
            columns.append(flatten(form))
    matrix = Matrix.from_rows(
        [[col[r] for col in columns] for r in range(len(subsets) * width)]
    )
    kernel = kernel_basis(matrix)
    # expected kernel dimension: one copy of each degree-0 g, i.e. g constant
    assert len(kernel) == 1
    vec = kernel[0]
    parts = []
    for j in range(nvars):
        chunk = vec[j * len(lower):(j + 1) * len(lower)]
        parts.append(Polynomial(nvars, dict(zip(lower, chunk))))
    # strip the common scalar: parts must be (x0, x1, x2, x3) * g
    g = parts[0].divide_by_variable(0)
    assert g is not None
    for j in range(nvars):
        assert parts[j] == Polynomial.variable(nvars, j) * g


def test_decompose_matches_pairwise_coefficient_identity():
    """Coefficients of the omitted pair {j,k} match the decomposition."""
    rng = random.Random(57)
    pairs = list(combinations(range(4), 2))
    for _ in range(10):
        a, b = rng.sample(range(len(pairs)), 2)
        w = wedge(basis_one_form(4, *pairs[a]), basis_one_form(4, *pairs[b]))
        if w.is_zero():
            continue
        parts = syzygy_decompose(w)
        for j in range(4):
            for k in range(j + 1, 4):
                omitted = tuple(t for t in range(4) if t not in (j, k))
                expected = parts[j] * Polynomial.variable(4, k) - \
                    Polynomial.variable(4, j) * parts[k]
                if (j + k) % 2:
                    expected = -expected
                assert w.coefficient(omitted) == expected


# ----- lifting expansion identity --------------------------------------------

def c1(v):
    return Polynomial.constant(1, v)


def test_relift_all_zero_offsets_changes_nothing():
    s = [(c1(1), c1(0)), (c1(0), c1(1))]
    zeros = [(c1(0), c1(0)), (c1(0), c1(0))]
    report = relift_expand(s, zeros)
    assert report.expansion_holds
    assert report.annihilating_pattern is None


def test_relift_two_term_example():
    s = [(c1(1), c1(0)), (c1(0), c1(1))]
    offsets = [(c1(1), c1(0)), (c1(0), c1(0))]
    report = relift_expand(s, offsets)
    assert report.expansion_holds
    assert report.annihilating_pattern is not None


def test_relift_rejects_rank_two_offsets():
    s = [(c1(1), c1(0)), (c1(0), c1(1))]
    offsets = [(c1(1), c1(0)), (c1(0), c1(1))]
    with pytest.raises(RankOneConditionError):
        relift_expand(s, offsets)


def _random_module_vector(rank, rng, nvars=2):
    return tuple(
        Polynomial.constant(nvars, rng.randint(-3, 3)) for _ in range(rank)
    )


def test_relift_identity_and_constructed_span_search():
    rng = random.Random(73)
    for _ in range(40):
        n = rng.randint(1, 4)
        k = n + 1
        rank = k + rng.randint(0, 2)
        sections = [_random_module_vector(rank, rng) for _ in range(k)]
        # place the top wedge in the offset span: last section is c * e_w
        w_idx = rng.randrange(rank)
        c = rng.choice([1, 2, -1, 3])
        last = [Polynomial.constant(2, 0)] * rank
        last[w_idx] = Polynomial.constant(2, c)
        sections[-1] = tuple(last)
        offsets = []
        for i in range(k - 1):
            vec = [Polynomial.constant(2, 0)] * rank
            vec[w_idx] = Polynomial.constant(2, rng.randint(-2, 2))
            offsets.append(tuple(vec))
        final = [Polynomial.constant(2, 0)] * rank
        final[w_idx] = Polynomial.constant(2, c if n % 2 == 0 else -c)
        offsets.append(tuple(final))
        report = relift_expand(sections, offsets)
        assert report.expansion_holds
        assert report.annihilating_pattern is not None


def test_wedge_rejects_mixed_coordinate_spaces():
    from adjtorelli.errors import VariableCountMismatchError

    with pytest.raises(VariableCountMismatchError):
        wedge(dx(3, 0), dx(4, 0))


def test_extform_rejects_mixed_coefficient_degrees():
    with pytest.raises(ValueError, match="mixed"):
        ExtForm(3, 1, {
            (0,): Polynomial.variable(3, 1),
            (1,): Polynomial.constant(3, 1),
        })


def test_extform_rejects_unsorted_multi_index():
    with pytest.raises(ValueError):
        ExtForm(3, 2, {(1, 0): Polynomial.constant(3, 1)})
