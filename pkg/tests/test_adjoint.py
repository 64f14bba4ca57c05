import random
from itertools import combinations

import pytest

from adjtorelli.adjoint import (
    build_bundle,
    canonical_adjoint,
    epsilon_sign,
    eta_basis_pairs,
    eta_coordinates,
    fixed_divisor_witness,
    image_membership,
    monomial_to_adjoint,
    sample_bundle,
    subsystem_sign_check,
    trial_rng,
    wsystem_from_coords,
    wsystem_from_forms,
)
from adjtorelli.errors import (
    DegenerateBundleError,
    DependentSystemError,
    HomogeneityError,
    HypothesisViolationError,
    NonEulerNullError,
)
from adjtorelli.extforms import (
    ExtForm,
    basis_one_form,
    divide_by_fundamental,
    wedge_all,
)
from adjtorelli.jacobian import Hypersurface, graded_membership, reduce_mod
from adjtorelli.polyring import Polynomial, monomial_basis, poly_div_exact

from conftest import fermat, x


def eta_system(*pairs, nvars=4):
    return wsystem_from_forms(
        [basis_one_form(nvars, i, j) for i, j in pairs]
    )


# ----- W-systems -----------------------------------------------------------

def test_eta_coordinates_roundtrip():
    coords = [(1, 0, -2, 0, 3, 0), (0, 1, 1, 1, 0, 0), (0, 0, 0, 0, 1, -1)]
    system = wsystem_from_coords(4, coords)
    assert [tuple(int(c) for c in row) for row in system.coords] == coords


def test_eta_coordinates_reject_non_euler_null():
    form = ExtForm(4, 1, {(0,): Polynomial.variable(4, 1)})
    with pytest.raises(NonEulerNullError):
        eta_coordinates(form)


def test_dependent_system_rejected():
    with pytest.raises(DependentSystemError):
        eta_system((0, 1), (0, 2), (0, 1))


def test_wrong_count_rejected():
    with pytest.raises(DependentSystemError):
        eta_system((0, 1), (0, 2))


# ----- bundle construction ----------------------------------------------------

def test_bundle_on_eta_0j_system(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    assert bundle.top_poly == x(0) ** 2
    assert not bundle.degenerate
    assert [str(p) for p in bundle.subsystem] == \
        ["4*x0*x1^3", "-4*x0*x2^3", "4*x0*x3^3"]


def test_bundle_requires_degree_above_two():
    quadric = Hypersurface(fermat(4, 2))
    with pytest.raises(HypothesisViolationError):
        build_bundle(quadric, eta_system((0, 1), (0, 2), (0, 3)))


def test_bundle_subsystem_lies_in_ideal(fermat_quartic):
    h = fermat_quartic
    for trial in range(12):
        bundle, _ = sample_bundle(h, seed=5, trial=trial)
        assert not bundle.degenerate
        for omega in bundle.subsystem:
            cert = graded_membership(omega, h)
            assert cert is not None and cert.verify(h, omega)


def test_bundle_decomposition_reassembles(fermat_quartic):
    from adjtorelli.extforms import syzygy_form

    bundle, _ = sample_bundle(fermat_quartic, seed=8, trial=0)
    for omit, row in zip(bundle.omit_forms, bundle.coeff_rows):
        rebuilt = ExtForm.zero(4, 2)
        for j, part in enumerate(row):
            rebuilt = rebuilt + syzygy_form(4, j).poly_mul(part)
        assert rebuilt == omit


def test_gauge_shift_changes_nothing_mod_f(fermat_quartic):
    h = fermat_quartic
    bundle, _ = sample_bundle(h, seed=21, trial=0)
    rng = random.Random(99)
    for row, omega in zip(bundle.coeff_rows, bundle.subsystem):
        g = Polynomial.constant(4, rng.randint(1, 7))
        shifted = [
            part + Polynomial.variable(4, j) * g
            for j, part in enumerate(row)
        ]
        total = Polynomial.zero(4)
        for part, partial in zip(shifted, h.partials):
            total = total + part * partial
        assert reduce_mod(h, total) == omega


# ----- canonical adjoint --------------------------------------------------------

def test_canonical_adjoint_of_f_vanishes(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    assert canonical_adjoint(bundle, fermat_quartic.poly).is_zero()


def test_canonical_adjoint_monomial_case(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    R = x(0) * x(1) * x(2) * x(3)
    assert canonical_adjoint(bundle, R) == x(0) ** 3 * x(1) * x(2) * x(3)


def test_canonical_adjoint_zero_r(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    assert canonical_adjoint(bundle, Polynomial.zero(4)).is_zero()


def test_canonical_adjoint_degree_mismatch(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    with pytest.raises(HomogeneityError):
        canonical_adjoint(bundle, x(0) ** 3)


# ----- image membership ----------------------------------------------------------

def test_image_membership_for_ideal_r(fermat_quartic):
    h = fermat_quartic
    R = x(0) ** 3 * x(1)
    bundle, _ = sample_bundle(h, seed=0, trial=0)
    cert = image_membership(bundle, R)
    assert cert is not None
    assert cert.verify(bundle, R)
    assert all(
        s.is_zero() or s.homogeneous_degree() == 2 for s in cert.multipliers
    )


def test_image_membership_for_nonideal_r(fermat_quartic):
    bundle, _ = sample_bundle(fermat_quartic, seed=0, trial=0)
    assert image_membership(bundle, x(0) * x(1) * x(2) * x(3)) is None


def test_image_membership_r_equals_f(fermat_quartic):
    h = fermat_quartic
    bundle, _ = sample_bundle(h, seed=0, trial=1)
    cert = image_membership(bundle, h.poly)
    assert cert is not None
    assert all(s.is_zero() for s in cert.multipliers)
    assert cert.verify(bundle, h.poly)


def test_image_membership_rejects_degenerate(fermat_quartic):
    # a triple of one-forms supported on three coordinates wedges to zero
    system = eta_system((0, 1), (0, 2), (1, 2))
    bundle = build_bundle(fermat_quartic, system)
    assert bundle.degenerate
    with pytest.raises(DegenerateBundleError):
        image_membership(bundle, x(0) ** 3 * x(1))


# ----- explicit adjoint systems for monomials --------------------------------------

def test_monomial_to_adjoint_p2_example():
    system = monomial_to_adjoint(3, (1, 0, 0))
    P = divide_by_fundamental(wedge_all(system.forms))
    assert P == Polynomial.variable(3, 0)


@pytest.mark.parametrize("nvars", [3, 4, 5])
def test_monomial_to_adjoint_exhaustive(nvars):
    n = nvars - 1
    for mono in monomial_basis(nvars, n - 1):
        system = monomial_to_adjoint(nvars, mono)
        P = divide_by_fundamental(wedge_all(system.forms))
        M = Polynomial.from_monomial(nvars, mono)
        assert P == M or P == -M


def test_monomial_to_adjoint_recursion_shape():
    system = monomial_to_adjoint(4, (1, 1, 0, 0))
    assert len(system.forms) == 3
    # coordinate 2 is the first absent one, so the final appended form
    # pairs the first divisor coordinate 0 with it
    coords = system.coords[-1]
    pairs = eta_basis_pairs(4)
    support = [pairs[i] for i, c in enumerate(coords) if c]
    assert support == [(0, 2)]


def test_monomial_to_adjoint_rejects_wrong_degree():
    with pytest.raises(HomogeneityError):
        monomial_to_adjoint(4, (1, 1, 1, 0))


# ----- fixed divisors ----------------------------------------------------------------

def test_engineered_common_factor_is_detected(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    witness = fixed_divisor_witness(bundle)
    assert witness == x(0)
    for omega in bundle.subsystem:
        assert poly_div_exact(omega, witness) is not None


def test_generic_bundles_have_no_fixed_divisor(fermat_quartic):
    for trial in range(10):
        bundle, _ = sample_bundle(fermat_quartic, seed=3, trial=trial)
        assert fixed_divisor_witness(bundle) is None


def test_fixed_divisor_rejects_degenerate(fermat_quartic):
    bundle = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (1, 2)))
    with pytest.raises(DegenerateBundleError):
        fixed_divisor_witness(bundle)


# ----- the global sign -----------------------------------------------------------------

def test_epsilon_signs(fermat_quartic, fermat_quintic):
    # by direct expansion of (volume omitting j) ^ dF and one contraction,
    # the sign alternates with the projective dimension: (-1)^(n+1)
    assert epsilon_sign(fermat_quartic) == 1
    assert epsilon_sign(fermat_quintic) == -1
    p2 = Hypersurface(fermat(3, 4))
    assert epsilon_sign(p2) == -1


def test_sign_cross_check_on_bundles(fermat_quartic):
    for trial in range(8):
        bundle, _ = sample_bundle(fermat_quartic, seed=14, trial=trial)
        assert subsystem_sign_check(bundle)
    explicit = build_bundle(fermat_quartic, eta_system((0, 1), (0, 2), (0, 3)))
    assert subsystem_sign_check(explicit)


# ----- span of the full subsystem family ------------------------------------------------

def test_eta_pair_subsystems_span_coordinate_partials(fermat_quartic):
    """Every x_k * dF/dx_j with k != j lies in the span of the subsystem
    polynomials of all eta-basis pairs, modulo F."""
    from adjtorelli.exactla import solve_in_span
    from adjtorelli.extforms import syzygy_decompose, wedge
    from adjtorelli.jacobian import _poly_vector

    h = fermat_quartic
    pairs = eta_basis_pairs(4)
    spanning = []
    for a, b in combinations(range(len(pairs)), 2):
        w = wedge(
            basis_one_form(4, *pairs[a]), basis_one_form(4, *pairs[b])
        )
        if w.is_zero():
            continue
        parts = syzygy_decompose(w)
        omega = Polynomial.zero(4)
        for part, partial in zip(parts, h.partials):
            omega = omega + part * partial
        spanning.append(omega)
    spanning.append(h.poly)
    width = len(monomial_basis(4, 4))

    def dense(p):
        out = [h.field.zero] * width
        for idx, c in _poly_vector(p, 4).items():
            out[idx] = c
        return out

    generators = [dense(p) for p in spanning]
    for j in range(4):
        for k in range(4):
            if j == k:
                continue
            target = Polynomial.variable(4, k) * h.partials[j]
            assert solve_in_span(dense(target), generators) is not None


# ----- sampling determinism ---------------------------------------------------------------

def test_sampling_is_deterministic(fermat_quartic):
    a, att_a = sample_bundle(fermat_quartic, seed=4, trial=2)
    b, att_b = sample_bundle(fermat_quartic, seed=4, trial=2)
    assert att_a == att_b
    assert a.system.coords == b.system.coords
    assert a.top_poly == b.top_poly
    assert a.subsystem == b.subsystem


def test_trial_streams_differ():
    assert trial_rng(0, 0).random() != trial_rng(0, 1).random()
    assert trial_rng(0, 1).random() != trial_rng(1, 0).random()
