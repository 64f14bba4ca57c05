"""The adjoint-form pipeline on a smooth hypersurface.

A run starts from n independent Euler-null one-forms with linear
coefficients (a W-system, expressed over the basis_one_form basis).  From it
we compute:

* the top wedge of all n forms and its base polynomial P of degree n-1
  (the top wedge equals P times the fundamental form);
* the n partial wedges omitting one form, their decompositions over the
  syzygy forms, and the degree n+d-3 subsystem polynomials
  omega_i = sum_j A[i][j] * dF/dx_j, reduced modulo F;
* for a degree-d polynomial R, the canonical adjoint P*R and the image
  membership test deciding whether P*R lies in the span of the subsystem
  polynomials times degree-2 multipliers, modulo F, with exact multiplier
  certificates.

The subsystem polynomials always land in the Jacobian ideal, and the wedge
of the i-th partial wedge with dF reproduces epsilon * omega_i times the
fundamental form modulo F for one global sign epsilon depending only on n;
epsilon_sign determines that sign by brute force and the cross-check is
exposed for tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .errors import (
    DegenerateBundleError,
    DependentSystemError,
    FieldMismatchError,
    HomogeneityError,
    HypothesisViolationError,
    NonEulerNullError,
    VariableCountMismatchError,
)
from .exactla import Matrix, rref, solve_in_span
from .extforms import (
    ExtForm,
    basis_one_form,
    divide_by_fundamental,
    fundamental_form,
    syzygy_decompose,
    syzygy_form,
    wedge,
    wedge_all,
)
from .fields import QQ
from .jacobian import Hypersurface, reduce_mod
from .polyring import (
    Monomial,
    Polynomial,
    gcd_many,
    monomial_basis,
    poly_div_exact,
)

COEFFICIENT_RANGE = 5  # sampled coordinates are uniform in [-5, 5]
MAX_RESAMPLES = 10


def eta_basis_pairs(nvars: int) -> Tuple[Tuple[int, int], ...]:
    """Index pairs (i, j), i < j, of the Euler-null linear one-form basis."""
    return tuple(combinations(range(nvars), 2))


@dataclass(frozen=True)
class WSystem:
    """n independent Euler-null one-forms with linear coefficients."""

    forms: Tuple[ExtForm, ...]
    coords: Tuple[Tuple, ...]  # rows over eta_basis_pairs order
    provenance: str

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def field(self):
        return self.forms[0].field


def eta_coordinates(form: ExtForm) -> Tuple:
    """Coordinates of a grade-1 form over the basis_one_form basis.

    Raises NonEulerNullError when the form is not an exact combination of
    basis one-forms (equivalently, not Euler-null with linear coefficients).
    """
    nvars, field = form.nvars, form.field
    coords = []
    for (i, j) in eta_basis_pairs(nvars):
        unit = tuple(1 if t == i else 0 for t in range(nvars))
        coords.append(form.coefficient((j,)).coefficient(unit))
    rebuilt = ExtForm.zero(nvars, 1, field)
    for c, (i, j) in zip(coords, eta_basis_pairs(nvars)):
        if c:
            rebuilt = rebuilt + basis_one_form(nvars, i, j, field).scale(c)
    if rebuilt != form:
        raise NonEulerNullError(
            "form is not a combination of the Euler-null one-form basis"
        )
    return tuple(coords)


def wsystem_from_forms(forms: Sequence[ExtForm], provenance: str = "explicit") -> WSystem:
    forms = tuple(forms)
    if not forms:
        raise ValueError("empty system")
    nvars = forms[0].nvars
    field = forms[0].field
    if len(forms) != nvars - 1:
        raise DependentSystemError(
            f"need exactly {nvars - 1} one-forms, got {len(forms)}"
        )
    for f in forms:
        if f.nvars != nvars or f.field != field:
            raise VariableCountMismatchError("mixed coordinate spaces in one system")
        if f.grade != 1:
            raise ValueError("system entries must be one-forms")
    coords = tuple(eta_coordinates(f) for f in forms)
    m = Matrix.from_rows([list(row) for row in coords])
    _, _, matrix_rank = rref(m, field)
    if matrix_rank != len(forms):
        raise DependentSystemError("one-forms are linearly dependent")
    return WSystem(forms, coords, provenance)


def wsystem_from_coords(nvars: int, rows, field=QQ, provenance: str = "explicit") -> WSystem:
    forms = []
    pairs = eta_basis_pairs(nvars)
    for row in rows:
        if len(row) != len(pairs):
            raise ValueError(f"expected {len(pairs)} coordinates per form")
        form = ExtForm.zero(nvars, 1, field)
        for c, (i, j) in zip(row, pairs):
            c = field.coerce(c)
            if c:
                form = form + basis_one_form(nvars, i, j, field).scale(c)
        forms.append(form)
    return wsystem_from_forms(forms, provenance)


def sample_wsystem(nvars: int, rng: random.Random, field=QQ,
                   provenance: str = "sampled") -> WSystem:
    """Draw one W-system with coordinates uniform in the integer box.

    May raise DependentSystemError; callers resample on a fresh draw from
    the same stream.
    """
    pairs = eta_basis_pairs(nvars)
    rows = [
        [rng.randint(-COEFFICIENT_RANGE, COEFFICIENT_RANGE) for _ in pairs]
        for _ in range(nvars - 1)
    ]
    return wsystem_from_coords(nvars, rows, field, provenance)


@dataclass(frozen=True)
class AdjointBundle:
    """Everything one W-system determines on a fixed hypersurface."""

    hypersurface: Hypersurface
    system: WSystem
    top_form: ExtForm                     # wedge of all n forms, grade n
    top_poly: Polynomial                  # P with top_form == P * fundamental
    omit_forms: Tuple[ExtForm, ...]       # wedge omitting the i-th form
    coeff_rows: Tuple[Tuple[Polynomial, ...], ...]  # syzygy decompositions
    subsystem: Tuple[Polynomial, ...]     # omega_i reduced modulo F
    degenerate: bool                      # top_poly == 0


def build_bundle(h: Hypersurface, system: WSystem) -> AdjointBundle:
    """Run the pipeline for one W-system.

    Requires degree > 2 (which makes the one-form liftings unique) and
    n >= 2.  The degenerate flag is set when the base polynomial vanishes;
    the subsystem is still populated but callers should resample.
    """
    if h.degree <= 2:
        raise HypothesisViolationError("pipeline needs hypersurface degree > 2")
    if h.n < 2:
        raise HypothesisViolationError("pipeline needs projective dimension >= 2")
    if system.nvars != h.nvars:
        raise VariableCountMismatchError("system and hypersurface disagree on n")
    if system.field != h.field:
        raise FieldMismatchError("system and hypersurface over different fields")
    forms = system.forms
    top_form = wedge_all(forms)
    top_poly = divide_by_fundamental(top_form)
    omit_forms = tuple(
        wedge_all([f for t, f in enumerate(forms) if t != i])
        for i in range(len(forms))
    )
    coeff_rows = tuple(syzygy_decompose(w) for w in omit_forms)
    subsystem = []
    for row in coeff_rows:
        total = Polynomial.zero(h.nvars, h.field)
        for a, partial in zip(row, h.partials):
            total = total + a * partial
        subsystem.append(reduce_mod(h, total))
    return AdjointBundle(
        hypersurface=h,
        system=system,
        top_form=top_form,
        top_poly=top_poly,
        omit_forms=omit_forms,
        coeff_rows=coeff_rows,
        subsystem=tuple(subsystem),
        degenerate=top_poly.is_zero(),
    )


def canonical_adjoint(bundle: AdjointBundle, R: Polynomial) -> Polynomial:
    """reduce_mod(P * R): the canonical adjoint polynomial of degree n+d-1."""
    h = bundle.hypersurface
    h._check_input(R)
    if not R.is_zero() and R.homogeneous_degree() != h.degree:
        raise HomogeneityError(f"adjoint needs deg R = {h.degree}")
    return reduce_mod(h, bundle.top_poly * R)


@dataclass(frozen=True)
class ImageCertificate:
    """P*R == sum_i multipliers[i] * omega_i + principal * F, exactly."""

    multipliers: Tuple[Polynomial, ...]   # degree-2 polynomials, one per omega_i
    principal: Polynomial                 # the F-multiple absorbed by the quotient

    def verify(self, bundle: AdjointBundle, R: Polynomial) -> bool:
        h = bundle.hypersurface
        total = self.principal * h.poly
        for s, omega in zip(self.multipliers, bundle.subsystem):
            total = total + s * omega
        return total == bundle.top_poly * R


def image_membership(bundle: AdjointBundle, R: Polynomial) -> Optional[ImageCertificate]:
    """Decide P*R in span{m * omega_i : deg m = 2} modulo F.

    Returns the degree-2 multiplier certificate on success, None otherwise.
    """
    if bundle.degenerate:
        raise DegenerateBundleError("cannot test image membership: base polynomial is 0")
    h = bundle.hypersurface
    h._check_input(R)
    if not R.is_zero() and R.homogeneous_degree() != h.degree:
        raise HomogeneityError(f"image test needs deg R = {h.degree}")
    n, nvars, field = h.n, h.nvars, h.field
    adjoint = bundle.top_poly * R
    zeros = tuple(Polynomial.zero(nvars, field) for _ in range(n))
    if adjoint.is_zero():
        return ImageCertificate(zeros, Polynomial.zero(nvars, field))
    if reduce_mod(h, adjoint).is_zero():
        principal = poly_div_exact(adjoint, h.poly)
        return ImageCertificate(zeros, principal)
    k = n + h.degree - 1
    from .jacobian import _poly_vector  # shared dense-vector convention

    def dense(poly):
        vec = _poly_vector(poly, k)
        width = len(monomial_basis(nvars, k))
        out = [field.zero] * width
        for idx, c in vec.items():
            out[idx] = c
        return out

    generators = []
    labels = []
    for i, omega in enumerate(bundle.subsystem):
        for mono in monomial_basis(nvars, 2):
            generators.append(dense(omega.mul_monomial(mono)))
            labels.append(("omega", i, mono))
    for mono in monomial_basis(nvars, n - 1):
        generators.append(dense(h.poly.mul_monomial(mono)))
        labels.append(("f", None, mono))
    cert = solve_in_span(dense(adjoint), generators, field)
    if cert is None:
        return None
    multipliers = [dict() for _ in range(n)]
    principal = {}
    for (kind, i, mono), coeff in zip(labels, cert.coefficients):
        if not coeff:
            continue
        if kind == "omega":
            multipliers[i][mono] = coeff
        else:
            principal[mono] = coeff
    return ImageCertificate(
        tuple(Polynomial(nvars, m, field) for m in multipliers),
        Polynomial(nvars, principal, field),
    )


def directed_one_form(nvars: int, a: int, b: int, field=QQ) -> ExtForm:
    """x_a dx_b - x_b dx_a, either index order."""
    if a < b:
        return basis_one_form(nvars, a, b, field)
    return -basis_one_form(nvars, b, a, field)


def monomial_to_adjoint(nvars: int, mono: Monomial, field=QQ) -> WSystem:
    """One-forms whose top wedge extracts the given degree n-1 monomial.

    Recursive construction: pick a coordinate absent from the monomial and
    one dividing it, solve the smaller problem in the coordinates without
    the absent one, then append the one-form pairing those two coordinates.
    The extracted base polynomial equals the monomial up to sign.
    """
    n = nvars - 1
    if n < 2:
        raise HypothesisViolationError("construction needs projective dimension >= 2")
    mono = tuple(mono)
    if len(mono) != nvars or sum(mono) != n - 1:
        raise HomogeneityError(
            f"need a degree {n - 1} monomial in {nvars} variables"
        )

    def rec(active, counts):
        if len(active) == 3:
            a = next(v for v in active if counts[v])
            rest = [v for v in active if v != a]
            return [(a, rest[0]), (a, rest[1])]
        absent = next(v for v in active if not counts[v])
        j = next(v for v in active if counts[v])
        lowered = dict(counts)
        lowered[j] -= 1
        pairs = rec(tuple(v for v in active if v != absent), lowered)
        pairs.append((j, absent))
        return pairs

    counts = {i: e for i, e in enumerate(mono)}
    pairs = rec(tuple(range(nvars)), counts)
    forms = [directed_one_form(nvars, a, b, field) for a, b in pairs]
    return wsystem_from_forms(forms, provenance="explicit")


def fixed_divisor_witness(bundle: AdjointBundle) -> Optional[Polynomial]:
    """A nonconstant common divisor of the subsystem polynomials, if any.

    Computed by iterated multivariate gcd over the field.  None certifies
    that the subsystem has no common polynomial factor, hence cuts no fixed
    divisor out of the hypersurface.
    """
    if bundle.degenerate:
        raise DegenerateBundleError("no divisor data on a degenerate bundle")
    if all(omega.is_zero() for omega in bundle.subsystem):
        raise DegenerateBundleError("all subsystem polynomials vanish")
    g = gcd_many(bundle.subsystem)
    if g.total_degree() and g.total_degree() > 0:
        return g
    return None


def gradient_form(h: Hypersurface) -> ExtForm:
    """dF = sum_j (dF/dx_j) dx_j as a grade-1 form."""
    return ExtForm(
        h.nvars, 1,
        {(j,): h.partials[j] for j in range(h.nvars) if not h.partials[j].is_zero()},
        h.field,
    )


def epsilon_sign(h: Hypersurface) -> int:
    """The global sign with syzygy_form(j) ^ dF == sign * F_j * fundamental
    modulo F, determined by brute force over every j and cached."""
    if h._epsilon is not None:
        return h._epsilon
    psi = fundamental_form(h.nvars, h.field)
    df = gradient_form(h)
    for sign in (1, -1):
        consistent = True
        for j in range(h.nvars):
            lhs = wedge(syzygy_form(h.nvars, j, h.field), df)
            rhs = psi.poly_mul(h.partials[j]).scale(sign)
            delta = lhs - rhs
            for poly in delta.terms.values():
                if not reduce_mod(h, poly).is_zero():
                    consistent = False
                    break
            if not consistent:
                break
        if consistent:
            h._epsilon = sign
            return sign
    raise RuntimeError("no single sign matches the syzygy pairing; internal bug")


def subsystem_sign_check(bundle: AdjointBundle) -> bool:
    """omega-free cross-check: omit_forms[i] ^ dF == eps * omega_i * fundamental
    modulo F for every i."""
    h = bundle.hypersurface
    eps = epsilon_sign(h)
    psi = fundamental_form(h.nvars, h.field)
    df = gradient_form(h)
    for omit, omega in zip(bundle.omit_forms, bundle.subsystem):
        delta = wedge(omit, df) - psi.poly_mul(omega).scale(eps)
        for poly in delta.terms.values():
            if not reduce_mod(h, poly).is_zero():
                return False
    return True


def trial_rng(seed: int, trial: int) -> random.Random:
    """Deterministic PRNG stream keyed only by (seed, trial index)."""
    return random.Random(seed * 1_000_003 + trial)


def sample_bundle(h: Hypersurface, seed: int, trial: int,
                  max_resamples: int = MAX_RESAMPLES):
    """Sample W-systems until the bundle is usable, with a resample cap.

    A draw is rejected when the forms are dependent, the base polynomial
    vanishes, or the subsystem has a common divisor.  Returns the accepted
    bundle and the number of attempts consumed; after the cap the last
    buildable bundle is returned and callers must inspect it.
    """
    rng = trial_rng(seed, trial)
    last = None
    attempts = 0
    for attempt in range(max_resamples + 1):
        attempts = attempt + 1
        provenance = f"sampled(seed={seed}, trial={trial}, attempt={attempt})"
        try:
            system = sample_wsystem(h.nvars, rng, h.field, provenance)
        except DependentSystemError:
            continue
        bundle = build_bundle(h, system)
        last = bundle
        if bundle.degenerate:
            continue
        if fixed_divisor_witness(bundle) is not None:
            continue
        return bundle, attempts
    if last is None:
        raise DependentSystemError(
            f"no independent system found in {max_resamples + 1} draws"
        )
    return last, attempts
