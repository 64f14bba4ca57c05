"""Jacobian ideal of a smooth hypersurface: graded membership with exact
certificates, quotient-ring dimensions, smoothness detection, and the
socle/pairing checks coming from Macaulay duality.

The ideal is generated in the single degree d-1 by the partial derivatives,
so membership in any graded piece is a finite span problem over the field;
no Groebner machinery is involved.  Each graded piece is an incremental
echelon over the monomial basis, built lazily and cached on the hypersurface.
Cache fills are idempotent (the reduced echelon of a piece is unique), so
concurrent readers can only ever observe the one canonical value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Tuple

from .errors import (
    FieldConstraintError,
    FieldMismatchError,
    HomogeneityError,
    NotSmoothError,
    VariableCountMismatchError,
)
from .exactla import Echelon, Matrix, rref
from .polyring import (
    Monomial,
    Polynomial,
    basis_index,
    monomial_basis,
    monomial_mul,
)


@dataclass
class GradedPiece:
    """Echelon of one graded piece of an ideal plus bookkeeping."""

    echelon: Echelon
    labels: Tuple
    quotient: Tuple[Monomial, ...]


def _poly_vector(poly: Polynomial, k: int) -> Dict[int, object]:
    index = basis_index(poly.nvars, k)
    return {index[m]: c for m, c in poly.terms.items()}


def _vector_poly(vec: Dict[int, object], nvars: int, k: int, field) -> Polynomial:
    basis = monomial_basis(nvars, k)
    return Polynomial(nvars, {basis[i]: c for i, c in vec.items()}, field)


def _ideal_piece(partials, nvars: int, d: int, k: int, field, track: bool) -> GradedPiece:
    """Echelon of span{m * F_j : deg m = k - d + 1} inside S_k."""
    echelon = Echelon(field, track=track)
    labels = []
    shift = k - (d - 1)
    if shift >= 0:
        for mono in monomial_basis(nvars, shift):
            for j in range(nvars):
                echelon.insert(_poly_vector(partials[j].mul_monomial(mono), k))
                labels.append((j, mono))
    basis = monomial_basis(nvars, k)
    quotient = tuple(
        basis[i] for i in echelon.nonpivot_columns(len(basis))
    )
    return GradedPiece(echelon, tuple(labels), quotient)


def is_smooth(F: Polynomial):
    """Decide smoothness of the hypersurface F = 0 in exact arithmetic.

    The partials have no common projective zero exactly when the quotient by
    the ideal they generate vanishes in degree (n+1)(d-2) + 1; the returned
    witness is that dimension (0 for a smooth hypersurface).
    """
    d = F.homogeneous_degree()
    if d is None or d < 2:
        raise HomogeneityError("need a homogeneous polynomial of degree >= 2")
    nvars = F.nvars
    partials = [F.partial(i) for i in range(nvars)]
    k = nvars * (d - 2) + 1
    piece = _ideal_piece(partials, nvars, d, k, F.field, track=False)
    witness = comb(nvars - 1 + k, k) - piece.echelon.rank
    return witness == 0, witness


def hilbert_expected(n: int, d: int, k: int) -> int:
    """Coefficient of t^k in (1 + t + ... + t^(d-2))^(n+1)."""
    if k < 0:
        return 0
    coeffs = [1] * (d - 1)
    poly = [1]
    for _ in range(n + 1):
        out = [0] * (len(poly) + len(coeffs) - 1)
        for i, a in enumerate(poly):
            if not a:
                continue
            for j, b in enumerate(coeffs):
                out[i + j] += a * b
        poly = out
    return poly[k] if k < len(poly) else 0


class Hypersurface:
    """A validated smooth hypersurface with cached graded ideal data."""

    def __init__(self, poly: Polynomial):
        d = poly.homogeneous_degree()
        if d is None or d < 2:
            raise HomogeneityError(
                "hypersurface needs a homogeneous polynomial of degree >= 2"
            )
        p = poly.field.characteristic
        if p:
            if d % p == 0 or (d - 1) % p == 0:
                raise FieldConstraintError(
                    f"prime field modulus {p} divides {d} or {d - 1}; "
                    "the Euler identity degenerates"
                )
        self.poly = poly
        self.field = poly.field
        self.nvars = poly.nvars
        self.n = poly.nvars - 1
        self.degree = d
        self.partials = tuple(poly.partial(i) for i in range(poly.nvars))
        self.socle_degree = self.nvars * (d - 2)
        smooth, witness = is_smooth(poly)
        self.smooth_witness = witness
        if not smooth:
            raise NotSmoothError(
                f"hypersurface is singular: {witness} independent directions "
                f"survive in degree {self.socle_degree + 1}"
            )
        self._ideal: Dict[int, GradedPiece] = {}
        self._principal: Dict[int, GradedPiece] = {}
        self._epsilon = None

    def __repr__(self):
        return f"Hypersurface(n={self.n}, d={self.degree}, F={self.poly})"

    # ----- cached graded pieces -----------------------------------------

    def ideal_piece(self, k: int) -> GradedPiece:
        piece = self._ideal.get(k)
        if piece is None:
            piece = _ideal_piece(
                self.partials, self.nvars, self.degree, k, self.field, track=True
            )
            self._ideal[k] = piece
        return piece

    def principal_piece(self, k: int) -> GradedPiece:
        """Echelon of span{m * F : deg m = k - d} inside S_k."""
        piece = self._principal.get(k)
        if piece is None:
            echelon = Echelon(self.field, track=True)
            labels = []
            shift = k - self.degree
            if shift >= 0:
                for mono in monomial_basis(self.nvars, shift):
                    echelon.insert(_poly_vector(self.poly.mul_monomial(mono), k))
                    labels.append(mono)
            basis = monomial_basis(self.nvars, k)
            quotient = tuple(basis[i] for i in echelon.nonpivot_columns(len(basis)))
            piece = GradedPiece(echelon, tuple(labels), quotient)
            self._principal[k] = piece
        return piece

    def quotient_basis(self, k: int) -> Tuple[Monomial, ...]:
        """Canonical monomial basis of S_k modulo the Jacobian ideal."""
        return self.ideal_piece(k).quotient

    def _check_input(self, G: Polynomial):
        if G.nvars != self.nvars:
            raise VariableCountMismatchError(
                f"{G.nvars} variables vs hypersurface in {self.nvars}"
            )
        if G.field != self.field:
            raise FieldMismatchError("polynomial over a different field")


@dataclass(frozen=True)
class MembershipCertificate:
    """Polynomials g_j with G == sum_j g_j * dF/dx_j, exactly re-verifiable."""

    parts: Tuple[Polynomial, ...]

    def verify(self, h: Hypersurface, G: Polynomial) -> bool:
        total = Polynomial.zero(h.nvars, h.field)
        for part, partial in zip(self.parts, h.partials):
            total = total + part * partial
        return total == G


def graded_membership(G: Polynomial, h: Hypersurface) -> Optional[MembershipCertificate]:
    """Decide G in the Jacobian ideal, with an exact certificate on success.

    The ideal contains F itself (Euler identity), so membership modulo F and
    plain membership agree.  Degrees below d-1 hold no nonzero members.
    """
    h._check_input(G)
    if G.is_zero():
        return MembershipCertificate(
            tuple(Polynomial.zero(h.nvars, h.field) for _ in range(h.nvars))
        )
    k = G.homogeneous_degree()
    if k < h.degree - 1:
        return None
    piece = h.ideal_piece(k)
    residual, combo = piece.echelon.reduce(_poly_vector(G, k))
    if residual:
        return None
    parts = [dict() for _ in range(h.nvars)]
    for gen_idx, coeff in combo.items():
        j, mono = piece.labels[gen_idx]
        if coeff:
            parts[j][mono] = parts[j].get(mono, h.field.zero) + coeff
    return MembershipCertificate(
        tuple(Polynomial(h.nvars, part, h.field) for part in parts)
    )


def jacobian_ring_dim(h: Hypersurface, k: int) -> int:
    """Dimension of degree-k piece of the quotient by the Jacobian ideal."""
    if k < 0:
        return 0
    return comb(h.nvars - 1 + k, k) - h.ideal_piece(k).echelon.rank


def reduce_mod(h: Hypersurface, G: Polynomial) -> Polynomial:
    """Canonical representative of G modulo F * S_(k-d).

    The representative is supported on the non-pivot monomials of the
    reduced echelon of the principal ideal's graded piece, so the map is
    idempotent and deterministic.
    """
    h._check_input(G)
    if G.is_zero():
        return G
    k = G.homogeneous_degree()
    if k < h.degree:
        return G
    piece = h.principal_piece(k)
    residual, _ = piece.echelon.reduce(_poly_vector(G, k))
    return _vector_poly(residual, h.nvars, k, h.field)


@dataclass(frozen=True)
class DeformationClass:
    """A degree-d class with its canonical representative modulo the ideal."""

    original: Polynomial
    representative: Polynomial
    certificate: MembershipCertificate  # witnesses original - representative

    def verify(self, h: Hypersurface) -> bool:
        return self.certificate.verify(h, self.original - self.representative)


def deformation_class(h: Hypersurface, R: Polynomial) -> DeformationClass:
    h._check_input(R)
    if not R.is_zero() and R.homogeneous_degree() != h.degree:
        raise HomogeneityError(
            f"deformation polynomial must have degree {h.degree}"
        )
    k = h.degree
    piece = h.ideal_piece(k)
    residual, combo = piece.echelon.reduce(_poly_vector(R, k))
    representative = _vector_poly(residual, h.nvars, k, h.field)
    parts = [dict() for _ in range(h.nvars)]
    for gen_idx, coeff in combo.items():
        j, mono = piece.labels[gen_idx]
        if coeff:
            parts[j][mono] = parts[j].get(mono, h.field.zero) + coeff
    certificate = MembershipCertificate(
        tuple(Polynomial(h.nvars, part, h.field) for part in parts)
    )
    return DeformationClass(R, representative, certificate)


def pairing_matrix(h: Hypersurface, a: int) -> Matrix:
    """Multiplication pairing of quotient pieces in degrees a and socle - a.

    Entry (i, j) is the socle coordinate of b_i * c_j after reduction into
    the canonical quotient complement in the socle degree.
    """
    sigma = h.socle_degree
    if not 0 <= a <= sigma:
        raise ValueError(f"degree {a} outside [0, {sigma}]")
    left = h.quotient_basis(a)
    right = h.quotient_basis(sigma - a)
    socle_piece = h.ideal_piece(sigma)
    socle_basis = socle_piece.quotient
    if len(socle_basis) != 1:
        raise NotSmoothError("socle is not one-dimensional")
    socle_col = basis_index(h.nvars, sigma)[socle_basis[0]]
    rows = []
    for m1 in left:
        row = []
        for m2 in right:
            product = monomial_mul(m1, m2)
            vec = {basis_index(h.nvars, sigma)[product]: h.field.one}
            residual, _ = socle_piece.echelon.reduce(vec)
            row.append(residual.get(socle_col, h.field.zero))
        rows.append(row)
    if not rows:
        return Matrix(0, 0, [])
    return Matrix.from_rows(rows)


def macaulay_pairing_check(h: Hypersurface, a: int) -> bool:
    """True iff the multiplication pairing into the socle degree is perfect."""
    m = pairing_matrix(h, a)
    if m.rows == 0 or m.cols == 0:
        return m.rows == m.cols
    _, _, rank = rref(m, h.field)
    return rank == min(m.rows, m.cols)
