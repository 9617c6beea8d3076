"""Vector fields, differential forms, and polyvectors over a polynomial
ring, with the Hamiltonian constructions and truncated solvers built on
them.

Sign conventions, fixed once here and used everywhere downstream:

* ``contract_std`` pairs a p-form ``dx_J`` with the standard top
  polyvector by the sign of the permutation (J, complement of J) of the
  variable list.
* The scalar pairing of an n-form with the standard top polyvector is
  the coefficient of ``dx_1 ^ ... ^ dx_n``.
* A bracket matrix ``pi`` has entries ``pi[i][j] = {x_i, x_j}`` and the
  Hamiltonian field of f is ``xi_f(x_i) = sum_j (d_j f) pi[j][i]``,
  i.e. ``xi_f(g) = {f, g}``.
* For a Jacobi pair (pi, u) the Hamiltonian field is
  ``xi_f = pi(df) + f u`` and the bracket is
  ``{f, g} = pi(df, dg) + f u(g) - g u(f)``.

The field span, the ideals, and all dimensions computed downstream are
unchanged under a global sign flip, which is why a single fixed
convention suffices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError, InputError
from .groebner import GroebnerBasis, buchberger, normal_form
from .poly import Polynomial, PolyRing


def _merge_sign(left: tuple, right: tuple) -> tuple[tuple, int] | None:
    """Merge two strictly increasing index tuples; None if they collide.

    Returns the merged increasing tuple and the sign of the permutation
    sorting the concatenation (left + right).
    """
    if set(left) & set(right):
        return None
    merged = left + right
    sign = 1
    # parity of the merge = number of transpositions in an insertion sort
    items = list(merged)
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return tuple(items), sign


class VectorField:
    """A derivation of the polynomial ring: one coefficient per variable."""

    __slots__ = ("ring", "coefficients")

    def __init__(self, ring: PolyRing, coefficients):
        coeffs = tuple(coefficients)
        if len(coeffs) != ring.arity:
            raise InputError("coefficient list length must equal the ring arity")
        for c in coeffs:
            if c.ring != ring:
                raise InputError("coefficient lives in a different ring")
        self.ring = ring
        self.coefficients = coeffs

    @classmethod
    def zero(cls, ring: PolyRing) -> "VectorField":
        return cls(ring, [ring.zero()] * ring.arity)

    @classmethod
    def coordinate(cls, ring: PolyRing, name: str) -> "VectorField":
        """The partial-derivative field d/d<name>."""
        i = ring.index(name)
        return cls(ring, [ring.one() if j == i else ring.zero() for j in range(ring.arity)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def apply(self, g: Polynomial) -> Polynomial:
        if g.ring != self.ring:
            raise InputError("ring mismatch")
        total = self.ring.zero()
        for name, c in zip(self.ring.variables, self.coefficients):
            if not c.is_zero():
                total = total + c * g.partial_derivative(name)
        return total

    def lie_bracket(self, other: "VectorField") -> "VectorField":
        if other.ring != self.ring:
            raise InputError("ring mismatch")
        coeffs = [
            self.apply(other.coefficients[i]) - other.apply(self.coefficients[i])
            for i in range(self.ring.arity)
        ]
        return VectorField(self.ring, coeffs)

    def divergence(self) -> Polynomial:
        """Divergence with respect to the standard volume: sum_i d_i(g_i)."""
        total = self.ring.zero()
        for name, c in zip(self.ring.variables, self.coefficients):
            total = total + c.partial_derivative(name)
        return total

    def weight(self) -> int | None:
        """Weighted degree as a graded operator (coefficient degree minus
        the variable weight), or None if mixed or zero."""
        w = None
        for c, m in zip(self.coefficients, self.ring.weights):
            if c.is_zero():
                continue
            comps, homogeneous = c.weighted_components()
            if not homogeneous:
                return None
            d = next(iter(comps)) - m
            if w is None:
                w = d
            elif w != d:
                return None
        return w

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.ring, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.ring, [a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.ring, [-a for a in self.coefficients])

    def scale(self, p) -> "VectorField":
        if isinstance(p, Polynomial):
            return VectorField(self.ring, [p * a for a in self.coefficients])
        return VectorField(self.ring, [a.scale(p) for a in self.coefficients])

    def evaluate(self, point) -> tuple:
        return tuple(c.evaluate(point) for c in self.coefficients)

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.ring == other.ring
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.ring, self.coefficients))

    def __str__(self):
        parts = []
        for name, c in zip(self.ring.variables, self.coefficients):
            if c.is_zero():
                continue
            if c == 1:
                parts.append(f"d_{name}")
                continue
            if c == -1:
                parts.append(f"-d_{name}")
                continue
            body = str(c)
            if len(c.terms) > 1:
                body = f"({body})"
            parts.append(f"{body}*d_{name}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"<{self}>"


class DifferentialForm:
    """Homogeneous exterior form: {increasing index tuple: coefficient}."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: PolyRing, degree: int, terms):
        if degree < 0:
            raise InputError("form degree out of range")
        clean = {}
        for idx, c in dict(terms).items():
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)) or len(idx) != degree:
                raise InputError(f"index tuple {idx} must be strictly increasing of length {degree}")
            if idx and (idx[0] < 0 or idx[-1] >= ring.arity):
                raise InputError(f"index tuple {idx} outside the variable range")
            if not c.is_zero():
                clean[idx] = c
        self.ring = ring
        self.degree = degree
        self.terms = clean

    @classmethod
    def from_poly(cls, p: Polynomial) -> "DifferentialForm":
        return cls(p.ring, 0, {(): p})

    @classmethod
    def coordinate(cls, ring: PolyRing, name: str) -> "DifferentialForm":
        """The 1-form d<name>."""
        return cls(ring, 1, {(ring.index(name),): ring.one()})

    @classmethod
    def monomial_form(cls, ring: PolyRing, coeff: Polynomial, idx: tuple) -> "DifferentialForm":
        return cls(ring, len(idx), {tuple(idx): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if other.degree != self.degree or other.ring != self.ring:
            raise InputError("can only add forms of the same degree over the same ring")
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            s = terms.get(idx, self.ring.zero()) + c
            if s.is_zero():
                terms.pop(idx, None)
            else:
                terms[idx] = s
        return DifferentialForm(self.ring, self.degree, terms)

    def scale(self, c) -> "DifferentialForm":
        return DifferentialForm(
            self.ring, self.degree, {i: p * c if isinstance(c, Polynomial) else p.scale(c) for i, p in self.terms.items()}
        )

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        if other.ring != self.ring:
            raise InputError("ring mismatch")
        degree = self.degree + other.degree
        if degree > self.ring.arity:
            return DifferentialForm(self.ring, degree, {})
        terms: dict = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                idx, sign = merged
                c = ca * cb
                if sign < 0:
                    c = -c
                s = terms.get(idx, self.ring.zero()) + c
                if s.is_zero():
                    terms.pop(idx, None)
                else:
                    terms[idx] = s
        return DifferentialForm(self.ring, degree, terms)

    def exterior_derivative(self) -> "DifferentialForm":
        ring = self.ring
        out = DifferentialForm(ring, self.degree + 1, {})
        for idx, c in self.terms.items():
            for i, name in enumerate(ring.variables):
                dc = c.partial_derivative(name)
                if dc.is_zero():
                    continue
                merged = _merge_sign((i,), idx)
                if merged is None:
                    continue
                widx, sign = merged
                piece = DifferentialForm(ring, self.degree + 1, {widx: dc if sign > 0 else -dc})
                out = out + piece
        return out

    def __eq__(self, other):
        return (
            isinstance(other, DifferentialForm)
            and self.ring == other.ring
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items()):
            basis = "^".join(f"d{self.ring.variables[i]}" for i in idx) or "1"
            coeff = str(c)
            if len(c.terms) > 1:
                coeff = f"({coeff})"
            parts.append(f"{coeff}*{basis}" if idx else coeff)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class Polyvector:
    """Homogeneous polyvector field, stored like a form: increasing index
    tuples of d/dx factors with polynomial coefficients."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: PolyRing, degree: int, terms):
        self.ring = ring
        self.degree = degree
        self.terms = {tuple(i): c for i, c in dict(terms).items() if not c.is_zero()}

    def scalar(self) -> Polynomial:
        if self.degree != 0:
            raise InputError("scalar() requires a degree-0 polyvector")
        return self.terms.get((), self.ring.zero())

    def as_vector_field(self) -> VectorField:
        if self.degree != 1:
            raise InputError("as_vector_field() requires a degree-1 polyvector")
        coeffs = [self.ring.zero()] * self.ring.arity
        for (i,), c in self.terms.items():
            coeffs[i] = c
        return VectorField(self.ring, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Polyvector)
            and self.ring == other.ring
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items()):
            basis = "^".join(f"d_{self.ring.variables[i]}" for i in idx) or "1"
            coeff = str(c)
            if len(c.terms) > 1:
                coeff = f"({coeff})"
            parts.append(f"{coeff}*{basis}" if idx else coeff)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def contract_std(form: DifferentialForm) -> Polyvector:
    """Contract a p-form against the standard top polyvector field.

    c * dx_J maps to sgn(J, J^c) * c * d_{J^c} where J^c is the
    complementary increasing tuple; n-forms land in scalars.
    """
    ring = form.ring
    n = ring.arity
    out: dict = {}
    allv = tuple(range(n))
    for idx, c in form.terms.items():
        comp = tuple(i for i in allv if i not in idx)
        merged = _merge_sign(idx, comp)
        _, sign = merged
        c2 = c if sign > 0 else -c
        prev = out.get(comp)
        out[comp] = c2 if prev is None else prev + c2
    return Polyvector(ring, n - form.degree, out)


def top_pairing(form: DifferentialForm) -> Polynomial:
    """Scalar pairing of an n-form with the standard top polyvector."""
    if form.degree != form.ring.arity:
        raise InputError("top_pairing requires a top-degree form")
    full = tuple(range(form.ring.arity))
    return form.terms.get(full, form.ring.zero())


def tangency_check(field: VectorField, gb: GroebnerBasis) -> bool:
    """True iff the field maps every ideal generator back into the ideal."""
    return all(normal_form(field.apply(g), gb).is_zero() for g in gb.elements)


def hamiltonian_from_bracket(f: Polynomial, matrix) -> VectorField:
    """Hamiltonian field of f for a bracket matrix: xi_f(x_i) = {f, x_i}."""
    ring = f.ring
    n = ring.arity
    coeffs = []
    for i in range(n):
        total = ring.zero()
        for j, name in enumerate(ring.variables):
            entry = matrix[j][i]
            if entry.is_zero():
                continue
            total = total + f.partial_derivative(name) * entry
        coeffs.append(total)
    return VectorField(ring, coeffs)


def bracket_of(f: Polynomial, g: Polynomial, matrix) -> Polynomial:
    """{f, g} for a bracket matrix with entries {x_i, x_j}."""
    return hamiltonian_from_bracket(f, matrix).apply(g)


@dataclass(frozen=True)
class JacobiStructure:
    """A skew bracket bivector plus a vector field (pi, u)."""

    ring: PolyRing
    matrix: tuple
    u: VectorField
    kind = "jacobi"

    def __post_init__(self):
        n = self.ring.arity
        m = self.matrix
        if len(m) != n or any(len(row) != n for row in m):
            raise InputError("bracket matrix must be square of the ring arity")
        for i in range(n):
            if not m[i][i].is_zero():
                raise InputError("bracket matrix must have zero diagonal")
            for j in range(i + 1, n):
                if m[i][j] != -m[j][i]:
                    raise InputError("bracket matrix must be skew-symmetric")
        if self.u.ring != self.ring:
            raise InputError("u lives in a different ring")


def jacobi_hamiltonian(f: Polynomial, structure: JacobiStructure) -> VectorField:
    """xi_f = pi(df) + f u, componentwise xi_f(x_i) = sum_j d_jf pi[j][i] + f u_i."""
    if f.ring != structure.ring:
        raise InputError("ring mismatch")
    base = hamiltonian_from_bracket(f, structure.matrix)
    return base + structure.u.scale(f)


def jacobi_bracket(f: Polynomial, g: Polynomial, structure: JacobiStructure) -> Polynomial:
    """{f, g} = pi(df, dg) + f u(g) - g u(f)."""
    pi_part = hamiltonian_from_bracket(f, structure.matrix).apply(g)
    return pi_part + f * structure.u.apply(g) - g * structure.u.apply(f)


def standard_contact(pairs: int = 1) -> JacobiStructure:
    """The standard contact structure on affine (2*pairs+1)-space.

    Variables (t, x_1..x_d, y_1..y_d) with weights (2, 1, ..., 1).  The
    bivector is oriented so that f -> xi_f is a Lie-algebra map for this
    library's bracket convention; with that orientation the coordinate
    Hamiltonian fields are

        xi_1 = d_t,  xi_{y_i} = d_{x_i},  xi_{x_i} = -d_{y_i} + x_i d_t,
        xi_t = t d_t + sum_i y_i d_{y_i}.
    """
    if pairs < 1:
        raise InputError("need at least one (x, y) pair")
    if pairs == 1:
        names = ("t", "x", "y")
    else:
        names = ("t",) + tuple(f"x{i}" for i in range(1, pairs + 1)) + tuple(
            f"y{i}" for i in range(1, pairs + 1)
        )
    ring = PolyRing(names, (2,) + (1,) * (2 * pairs))
    n = ring.arity
    zero = ring.zero()
    matrix = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(1, pairs + 1):
        xcol, ycol = i, pairs + i
        y = ring.var(ring.variables[ycol])
        matrix[0][ycol] = y            # {t, y_i} = y_i
        matrix[ycol][0] = -y
        matrix[xcol][ycol] = -ring.one()  # {x_i, y_i} = -1
        matrix[ycol][xcol] = ring.one()
    u = VectorField.coordinate(ring, "t")
    return JacobiStructure(ring, tuple(tuple(row) for row in matrix), u)


# -- Hamiltonian families from a top polyvector -----------------------


def _differential_product(gens) -> DifferentialForm:
    ring = gens[0].ring
    form = DifferentialForm.from_poly(ring.one())
    for f in gens:
        form = form.wedge(DifferentialForm.from_poly(f).exterior_derivative())
    return form


def field_from_form(alpha: DifferentialForm, gens) -> VectorField:
    """The Hamiltonian field of an (m-2)-form alpha on the complete
    intersection cut out by ``gens``: xi(x_i) is the pairing of
    d(alpha) ^ dx_i ^ df_1 ^ ... ^ df_k with the top polyvector."""
    ring = alpha.ring
    dalpha = alpha.exterior_derivative()
    fprod = _differential_product(gens) if gens else DifferentialForm.from_poly(ring.one())
    coeffs = []
    for name in ring.variables:
        w = dalpha.wedge(DifferentialForm.coordinate(ring, name)).wedge(fprod)
        coeffs.append(top_pairing(w))
    return VectorField(ring, coeffs)


def top_polyvector_field(gens) -> VectorField:
    """The vector field obtained by contracting the standard top
    polyvector with df_1 ^ ... ^ df_k when the quotient is a curve
    (its span is the locally Hamiltonian algebra of the curve)."""
    ring = gens[0].ring
    if len(gens) != ring.arity - 1:
        raise DomainError("top polyvector field of a curve needs codimension arity-1")
    fprod = _differential_product(gens)
    coeffs = []
    for name in ring.variables:
        w = fprod.wedge(DifferentialForm.coordinate(ring, name))
        coeffs.append(top_pairing(w))
    return VectorField(ring, coeffs)


def hamiltonian_family_top(X, max_degree: int) -> list[VectorField]:
    """Hamiltonian fields of all monomial (m-2)-forms of weighted degree
    at most ``max_degree`` on a complete intersection with the standard
    Jacobian polyvector structure (m = dim X = n - k >= 2).

    The weighted degree of a form g*dx_J counts the dx factors.  Zero
    fields are dropped; duplicates are kept only once.
    """
    structure = getattr(X, "structure", None)
    if structure is None or getattr(structure, "kind", None) != "jacobian":
        raise DomainError("hamiltonian_family_top requires the Jacobian polyvector structure")
    ring = X.ring
    gens = list(X.ideal_gens)
    m = ring.arity - len(gens)
    if m < 2:
        raise DomainError("hamiltonian_family_top requires dimension n - k >= 2")
    fields = []
    seen = set()
    for idx in itertools.combinations(range(ring.arity), m - 2):
        dx_weight = sum(ring.weights[i] for i in idx)
        for g_weight in range(0, max_degree - dx_weight + 1):
            for mono in ring.monomials_of_weight(g_weight):
                alpha = DifferentialForm.monomial_form(ring, ring.monomial(mono), idx)
                xi = field_from_form(alpha, gens)
                if xi.is_zero() or xi in seen:
                    continue
                seen.add(xi)
                fields.append(xi)
    return fields


# -- linear algebra over graded pieces --------------------------------


def lie_closure(fields: list[VectorField], depth: int = 2) -> list[VectorField]:
    """Close a generating set under Lie brackets to the given depth,
    keeping only fields that are linearly independent over Q."""
    current = []
    for xi in fields:
        if not xi.is_zero():
            current = _extend_independent(current, xi)
    for _ in range(depth):
        added = False
        snapshot = list(current)
        for a, b in itertools.combinations(snapshot, 2):
            br = a.lie_bracket(b)
            if br.is_zero():
                continue
            extended = _extend_independent(current, br)
            if len(extended) > len(current):
                current = extended
                added = True
        if not added:
            break
    return current


def _field_vector(field: VectorField, support, pos):
    row = [Fraction(0)] * len(support)
    for i, c in enumerate(field.coefficients):
        for m, v in c.terms.items():
            row[pos[(i, m)]] = v
    return row


def _extend_independent(current: list[VectorField], candidate: VectorField) -> list[VectorField]:
    fields = current + [candidate]
    support = sorted(
        {(i, m) for f in fields for i, c in enumerate(f.coefficients) for m in c.terms}
    )
    pos = {k: i for i, k in enumerate(support)}
    rows = [_field_vector(f, support, pos) for f in current]
    cand = _field_vector(candidate, support, pos)
    if linalg.in_span(rows, cand):
        return current
    return fields


# -- truncated solvers -------------------------------------------------


def derivations_up_to_degree(
    gb: GroebnerBasis, max_weight: int, zero_weight_cap: int | None = None
) -> dict[int, list[VectorField]]:
    """Bases of tangent vector fields by weight, up to ``max_weight``.

    The ideal must be weighted-homogeneous so that tangency splits into
    independent per-weight linear solves with Groebner normal forms as
    the membership oracle.  Rings with zero-weight variables need
    ``zero_weight_cap`` to bound those exponents.
    """
    ring = gb.ring
    for g in gb.elements:
        if not g.is_quasihomogeneous():
            raise DomainError(f"ideal generator {g} is not weighted-homogeneous")
    if ring.has_zero_weights and zero_weight_cap is None:
        raise InputError("ring has zero-weight variables: pass zero_weight_cap")
    key = gb.order.key(ring)
    out: dict[int, list[VectorField]] = {}
    lowest = -max(ring.weights) if ring.weights else 0
    for w in range(lowest, max_weight + 1):
        candidates = []  # (variable index, monomial)
        for i, mw in enumerate(ring.weights):
            for mono in sorted(ring.monomials_of_weight(w + mw, zero_weight_cap), key=key):
                candidates.append((i, mono))
        if not candidates:
            continue
        images = []
        for i, mono in candidates:
            factor = ring.monomial(mono)
            images.append(
                [
                    normal_form(factor * g.partial_derivative(ring.variables[i]), gb)
                    for g in gb.elements
                ]
            )
        # constraint rows: one per (generator, residual monomial)
        support = sorted(
            {(j, m) for img in images for j, p in enumerate(img) for m in p.terms}
        )
        pos = {k: idx for idx, k in enumerate(support)}
        cols = []
        for img in images:
            col = [Fraction(0)] * len(support)
            for j, p in enumerate(img):
                for m, c in p.terms.items():
                    col[pos[(j, m)]] = c
            cols.append(col)
        rows = [[cols[a][b] for a in range(len(cols))] for b in range(len(support))]
        basis = linalg.nullspace(rows, len(candidates))
        fields = []
        for vec in basis:
            coeffs = [ring.zero()] * ring.arity
            for (i, mono), c in zip(candidates, vec):
                if c != 0:
                    coeffs[i] = coeffs[i] + ring.monomial(mono, c)
            fields.append(VectorField(ring, coeffs))
        if fields:
            out[w] = fields
    return out


def exceptional_ideal(fields: list[VectorField], gb: GroebnerBasis) -> GroebnerBasis:
    """The ideal (mod the variety ideal) generated by all coefficient
    functions of the fields: the vanishing locus of the family.

    Coordinate images generate the full image ideal because
    xi(fg) = f xi(g) + g xi(f).
    """
    for xi in fields:
        if not tangency_check(xi, gb):
            raise DomainError(f"field {xi} is not tangent to the variety")
    gens = list(gb.elements)
    for xi in fields:
        gens.extend(c for c in xi.coefficients if not c.is_zero())
    return buchberger(gens, gb.order, ring=gb.ring)


@dataclass
class IncompressibilityReport:
    consistent: bool
    max_degree: int
    witness_coefficients: list | None = None
    witness_residue: Polynomial | None = None

    @property
    def verdict(self) -> str:
        return f"consistent-to-{self.max_degree}" if self.consistent else "violated"


def incompressibility_truncated(
    fields: list[VectorField],
    gb: GroebnerBasis,
    max_degree: int,
    zero_weight_cap: int | None = None,
) -> IncompressibilityReport:
    """Check the relation condition for incompressible flow, degree by
    degree: every O-linear relation sum_i f_i xi_i = 0 (componentwise
    modulo the ideal) with all deg f_i <= max_degree must satisfy
    sum_i xi_i(f_i) = 0 modulo the ideal.

    Only ever reports "consistent-to-D" or a concrete violation with
    its witness tuple; the untruncated criterion is out of reach here.
    """
    ring = gb.ring
    fields = [f for f in fields if not f.is_zero()]
    if not fields:
        return IncompressibilityReport(True, max_degree)
    weights = []
    for xi in fields:
        if not tangency_check(xi, gb):
            raise DomainError(f"field {xi} is not tangent to the variety")
        w = xi.weight()
        if w is None:
            raise DomainError("incompressibility solver needs weight-homogeneous fields")
        weights.append(w)
    key = gb.order.key(ring)
    for w in range(min(weights), max_degree + max(weights) + 1):
        slots = []  # (field index, monomial)
        for fi, fw in enumerate(weights):
            d = w - fw
            if d < 0 or d > max_degree:
                continue
            for mono in sorted(ring.monomials_of_weight(d, zero_weight_cap), key=key):
                slots.append((fi, mono))
        if not slots:
            continue
        # relation constraints: each vector-field component must vanish mod I
        images = []
        for fi, mono in slots:
            factor = ring.monomial(mono)
            images.append(
                [normal_form(factor * c, gb) for c in fields[fi].coefficients]
            )
        support = sorted({(j, m) for img in images for j, p in enumerate(img) for m in p.terms})
        pos = {k: i for i, k in enumerate(support)}
        rows = []
        for b in range(len(support)):
            rows.append([Fraction(0)] * len(slots))
        for a, img in enumerate(images):
            for j, p in enumerate(img):
                for m, c in p.terms.items():
                    rows[pos[(j, m)]][a] = c
        for vec in linalg.nullspace(rows, len(slots)):
            residue = ring.zero()
            witness = [ring.zero()] * len(fields)
            for (fi, mono), c in zip(slots, vec):
                if c == 0:
                    continue
                piece = ring.monomial(mono, c)
                witness[fi] = witness[fi] + piece
                residue = residue + fields[fi].apply(piece)
            if not normal_form(residue, gb).is_zero():
                return IncompressibilityReport(
                    False, max_degree, witness_coefficients=witness, witness_residue=residue
                )
    return IncompressibilityReport(True, max_degree)
