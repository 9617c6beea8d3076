"""Buchberger Groebner bases and the ideal invariants built on them.

Everything here works over exact rationals.  The default monomial order
is weighted grevlex: weighted degree first, ties broken reverse-
lexicographically on the ring's variable order.  Rings with zero-weight
variables get an extra total-degree comparison between the two so that
the order stays a well-order (1 must be the unique minimum).

The derived invariants: normal forms and ideal membership, local
colength at the origin (by stabilizing the quotient modulo powers of
the maximal ideal), Krull dimension (independent variable sets of the
leading-term ideal), weighted Hilbert-Poincare series (recursion on the
leading-term monomial ideal), minor ideals, and per-degree standard
monomial bases.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import DomainError, InputError
from .poly import (
    Monomial,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

INFINITE = math.inf


class MonomialOrder:
    """Total multiplicative order on monomials: 'wgrevlex' or 'lex'."""

    KINDS = ("wgrevlex", "lex")

    def __init__(self, kind: str = "wgrevlex"):
        if kind not in self.KINDS:
            raise InputError(f"unknown monomial order {kind!r}; choices: {self.KINDS}")
        self.kind = kind

    def key(self, ring: PolyRing):
        """Sort key for monomials; larger key means larger monomial."""
        if self.kind == "lex":
            return lambda m: m
        if ring.has_zero_weights:
            # total degree between weight and the grevlex tiebreak keeps
            # 1 strictly minimal when some variable has weight 0
            return lambda m: (
                ring.weighted_degree(m),
                sum(m),
                tuple(-e for e in reversed(m)),
            )
        return lambda m: (ring.weighted_degree(m), tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


WGREVLEX = MonomialOrder("wgrevlex")
LEX = MonomialOrder("lex")


def leading_monomial(p: Polynomial, key) -> Monomial:
    return max(p.terms, key=key)


def leading_term(p: Polynomial, key) -> tuple[Monomial, Fraction]:
    m = leading_monomial(p, key)
    return m, p.terms[m]


class GroebnerBasis:
    """A reduced Groebner basis: monic elements, no term of any element
    divisible by another element's leading monomial, sorted by leading
    monomial.  Unique for a given ideal and order."""

    __slots__ = ("ring", "order", "elements", "reduced", "_key", "_leading")

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: list[Polynomial]):
        self.ring = ring
        self.order = order
        self._key = order.key(ring)
        self.elements = sorted(elements, key=lambda p: self._key(leading_monomial(p, self._key)))
        self.reduced = True
        self._leading = [leading_monomial(g, self._key) for g in self.elements]

    def leading_monomials(self) -> list[Monomial]:
        return list(self._leading)

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self._leading)

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def is_homogeneous(self) -> bool:
        return all(g.is_quasihomogeneous() for g in self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and self.elements == other.elements
        )

    def __repr__(self):
        return f"GroebnerBasis[{'; '.join(str(g) for g in self.elements)}]"


def _reduce_full(p: Polynomial, basis: list[Polynomial], leads, key) -> Polynomial:
    """Fully reduced remainder of p modulo the listed polynomials."""
    remainder: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for g, (lm, lc) in zip(basis, leads):
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                factor = c / lc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mono_mul(gm, shift)
                    s = work.get(t, Fraction(0)) - factor * gc
                    if s == 0:
                        work.pop(t, None)
                    else:
                        work[t] = s
                break
        else:
            remainder[m] = c
    return Polynomial(p.ring, remainder)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Canonical remainder of p modulo the ideal; zero iff p is a member."""
    if p.ring != gb.ring:
        raise InputError("ring mismatch between polynomial and basis")
    key = gb._key
    leads = [leading_term(g, key) for g in gb.elements]
    return _reduce_full(p, gb.elements, leads, key)


def buchberger(
    generators: list[Polynomial],
    order: MonomialOrder = WGREVLEX,
    ring: PolyRing | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Classic Buchberger with the coprime-leading-term and chain
    criteria, processing pairs in increasing order of the pair lcm.
    The zero ideal yields an empty basis; the unit ideal yields [1].
    Output is deterministic and independent of generator order.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        if ring is None:
            if generators:
                ring = generators[0].ring
            else:
                raise InputError("cannot infer the ring from an empty generator list")
        return GroebnerBasis(ring, order, [])
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise InputError("generators live in different rings")
    key = order.key(ring)

    # seed with an interreduced, deterministic generating set
    basis: list[Polynomial] = []
    for g in sorted(gens, key=lambda p: (key(leading_monomial(p, key)), sorted(p.terms.items()))):
        leads = [leading_term(b, key) for b in basis]
        r = _reduce_full(g, basis, leads, key)
        if not r.is_zero():
            basis.append(r)

    lead = [leading_monomial(g, key) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_rank(ij):
        lcm = mono_lcm(lead[ij[0]], lead[ij[1]])
        return (ring.weighted_degree(lcm), key(lcm), ij)

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        lcm = mono_lcm(lead[i], lead[j])
        if lcm == mono_mul(lead[i], lead[j]):
            continue  # coprime leading monomials: S-polynomial reduces to 0
        # chain criterion: some k divides the lcm and both (i,k), (j,k) done
        if any(
            k not in (i, j)
            and mono_divides(lead[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        gi, gj = basis[i], basis[j]
        si = ring.monomial(mono_div(lcm, lead[i]), Fraction(1) / gi.terms[lead[i]])
        sj = ring.monomial(mono_div(lcm, lead[j]), Fraction(1) / gj.terms[lead[j]])
        spoly = si * gi - sj * gj
        leads = [leading_term(b, key) for b in basis]
        r = _reduce_full(spoly, basis, leads, key)
        if r.is_zero():
            continue
        new = len(basis)
        basis.append(r)
        lead.append(leading_monomial(r, key))
        pairs.update((k, new) for k in range(new))

    # reduce: keep minimal leading monomials, tail-reduce, make monic
    order_idx = sorted(range(len(basis)), key=lambda i: key(lead[i]))
    minimal: list[int] = []
    for i in order_idx:
        if not any(mono_divides(lead[j], lead[i]) for j in minimal):
            minimal.append(i)
    reduced: list[Polynomial] = []
    for i in minimal:
        others = [basis[j] for j in minimal if j != i]
        leads = [leading_term(g, key) for g in others]
        r = _reduce_full(basis[i], others, leads, key)
        lc = r.terms[leading_monomial(r, key)]
        reduced.append(r.scale(Fraction(1) / lc))
    return GroebnerBasis(ring, order, reduced)


# -- invariants derived from a basis ----------------------------------


def _ideal_plus_max_power(gb: GroebnerBasis, n: int) -> list[Polynomial]:
    ring = gb.ring
    power = [ring.monomial(m) for m in _monomials_of_total_degree(ring, n)]
    return gb.elements + power


def _monomials_of_total_degree(ring: PolyRing, degree: int) -> list[Monomial]:
    out = []

    def rec(i, remaining, prefix):
        if i == ring.arity - 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(i + 1, remaining - e, prefix + (e,))

    if ring.arity == 0:
        return []
    rec(0, degree, ())
    return out


def _standard_monomial_count(gb: GroebnerBasis) -> int | float:
    """Number of monomials outside the leading-term ideal (inf if unbounded)."""
    lead = gb.leading_monomials()
    n = gb.ring.arity
    # bounded iff every variable appears as a pure power among the leads
    caps = [None] * n
    for m in lead:
        support = [i for i, e in enumerate(m) if e > 0]
        if len(support) == 1:
            i = support[0]
            caps[i] = m[i] if caps[i] is None else min(caps[i], m[i])
        elif len(support) == 0:
            return 0
    if any(c is None for c in caps):
        return INFINITE
    count = 0
    for expo in itertools.product(*[range(c) for c in caps]):
        if not any(mono_divides(lm, expo) for lm in lead):
            count += 1
    return count


def colength_local(gb: GroebnerBasis, cap: int = 64) -> int | float:
    """Vector-space dimension of (power series ring at 0) / ideal.

    Computed as the stabilized value of dim k[x]/(I + m^N) for
    increasing N, where m is the maximal ideal at the origin.  Returns
    ``INFINITE`` when the quotient keeps growing past ``cap`` and the
    leading-term ideal confirms positive-dimensional support.
    """
    if gb.ring.arity == 0:
        return 0 if gb.is_unit_ideal() else 1
    # a weighted-homogeneous ideal (all weights >= 1) cuts out a cone, so
    # positive Krull dimension already proves the local quotient infinite
    if (
        not gb.ring.has_zero_weights
        and gb.is_homogeneous()
        and krull_dimension(gb) >= 1
    ):
        return INFINITE
    prev = None
    n = 1
    while n <= cap:
        quotient = buchberger(_ideal_plus_max_power(gb, n), gb.order, ring=gb.ring)
        dim = _standard_monomial_count(quotient)
        if dim == prev:
            return dim
        prev = dim
        n += 1
    if krull_dimension(gb) >= 1:
        return INFINITE
    raise DomainError(
        f"local colength did not stabilize within m^{cap} although the ideal "
        "is zero-dimensional; raise the cap"
    )


def krull_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the quotient ring, from the leading-term ideal.

    Maximal size of a set S of variables such that no leading monomial
    is supported entirely inside S.  Returns -1 for the unit ideal.
    """
    if gb.is_unit_ideal():
        return -1
    lead = gb.leading_monomials()
    n = gb.ring.arity
    supports = [frozenset(i for i, e in enumerate(m) if e > 0) for m in lead]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


class PoincareSeries:
    """Weighted Hilbert-Poincare series in the variable u.

    Stored in cancelled form: an integer polynomial numerator (dict
    exponent -> coefficient) over factors (1 - u^w) for the weights
    listed in ``denominator``.  ``finite`` is true iff the denominator
    is empty; the numerator is then the Poincare polynomial itself and
    has non-negative coefficients.
    """

    __slots__ = ("numerator", "denominator", "finite")

    def __init__(self, numerator: dict[int, int], denominator: tuple[int, ...]):
        numerator = {e: c for e, c in numerator.items() if c != 0}
        num, den = _cancel(numerator, tuple(sorted(denominator)))
        self.numerator = num
        self.denominator = den
        self.finite = not den

    def coefficient(self, degree: int) -> int:
        if not self.finite:
            raise DomainError("per-degree coefficients of an infinite series: expand instead")
        return self.numerator.get(degree, 0)

    def coefficients(self) -> dict[int, int]:
        if not self.finite:
            raise DomainError("infinite series has no finite coefficient table")
        return dict(sorted(self.numerator.items()))

    def total_dimension(self) -> int | float:
        """Evaluation at u = 1: the quotient's vector-space dimension."""
        if not self.finite:
            return INFINITE
        return sum(self.numerator.values())

    def socle_degree(self) -> int:
        """Top degree with a nonzero coefficient; -1 for the zero series."""
        if not self.finite:
            raise DomainError("infinite series has no socle degree")
        return max(self.numerator, default=-1)

    def expand(self, degree: int) -> dict[int, int]:
        """Coefficients of the series through the given degree."""
        coeffs = {e: c for e, c in self.numerator.items()}
        out = [coeffs.get(d, 0) for d in range(degree + 1)]
        for w in self.denominator:
            # multiply by 1/(1 - u^w) = 1 + u^w + u^{2w} + ...
            for d in range(w, degree + 1):
                out[d] += out[d - w]
        return {d: c for d, c in enumerate(out)}

    def __eq__(self, other):
        return (
            isinstance(other, PoincareSeries)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __str__(self):
        if not self.numerator:
            return "0"
        chunks = []
        for e, c in sorted(self.numerator.items()):
            if e == 0:
                body = str(c)
            else:
                mono = "u" if e == 1 else f"u^{e}"
                body = mono if c == 1 else (f"-{mono}" if c == -1 else f"{c}*{mono}")
            chunks.append(body if not chunks else (f"+ {body}" if c > 0 else f"- {body.lstrip('-')}"))
        num = " ".join(chunks)
        if self.finite:
            return num
        den = "*".join(f"(1-u^{w})" if w != 1 else "(1-u)" for w in self.denominator)
        return f"({num}) / {den}"

    def __repr__(self):
        return f"PoincareSeries({self})"


def _poly_mul_u(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _try_divide(num: dict[int, int], w: int) -> dict[int, int] | None:
    """Exact quotient num / (1 - u^w) in Z[u], or None if not divisible."""
    if not num:
        return {}
    q: dict[int, int] = {}
    rem = dict(num)
    # divide by (1 - u^w) from the top degree down: -u^w * q picks up terms
    while rem:
        top = max(rem)
        c = rem.pop(top)
        if top - w < 0:
            return None
        q[top - w] = -c
        rem[top - w] = rem.get(top - w, 0) + c
        rem = {e: v for e, v in rem.items() if v != 0}
    return q


def _cancel(num: dict[int, int], den: tuple[int, ...]):
    remaining = []
    for w in den:
        quotient = _try_divide(num, w)
        if quotient is None:
            remaining.append(w)
        else:
            num = quotient
    return num, tuple(sorted(remaining))


def _hilbert_numerator(lead: list[Monomial], ring: PolyRing) -> dict[int, int]:
    """Numerator of the Hilbert series of k[x]/(monomial ideal) over the
    standard denominator, by pivot recursion on a mixed variable."""
    gens = _minimalize_monomials(lead)
    if not gens:
        return {0: 1}
    if any(sum(m) == 0 for m in gens):
        return {}
    mixed = [m for m in gens if sum(1 for e in m if e > 0) > 1]
    if not mixed:
        out = {0: 1}
        for m in gens:
            w = ring.weighted_degree(m)
            out = _poly_mul_u(out, {0: 1, w: -1})
        return out
    # pivot on the most common variable among mixed generators
    counts = [0] * ring.arity
    for m in mixed:
        for i, e in enumerate(m):
            if e > 0:
                counts[i] += 1
    piv = max(range(ring.arity), key=lambda i: counts[i])
    pvec = tuple(1 if i == piv else 0 for i in range(ring.arity))
    plus = _minimalize_monomials(gens + [pvec])
    colon = _minimalize_monomials([mono_div(m, tuple(min(a, b) for a, b in zip(m, pvec))) for m in gens])
    n_plus = _hilbert_numerator(plus, ring)
    n_colon = _hilbert_numerator(colon, ring)
    w = ring.weights[piv]
    out = dict(n_plus)
    for e, c in n_colon.items():
        out[e + w] = out.get(e + w, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def _minimalize_monomials(monos: list[Monomial]) -> list[Monomial]:
    out: list[Monomial] = []
    for m in sorted(set(monos), key=lambda t: (sum(t), t)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def poincare_series(gb: GroebnerBasis) -> PoincareSeries:
    """Hilbert-Poincare series of the weighted-graded quotient ring.

    Requires a weighted-homogeneous ideal (each basis element must be
    homogeneous, which holds iff the input generators were).
    """
    ring = gb.ring
    if ring.has_zero_weights:
        raise DomainError("Poincare series undefined for rings with zero-weight variables")
    for g in gb.elements:
        if not g.is_quasihomogeneous():
            raise DomainError(f"generator {g} is not weighted-homogeneous")
    num = _hilbert_numerator(gb.leading_monomials(), ring)
    series = PoincareSeries(num, tuple(ring.weights))
    if series.finite and any(c < 0 for c in series.numerator.values()):
        raise RuntimeError(f"negative coefficient in a finite Poincare series: {series}")
    return series


def minors(matrix: list[list[Polynomial]], size: int) -> list[Polynomial]:
    """All size x size minor determinants, in lexicographic order of
    (row subset, column subset).  Exact cofactor expansion."""
    if not matrix or not matrix[0]:
        raise InputError("empty matrix")
    nrows, ncols = len(matrix), len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise InputError("ragged matrix")
    if size < 1 or size > min(nrows, ncols):
        raise InputError(f"minor size {size} out of range for {nrows}x{ncols} matrix")
    out = []
    for rows in itertools.combinations(range(nrows), size):
        for cols in itertools.combinations(range(ncols), size):
            out.append(_determinant([[matrix[r][c] for c in cols] for r in rows]))
    return out


def _determinant(mat: list[list[Polynomial]]) -> Polynomial:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    ring = mat[0][0].ring
    total = ring.zero()
    for j in range(n):
        entry = mat[0][j]
        if entry.is_zero():
            continue
        sub = [[row[c] for c in range(n) if c != j] for row in mat[1:]]
        cofactor = entry * _determinant(sub)
        total = total + cofactor if j % 2 == 0 else total - cofactor
    return total


def monomial_basis(gb: GroebnerBasis, degree: int, zero_weight_cap: int | None = None) -> list[Monomial]:
    """Standard monomials of weighted degree ``degree``: those outside
    the leading-term ideal.  Sorted ascending in the basis order."""
    lead = gb.leading_monomials()
    key = gb._key
    candidates = gb.ring.monomials_of_weight(degree, zero_weight_cap=zero_weight_cap)
    return sorted(
        (m for m in candidates if not any(mono_divides(lm, m) for lm in lead)),
        key=key,
    )
