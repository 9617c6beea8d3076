"""Bigraded generating series for symmetric-power coinvariants, plus a
tiny brute-force check for second symmetric powers.

The series lives in a symmetric-power variable s and a weight variable
u.  For a finite graded dimension table p (the coinvariant Poincare
polynomial of the underlying variety) the symmetric algebra on one copy
of that space per power r >= 1 has series

    prod_{r >= 1} prod_j (1 - s^r u^(j - r*d))^(-p_j),

truncated strictly in s; the u-support at each s-degree stays finite.
The exponent shift by -d per power is the graded correction that
assigns the power variable weight -d, where d is the weight of the
defining equation; d = 0 gives the uncorrected series.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg
from .errors import DomainError, InputError
from .geom import Variety, hp0_series
from .groebner import monomial_basis, normal_form
from .coinv import _resolve_family


class BigradedSeries:
    """Truncated series in s (symmetric power) and u (weight).

    Coefficients are non-negative integers keyed by (s-degree,
    u-exponent); u-exponents may be negative after weight correction.
    The s^0 coefficient is always 1 (the empty symmetric product).
    """

    __slots__ = ("truncation", "coefficients")

    def __init__(self, truncation: int, coefficients=None):
        self.truncation = truncation
        coeffs = {(0, 0): 1}
        if coefficients is not None:
            coeffs = {k: v for k, v in dict(coefficients).items() if v != 0 and k[0] <= truncation}
        if coeffs.get((0, 0)) != 1 or any(k[0] == 0 and k != (0, 0) for k in coeffs):
            raise InputError("the s^0 layer must be exactly 1")
        if any(v < 0 for v in coeffs.values()):
            raise InputError("coefficients must be non-negative")
        self.coefficients = coeffs

    def s_layer(self, r: int) -> dict[int, int]:
        """The u-polynomial multiplying s^r."""
        return {u: c for (s, u), c in self.coefficients.items() if s == r}

    def multiply_factor(self, r: int, u_exp: int, multiplicity: int) -> "BigradedSeries":
        """Multiply by (1 - s^r u^u_exp)^(-multiplicity), truncated."""
        if multiplicity < 0:
            raise InputError("negative multiplicity")
        if multiplicity == 0 or r > self.truncation:
            return self
        out: dict = {}
        for (s, u), c in self.coefficients.items():
            a = 0
            while s + a * r <= self.truncation:
                weight = math.comb(multiplicity - 1 + a, a)
                key = (s + a * r, u + a * u_exp)
                out[key] = out.get(key, 0) + c * weight
                a += 1
        return BigradedSeries(self.truncation, out)

    def __mul__(self, other: "BigradedSeries") -> "BigradedSeries":
        trunc = min(self.truncation, other.truncation)
        out: dict = {}
        for (sa, ua), ca in self.coefficients.items():
            for (sb, ub), cb in other.coefficients.items():
                if sa + sb > trunc:
                    continue
                key = (sa + sb, ua + ub)
                out[key] = out.get(key, 0) + ca * cb
        return BigradedSeries(trunc, out)

    def specialize_u(self) -> dict[int, int]:
        """Set u = 1: the s-series of total dimensions per power."""
        out: dict[int, int] = {}
        for (s, _), c in self.coefficients.items():
            out[s] = out.get(s, 0) + c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BigradedSeries)
            and self.truncation == other.truncation
            and self.coefficients == other.coefficients
        )

    def __str__(self):
        layers = []
        for r in range(self.truncation + 1):
            layer = self.s_layer(r)
            if not layer:
                continue
            chunks = []
            for u, c in sorted(layer.items()):
                if u == 0:
                    chunks.append(str(c))
                else:
                    base = "u" if u == 1 else f"u^{u}"
                    chunks.append(base if c == 1 else f"{c}*{base}")
            body = " + ".join(chunks)
            layers.append(body if r == 0 else f"({body})*s^{r}" if r > 1 else f"({body})*s")
        return " + ".join(layers)

    __repr__ = __str__


def sym_power_series(p: dict[int, int], shift: int, truncation: int) -> BigradedSeries:
    """Series of the symmetric algebra on one copy of a graded space per
    power r >= 1, where ``p`` maps weight to dimension and ``shift`` is
    the weight of the defining equation (0 for no correction)."""
    if truncation < 0:
        raise InputError("truncation must be non-negative")
    for j, pj in p.items():
        if pj < 0:
            raise InputError(f"negative coefficient {pj} at weight {j}")
    series = BigradedSeries(truncation)
    for r in range(1, truncation + 1):
        for j, pj in sorted(p.items()):
            series = series.multiply_factor(r, j - r * shift, pj)
    return series


def hp0_sym_series(X: Variety, truncation: int, corrected: bool = True) -> BigradedSeries:
    """Symmetric-power series of a quasihomogeneous isolated singularity,
    from its coinvariant Poincare polynomial; the corrected form shifts
    u by the weight of the last defining equation per power."""
    series = hp0_series(X)
    p = series.coefficients()
    d = X.ideal_gens[-1].weighted_degree() if corrected else 0
    return sym_power_series(p, d or 0, truncation)


def brute_sym2_coinvariants(X: Variety, max_degree: int, family="hamiltonian-top") -> dict[int, int]:
    """Per-weight dimensions of the coinvariants of the second symmetric
    power under the diagonal action xi.(f g) = xi(f) g + f xi(g),
    computed by exact linear algebra on symmetrized monomial pairs.

    Guarded to tiny inputs (ring arity <= 3, socle degree <= 6): the
    bases grow quadratically.
    """
    if X.ring.arity > 3:
        raise DomainError("size guard: brute second symmetric power needs ring arity <= 3")
    if not X.is_quasihomogeneous():
        raise DomainError("second symmetric power oracle needs a weighted-homogeneous ideal")
    if X.ideal_gens and hp0_series(X).socle_degree() > 6:
        raise DomainError("size guard: socle degree above 6")
    fields, _ = _resolve_family(X, family, max_degree)
    graded: dict[int, list] = {}
    for xi in fields:
        if xi.is_zero():
            continue
        w = xi.weight()
        if w is None:
            raise DomainError("family must be weight-homogeneous")
        graded.setdefault(w, []).append(xi)

    gb = X.groebner()
    ring = X.ring
    monos = {d: monomial_basis(gb, d) for d in range(0, max_degree + 1)}
    images = {}  # (field index, monomial) -> normal form of the image
    flat = [xi for _, fs in sorted(graded.items()) for xi in fs]
    for fi, xi in enumerate(flat):
        for d, ms in monos.items():
            for m in ms:
                images[(fi, m)] = normal_form(xi.apply(ring.monomial(m)), gb)

    def canonical(ma, mb):
        ka = (ring.weighted_degree(ma), ma)
        kb = (ring.weighted_degree(mb), mb)
        return (ma, mb) if ka <= kb else (mb, ma)

    def sym_basis(w):
        out = set()
        for da in range(0, w // 2 + 1):
            db = w - da
            for a in monos.get(da, []):
                for b in monos.get(db, []):
                    out.add(canonical(a, b))
        return sorted(out)

    def add_product(row, index, poly_a, poly_b):
        for ma, ca in poly_a.terms.items():
            for mb, cb in poly_b.terms.items():
                row[index[canonical(ma, mb)]] += ca * cb

    dims: dict[int, int] = {}
    for w in range(0, max_degree + 1):
        pairs = sym_basis(w)
        if not pairs:
            dims[w] = 0
            continue
        index = {p: i for i, p in enumerate(pairs)}
        rows = []
        for fi, xi in enumerate(flat):
            fw = xi.weight()
            bw = w - fw
            if bw < 0:
                continue
            for da in range(0, bw + 1):
                db = bw - da
                if da > db:
                    continue
                for a in monos.get(da, []):
                    for b in monos.get(db, []):
                        row = [Fraction(0)] * len(pairs)
                        add_product(row, index, images[(fi, a)], ring.monomial(b))
                        add_product(row, index, ring.monomial(a), images[(fi, b)])
                        if any(v != 0 for v in row):
                            rows.append(row)
        dims[w] = len(pairs) - linalg.rank(rows)
    return dims
