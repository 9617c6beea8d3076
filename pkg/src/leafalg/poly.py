"""Exact multivariate polynomials over the rationals with weighted gradings.

Monomials are plain tuples of non-negative integer exponents, one entry
per ring variable.  Coefficients are ``fractions.Fraction``; floating
point never enters the core.  All values are immutable after
construction and every operation is a pure function, so shared use is
safe.

The canonical order used for storing printed output is
weighted-degree-then-reverse-lexicographic (largest term first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError, ParseError

Monomial = tuple  # exponent tuple, one entry per variable


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff the monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Exponentwise quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """A polynomial ring over Q with named variables and positive weights.

    ``weights[i]`` is the weighted degree of ``variables[i]``.  Weights
    are normally >= 1; a weight of 0 is tolerated (needed for family
    parameters such as a modulus of a family of cones) but rings with
    zero-weight variables are rejected by operations that require a
    locally finite grading (Poincare series, per-degree solvers without
    an explicit cap).
    """

    __slots__ = ("variables", "weights", "_index")

    def __init__(self, variables: Iterable[str], weights: Iterable[int] | None = None):
        names = tuple(variables)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        if not all(n.isidentifier() for n in names):
            raise InputError(f"variable names must be identifiers: {names}")
        if weights is None:
            wts = (1,) * len(names)
        else:
            wts = tuple(int(w) for w in weights)
        if len(wts) != len(names):
            raise InputError("weights length must equal variable count")
        if any(w < 0 for w in wts):
            raise InputError("weights must be non-negative")
        self.variables = names
        self.weights = wts
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def has_zero_weights(self) -> bool:
        return any(w == 0 for w in self.weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.weights))

    def __repr__(self) -> str:
        ws = ",".join(map(str, self.weights))
        return f"PolyRing({','.join(self.variables)}; weights {ws})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r} in {self!r}") from None

    def weighted_degree(self, mono: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    # -- constructors ------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.arity: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        expo = tuple(1 if j == i else 0 for j in range(self.arity))
        return Polynomial(self, {expo: Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.var(n) for n in self.variables)

    def monomial(self, expo: Monomial, coeff=1) -> "Polynomial":
        if len(expo) != self.arity:
            raise InputError("exponent tuple has wrong length")
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {tuple(expo): c})

    def monomials_of_weight(self, degree: int, zero_weight_cap: int | None = None) -> list:
        """All exponent tuples of weighted degree exactly ``degree``.

        Variables of weight 0 make each graded piece infinite; their
        exponents are then capped by ``zero_weight_cap`` (required).
        """
        if degree < 0:
            return []
        if self.has_zero_weights and zero_weight_cap is None:
            raise InputError(
                "ring has zero-weight variables; an explicit cap on their "
                "exponents is required to enumerate a graded piece"
            )

        out: list = []

        def rec(i: int, remaining: int, prefix: tuple):
            if i == self.arity:
                if remaining == 0:
                    out.append(prefix)
                return
            w = self.weights[i]
            if w == 0:
                for e in range(zero_weight_cap + 1):
                    rec(i + 1, remaining, prefix + (e,))
            else:
                for e in range(remaining // w + 1):
                    rec(i + 1, remaining - w * e, prefix + (e,))

        rec(0, degree, ())
        return out


class Polynomial:
    """Immutable sparse polynomial: ring plus {exponent tuple: Fraction}.

    No zero coefficients are stored and there are no duplicate
    monomials, so equality is plain term-by-term comparison.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def weighted_degree(self) -> int | None:
        """Largest weighted degree of a term, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.weighted_degree(m) for m in self.terms)

    def total_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError("ring mismatch between operands")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = terms.get(m, Fraction(0)) + ca * cb
                if s == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise InputError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    # -- calculus and grading ----------------------------------------

    def partial_derivative(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        terms: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            terms[dm] = terms.get(dm, Fraction(0)) + c * e
        return Polynomial(self.ring, terms)

    def weighted_components(self) -> tuple[dict, bool]:
        """Split into weighted-homogeneous components.

        Returns ``(components, is_quasihomogeneous)`` where components
        maps weighted degree to the homogeneous part.  The polynomial is
        the sum of its components; the flag is true iff at most one is
        nonzero (the zero polynomial counts as quasihomogeneous).
        """
        buckets: dict = {}
        for m, c in self.terms.items():
            d = self.ring.weighted_degree(m)
            buckets.setdefault(d, {})[m] = c
        components = {d: Polynomial(self.ring, t) for d, t in sorted(buckets.items())}
        return components, len(components) <= 1

    def is_quasihomogeneous(self) -> bool:
        return self.weighted_components()[1]

    def evaluate(self, values) -> Fraction:
        """Evaluate at a rational point given as a sequence, one value per variable."""
        vals = [Fraction(v) for v in values]
        if len(vals) != self.ring.arity:
            raise InputError("wrong number of values")
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for v, e in zip(vals, m):
                if e:
                    prod *= v**e
            total += prod
        return total

    # -- printing ----------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms sorted leading-first by weighted degree then grevlex."""
        ring = self.ring

        def key(item):
            m = item[0]
            return (ring.weighted_degree(m), tuple(-e for e in reversed(m)))

        return sorted(self.terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for m, c in self.sorted_terms():
            factors = [
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.ring.variables, m)
                if e > 0
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"<{self}>"


# -- parsing ---------------------------------------------------------
#
# expr     := term (("+"|"-") term)*
# term     := factor ("*" factor)*
# factor   := base ("^" nat)?
# base     := rational | var | "(" expr ")" | "-" factor
# rational := int ("/" nat)?


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                p = p + self.term()
            elif c == "-":
                self.pos += 1
                p = p - self.term()
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.nat()
        return base

    def base(self) -> Polynomial:
        c = self.peek()
        if c == "(":
            self.pos += 1
            p = self.expr()
            self.expect(")")
            return p
        if c == "-":
            self.pos += 1
            return -self.factor()
        if c.isdigit():
            return self.rational()
        if c.isalpha() or c == "_":
            name = self.identifier()
            if name not in self.ring._index:
                raise InputError(
                    f"unknown identifier {name!r}; ring variables are "
                    f"{', '.join(self.ring.variables)}"
                )
            return self.ring.var(name)
        self.error("expected a number, variable, or parenthesized expression")

    def identifier(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a non-negative integer")
        return int(self.text[start : self.pos])

    def rational(self) -> Polynomial:
        num = self.nat()
        if self.peek() == "/":
            self.pos += 1
            den = self.nat()
            if den == 0:
                self.error("zero denominator")
            return self.ring.const(Fraction(num, den))
        return self.ring.const(num)


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse an expression string into a canonical polynomial."""
    return _Parser(text, ring).parse()
