"""Varieties with structure: Jacobian ideal chains, Milnor and Tjurina
numbers, the coinvariant Poincare polynomial of a quasihomogeneous
isolated singularity, Jacobian Poisson brackets on codimension-two
complete intersections, rank stratifications, the finite-leaves test,
and degenerate loci of top polyvector structures.

The studied point is always the origin; translate inputs first.

A note on recovering f from its partials in the quasihomogeneous case:
the Euler identity gives f = (1/deg_w f) * sum_i m_i x_i d_i f, with
the weighted degree of f as the divisor (not the sum of the variable
weights).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InputError
from .groebner import (
    INFINITE,
    GroebnerBasis,
    MonomialOrder,
    PoincareSeries,
    WGREVLEX,
    buchberger,
    colength_local,
    krull_dimension,
    minors,
    poincare_series,
)
from .poly import PolyRing
from .vfields import (
    DifferentialForm,
    JacobiStructure,
    _differential_product,
    lie_closure,
    top_pairing,
)


@dataclass(frozen=True)
class JacobianPolyvector:
    """Marker: the variety carries the polyvector obtained by contracting
    the standard top polyvector of the ambient space with df_1 ^ ... ^ df_k."""

    kind = "jacobian"


@dataclass(frozen=True)
class BracketStructure:
    """Explicit skew bracket matrix with entries {x_i, x_j}."""

    matrix: tuple
    kind = "bracket"

    def __post_init__(self):
        m = self.matrix
        n = len(m)
        if any(len(row) != n for row in m):
            raise InputError("bracket matrix must be square")
        for i in range(n):
            if not m[i][i].is_zero():
                raise InputError("bracket matrix must have zero diagonal")
            for j in range(i + 1, n):
                if m[i][j] != -m[j][i]:
                    raise InputError("bracket matrix must be skew-symmetric")


@dataclass(frozen=True)
class VectorFieldFamily:
    """Explicit generating vector fields (a Lie algebra up to closure)."""

    generators: tuple
    kind = "vector-fields"


Structure = JacobianPolyvector | BracketStructure | JacobiStructure | VectorFieldFamily


class Variety:
    """Ambient ring, ordered ideal generators f_1..f_k, optional structure."""

    __slots__ = ("ring", "ideal_gens", "structure", "order", "_gb")

    def __init__(
        self,
        ring: PolyRing,
        ideal_gens,
        structure: Structure | None = None,
        order: MonomialOrder = WGREVLEX,
    ):
        gens = tuple(ideal_gens)
        if len(gens) > ring.arity:
            raise InputError("more generators than ambient variables")
        for g in gens:
            if g.ring != ring:
                raise InputError("ideal generator lives in a different ring")
        self.ring = ring
        self.ideal_gens = gens
        self.structure = structure
        self.order = order
        self._gb = None

    @property
    def codimension(self) -> int:
        return len(self.ideal_gens)

    @property
    def expected_dimension(self) -> int:
        return self.ring.arity - len(self.ideal_gens)

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(list(self.ideal_gens), self.order, ring=self.ring)
        return self._gb

    def is_quasihomogeneous(self) -> bool:
        return all(g.is_quasihomogeneous() for g in self.ideal_gens)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal_gens)
        return f"Variety({self.ring!r}; ideal ({gens}))"


@dataclass
class JacobianChain:
    """The ideals J_1..J_k: J_i is generated by f_1..f_{i-1} together
    with all i x i minors of the Jacobian matrix of f_1..f_i."""

    ideals: list


def jacobian_matrix(gens, ring: PolyRing):
    return [
        [f.partial_derivative(name) for name in ring.variables] for f in gens
    ]


def jacobian_chain(X: Variety) -> JacobianChain:
    if not X.ideal_gens:
        raise DomainError("the Jacobian chain needs at least one generator")
    ring = X.ring
    ideals = []
    for i in range(1, len(X.ideal_gens) + 1):
        head = list(X.ideal_gens[: i - 1])
        jac = jacobian_matrix(X.ideal_gens[:i], ring)
        ideals.append(head + minors(jac, i))
    return JacobianChain(ideals)


def milnor_breakdown(X: Variety, cap: int = 64) -> list:
    """Local colengths of the Jacobian chain ideals at the origin."""
    chain = jacobian_chain(X)
    return [
        colength_local(buchberger(gens, X.order, ring=X.ring), cap=cap)
        for gens in chain.ideals
    ]


def milnor_number(X: Variety, cap: int = 64):
    """Milnor number at the origin: the alternating sum of the chain
    colengths.  Returns INFINITE when some chain ideal has infinite
    colength (a non-isolated singularity along the flag)."""
    lengths = milnor_breakdown(X, cap=cap)
    if any(c == INFINITE for c in lengths):
        return INFINITE
    k = len(lengths)
    return sum((-1) ** (k - i) * c for i, c in enumerate(lengths, start=1))


@dataclass
class SingularityReport:
    milnor: object
    tjurina: object
    gap: object
    singularity_ring_series: PoincareSeries | None
    predicted_local_coinv_dim: object


def _singularity_ring_gens(X: Variety) -> list:
    chain = jacobian_chain(X)
    return chain.ideals[-1] + [X.ideal_gens[-1]]


def tjurina(X: Variety, cap: int = 64) -> SingularityReport:
    """Tjurina number (colength of the singularity ring) plus the Milnor
    number, their gap, and the graded series when quasihomogeneous."""
    lengths = milnor_breakdown(X, cap=cap)
    offenders = [i for i, c in enumerate(lengths, start=1) if c == INFINITE]
    if offenders:
        raise DomainError(
            f"non-isolated singularity: chain ideal J_{offenders[0]} has infinite colength"
        )
    k = len(lengths)
    mu = sum((-1) ** (k - i) * c for i, c in enumerate(lengths, start=1))
    sing_gb = buchberger(_singularity_ring_gens(X), X.order, ring=X.ring)
    tau = colength_local(sing_gb, cap=cap)
    if tau == INFINITE:
        raise DomainError("non-isolated singularity: the singularity ring is infinite-dimensional")
    series = None
    if X.is_quasihomogeneous() and not X.ring.has_zero_weights:
        series = poincare_series(sing_gb)
    return SingularityReport(
        milnor=mu,
        tjurina=tau,
        gap=mu - tau,
        singularity_ring_series=series,
        predicted_local_coinv_dim=mu,
    )


def hp0_series(X: Variety) -> PoincareSeries:
    """Poincare polynomial of the coinvariants of the Hamiltonian family,
    via the closed form: the graded series of the singularity ring
    O / (J_k, f_k).  Requires weighted-homogeneous generators and an
    isolated singularity."""
    if not X.ideal_gens:
        raise DomainError("hp0_series needs at least one generator")
    if not X.is_quasihomogeneous():
        raise DomainError("hp0_series requires weighted-homogeneous generators")
    sing_gb = buchberger(_singularity_ring_gens(X), X.order, ring=X.ring)
    series = poincare_series(sing_gb)
    if not series.finite:
        raise DomainError("non-isolated singularity: the singularity ring is not finite-dimensional")
    return series


def jacobian_bracket_matrix(X: Variety) -> list:
    """The Jacobian Poisson bracket of a codimension-(n-2) complete
    intersection: {x_i, x_j} is the pairing of
    dx_i ^ dx_j ^ df_1 ^ ... ^ df_k with the standard top polyvector."""
    ring = X.ring
    k = len(X.ideal_gens)
    if ring.arity != k + 2:
        raise DomainError(
            f"Jacobian bracket needs ambient arity = codimension + 2 "
            f"(got arity {ring.arity} with {k} generators)"
        )
    fprod = _differential_product(list(X.ideal_gens)) if k else DifferentialForm.from_poly(ring.one())
    n = ring.arity
    zero = ring.zero()
    matrix = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        di = DifferentialForm.coordinate(ring, ring.variables[i])
        for j in range(i + 1, n):
            dj = DifferentialForm.coordinate(ring, ring.variables[j])
            entry = top_pairing(di.wedge(dj).wedge(fprod))
            matrix[i][j] = entry
            matrix[j][i] = -entry
    return matrix


@dataclass
class RankStratum:
    rank: int
    ideal: GroebnerBasis
    dimension: int


def _structure_matrix(X: Variety, bracket_depth: int = 2):
    s = X.structure
    if s is None:
        raise DomainError("rank stratification needs a bracket or vector-field structure")
    if isinstance(s, BracketStructure):
        return [list(row) for row in s.matrix]
    if isinstance(s, JacobianPolyvector):
        return jacobian_bracket_matrix(X)
    if isinstance(s, JacobiStructure):
        # evaluation span of the Hamiltonian family: rows of pi plus u
        return [list(row) for row in s.matrix] + [list(s.u.coefficients)]
    if isinstance(s, VectorFieldFamily):
        closed = lie_closure(list(s.generators), depth=bracket_depth)
        return [list(xi.coefficients) for xi in closed]
    raise DomainError(f"unsupported structure {s!r}")


def rank_strata(X: Variety, bracket_depth: int = 2) -> list[RankStratum]:
    """Closed loci where the structure's evaluation rank is at most i,
    cut out by the ideal of (i+1) x (i+1) minors plus the variety ideal,
    for i = 0 .. min(rows, cols).  Vector-field structures are closed
    under Lie brackets to ``bracket_depth`` first, so their strata are
    relative to the closed generating set."""
    matrix = _structure_matrix(X, bracket_depth)
    if not matrix:
        gb = X.groebner()
        return [RankStratum(0, gb, krull_dimension(gb))]
    max_rank = min(len(matrix), len(matrix[0]))
    out = []
    for i in range(max_rank + 1):
        gens = list(X.ideal_gens)
        if i < max_rank:
            gens += minors(matrix, i + 1)
        gb = buchberger(gens, X.order, ring=X.ring)
        out.append(RankStratum(i, gb, krull_dimension(gb)))
    return out


@dataclass
class LeavesReport:
    passed: bool
    strata: list
    witness: RankStratum | None = None

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def leaves_check(X: Variety, bracket_depth: int = 2) -> LeavesReport:
    """Finite-leaves criterion: the rank-at-most-i locus may have
    dimension at most i.  Fails with the smallest offending stratum."""
    strata = rank_strata(X, bracket_depth=bracket_depth)
    for stratum in strata:
        if stratum.dimension > stratum.rank:
            return LeavesReport(False, strata, witness=stratum)
    return LeavesReport(True, strata)


@dataclass
class DegenerateLocusReport:
    ideal: GroebnerBasis
    dimension: int
    finite: bool


def degenerate_locus(X: Variety) -> DegenerateLocusReport:
    """Vanishing locus of the top polyvector together with the singular
    locus: the variety ideal plus all k x k minors of the Jacobian.
    Finite (dimension <= 0) iff the coinvariants are finite-dimensional."""
    if not isinstance(X.structure, JacobianPolyvector):
        raise DomainError("degenerate locus needs the Jacobian polyvector structure")
    if not X.ideal_gens:
        raise DomainError("degenerate locus needs at least one generator")
    ring = X.ring
    k = len(X.ideal_gens)
    gens = list(X.ideal_gens) + minors(jacobian_matrix(X.ideal_gens, ring), k)
    gb = buchberger(gens, X.order, ring=ring)
    dim = krull_dimension(gb)
    return DegenerateLocusReport(ideal=gb, dimension=dim, finite=dim <= 0)
