"""Groebner bases and the ideal invariants derived from them."""

import random

import pytest

from leafalg.errors import DomainError, InputError
from leafalg.groebner import (
    INFINITE,
    LEX,
    buchberger,
    colength_local,
    krull_dimension,
    minors,
    monomial_basis,
    normal_form,
    poincare_series,
)
from leafalg.poly import PolyRing, parse_poly

from oracles import (
    graded_member,
    graded_quotient_dims,
    local_colength_brute,
    random_quasihomogeneous,
)

XYZ = PolyRing(["x", "y", "z"])
XY = PolyRing(["x", "y"])
CUSP_RING = PolyRing(["x", "y"], [3, 2])


def polys(ring, *texts):
    return [parse_poly(t, ring) for t in texts]


def test_buchberger_already_reduced():
    gb = buchberger(polys(XY, "x", "y"))
    assert [str(g) for g in gb.elements] == ["y", "x"]


def test_buchberger_leading_ideals_distinguish_membership():
    # the two ideals from the plane-curve example differ exactly by y^4
    with_q = buchberger(polys(XY, "3*x^2+2*x*y", "x^2+4*y^3", "x^3+x^2*y+y^4"))
    without_q = buchberger(polys(XY, "3*x^2+2*x*y", "x^2+4*y^3"))
    y4 = parse_poly("y^4", XY)
    assert normal_form(y4, with_q).is_zero()
    assert not normal_form(y4, without_q).is_zero()
    assert set(with_q.leading_monomials()) != set(without_q.leading_monomials())


def test_buchberger_six_dimensional_quotient():
    gb = buchberger(polys(XYZ, "x^2+y^2+z^2", "x*y", "x*z", "y*z"))
    series = poincare_series(gb)
    assert series.total_dimension() == 6
    # frozen from the brute-force graded oracle
    assert graded_quotient_dims(polys(XYZ, "x^2+y^2+z^2", "x*y", "x*z", "y*z"), 4) == {
        0: 1,
        1: 3,
        2: 2,
        3: 0,
        4: 0,
    }


def test_buchberger_zero_and_unit_ideal():
    assert buchberger([XY.zero()], ring=XY).elements == []
    unit = buchberger(polys(XY, "x", "x + 1"))
    assert [str(g) for g in unit.elements] == ["1"]
    assert unit.is_unit_ideal()


def test_buchberger_permutation_invariance():
    rng = random.Random(23)
    for _ in range(8):
        gens = [random_quasihomogeneous(rng, XYZ, rng.randint(2, 4)) for _ in range(3)]
        reference = buchberger(gens)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert buchberger(shuffled).elements == reference.elements


def test_normal_form_zero_and_membership():
    # weights (3, 2) make the curve equation homogeneous with leading x^2
    gb = buchberger(polys(CUSP_RING, "x^2 - y^3"))
    assert normal_form(CUSP_RING.zero(), gb).is_zero()
    assert normal_form(parse_poly("x^2", CUSP_RING), gb) == parse_poly("y^3", CUSP_RING)


def test_membership_agrees_with_graded_brute_force():
    rng = random.Random(29)
    for _ in range(20):
        gens = [
            random_quasihomogeneous(rng, XYZ, rng.randint(2, 3))
            for _ in range(rng.randint(1, 3))
        ]
        gb = buchberger(gens)
        # elements built inside the ideal must pass both routes
        member = XYZ.zero()
        for g in gens:
            member = member + random_quasihomogeneous(rng, XYZ, 4 - g.weighted_degree()) * g
        comps, _ = member.weighted_components()
        for piece in comps.values():
            assert normal_form(piece, gb).is_zero() == graded_member(piece, gens)
        # random homogeneous candidates must agree too
        candidate = random_quasihomogeneous(rng, XYZ, rng.randint(2, 4))
        assert normal_form(candidate, gb).is_zero() == graded_member(candidate, gens)


def test_colength_point():
    assert colength_local(buchberger(polys(XYZ, "x", "y", "z"))) == 1


def test_colength_cube():
    gb = buchberger(polys(XYZ, "x^2", "y^2", "z^2"))
    assert colength_local(gb) == 8
    assert local_colength_brute(polys(XYZ, "x^2", "y^2", "z^2")) == 8


def test_colength_quadric_ideal():
    gens = polys(XYZ, "x^2+y^2+z^2", "x*y", "x*z", "y*z")
    assert colength_local(buchberger(gens)) == 6
    assert local_colength_brute(gens) == 6


def test_colength_nonisolated_is_infinite():
    gb = buchberger(polys(XY, "x^2", "x*y"))
    assert colength_local(gb) == INFINITE


def test_colength_inhomogeneous_local_ring():
    # x - x^2 cuts out {0, 1}; the local quotient at the origin is a point
    gb = buchberger(polys(XY, "x - x^2", "y"))
    assert colength_local(gb) == 1


def test_colength_matches_series_for_graded_origin_ideals():
    rng = random.Random(31)
    for _ in range(6):
        gens = [
            random_quasihomogeneous(rng, XY, rng.randint(2, 4)),
            random_quasihomogeneous(rng, XY, rng.randint(2, 4)),
            parse_poly("x^5", XY),
            parse_poly("y^5", XY),
        ]
        gb = buchberger(gens)
        series = poincare_series(gb)
        assert series.finite
        assert colength_local(gb) == series.total_dimension()


def test_krull_dimension_examples():
    assert krull_dimension(buchberger(polys(XY, "x"))) == 1
    assert krull_dimension(buchberger(polys(XY, "1/2"))) == -1
    assert krull_dimension(buchberger(polys(XYZ, "x*y", "x*z", "y*z"))) == 1
    assert krull_dimension(buchberger([XYZ.zero()], ring=XYZ)) == 3


def test_poincare_series_cube():
    series = poincare_series(buchberger(polys(XYZ, "x^2", "y^2", "z^2")))
    assert series.finite
    assert series.coefficients() == {0: 1, 1: 3, 2: 3, 3: 1}
    assert series.coefficients() == graded_quotient_dims(polys(XYZ, "x^2", "y^2", "z^2"), 3)


def test_poincare_series_weighted():
    series = poincare_series(buchberger(polys(CUSP_RING, "2*x", "-3*y^2", "x^2-y^3")))
    assert series.finite
    assert series.coefficients() == {0: 1, 2: 1}
    assert str(series) == "1 + u^2"


def test_poincare_series_free_ring():
    ring = PolyRing(["x"])
    series = poincare_series(buchberger([ring.zero()], ring=ring))
    assert not series.finite
    assert series.numerator == {0: 1}
    assert series.denominator == (1,)
    assert series.expand(4) == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}


def test_poincare_series_rejects_inhomogeneous():
    with pytest.raises(DomainError, match="not weighted-homogeneous"):
        poincare_series(buchberger(polys(XY, "x + y^2")))


def test_poincare_series_unit_ideal_is_zero():
    series = poincare_series(buchberger(polys(XY, "1")))
    assert series.finite
    assert series.total_dimension() == 0
    assert series.socle_degree() == -1


def test_minors_of_gradient_pair():
    mat = [polys(XYZ, "2*x", "2*y", "2*z"), polys(XYZ, "2*x", "4*y", "6*z")]
    result = minors(mat, 2)
    assert [str(p) for p in result] == ["4*x*y", "8*x*z", "4*y*z"]


def test_minors_size_one_returns_entries():
    mat = [polys(XYZ, "x", "y")]
    assert minors(mat, 1) == polys(XYZ, "x", "y")


def test_minors_diagonal_determinant():
    zero = XYZ.zero()
    x, y, z = XYZ.gens()
    mat = [[x, zero, zero], [zero, y, zero], [zero, zero, z]]
    assert minors(mat, 3) == [x * y * z]


def test_minors_alternating_in_rows():
    rng = random.Random(37)
    rows = [
        [XYZ.var(v).scale(rng.randint(1, 3)) + XYZ.monomial((1, 1, 0), rng.randint(-2, 2)) for v in XYZ.variables]
        for _ in range(3)
    ]
    swapped = [rows[1], rows[0], rows[2]]
    # the full determinant flips sign
    assert minors(rows, 3)[0] == -minors(swapped, 3)[0]
    # 2x2 minors over the swapped row pair {0,1} flip sign; the others permute
    original = minors(rows, 2)
    flipped = minors(swapped, 2)
    assert original[:3] == [-p for p in flipped[:3]]
    assert original[3:6] == flipped[6:9]
    assert original[6:9] == flipped[3:6]


def test_minors_out_of_range():
    with pytest.raises(InputError):
        minors([polys(XY, "x", "y")], 2)


def test_monomial_basis_weighted():
    gb = buchberger(polys(CUSP_RING, "x^2 - y^3"))
    assert monomial_basis(gb, 6) == [(0, 3)]
    assert monomial_basis(gb, 0) == [(0, 0)]
    assert monomial_basis(buchberger(polys(CUSP_RING, "1")), 0) == []


def test_monomial_basis_degree_two():
    gb = buchberger(polys(XYZ, "x^2", "y^2", "z^2"))
    assert sorted(monomial_basis(gb, 2)) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_monomial_basis_counts_match_series():
    gens = polys(XYZ, "x^2+y^2+z^2", "x*y", "x*z", "y*z")
    gb = buchberger(gens)
    series = poincare_series(gb)
    total = sum(len(monomial_basis(gb, d)) for d in range(0, series.socle_degree() + 3))
    assert total == series.total_dimension()


def test_series_expansion_matches_basis_counts_when_infinite():
    # (xy) cuts out the two axes: 1, 2, 2, 2, ... standard monomials
    gb = buchberger(polys(XY, "x*y"))
    series = poincare_series(gb)
    assert not series.finite
    expanded = series.expand(6)
    for d in range(0, 7):
        assert expanded[d] == len(monomial_basis(gb, d))
    assert expanded[6] == 2


def test_lex_order_supported():
    gb = buchberger(polys(XY, "x^2 - y^3"), order=LEX)
    # under lex with x > y the leading monomial is x^2 as well
    assert normal_form(parse_poly("x^2", XY), gb) == parse_poly("y^3", XY)
    gb2 = buchberger(polys(XY, "x - y^3"), order=LEX)
    assert normal_form(parse_poly("x", XY), gb2) == parse_poly("y^3", XY)


def test_wgrevlex_prefers_weighted_degree():
    gb = buchberger(polys(CUSP_RING, "x^2 - y^4"))
    # x^2 has weight 6, y^4 weight 8: leading monomial is y^4
    assert gb.leading_monomials() == [(0, 4)]


def test_basis_invariants_spolys_and_reducedness():
    # every S-polynomial of basis elements reduces to zero; the basis is
    # monic and no term of any element is divisible by another's lead
    from leafalg.poly import mono_div, mono_divides, mono_lcm

    rng = random.Random(97)
    for _ in range(6):
        gens = [
            random_quasihomogeneous(rng, XYZ, rng.randint(2, 4))
            for _ in range(rng.randint(2, 3))
        ]
        gb = buchberger(gens)
        key = gb.order.key(gb.ring)
        leads = gb.leading_monomials()
        for a in range(len(gb.elements)):
            ga = gb.elements[a]
            assert ga.terms[leads[a]] == 1  # monic
            for other, lm in zip(gb.elements, leads):
                if other is ga:
                    continue
                assert not any(mono_divides(lm, m) for m in ga.terms)
            for b in range(a + 1, len(gb.elements)):
                gbb = gb.elements[b]
                lcm = mono_lcm(leads[a], leads[b])
                spoly = (
                    gb.ring.monomial(mono_div(lcm, leads[a])) * ga
                    - gb.ring.monomial(mono_div(lcm, leads[b])) * gbb
                )
                assert normal_form(spoly, gb).is_zero()


def test_normal_form_constant_on_cosets():
    # NF(p + i) == NF(p) for ideal members i: the remainder is a
    # well-defined function of the residue class
    rng = random.Random(101)
    gens = [random_quasihomogeneous(rng, XYZ, 3) for _ in range(2)]
    gb = buchberger(gens)
    for _ in range(10):
        p = random_quasihomogeneous(rng, XYZ, 4)
        member = gens[0] * random_quasihomogeneous(rng, XYZ, 4 - gens[0].weighted_degree())
        assert normal_form(p + member, gb) == normal_form(p, gb)


def test_zero_weight_ring_order_is_well_founded():
    # with a zero-weight variable the total degree must break the tie,
    # otherwise division by t^2 - t would never terminate
    ring = PolyRing(["x", "t"], [1, 0])
    gb = buchberger([parse_poly("t - t^2", ring)])
    assert gb.leading_monomials() == [(0, 2)]
    assert normal_form(parse_poly("t^2", ring), gb) == parse_poly("t", ring)
