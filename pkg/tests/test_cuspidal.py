from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest

from qgk import (
    CartanDatum,
    CuspidalError,
    CuspidalTable,
    DimVector,
    GradedSeries,
    QPoly,
    absolutely_cuspidal,
    cuspidal_from_abs,
    euler_form,
    hua_kac,
    invert_character,
    ip_general,
    ip_polynomial,
    ip_table,
)

Q = QPoly.q_power
ONE = QPoly.one()


def _necklace_polynomial(l: int) -> QPoly:
    """(1/l) sum_{d | l} phi(d) q^{l/d}: counts necklaces, the expected C_l."""
    out = QPoly.zero()
    for d in range(1, l + 1):
        if l % d:
            continue
        phi = sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)
        out = out + Q(l // d, Fraction(phi, l))
    return out


# -- character inversion ---------------------------------------------------------


def test_invert_character_a2(a2):
    cartan = CartanDatum.from_quiver(a2)
    target = GradedSeries(a2, 3, {(1, 0): ONE, (0, 1): ONE, (1, 1): ONE})
    weights = invert_character(cartan, target, 3)
    assert weights.table == {(1, 0): ONE, (0, 1): ONE}


def test_invert_character_kronecker(kronecker):
    cartan = CartanDatum.from_quiver(kronecker)
    target = hua_kac(kronecker, 4).to_series()
    weights = invert_character(cartan, target, 4)
    assert weights.table == {
        (1, 0): ONE,
        (0, 1): ONE,
        (1, 1): Q(1),
        (2, 2): Q(1),
    }


def test_invert_character_rejects_deficit_off_roots(a2):
    cartan = CartanDatum.from_quiver(a2)
    target = GradedSeries(a2, 2, {(1, 0): ONE, (0, 1): ONE, (2, 0): ONE})
    with pytest.raises(CuspidalError):
        invert_character(cartan, target, 2)


def test_invert_character_rejects_bad_deficits(kronecker):
    cartan = CartanDatum.from_quiver(kronecker)
    units = {(1, 0): ONE, (0, 1): ONE}
    # engine already accounts for [e0, e1] at (1,1); deficit -1 there
    target = GradedSeries(kronecker, 2, {**units, (1, 1): QPoly.zero()})
    with pytest.raises(CuspidalError):
        invert_character(cartan, target, 2)
    target = GradedSeries(kronecker, 2, {**units, (1, 1): ONE + Q(1, Fraction(1, 2))})
    with pytest.raises(CuspidalError):
        invert_character(cartan, target, 2)
    target = GradedSeries(kronecker, 2, {**units, (1, 1): ONE + QPoly.half_power(1)})
    with pytest.raises(CuspidalError):
        invert_character(cartan, target, 2)


# -- absolutely cuspidal tables ----------------------------------------------------


def test_abs_cuspidal_jordan_line(jordan):
    table = absolutely_cuspidal(jordan, 5)
    assert table.absolute
    for l in range(1, 6):
        assert table.polynomial((l,)) == Q(1)


def test_abs_cuspidal_kronecker(kronecker):
    table = absolutely_cuspidal(kronecker, 6)
    assert table.polynomial((1, 0)) == ONE
    assert table.polynomial((0, 1)) == ONE
    for l in (1, 2, 3):
        assert table.polynomial((l, l)) == Q(1)
    # non-simple real roots are bracket-generated: no deficit there
    for real in ((2, 1), (1, 2), (3, 2), (2, 3)):
        assert table.polynomial(real).is_zero()
    assert table.polynomial((2, 0)).is_zero()
    assert table.polynomial((3, 1)).is_zero()


def test_abs_cuspidal_a2_units_only(a2):
    table = absolutely_cuspidal(a2, 4)
    assert dict(table.items()) == {(1, 0): ONE, (0, 1): ONE}


def test_abs_cuspidal_g2_shape(g2loop):
    table = absolutely_cuspidal(g2loop, 4)
    assert table.polynomial((1,)) == Q(2)
    for d in range(1, 5):
        poly = table.polynomial((d,))
        dv = DimVector(g2loop, (d,))
        assert poly.is_monic()
        assert poly.degree_q() == 1 - euler_form(g2loop, dv, dv)
        assert poly.has_nonnegative_coefficients()


def test_abs_cuspidal_nilpotent_jordan(jordan):
    table = absolutely_cuspidal(jordan, 3, "nilpotent")
    for l in (1, 2, 3):
        assert table.polynomial((l,)) == ONE


# -- cuspidal from absolutely cuspidal ----------------------------------------------


def test_cuspidal_jordan_matches_necklace_counts(jordan):
    cusp = cuspidal_from_abs(absolutely_cuspidal(jordan, 5))
    assert not cusp.absolute
    for l in range(1, 6):
        assert cusp.polynomial((l,)) == _necklace_polynomial(l)


def test_cuspidal_kronecker_ray(kronecker):
    cusp = cuspidal_from_abs(absolutely_cuspidal(kronecker, 6))
    for l in (1, 2, 3):
        assert cusp.polynomial((l, l)) == _necklace_polynomial(l)
    assert cusp.polynomial((1, 0)) == ONE
    assert cusp.polynomial((0, 1)) == ONE
    assert cusp.polynomial((2, 1)).is_zero()


def test_cuspidal_hyperbolic_passthrough(g2loop):
    table = absolutely_cuspidal(g2loop, 4)
    cusp = cuspidal_from_abs(table)
    assert cusp.table == table.table


def test_cuspidal_nilpotent_ray_is_constant(jordan):
    cusp = cuspidal_from_abs(absolutely_cuspidal(jordan, 3, "nilpotent"))
    for l in (1, 2, 3):
        assert cusp.polynomial((l,)) == ONE


def test_cuspidal_from_abs_rejects_non_absolute(jordan):
    cusp = cuspidal_from_abs(absolutely_cuspidal(jordan, 2))
    with pytest.raises(CuspidalError):
        cuspidal_from_abs(cusp)


# -- table validation ----------------------------------------------------------------


def test_table_validation(jordan):
    with pytest.raises(CuspidalError):
        CuspidalTable(jordan, 1, "plain", True, {(1,): Q(1) - ONE})
    with pytest.raises(CuspidalError):
        CuspidalTable(jordan, 1, "plain", True, {(1,): QPoly.half_power(1)})
    with pytest.raises(CuspidalError):
        CuspidalTable(jordan, 1, "plain", True, {(1,): Q(1, Fraction(1, 2))})
    # integer valued at q = 2..5 is enough for a non-absolute entry
    CuspidalTable(jordan, 2, "plain", False, {(2,): Q(2, Fraction(1, 2)) + Q(1, Fraction(1, 2))})
    with pytest.raises(CuspidalError):
        CuspidalTable(jordan, 1, "plain", False, {(1,): Q(1, Fraction(1, 2))})


# -- IP polynomials -------------------------------------------------------------------


def test_ip_polynomial_reference_values(jordan, kronecker, g2loop):
    assert ip_polynomial(jordan, (1,)) == Q(-2)
    assert ip_polynomial(kronecker, (1, 1)) == Q(-2)
    assert ip_polynomial(g2loop, (1,)) == Q(-4)
    assert ip_polynomial(kronecker, DimVector(kronecker, (1, 0))) == ONE


def test_ip_polynomial_outside_sigma(jordan, kronecker):
    with pytest.raises(CuspidalError):
        ip_polynomial(jordan, (2,))
    with pytest.raises(CuspidalError):
        ip_polynomial(kronecker, (2, 2))


def test_ip_general_reductions(jordan, a2, kronecker):
    assert ip_general(kronecker, (1, 1)) == ip_polynomial(kronecker, (1, 1))
    assert ip_general(jordan, (2,)) == Q(-4)
    assert ip_general(jordan, (3,)) == Q(-6)
    assert ip_general(a2, (2, 1)) == ONE
    with pytest.raises(CuspidalError):
        ip_general(a2, (0, 0))


def test_ip_table_consistency(kronecker):
    table = ip_table(kronecker, 3)
    assert set(table) == {
        d
        for d in (
            (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
            (3, 0), (2, 1), (1, 2), (0, 3),
        )
    }
    for d, poly in table.items():
        assert poly == ip_general(kronecker, d)
    assert table[(1, 1)] == Q(-2)
    assert table[(2, 1)] == Q(-2)
    assert table[(2, 0)] == ONE
