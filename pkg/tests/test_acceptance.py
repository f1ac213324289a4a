"""Release gate: end-to-end checks on the reference quivers.

Each check prints a single PASS/FAIL line and enforces a wall-clock
budget.  Run with `pytest -v -s tests/test_acceptance.py` to see the
lines as they appear.
"""

from __future__ import annotations

import itertools
import time
from contextlib import contextmanager

import test_gkm
import test_kac
import test_roots
import test_series

from qgk import (
    CartanDatum,
    DimVector,
    GradedSeries,
    PlethMode,
    QPoly,
    Quiver,
    WeightFunction,
    absolutely_cuspidal,
    canonical_decomposition,
    framed_character,
    gkm_dims,
    hua_kac,
    ip_general,
    ip_polynomial,
    lw_decompose,
    oracle_kac,
    oracle_kac_full,
    oracle_kac_table,
    pleth_exp,
    series_inv,
    series_mul,
    sigma_membership,
    weyl_reflect,
)
from qgk.series import vectors_up_to

Q = QPoly.q_power
ONE = QPoly.one()

JORDAN = Quiver(["0"], [("0", "0")])
A2 = Quiver(["0", "1"], [("0", "1")])
KRON = Quiver(["0", "1"], [("0", "1"), ("0", "1")])
G2 = Quiver(["0"], [("0", "0"), ("0", "0")])


@contextmanager
def gate(label: str, budget: float | None = None):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"FAIL {label}")
        raise
    elapsed = time.monotonic() - started
    if budget is not None and elapsed >= budget:
        print(f"FAIL {label}: {elapsed:.2f}s over the {budget:.0f}s budget")
        raise AssertionError(f"{label} took {elapsed:.2f}s, budget {budget:.0f}s")
    note = "" if budget is None else f" < {budget:.0f}s"
    print(f"PASS {label} ({elapsed:.2f}s{note})")


def test_jordan_kac_line():
    with gate("Jordan A_n = q up to 6, oracle agreement up to 3", 5.0):
        table = hua_kac(JORDAN, 6)
        for n in range(1, 7):
            assert table.polynomial((n,)) == Q(1)
        oracle = oracle_kac_table(JORDAN, DimVector(JORDAN, (3,)), fields=(2, 3, 4, 5))
        for n in range(1, 4):
            assert oracle.polynomial((n,)) == table.polynomial((n,))


def test_kronecker_isotropic_cuspidal():
    with gate("Kronecker A_(1,1) vs oracle, C^abs on the isotropic ray", 30.0):
        table = hua_kac(KRON, 6)
        assert table.polynomial((1, 1)) == oracle_kac(KRON, DimVector(KRON, (1, 1)))
        cusp = absolutely_cuspidal(KRON, 6)
        for l in range(1, 4):
            assert cusp.polynomial((l, l)) == Q(1)


def test_a2_relation_sentinel():
    with gate("A2 inversion stops at the units; bracket square vanishes", 10.0):
        cusp = absolutely_cuspidal(A2, 4)
        assert dict(cusp.items()) == {(1, 0): ONE, (0, 1): ONE}
        for d in vectors_up_to(2, 4):
            if any(d) and d not in ((1, 0), (0, 1)):
                assert cusp.polynomial(d).is_zero()
        weights = WeightFunction(A2, dict(cusp.table))
        dims = gkm_dims(CartanDatum.from_quiver(A2), weights, 4)
        assert dims.character((2, 1)).is_zero()
        assert dims.character((1, 2)).is_zero()
        assert {d: b for d, b in dims.dims.items() if b} == {
            (1, 0): {0: 1},
            (0, 1): {0: 1},
            (1, 1): {0: 1},
        }


def test_loop_quiver_dual_route_inversion():
    with gate("2-loop quiver: relation engine and series inversion agree", 60.0):
        cusp = absolutely_cuspidal(G2, 5)
        kac = hua_kac(G2, 5)
        uea = pleth_exp(kac.to_series(), PlethMode.QZ)
        generators = GradedSeries.one(G2, 5) - series_inv(uea)
        for d in range(1, 6):
            poly = cusp.polynomial((d,))
            assert poly == generators.coeff((d,))
            assert poly.is_monic()
            assert poly.degree_q() == 1 + d * d
            for half, coeff in poly.items():
                assert half % 2 == 0 and coeff.denominator == 1 and coeff > 0


def test_framed_jordan_partition_block():
    with gate("framed Jordan: one block carrying the partition series", 60.0):
        dec = lw_decompose(JORDAN, DimVector(JORDAN, (1,)), 6)
        assert dec.block_vectors() == [(0,)]
        block = dec.blocks[0]
        assert block.multiplicity == ONE
        expected = GradedSeries.one(JORDAN, 6)
        for k in range(1, 7):
            factor = GradedSeries(JORDAN, 6, {(0,): ONE, (k,): QPoly.zero() - Q(-1)})
            expected = series_mul(expected, factor)
        expected = series_inv(expected)
        assert block.character.items() == expected.items()
        total = framed_character(JORDAN, DimVector(JORDAN, (1,)), 6)
        for n in range(7):
            assert dec.total.coeff((n,)) == total.coeff((n,))
            assert block.multiplicity * block.character.coeff((n,)) == total.coeff((n,))


def test_weyl_invariance():
    with gate("Kac tables constant along Weyl orbits (words up to length 3)", 10.0):
        for quiver in (A2, KRON):
            table = hua_kac(quiver, 4)
            words = [
                word
                for length in range(1, 4)
                for word in itertools.product(quiver.vertices, repeat=length)
            ]
            checked = 0
            for d, poly in table.items():
                for word in words:
                    image = DimVector(quiver, d)
                    for v in word:
                        image = weyl_reflect(quiver, v, image)
                    out = image.as_tuple()
                    if any(x < 0 for x in out) or sum(out) > 4:
                        continue
                    assert table.polynomial(out) == poly
                    checked += 1
            assert checked


def test_canonical_refinement_and_ip_reduction():
    with gate("canonical decomposition refines all splittings; IP agrees", 30.0):
        test_roots.test_every_sigma_decomposition_refines_the_canonical_one(
            A2, KRON, G2
        )
        for quiver in (A2, KRON, G2):
            cartan = CartanDatum.from_quiver(quiver)
            rank = len(quiver.vertices)
            for d in vectors_up_to(rank, 5):
                if not any(d):
                    continue
                dv = DimVector(quiver, d)
                if sigma_membership(cartan, dv):
                    assert canonical_decomposition(quiver, dv) == [(dv, 1)]
                    assert ip_general(quiver, dv) == ip_polynomial(quiver, dv)


def test_nilpotent_jordan():
    with gate("nilpotent Jordan counts are 1 and invert to 1", 60.0):
        nil = oracle_kac_full(JORDAN, 3, "nilpotent")
        for n in range(1, 4):
            assert nil.polynomial((n,)) == ONE
        cusp = absolutely_cuspidal(JORDAN, 3, "nilpotent")
        for n in range(1, 4):
            assert cusp.polynomial((n,)) == ONE


def test_randomised_property_suites():
    with gate("randomised suites: Exp/Log, additivity, ordering, workers"):
        test_series.test_exp_log_inverse_both_modes()
        test_series.test_exp_additivity_both_modes()
        test_gkm.test_engine_dims_do_not_depend_on_registration_order()
        test_kac.test_workers_determinism()
