r"""
Graded characters of framed moduli and their lowest-weight decomposition.

For a framing vector f the generating series

    F(z) = sum_e A_{Q_f, (e,1)}(q^{-1}) z^e

collects Kac polynomials of the framed quiver at framing dimension one,
evaluated at q^{-1}.  As a module character it decomposes into blocks

    F(z) = sum_d V_d(q^{-1}) z^d chL_d(z)

indexed by the d with (d,1) a positive root of Q_f.  The block
multiplicity V_d is the absolutely cuspidal polynomial of Q_f at (d,1),
again in q^{-1}, and chL_d is the character of the block's lowest-weight
module, recovered coefficient by coefficient from F alone.  The lowest
weight itself is the pairing of (d,1) against the unframed coordinate
vectors under the symmetrised Euler form of Q_f.

Reconstruction F = sum_d V_d z^d chL_d is checked on every call; systems
whose blocks are comparable in the dominance order cannot be separated
this way and raise AmbiguousDecompositionError.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuspidal import absolutely_cuspidal
from .gkm import lowest_weight_extract
from .kac import hua_kac
from .qpoly import QPoly
from .quiver import DimVector, Quiver, frame, framed_vector, sym_form
from .roots import CartanDatum, phi_plus
from .series import GradedSeries, vectors_up_to


class NakajimaError(ValueError):
    pass


def framed_character(quiver: Quiver, framing: DimVector, bound: int) -> GradedSeries:
    """F(z) = sum_{|e| <= bound} A_{Q_f,(e,1)}(q^{-1}) z^e."""
    framed = frame(quiver, framing)
    kac = hua_kac(framed, bound + 1).to_series()
    rank = len(quiver.vertices)
    terms: dict[tuple[int, ...], QPoly] = {}
    for e in vectors_up_to(rank, bound):
        poly = kac.coeff(e + (1,))
        if not poly.is_zero():
            terms[e] = poly.substitute_power(-1)
    return GradedSeries(quiver, bound, terms)


@dataclass(frozen=True)
class Block:
    """One lowest-weight constituent of a framed character."""

    vector: tuple[int, ...]
    multiplicity: QPoly
    weight: tuple[int, ...]
    character: GradedSeries


@dataclass
class LowestWeightDecomposition:
    quiver: Quiver
    framing: DimVector
    bound: int
    total: GradedSeries
    blocks: list[Block]

    def block_vectors(self) -> list[tuple[int, ...]]:
        return [b.vector for b in self.blocks]


def lw_decompose(
    quiver: Quiver, framing: DimVector, bound: int
) -> LowestWeightDecomposition:
    """Decompose the framed character into lowest-weight blocks.

    Blocks are the unframed d with |d| <= bound and (d,1) a positive root
    of the framed quiver; the zero vector is a block whenever the pure
    framing unit is (it always is).
    """
    framed = frame(quiver, framing)
    cartan = CartanDatum.from_quiver(framed)
    roots = phi_plus(cartan, bound + 1)
    table = absolutely_cuspidal(framed, bound + 1)
    total = framed_character(quiver, framing, bound)
    rank = len(quiver.vertices)

    multiplicities: dict[tuple[int, ...], QPoly] = {}
    for d in vectors_up_to(rank, bound):
        if not roots.in_phi(d + (1,)):
            continue
        mult = table.polynomial(d + (1,)).substitute_power(-1)
        if not mult.is_zero():
            multiplicities[d] = mult

    characters = lowest_weight_extract(total, multiplicities, bound)

    blocks: list[Block] = []
    for d in sorted(multiplicities, key=lambda t: (sum(t), t)):
        dv = framed_vector(framed, DimVector(quiver, d), 1)
        weight = tuple(
            sym_form(framed, dv, framed_vector(framed, DimVector.unit(quiver, v), 0))
            for v in quiver.vertices
        )
        blocks.append(Block(d, multiplicities[d], weight, characters[d]))

    decomposition = LowestWeightDecomposition(quiver, framing, bound, total, blocks)
    _check_reconstruction(decomposition)
    return decomposition


def _check_reconstruction(dec: LowestWeightDecomposition) -> None:
    rank = len(dec.quiver.vertices)
    for e in vectors_up_to(rank, dec.bound):
        acc = QPoly.zero()
        for block in dec.blocks:
            c = tuple(x - y for x, y in zip(e, block.vector))
            if any(x < 0 for x in c):
                continue
            acc = acc + block.multiplicity * block.character.coeff(c)
        if acc != dec.total.coeff(e):
            raise NakajimaError(f"block reconstruction fails at {e}")
