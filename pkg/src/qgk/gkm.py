r"""
Generalised Kac-Moody algebras presented by generators and relations.

The positive half n^+ is generated by a graded alphabet: for each simple
root m (a dimension vector) and each cohomological degree j there are
letters e_{m,j,l}, l = 1..mult, with mult read off the weight function as
the coefficient of q^{j/2}.  The defining relations are

  * ad(e_m)^{1 - a_{mn}}(e_{n,j,l}) = 0   for m real ((m,m) = 2), n != m,
  * [e_{m,j,l}, e_{n,j',l'}] = 0          whenever (m,n) = 0, including
                                          distinct letters at one
                                          isotropic root,

with a_{mn} the symmetrised form on the root lattice.  No other pairs of
generators are related.  All cohomological degrees must be even; there
are no super signs anywhere.

Dimensions of the graded pieces are computed as (free Lie algebra
dimension) - (rank of the relation ideal).  Free dimensions come from
the Lyndon necklace count aggregated over letter classes; the ideal is
closed degree by degree (I_d = R_d + sum_g [g, I_{d - deg g}]) inside
the tensor algebra, where Lie elements embed via rho([x,y]) =
rho(x) rho(y) - rho(y) rho(x), and ranks are taken per letter content by
exact fraction elimination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import NamedTuple

from .qpoly import QPoly
from .quiver import Quiver
from .roots import CartanDatum
from .series import (
    GradedSeries,
    PlethMode,
    pleth_exp,
    pleth_log,
    series_inv,
    vectors_of_total,
)

#: Most words a single (multidegree, content) block may enumerate.
BLOCK_CAP = 20_000


class GkmError(ValueError):
    pass


class Letter(NamedTuple):
    """One generator; tuple order is the alphabet order (|m|, m, j, l)."""

    total: int
    root: tuple[int, ...]
    half_degree: int
    index: int


Tensor = dict[tuple[Letter, ...], Fraction]


@dataclass
class WeightFunction:
    """Simple-root multiplicities: root -> polynomial in q^{1/2}."""

    quiver: Quiver
    table: dict[tuple[int, ...], QPoly] = field(default_factory=dict)

    def poly(self, root: tuple[int, ...]) -> QPoly:
        return self.table.get(tuple(root), QPoly.zero())

    def items(self) -> list[tuple[tuple[int, ...], QPoly]]:
        return [(r, self.table[r]) for r in sorted(self.table, key=lambda t: (sum(t), t))]


@dataclass
class GkmDimTable:
    """dim n_{d,j} for |d| <= bound, keyed d -> {half degree j: dim}."""

    quiver: Quiver
    bound: int
    dims: dict[tuple[int, ...], dict[int, int]] = field(default_factory=dict)

    def character(self, d) -> QPoly:
        block = self.dims.get(tuple(d), {})
        out = QPoly.zero()
        for j, dim in sorted(block.items()):
            out = out + QPoly.half_power(j, dim)
        return out


@dataclass
class GkmBasis:
    """Surviving Lyndon-bracket labels of one multidegree block."""

    root: tuple[int, ...]
    entries: list[tuple[tuple[Letter, ...], int]]


# -- tensor algebra helpers ------------------------------------------------------


def _tensor_bracket(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            c = ca * cb
            key = wa + wb
            out[key] = out.get(key, Fraction(0)) + c
            key = wb + wa
            out[key] = out.get(key, Fraction(0)) - c
    return {w: c for w, c in out.items() if c}


def _is_lyndon(word: tuple[Letter, ...]) -> bool:
    return all(word < word[i:] for i in range(1, len(word)))


def _standard_factor(word: tuple[Letter, ...]) -> tuple[tuple[Letter, ...], tuple[Letter, ...]]:
    """w = uv with v the longest proper Lyndon suffix; both are Lyndon."""
    for i in range(1, len(word)):
        if _is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise GkmError("not a composable word")


class _Echelon:
    """Reduced spanning rows of one letter-content block, exact fractions."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[tuple[Letter, ...], Tensor] = {}

    def reduce(self, row: Tensor) -> Tensor:
        row = dict(row)
        while row:
            lead = min(row)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row
            c = row[lead]
            for w, v in pivot.items():
                nv = row.get(w, Fraction(0)) - c * v
                if nv:
                    row[w] = nv
                else:
                    row.pop(w, None)
        return row

    def insert(self, row: Tensor) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = Fraction(1) / row[lead]
        row = {w: c * inv for w, c in row.items()}
        for other in self.pivots.values():
            c = other.get(lead)
            if c:
                for w, v in row.items():
                    nv = other.get(w, Fraction(0)) - c * v
                    if nv:
                        other[w] = nv
                    else:
                        other.pop(w, None)
        self.pivots[lead] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _multiset_permutations(items: list[Letter]):
    """Distinct orderings of a sorted multiset, lexicographically."""
    counts: dict[Letter, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    word: list[Letter] = []

    def rec():
        if len(word) == len(items):
            yield tuple(word)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                word.append(k)
                yield from rec()
                word.pop()
                counts[k] += 1

    yield from rec()


def _moebius(n: int) -> int:
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


# -- the engine ------------------------------------------------------------------


class GkmEngine:
    """Incremental dimension bookkeeping for one presented algebra.

    Generators must be registered in nondecreasing |root| order before
    querying any block of that total degree; queried blocks only see the
    generators registered so far.
    """

    def __init__(self, cartan: CartanDatum, bound: int):
        if bound < 1:
            raise GkmError("bound must be >= 1")
        self.cartan = cartan
        self.bound = bound
        self.letters: list[Letter] = []
        self._class_sizes: dict[tuple[tuple[int, ...], int], int] = {}
        self._relations: dict[tuple[int, ...], list[Tensor]] = {}
        self._ideal_cache: dict[tuple[int, ...], dict[tuple[Letter, ...], _Echelon]] = {}
        self._dims_cache: dict[tuple[int, ...], dict[int, int]] = {}
        self._rho_cache: dict[tuple[Letter, ...], Tensor] = {}
        self._max_query = 0

    # -- registration -------------------------------------------------------

    def add_generators(self, root, multiplicity: QPoly) -> list[Letter]:
        root = tuple(root)
        if len(root) != self.cartan.rank:
            raise GkmError("root has the wrong rank")
        if not any(root) or any(x < 0 for x in root):
            raise GkmError("simple roots must be nonzero and nonnegative")
        if multiplicity.is_zero():
            return []
        if sum(root) < self._max_query:
            raise GkmError("generators must arrive in nondecreasing degree order")
        diag = self.cartan.form(root, root)
        if diag > 2:
            raise GkmError(f"(m,m) = {diag} > 2 is not a valid simple root")
        for half, coeff in multiplicity.items():
            if half % 2:
                raise GkmError("odd cohomological degrees are not supported")
            if coeff.denominator != 1 or coeff <= 0:
                raise GkmError(f"multiplicity {multiplicity} is not a nonnegative integer")
        if diag == 2:
            total_mult = sum(int(c) for _, c in multiplicity.items())
            if total_mult > 1:
                raise GkmError("a real simple root must have multiplicity one")
        new_letters: list[Letter] = []
        for half, coeff in multiplicity.items():
            base = self._class_sizes.get((root, half), 0)
            for l in range(base + 1, base + int(coeff) + 1):
                new_letters.append(Letter(sum(root), root, half, l))
            self._class_sizes[(root, half)] = base + int(coeff)
        for b in new_letters:
            for a in self.letters:
                self._relate(a, b)
            self.letters.append(b)
        self.letters.sort()
        self._dims_cache.pop(root, None)
        return new_letters

    def _relate(self, a: Letter, b: Letter) -> None:
        pairing = self.cartan.form(a.root, b.root)
        if a.root != b.root and pairing > 0:
            raise GkmError(
                f"simple roots {a.root} and {b.root} pair positively ({pairing})"
            )
        if pairing == 0 and a != b:
            self._add_relation(_tensor_bracket({(a,): Fraction(1)}, {(b,): Fraction(1)}))
            return
        if pairing >= 0:
            return
        for actor, target in ((a, b), (b, a)):
            if self.cartan.form(actor.root, actor.root) != 2:
                continue
            power = 1 - pairing
            degree = tuple(power * x + y for x, y in zip(actor.root, target.root))
            if sum(degree) > self.bound:
                continue
            rel: Tensor = {(target,): Fraction(1)}
            actor_tensor: Tensor = {(actor,): Fraction(1)}
            for _ in range(power):
                rel = _tensor_bracket(actor_tensor, rel)
            self._add_relation(rel)

    def _add_relation(self, rel: Tensor) -> None:
        if not rel:
            return
        word = next(iter(rel))
        degree = tuple(sum(x) for x in zip(*(l.root for l in word)))
        if sum(degree) > self.bound:
            return
        self._relations.setdefault(degree, []).append(rel)

    # -- dimensions ----------------------------------------------------------

    def dims_at(self, d) -> dict[int, int]:
        d = tuple(d)
        if sum(d) > self.bound:
            raise GkmError(f"block {d} is beyond the bound {self.bound}")
        if not any(d) or any(x < 0 for x in d):
            raise GkmError("blocks are indexed by nonzero nonnegative vectors")
        cached = self._dims_cache.get(d)
        if cached is not None:
            return dict(cached)
        self._max_query = max(self._max_query, sum(d))
        dims: dict[int, int] = {}
        for gamma in self._class_contents(d):
            free = _weighted_lyndon_count(gamma, self._class_sizes)
            if free:
                j = sum(half * count for (_, half), count in gamma)
                dims[j] = dims.get(j, 0) + free
        for content, echelon in self._ideal_at(d).items():
            j = sum(l.half_degree for l in content)
            dims[j] = dims.get(j, 0) - echelon.rank
        for j, dim in dims.items():
            if dim < 0:
                raise GkmError(f"negative dimension at block {d}, degree {j}")
        dims = {j: dim for j, dim in dims.items() if dim}
        self._dims_cache[d] = dims
        return dict(dims)

    def character_at(self, d) -> QPoly:
        out = QPoly.zero()
        for j, dim in sorted(self.dims_at(d).items()):
            out = out + QPoly.half_power(j, dim)
        return out

    def _class_contents(self, d: tuple[int, ...]):
        """Multisets of letter classes with roots summing to d."""
        classes = sorted(self._class_sizes)
        rank = len(d)

        def rec(idx: int, remaining: tuple[int, ...], chosen):
            if not any(remaining):
                yield tuple(chosen)
                return
            if idx == len(classes):
                return
            root, _ = classes[idx]
            cap = min(
                (remaining[k] // root[k]) for k in range(rank) if root[k]
            )
            for count in range(cap + 1):
                rest = tuple(remaining[k] - count * root[k] for k in range(rank))
                if any(x < 0 for x in rest):
                    break
                if count:
                    chosen.append((classes[idx], count))
                    yield from rec(idx + 1, rest, chosen)
                    chosen.pop()
                else:
                    yield from rec(idx + 1, rest, chosen)

        yield from rec(0, d, [])

    def _ideal_at(self, d: tuple[int, ...]):
        cached = self._ideal_cache.get(d)
        if cached is not None:
            return cached
        blocks: dict[tuple[Letter, ...], _Echelon] = {}

        def insert(row: Tensor):
            if not row:
                return
            content = tuple(sorted(next(iter(row))))
            blocks.setdefault(content, _Echelon()).insert(row)

        for rel in self._relations.get(d, ()):
            insert(rel)
        for g in self.letters:
            prev = tuple(x - y for x, y in zip(d, g.root))
            if any(x < 0 for x in prev) or not any(prev):
                continue
            g_tensor: Tensor = {(g,): Fraction(1)}
            for echelon in self._ideal_at(prev).values():
                for row in echelon.pivots.values():
                    insert(_tensor_bracket(g_tensor, row))
        self._ideal_cache[d] = blocks
        return blocks

    # -- explicit bases -------------------------------------------------------

    def _rho(self, word: tuple[Letter, ...]) -> Tensor:
        cached = self._rho_cache.get(word)
        if cached is not None:
            return cached
        if len(word) == 1:
            result: Tensor = {word: Fraction(1)}
        else:
            u, v = _standard_factor(word)
            result = _tensor_bracket(self._rho(u), self._rho(v))
        self._rho_cache[word] = result
        return result

    def basis_at(self, d) -> GkmBasis:
        """Lyndon-bracket labels spanning the block, modulo the ideal."""
        d = tuple(d)
        ideal = self._ideal_at(d)
        entries: list[tuple[tuple[Letter, ...], int]] = []
        for gamma in self._class_contents(d):
            pools: list[tuple[list[Letter], int]] = []
            count = 1
            for (root, half), number in gamma:
                size = self._class_sizes[(root, half)]
                pool = [
                    Letter(sum(root), root, half, l) for l in range(1, size + 1)
                ]
                count *= comb(size + number - 1, number)
                pools.append((pool, number))
            if count > BLOCK_CAP:
                raise GkmError(f"block {d} content exceeds the cap of {BLOCK_CAP}")
            for picks in itertools.product(
                *(itertools.combinations_with_replacement(pool, k) for pool, k in pools)
            ):
                content = sorted(x for pick in picks for x in pick)
                n_words = factorial(len(content))
                if n_words > BLOCK_CAP:
                    raise GkmError(f"block {d} content exceeds the cap of {BLOCK_CAP}")
                echelon = _Echelon()
                base = ideal.get(tuple(content))
                if base is not None:
                    for row in base.pivots.values():
                        echelon.insert(dict(row))
                for word in _multiset_permutations(content):
                    if not _is_lyndon(word):
                        continue
                    if echelon.insert(self._rho(word)):
                        entries.append((word, sum(l.half_degree for l in word)))
        entries.sort()
        return GkmBasis(d, entries)


def _weighted_lyndon_count(
    gamma: tuple[tuple[tuple[tuple[int, ...], int], int], ...],
    class_sizes: dict[tuple[tuple[int, ...], int], int],
) -> int:
    """Lyndon words with class content gamma, letters weighted by class size.

    (1/n) sum_{k | gcd} mu(k) (n/k)! / prod (c/k)! * prod size^{c/k}.
    """
    counts = [count for _, count in gamma]
    n = sum(counts)
    g = 0
    for c in counts:
        g = gcd(g, c)
    total = 0
    for k in range(1, g + 1):
        if g % k:
            continue
        mu = _moebius(k)
        if mu == 0:
            continue
        words = factorial(n // k)
        for (cls, count) in gamma:
            words //= factorial(count // k)
            words *= class_sizes[cls] ** (count // k)
        total += mu * words
    if total % n:
        raise GkmError("necklace count is not an integer")
    return total // n


# -- module-level characters -------------------------------------------------------


def gkm_dims(
    cartan: CartanDatum, weights: WeightFunction, bound: int, workers: int = 1
) -> GkmDimTable:
    """Graded dimensions of n^+ presented by the weight function.

    Blocks at one total degree are independent once all lower ideal
    spans exist, so they are dealt onto `workers` chunks whose results
    are merged in chunk order; the table cannot depend on the count.
    """
    if workers < 1:
        raise GkmError("workers must be >= 1")
    engine = GkmEngine(cartan, bound)
    for root, poly in weights.items():
        if sum(root) > bound:
            continue
        engine.add_generators(root, poly)
    rank = len(weights.quiver.vertices)
    dims: dict[tuple[int, ...], dict[int, int]] = {}
    for total in range(1, bound + 1):
        block_list = list(vectors_of_total(rank, total))
        chunks = [block_list[i::workers] for i in range(workers)]
        merged: dict[tuple[int, ...], dict[int, int]] = {}
        for chunk in chunks:
            for d in chunk:
                block = engine.dims_at(d)
                if block:
                    merged[d] = block
        for d in sorted(merged, key=lambda t: (sum(t), t)):
            dims[d] = merged[d]
    return GkmDimTable(weights.quiver, bound, dims)


def gkm_character(table: GkmDimTable) -> GradedSeries:
    """sum over blocks of dim n_{d,j} q^{j/2} z^d."""
    terms = {d: table.character(d) for d in table.dims}
    return GradedSeries(table.quiver, table.bound, terms)


def uea_character(chL: GradedSeries) -> GradedSeries:
    """Character of the enveloping algebra: Exp_{q,z}(chL)."""
    return pleth_exp(chL, PlethMode.QZ)


def free_lie_character(chV: GradedSeries, bound: int) -> GradedSeries:
    """Character of the free Lie algebra on a graded space V.

    The tensor algebra has character 1/(1 - chV), and the free Lie algebra
    is its plethystic logarithm.
    """
    if bound > chV.bound:
        raise GkmError("bound exceeds the generator series bound")
    chV = chV.truncate(bound) if bound < chV.bound else chV
    if not chV.constant_term().is_zero():
        raise GkmError("generator series must have zero constant term")
    tensor = series_inv(GradedSeries.one(chV.quiver, bound) - chV)
    return pleth_log(tensor, PlethMode.QZ)


# -- lowest weight extraction -------------------------------------------------------


class AmbiguousDecompositionError(GkmError):
    """Raised when block characters cannot be recovered one equation at a time."""


def lowest_weight_extract(
    framed: GradedSeries,
    multiplicities: dict[tuple[int, ...], QPoly],
    bound: int,
) -> dict[tuple[int, ...], GradedSeries]:
    """Solve F = sum_d V_d z^d chL_d for the block characters chL_d.

    Each chL_d is pinned to constant term 1.  Equations are scanned in
    (|e|, lex) order; the unknown chL_d(e - d) appears in the single
    equation e = d + (e - d), so every equation must contain at most one
    unknown, and equations with none are consistency checks.  Systems
    with two or more comparable blocks are genuinely underdetermined and
    raise AmbiguousDecompositionError.
    """
    quiver = framed.quiver
    rank = len(quiver.vertices)
    blocks = sorted(
        (d for d, v in multiplicities.items() if not v.is_zero()),
        key=lambda t: (sum(t), t),
    )
    chl: dict[tuple[int, ...], dict[tuple[int, ...], QPoly]] = {
        d: {tuple([0] * rank): QPoly.one()} for d in blocks
    }
    for total in range(0, bound + 1):
        for e in vectors_of_total(rank, total):
            knowns = QPoly.zero()
            unknowns: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
            for d in blocks:
                c = tuple(x - y for x, y in zip(e, d))
                if any(x < 0 for x in c):
                    continue
                if c in chl[d]:
                    knowns = knowns + multiplicities[d] * chl[d][c]
                else:
                    unknowns.append((d, c))
            lhs = framed.coeff(e)
            if len(unknowns) > 1:
                raise AmbiguousDecompositionError(
                    f"equation at {e} involves {len(unknowns)} unknown block terms"
                )
            if not unknowns:
                if lhs != knowns:
                    raise GkmError(f"inconsistent decomposition at {e}: {lhs} != {knowns}")
                continue
            d, c = unknowns[0]
            chl[d][c] = (lhs - knowns).divexact(multiplicities[d])
    return {
        d: GradedSeries(quiver, bound - sum(d), terms) for d, terms in chl.items()
    }
