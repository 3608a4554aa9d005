"""Finite preorders, sup-lattices, monotone maps and order adjunctions.

This is the ambient world every other module computes in: hom-objects of
the enrichment base are finite sup-lattices, fibers of enriched categories
are finite preorders, and adjoint synthesis bottoms out in the classical
correspondence between join-preserving maps and right adjoints, decided
here by exhaustive scan.

Element ids are plain strings; all structures are immutable after
validation and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    BadAdjunction,
    BrokenTransitivity,
    MissingReflexivity,
    NoJoin,
    NotAntisymmetric,
    NotMonotone,
    NotSupPreserving,
)


@dataclass(frozen=True)
class FinitePreorder:
    """A reflexive, transitive relation on a finite set of element ids.

    ``pairs`` holds the full relation (including the diagonal), not a
    generating set; closure is the caller's job (``validate_order`` checks
    it literally, the file parser closes before validating).
    """

    elements: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs

    def equivalent(self, a: str, b: str) -> bool:
        return self.le(a, b) and self.le(b, a)

    @property
    def is_antisymmetric(self) -> bool:
        return all(a == b for (a, b) in self.pairs if (b, a) in self.pairs)

    # "skeletal" is the categorical name for antisymmetry; kept as an alias
    # because callers track it as a property of fibers.
    @property
    def skeletal(self) -> bool:
        return self.is_antisymmetric

    def upper_bounds(self, subset: Iterable[str]) -> list[str]:
        subset = list(subset)
        return [u for u in self.elements if all(self.le(s, u) for s in subset)]

    def least_upper_bounds(self, subset: Iterable[str]) -> list[str]:
        """All minimal upper bounds comparable below every upper bound.

        In a preorder the least upper bound is an equivalence class; the
        returned list is that class (possibly empty).
        """
        ubs = self.upper_bounds(subset)
        return [u for u in ubs if all(self.le(u, v) for v in ubs)]

    def greatest_lower_bounds(self, subset: Iterable[str]) -> list[str]:
        subset = list(subset)
        lbs = [l for l in self.elements if all(self.le(l, s) for s in subset)]
        return [l for l in lbs if all(self.le(m, l) for m in lbs)]

    def bottoms(self) -> list[str]:
        return [b for b in self.elements if all(self.le(b, x) for x in self.elements)]

    def tops(self) -> list[str]:
        return [t for t in self.elements if all(self.le(x, t) for x in self.elements)]

    def has_all_suprema(self) -> bool:
        return all(self.least_upper_bounds(s)
                   for s in subsets(self.elements))


@dataclass(frozen=True)
class FiniteSupLattice:
    """An antisymmetric finite order with all joins.

    Only the empty join (``bottom``) and pairwise joins are stored;
    arbitrary joins fold over pairs, meets are derived as the join of the
    common lower bounds.  Build through ``validate_order`` so the tables
    are known-good.
    """

    order: FinitePreorder
    bottom: str
    pair_joins: Mapping[tuple[str, str], str] = field(repr=False)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.order.elements

    def le(self, a: str, b: str) -> bool:
        return self.order.le(a, b)

    def join2(self, a: str, b: str) -> str:
        return self.pair_joins[(a, b)]

    def join(self, subset: Iterable[str]) -> str:
        out = self.bottom
        for s in subset:
            out = self.join2(out, s)
        return out

    def meet(self, subset: Iterable[str]) -> str:
        subset = list(subset)
        return self.join(l for l in self.elements
                         if all(self.le(l, s) for s in subset))

    @property
    def top(self) -> str:
        return self.join(self.elements)


def subsets(elements: Iterable[str]) -> Iterable[tuple[str, ...]]:
    """All subsets of ``elements``, smallest first, in a fixed order."""
    elements = list(elements)
    for r in range(len(elements) + 1):
        yield from itertools.combinations(elements, r)


def transitive_closure(elements: Iterable[str],
                       pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure of a raw relation."""
    elements = list(elements)
    rel = {(a, a) for a in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for c in elements:
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return frozenset(rel)


def validate_order(elements: Iterable[str],
                   pairs: Iterable[tuple[str, str]],
                   require_suplattice: bool = False):
    """Check order axioms literally and return the validated structure.

    The relation is taken as given: a missing reflexive or transitive pair
    is an error, not something to repair.  With ``require_suplattice`` the
    order must additionally be antisymmetric with a bottom and all pairwise
    joins, and a ``FiniteSupLattice`` is returned.

    Raises ``MissingReflexivity``, ``BrokenTransitivity``,
    ``NotAntisymmetric`` or ``NoJoin``, each naming a witness.
    """
    elements = tuple(dict.fromkeys(elements))
    pairs = frozenset(pairs)
    for a in elements:
        if (a, a) not in pairs:
            raise MissingReflexivity(a)
    for (a, b) in sorted(pairs):
        for c in elements:
            if (b, c) in pairs and (a, c) not in pairs:
                raise BrokenTransitivity(a, b, c)
    order = FinitePreorder(elements, pairs)
    if not require_suplattice:
        return order

    for (a, b) in sorted(pairs):
        if a != b and (b, a) in pairs:
            raise NotAntisymmetric(a, b)
    if not elements:
        raise NoJoin(None, None)
    pair_joins = {}
    for a in elements:
        for b in elements:
            lubs = order.least_upper_bounds((a, b))
            if not lubs:
                raise NoJoin(a, b)
            pair_joins[(a, b)] = lubs[0]
    bottoms = order.bottoms()
    if not bottoms:
        raise NoJoin(None, None)
    return FiniteSupLattice(order, bottoms[0], pair_joins)


def bounds(lattice: FiniteSupLattice, subset: Iterable[str]) -> tuple[str, str]:
    """Least upper and greatest lower bound of a subset; (bottom, top) for ∅."""
    subset = list(subset)
    return lattice.join(subset), lattice.meet(subset)


PreorderLike = FinitePreorder | FiniteSupLattice


def _as_preorder(p: PreorderLike) -> FinitePreorder:
    return p.order if isinstance(p, FiniteSupLattice) else p


@dataclass(frozen=True)
class MonotoneMap:
    """A table-backed order-preserving map between finite (pre)orders."""

    source: PreorderLike
    target: PreorderLike
    table: Mapping[str, str] = field(repr=False)

    def __call__(self, a: str) -> str:
        return self.table[a]

    def then(self, other: MonotoneMap) -> MonotoneMap:
        return MonotoneMap(self.source, other.target,
                           {a: other.table[v] for a, v in self.table.items()})

    @staticmethod
    def identity(p: PreorderLike) -> MonotoneMap:
        return MonotoneMap(p, p, {a: a for a in p.elements})


def monotone_map(source: PreorderLike, target: PreorderLike,
                 table: Mapping[str, str]) -> MonotoneMap:
    """Validating constructor; raises ``NotMonotone`` with a witness pair."""
    src, tgt = _as_preorder(source), _as_preorder(target)
    for a in src.elements:
        if table[a] not in tgt.elements:
            raise NotMonotone(a, a)
    for (a, b) in src.pairs:
        if not tgt.le(table[a], table[b]):
            raise NotMonotone(a, b)
    return MonotoneMap(source, target, dict(table))


@dataclass(frozen=True)
class OrderAdjunction:
    """A pair left ⊣ right of monotone maps in opposite directions."""

    left: MonotoneMap
    right: MonotoneMap


def check_order_adjunction(left: MonotoneMap, right: MonotoneMap) -> bool:
    """left ⊣ right: a ≤ right(left(a)) and left(right(b)) ≤ b, pointwise."""
    src = _as_preorder(left.source)
    tgt = _as_preorder(left.target)
    return (all(src.le(a, right(left(a))) for a in src.elements)
            and all(tgt.le(left(right(b)), b) for b in tgt.elements))


def is_sup_morphism(m: MonotoneMap) -> tuple[bool, tuple[str, ...] | None]:
    """Does ``m`` preserve all joins?  Both ends must be sup-lattices.

    The empty and binary joins suffice in a finite lattice.  On failure the
    violating subset is returned as the witness.
    """
    src, tgt = m.source, m.target
    assert isinstance(src, FiniteSupLattice) and isinstance(tgt, FiniteSupLattice)
    if m(src.bottom) != tgt.bottom:
        return False, ()
    for a in src.elements:
        for b in src.elements:
            if m(src.join2(a, b)) != tgt.join2(m(a), m(b)):
                return False, (a, b)
    return True, None


def right_adjoint(m: MonotoneMap) -> OrderAdjunction:
    """Synthesize the right adjoint of a map out of a finite sup-lattice.

    The candidate is right(b) = ⋁{a : m(a) ≤ b}; it is the right adjoint
    exactly when ``m`` preserves joins, which is verified by checking the
    adjunction law on all pairs before returning.  The target may be any
    preorder.

    Raises ``NotSupPreserving`` with the violating subset otherwise.
    """
    src = m.source
    assert isinstance(src, FiniteSupLattice)
    tgt = _as_preorder(m.target)
    table = {b: src.join(a for a in src.elements if tgt.le(m(a), b))
             for b in tgt.elements}
    ok = all(tgt.le(m(a), b) == src.le(a, table[b])
             for a in src.elements for b in tgt.elements)
    if not ok:
        raise NotSupPreserving(_sup_failure_witness(m))
    right = MonotoneMap(m.target, m.source, table)
    adj = OrderAdjunction(m, right)
    assert check_order_adjunction(adj.left, adj.right)
    return adj


def _sup_failure_witness(m: MonotoneMap) -> tuple[str, ...]:
    """Smallest subset whose join is not sent to a least upper bound."""
    src = m.source
    tgt = _as_preorder(m.target)
    for subset in subsets(src.elements):
        image_lubs = tgt.least_upper_bounds([m(a) for a in subset])
        if not any(tgt.equivalent(m(src.join(subset)), u) for u in image_lubs):
            return subset
    raise AssertionError("no failing subset found for a non-adjoint map")


def has_right_adjoint(m: MonotoneMap) -> bool:
    """Left-adjointness of a monotone map between arbitrary finite preorders.

    Scans for a greatest preimage below each target element and verifies
    the adjunction law; no lattice structure is assumed.
    """
    src = _as_preorder(m.source)
    tgt = _as_preorder(m.target)
    table = {}
    for b in tgt.elements:
        below = [a for a in src.elements if tgt.le(m(a), b)]
        greatest = [g for g in below if all(src.le(a, g) for a in below)]
        if not greatest:
            return False
        table[b] = greatest[0]
    return all(tgt.le(m(a), b) == src.le(a, table[b])
               for a in src.elements for b in tgt.elements)


def preserves_suprema(m: MonotoneMap) -> bool:
    """Every least upper bound that exists in the source maps to one."""
    src = _as_preorder(m.source)
    tgt = _as_preorder(m.target)
    for subset in subsets(src.elements):
        for u in src.least_upper_bounds(subset):
            image_lubs = tgt.least_upper_bounds([m(a) for a in subset])
            if not any(tgt.equivalent(m(u), v) for v in image_lubs):
                return False
    return True


def order_isomorphisms(p: PreorderLike, q: PreorderLike) -> Iterable[dict[str, str]]:
    """All bijections matching the two relations exactly."""
    p, q = _as_preorder(p), _as_preorder(q)
    if len(p.elements) != len(q.elements):
        return
    for perm in itertools.permutations(q.elements):
        table = dict(zip(p.elements, perm))
        if all((table[a], table[b]) in q.pairs
               for (a, b) in p.pairs) and \
           all((a, b) in p.pairs
               for a in p.elements for b in p.elements
               if (table[a], table[b]) in q.pairs):
            yield table
