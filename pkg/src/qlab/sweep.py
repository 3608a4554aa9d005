"""Exhaustive enumeration of small structures for the property suite.

Everything here is deterministic: fixed element names, fixed iteration
orders, no randomness.  Sizes are capped by the caller; the defaults keep
the whole suite comfortably under desk-scale runtimes.
"""

from __future__ import annotations

import itertools

from .errors import CategoryError, OrderError, QlabError
from .order import FinitePreorder, FiniteSupLattice, MonotoneMap, validate_order
from .qcat import QCategory, QFunctor, validate_category, validate_functor
from .quantaloid import Quantaloid, chain_lattice, powerset_lattice


def element_names(n: int) -> list[str]:
    return [f"e{i}" for i in range(1, n + 1)]


def all_preorders(n: int) -> list[FinitePreorder]:
    """All reflexive transitive relations on n labeled elements."""
    elems = element_names(n)
    diagonal = [(a, a) for a in elems]
    off = [(a, b) for a in elems for b in elems if a != b]
    out = []
    for mask in itertools.product((False, True), repeat=len(off)):
        pairs = frozenset(diagonal) | {p for p, keep in zip(off, mask) if keep}
        transitive = all(
            (a, c) in pairs
            for (a, b) in pairs for (b2, c) in pairs if b == b2)
        if transitive:
            out.append(FinitePreorder(tuple(elems), frozenset(pairs)))
    return out


def all_lattices(max_size: int) -> list[FiniteSupLattice]:
    """All labeled sup-lattices with up to ``max_size`` elements."""
    out = []
    for n in range(1, max_size + 1):
        for p in all_preorders(n):
            try:
                out.append(validate_order(p.elements, p.pairs,
                                          require_suplattice=True))
            except OrderError:
                pass
    return out


def all_monotone_maps(source, target) -> list[MonotoneMap]:
    src = source.order if isinstance(source, FiniteSupLattice) else source
    tgt = target.order if isinstance(target, FiniteSupLattice) else target
    out = []
    for images in itertools.product(tgt.elements, repeat=len(src.elements)):
        table = dict(zip(src.elements, images))
        if all(tgt.le(table[a], table[b]) for (a, b) in src.pairs):
            out.append(MonotoneMap(source, target, table))
    return out


def preorder_as_2category(q2: Quantaloid, p: FinitePreorder) -> QCategory:
    """An order as a category over the two-element base."""
    hom = {(y, x): "1" if p.le(y, x) else "0"
           for y in p.elements for x in p.elements}
    return validate_category(q2, p.elements,
                             {a: "*" for a in p.elements}, hom)


def all_categories(q: Quantaloid, max_objects: int = 2) -> list[QCategory]:
    """Every category over ``q`` with at most ``max_objects`` objects,
    including the empty one, in a fixed enumeration order."""
    out = []
    for n in range(max_objects + 1):
        objs = [f"c{i}" for i in range(1, n + 1)]
        keys = [(y, x) for y in objs for x in objs]
        for types in itertools.product(q.objects, repeat=n):
            type_of = dict(zip(objs, types))
            spaces = [sorted(q.hom(type_of[x], type_of[y]).elements)
                      for (y, x) in keys]
            for combo in itertools.product(*spaces):
                try:
                    out.append(validate_category(q, objs, type_of,
                                                 dict(zip(keys, combo))))
                except (CategoryError, QlabError):
                    pass
    return out


def all_functors(a: QCategory, b: QCategory) -> list[QFunctor]:
    """Every functor between two categories over a shared base."""
    if not a.objects:
        return [QFunctor(a, b, {})]
    spaces = [sorted(x for x in b.objects if b.t(x) == a.t(obj))
              for obj in a.objects]
    out = []
    for images in itertools.product(*spaces):
        try:
            out.append(validate_functor(a, b, dict(zip(a.objects, images))))
        except QlabError:
            pass
    return out


def sweep_frames(max_size: int = 5) -> list[FiniteSupLattice]:
    """Chains up to ``max_size`` plus the 2x2 Boolean algebra."""
    frames = [chain_lattice([f"t{i}" for i in range(1, n + 1)])
              for n in range(1, max_size + 1)]
    frames.append(powerset_lattice(["p", "q"]))
    return frames
