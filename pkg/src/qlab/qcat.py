"""Categories, functors and distributors enriched in a finite quantaloid.

Objects carry a type (an object of the base); hom(y, x) lives in the base
lattice hom(tx, ty), so the first argument's type is the codomain.  The
underlying order on a fiber is x' ≤ x iff the identity sits below
hom(x', x).  Isomorphic-but-distinct objects are allowed throughout;
nothing is quotiented silently.

Presheaves of type X on a category C are represented as distributors from
the one-object category on X into C, enumerated exhaustively under a cap
(default 10^6 tables, override via the QLAB_CAP environment variable or an
explicit argument).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    ActionAxiomFails,
    CompositionFails,
    EnumerationCapExceeded,
    FunctorInequalityFails,
    IdentityBelowUnit,
    TypeMismatch,
    TypeNotPreserved,
    ValidationFailed,
)
from .order import FinitePreorder, validate_order
from .quantaloid import QArrow, Quantaloid, opposite

DEFAULT_ENUMERATION_CAP = 10 ** 6


def enumeration_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("QLAB_CAP", DEFAULT_ENUMERATION_CAP))


@dataclass(frozen=True)
class QCategory:
    base: Quantaloid
    objects: tuple[str, ...]
    type_of: Mapping[str, str] = field(repr=False)
    hom: Mapping[tuple[str, str], str] = field(repr=False)

    def t(self, x: str) -> str:
        return self.type_of[x]

    def hom_elt(self, y: str, x: str) -> str:
        return self.hom[(y, x)]

    def hom_lattice(self, y: str, x: str):
        return self.base.hom(self.t(x), self.t(y))

    def leq(self, x2: str, x: str) -> bool:
        """Underlying order: same type and identity below hom(x2, x)."""
        if self.t(x2) != self.t(x):
            return False
        lat = self.base.hom(self.t(x), self.t(x))
        return lat.le(self.base.identity(self.t(x)), self.hom_elt(x2, x))

    def isomorphic_objects(self, a: str, b: str) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def fiber_objects(self, type_id: str) -> tuple[str, ...]:
        return tuple(x for x in self.objects if self.t(x) == type_id)


@dataclass(frozen=True)
class QFunctor:
    source: QCategory
    target: QCategory
    mapping: Mapping[str, str] = field(repr=False)

    def __call__(self, a: str) -> str:
        return self.mapping[a]


@dataclass(frozen=True)
class Distributor:
    """A bimodule table Φ(b, a) ∈ hom(ta, tb) from source A to target B."""

    source: QCategory
    target: QCategory
    table: Mapping[tuple[str, str], str] = field(repr=False)

    def at(self, b: str, a: str) -> str:
        return self.table[(b, a)]


@dataclass(frozen=True)
class Fiber:
    type_id: str
    preorder: FinitePreorder

    @property
    def elements(self) -> tuple[str, ...]:
        return self.preorder.elements


def validate_category(base: Quantaloid, objects: Iterable[str],
                      type_of: Mapping[str, str],
                      hom: Mapping[tuple[str, str], str]) -> QCategory:
    objects = tuple(objects)
    for x in objects:
        if type_of.get(x) not in base.objects:
            raise ValidationFailed(f"object {x} has no valid type")
    for y in objects:
        for x in objects:
            v = hom.get((y, x))
            if v is None or v not in base.hom(type_of[x], type_of[y]).elements:
                raise ValidationFailed(f"hom({y},{x}) missing or out of range")
    c = QCategory(base, objects, dict(type_of), dict(hom))
    for x in objects:
        lat = base.hom(c.t(x), c.t(x))
        if not lat.le(base.identity(c.t(x)), c.hom_elt(x, x)):
            raise IdentityBelowUnit(x)
    for z in objects:
        for y in objects:
            for x in objects:
                lat = c.hom_lattice(z, x)
                comp = base.compose_elt(c.t(x), c.t(y), c.t(z),
                                        c.hom_elt(z, y), c.hom_elt(y, x))
                if not lat.le(comp, c.hom_elt(z, x)):
                    raise CompositionFails(z, y, x)
    return c


def validate_functor(source: QCategory, target: QCategory,
                     mapping: Mapping[str, str]) -> QFunctor:
    if source.base is not target.base and source.base != target.base:
        raise TypeMismatch("functor endpoints live over different bases")
    for a in source.objects:
        fa = mapping.get(a)
        if fa not in target.objects:
            raise ValidationFailed(f"no image for object {a}")
        if target.t(fa) != source.t(a):
            raise TypeNotPreserved(a)
    for a2 in source.objects:
        for a in source.objects:
            lat = source.hom_lattice(a2, a)
            if not lat.le(source.hom_elt(a2, a),
                          target.hom_elt(mapping[a2], mapping[a])):
                raise FunctorInequalityFails(a2, a)
    return QFunctor(source, target, dict(mapping))


def validate_distributor(source: QCategory, target: QCategory,
                         table: Mapping[tuple[str, str], str]) -> Distributor:
    if source.base != target.base:
        raise TypeMismatch("distributor endpoints live over different bases")
    base = source.base
    for b in target.objects:
        for a in source.objects:
            v = table.get((b, a))
            if v is None or v not in base.hom(source.t(a), target.t(b)).elements:
                raise ValidationFailed(f"entry ({b},{a}) missing or out of range")
    d = Distributor(source, target, dict(table))
    for b2 in target.objects:
        for b in target.objects:
            for a in source.objects:
                lat = base.hom(source.t(a), target.t(b2))
                comp = base.compose_elt(source.t(a), target.t(b), target.t(b2),
                                        target.hom_elt(b2, b), d.at(b, a))
                if not lat.le(comp, d.at(b2, a)):
                    raise ActionAxiomFails("left", (b2, b, a))
    for b in target.objects:
        for a in source.objects:
            for a2 in source.objects:
                lat = base.hom(source.t(a2), target.t(b))
                comp = base.compose_elt(source.t(a2), source.t(a), target.t(b),
                                        d.at(b, a), source.hom_elt(a, a2))
                if not lat.le(comp, d.at(b, a2)):
                    raise ActionAxiomFails("right", (b, a, a2))
    return d


def fibers(c: QCategory) -> tuple[dict[str, Fiber], bool]:
    """Partition objects by type; every base object gets a (possibly empty)
    fiber.  The category is skeletal iff every fiber is antisymmetric."""
    out = {}
    for type_id in c.base.objects:
        elems = c.fiber_objects(type_id)
        pairs = frozenset((a, b) for a in elems for b in elems if c.leq(a, b))
        out[type_id] = Fiber(type_id, FinitePreorder(elems, pairs))
    skeletal = all(f.preorder.is_antisymmetric for f in out.values())
    return out, skeletal


def identity_functor(c: QCategory) -> QFunctor:
    return QFunctor(c, c, {x: x for x in c.objects})


def identity_distributor(c: QCategory) -> Distributor:
    return Distributor(c, c, {(y, x): c.hom_elt(y, x)
                              for y in c.objects for x in c.objects})


def dist_compose(psi: Distributor, phi: Distributor) -> Distributor:
    """(ψ∘φ)(c, a) = ⋁_b ψ(c, b)∘φ(b, a)."""
    if phi.target != psi.source:
        raise TypeMismatch("distributors are not composable")
    base = phi.source.base
    a_cat, b_cat, c_cat = phi.source, phi.target, psi.target
    table = {}
    for c in c_cat.objects:
        for a in a_cat.objects:
            lat = base.hom(a_cat.t(a), c_cat.t(c))
            table[(c, a)] = lat.join(
                base.compose_elt(a_cat.t(a), b_cat.t(b), c_cat.t(c),
                                 psi.at(c, b), phi.at(b, a))
                for b in b_cat.objects)
    return Distributor(a_cat, c_cat, table)


def dist_residual(psi: Distributor, theta: Distributor) -> Distributor:
    """[ψ, θ](b, a) = ⋀_c [ψ(c, b), θ(c, a)], residuated in the base.

    For ψ: B⇸C and θ: A⇸C this is the largest ξ: A⇸B with ψ∘ξ ≤ θ.
    """
    if psi.target != theta.target:
        raise TypeMismatch("residual needs a common target")
    base = psi.source.base
    a_cat, b_cat, c_cat = theta.source, psi.source, psi.target
    table = {}
    for b in b_cat.objects:
        for a in a_cat.objects:
            lat = base.hom(a_cat.t(a), b_cat.t(b))
            table[(b, a)] = lat.meet(
                base.lifting_elt(b_cat.t(b), c_cat.t(c), a_cat.t(a),
                                 psi.at(c, b), theta.at(c, a))
                for c in c_cat.objects)
    return Distributor(a_cat, b_cat, table)


def dist_leq(d1: Distributor, d2: Distributor) -> bool:
    base = d1.source.base
    return all(
        base.hom(d1.source.t(a), d1.target.t(b)).le(d1.at(b, a), d2.at(b, a))
        for b in d1.target.objects for a in d1.source.objects)


# --- constructors -----------------------------------------------------------

def one_object_category(base: Quantaloid, type_id: str,
                        object_id: str = "o") -> QCategory:
    """The one-object category on ``type_id`` with identity hom."""
    return validate_category(base, [object_id], {object_id: type_id},
                             {(object_id, object_id): base.identity(type_id)})


def free_fiber_category(base: Quantaloid, order: FinitePreorder,
                        type_id: str) -> QCategory:
    """All objects of one type; hom is the identity on related pairs and
    the bottom arrow otherwise."""
    one = base.identity(type_id)
    zero = base.zero(type_id, type_id)
    hom = {(a2, a): one if order.le(a2, a) else zero
           for a2 in order.elements for a in order.elements}
    return validate_category(base, order.elements,
                             {a: type_id for a in order.elements}, hom)


def presheaf_category(base: Quantaloid, y: str) -> QCategory:
    """Objects are the arrows f: X→Y (any X), typed by their domain; homs
    are liftings.  The fiber over X is hom(X, Y) with its lattice order."""
    objects, type_of = [], {}
    value = {}
    for x in base.objects:
        for v in base.hom(x, y).elements:
            obj = f"{x}.{v}"
            objects.append(obj)
            type_of[obj] = x
            value[obj] = v
    hom = {}
    for f2 in objects:
        for f in objects:
            hom[(f2, f)] = base.lifting_elt(type_of[f2], y, type_of[f],
                                            value[f2], value[f])
    return validate_category(base, objects, type_of, hom)


def copresheaf_category(base: Quantaloid, x: str) -> QCategory:
    """Objects are the arrows f: X→Y (any Y), typed by their codomain; homs
    are extensions {f, f'}."""
    objects, type_of = [], {}
    value = {}
    for y in base.objects:
        for v in base.hom(x, y).elements:
            obj = f"{y}.{v}"
            objects.append(obj)
            type_of[obj] = y
            value[obj] = v
    hom = {}
    for f2 in objects:
        for f in objects:
            hom[(f2, f)] = base.extension_elt(x, type_of[f], type_of[f2],
                                              value[f], value[f2])
    return validate_category(base, objects, type_of, hom)


def opposite_category(c: QCategory) -> QCategory:
    return QCategory(opposite(c.base), c.objects, dict(c.type_of),
                     {(y, x): c.hom_elt(x, y)
                      for y in c.objects for x in c.objects})


def arrow_object_value(c: QCategory, obj: str) -> str:
    """Recover the base-arrow value behind a presheaf-category object id."""
    return obj.split(".", 1)[1]


# --- presheaf enumeration ---------------------------------------------------

def enumerate_presheaves(c: QCategory, type_id: str,
                         cap: int | None = None) -> list[Distributor]:
    """All distributors from the one-object category on ``type_id`` into c.

    Tables assign each object x an element of hom(type_id, tx) subject to
    hom(x', x)∘φ(x) ≤ φ(x'); enumeration order is lexicographic in object
    id, then element id.  Raises EnumerationCapExceeded beyond the cap.
    """
    base = c.base
    star = one_object_category(base, type_id)
    objs = sorted(c.objects)
    columns = [sorted(base.hom(type_id, c.t(x)).elements) for x in objs]
    size = 1
    for col in columns:
        size *= len(col)
    if size > enumeration_cap(cap):
        raise EnumerationCapExceeded(size)

    out = []
    for combo in itertools.product(*columns):
        phi = dict(zip(objs, combo))
        ok = True
        for x2 in objs:
            for x in objs:
                lat = base.hom(type_id, c.t(x2))
                comp = base.compose_elt(type_id, c.t(x), c.t(x2),
                                        c.hom_elt(x2, x), phi[x])
                if not lat.le(comp, phi[x2]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Distributor(star, c,
                                   {(x, "o"): phi[x] for x in objs}))
    return out


# --- isomorphism search ------------------------------------------------------

def category_isomorphism(c1: QCategory, c2: QCategory) -> dict[str, str] | None:
    """A type-preserving object bijection with exact hom equality, if any.

    Fiberwise backtracking; intended for the small instances this library
    works with.
    """
    if c1.base != c2.base or len(c1.objects) != len(c2.objects):
        return None
    for t in c1.base.objects:
        if len(c1.fiber_objects(t)) != len(c2.fiber_objects(t)):
            return None
    objs = sorted(c1.objects)

    def extend(partial: dict[str, str], used: set[str], i: int):
        if i == len(objs):
            return dict(partial)
        a = objs[i]
        for b in c2.objects:
            if b in used or c2.t(b) != c1.t(a):
                continue
            ok = True
            for a2, b2 in partial.items():
                if (c1.hom_elt(a, a2) != c2.hom_elt(b, b2)
                        or c1.hom_elt(a2, a) != c2.hom_elt(b2, b)):
                    ok = False
                    break
            if ok and c1.hom_elt(a, a) == c2.hom_elt(b, b):
                partial[a] = b
                used.add(b)
                found = extend(partial, used, i + 1)
                if found is not None:
                    return found
                del partial[a]
                used.discard(b)
        return None

    return extend({}, set(), 0)
