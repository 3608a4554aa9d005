"""Order-valued pseudofunctors, sup-valued modules, and the bridge to
enriched categories.

A pseudofunctor assigns each base object a preorder and each hom element
f ∈ hom(X, Y) a monotone map F(Y) → F(X), functorially up to pointwise
mutual ≤ (the only isomorphisms a preorder has).  It is closed when every
partial application f ↦ Ff(y) preserves joins of the hom-lattice up to
target equivalence.

Closed pseudofunctors and tensored categories determine each other:
tensoring with arrows gives the arrow actions, and conversely the hom is
recovered as hom(y, x) = ⋁{f : Ff(y) ≤ x}.  Modules are the strict,
sup-lattice-valued special case and correspond to skeletal cocomplete
categories.  The one-object face of a module is a quantale action, with
the multiplication-reversing representation law checked elementwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .completion import completeness_report, tensor
from .errors import (
    ActionLawFails,
    ModuleLawFails,
    NotClosed,
    NotCocomplete,
    NotOneObject,
    NotPseudofunctorial,
    NotSkeletal,
    NotTensored,
    ValidationFailed,
)
from .order import (
    FinitePreorder,
    FiniteSupLattice,
    MonotoneMap,
    has_right_adjoint,
    is_sup_morphism,
    monotone_map,
    order_isomorphisms,
    preserves_suprema,
    validate_order,
)
from .qcat import QCategory, QFunctor, fibers, validate_category
from .quantaloid import QArrow, Quantaloid


@dataclass(frozen=True)
class Pseudofunctor2:
    """Contravariant order-valued action on a quantaloid.

    ``on_arrows`` is keyed by (X, Y, f) with f ∈ hom(X, Y) and holds the
    map F(f): F(Y) → F(X).
    """

    base: Quantaloid
    on_objects: Mapping[str, FinitePreorder] = field(repr=False)
    on_arrows: Mapping[tuple[str, str, str], MonotoneMap] = field(repr=False)

    def fiber(self, x: str) -> FinitePreorder:
        return self.on_objects[x]

    def act(self, x: str, y: str, f: str) -> MonotoneMap:
        return self.on_arrows[(x, y, f)]


@dataclass(frozen=True)
class LaxNat:
    source: Pseudofunctor2
    target: Pseudofunctor2
    components: Mapping[str, MonotoneMap] = field(repr=False)

    def component(self, x: str) -> MonotoneMap:
        return self.components[x]


@dataclass(frozen=True)
class QModule:
    """Strict sup-lattice-valued action: M(g∘f) = M(f)∘M(g) on the nose."""

    base: Quantaloid
    on_objects: Mapping[str, FiniteSupLattice] = field(repr=False)
    on_arrows: Mapping[tuple[str, str, str], MonotoneMap] = field(repr=False)

    def fiber(self, x: str) -> FiniteSupLattice:
        return self.on_objects[x]

    def act(self, x: str, y: str, f: str) -> MonotoneMap:
        return self.on_arrows[(x, y, f)]


@dataclass(frozen=True)
class ModuleMorphism:
    source: QModule
    target: QModule
    components: Mapping[str, MonotoneMap] = field(repr=False)


@dataclass(frozen=True)
class QuantaleAction:
    """A right action of a one-object base on a sup-lattice carrier."""

    quantale: Quantaloid
    carrier: FiniteSupLattice
    table: Mapping[tuple[str, str], str] = field(repr=False)

    def act(self, m: str, f: str) -> str:
        return self.table[(m, f)]


@dataclass
class PseudofunctorReport:
    valid: bool
    closed: bool
    witnesses: dict[str, object] = field(default_factory=dict)


@dataclass
class PseudofunctorLevels:
    bottomed_level: bool     # nonempty fibers have bottoms
    maps_level: bool         # arrow actions are left adjoints; tops exist
    cocont_level: bool       # fibers complete, arrow actions sup-preserving
    skeletal_level: bool     # cocont and all fibers antisymmetric


@dataclass
class TransformationFlags:
    pseudonatural: bool
    bottom_preserving_components: bool
    left_adjoint_components: bool
    sup_morphism_components: bool


@dataclass
class RoundtripReport:
    kind: str
    counterpart: object
    back: object
    isomorphism: object
    ok: bool


# --- validation ---------------------------------------------------------------

def validate_pseudofunctor(p: Pseudofunctor2) -> PseudofunctorReport:
    """Validity (monotone actions, local monotonicity, unit and composition
    up to equivalence) and closedness (partial applications preserve empty
    and binary joins up to equivalence), reported as flags with witnesses."""
    witnesses: dict[str, object] = {}
    base = p.base

    for x in base.objects:
        if x not in p.on_objects:
            return PseudofunctorReport(False, False, {"missing_fiber": x})
    for x in base.objects:
        for y in base.objects:
            for f in base.hom(x, y).elements:
                m = p.on_arrows.get((x, y, f))
                if m is None:
                    return PseudofunctorReport(False, False,
                                               {"missing_arrow": (x, y, f)})
                try:
                    monotone_map(p.fiber(y), p.fiber(x), m.table)
                except Exception:
                    witnesses["monotone"] = (x, y, f)

    def equiv(x, a, b):
        return p.fiber(x).le(a, b) and p.fiber(x).le(b, a)

    for x in base.objects:
        for y in base.objects:
            lat = base.hom(x, y)
            for f in lat.elements:
                for f2 in lat.elements:
                    if lat.le(f, f2) and not all(
                            p.fiber(x).le(p.act(x, y, f)(e), p.act(x, y, f2)(e))
                            for e in p.fiber(y).elements):
                        witnesses.setdefault("local_monotonicity", (x, y, f, f2))

    for x in base.objects:
        act1 = p.act(x, x, base.identity(x))
        for e in p.fiber(x).elements:
            if not equiv(x, act1(e), e):
                witnesses.setdefault("unit", (x, e))
    for x in base.objects:
        for y in base.objects:
            for z in base.objects:
                for g in base.hom(y, z).elements:
                    for f in base.hom(x, y).elements:
                        gf = base.compose_elt(x, y, z, g, f)
                        for e in p.fiber(z).elements:
                            if not equiv(x, p.act(x, z, gf)(e),
                                         p.act(x, y, f)(p.act(y, z, g)(e))):
                                witnesses.setdefault(
                                    "composition", (x, y, z, g, f, e))

    valid = not witnesses

    closed_witness = None
    for x in base.objects:
        for y in base.objects:
            lat = base.hom(x, y)
            for e in p.fiber(y).elements:
                bot_img = p.act(x, y, lat.bottom)(e)
                if not all(p.fiber(x).le(bot_img, v)
                           for v in p.fiber(x).elements):
                    closed_witness = (x, y, e, "empty-join")
                    break
                for f in lat.elements:
                    for f2 in lat.elements:
                        img = p.act(x, y, lat.join2(f, f2))(e)
                        pair = [p.act(x, y, f)(e), p.act(x, y, f2)(e)]
                        lubs = p.fiber(x).least_upper_bounds(pair)
                        if not any(equiv(x, img, u) for u in lubs):
                            closed_witness = (x, y, e, (f, f2))
                            break
                    if closed_witness:
                        break
                if closed_witness:
                    break
            if closed_witness:
                break
        if closed_witness:
            break
    if closed_witness:
        witnesses["closed"] = closed_witness

    return PseudofunctorReport(valid, closed_witness is None, witnesses)


# --- category <-> pseudofunctor ------------------------------------------------

def category_to_pseudofunctor(c: QCategory) -> Pseudofunctor2:
    """Fibers plus tensor actions y ↦ y⊗f, representatives by lowest id.

    Raises NotTensored at the first missing tensor; the output is
    re-validated and must come out valid and closed.
    """
    fibs, _ = fibers(c)
    on_objects = {x: fibs[x].preorder for x in c.base.objects}
    on_arrows = {}
    for x in c.base.objects:
        for y in c.base.objects:
            for f in c.base.hom(x, y).elements:
                arr = QArrow(x, y, f)
                table = {}
                for obj in fibs[y].elements:
                    w = tensor(c, obj, arr)
                    if not w:
                        raise NotTensored(obj, arr)
                    table[obj] = w.representative()
                on_arrows[(x, y, f)] = monotone_map(on_objects[y],
                                                    on_objects[x], table)
    p = Pseudofunctor2(c.base, on_objects, on_arrows)
    report = validate_pseudofunctor(p)
    assert report.valid and report.closed, report.witnesses
    return p


def pseudofunctor_to_category(p: Pseudofunctor2) -> QCategory:
    """Objects are fiber elements tagged "X.e"; hom(y, x) = ⋁{f : Ff(y) ≤ x}.

    Requires a valid, closed input (raises ValidationFailed / NotClosed);
    the result is tensored with Ff(y) realizing the tensor, which is
    asserted.
    """
    report = validate_pseudofunctor(p)
    if not report.valid:
        raise ValidationFailed(report.witnesses)
    if not report.closed:
        raise NotClosed(report.witnesses.get("closed"))
    base = p.base
    objects, type_of = [], {}
    for x in base.objects:
        for e in p.fiber(x).elements:
            obj = f"{x}.{e}"
            objects.append(obj)
            type_of[obj] = x
    hom = {}
    for y_obj in objects:
        for x_obj in objects:
            y_t, y_e = type_of[y_obj], y_obj.split(".", 1)[1]
            x_t, x_e = type_of[x_obj], x_obj.split(".", 1)[1]
            lat = base.hom(x_t, y_t)
            hom[(y_obj, x_obj)] = lat.join(
                f for f in lat.elements
                if p.fiber(x_t).le(p.act(x_t, y_t, f)(y_e), x_e))
    c = validate_category(base, objects, type_of, hom)
    for x in base.objects:
        for y in base.objects:
            for f in base.hom(x, y).elements:
                for e in p.fiber(y).elements:
                    w = tensor(c, f"{y}.{e}", QArrow(x, y, f))
                    assert f"{x}.{p.act(x, y, f)(e)}" in w.candidates, \
                        f"arrow action fails to realize the tensor at {(x, y, f, e)}"
    return c


def validate_laxnat(source: Pseudofunctor2, target: Pseudofunctor2,
                    components: Mapping[str, MonotoneMap]) -> LaxNat:
    """Check the lax squares F'f∘φ_Y ≤ φ_X∘Ff pointwise."""
    base = source.base
    for x in base.objects:
        monotone_map(source.fiber(x), target.fiber(x), components[x].table)
    for x in base.objects:
        for y in base.objects:
            for f in base.hom(x, y).elements:
                for e in source.fiber(y).elements:
                    lhs = target.act(x, y, f)(components[y](e))
                    rhs = components[x](source.act(x, y, f)(e))
                    if not target.fiber(x).le(lhs, rhs):
                        raise NotPseudofunctorial(("lax-square", x, y, f, e))
    return LaxNat(source, target, dict(components))


def functor_to_laxnat(functor: QFunctor) -> LaxNat:
    """Componentwise object maps of a functor between tensored categories."""
    p = category_to_pseudofunctor(functor.source)
    p2 = category_to_pseudofunctor(functor.target)
    components = {
        x: MonotoneMap(p.fiber(x), p2.fiber(x),
                       {a: functor(a) for a in p.fiber(x).elements})
        for x in functor.source.base.objects}
    return validate_laxnat(p, p2, components)


def laxnat_leq(n1: LaxNat, n2: LaxNat) -> bool:
    return all(
        n1.target.fiber(x).le(n1.component(x)(e), n2.component(x)(e))
        for x in n1.source.base.objects
        for e in n1.source.fiber(x).elements)


def classify_pseudofunctor(p: Pseudofunctor2) -> PseudofunctorLevels:
    base = p.base
    nonempty = [x for x in base.objects if p.fiber(x).elements]
    bottomed = all(p.fiber(x).bottoms() for x in nonempty)
    maps = (all(has_right_adjoint(p.act(x, y, f))
                for x in base.objects for y in base.objects
                for f in base.hom(x, y).elements)
            and all(p.fiber(x).tops() for x in nonempty))
    cocont = (all(p.fiber(x).has_all_suprema() for x in base.objects)
              and all(preserves_suprema(p.act(x, y, f))
                      for x in base.objects for y in base.objects
                      for f in base.hom(x, y).elements))
    skeletal = cocont and all(p.fiber(x).is_antisymmetric for x in base.objects)
    return PseudofunctorLevels(bottomed, maps, cocont, skeletal)


def classify_transformation(t: LaxNat) -> TransformationFlags:
    base = t.source.base
    pseudo = all(
        t.target.fiber(x).equivalent(
            t.target.act(x, y, f)(t.component(y)(e)),
            t.component(x)(t.source.act(x, y, f)(e)))
        for x in base.objects for y in base.objects
        for f in base.hom(x, y).elements
        for e in t.source.fiber(y).elements)
    bottoms = all(
        all(t.target.fiber(x).le(t.component(x)(b), v)
            for v in t.target.fiber(x).elements)
        for x in base.objects
        for b in t.source.fiber(x).bottoms())
    adjoints = all(has_right_adjoint(t.component(x)) for x in base.objects)
    sups = all(preserves_suprema(t.component(x)) for x in base.objects)
    return TransformationFlags(pseudo, bottoms, adjoints, sups)


def pseudofunctor_isomorphism(p1: Pseudofunctor2, p2: Pseudofunctor2):
    """Componentwise order-isomorphisms commuting with the arrow actions up
    to equivalence, or None."""
    if p1.base != p2.base:
        return None
    base = p1.base
    per_object = []
    for x in base.objects:
        isos = list(order_isomorphisms(p1.fiber(x), p2.fiber(x)))
        if not isos:
            return None
        per_object.append(isos)
    for combo in itertools.product(*per_object):
        phi = dict(zip(base.objects, combo))
        ok = all(
            p2.fiber(x).equivalent(
                phi[x][p1.act(x, y, f)(e)],
                p2.act(x, y, f)(phi[y][e]))
            for x in base.objects for y in base.objects
            for f in base.hom(x, y).elements
            for e in p1.fiber(y).elements)
        if ok:
            return phi
    return None


# --- modules -------------------------------------------------------------------

def validate_module(m: QModule) -> QModule:
    """Strict functoriality, join-preserving actions, local join
    preservation; raises ModuleLawFails naming the law and a witness."""
    base = m.base
    for x in base.objects:
        if x not in m.on_objects:
            raise ModuleLawFails("totality", x)
    for x in base.objects:
        for y in base.objects:
            lat = base.hom(x, y)
            for f in lat.elements:
                act = m.on_arrows.get((x, y, f))
                if act is None or any(e not in act.table
                                      for e in m.fiber(y).elements):
                    raise ModuleLawFails("totality", (x, y, f))
                monotone_map(m.fiber(y), m.fiber(x), act.table)
                msup = MonotoneMap(m.fiber(y), m.fiber(x), act.table)
                ok, witness = is_sup_morphism(msup)
                if not ok:
                    raise ModuleLawFails("join-preservation", ((x, y, f), witness))
    for x in base.objects:
        ident = m.act(x, x, base.identity(x))
        for e in m.fiber(x).elements:
            if ident(e) != e:
                raise ModuleLawFails("unit", (x, e))
    for x in base.objects:
        for y in base.objects:
            for z in base.objects:
                for g in base.hom(y, z).elements:
                    for f in base.hom(x, y).elements:
                        gf = base.compose_elt(x, y, z, g, f)
                        for e in m.fiber(z).elements:
                            if m.act(x, z, gf)(e) != m.act(x, y, f)(m.act(y, z, g)(e)):
                                raise ModuleLawFails("composition", (g, f, e))
    for x in base.objects:
        for y in base.objects:
            lat = base.hom(x, y)
            for e in m.fiber(y).elements:
                if m.act(x, y, lat.bottom)(e) != m.fiber(x).bottom:
                    raise ModuleLawFails("local-bottom", ((x, y), e))
                for f in lat.elements:
                    for f2 in lat.elements:
                        lhs = m.act(x, y, lat.join2(f, f2))(e)
                        rhs = m.fiber(x).join2(m.act(x, y, f)(e),
                                               m.act(x, y, f2)(e))
                        if lhs != rhs:
                            raise ModuleLawFails("local-join", ((x, y), (f, f2), e))
    return m


def module_to_pseudofunctor(m: QModule) -> Pseudofunctor2:
    return Pseudofunctor2(
        m.base,
        {x: m.fiber(x).order for x in m.base.objects},
        {key: MonotoneMap(m.fiber(key[1]).order, m.fiber(key[0]).order, act.table)
         for key, act in m.on_arrows.items()})


def module_to_category(m: QModule) -> QCategory:
    return pseudofunctor_to_category(module_to_pseudofunctor(validate_module(m)))


def category_to_module(c: QCategory) -> QModule:
    """Tensor actions of a skeletal cocomplete category, as a module."""
    fibs, skeletal = fibers(c)
    if not skeletal:
        bad = next((a, b) for f in fibs.values()
                   for a in f.elements for b in f.elements
                   if a != b and f.preorder.equivalent(a, b))
        raise NotSkeletal(bad)
    report = completeness_report(c)
    if not report.cocomplete:
        raise NotCocomplete(report.witnesses)
    on_objects = {
        x: validate_order(fibs[x].elements, fibs[x].preorder.pairs,
                          require_suplattice=True)
        for x in c.base.objects}
    on_arrows = {}
    for x in c.base.objects:
        for y in c.base.objects:
            for f in c.base.hom(x, y).elements:
                arr = QArrow(x, y, f)
                table = {obj: tensor(c, obj, arr).representative()
                         for obj in fibs[y].elements}
                on_arrows[(x, y, f)] = MonotoneMap(on_objects[y],
                                                   on_objects[x], table)
    return validate_module(QModule(c.base, on_objects, on_arrows))


def module_isomorphism(m1: QModule, m2: QModule):
    """Per-object lattice isomorphisms strictly commuting with the actions."""
    if m1.base != m2.base:
        return None
    base = m1.base
    per_object = []
    for x in base.objects:
        isos = list(order_isomorphisms(m1.fiber(x), m2.fiber(x)))
        if not isos:
            return None
        per_object.append(isos)
    for combo in itertools.product(*per_object):
        phi = dict(zip(base.objects, combo))
        ok = all(
            phi[x][m1.act(x, y, f)(e)] == m2.act(x, y, f)(phi[y][e])
            for x in base.objects for y in base.objects
            for f in base.hom(x, y).elements
            for e in m1.fiber(y).elements)
        if ok:
            return phi
    return None


def module_roundtrip(value) -> RoundtripReport:
    """Cross the correspondence both ways and report the isomorphism.

    From a module: build its category, come back, match the modules by
    componentwise lattice isomorphism.  From a skeletal cocomplete
    category: build its module, come back, match by type-preserving
    hom-equality isomorphism.
    """
    from .qcat import category_isomorphism

    if isinstance(value, QModule):
        c = module_to_category(value)
        back = category_to_module(c)
        iso = module_isomorphism(value, back)
        return RoundtripReport("module", c, back, iso, iso is not None)
    if isinstance(value, QCategory):
        m = category_to_module(value)
        back = module_to_category(m)
        iso = category_isomorphism(value, back)
        return RoundtripReport("category", m, back, iso, iso is not None)
    raise TypeError(f"expected a module or category, got {type(value).__name__}")


# --- quantale actions ------------------------------------------------------------

def validate_action(action: QuantaleAction) -> QuantaleAction:
    """Join preservation in each variable, unit law, composition law."""
    q = action.quantale
    if len(q.objects) != 1:
        raise NotOneObject(q.objects)
    star = q.objects[0]
    hom = q.hom(star, star)
    carrier = action.carrier
    for m in carrier.elements:
        for f in hom.elements:
            if action.table.get((m, f)) not in carrier.elements:
                raise ActionLawFails("totality", (m, f))
    for f in hom.elements:
        if action.act(carrier.bottom, f) != carrier.bottom:
            raise ActionLawFails("join-left", ((), f))
        for m in carrier.elements:
            for m2 in carrier.elements:
                lhs = action.act(carrier.join2(m, m2), f)
                if lhs != carrier.join2(action.act(m, f), action.act(m2, f)):
                    raise ActionLawFails("join-left", ((m, m2), f))
    for m in carrier.elements:
        if action.act(m, hom.bottom) != carrier.bottom:
            raise ActionLawFails("join-right", (m, ()))
        for f in hom.elements:
            for f2 in hom.elements:
                lhs = action.act(m, hom.join2(f, f2))
                if lhs != carrier.join2(action.act(m, f), action.act(m, f2)):
                    raise ActionLawFails("join-right", (m, (f, f2)))
    for m in carrier.elements:
        if action.act(m, q.identity(star)) != m:
            raise ActionLawFails("unit", m)
    for m in carrier.elements:
        for g in hom.elements:
            for f in hom.elements:
                gf = q.compose_elt(star, star, star, g, f)
                if action.act(m, gf) != action.act(action.act(m, g), f):
                    raise ActionLawFails("composition", (m, g, f))
    return action


def action_to_module(action: QuantaleAction) -> QModule:
    """Curry the action into arrow maps; the composition law becomes the
    multiplication-reversing representation M(g∘f) = M(f)∘M(g), which the
    module validator re-checks."""
    validate_action(action)
    star = action.quantale.objects[0]
    hom = action.quantale.hom(star, star)
    on_arrows = {
        (star, star, f): MonotoneMap(
            action.carrier, action.carrier,
            {m: action.act(m, f) for m in action.carrier.elements})
        for f in hom.elements}
    return validate_module(QModule(action.quantale,
                                   {star: action.carrier}, on_arrows))


def module_to_action(m: QModule) -> QuantaleAction:
    if len(m.base.objects) != 1:
        raise NotOneObject(m.base.objects)
    validate_module(m)
    star = m.base.objects[0]
    hom = m.base.hom(star, star)
    table = {(e, f): m.act(star, star, f)(e)
             for e in m.fiber(star).elements for f in hom.elements}
    return validate_action(QuantaleAction(m.base, m.fiber(star), table))


def action_morphism_check(alpha: Mapping[str, str],
                          source: QuantaleAction,
                          target: QuantaleAction):
    """Is α a module morphism?  Join preservation plus equivariance
    α(act(m, f)) = act(α(m), f); returns the flag and a witness."""
    amap = MonotoneMap(source.carrier, target.carrier, dict(alpha))
    ok, witness = is_sup_morphism(amap)
    if not ok:
        return False, ("join", witness)
    star = source.quantale.objects[0]
    for m in source.carrier.elements:
        for f in source.quantale.hom(star, star).elements:
            if alpha[source.act(m, f)] != target.act(alpha[m], f):
                return False, ("equivariance", (m, f))
    return True, None
