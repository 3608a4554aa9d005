"""The bundled desk instances used by tests, the suite and the shipped
instance files.

Everything here goes through the public builders and validators, so a
transcription slip in this module fails loudly at import-use time.
"""

from __future__ import annotations

from functools import cache

from .order import FiniteSupLattice, MonotoneMap, validate_order
from .qcat import (
    Distributor,
    QCategory,
    QFunctor,
    copresheaf_category,
    one_object_category,
    presheaf_category,
    validate_category,
    validate_distributor,
    validate_functor,
)
from .quantaloid import Quantaloid, build_quantaloid, chain_lattice
from .variation import (
    Pseudofunctor2,
    QModule,
    QuantaleAction,
    validate_action,
    validate_module,
)


@cache
def q2() -> Quantaloid:
    """One object, hom {0,1}, composition = meet."""
    return build_quantaloid("boolean2")


@cache
def q3() -> Quantaloid:
    """One object, hom the chain 0 < a < 1, composition = min, unit 1."""
    lat = chain_lattice(["0", "a", "1"])
    order = {"0": 0, "a": 1, "1": 2}
    table = {(g, f): g if order[g] <= order[f] else f
             for g in lat.elements for f in lat.elements}
    return build_quantaloid("quantale_table",
                            {"lattice": lat, "table": table, "unit": "1"})


@cache
def qrel3() -> Quantaloid:
    """Relations over the 3-chain locale 0 < u < 1."""
    return build_quantaloid("locale", {"frame": chain_lattice(["0", "u", "1"])})


@cache
def chain3_q2() -> QCategory:
    """The chain bot < mid < top as a category over q2."""
    objs = ["bot", "mid", "top"]
    order = {"bot": 0, "mid": 1, "top": 2}
    hom = {(y, x): "1" if order[y] <= order[x] else "0"
           for y in objs for x in objs}
    return validate_category(q2(), objs, {o: "*" for o in objs}, hom)


def zero_category(q: Quantaloid, prefix: str = "z") -> QCategory:
    """One object per base object, identity self-homs, bottom cross-homs."""
    objs = [f"{prefix}{x}" for x in q.objects]
    type_of = dict(zip(objs, q.objects))
    hom = {}
    for yo in objs:
        for xo in objs:
            x, y = type_of[xo], type_of[yo]
            hom[(yo, xo)] = q.identity(x) if xo == yo else q.zero(x, y)
    return validate_category(q, objs, type_of, hom)


@cache
def zero_qrel3() -> QCategory:
    return zero_category(qrel3())


@cache
def p1_qrel3() -> QCategory:
    """Contravariant presheaves on the one-object category over 1 in qrel3;
    six objects, fibers of sizes 1, 2, 3."""
    return presheaf_category(qrel3(), "1")


@cache
def pd1_qrel3() -> QCategory:
    """Covariant counterpart of p1_qrel3, typed by codomains."""
    return copresheaf_category(qrel3(), "1")


@cache
def star_q2() -> QCategory:
    return one_object_category(q2(), "*")


# --- functors on the 3-chain -------------------------------------------------

@cache
def functor_id_chain3() -> QFunctor:
    c = chain3_q2()
    return validate_functor(c, c, {o: o for o in c.objects})


@cache
def functor_bot_chain3() -> QFunctor:
    c = chain3_q2()
    return validate_functor(c, c, {o: "bot" for o in c.objects})


@cache
def functor_collapse_chain3() -> QFunctor:
    """Order-preserving but not tensor-preserving: bot and mid both to mid."""
    c = chain3_q2()
    return validate_functor(c, c, {"bot": "mid", "mid": "mid", "top": "top"})


@cache
def distributor_down_chain3() -> Distributor:
    """The weight picking out {bot, mid}: a down-closed 0/1 table."""
    return validate_distributor(
        star_q2(), chain3_q2(),
        {("bot", "o"): "1", ("mid", "o"): "1", ("top", "o"): "0"})


# --- pseudofunctors, modules, actions ----------------------------------------

@cache
def pseudofunctor_chain2_q2() -> Pseudofunctor2:
    """F(*) the 2-chain x0 < x1, F(1) = id, F(0) = constant x0."""
    fiber = validate_order(["x0", "x1"],
                           [("x0", "x0"), ("x1", "x1"), ("x0", "x1")])
    return Pseudofunctor2(
        q2(), {"*": fiber},
        {("*", "*", "1"): MonotoneMap(fiber, fiber, {"x0": "x0", "x1": "x1"}),
         ("*", "*", "0"): MonotoneMap(fiber, fiber, {"x0": "x0", "x1": "x0"})})


@cache
def module_chain3_q2() -> QModule:
    lat = chain_lattice(["bot", "mid", "top"])
    return validate_module(QModule(
        q2(), {"*": lat},
        {("*", "*", "1"): MonotoneMap(lat, lat, {e: e for e in lat.elements}),
         ("*", "*", "0"): MonotoneMap(lat, lat, {e: "bot" for e in lat.elements})}))


def representable_module(q: Quantaloid, y: str) -> QModule:
    """M(X) = hom(X, y) with precomposition as the arrow action."""
    on_objects: dict[str, FiniteSupLattice] = {x: q.hom(x, y) for x in q.objects}
    on_arrows = {}
    for x in q.objects:
        for x2 in q.objects:
            for f in q.hom(x, x2).elements:
                table = {g: q.compose_elt(x, x2, y, g, f)
                         for g in q.hom(x2, y).elements}
                on_arrows[(x, x2, f)] = MonotoneMap(on_objects[x2],
                                                    on_objects[x], table)
    return validate_module(QModule(q, on_objects, on_arrows))


@cache
def module_min_q3() -> QModule:
    return representable_module(q3(), "*")


@cache
def module_hom1_qrel3() -> QModule:
    return representable_module(qrel3(), "1")


@cache
def action_chain3_q2() -> QuantaleAction:
    lat = chain_lattice(["bot", "mid", "top"])
    table = {(m, "1"): m for m in lat.elements}
    table.update({(m, "0"): "bot" for m in lat.elements})
    return validate_action(QuantaleAction(q2(), lat, table))


@cache
def action_min_q3() -> QuantaleAction:
    base = q3()
    lat = base.hom("*", "*")
    table = {(m, f): base.compose_elt("*", "*", "*", m, f)
             for m in lat.elements for f in lat.elements}
    return validate_action(QuantaleAction(base, lat, table))


BUNDLED_QUANTALOIDS = {"q2": q2, "q3": q3, "qrel3": qrel3}

BUNDLED_CATEGORIES = {
    "chain3_q2": chain3_q2,
    "zero_qrel3": zero_qrel3,
    "p1_qrel3": p1_qrel3,
    "pd1_qrel3": pd1_qrel3,
    "star_q2": star_q2,
}

BUNDLED_MODULES = {
    "m_chain3_q2": module_chain3_q2,
    "m_min_q3": module_min_q3,
    "m_hom1_qrel3": module_hom1_qrel3,
}
