"""The executable property catalog.

Every check ties one provable statement about finite enriched categories
to an exhaustive computation over concrete instances: the bundled files of
a directory plus a labeled sweep of all small categories (and all functors
between them) over the two stock one-object bases.

A failing check carries a replayable witness.  Enumeration caps turn
checks into ``skipped`` results, never silent passes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import instances as inst
from .completion import (
    check_adjunction,
    completeness_report,
    conical_colimit,
    cotensor,
    fiber_map,
    fiber_supremum,
    synthesize_right_adjoint,
    tensor,
    tensor_preservation_failure,
    weighted_colimit,
)
from .errors import EnumerationCapExceeded, QlabError, RouteDisagreement
from .fileformat import (
    Registry,
    build_instance,
    bundled_registry,
    load_file,
    parse_text,
    render_instance,
)
from .order import (
    FinitePreorder,
    MonotoneMap,
    check_order_adjunction,
    has_right_adjoint,
    is_sup_morphism,
    monotone_map,
    right_adjoint,
    subsets,
    validate_order,
)
from .qcat import (
    Distributor,
    QCategory,
    QFunctor,
    category_isomorphism,
    copresheaf_category,
    dist_compose,
    dist_leq,
    dist_residual,
    enumerate_presheaves,
    fibers,
    free_fiber_category,
    identity_distributor,
    identity_functor,
    one_object_category,
    opposite_category,
    presheaf_category,
    validate_distributor,
    validate_functor,
)
from .quantaloid import QArrow, Quantaloid, build_quantaloid, opposite, residual
from .sweep import (
    all_categories,
    all_functors,
    all_lattices,
    all_monotone_maps,
    all_preorders,
    preorder_as_2category,
    sweep_frames,
)
from .variation import (
    category_to_pseudofunctor,
    classify_pseudofunctor,
    classify_transformation,
    laxnat_leq,
    module_roundtrip,
    module_to_action,
    action_to_module,
    action_morphism_check,
    module_to_pseudofunctor,
    pseudofunctor_isomorphism,
    pseudofunctor_to_category,
    validate_laxnat,
    validate_pseudofunctor,
)


@dataclass
class CheckResult:
    check: str
    instance: str
    status: str  # "pass" | "fail" | "skipped"
    witness: str | None = None

    def as_dict(self) -> dict:
        return {"check": self.check, "instance": self.instance,
                "status": self.status, "witness": self.witness}


@dataclass
class SuiteReport:
    results: list[CheckResult] = field(default_factory=list)

    def sorted(self) -> list[CheckResult]:
        return sorted(self.results, key=lambda r: (r.instance, r.check))

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def skipped(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "skipped"]

    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def render_text(self) -> str:
        lines = [f"{r.status.upper():7s} {r.instance:28s} {r.check}"
                 + (f"  [{r.witness}]" if r.witness else "")
                 for r in self.sorted()]
        lines.append(f"-- {len(self.results)} checks: "
                     f"{len(self.results) - len(self.failures) - len(self.skipped)} passed, "
                     f"{len(self.failures)} failed, {len(self.skipped)} skipped")
        return "\n".join(lines)

    def render_json(self) -> str:
        return json.dumps([r.as_dict() for r in self.sorted()], indent=2)


class _Recorder:
    def __init__(self):
        self.report = SuiteReport()

    def record(self, check: str, instance: str, ok: bool, witness=None):
        self.report.results.append(CheckResult(
            check, instance, "pass" if ok else "fail",
            None if ok else str(witness)[:300]))

    def skip(self, check: str, instance: str, reason):
        self.report.results.append(CheckResult(check, instance, "skipped",
                                               str(reason)[:300]))

    def guard(self, check: str, instance: str, fn):
        """Run fn() -> (ok, witness); cap overruns become skips, other
        structured errors become failures."""
        try:
            ok, witness = fn()
        except EnumerationCapExceeded as e:
            self.skip(check, instance, e)
            return
        except (QlabError, AssertionError) as e:
            self.record(check, instance, False, e)
            return
        self.record(check, instance, ok, witness)


def _sorted_arrows(q: Quantaloid) -> list[QArrow]:
    return sorted(q.all_arrows(), key=lambda a: (a.src, a.dst, a.value))


def _mutually_isomorphic(c: QCategory, ws) -> bool:
    return all(c.isomorphic_objects(a, b)
               for a in ws.candidates for b in ws.candidates)


# --- file checks ---------------------------------------------------------------


def check_files(rec: _Recorder, directory: Path, registry: Registry) -> dict:
    """Validate and round-trip every instance file; returns the loaded pool."""
    pool: dict[str, list] = {k: [] for k in
                             ("quantaloid", "category", "functor", "distributor",
                              "pseudofunctor", "module", "action")}
    for path in sorted(directory.iterdir()):
        if not path.is_file() or path.suffix not in (
                ".qt", ".qc", ".qf", ".qd", ".qp", ".qm", ".qa"):
            continue
        try:
            instance = load_file(path, registry)
        except QlabError as e:
            rec.record("file-validates", path.name, False, f"{e.code}: {e}")
            continue
        rec.record("file-validates", path.name, True)
        rendered = render_instance(instance)
        try:
            reparsed = parse_text(rendered)
            back = build_instance(reparsed, registry.resolve)
            ok = back == instance and render_instance(back) == rendered
            rec.record("file-roundtrip", path.name, ok,
                       None if ok else "parse(render(v)) differs")
        except QlabError as e:
            rec.record("file-roundtrip", path.name, False, e)
            continue
        pool[instance.kind].append((instance.name, instance.value))
    return pool


# --- order core -----------------------------------------------------------------


def check_order_core(rec: _Recorder, max_carrier: int):
    lattices = all_lattices(max_carrier)
    tag = f"lattices<={max_carrier}"

    mismatch = None
    for li, lat in enumerate(lattices):
        for m in all_monotone_maps(lat, lat):
            sup_ok, _ = is_sup_morphism(m)
            try:
                right_adjoint(m)
                adj_ok = True
            except QlabError:
                adj_ok = False
            if sup_ok != adj_ok:
                mismatch = (li, dict(m.table), sup_ok, adj_ok)
                break
        if mismatch:
            break
    rec.record("order-adjoint-characterization", tag, mismatch is None, mismatch)

    bad_unique = None
    for li, lat in enumerate(lattices):
        maps_back = all_monotone_maps(lat, lat)
        for m in all_monotone_maps(lat, lat):
            try:
                adj = right_adjoint(m)
            except QlabError:
                continue
            rights = [g for g in maps_back if check_order_adjunction(m, g)]
            if not (len(rights) == 1 and rights[0].table == dict(adj.right.table)):
                bad_unique = (li, dict(m.table), len(rights))
                break
        if bad_unique:
            break
    rec.record("order-adjoint-uniqueness", tag, bad_unique is None, bad_unique)

    bad_join = None
    for li, lat in enumerate(lattices):
        for a in lat.elements:
            for b in lat.elements:
                j = lat.join2(a, b)
                if lat.join2(a, a) != a or j != lat.join2(b, a):
                    bad_join = (li, a, b, "idempotence/commutativity")
                for c in lat.elements:
                    if lat.join2(lat.join2(a, b), c) != lat.join2(a, lat.join2(b, c)):
                        bad_join = (li, a, b, c, "associativity")
        for s in subsets(lat.elements):
            j = lat.join(s)
            if not all(lat.le(x, j) for x in s):
                bad_join = (li, s, "not an upper bound")
            for u in lat.elements:
                if all(lat.le(x, u) for x in s) and not lat.le(j, u):
                    bad_join = (li, s, u, "not least")
        if bad_join:
            break
    rec.record("order-join-laws", tag, bad_join is None, bad_join)


# --- quantaloid checks -------------------------------------------------------------


def check_quantaloids(rec: _Recorder, quantaloids: list[tuple[str, Quantaloid]]):
    for name, q in quantaloids:
        bad = None
        for f in _sorted_arrows(q):
            for g in _sorted_arrows(q):
                if g.dst == f.dst:
                    lift = residual(q, "lifting", f, g)
                    lat = q.hom(g.src, g.dst)
                    for h in q.hom(g.src, f.src).elements:
                        lhs = lat.le(q.compose_elt(g.src, f.src, f.dst,
                                                   f.value, h), g.value)
                        rhs = q.hom(g.src, f.src).le(h, lift.value)
                        if lhs != rhs:
                            bad = ("lifting", f, g, h)
                if g.src == f.src:
                    ext = residual(q, "extension", f, g)
                    lat = q.hom(g.src, g.dst)
                    for h in q.hom(f.dst, g.dst).elements:
                        lhs = lat.le(q.compose_elt(f.src, f.dst, g.dst,
                                                   h, f.value), g.value)
                        rhs = q.hom(f.dst, g.dst).le(h, ext.value)
                        if lhs != rhs:
                            bad = ("extension", f, g, h)
        rec.record("residual-universal-property", name, bad is None, bad)

        op = opposite(q)
        bad = None
        for f in _sorted_arrows(q):
            for g in _sorted_arrows(q):
                if g.dst != f.dst:
                    continue
                lift = residual(q, "lifting", f, g)
                ext = residual(op, "extension",
                               QArrow(f.dst, f.src, f.value),
                               QArrow(g.dst, g.src, g.value))
                if (ext.src, ext.dst, ext.value) != (lift.dst, lift.src, lift.value):
                    bad = (f, g, lift, ext)
        rec.record("residual-opposite-exchange", name, bad is None, bad)

        rec.record("opposite-involution", name, opposite(op) == q)

        bad = None
        for x in q.objects:
            for y in q.objects:
                for z in q.objects:
                    for g in q.hom(y, z).elements:
                        if q.compose_elt(x, y, z, g, q.zero(x, y)) != q.zero(x, z):
                            bad = ("right", g)
                    for f in q.hom(x, y).elements:
                        if q.compose_elt(x, y, z, q.zero(y, z), f) != q.zero(x, z):
                            bad = ("left", f)
        rec.record("zero-absorption", name, bad is None, bad)

    def locale_check():
        for frame in sweep_frames():
            build_quantaloid("locale", {"frame": frame})
        return True, None
    rec.guard("locale-builder-validates", "frames<=5", locale_check)


# --- distributor calculus ------------------------------------------------------------


def _all_distributors(a: QCategory, b: QCategory, cap: int = 512):
    keys = [(y, x) for y in b.objects for x in a.objects]
    spaces = [sorted(a.base.hom(a.t(x), b.t(y)).elements) for (y, x) in keys]
    size = 1
    for s in spaces:
        size *= len(s)
    if size > cap:
        return None
    out = []
    for combo in itertools.product(*spaces):
        try:
            out.append(validate_distributor(a, b, dict(zip(keys, combo))))
        except QlabError:
            pass
    return out


def check_distributor_calculus(rec: _Recorder, bases: list[tuple[str, Quantaloid]]):
    for base_name, q in bases:
        cats = [c for c in all_categories(q, 1) if c.objects]
        triples = [(a, b, c) for a in cats for b in cats for c in cats]
        bad = None
        checked = 0
        for (a, b, c) in triples:
            xis = _all_distributors(a, b)
            psis = _all_distributors(b, c)
            thetas = _all_distributors(a, c)
            if xis is None or psis is None or thetas is None:
                continue
            for psi in psis:
                for theta in thetas:
                    res = dist_residual(psi, theta)
                    for xi in xis:
                        checked += 1
                        lhs = dist_leq(dist_compose(psi, xi), theta)
                        rhs = dist_leq(xi, res)
                        if lhs != rhs:
                            bad = (dict(psi.table), dict(theta.table),
                                   dict(xi.table))
        rec.record("distributor-residual-adjunction",
                   f"sweep[{base_name}]", bad is None,
                   bad if bad else f"checked={checked}")

        bad = None
        for c in cats:
            ident = identity_distributor(c)
            for phi in _all_distributors(c, c) or []:
                if dist_compose(phi, ident) != phi or dist_compose(ident, phi) != phi:
                    bad = dict(phi.table)
        rec.record("distributor-unit-law", f"sweep[{base_name}]",
                   bad is None, bad)


def check_presheaf_constructions(rec: _Recorder,
                                 quantaloids: list[tuple[str, Quantaloid]]):
    for name, q in quantaloids:
        try:
            for obj in q.objects:
                presheaf_category(q, obj)
                copresheaf_category(q, obj)
            rec.record("presheaf-categories-validate", name, True)
        except QlabError as e:
            rec.record("presheaf-categories-validate", name, False, e)


# --- the per-category theorem catalog ----------------------------------------------


class _CatContext:
    def __init__(self, name: str, cat: QCategory, cap: int | None):
        self.name = name
        self.cat = cat
        self.cap = cap
        self.fibs, self.skeletal = fibers(cat)
        self.report = completeness_report(cat, cap)
        self.arrows = _sorted_arrows(cat.base)
        self._pf = None

    def pseudofunctor(self):
        if self._pf is None:
            self._pf = category_to_pseudofunctor(self.cat)
        return self._pf


def check_category(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    q = c.base
    rep = ctx.report

    # every universal property produces one equivalence class
    bad = None
    for y in c.objects:
        for f in ctx.arrows:
            if f.dst == c.t(y) and not _mutually_isomorphic(c, tensor(c, y, f)):
                bad = ("tensor", y, f)
    for x in c.objects:
        for f in ctx.arrows:
            if f.src == c.t(x) and not _mutually_isomorphic(c, cotensor(c, f, x)):
                bad = ("cotensor", f, x)
    for type_id in q.objects:
        for fam in subsets(c.fiber_objects(type_id)):
            if not _mutually_isomorphic(c, conical_colimit(c, type_id, fam)):
                bad = ("conical", type_id, fam)
            if not _mutually_isomorphic(c, fiber_supremum(c, type_id, fam)):
                bad = ("supremum", type_id, fam)
    rec.record("witness-sets-isomorphic", name, bad is None, bad)

    rec.record("cocomplete-iff-tensored-and-conical", name,
               rep.cocomplete == (rep.tensored and rep.conically_cocomplete),
               rep.flags())

    # underlying fiber orders are genuine preorders
    try:
        for type_id in q.objects:
            p = ctx.fibs[type_id].preorder
            validate_order(p.elements, p.pairs)
        rec.record("underlying-order-is-preorder", name, True)
    except QlabError as e:
        rec.record("underlying-order-is-preorder", name, False, e)

    # opposite-of-opposite returns the same tables
    rec.record("opposite-category-involution", name,
               opposite_category(opposite_category(c)) == c)

    # footnote counts: these flags force one object per type
    bad = None
    if c.objects:
        for flag, holds in (("tensored", rep.tensored),
                            ("conically_cocomplete", rep.conically_cocomplete),
                            ("order_cocomplete", rep.order_cocomplete)):
            if holds and any(not c.fiber_objects(t) for t in q.objects):
                bad = flag
    rec.record("inhabited-types-under-cocompleteness", name, bad is None, bad)

    # conical colimits are suprema; suprema are conical when cotensored
    bad = None
    for type_id in q.objects:
        for fam in subsets(c.fiber_objects(type_id)):
            con = conical_colimit(c, type_id, fam)
            sup = fiber_supremum(c, type_id, fam)
            if not set(con.candidates) <= set(sup.candidates):
                bad = ("conical-not-sup", type_id, fam)
            if rep.cotensored and not set(sup.candidates) <= set(con.candidates):
                bad = ("sup-not-conical", type_id, fam)
    rec.record("conical-colimit-vs-supremum", name, bad is None, bad)
    if rep.cotensored:
        rec.record("conical-equals-order-cocomplete-when-cotensored", name,
                   rep.conically_cocomplete == rep.order_cocomplete, rep.flags())

    if rep.tensored and rep.cotensored:
        op_rep = completeness_report(opposite_category(c), ctx.cap)
        flags = {rep.conically_cocomplete, rep.order_cocomplete, rep.cocomplete,
                 op_rep.conically_cocomplete, op_rep.order_cocomplete,
                 op_rep.cocomplete}
        rec.record("completeness-notions-coincide", name, len(flags) == 1,
                   (rep.flags(), op_rep.flags()))

    _check_tensor_laws(rec, ctx)
    _check_tensor_cotensor_interplay(rec, ctx)
    _check_hom_formulas(rec, ctx)
    _check_weighted_colimits(rec, ctx)
    if rep.tensored:
        _check_variation_for_category(rec, ctx)


def _check_tensor_laws(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    q = c.base

    bad = None
    for y in c.objects:
        unit = tensor(c, y, QArrow(c.t(y), c.t(y), q.identity(c.t(y))))
        if y not in unit.candidates:
            bad = ("unit", y)
    rec.record("tensor-unit", name, bad is None, bad)

    bad = None
    for y in c.objects:
        for f in ctx.arrows:
            if f.dst != c.t(y):
                continue
            for g in ctx.arrows:
                if g.dst != f.src:
                    continue
                fg = QArrow(g.src, f.dst,
                            q.compose_elt(g.src, g.dst, f.dst, f.value, g.value))
                w_fg = tensor(c, y, fg)
                w_f = tensor(c, y, f)
                if not (w_fg and w_f):
                    continue
                w_gf = tensor(c, w_f.representative(), g)
                if not w_gf:
                    continue
                if not c.isomorphic_objects(w_fg.representative(),
                                            w_gf.representative()):
                    bad = (y, f, g)
    rec.record("tensor-associativity", name, bad is None, bad)

    bad = None
    for y in c.objects:
        ty = c.t(y)
        for src in q.objects:
            lat = q.hom(src, ty)
            for f1 in lat.elements:
                for f2 in lat.elements:
                    w1 = tensor(c, y, QArrow(src, ty, f1))
                    w2 = tensor(c, y, QArrow(src, ty, f2))
                    wj = tensor(c, y, QArrow(src, ty, lat.join2(f1, f2)))
                    if not (w1 and w2 and wj):
                        continue
                    sup = fiber_supremum(c, src, [w1.representative(),
                                                  w2.representative()])
                    if not sup or not c.isomorphic_objects(
                            wj.representative(), sup.representative()):
                        bad = (y, f1, f2)
            w_zero = tensor(c, y, QArrow(src, ty, lat.bottom))
            empty_sup = fiber_supremum(c, src, [])
            if w_zero and empty_sup and not c.isomorphic_objects(
                    w_zero.representative(), empty_sup.representative()):
                bad = (y, "empty-join")
    rec.record("tensor-join-law", name, bad is None, bad)

    bad = None
    for y in c.objects:
        for y2 in c.objects:
            if not c.leq(y, y2):
                continue
            for f in ctx.arrows:
                if f.dst != c.t(y):
                    continue
                w1, w2 = tensor(c, y, f), tensor(c, y2, f)
                if w1 and w2 and not c.leq(w1.representative(),
                                           w2.representative()):
                    bad = (y, y2, f)
    rec.record("tensor-monotonicity", name, bad is None, bad)


def _tensor_fiber_map(ctx: _CatContext, f: QArrow) -> MonotoneMap | None:
    """y ↦ y⊗f between fibers, when every tensor with f exists."""
    c = ctx.cat
    table = {}
    for y in ctx.fibs[f.dst].elements:
        w = tensor(c, y, f)
        if not w:
            return None
        table[y] = w.representative()
    return monotone_map(ctx.fibs[f.dst].preorder, ctx.fibs[f.src].preorder, table)


def _cotensor_fiber_map(ctx: _CatContext, f: QArrow) -> MonotoneMap | None:
    c = ctx.cat
    table = {}
    for x in ctx.fibs[f.src].elements:
        w = cotensor(c, f, x)
        if not w:
            return None
        table[x] = w.representative()
    return monotone_map(ctx.fibs[f.src].preorder, ctx.fibs[f.dst].preorder, table)


def _check_tensor_cotensor_interplay(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    rep = ctx.report

    bad = None
    for f in ctx.arrows:
        tmap = _tensor_fiber_map(ctx, f)
        cmap = _cotensor_fiber_map(ctx, f)
        if tmap is None or cmap is None:
            continue
        if not check_order_adjunction(tmap, cmap):
            bad = f
    rec.record("tensor-cotensor-order-adjunction", name, bad is None, bad)

    if not rep.tensored:
        return

    # cotensoredness == every -⊗f is a fiberwise left adjoint, and the
    # adjoint values are exactly the cotensors
    adjoint_all = True
    bad = None
    for f in ctx.arrows:
        tmap = _tensor_fiber_map(ctx, f)
        if not has_right_adjoint(tmap):
            adjoint_all = False
            continue
        if rep.cotensored:
            src = ctx.fibs[f.src].preorder
            tgt = ctx.fibs[f.dst].preorder
            for x in src.elements:
                below = [y for y in tgt.elements if c.leq(tmap(y), x)]
                greatest = [g for g in below
                            if all(tgt.le(a, g) for a in below)]
                if not greatest or greatest[0] not in cotensor(c, f, x).candidates:
                    bad = (f, x)
    rec.record("cotensored-iff-tensor-maps-left-adjoint", name,
               adjoint_all == rep.cotensored and bad is None,
               bad or (adjoint_all, rep.cotensored))

    # three equivalent readings of cotensoredness on a tensored category
    route_homs = True
    for x in c.objects:
        tx = c.t(x)
        for y_type in c.base.objects:
            lat = c.base.hom(tx, y_type)
            op_order = FinitePreorder(lat.elements,
                                      frozenset((b, a) for (a, b) in lat.order.pairs))
            table = {y: c.hom_elt(y, x)
                     for y in ctx.fibs[y_type].elements}
            m = monotone_map(ctx.fibs[y_type].preorder, op_order, table)
            if not has_right_adjoint(m):
                route_homs = False
    route_functor = True
    for x in c.objects:
        pdx = copresheaf_category(c.base, c.t(x))
        mapping = {y: f"{c.t(y)}.{c.hom_elt(y, x)}" for y in c.objects}
        hom_functor = validate_functor(c, pdx, mapping)
        try:
            synthesize_right_adjoint(hom_functor)
        except QlabError:
            route_functor = False
    rec.record("cotensored-three-ways", name,
               route_homs == route_functor == rep.cotensored,
               (route_homs, route_functor, rep.cotensored))


def _check_hom_formulas(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    q = c.base
    rep = ctx.report

    if rep.tensored:
        bad = None
        for y in c.objects:
            for z in c.objects:
                lat = q.hom(c.t(z), c.t(y))
                expected = lat.join(
                    f for f in lat.elements
                    if c.leq(tensor(c, y, QArrow(c.t(z), c.t(y), f)).representative(), z))
                if expected != c.hom_elt(y, z):
                    bad = (y, z)
        rec.record("hom-recovered-from-tensors", name, bad is None, bad)

    if rep.cotensored:
        # the meet lives in the opposite hom-lattice (the adjunction lands
        # in Q(X,Z)^op), so it is the join of the f with z below <f,x>
        bad = None
        for z in c.objects:
            for x in c.objects:
                lat = q.hom(c.t(x), c.t(z))
                expected = lat.join(
                    f for f in lat.elements
                    if c.leq(z, cotensor(c, QArrow(c.t(x), c.t(z), f), x).representative()))
                if expected != c.hom_elt(z, x):
                    bad = (z, x)
        rec.record("hom-recovered-from-cotensors", name, bad is None, bad)


def _check_weighted_colimits(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    q = c.base

    # a single-arrow weight against a constant functor is exactly a tensor
    bad = None
    for y in c.objects:
        star_y = one_object_category(q, c.t(y))
        const = QFunctor(star_y, c, {"o": y})
        for f in ctx.arrows:
            if f.dst != c.t(y):
                continue
            star_x = one_object_category(q, f.src)
            phi = Distributor(star_x, star_y, {("o", "o"): f.value})
            if weighted_colimit(phi, const)["o"] != tensor(c, y, f):
                bad = (y, f)
    rec.record("single-arrow-weight-is-tensor", name, bad is None, bad)

    # the conical weight on a free fiber diagram computes the conical colimit
    bad = None
    for type_id in q.objects:
        fiber = ctx.fibs[type_id].preorder
        for fam in subsets(fiber.elements):
            sub = FinitePreorder(fam, frozenset(
                (a, b) for (a, b) in fiber.pairs if a in fam and b in fam))
            diagram = free_fiber_category(q, sub, type_id)
            functor = validate_functor(diagram, c, {a: a for a in fam})
            weight = Distributor(one_object_category(q, type_id), diagram,
                                 {(a, "o"): q.identity(type_id) for a in fam})
            if weighted_colimit(weight, functor)["o"] != \
                    conical_colimit(c, type_id, fam):
                bad = (type_id, fam)
    rec.record("conical-weight-reduction", name, bad is None, bad)

    if not ctx.report.cocomplete:
        return
    # all three computation routes agree on a cocomplete category
    def routes():
        ident = identity_functor(c)
        for type_id in q.objects:
            for phi in enumerate_presheaves(c, type_id, ctx.cap):
                result = weighted_colimit(phi, ident, verify_routes=True)["o"]
                if not result:
                    return False, (type_id, dict(phi.table))
        return True, None
    rec.guard("weighted-colimit-route-agreement", name, routes)


def _check_variation_for_category(rec: _Recorder, ctx: _CatContext):
    c, name = ctx.cat, ctx.name
    rep = ctx.report

    try:
        p = ctx.pseudofunctor()
    except QlabError as e:
        rec.record("pseudofunctor-roundtrip", name, False, e)
        return
    pf_report = validate_pseudofunctor(p)
    rec.record("tensored-category-gives-closed-pseudofunctor", name,
               pf_report.valid and pf_report.closed, pf_report.witnesses)

    back = pseudofunctor_to_category(p)
    iso = category_isomorphism(c, back)
    rec.record("pseudofunctor-roundtrip", name, iso is not None)

    p_back = category_to_pseudofunctor(back)
    rec.record("pseudofunctor-roundtrip-reverse", name,
               pseudofunctor_isomorphism(p, p_back) is not None)

    levels = classify_pseudofunctor(p)
    ok = (levels.bottomed_level
          and levels.maps_level == rep.cotensored
          and levels.cocont_level == rep.cocomplete
          and levels.skeletal_level == (ctx.skeletal and rep.cocomplete))
    rec.record("pseudofunctor-level-correspondence", name, ok,
               (levels, rep.flags(), ctx.skeletal))

    fibs_nonempty = [x for x in c.base.objects if p.fiber(x).elements]
    dichotomy = not fibs_nonempty or len(fibs_nonempty) == len(c.base.objects)
    rec.record("fibers-all-empty-or-all-nonempty", name, dichotomy,
               fibs_nonempty)

    bad = None
    for x in c.base.objects:
        zero = c.base.zero(x, x)
        for e in p.fiber(x).elements:
            img = p.act(x, x, zero)(e)
            if not all(p.fiber(x).le(img, v) for v in p.fiber(x).elements):
                bad = (x, e)
    rec.record("bottom-arrow-action-gives-bottom", name, bad is None, bad)

    if levels.maps_level:
        bad = None
        for x in c.base.objects:
            act0 = p.act(x, x, c.base.zero(x, x))
            fib = p.fiber(x)
            for e in fib.elements:
                below = [y for y in fib.elements if fib.le(act0(y), e)]
                greatest = [g for g in below if all(fib.le(a, g) for a in below)]
                if not greatest or not all(fib.le(v, greatest[0])
                                           for v in fib.elements):
                    bad = (x, e)
        rec.record("maps-level-tops-from-bottom-adjoint", name, bad is None, bad)


# --- functor-level catalog -----------------------------------------------------------


def check_functor_pairs(rec: _Recorder, base_tag: str,
                        contexts: list[_CatContext]):
    """Adjunction, synthesis, laxnat and cocontinuity checks over every
    functor between the given categories."""
    for actx in contexts:
        for bctx in contexts:
            a_cat, b_cat = actx.cat, bctx.cat
            functors_ab = all_functors(a_cat, b_cat)
            functors_ba = all_functors(b_cat, a_cat)
            pair_tag = f"{base_tag}:{actx.name}->{bctx.name}"

            bad = None
            for fi, f in enumerate(functors_ab):
                for gi, g in enumerate(functors_ba):
                    whole, _ = check_adjunction(f, g)
                    fiberwise = all(
                        check_order_adjunction(fiber_map(f, x), fiber_map(g, x))
                        for x in a_cat.base.objects)
                    if whole != fiberwise:
                        bad = (fi, gi, whole, fiberwise)
            rec.record("adjunction-iff-fiberwise-adjunctions", pair_tag,
                       bad is None, bad)

            if not actx.report.tensored:
                continue

            bad = None
            for fi, f in enumerate(functors_ab):
                preserves = tensor_preservation_failure(f) is None
                fib_adjoints = all(has_right_adjoint(fiber_map(f, x))
                                   for x in a_cat.base.objects)
                try:
                    g = synthesize_right_adjoint(f)
                    synth = check_adjunction(f, g)[0]
                except QlabError:
                    synth = False
                if synth != (preserves and fib_adjoints):
                    bad = (fi, dict(f.mapping), preserves, fib_adjoints, synth)
            rec.record("left-adjoint-iff-tensors-and-fiber-adjoints", pair_tag,
                       bad is None, bad)

            if not bctx.report.tensored:
                continue
            pa, pb = actx.pseudofunctor(), bctx.pseudofunctor()

            bad = None
            for fi, f in enumerate(functors_ab):
                comps = {
                    x: MonotoneMap(pa.fiber(x), pb.fiber(x),
                                   {o: f(o) for o in pa.fiber(x).elements})
                    for x in a_cat.base.objects}
                try:
                    nat = validate_laxnat(pa, pb, comps)
                except QlabError as e:
                    bad = (fi, "laxity", e)
                    continue
                flags = classify_transformation(nat)
                preserves = tensor_preservation_failure(f) is None
                if flags.pseudonatural != preserves:
                    bad = (fi, "pseudonatural-vs-preservation")
                if flags.pseudonatural and not flags.bottom_preserving_components:
                    bad = (fi, "pseudonatural-but-bottom-lost")
                try:
                    synthesize_right_adjoint(f)
                    synth = True
                except QlabError:
                    synth = False
                if synth != (flags.pseudonatural and flags.left_adjoint_components):
                    bad = (fi, "adjoint-vs-components", synth, flags)
            rec.record("laxnat-correspondence", pair_tag, bad is None, bad)

            bad = None
            for fi, f in enumerate(functors_ab):
                for gi, g in enumerate(functors_ab):
                    pointwise = all(b_cat.leq(f(o), g(o)) for o in a_cat.objects)
                    nf = validate_laxnat(pa, pb, {
                        x: MonotoneMap(pa.fiber(x), pb.fiber(x),
                                       {o: f(o) for o in pa.fiber(x).elements})
                        for x in a_cat.base.objects})
                    ng = validate_laxnat(pa, pb, {
                        x: MonotoneMap(pa.fiber(x), pb.fiber(x),
                                       {o: g(o) for o in pa.fiber(x).elements})
                        for x in a_cat.base.objects})
                    if pointwise != laxnat_leq(nf, ng):
                        bad = (fi, gi)
            rec.record("functor-order-matches-laxnat-order", pair_tag,
                       bad is None, bad)

            if actx.report.cocomplete and bctx.report.cocomplete:
                def cocont_check(a_cat=a_cat, b_cat=b_cat, actx=actx,
                                 functors_ab=functors_ab):
                    for fi, f in enumerate(functors_ab):
                        preserves_colims = True
                        for type_id in a_cat.base.objects:
                            for phi in enumerate_presheaves(a_cat, type_id,
                                                            actx.cap):
                                w = weighted_colimit(phi, identity_functor(a_cat))["o"]
                                w_img = weighted_colimit(phi, f)["o"]
                                if f(w.representative()) not in w_img.candidates:
                                    preserves_colims = False
                        preserves_tensors = tensor_preservation_failure(f) is None
                        preserves_sups = True
                        for type_id in a_cat.base.objects:
                            for fam in subsets(a_cat.fiber_objects(type_id)):
                                s = fiber_supremum(a_cat, type_id, fam)
                                image = fiber_supremum(b_cat, type_id,
                                                       [f(x) for x in fam])
                                if f(s.representative()) not in image.candidates:
                                    preserves_sups = False
                        try:
                            synthesize_right_adjoint(f)
                            synth = True
                        except QlabError:
                            synth = False
                        if not (preserves_colims == (preserves_tensors and
                                                     preserves_sups) == synth):
                            return False, (fi, preserves_colims,
                                           preserves_tensors, preserves_sups,
                                           synth)
                    return True, None
                rec.guard("cocontinuous-iff-tensors-and-sups", pair_tag,
                          cocont_check)


# --- modules and actions ---------------------------------------------------------------


def check_modules(rec: _Recorder, modules: list[tuple[str, object]]):
    for name, m in modules:
        try:
            trip = module_roundtrip(m)
            rec.record("module-category-roundtrip", name, trip.ok)
        except QlabError as e:
            rec.record("module-category-roundtrip", name, False, e)
        levels = classify_pseudofunctor(module_to_pseudofunctor(m))
        rec.record("module-classifies-skeletal-cocomplete", name,
                   levels.skeletal_level, levels)


def check_actions(rec: _Recorder, actions: list[tuple[str, object]]):
    for name, a in actions:
        try:
            m = action_to_module(a)
            back = module_to_action(m)
            ok = back == a
            one_object = len(a.quantale.objects) == 1
            again = action_to_module(back)
            rec.record("action-module-inverse", name,
                       ok and one_object and again == m)
        except QlabError as e:
            rec.record("action-module-inverse", name, False, e)
            continue

        bad = None
        star = a.quantale.objects[0]
        hom = a.quantale.hom(star, star)
        for endo in all_monotone_maps(a.carrier, a.carrier):
            if not is_sup_morphism(endo)[0]:
                continue
            flag, _ = action_morphism_check(endo.table, a, a)
            naturality = all(
                endo.table[m.act(star, star, f)(e)] ==
                m.act(star, star, f)(endo.table[e])
                for f in hom.elements for e in a.carrier.elements)
            if flag != naturality:
                bad = dict(endo.table)
        rec.record("morphism-check-matches-naturality", name, bad is None, bad)


def check_bundled_pseudofunctors(rec: _Recorder,
                                 pseudofunctors: list[tuple[str, object]]):
    for name, p in pseudofunctors:
        try:
            c = pseudofunctor_to_category(p)
            p_back = category_to_pseudofunctor(c)
            rec.record("pseudofunctor-category-roundtrip", name,
                       pseudofunctor_isomorphism(p, p_back) is not None)
        except QlabError as e:
            rec.record("pseudofunctor-category-roundtrip", name, False, e)


# --- worked facts -----------------------------------------------------------------------


def check_worked_facts(rec: _Recorder):
    rel = inst.qrel3()

    def arrow_value(obj: str) -> str:
        return obj.split(".", 1)[1]

    p1 = inst.p1_qrel3()
    bad = None
    for f_obj in p1.objects:
        x_t, f_val = p1.t(f_obj), arrow_value(f_obj)
        for u in rel.objects:
            for g in rel.hom(u, x_t).elements:
                w = tensor(p1, f_obj, QArrow(u, x_t, g))
                expected = f"{u}.{rel.compose_elt(u, x_t, '1', f_val, g)}"
                if w.candidates != (expected,):
                    bad = (f_obj, g, w.candidates)
    rec.record("presheaf-tensor-is-composition", "p1_qrel3", bad is None, bad)

    pd1 = inst.pd1_qrel3()
    bad = None
    for f_obj in pd1.objects:
        y_t, f_val = pd1.t(f_obj), arrow_value(f_obj)
        for m in rel.objects:
            for k in rel.hom(y_t, m).elements:
                w = cotensor(pd1, QArrow(y_t, m, k), f_obj)
                expected = f"{m}.{rel.compose_elt('1', y_t, m, k, f_val)}"
                if w.candidates != (expected,):
                    bad = (f_obj, k, w.candidates)
    rec.record("copresheaf-cotensor-is-composition", "pd1_qrel3", bad is None, bad)

    bad = None
    for f_obj in p1.objects:
        x_t, f_val = p1.t(f_obj), arrow_value(f_obj)
        for v in rel.objects:
            for h in rel.hom(x_t, v).elements:
                w = cotensor(p1, QArrow(x_t, v, h), f_obj)
                expected = f"{v}.{rel.extension_elt(x_t, v, '1', h, f_val)}"
                if w.candidates != (expected,):
                    bad = (f_obj, h, w.candidates)
    rec.record("presheaf-cotensor-is-extension", "p1_qrel3", bad is None, bad)

    bad = None
    for f_obj in pd1.objects:
        y_t, f_val = pd1.t(f_obj), arrow_value(f_obj)
        for n in rel.objects:
            for l in rel.hom(n, y_t).elements:
                w = tensor(pd1, f_obj, QArrow(n, y_t, l))
                expected = f"{n}.{rel.lifting_elt(n, y_t, '1', l, f_val)}"
                if w.candidates != (expected,):
                    bad = (f_obj, l, w.candidates)
    rec.record("copresheaf-tensor-is-lifting", "pd1_qrel3", bad is None, bad)

    z_rep = completeness_report(inst.zero_qrel3())
    rec.record("singleton-fibers-order-but-not-conically-cocomplete",
               "zero_qrel3",
               z_rep.order_cocomplete and not z_rep.conically_cocomplete
               and not z_rep.cocomplete, z_rep.flags())

    p_rep = completeness_report(p1)
    rec.record("presheaf-category-fully-cocomplete", "p1_qrel3",
               all(p_rep.flags().values()), p_rep.flags())

    q2 = inst.q2()
    bad = None
    for n in range(1, 5):
        for p in all_preorders(n):
            cat = preorder_as_2category(q2, p)
            rep = completeness_report(cat)
            if rep.tensored != bool(p.bottoms()):
                bad = (n, sorted(p.pairs))
    rec.record("order-tensored-iff-bottom", "preorders<=4", bad is None, bad)


# --- entry point -------------------------------------------------------------------------


def run_suite(directory: Path | str | None = None,
              max_objects: int = 2,
              max_carrier: int = 4,
              cap: int | None = None) -> SuiteReport:
    """Run the whole catalog: file checks over ``directory`` (bundled
    instances by default), the order/quantaloid/distributor cores, the
    per-category and per-functor theorem catalogs over the bundled
    categories plus the exhaustive sweep, and the worked facts.

    ``max_objects=0`` disables the sweep; ``max_carrier`` bounds the
    lattice enumeration; ``cap`` overrides the presheaf enumeration cap.
    """
    from .data import instances_dir

    rec = _Recorder()
    directory = Path(directory) if directory else instances_dir()
    registry = Registry(directory, fallback=bundled_registry())
    pool = check_files(rec, directory, registry)

    check_order_core(rec, max_carrier)

    quantaloids = pool["quantaloid"] or [("q2", inst.q2()), ("q3", inst.q3()),
                                         ("qrel3", inst.qrel3())]
    check_quantaloids(rec, quantaloids)
    check_presheaf_constructions(rec, quantaloids)

    sweep_bases = [("q2", inst.q2()), ("q3", inst.q3())]
    check_distributor_calculus(rec, sweep_bases)

    def contexts_for(named_cats):
        out = []
        for name, cat in named_cats:
            try:
                out.append(_CatContext(name, cat, cap))
            except EnumerationCapExceeded as e:
                rec.skip("category-theorem-catalog", name, e)
        return out

    for ctx in contexts_for(pool["category"]):
        check_category(rec, ctx)

    if max_objects > 0:
        for base_name, base in sweep_bases:
            sweep_ctxs = contexts_for(
                (f"sweep[{base_name}]#{i}", cat)
                for i, cat in enumerate(all_categories(base, max_objects)))
            for ctx in sweep_ctxs:
                check_category(rec, ctx)
            check_functor_pairs(rec, f"sweep[{base_name}]", sweep_ctxs)

    check_modules(rec, pool["module"])
    check_actions(rec, pool["action"])
    check_bundled_pseudofunctors(rec, pool["pseudofunctor"])
    check_worked_facts(rec)

    return rec.report
