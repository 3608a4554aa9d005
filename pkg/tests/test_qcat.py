import itertools

import pytest

from qlab import instances as inst
from qlab.errors import (
    ActionAxiomFails,
    CompositionFails,
    EnumerationCapExceeded,
    FunctorInequalityFails,
    IdentityBelowUnit,
    TypeNotPreserved,
)
from qlab.qcat import (
    Distributor,
    dist_compose,
    dist_leq,
    dist_residual,
    enumerate_presheaves,
    fibers,
    free_fiber_category,
    identity_distributor,
    one_object_category,
    opposite_category,
    presheaf_category,
    validate_category,
    validate_distributor,
    validate_functor,
)
from qlab.order import FinitePreorder
from qlab.sweep import all_categories


class TestValidateCategory:
    def test_chain3_is_valid(self):
        c = inst.chain3_q2()
        assert c.leq("bot", "top") and not c.leq("top", "bot")

    def test_identity_below_unit_is_rejected(self):
        q = inst.q2()
        with pytest.raises(IdentityBelowUnit):
            validate_category(q, ["x"], {"x": "*"}, {("x", "x"): "0"})

    def test_composition_closure_is_rejected(self):
        c = inst.chain3_q2()
        hom = dict(c.hom)
        hom[("top", "bot")] = "1"
        hom[("bot", "top")] = "0"
        with pytest.raises(CompositionFails):
            validate_category(c.base, c.objects, c.type_of, hom)

    def test_zero_category_is_valid(self):
        c = inst.zero_qrel3()
        assert c.hom_elt("z1", "z1") == "1"
        assert c.hom_elt("zu", "z1") == "0"


class TestFibers:
    def test_chain3_single_skeletal_fiber(self):
        fibs, skeletal = fibers(inst.chain3_q2())
        assert skeletal and list(fibs) == ["*"]
        assert fibs["*"].elements == ("bot", "mid", "top")

    def test_zero_has_three_singletons(self):
        fibs, skeletal = fibers(inst.zero_qrel3())
        assert skeletal
        assert sorted(len(f.elements) for f in fibs.values()) == [1, 1, 1]

    def test_presheaf_fiber_sizes(self):
        fibs, skeletal = fibers(inst.p1_qrel3())
        assert skeletal
        assert {t: len(f.elements) for t, f in fibs.items()} == \
            {"0": 1, "u": 2, "1": 3}


class TestValidateFunctor:
    def test_type_change_is_rejected(self):
        z = inst.zero_qrel3()
        with pytest.raises(TypeNotPreserved):
            validate_functor(z, z, {"z0": "zu", "zu": "zu", "z1": "z1"})

    def test_inequality_violation_is_rejected(self):
        c = inst.chain3_q2()
        with pytest.raises(FunctorInequalityFails):
            validate_functor(c, c, {"bot": "top", "mid": "mid", "top": "bot"})


class TestDistributorCalculus:
    def test_identity_distributor_is_a_unit(self):
        c = inst.chain3_q2()
        ident = identity_distributor(c)
        phi = inst.distributor_down_chain3()
        assert dist_compose(ident, phi) == phi

    def test_one_object_all_one_table(self):
        star = inst.star_q2()
        d = validate_distributor(star, star, {("o", "o"): "1"})
        assert dist_compose(d, d).at("o", "o") == "1"

    def test_zero_category_hom_is_idempotent(self):
        z = inst.zero_qrel3()
        ident = identity_distributor(z)
        assert dist_compose(ident, ident) == ident

    def test_action_axiom_violation_is_rejected(self):
        c = inst.chain3_q2()
        star = inst.star_q2()
        # not down-closed: picks out {mid} only
        with pytest.raises(ActionAxiomFails):
            validate_distributor(star, c, {("bot", "o"): "0",
                                           ("mid", "o"): "1",
                                           ("top", "o"): "0"})

    def test_residual_of_identity_is_identity(self):
        c = inst.chain3_q2()
        ident = identity_distributor(c)
        phi = inst.distributor_down_chain3()
        assert dist_residual(ident, phi) == phi

    def test_residual_of_bottom_is_top(self):
        q = inst.q2()
        a = one_object_category(q, "*", "a")
        b = one_object_category(q, "*", "b")
        c = one_object_category(q, "*", "c")
        psi = validate_distributor(b, c, {("c", "b"): "0"})
        theta = validate_distributor(a, c, {("c", "a"): "0"})
        assert dist_residual(psi, theta).at("b", "a") == "1"

    def test_residual_is_the_largest_solution_by_scan(self):
        q = inst.q3()
        cats = [c for c in all_categories(q, 2) if len(c.objects) == 2][:3]
        for a, b in itertools.product(cats[:2], cats[:2]):
            keys = [(y, x) for y in b.objects for x in a.objects]
            all_tables = itertools.product(
                *[q.hom("*", "*").elements for _ in keys])
            xis = []
            for combo in all_tables:
                try:
                    xis.append(validate_distributor(a, b, dict(zip(keys, combo))))
                except Exception:
                    pass
            psi = identity_distributor(b)
            for theta in xis[:6]:
                theta2 = validate_distributor(a, b, dict(theta.table))
                res = dist_residual(psi, theta2)
                for xi in xis:
                    lhs = dist_leq(dist_compose(psi, xi), theta2)
                    assert lhs == dist_leq(xi, res)


class TestConstructors:
    def test_presheaf_category_object_count(self):
        assert len(presheaf_category(inst.qrel3(), "1").objects) == 6

    def test_presheaf_fiber_order_is_the_hom_order(self):
        p1 = inst.p1_qrel3()
        lat = inst.qrel3().hom("1", "1")
        for a in lat.elements:
            for b in lat.elements:
                assert p1.leq(f"1.{a}", f"1.{b}") == lat.le(a, b)

    def test_one_object_category(self):
        star = one_object_category(inst.qrel3(), "u")
        assert star.hom_elt("o", "o") == "u"

    def test_free_fiber_category(self):
        order = FinitePreorder(("x", "y"),
                               frozenset({("x", "x"), ("y", "y"), ("x", "y")}))
        c = free_fiber_category(inst.q3(), order, "*")
        assert c.hom_elt("x", "y") == "1" and c.hom_elt("y", "x") == "0"

    def test_opposite_involution_on_categories(self):
        for make in inst.BUNDLED_CATEGORIES.values():
            c = make()
            assert opposite_category(opposite_category(c)) == c

    def test_opposite_swaps_homs(self):
        c = inst.chain3_q2()
        assert opposite_category(c).hom_elt("bot", "top") == c.hom_elt("top", "bot")


class TestEnumeratePresheaves:
    def test_one_object_base_has_two(self):
        star = inst.star_q2()
        assert len(enumerate_presheaves(star, "*")) == 2

    def test_zero_category_vacuous_axiom(self):
        assert len(enumerate_presheaves(inst.zero_qrel3(), "1")) == 6

    def test_chain3_presheaves_are_downsets(self):
        phis = enumerate_presheaves(inst.chain3_q2(), "*")
        assert len(phis) == 4
        for phi in phis:
            chosen = {x for x in ("bot", "mid", "top") if phi.at(x, "o") == "1"}
            for x in chosen:
                for y in ("bot", "mid", "top"):
                    if inst.chain3_q2().leq(y, x):
                        assert y in chosen

    def test_cap_is_enforced(self):
        with pytest.raises(EnumerationCapExceeded):
            enumerate_presheaves(inst.p1_qrel3(), "1", cap=10)

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("QLAB_CAP", "1")
        with pytest.raises(EnumerationCapExceeded):
            enumerate_presheaves(inst.chain3_q2(), "*")

    def test_enumeration_is_deterministic(self):
        a = [dict(p.table) for p in enumerate_presheaves(inst.p1_qrel3(), "u")]
        b = [dict(p.table) for p in enumerate_presheaves(inst.p1_qrel3(), "u")]
        assert a == b


def test_every_presheaf_satisfies_the_action_axiom():
    c = inst.chain3_q2()
    for phi in enumerate_presheaves(c, "*"):
        validate_distributor(phi.source, phi.target, phi.table)


def test_underlying_order_is_a_preorder_everywhere():
    from qlab.order import validate_order
    for make in inst.BUNDLED_CATEGORIES.values():
        fibs, _ = fibers(make())
        for fib in fibs.values():
            validate_order(fib.preorder.elements, fib.preorder.pairs)
