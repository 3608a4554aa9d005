"""Pseudofunctors, modules and actions, and the equivalences between them
and (skeletal, cocomplete) enriched categories."""

import pytest

from qlab import instances as inst
from qlab.errors import (
    ActionLawFails,
    ModuleLawFails,
    NotClosed,
    NotOneObject,
    NotSkeletal,
    NotTensored,
    ValidationFailed,
)
from qlab.order import MonotoneMap, validate_order
from qlab.qcat import category_isomorphism, validate_category
from qlab.variation import (
    Pseudofunctor2,
    QModule,
    QuantaleAction,
    action_morphism_check,
    action_to_module,
    category_to_pseudofunctor,
    classify_pseudofunctor,
    classify_transformation,
    functor_to_laxnat,
    module_isomorphism,
    module_roundtrip,
    module_to_action,
    module_to_pseudofunctor,
    pseudofunctor_isomorphism,
    pseudofunctor_to_category,
    validate_action,
    validate_module,
    validate_pseudofunctor,
)


def two_chain():
    return validate_order(["x0", "x1"],
                          [("x0", "x0"), ("x1", "x1"), ("x0", "x1")])


class TestCategoryToPseudofunctor:
    def test_chain3_actions(self):
        p = category_to_pseudofunctor(inst.chain3_q2())
        assert dict(p.act("*", "*", "1").table) == \
            {"bot": "bot", "mid": "mid", "top": "top"}
        assert dict(p.act("*", "*", "0").table) == \
            {"bot": "bot", "mid": "bot", "top": "bot"}

    def test_presheaf_category_acts_by_precomposition(self):
        p = category_to_pseudofunctor(inst.p1_qrel3())
        rel = inst.qrel3()
        for x in rel.objects:
            for y in rel.objects:
                for g in rel.hom(x, y).elements:
                    for f in rel.hom(y, "1").elements:
                        composed = rel.compose_elt(x, y, "1", f, g)
                        assert p.act(x, y, g)(f"{y}.{f}") == f"{x}.{composed}"

    def test_empty_category_gives_empty_pseudofunctor(self):
        empty = validate_category(inst.q2(), [], {}, {})
        p = category_to_pseudofunctor(empty)
        assert p.fiber("*").elements == ()
        report = validate_pseudofunctor(p)
        assert report.valid and report.closed

    def test_untensored_source_is_rejected(self):
        with pytest.raises(NotTensored):
            category_to_pseudofunctor(inst.zero_qrel3())


class TestValidatePseudofunctor:
    def test_builder_output_is_valid_and_closed(self):
        report = validate_pseudofunctor(
            category_to_pseudofunctor(inst.chain3_q2()))
        assert report.valid and report.closed

    def test_bottom_arrow_acting_as_identity_is_not_closed(self):
        fib = two_chain()
        ident = MonotoneMap(fib, fib, {"x0": "x0", "x1": "x1"})
        p = Pseudofunctor2(inst.q2(), {"*": fib},
                           {("*", "*", "0"): ident, ("*", "*", "1"): ident})
        report = validate_pseudofunctor(p)
        assert report.valid and not report.closed
        assert report.witnesses["closed"][-1] == "empty-join"

    def test_unit_law_mutation_is_invalid(self):
        fib = two_chain()
        const = MonotoneMap(fib, fib, {"x0": "x0", "x1": "x0"})
        p = Pseudofunctor2(inst.q2(), {"*": fib},
                           {("*", "*", "0"): const, ("*", "*", "1"): const})
        report = validate_pseudofunctor(p)
        assert not report.valid
        assert "unit" in report.witnesses


class TestPseudofunctorToCategory:
    def test_round_trip_from_chain3(self):
        c = inst.chain3_q2()
        back = pseudofunctor_to_category(category_to_pseudofunctor(c))
        assert category_isomorphism(c, back) is not None

    def test_two_chain_joins_formula(self):
        c = pseudofunctor_to_category(inst.pseudofunctor_chain2_q2())
        assert c.hom_elt("*.x0", "*.x1") == "1"
        assert c.hom_elt("*.x1", "*.x0") == "0"
        assert c.hom_elt("*.x0", "*.x0") == "1"
        assert c.hom_elt("*.x1", "*.x1") == "1"

    def test_empty_pseudofunctor_gives_empty_category(self):
        empty = validate_category(inst.q2(), [], {}, {})
        p = category_to_pseudofunctor(empty)
        assert pseudofunctor_to_category(p).objects == ()

    def test_non_closed_input_is_rejected(self):
        fib = two_chain()
        ident = MonotoneMap(fib, fib, {"x0": "x0", "x1": "x1"})
        p = Pseudofunctor2(inst.q2(), {"*": fib},
                           {("*", "*", "0"): ident, ("*", "*", "1"): ident})
        with pytest.raises(NotClosed):
            pseudofunctor_to_category(p)

    def test_invalid_input_is_rejected(self):
        fib = two_chain()
        const = MonotoneMap(fib, fib, {"x0": "x0", "x1": "x0"})
        p = Pseudofunctor2(inst.q2(), {"*": fib},
                           {("*", "*", "0"): const, ("*", "*", "1"): const})
        with pytest.raises(ValidationFailed):
            pseudofunctor_to_category(p)

    def test_pseudofunctor_round_trip_up_to_iso(self):
        p = inst.pseudofunctor_chain2_q2()
        back = category_to_pseudofunctor(pseudofunctor_to_category(p))
        assert pseudofunctor_isomorphism(p, back) is not None


class TestClassification:
    def test_chain3_reaches_every_level(self):
        levels = classify_pseudofunctor(
            category_to_pseudofunctor(inst.chain3_q2()))
        assert levels.bottomed_level and levels.maps_level
        assert levels.cocont_level and levels.skeletal_level

    def test_duplicated_object_loses_skeletality_only(self):
        q = inst.q2()
        objs = ["bot", "mid", "mid2", "top"]
        rank = {"bot": 0, "mid": 1, "mid2": 1, "top": 2}
        c = validate_category(
            q, objs, {o: "*" for o in objs},
            {(y, x): "1" if rank[y] <= rank[x] else "0"
             for y in objs for x in objs})
        levels = classify_pseudofunctor(category_to_pseudofunctor(c))
        assert levels.cocont_level and not levels.skeletal_level

    def test_tensored_not_cotensored_fails_maps_level(self):
        # bottom plus two maximal incomparable points: tensored (bottom
        # exists) but <0, x> needs a top
        q = inst.q2()
        objs = ["b", "p", "q"]
        le = {("b", "b"), ("p", "p"), ("q", "q"), ("b", "p"), ("b", "q")}
        c = validate_category(
            q, objs, {o: "*" for o in objs},
            {(y, x): "1" if (y, x) in le else "0" for y in objs for x in objs})
        from qlab.completion import completeness_report
        rep = completeness_report(c)
        assert rep.tensored and not rep.cotensored
        levels = classify_pseudofunctor(category_to_pseudofunctor(c))
        assert levels.bottomed_level and not levels.maps_level


class TestLaxNat:
    def test_identity_functor_gives_identity_transformation(self):
        t = functor_to_laxnat(inst.functor_id_chain3())
        flags = classify_transformation(t)
        assert flags.pseudonatural and flags.left_adjoint_components
        assert flags.bottom_preserving_components
        assert flags.sup_morphism_components

    def test_constant_bottom_is_pseudonatural(self):
        flags = classify_transformation(
            functor_to_laxnat(inst.functor_bot_chain3()))
        assert flags.pseudonatural and flags.left_adjoint_components

    def test_collapse_is_lax_but_not_pseudonatural(self):
        flags = classify_transformation(
            functor_to_laxnat(inst.functor_collapse_chain3()))
        assert not flags.pseudonatural


class TestModules:
    def test_bundled_modules_round_trip(self):
        for make in inst.BUNDLED_MODULES.values():
            trip = module_roundtrip(make())
            assert trip.ok

    def test_category_round_trip(self):
        trip = module_roundtrip(inst.chain3_q2())
        assert trip.ok
        assert trip.kind == "category"

    def test_module_of_chain3_has_the_expected_actions(self):
        trip = module_roundtrip(inst.chain3_q2())
        m = trip.counterpart
        assert dict(m.act("*", "*", "0").table) == \
            {"bot": "bot", "mid": "bot", "top": "bot"}

    def test_non_skeletal_category_is_rejected(self):
        q = inst.q2()
        c = validate_category(
            q, ["x", "y"], {"x": "*", "y": "*"},
            {("x", "x"): "1", ("y", "y"): "1", ("x", "y"): "1", ("y", "x"): "1"})
        with pytest.raises(NotSkeletal):
            module_roundtrip(c)

    def test_strict_unit_law_is_enforced(self):
        lat = validate_order(["x0", "x1"],
                             [("x0", "x0"), ("x1", "x1"), ("x0", "x1")],
                             require_suplattice=True)
        collapse = MonotoneMap(lat, lat, {"x0": "x0", "x1": "x0"})
        m = QModule(inst.q2(), {"*": lat},
                    {("*", "*", "0"): collapse, ("*", "*", "1"): collapse})
        with pytest.raises(ModuleLawFails) as err:
            validate_module(m)
        assert err.value.law == "unit"

    def test_module_isomorphism_is_action_aware(self):
        m = inst.module_chain3_q2()
        assert module_isomorphism(m, m) is not None
        levels = classify_pseudofunctor(module_to_pseudofunctor(m))
        assert levels.skeletal_level


class TestActions:
    def test_action_to_module_matches_bundled(self):
        m = action_to_module(inst.action_chain3_q2())
        assert module_isomorphism(m, inst.module_chain3_q2()) is not None

    def test_module_to_action_inverts(self):
        a = inst.action_min_q3()
        assert module_to_action(action_to_module(a)) == a

    def test_unit_mutation_is_caught_with_witness(self):
        good = inst.action_chain3_q2()
        table = dict(good.table)
        table[("top", "1")] = "mid"
        with pytest.raises(ActionLawFails) as err:
            validate_action(QuantaleAction(good.quantale, good.carrier, table))
        assert err.value.law == "unit" and err.value.witness == "top"

    def test_multi_object_base_is_rejected(self):
        m = inst.module_hom1_qrel3()
        with pytest.raises(NotOneObject):
            module_to_action(m)

    def test_identity_is_a_module_morphism(self):
        a = inst.action_chain3_q2()
        alpha = {e: e for e in a.carrier.elements}
        ok, witness = action_morphism_check(alpha, a, a)
        assert ok and witness is None

    def test_non_equivariant_map_is_rejected(self):
        a = inst.action_min_q3()
        # join-preserving, but alpha(a*a) = 1 while alpha(a)*a = a
        alpha = {"0": "0", "a": "1", "1": "1"}
        ok, witness = action_morphism_check(alpha, a, a)
        assert not ok and witness[0] == "equivariance"
