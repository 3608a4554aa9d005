"""Finite quantaloid-enriched category theory, exhaustively checkable.

Layers, from the ground up:

- ``order``:      finite preorders, sup-lattices, monotone maps, adjunctions
- ``quantaloid``: the enrichment base; composition, residuals, opposites
- ``qcat``:       categories, functors, distributors, presheaf enumeration
- ``completion``: tensors, cotensors, conical colimits, completeness flags,
                  adjoint synthesis
- ``variation``:  closed pseudofunctors, sup-valued modules, quantale
                  actions, and the round trips between them and categories
- ``fileformat``, ``cli``, ``suite``: plain-text instance files, the command
                  line, and the exhaustive property-check runner
"""

from .order import (
    FinitePreorder,
    FiniteSupLattice,
    MonotoneMap,
    OrderAdjunction,
    bounds,
    is_sup_morphism,
    monotone_map,
    right_adjoint,
    validate_order,
)
from .quantaloid import (
    QArrow,
    Quantaloid,
    build_quantaloid,
    compose,
    opposite,
    residual,
    validate_quantaloid,
)
from .qcat import (
    Distributor,
    Fiber,
    QCategory,
    QFunctor,
    dist_compose,
    dist_residual,
    enumerate_presheaves,
    fibers,
    validate_category,
    validate_distributor,
    validate_functor,
)
from .completion import (
    CompletenessReport,
    WitnessSet,
    check_adjunction,
    completeness_report,
    conical_colimit,
    cotensor,
    fiber_supremum,
    synthesize_right_adjoint,
    tensor,
    weighted_colimit,
)
from .variation import (
    LaxNat,
    ModuleMorphism,
    Pseudofunctor2,
    QModule,
    QuantaleAction,
    action_to_module,
    category_to_pseudofunctor,
    classify_pseudofunctor,
    classify_transformation,
    functor_to_laxnat,
    module_roundtrip,
    module_to_action,
    pseudofunctor_to_category,
    validate_module,
    validate_pseudofunctor,
)

__version__ = "0.1.0"
