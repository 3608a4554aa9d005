"""Structured errors raised by validators and constructors.

Every error carries the witness data that exhibits the violation, so a
failing check can be replayed by hand.  ``code`` is the stable name used
in counterexample file headers (``# expect-error: <code>``).
"""

from __future__ import annotations


class QlabError(Exception):
    """Base class for all structured errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- order axioms ---------------------------------------------------------

class OrderError(QlabError):
    pass


class MissingReflexivity(OrderError):
    def __init__(self, a):
        self.a = a
        super().__init__(f"missing reflexive pair: {a} <= {a}")


class BrokenTransitivity(OrderError):
    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        super().__init__(f"{a} <= {b} and {b} <= {c} but not {a} <= {c}")


class NotAntisymmetric(OrderError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"{a} <= {b} and {b} <= {a} for distinct elements")


class NoJoin(OrderError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        if a is None:
            super().__init__("the empty subset has no join (no bottom element)")
        else:
            super().__init__(f"elements {a}, {b} have no least upper bound")


class NotMonotone(OrderError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"{a} <= {b} but images are not ordered")


class NotSupPreserving(OrderError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"join of {sorted(self.subset)} is not preserved")


class BadAdjunction(OrderError):
    def __init__(self, side, witness):
        self.side, self.witness = side, witness
        super().__init__(f"adjunction law fails ({side}) at {witness}")


# --- quantaloid axioms ----------------------------------------------------

class QuantaloidError(QlabError):
    pass


class NotAssociative(QuantaloidError):
    def __init__(self, h, g, f):
        self.h, self.g, self.f = h, g, f
        super().__init__(f"h∘(g∘f) ≠ (h∘g)∘f for h={h}, g={g}, f={f}")


class UnitLawFails(QuantaloidError):
    def __init__(self, f, side):
        self.f, self.side = f, side
        super().__init__(f"identity fails on the {side} of {f}")


class NotJoinPreserving(QuantaloidError):
    def __init__(self, position, witness):
        self.position, self.witness = position, witness
        super().__init__(
            f"composition does not preserve joins in argument {position}; "
            f"witness {witness}")


class BottomNotAbsorbed(QuantaloidError):
    def __init__(self, f):
        self.f = f
        super().__init__(f"composite with the bottom arrow is not bottom: {f}")


class ValidationFailed(QuantaloidError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(str(detail))


class TypeMismatch(QlabError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(str(detail))


# --- enriched-category axioms ---------------------------------------------

class CategoryError(QlabError):
    pass


class IdentityBelowUnit(CategoryError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"hom({x},{x}) is not above the identity arrow")


class CompositionFails(CategoryError):
    def __init__(self, z, y, x):
        self.z, self.y, self.x = z, y, x
        super().__init__(f"hom({z},{y})∘hom({y},{x}) ≰ hom({z},{x})")


class TypeNotPreserved(CategoryError):
    def __init__(self, a):
        self.a = a
        super().__init__(f"object map changes the type of {a}")


class FunctorInequalityFails(CategoryError):
    def __init__(self, a2, a):
        self.a2, self.a = a2, a
        super().__init__(f"hom({a2},{a}) ≰ hom(F{a2},F{a})")


class ActionAxiomFails(CategoryError):
    def __init__(self, side, witness):
        self.side, self.witness = side, witness
        super().__init__(f"distributor action fails on the {side} at {witness}")


class EnumerationCapExceeded(QlabError):
    def __init__(self, size):
        self.size = size
        super().__init__(f"table space of size {size} exceeds the enumeration cap")


# --- (co)limit machinery ---------------------------------------------------

class CompletionError(QlabError):
    pass


class SourceNotTensored(CompletionError):
    def __init__(self, y, f):
        self.y, self.f = y, f
        super().__init__(f"tensor of {y} with {f} does not exist in the source")


class TensorsNotPreserved(CompletionError):
    def __init__(self, y, f):
        self.y, self.f = y, f
        super().__init__(f"image of the tensor of {y} with {f} is not a tensor")


class NoFiberAdjoint(CompletionError):
    def __init__(self, type_id, b):
        self.type_id, self.b = type_id, b
        super().__init__(f"no greatest preimage below {b} in the fiber over {type_id}")


class RouteDisagreement(CompletionError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(str(detail))


# --- pseudofunctors, modules, actions --------------------------------------

class VariationError(QlabError):
    pass


class NotTensored(VariationError):
    def __init__(self, y, f):
        self.y, self.f = y, f
        super().__init__(f"tensor of {y} with {f} does not exist")


class NotClosed(VariationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"arrow action does not preserve joins; witness {witness}")


class NotPseudofunctorial(VariationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"pseudofunctor law fails at {witness}")


class NotSkeletal(VariationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"distinct isomorphic objects: {witness}")


class NotCocomplete(VariationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"missing colimit: {witness}")


class ModuleLawFails(VariationError):
    def __init__(self, law, witness):
        self.law, self.witness = law, witness
        super().__init__(f"module law '{law}' fails at {witness}")


class ActionLawFails(VariationError):
    def __init__(self, law, witness):
        self.law, self.witness = law, witness
        super().__init__(f"action law '{law}' fails at {witness}")


class NotOneObject(VariationError):
    def __init__(self, objects):
        self.objects = tuple(objects)
        super().__init__(f"expected a one-object base, got {list(objects)}")


# --- file formats -----------------------------------------------------------

class FormatError(QlabError):
    pass


class FormatSyntaxError(FormatError):
    def __init__(self, line, col, detail):
        self.line, self.col, self.detail = line, col, detail
        super().__init__(f"line {line}, column {col}: {detail}")


class UnresolvedReference(FormatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"referenced instance '{name}' was not found")


class PartialTable(FormatError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"table entry missing for {key}")
