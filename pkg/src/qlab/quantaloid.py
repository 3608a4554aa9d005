"""Finite quantaloids: hom-lattices, composition, residuals, opposites.

A quantaloid here is a finite category whose homs are finite sup-lattices
and whose composition preserves joins in each argument separately.  The
composition argument order is (g, f) ↦ g∘f, "apply g after f".

Residuals (liftings and extensions) are not stored: they are computed as
the join of all candidates satisfying the defining inequality, which is
correct precisely because composition preserves joins.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    BottomNotAbsorbed,
    NotAssociative,
    NotJoinPreserving,
    TypeMismatch,
    UnitLawFails,
    ValidationFailed,
)
from .order import FiniteSupLattice, validate_order


@dataclass(frozen=True)
class QArrow:
    """An element of hom(src, dst), tagged with its endpoints."""

    src: str
    dst: str
    value: str

    def __str__(self) -> str:
        return f"{self.src}->{self.dst}:{self.value}"


@dataclass(frozen=True)
class Quantaloid:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], FiniteSupLattice] = field(repr=False)
    # (X, Y, Z) -> {(g, f): g∘f} with g in hom(Y,Z), f in hom(X,Y)
    composition: Mapping[tuple[str, str, str], Mapping[tuple[str, str], str]] = field(repr=False)
    identities: Mapping[str, str] = field(repr=False)

    def hom(self, x: str, y: str) -> FiniteSupLattice:
        return self.homs[(x, y)]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def zero(self, x: str, y: str) -> str:
        return self.hom(x, y).bottom

    def compose_elt(self, x: str, y: str, z: str, g: str, f: str) -> str:
        return self.composition[(x, y, z)][(g, f)]

    def arrows(self, x: str, y: str) -> Iterable[QArrow]:
        for v in self.hom(x, y).elements:
            yield QArrow(x, y, v)

    def all_arrows(self) -> Iterable[QArrow]:
        for x in self.objects:
            for y in self.objects:
                yield from self.arrows(x, y)

    def lifting_elt(self, x: str, y: str, z: str, f: str, g: str) -> str:
        """[f, g] for f: X→Y, g: Z→Y; the largest h: Z→X with f∘h ≤ g."""
        lat = self.hom(z, y)
        return self.hom(z, x).join(
            h for h in self.hom(z, x).elements
            if lat.le(self.compose_elt(z, x, y, f, h), g))

    def extension_elt(self, x: str, y: str, z: str, f: str, g: str) -> str:
        """{f, g} for f: X→Y, g: X→Z; the largest h: Y→Z with h∘f ≤ g."""
        lat = self.hom(x, z)
        return self.hom(y, z).join(
            h for h in self.hom(y, z).elements
            if lat.le(self.compose_elt(x, y, z, h, f), g))


def compose(q: Quantaloid, g: QArrow, f: QArrow) -> QArrow:
    if f.dst != g.src:
        raise TypeMismatch(f"cannot compose {g} after {f}")
    return QArrow(f.src, g.dst, q.compose_elt(f.src, f.dst, g.dst, g.value, f.value))


def residual(q: Quantaloid, kind: str, f: QArrow, g: QArrow) -> QArrow:
    """Residuate composition: lifting [f,g] or extension {f,g}.

    lifting:   f: X→Y, g: Z→Y  ↦  [f,g]: Z→X,  f∘h ≤ g ⇔ h ≤ [f,g]
    extension: f: X→Y, g: X→Z  ↦  {f,g}: Y→Z,  h∘f ≤ g ⇔ h ≤ {f,g}
    """
    if kind == "lifting":
        if f.dst != g.dst:
            raise TypeMismatch(f"lifting needs a common codomain: {f}, {g}")
        return QArrow(g.src, f.src,
                      q.lifting_elt(f.src, f.dst, g.src, f.value, g.value))
    if kind == "extension":
        if f.src != g.src:
            raise TypeMismatch(f"extension needs a common domain: {f}, {g}")
        return QArrow(f.dst, g.dst,
                      q.extension_elt(f.src, f.dst, g.dst, f.value, g.value))
    raise TypeMismatch(f"unknown residual kind {kind!r}")


def validate_quantaloid(objects: Iterable[str],
                        homs: Mapping[tuple[str, str], FiniteSupLattice],
                        composition: Mapping,
                        identities: Mapping[str, str]) -> Quantaloid:
    """Check the quantaloid axioms by full table scan.

    Order of checks: totality, unit laws, associativity, bottom
    absorption, binary join preservation.  The first violation is raised
    with its witness.
    """
    objects = tuple(objects)
    for x in objects:
        for y in objects:
            if (x, y) not in homs:
                raise ValidationFailed(f"missing hom lattice for ({x},{y})")
    for x in objects:
        if identities.get(x) not in homs[(x, x)].elements:
            raise ValidationFailed(f"identity on {x} is not a hom element")
    for x in objects:
        for y in objects:
            for z in objects:
                table = composition.get((x, y, z))
                if table is None:
                    raise ValidationFailed(f"missing composition table ({x},{y},{z})")
                for g in homs[(y, z)].elements:
                    for f in homs[(x, y)].elements:
                        h = table.get((g, f))
                        if h is None or h not in homs[(x, z)].elements:
                            raise ValidationFailed(
                                f"composition ({x},{y},{z}) is not total at ({g},{f})")

    q = Quantaloid(objects, dict(homs), {k: dict(v) for k, v in composition.items()},
                   dict(identities))

    for x in objects:
        for y in objects:
            for f in q.hom(x, y).elements:
                if q.compose_elt(x, y, y, q.identity(y), f) != f:
                    raise UnitLawFails(QArrow(x, y, f), "left")
                if q.compose_elt(x, x, y, f, q.identity(x)) != f:
                    raise UnitLawFails(QArrow(x, y, f), "right")

    for w, x, y, z in itertools.product(objects, repeat=4):
        for h in q.hom(y, z).elements:
            for g in q.hom(x, y).elements:
                for f in q.hom(w, x).elements:
                    gf = q.compose_elt(w, x, y, g, f)
                    hg = q.compose_elt(x, y, z, h, g)
                    if q.compose_elt(w, y, z, h, gf) != q.compose_elt(w, x, z, hg, f):
                        raise NotAssociative(QArrow(y, z, h), QArrow(x, y, g),
                                             QArrow(w, x, f))

    for x, y, z in itertools.product(objects, repeat=3):
        out = q.hom(x, z)
        for g in q.hom(y, z).elements:
            if q.compose_elt(x, y, z, g, q.zero(x, y)) != out.bottom:
                raise BottomNotAbsorbed(QArrow(y, z, g))
        for f in q.hom(x, y).elements:
            if q.compose_elt(x, y, z, q.zero(y, z), f) != out.bottom:
                raise BottomNotAbsorbed(QArrow(x, y, f))
        for g in q.hom(y, z).elements:
            for f1 in q.hom(x, y).elements:
                for f2 in q.hom(x, y).elements:
                    lhs = q.compose_elt(x, y, z, g, q.hom(x, y).join2(f1, f2))
                    rhs = out.join2(q.compose_elt(x, y, z, g, f1),
                                    q.compose_elt(x, y, z, g, f2))
                    if lhs != rhs:
                        raise NotJoinPreserving(2, (f1, f2))
        for f in q.hom(x, y).elements:
            for g1 in q.hom(y, z).elements:
                for g2 in q.hom(y, z).elements:
                    lhs = q.compose_elt(x, y, z, q.hom(y, z).join2(g1, g2), f)
                    rhs = out.join2(q.compose_elt(x, y, z, g1, f),
                                    q.compose_elt(x, y, z, g2, f))
                    if lhs != rhs:
                        raise NotJoinPreserving(1, (g1, g2))
    return q


def opposite(q: Quantaloid) -> Quantaloid:
    """Transpose homs and reverse composition; an exact involution."""
    homs = {(x, y): q.hom(y, x) for x in q.objects for y in q.objects}
    composition = {}
    for x, y, z in itertools.product(q.objects, repeat=3):
        composition[(x, y, z)] = {
            (g, f): q.compose_elt(z, y, x, f, g)
            for g in q.hom(z, y).elements for f in q.hom(y, x).elements}
    return Quantaloid(q.objects, homs, composition, dict(q.identities))


def chain_lattice(elements: Iterable[str]) -> FiniteSupLattice:
    """The total order listed from bottom to top."""
    elements = list(elements)
    pairs = [(elements[i], elements[j])
             for i in range(len(elements)) for j in range(i, len(elements))]
    return validate_order(elements, pairs, require_suplattice=True)


def powerset_lattice(atoms: Iterable[str]) -> FiniteSupLattice:
    """Subsets of ``atoms`` by inclusion; ids join atom names with '+'."""
    atoms = sorted(atoms)
    sets = [frozenset(c) for r in range(len(atoms) + 1)
            for c in itertools.combinations(atoms, r)]
    name = lambda s: "+".join(sorted(s)) if s else "0"
    pairs = [(name(a), name(b)) for a in sets for b in sets if a <= b]
    return validate_order([name(s) for s in sets], pairs, require_suplattice=True)


def build_quantaloid(kind: str, data: Mapping | None = None) -> Quantaloid:
    """Construct and validate one of the stock bases.

    kind="boolean2":       the two-element quantale {0,1} with meet.
    kind="quantale_table": one object; data supplies ``lattice`` (a
                           FiniteSupLattice), ``table`` {(g,f): h} and
                           ``unit``.
    kind="locale":         data supplies ``frame`` (a FiniteSupLattice whose
                           meets distribute over joins); objects are the
                           frame elements, hom(x,y) is the down-set of x∧y,
                           composition is meet, the identity on x is x.
    kind="free_on_monoid": data supplies ``elements``, ``table`` {(a,b): c}
                           and ``unit`` of a finite monoid; the carrier is
                           its powerset under complex product.

    Output is always re-validated; transcription errors in the supplied
    tables surface as quantaloid axiom failures.
    """
    if kind == "boolean2":
        lat = chain_lattice(["0", "1"])
        table = {(g, f): min(g, f) for g in "01" for f in "01"}
        return validate_quantaloid(["*"], {("*", "*"): lat},
                                   {("*", "*", "*"): table}, {"*": "1"})

    if kind == "quantale_table":
        lat: FiniteSupLattice = data["lattice"]
        return validate_quantaloid(["*"], {("*", "*"): lat},
                                   {("*", "*", "*"): dict(data["table"])},
                                   {"*": data["unit"]})

    if kind == "locale":
        frame: FiniteSupLattice = data["frame"]
        objects = frame.elements
        homs = {}
        for x in objects:
            for y in objects:
                cap = frame.meet((x, y))
                elems = [e for e in frame.elements if frame.le(e, cap)]
                pairs = [(a, b) for a in elems for b in elems if frame.le(a, b)]
                homs[(x, y)] = validate_order(elems, pairs, require_suplattice=True)
        composition = {}
        for x, y, z in itertools.product(objects, repeat=3):
            composition[(x, y, z)] = {
                (g, f): frame.meet((g, f))
                for g in homs[(y, z)].elements for f in homs[(x, y)].elements}
        return validate_quantaloid(objects, homs, composition,
                                   {x: x for x in objects})

    if kind == "free_on_monoid":
        elements = list(data["elements"])
        mult = dict(data["table"])
        unit = data["unit"]
        lat = powerset_lattice(elements)
        name = lambda s: "+".join(sorted(s)) if s else "0"
        unname = lambda n: frozenset() if n == "0" else frozenset(n.split("+"))
        table = {}
        for g in lat.elements:
            for f in lat.elements:
                product = {mult[(a, b)] for a in unname(g) for b in unname(f)}
                table[(g, f)] = name(product)
        return validate_quantaloid(["*"], {("*", "*"): lat},
                                   {("*", "*", "*"): table}, {"*": name({unit})})

    raise ValidationFailed(f"unknown quantaloid kind {kind!r}")
