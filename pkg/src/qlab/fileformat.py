"""Plain-text instance files: parsing, rendering, and name resolution.

One instance per file, introduced by its kind keyword and name.  Statements
are line-oriented; a ``{ ... }`` block may span lines and holds
``;``-separated sub-statements (order blocks) or self-delimiting entries
(composition and arrow tables).  ``#`` starts a comment.

    quantaloid q2
    objects *
    hom * * { elements 0 1 ; order 0 <= 1 }
    id * = 1
    compose * * * { (0,0)=0 (0,1)=0 (1,0)=0 (1,1)=1 }

    category chain3_q2
    base q2
    object bot : *
    hom ( bot , bot ) = 1

Order statements may list any generating pairs; the reflexive-transitive
closure is taken before validation.  Rendering is canonical (all strict
pairs, sorted tables), so ``parse(render(v)) == v`` on validated values.

Dependent kinds name their prerequisites (``base``, ``source``,
``target``); names resolve against a registry, by default the sibling
files of the directory being read.  Kinds and extensions: quantaloid .qt,
category .qc, functor .qf, distributor .qd, pseudofunctor .qp, module .qm,
action .qa.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    FormatSyntaxError,
    NotClosed,
    PartialTable,
    UnresolvedReference,
    ValidationFailed,
)
from .order import MonotoneMap, transitive_closure, validate_order
from .qcat import (
    validate_category,
    validate_distributor,
    validate_functor,
)
from .quantaloid import validate_quantaloid
from .variation import (
    Pseudofunctor2,
    QModule,
    QuantaleAction,
    validate_action,
    validate_module,
    validate_pseudofunctor,
)

KINDS = ("quantaloid", "category", "functor", "distributor",
         "pseudofunctor", "module", "action")

EXTENSIONS = {"quantaloid": ".qt", "category": ".qc", "functor": ".qf",
              "distributor": ".qd", "pseudofunctor": ".qp",
              "module": ".qm", "action": ".qa"}

_TOKEN_RE = re.compile(
    r"(?P<nl>\n)"
    r"|(?P<ws>[ \t\r]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<op><=|->|[{}(),;=:])"
    r"|(?P<id>[^\s#{}(),;=:<>\-]+)")


@dataclass(frozen=True)
class Token:
    kind: str  # "op" | "id" | "nl"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormatSyntaxError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, col))
            line += 1
            col = 1
        else:
            if kind in ("op", "id"):
                tokens.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    return tokens


def statements(text: str) -> list[list[Token]]:
    """Group tokens into logical lines; braces keep a statement open."""
    out: list[list[Token]] = []
    current: list[Token] = []
    depth = 0
    for tok in tokenize(text):
        if tok.kind == "nl":
            if depth == 0 and current:
                out.append(current)
                current = []
            continue
        if tok.text == "{":
            depth += 1
        elif tok.text == "}":
            depth -= 1
            if depth < 0:
                raise FormatSyntaxError(tok.line, tok.col, "unbalanced '}'")
        current.append(tok)
    if depth != 0:
        last = current[-1]
        raise FormatSyntaxError(last.line, last.col, "unclosed '{'")
    if current:
        out.append(current)
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _fail(self, msg: str):
        if self.i < len(self.tokens):
            t = self.tokens[self.i]
            raise FormatSyntaxError(t.line, t.col, msg)
        t = self.tokens[-1]
        raise FormatSyntaxError(t.line, t.col + len(t.text), msg)

    def take_id(self) -> str:
        t = self.peek()
        if t is None or t.kind != "id":
            self._fail("expected a name")
        self.i += 1
        return t.text

    def take_op(self, text: str) -> None:
        t = self.peek()
        if t is None or t.text != text:
            self._fail(f"expected {text!r}")
        self.i += 1

    def at_op(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def expect_done(self) -> None:
        if not self.done():
            self._fail("unexpected trailing tokens")


@dataclass
class RawInstance:
    kind: str
    name: str
    refs: dict[str, str]
    body: dict
    path: Path | None = None


@dataclass
class Instance:
    kind: str
    name: str
    refs: dict[str, str] = field(default_factory=dict)
    value: object = None


def _parse_order_block(cur: _Cursor):
    """``{ elements ... ; order a <= b ; ... }`` → (elements, strict pairs)."""
    cur.take_op("{")
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    while not cur.at_op("}"):
        if cur.at_op(";"):
            cur.take_op(";")
            continue
        keyword = cur.take_id()
        if keyword == "elements":
            while not (cur.at_op(";") or cur.at_op("}")):
                elements.append(cur.take_id())
        elif keyword == "order":
            a = cur.take_id()
            cur.take_op("<=")
            b = cur.take_id()
            pairs.append((a, b))
        else:
            cur.i -= 1
            cur._fail(f"unknown keyword {keyword!r} in order block")
    cur.take_op("}")
    return elements, pairs


def _parse_pair_table(cur: _Cursor):
    """``{ (g,f)=h ... }`` entries, optionally ';'-separated."""
    cur.take_op("{")
    table: dict[tuple[str, str], str] = {}
    while not cur.at_op("}"):
        if cur.at_op(";"):
            cur.take_op(";")
            continue
        cur.take_op("(")
        g = cur.take_id()
        cur.take_op(",")
        f = cur.take_id()
        cur.take_op(")")
        cur.take_op("=")
        table[(g, f)] = cur.take_id()
    cur.take_op("}")
    return table


def _parse_map_block(cur: _Cursor):
    """``{ a -> b ; ... }`` entries, optionally ';'-separated."""
    cur.take_op("{")
    table: dict[str, str] = {}
    while not cur.at_op("}"):
        if cur.at_op(";"):
            cur.take_op(";")
            continue
        a = cur.take_id()
        cur.take_op("->")
        table[a] = cur.take_id()
    cur.take_op("}")
    return table


def parse_text(text: str, path: Path | None = None) -> RawInstance:
    stmts = statements(text)
    if not stmts:
        raise FormatSyntaxError(1, 1, "empty file")
    head = _Cursor(stmts[0])
    kind = head.take_id()
    if kind not in KINDS:
        raise FormatSyntaxError(stmts[0][0].line, stmts[0][0].col,
                                f"unknown kind {kind!r}")
    name = head.take_id()
    head.expect_done()

    refs: dict[str, str] = {}
    body: dict = {"objects": [], "object_types": {}, "hom_blocks": {},
                  "ids": {}, "compose": {}, "hom_entries": {},
                  "maps": {}, "elements": {}, "fibers": {}, "arrows": {},
                  "carrier": None, "act": {}, "trivial": False}

    for stmt in stmts[1:]:
        cur = _Cursor(stmt)
        keyword = cur.take_id()
        if keyword in ("base", "source", "target"):
            refs[keyword] = cur.take_id()
        elif keyword == "objects":
            while not cur.done():
                body["objects"].append(cur.take_id())
        elif keyword == "trivial":
            body["trivial"] = True
        elif keyword == "hom" and kind == "quantaloid":
            x = cur.take_id()
            y = cur.take_id()
            body["hom_blocks"][(x, y)] = _parse_order_block(cur)
        elif keyword == "hom":
            cur.take_op("(")
            y = cur.take_id()
            cur.take_op(",")
            x = cur.take_id()
            cur.take_op(")")
            cur.take_op("=")
            body["hom_entries"][(y, x)] = cur.take_id()
        elif keyword == "id":
            x = cur.take_id()
            cur.take_op("=")
            body["ids"][x] = cur.take_id()
        elif keyword == "compose":
            x = cur.take_id()
            y = cur.take_id()
            z = cur.take_id()
            body["compose"][(x, y, z)] = _parse_pair_table(cur)
        elif keyword == "object":
            obj = cur.take_id()
            cur.take_op(":")
            body["object_types"][obj] = cur.take_id()
            body["objects"].append(obj)
        elif keyword == "map":
            a = cur.take_id()
            cur.take_op("->")
            body["maps"][a] = cur.take_id()
        elif keyword == "element":
            cur.take_op("(")
            b = cur.take_id()
            cur.take_op(",")
            a = cur.take_id()
            cur.take_op(")")
            cur.take_op("=")
            body["elements"][(b, a)] = cur.take_id()
        elif keyword == "fiber":
            x = cur.take_id()
            body["fibers"][x] = _parse_order_block(cur)
        elif keyword == "arrow":
            x = cur.take_id()
            y = cur.take_id()
            f = cur.take_id()
            body["arrows"][(x, y, f)] = _parse_map_block(cur)
        elif keyword == "carrier":
            body["carrier"] = _parse_order_block(cur)
        elif keyword == "act":
            cur.take_op("(")
            m = cur.take_id()
            cur.take_op(",")
            f = cur.take_id()
            cur.take_op(")")
            cur.take_op("=")
            body["act"][(m, f)] = cur.take_id()
        else:
            cur.i -= 1
            cur._fail(f"unknown statement keyword {keyword!r}")
        cur.expect_done()
    return RawInstance(kind, name, refs, body, path)


def _closed_order(elements, pairs, require_suplattice):
    closure = transitive_closure(elements, pairs)
    return validate_order(elements, closure, require_suplattice)


def _build_quantaloid(raw: RawInstance):
    body = raw.body
    objects = body["objects"]
    homs = {}
    for x in objects:
        for y in objects:
            block = body["hom_blocks"].get((x, y))
            if block is None:
                if not body["trivial"]:
                    raise PartialTable(("hom", x, y))
                homs[(x, y)] = _closed_order(["0"], [], True)
            else:
                elements, pairs = block
                homs[(x, y)] = _closed_order(elements, pairs, True)
    identities = {}
    for x in objects:
        if x in body["ids"]:
            identities[x] = body["ids"][x]
        elif body["trivial"] and len(homs[(x, x)].elements) == 1:
            identities[x] = homs[(x, x)].elements[0]
        else:
            raise PartialTable(("id", x))
    composition = {}
    for x in objects:
        for y in objects:
            for z in objects:
                table = body["compose"].get((x, y, z))
                gs = homs[(y, z)].elements
                fs = homs[(x, y)].elements
                if table is None:
                    forced = (len(gs) == 1 or len(fs) == 1
                              or len(homs[(x, z)].elements) == 1)
                    if body["trivial"] and forced:
                        table = {(g, f): homs[(x, z)].bottom
                                 for g in gs for f in fs}
                    else:
                        raise PartialTable(("compose", x, y, z))
                for g in gs:
                    for f in fs:
                        if (g, f) not in table:
                            raise PartialTable(("compose", x, y, z, g, f))
                composition[(x, y, z)] = table
    return validate_quantaloid(objects, homs, composition, identities)


def _build_category(raw: RawInstance, resolve):
    base = resolve(raw.refs.get("base"), "quantaloid")
    body = raw.body
    for y in body["objects"]:
        for x in body["objects"]:
            if (y, x) not in body["hom_entries"]:
                raise PartialTable(("hom", y, x))
    return validate_category(base, body["objects"], body["object_types"],
                             body["hom_entries"])


def _build_functor(raw: RawInstance, resolve):
    source = resolve(raw.refs.get("source"), "category")
    target = resolve(raw.refs.get("target"), "category")
    for a in source.objects:
        if a not in raw.body["maps"]:
            raise PartialTable(("map", a))
    return validate_functor(source, target, raw.body["maps"])


def _build_distributor(raw: RawInstance, resolve):
    source = resolve(raw.refs.get("source"), "category")
    target = resolve(raw.refs.get("target"), "category")
    for b in target.objects:
        for a in source.objects:
            if (b, a) not in raw.body["elements"]:
                raise PartialTable(("element", b, a))
    return validate_distributor(source, target, raw.body["elements"])


def _build_fibered(raw: RawInstance, resolve, as_module: bool):
    base = resolve(raw.refs.get("base"), "quantaloid")
    fibs = {}
    for x in base.objects:
        if x not in raw.body["fibers"]:
            raise PartialTable(("fiber", x))
        elements, pairs = raw.body["fibers"][x]
        fibs[x] = _closed_order(elements, pairs, require_suplattice=as_module)
    on_arrows = {}
    for x in base.objects:
        for y in base.objects:
            for f in base.hom(x, y).elements:
                table = raw.body["arrows"].get((x, y, f))
                if table is None:
                    raise PartialTable(("arrow", x, y, f))
                for e in fibs[y].elements:
                    if e not in table:
                        raise PartialTable(("arrow", x, y, f, e))
                on_arrows[(x, y, f)] = MonotoneMap(fibs[y], fibs[x], table)
    if as_module:
        return validate_module(QModule(base, fibs, on_arrows))
    p = Pseudofunctor2(base, fibs, on_arrows)
    report = validate_pseudofunctor(p)
    if not report.valid:
        raise ValidationFailed(report.witnesses)
    if not report.closed:
        raise NotClosed(report.witnesses.get("closed"))
    return p


def _build_action(raw: RawInstance, resolve):
    base = resolve(raw.refs.get("base"), "quantaloid")
    if raw.body["carrier"] is None:
        raise PartialTable(("carrier",))
    elements, pairs = raw.body["carrier"]
    carrier = _closed_order(elements, pairs, require_suplattice=True)
    star = base.objects[0]
    for m in carrier.elements:
        for f in base.hom(star, star).elements:
            if (m, f) not in raw.body["act"]:
                raise PartialTable(("act", m, f))
    return validate_action(QuantaleAction(base, carrier, raw.body["act"]))


def build_instance(raw: RawInstance, resolve) -> Instance:
    """Produce the validated semantic value; ``resolve(name, kind)`` supplies
    referenced instances."""

    def resolve_value(name, kind):
        if name is None:
            raise UnresolvedReference("<missing reference>")
        inst = resolve(name)
        if inst is None:
            raise UnresolvedReference(name)
        if inst.kind != kind:
            raise ValidationFailed(
                f"{raw.name}: reference {name} is a {inst.kind}, expected {kind}")
        return inst.value

    if raw.kind == "quantaloid":
        value = _build_quantaloid(raw)
    elif raw.kind == "category":
        value = _build_category(raw, resolve_value)
    elif raw.kind == "functor":
        value = _build_functor(raw, resolve_value)
    elif raw.kind == "distributor":
        value = _build_distributor(raw, resolve_value)
    elif raw.kind == "pseudofunctor":
        value = _build_fibered(raw, resolve_value, as_module=False)
    elif raw.kind == "module":
        value = _build_fibered(raw, resolve_value, as_module=True)
    else:
        value = _build_action(raw, resolve_value)
    return Instance(raw.kind, raw.name, dict(raw.refs), value)


# --- rendering ----------------------------------------------------------------

def _render_order_block(elements, preorder) -> str:
    parts = ["elements " + " ".join(elements)] if elements else ["elements"]
    strict = sorted((a, b) for (a, b) in preorder.pairs if a != b)
    parts += [f"order {a} <= {b}" for (a, b) in strict]
    return "{ " + " ; ".join(parts) + " }"


def _render_lattice(lat) -> str:
    return _render_order_block(lat.elements, lat.order)


def render_instance(inst: Instance) -> str:
    """Canonical text; inverse to parsing on validated values."""
    out = [f"{inst.kind} {inst.name}"]
    v = inst.value
    if inst.kind == "quantaloid":
        out.append("objects " + " ".join(v.objects))
        for x in v.objects:
            for y in v.objects:
                out.append(f"hom {x} {y} " + _render_lattice(v.hom(x, y)))
        for x in v.objects:
            out.append(f"id {x} = {v.identity(x)}")
        for x in v.objects:
            for y in v.objects:
                for z in v.objects:
                    entries = sorted(v.composition[(x, y, z)].items())
                    body = " ".join(f"({g},{f})={h}" for (g, f), h in entries)
                    out.append(f"compose {x} {y} {z} {{ {body} }}")
    elif inst.kind == "category":
        out.append(f"base {inst.refs['base']}")
        for obj in v.objects:
            out.append(f"object {obj} : {v.t(obj)}")
        for y in v.objects:
            for x in v.objects:
                out.append(f"hom ( {y} , {x} ) = {v.hom_elt(y, x)}")
    elif inst.kind == "functor":
        out.append(f"source {inst.refs['source']}")
        out.append(f"target {inst.refs['target']}")
        for a in v.source.objects:
            out.append(f"map {a} -> {v(a)}")
    elif inst.kind == "distributor":
        out.append(f"source {inst.refs['source']}")
        out.append(f"target {inst.refs['target']}")
        for b in v.target.objects:
            for a in v.source.objects:
                out.append(f"element ( {b} , {a} ) = {v.at(b, a)}")
    elif inst.kind in ("pseudofunctor", "module"):
        out.append(f"base {inst.refs['base']}")
        for x in v.base.objects:
            fib = v.fiber(x)
            if inst.kind == "module":
                out.append(f"fiber {x} " + _render_lattice(fib))
            else:
                out.append(f"fiber {x} " + _render_order_block(fib.elements, fib))
        for x in v.base.objects:
            for y in v.base.objects:
                for f in v.base.hom(x, y).elements:
                    table = v.act(x, y, f).table
                    elems = v.fiber(y).elements
                    body = " ; ".join(f"{e} -> {table[e]}" for e in elems)
                    if not elems:
                        out.append(f"arrow {x} {y} {f} {{ }}")
                    else:
                        out.append(f"arrow {x} {y} {f} {{ {body} }}")
    elif inst.kind == "action":
        out.append(f"base {inst.refs['base']}")
        out.append("carrier " + _render_lattice(v.carrier))
        star = v.quantale.objects[0]
        for m in v.carrier.elements:
            for f in v.quantale.hom(star, star).elements:
                out.append(f"act ( {m} , {f} ) = {v.act(m, f)}")
    else:
        raise ValueError(f"cannot render kind {inst.kind!r}")
    return "\n".join(out) + "\n"


# --- registry -----------------------------------------------------------------

def header_of(path: Path) -> tuple[str, str]:
    """Kind and declared name, read without building the instance."""
    for stmt in statements(path.read_text(encoding="utf-8")):
        cur = _Cursor(stmt)
        kind = cur.take_id()
        if kind not in KINDS:
            raise FormatSyntaxError(stmt[0].line, stmt[0].col,
                                    f"unknown kind {kind!r}")
        return kind, cur.take_id()
    raise FormatSyntaxError(1, 1, "empty file")


class Registry:
    """Name-to-instance resolution over a directory of files.

    Unknown names are delegated to the ``fallback`` registry, so a
    directory of add-on files (counterexamples, say) can lean on the
    bundled instances for its references.
    """

    def __init__(self, directory: Path | str | None = None,
                 fallback: "Registry | None" = None):
        self.directory = Path(directory) if directory else None
        self.fallback = fallback
        self._built: dict[str, Instance] = {}
        self._paths: dict[str, Path] = {}
        self._loading: set[str] = set()
        if self.directory:
            for path in sorted(self.directory.iterdir()):
                if path.suffix in EXTENSIONS.values() and path.is_file():
                    try:
                        _, name = header_of(path)
                    except FormatSyntaxError:
                        continue
                    self._paths.setdefault(name, path)

    def add(self, inst: Instance) -> None:
        self._built[inst.name] = inst

    def resolve(self, name: str) -> Instance | None:
        if name in self._built:
            return self._built[name]
        path = self._paths.get(name)
        if path is None:
            return self.fallback.resolve(name) if self.fallback else None
        if name in self._loading:
            raise UnresolvedReference(f"{name} (circular reference)")
        self._loading.add(name)
        try:
            inst = build_instance(
                parse_text(path.read_text(encoding="utf-8"), path),
                self.resolve)
        finally:
            self._loading.discard(name)
        self._built[inst.name] = inst
        return inst


def bundled_registry() -> Registry:
    from .data import instances_dir
    return Registry(instances_dir())


def load_file(path: Path | str, registry: Registry | None = None) -> Instance:
    """Parse, resolve against sibling files (bundled instances as the
    fallback), validate."""
    path = Path(path)
    if registry is None:
        registry = Registry(path.parent, fallback=bundled_registry())
    raw = parse_text(path.read_text(encoding="utf-8"), path)
    inst = build_instance(raw, registry.resolve)
    registry.add(inst)
    return inst
