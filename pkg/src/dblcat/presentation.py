"""The ``.dcat`` presentation format for table-backed structures.

A presentation is a list of statements, one per line; ``#`` starts a
comment.  Names are runs of letters, digits and ``_ ' *``, possibly
joined by single hyphens.  Sections:

* ``double NAME`` (optionally followed by ``strict``) opens a double
  category: objects, tight and loose cells, 2-cells and their tables;
* ``monoidal LEVEL unit OBJECT`` adds tensor and constraint tables to it;
* ``quantale NAME`` declares a finite quantale.

The full grammar lives in ``docs/grammar.md``.  :func:`parse_presentation`
checks every table entry against the boundaries it must have and raises
:class:`SemanticError` (with the line) on the first violation;
:func:`serialize_presentation` writes a canonical text that parses back
to an equal value.
"""

import re
from dataclasses import dataclass, field

from .errors import ParseError, SemanticError
from .instances.mat import Quantale
from .instances.table import TableDouble, TableMonoidal
from .mondbl import LEVELS

_NAME = r"[A-Za-z0-9_'*]+(?:-[A-Za-z0-9_'*]+)*"
_TOKEN = re.compile(r"\s*(?:(->|=>)|(" + _NAME + r")|([:=])|(\S))")


@dataclass
class MonoidalTables:
    level: str
    unit: str
    tensor: dict = field(default_factory=dict)
    tensor_tight: dict = field(default_factory=dict)
    tensor_loose: dict = field(default_factory=dict)
    tensor_cell: dict = field(default_factory=dict)
    interchange: dict = field(default_factory=dict)
    unit_interchange: dict = field(default_factory=dict)
    assoc: dict = field(default_factory=dict)
    assoc_cell: dict = field(default_factory=dict)
    lunit: dict = field(default_factory=dict)
    lunit_cell: dict = field(default_factory=dict)
    runit: dict = field(default_factory=dict)
    runit_cell: dict = field(default_factory=dict)
    braid: dict = field(default_factory=dict)
    braid_cell: dict = field(default_factory=dict)


@dataclass
class QuantaleTables:
    name: str
    elements: list = field(default_factory=list)
    bottom: str = None
    one: str = None
    leq: set = field(default_factory=set)
    join: dict = field(default_factory=dict)
    mult: dict = field(default_factory=dict)

    def build(self):
        """The :class:`Quantale`; law violations become a SemanticError."""
        for what, table in (("join", self.join), ("mult", self.mult)):
            for x in self.elements:
                for y in self.elements:
                    if (x, y) not in table:
                        raise SemanticError(f"quantale {self.name}: {what} {x} {y} undefined")
        if self.bottom is None or self.one is None:
            raise SemanticError(f"quantale {self.name} needs 'bottom' and 'one'")
        try:
            return Quantale(self.elements, lambda x, y: (x, y) in self.leq,
                            lambda x, y: self.join[x, y], lambda x, y: self.mult[x, y],
                            self.bottom, self.one, name=self.name)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None


@dataclass
class Presentation:
    name: str = None
    strict: bool = False
    objects: list = field(default_factory=list)
    tight: dict = field(default_factory=dict)
    tight_ids: dict = field(default_factory=dict)
    tight_comp: dict = field(default_factory=dict)
    loose: dict = field(default_factory=dict)
    units: dict = field(default_factory=dict)
    loose_comp: dict = field(default_factory=dict)
    cells: dict = field(default_factory=dict)
    cell_ids: dict = field(default_factory=dict)
    vcomp: dict = field(default_factory=dict)
    unit_cells: dict = field(default_factory=dict)
    hcomp: dict = field(default_factory=dict)
    assoc: dict = field(default_factory=dict)
    lunitor: dict = field(default_factory=dict)
    runitor: dict = field(default_factory=dict)
    companions: dict = field(default_factory=dict)
    monoidal: MonoidalTables = None
    quantales: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def has_double(self):
        return self.name is not None

    def double(self):
        if not self.has_double:
            raise SemanticError("presentation has no double category")
        return TableDouble(self.objects, self.tight, self.tight_ids, self.tight_comp, self.loose,
                           self.units, self.loose_comp, self.cells, self.cell_ids, self.vcomp,
                           self.unit_cells, self.hcomp, self.assoc, self.lunitor, self.runitor,
                           strict=self.strict, name=self.name)

    def monoidal_double(self):
        if self.monoidal is None:
            raise SemanticError("presentation has no monoidal section")
        m = self.monoidal
        return TableMonoidal(self.double(), m.unit, m.tensor, m.tensor_tight, m.tensor_loose,
                             m.tensor_cell, m.interchange, m.unit_interchange, m.assoc,
                             m.assoc_cell, m.lunit, m.lunit_cell, m.runit, m.runit_cell, m.braid,
                             m.braid_cell, level=m.level, strict=self.strict)

    def companion_pairs(self, D=None):
        """Declared companions as CompanionPair values over ``D`` (default: :meth:`double`)."""
        from .companion import CompanionPair
        D = D or self.double()
        return {f: CompanionPair(D.tight_cell(f), D.loose_cell(M), D.cell(eta), D.cell(eps))
                for f, (M, eta, eps) in self.companions.items()}

    def quantale(self, name=None):
        if not self.quantales:
            raise SemanticError("presentation declares no quantale")
        if name is None:
            name = next(iter(self.quantales))
        if name not in self.quantales:
            raise SemanticError(f"no quantale named {name!r}")
        return self.quantales[name].build()


# ---------------------------------------------------------------------------
# Statement forms.  In a pattern, ``N`` is a name, ``N+`` one or more names,
# anything else a literal token.

_DOUBLE_FORMS = {
    "object": "N+",
    "tight": "N : N -> N",
    "tight-id": "N = N",
    "tight-comp": "N N = N",
    "loose": "N : N -> N",
    "unit": "N = N",
    "loose-comp": "N N = N",
    "cell": "N : N => N along N N",
    "cell-id": "N = N",
    "vcomp": "N N = N",
    "unit-cell": "N = N",
    "hcomp": "N N = N",
    "assoc": "N N N = N",
    "lunitor": "N = N",
    "runitor": "N = N",
    "companion": "N = N eta N eps N",
}

_MONOIDAL_FORMS = {
    "tensor": "N N = N",
    "tensor-tight": "N N = N",
    "tensor-loose": "N N = N",
    "tensor-cell": "N N = N",
    "interchange": "N N N N = N",
    "unit-interchange": "N N = N",
    "mon-assoc": "N N N = N",
    "mon-assoc-cell": "N N N = N",
    "mon-lunit": "N = N",
    "mon-lunit-cell": "N = N",
    "mon-runit": "N = N",
    "mon-runit-cell": "N = N",
    "braid": "N N = N",
    "braid-cell": "N N = N",
}

_QUANTALE_FORMS = {
    "element": "N+",
    "bottom": "N",
    "one": "N",
    "leq": "N N",
    "join": "N N = N",
    "mult": "N N = N",
}

_HEADERS = {"double": "N", "monoidal": "N unit N", "quantale": "N"}

# statement keyword -> attribute of Presentation / MonoidalTables holding its table
_TABLE_OF = {
    "tight-id": "tight_ids", "tight-comp": "tight_comp", "unit": "units",
    "loose-comp": "loose_comp", "cell-id": "cell_ids", "vcomp": "vcomp",
    "unit-cell": "unit_cells", "hcomp": "hcomp", "assoc": "assoc", "lunitor": "lunitor",
    "runitor": "runitor",
    "tensor": "tensor", "tensor-tight": "tensor_tight", "tensor-loose": "tensor_loose",
    "tensor-cell": "tensor_cell", "interchange": "interchange",
    "unit-interchange": "unit_interchange", "mon-assoc": "assoc", "mon-assoc-cell": "assoc_cell",
    "mon-lunit": "lunit", "mon-lunit-cell": "lunit_cell", "mon-runit": "runit",
    "mon-runit-cell": "runit_cell", "braid": "braid", "braid-cell": "braid_cell",
}


def _tokenize(line, n):
    out, pos = [], 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.group(4) is not None:
            raise ParseError(f"unexpected character {m.group(4)!r}", n, m.start(4) + 1)
        kind = "name" if m.group(2) is not None else "sym"
        start = m.start(2) if kind == "name" else m.start(m.lastindex)
        out.append((kind, m.group(m.lastindex), start + 1))
        pos = m.end()
    return out


def _match(pattern, toks, n, keyword):
    """Names captured by ``pattern`` in ``toks``; ParseError on mismatch."""
    names, pos = [], 0
    end_col = (toks[-1][2] + len(toks[-1][1])) if toks else 1
    for part in pattern.split():
        if part == "N+":
            if pos >= len(toks) or toks[pos][0] != "name":
                raise ParseError(f"{keyword}: expected at least one name", n, end_col)
            while pos < len(toks) and toks[pos][0] == "name":
                names.append(toks[pos][1])
                pos += 1
            continue
        if pos >= len(toks):
            raise ParseError(f"{keyword}: expected {'a name' if part == 'N' else repr(part)}"
                             f" (form: {keyword} {pattern})", n, end_col)
        kind, text, col = toks[pos]
        if part == "N":
            if kind != "name":
                raise ParseError(f"{keyword}: expected a name, got {text!r}", n, col)
            names.append(text)
        elif text != part:
            raise ParseError(f"{keyword}: expected {part!r}, got {text!r}", n, col)
        pos += 1
    if pos < len(toks):
        raise ParseError(f"{keyword}: unexpected {toks[pos][1]!r}", n, toks[pos][2])
    return names


def parse_presentation(text):
    """Parse and boundary-check a presentation."""
    p = Presentation()
    section = None
    quantale = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokenize(line, n)
        if not toks:
            continue
        kind, keyword, col = toks[0]
        if kind != "name":
            raise ParseError(f"expected a keyword, got {keyword!r}", n, col)
        rest = toks[1:]
        if keyword in _HEADERS:
            if keyword == "double":
                strict = bool(rest) and rest[-1][1] == "strict"
                (name,) = _match("N", rest[:-1] if strict else rest, n, keyword)
                if p.has_double:
                    raise SemanticError(f"line {n}: a second double section")
                p.name, p.strict, section = name, strict, "double"
            elif keyword == "monoidal":
                level, unit = _match(_HEADERS[keyword], rest, n, keyword)
                if not p.has_double:
                    raise SemanticError(f"line {n}: monoidal section before any double section")
                if p.monoidal is not None:
                    raise SemanticError(f"line {n}: a second monoidal section")
                if level not in LEVELS:
                    raise SemanticError(f"line {n}: unknown level {level!r}")
                p.monoidal = MonoidalTables(level, unit)
                p.lines[("monoidal",)] = n
                section = "monoidal"
            else:
                (name,) = _match("N", rest, n, keyword)
                if name in p.quantales:
                    raise SemanticError(f"line {n}: quantale {name!r} declared twice")
                quantale = p.quantales[name] = QuantaleTables(name)
                section = "quantale"
            continue
        forms = {"double": _DOUBLE_FORMS, "monoidal": _MONOIDAL_FORMS,
                 "quantale": _QUANTALE_FORMS}.get(section)
        if forms is None:
            raise ParseError(f"{keyword!r} before any section header", n, col)
        if keyword not in forms:
            if section == "monoidal" and keyword in _DOUBLE_FORMS:
                raise ParseError(f"{keyword!r} belongs before the monoidal section", n, col)
            raise ParseError(f"unknown statement {keyword!r} in {section} section", n, col)
        args = _match(forms[keyword], rest, n, keyword)
        if section == "quantale":
            _quantale_statement(quantale, keyword, args, n)
        else:
            _table_statement(p, section, keyword, args, n)
    _check(p)
    return p


def _put(table, key, value, what, n):
    if key in table:
        raise SemanticError(f"line {n}: {what} {key!r} defined twice")
    table[key] = value


def _table_statement(p, section, keyword, args, n):
    head = args[:1] if keyword in ("object", "tight", "loose", "cell", "companion") else args[:-1]
    p.lines[(keyword,) + tuple(head)] = n
    if keyword == "object":
        for o in args:
            if o in p.objects:
                raise SemanticError(f"line {n}: object {o!r} declared twice")
            p.objects.append(o)
        return
    if keyword in ("tight", "loose"):
        table = p.tight if keyword == "tight" else p.loose
        _put(table, args[0], (args[1], args[2]), f"{keyword} cell", n)
        return
    if keyword == "cell":
        _put(p.cells, args[0], tuple(args[1:]), "2-cell", n)
        return
    if keyword == "companion":
        _put(p.companions, args[0], tuple(args[1:]), "companion of", n)
        return
    owner = p.monoidal if section == "monoidal" else p
    table = getattr(owner, _TABLE_OF[keyword])
    key = args[0] if len(args) == 2 else tuple(args[:-1])
    _put(table, key, args[-1], keyword, n)


def _quantale_statement(q, keyword, args, n):
    if keyword == "element":
        for x in args:
            if x in q.elements:
                raise SemanticError(f"line {n}: element {x!r} declared twice")
            q.elements.append(x)
    elif keyword in ("bottom", "one"):
        if getattr(q, keyword) is not None:
            raise SemanticError(f"line {n}: {keyword} given twice")
        setattr(q, keyword, args[0])
    elif keyword == "leq":
        q.leq.add(tuple(args))
    else:
        _put(q.join if keyword == "join" else q.mult, tuple(args[:2]), args[2], keyword, n)
    for x in args:
        if keyword != "element" and x not in q.elements:
            raise SemanticError(f"line {n}: unknown element {x!r} in quantale {q.name}")


# ---------------------------------------------------------------------------
# Semantic checks: every entry has the boundary its table demands


class _Checker:
    def __init__(self, p):
        self.p = p

    def fail(self, key, message):
        n = self.p.lines.get(key)
        where = f"line {n}: " if n else ""
        raise SemanticError(where + message)

    def obj(self, key, o):
        if o not in self.p.objects:
            self.fail(key, f"unknown object {o!r}")
        return o

    def tight(self, key, f):
        if f not in self.p.tight:
            self.fail(key, f"unknown tight cell {f!r}")
        return self.p.tight[f]

    def loose(self, key, M):
        if M not in self.p.loose:
            self.fail(key, f"unknown loose cell {M!r}")
        return self.p.loose[M]

    def cell(self, key, a):
        if a not in self.p.cells:
            self.fail(key, f"unknown 2-cell {a!r}")
        return self.p.cells[a]

    def lookup(self, key, table, entry, what):
        if entry not in table:
            self.fail(key, f"{what} {entry!r} is not tabulated")
        return table[entry]

    def tid(self, key, o):
        return self.lookup(key, self.p.tight_ids, o, "tight identity on")

    def unit(self, key, o):
        return self.lookup(key, self.p.units, o, "loose unit on")

    def tcomp(self, key, g, f):
        return self.lookup(key, self.p.tight_comp, (g, f), "tight composite")

    def lcomp(self, key, N, M):
        return self.lookup(key, self.p.loose_comp, (N, M), "loose composite")

    def want_tight(self, key, f, src, dst, what):
        if self.tight(key, f) != (src, dst):
            self.fail(key, f"{what}: {f!r} should go {src} -> {dst}, not "
                           f"{self.p.tight[f][0]} -> {self.p.tight[f][1]}")

    def want_loose(self, key, M, src, tgt, what):
        if self.loose(key, M) != (src, tgt):
            self.fail(key, f"{what}: {M!r} should go {src} -|-> {tgt}, not "
                           f"{self.p.loose[M][0]} -|-> {self.p.loose[M][1]}")

    def want_cell(self, key, a, boundary, what):
        if self.cell(key, a) != tuple(boundary):
            self.fail(key, f"{what}: {a!r} has boundary {self.p.cells[a]}, expected {tuple(boundary)}")

    def globular(self, key, top, bottom):
        s, t = self.loose(key, top)
        return (top, bottom, self.tid(key, s), self.tid(key, t))


def _check(p):
    if p.has_double:
        _check_double(p)
        if p.monoidal is not None:
            _check_monoidal(p)
    for q in p.quantales.values():
        q.build()


def _check_double(p):
    c = _Checker(p)
    for f, (s, t) in p.tight.items():
        c.obj(("tight", f), s)
        c.obj(("tight", f), t)
    for M, (s, t) in p.loose.items():
        c.obj(("loose", M), s)
        c.obj(("loose", M), t)
    for a, (top, bottom, left, right) in p.cells.items():
        key = ("cell", a)
        ts, tt = c.loose(key, top)
        bs, bt = c.loose(key, bottom)
        ls, lt = c.tight(key, left)
        rs, rt = c.tight(key, right)
        if (ls, lt, rs, rt) != (ts, bs, tt, bt):
            c.fail(key, f"2-cell {a!r} is not a square: the left side must run from the source of "
                        f"{top!r} to the source of {bottom!r} ({ts} -> {bs}) and the right side from "
                        f"target to target ({tt} -> {bt}), got {ls} -> {lt} and {rs} -> {rt}")
    for o, f in p.tight_ids.items():
        c.want_tight(("tight-id", o), f, c.obj(("tight-id", o), o), o, "tight identity")
    for (g, f), h in p.tight_comp.items():
        key = ("tight-comp", g, f)
        (fs, ft), (gs, gt) = c.tight(key, f), c.tight(key, g)
        if ft != gs:
            c.fail(key, f"{g!r} after {f!r} is not composable")
        c.want_tight(key, h, fs, gt, "tight composite")
    for o, M in p.units.items():
        c.want_loose(("unit", o), M, c.obj(("unit", o), o), o, "loose unit")
    for (N, M), P in p.loose_comp.items():
        key = ("loose-comp", N, M)
        (ms, mt), (ns, nt) = c.loose(key, M), c.loose(key, N)
        if mt != ns:
            c.fail(key, f"{N!r} after {M!r} is not composable")
        c.want_loose(key, P, ms, nt, "loose composite")
    for M, a in p.cell_ids.items():
        key = ("cell-id", M)
        c.want_cell(key, a, c.globular(key, M, M), "identity 2-cell")
    for (b, a), d in p.vcomp.items():
        key = ("vcomp", b, a)
        at, ab, al, ar = c.cell(key, a)
        bt, bb, bl, br = c.cell(key, b)
        if ab != bt:
            c.fail(key, f"{b!r} cannot be stacked under {a!r}")
        c.want_cell(key, d, (at, bb, c.tcomp(key, bl, al), c.tcomp(key, br, ar)), "vertical composite")
    for f, a in p.unit_cells.items():
        key = ("unit-cell", f)
        s, t = c.tight(key, f)
        c.want_cell(key, a, (c.unit(key, s), c.unit(key, t), f, f), "unit 2-cell")
    for (b, a), d in p.hcomp.items():
        key = ("hcomp", b, a)
        at, ab, al, ar = c.cell(key, a)
        bt, bb, bl, br = c.cell(key, b)
        if ar != bl:
            c.fail(key, f"{b!r} cannot be placed beside {a!r}")
        c.want_cell(key, d, (c.lcomp(key, bt, at), c.lcomp(key, bb, ab), al, br), "horizontal composite")
    for (P, N, M), a in p.assoc.items():
        key = ("assoc", P, N, M)
        top = c.lcomp(key, c.lcomp(key, P, N), M)
        bottom = c.lcomp(key, P, c.lcomp(key, N, M))
        c.want_cell(key, a, c.globular(key, top, bottom), "associator")
    for M, a in p.lunitor.items():
        key = ("lunitor", M)
        top = c.lcomp(key, c.unit(key, c.loose(key, M)[1]), M)
        c.want_cell(key, a, c.globular(key, top, M), "left unitor")
    for M, a in p.runitor.items():
        key = ("runitor", M)
        top = c.lcomp(key, M, c.unit(key, c.loose(key, M)[0]))
        c.want_cell(key, a, c.globular(key, top, M), "right unitor")
    for f, (M, eta, eps) in p.companions.items():
        key = ("companion", f)
        s, t = c.tight(key, f)
        c.want_loose(key, M, s, t, "companion")
        c.want_cell(key, eta, (c.unit(key, s), M, c.tid(key, s), f), "companion unit cell")
        c.want_cell(key, eps, (M, c.unit(key, t), f, c.tid(key, t)), "companion counit cell")
    try:
        p.double()
    except SemanticError as exc:
        raise SemanticError(str(exc)) from None


def _check_monoidal(p):
    m = p.monoidal
    c = _Checker(p)
    c.obj(("monoidal",), m.unit)

    def ten(key, A, B):
        return c.lookup(key, m.tensor, (A, B), "tensor of objects")

    def tl(key, M, N):
        return c.lookup(key, m.tensor_loose, (M, N), "tensor of loose cells")

    def tt(key, f, g):
        return c.lookup(key, m.tensor_tight, (f, g), "tensor of tight cells")

    def constraint(key, table, tkey, src, dst, what):
        if tkey in table:
            c.want_tight(key, table[tkey], src, dst, what)
            return table[tkey]
        if p.strict and src == dst:
            return c.tid(key, src)
        c.fail(key, f"{what} at {tkey!r} is not tabulated")

    for (A, B), C in m.tensor.items():
        key = ("tensor", A, B)
        for o in (A, B, C):
            c.obj(key, o)
    for (f, g), h in m.tensor_tight.items():
        key = ("tensor-tight", f, g)
        (fs, ft), (gs, gt) = c.tight(key, f), c.tight(key, g)
        c.want_tight(key, h, ten(key, fs, gs), ten(key, ft, gt), "tensor of tight cells")
    for (M, N), P in m.tensor_loose.items():
        key = ("tensor-loose", M, N)
        (ms, mt), (ns, nt) = c.loose(key, M), c.loose(key, N)
        c.want_loose(key, P, ten(key, ms, ns), ten(key, mt, nt), "tensor of loose cells")
    for (a, b), d in m.tensor_cell.items():
        key = ("tensor-cell", a, b)
        at, ab, al, ar = c.cell(key, a)
        bt, bb, bl, br = c.cell(key, b)
        c.want_cell(key, d, (tl(key, at, bt), tl(key, ab, bb), tt(key, al, bl), tt(key, ar, br)),
                    "tensor of 2-cells")
    for (M2, N2, M1, N1), a in m.interchange.items():
        key = ("interchange", M2, N2, M1, N1)
        top = c.lcomp(key, tl(key, M2, N2), tl(key, M1, N1))
        bottom = tl(key, c.lcomp(key, M2, M1), c.lcomp(key, N2, N1))
        c.want_cell(key, a, c.globular(key, top, bottom), "interchange")
    for (A, B), a in m.unit_interchange.items():
        key = ("unit-interchange", A, B)
        top = c.unit(key, ten(key, A, B))
        c.want_cell(key, a, c.globular(key, top, tl(key, c.unit(key, A), c.unit(key, B))),
                    "unit interchange")
    for (A, B, C), f in m.assoc.items():
        key = ("mon-assoc", A, B, C)
        c.want_tight(key, f, ten(key, ten(key, A, B), C), ten(key, A, ten(key, B, C)), "associator")
    for (M, N, P), a in m.assoc_cell.items():
        key = ("mon-assoc-cell", M, N, P)
        (ms, mt), (ns, nt), (ps, pt) = c.loose(key, M), c.loose(key, N), c.loose(key, P)
        left = constraint(key, m.assoc, (ms, ns, ps), ten(key, ten(key, ms, ns), ps),
                          ten(key, ms, ten(key, ns, ps)), "associator")
        right = constraint(key, m.assoc, (mt, nt, pt), ten(key, ten(key, mt, nt), pt),
                           ten(key, mt, ten(key, nt, pt)), "associator")
        c.want_cell(key, a, (tl(key, tl(key, M, N), P), tl(key, M, tl(key, N, P)), left, right),
                    "associator 2-cell")
    for side, table, cells in (("lunit", m.lunit, m.lunit_cell), ("runit", m.runit, m.runit_cell)):
        def unit_tensor(key, A):
            return ten(key, m.unit, A) if side == "lunit" else ten(key, A, m.unit)

        for A, f in table.items():
            key = (f"mon-{side}", A)
            c.want_tight(key, f, unit_tensor(key, A), A, "unitor")
        for M, a in cells.items():
            key = (f"mon-{side}-cell", M)
            s, t = c.loose(key, M)
            UI = c.unit(key, m.unit)
            top = tl(key, UI, M) if side == "lunit" else tl(key, M, UI)
            left = constraint(key, table, s, unit_tensor(key, s), s, "unitor")
            right = constraint(key, table, t, unit_tensor(key, t), t, "unitor")
            c.want_cell(key, a, (top, M, left, right), "unitor 2-cell")
    if m.level == "monoidal" and (m.braid or m.braid_cell):
        c.fail(("monoidal",), "braiding tables need level braided or symmetric")
    for (A, B), f in m.braid.items():
        key = ("braid", A, B)
        c.want_tight(key, f, ten(key, A, B), ten(key, B, A), "braiding")
    for (M, N), a in m.braid_cell.items():
        key = ("braid-cell", M, N)
        (ms, mt), (ns, nt) = c.loose(key, M), c.loose(key, N)
        left = constraint(key, m.braid, (ms, ns), ten(key, ms, ns), ten(key, ns, ms), "braiding")
        right = constraint(key, m.braid, (mt, nt), ten(key, mt, nt), ten(key, nt, mt), "braiding")
        c.want_cell(key, a, (tl(key, M, N), tl(key, N, M), left, right), "braiding 2-cell")


# ---------------------------------------------------------------------------
# Serialization


def _entries(keyword, table):
    for key, value in table.items():
        key = key if isinstance(key, tuple) else (key,)
        yield f"{keyword} {' '.join(map(str, key))} = {value}"


def serialize_presentation(p):
    """Canonical text for ``p``; tables are written in insertion order."""
    out = []
    if p.has_double:
        out.append(f"double {p.name}" + (" strict" if p.strict else ""))
        if p.objects:
            out.append("object " + " ".join(p.objects))
        out += [f"tight {f} : {s} -> {t}" for f, (s, t) in p.tight.items()]
        out += _entries("tight-id", p.tight_ids)
        out += _entries("tight-comp", p.tight_comp)
        out += [f"loose {M} : {s} -> {t}" for M, (s, t) in p.loose.items()]
        out += _entries("unit", p.units)
        out += _entries("loose-comp", p.loose_comp)
        out += [f"cell {a} : {top} => {bottom} along {left} {right}"
                for a, (top, bottom, left, right) in p.cells.items()]
        for keyword in ("cell-id", "vcomp", "unit-cell", "hcomp", "assoc", "lunitor", "runitor"):
            out += _entries(keyword, getattr(p, _TABLE_OF[keyword]))
        out += [f"companion {f} = {M} eta {eta} eps {eps}"
                for f, (M, eta, eps) in p.companions.items()]
        if p.monoidal is not None:
            m = p.monoidal
            out.append(f"monoidal {m.level} unit {m.unit}")
            for keyword in _MONOIDAL_FORMS:
                out += _entries(keyword, getattr(m, _TABLE_OF[keyword]))
    for q in p.quantales.values():
        out.append(f"quantale {q.name}")
        out.append("element " + " ".join(q.elements))
        if q.bottom is not None:
            out.append(f"bottom {q.bottom}")
        if q.one is not None:
            out.append(f"one {q.one}")
        out += [f"leq {x} {y}" for x in q.elements for y in q.elements if (x, y) in q.leq]
        out += _entries("join", q.join)
        out += _entries("mult", q.mult)
    return "\n".join(out) + "\n"


def _safe_name(text):
    return re.sub(r"[^A-Za-z0-9_']+", "_", str(text)).strip("_") or "D"


def presentation_of(T, monoidal=None, companions=(), quantales=()):
    """The presentation of a :class:`TableDouble` (and optionally a
    :class:`TableMonoidal` on it, companion pairs and quantales)."""
    def names(table):
        return {(tuple(str(x) for x in k) if isinstance(k, tuple) else str(k)): str(v)
                for k, v in table.items()}

    p = Presentation(
        name=_safe_name(T.name), strict=T.strict, objects=[str(o) for o in T.objects],
        tight={str(f): (str(s), str(t)) for f, (s, t) in T.tight_table.items()},
        tight_ids=names(T.tight_ids), tight_comp=names(T.tight_comp),
        loose={str(M): (str(s), str(t)) for M, (s, t) in T.loose_table.items()},
        units=names(T.units), loose_comp=names(T.loose_comp),
        cells={str(a): tuple(map(str, bd)) for a, bd in T.cell_table.items()},
        cell_ids=names(T.cell_ids), vcomp=names(T.vcomp), unit_cells=names(T.unit_cells),
        hcomp=names(T.hcomp), assoc=names(T.assoc_table), lunitor=names(T.lunitor_table),
        runitor=names(T.runitor_table))
    for pair in companions:
        p.companions[pair.f.name] = (pair.fhat.name, pair.eta.name, pair.eps.name)
    if monoidal is not None:
        t = monoidal.tables
        p.monoidal = MonoidalTables(monoidal.level(), str(monoidal.unit_object),
                                    **{k: names(v) for k, v in t.items()})
    for Q in quantales:
        lab = {x: str(x) if re.fullmatch(_NAME, str(x)) else f"q{i}"
               for i, x in enumerate(Q.carrier)}
        els = [lab[x] for x in Q.carrier]
        p.quantales[Q.name] = QuantaleTables(
            Q.name, els, lab[Q.bottom], lab[Q.unit],
            {(lab[x], lab[y]) for x in Q.carrier for y in Q.carrier if Q.leq(x, y)},
            {(lab[x], lab[y]): lab[Q.join(x, y)] for x in Q.carrier for y in Q.carrier},
            {(lab[x], lab[y]): lab[Q.mult(x, y)] for x in Q.carrier for y in Q.carrier})
    return p


def load_presentation(path):
    from pathlib import Path
    return parse_presentation(Path(path).read_text())


def shipped_presentation_dir():
    from pathlib import Path
    return Path(__file__).resolve().parent / "presentations"


__all__ = ["Presentation", "MonoidalTables", "QuantaleTables", "parse_presentation",
           "serialize_presentation", "presentation_of", "load_presentation",
           "shipped_presentation_dir"]
