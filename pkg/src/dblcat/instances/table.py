"""Table-backed double categories: every operation is a finite lookup."""

from itertools import product

from ..dblcore import Cell, DoubleCategory, Loose, Tight, Universe
from ..errors import BoundaryMismatch, SemanticError
from ..mondbl import LEVELS, MonoidalDoubleCategory


class TableDouble(DoubleCategory):
    """A finite double category given by explicit tables over names.

    tight: name -> (src, dst);  tight_ids: object -> name;  tight_comp: (g, f) -> name
    loose: name -> (src, tgt);  units: object -> name;      loose_comp: (N, M) -> name
    cells: name -> (top, bottom, left, right)
    cell_ids: loose -> cell;  vcomp: (b, a) -> cell;  unit_cells: tight -> cell
    hcomp: (b, a) -> cell;  assoc: (P, N, M) -> cell;  lunitor, runitor: loose -> cell

    With ``strict=True`` missing constraint entries default to identity cells
    (the loose composites must then agree on the nose).
    """

    def __init__(self, objects, tight, tight_ids, tight_comp, loose, units, loose_comp,
                 cells, cell_ids, vcomp, unit_cells, hcomp, assoc=None, lunitor=None,
                 runitor=None, strict=False, name="T"):
        self.name = name
        self.objects = list(objects)
        self.tight_table = dict(tight)
        self.tight_ids = dict(tight_ids)
        self.tight_comp = dict(tight_comp)
        self.loose_table = dict(loose)
        self.units = dict(units)
        self.loose_comp = dict(loose_comp)
        self.cell_table = dict(cells)
        self.cell_ids = dict(cell_ids)
        self.vcomp = dict(vcomp)
        self.unit_cells = dict(unit_cells)
        self.hcomp = dict(hcomp)
        self.assoc_table = dict(assoc or {})
        self.lunitor_table = dict(lunitor or {})
        self.runitor_table = dict(runitor or {})
        self.strict = strict
        self._validate()

    def _validate(self):
        objs = set(self.objects)
        for f, (s, t) in self.tight_table.items():
            if s not in objs or t not in objs:
                raise SemanticError(f"tight cell {f} has an unknown endpoint")
        for M, (s, t) in self.loose_table.items():
            if s not in objs or t not in objs:
                raise SemanticError(f"loose cell {M} has an unknown endpoint")
        for a, (top, bottom, left, right) in self.cell_table.items():
            for M in (top, bottom):
                if M not in self.loose_table:
                    raise SemanticError(f"2-cell {a} mentions unknown loose cell {M}")
            for f in (left, right):
                if f not in self.tight_table:
                    raise SemanticError(f"2-cell {a} mentions unknown tight cell {f}")
            ts, tt = self.loose_table[top]
            bs, bt = self.loose_table[bottom]
            ls, lt = self.tight_table[left]
            rs, rt = self.tight_table[right]
            if (ts, bs, tt, bt) != (ls, lt, rs, rt):
                raise SemanticError(
                    f"2-cell {a} is not a square: S(top)={ts}, T(top)={tt}, S(bottom)={bs}, "
                    f"T(bottom)={bt} but left is {ls}->{lt} and right is {rs}->{rt}")

    # handles
    def tight_cell(self, name):
        s, t = self.tight_table[name]
        return Tight(name, s, t)

    def loose_cell(self, name):
        s, t = self.loose_table[name]
        return Loose(name, s, t)

    def cell(self, name):
        top, bottom, left, right = self.cell_table[name]
        return Cell(name, self.loose_cell(top), self.loose_cell(bottom),
                    self.tight_cell(left), self.tight_cell(right))

    def _look(self, table, key, what):
        try:
            return table[key]
        except KeyError:
            raise BoundaryMismatch(f"{what} undefined at {key!r}") from None

    # primitives
    def _tight_id(self, A):
        return self.tight_cell(self._look(self.tight_ids, A, "tight identity"))

    def _tight_compose(self, g, f):
        return self.tight_cell(self._look(self.tight_comp, (g.name, f.name), "tight composite"))

    def tight_inverse(self, f):
        for g in self.tight_table:
            if self.tight_table[g] == (f.dst, f.src):
                if (self.tight_comp.get((g, f.name)) == self.tight_ids[f.src]
                        and self.tight_comp.get((f.name, g)) == self.tight_ids[f.dst]):
                    return self.tight_cell(g)
        return None

    def _unit(self, A):
        return self.loose_cell(self._look(self.units, A, "loose unit"))

    def _unit_cell(self, f):
        return self.cell(self._look(self.unit_cells, f.name, "unit 2-cell"))

    def _loose_compose(self, N, M):
        return self.loose_cell(self._look(self.loose_comp, (N.name, M.name), "loose composite"))

    def _cell_id(self, M):
        return self.cell(self._look(self.cell_ids, M.name, "identity 2-cell"))

    def _vcompose(self, b, a):
        return self.cell(self._look(self.vcomp, (b.name, a.name), "vertical composite"))

    def _hcompose(self, b, a):
        return self.cell(self._look(self.hcomp, (b.name, a.name), "horizontal composite"))

    def _constraint(self, table, key, top, bottom, what):
        if key in table:
            return self.cell(table[key])
        if self.strict and top == bottom:
            return self._cell_id(top)
        raise BoundaryMismatch(f"{what} undefined at {key!r}")

    def _assoc(self, P, N, M):
        top = self.loose_compose(self.loose_compose(P, N), M)
        bottom = self.loose_compose(P, self.loose_compose(N, M))
        return self._constraint(self.assoc_table, (P.name, N.name, M.name), top, bottom, "associator")

    def _lunitor(self, M):
        top = self.loose_compose(self.unit(M.tgt), M)
        return self._constraint(self.lunitor_table, M.name, top, M, "left unitor")

    def _runitor(self, M):
        top = self.loose_compose(M, self.unit(M.src))
        return self._constraint(self.runitor_table, M.name, top, M, "right unitor")

    def inverse(self, cell):
        f, g = self.tight_inverse(cell.left), self.tight_inverse(cell.right)
        if f is None or g is None:
            return None
        for name, (top, bottom, left, right) in self.cell_table.items():
            if (top, bottom, left, right) != (cell.bottom.name, cell.top.name, f.name, g.name):
                continue
            if (self.vcomp.get((name, cell.name)) == self.cell_ids[cell.top.name]
                    and self.vcomp.get((cell.name, name)) == self.cell_ids[cell.bottom.name]):
                return self.cell(name)
        return None

    def cells_between(self, M, N, f, g):
        key = (M.name, N.name, f.name, g.name)
        return [self.cell(a) for a, bd in self.cell_table.items() if bd == key]

    def loose_between(self, A, B, limit=None):
        out = [self.loose_cell(M) for M, ends in self.loose_table.items() if ends == (A, B)]
        return out if limit is None else out[:limit]

    def universe(self):
        """Everything in the tables."""
        return Universe(self.objects, [self.tight_cell(f) for f in self.tight_table],
                        [self.loose_cell(M) for M in self.loose_table],
                        [self.cell(a) for a in self.cell_table])


def table_from_rules(objects, tight, loose, cells, name="T"):
    """Tabulate a strict double category from rule callables.

    ``tight`` is a triple (arrows {name: (s, t)}, ids, compose(g, f) -> name);
    ``loose`` is (arrows, units, compose(N, M) -> name); ``cells`` is a list of
    cell boundaries (top, bottom, left, right), one cell per boundary (a thin
    double category).  Composite cells are located by boundary.
    """
    tarrows, tids, tcomp = tight
    larrows, lunits, lcomp = loose
    tight_comp = {(g, f): tcomp(g, f) for f in tarrows for g in tarrows
                  if tarrows[f][1] == tarrows[g][0]}
    loose_comp = {(N, M): lcomp(N, M) for M in larrows for N in larrows
                  if larrows[M][1] == larrows[N][0]}
    names = {}
    table = {}
    for k, bd in enumerate(cells):
        nm = f"c{k}"
        names[bd] = nm
        table[nm] = bd

    def find(bd, what):
        if bd not in names:
            raise SemanticError(f"{what} {bd!r} is not a listed 2-cell")
        return names[bd]

    cell_ids = {M: find((M, M, tids[s], tids[t]), "identity") for M, (s, t) in larrows.items()}
    unit_cells = {f: find((lunits[s], lunits[t], f, f), "unit cell") for f, (s, t) in tarrows.items()}
    vcomp = {}
    hcomp = {}
    for a, (top, bottom, left, right) in table.items():
        for b, (top2, bottom2, left2, right2) in table.items():
            if top2 == bottom:
                vcomp[(b, a)] = find((top, bottom2, tight_comp[(left2, left)],
                                      tight_comp[(right2, right)]), "vertical composite")
            if left2 == right and larrows[top2][0] == larrows[top][1]:
                hcomp[(b, a)] = find((loose_comp[(top2, top)], loose_comp[(bottom2, bottom)],
                                      left, right2), "horizontal composite")
    return TableDouble(objects, tarrows, tids, tight_comp, larrows, lunits, loose_comp, table,
                       cell_ids, vcomp, unit_cells, hcomp, strict=True, name=name)


class TableMonoidal(MonoidalDoubleCategory):
    """A monoidal structure on a :class:`TableDouble` given by lookup tables.

    tensor: (A, B) -> object;  tensor_tight, tensor_loose, tensor_cell: pairs -> name
    interchange: (M2, N2, M1, N1) -> cell;  unit_interchange: (A, B) -> cell
    assoc: (A, B, C) -> tight;  assoc_cell: (M, N, P) -> cell
    lunit, runit: object -> tight;  lunit_cell, runit_cell: loose -> cell
    braid: (A, B) -> tight;  braid_cell: (M, N) -> cell

    With ``strict=True`` a missing constraint is the identity wherever its
    boundary allows one.
    """

    def __init__(self, T, unit_object, tensor, tensor_tight, tensor_loose, tensor_cell,
                 interchange=None, unit_interchange=None, assoc=None, assoc_cell=None,
                 lunit=None, lunit_cell=None, runit=None, runit_cell=None, braid=None,
                 braid_cell=None, level="monoidal", strict=False, name=None):
        super().__init__(T, unit_object)
        if level not in LEVELS:
            raise SemanticError(f"unknown level {level!r}")
        self.braided = level in ("braided", "symmetric")
        self.symmetric = level == "symmetric"
        self.name = name or f"{T.name}, tensor"
        self.strict = strict
        self.tables = {
            "tensor": dict(tensor), "tensor_tight": dict(tensor_tight),
            "tensor_loose": dict(tensor_loose), "tensor_cell": dict(tensor_cell),
            "interchange": dict(interchange or {}), "unit_interchange": dict(unit_interchange or {}),
            "assoc": dict(assoc or {}), "assoc_cell": dict(assoc_cell or {}),
            "lunit": dict(lunit or {}), "lunit_cell": dict(lunit_cell or {}),
            "runit": dict(runit or {}), "runit_cell": dict(runit_cell or {}),
            "braid": dict(braid or {}), "braid_cell": dict(braid_cell or {}),
        }

    def _get(self, table, key):
        try:
            return self.tables[table][key]
        except KeyError:
            raise BoundaryMismatch(f"{table} undefined at {key!r}") from None

    def _tight(self, table, key, src, dst):
        if key in self.tables[table]:
            return self.base.tight_cell(self.tables[table][key])
        if self.strict and src == dst:
            return self.base.tight_id(src)
        raise BoundaryMismatch(f"{table} undefined at {key!r}")

    def _cell(self, table, key, top, bottom, left, right):
        if key in self.tables[table]:
            return self.base.cell(self.tables[table][key])
        T = self.base
        if (self.strict and top == bottom and left == T.tight_id(top.src)
                and right == T.tight_id(top.tgt)):
            return T.cell_id(top)
        raise BoundaryMismatch(f"{table} undefined at {key!r}")

    def tensor(self, A, B):
        return self._get("tensor", (A, B))

    def tensor_tight(self, f, g):
        return self.base.tight_cell(self._get("tensor_tight", (f.name, g.name)))

    def tensor_loose(self, M, N):
        return self.base.loose_cell(self._get("tensor_loose", (M.name, N.name)))

    def tensor_cell(self, a, b):
        return self.base.cell(self._get("tensor_cell", (a.name, b.name)))

    def interchange(self, M2, N2, M1, N1):
        T, tl = self.base, self.tensor_loose
        top = T.loose_compose(tl(M2, N2), tl(M1, N1))
        bottom = tl(T.loose_compose(M2, M1), T.loose_compose(N2, N1))
        return self._cell("interchange", (M2.name, N2.name, M1.name, N1.name), top, bottom,
                          T.tight_id(top.src), T.tight_id(top.tgt))

    def unit_interchange(self, A, B):
        T = self.base
        top = T.unit(self.tensor(A, B))
        bottom = self.tensor_loose(T.unit(A), T.unit(B))
        ident = T.tight_id(top.src)
        return self._cell("unit_interchange", (A, B), top, bottom, ident, ident)

    def assoc(self, A, B, C):
        t = self.tensor
        return self._tight("assoc", (A, B, C), t(t(A, B), C), t(A, t(B, C)))

    def assoc_cell(self, M, N, P):
        tl = self.tensor_loose
        return self._cell("assoc_cell", (M.name, N.name, P.name), tl(tl(M, N), P), tl(M, tl(N, P)),
                          self.assoc(M.src, N.src, P.src), self.assoc(M.tgt, N.tgt, P.tgt))

    def lunit(self, A):
        return self._tight("lunit", A, self.tensor(self.unit_object, A), A)

    def lunit_cell(self, M):
        return self._cell("lunit_cell", M.name, self.tensor_loose(self.unit_loose, M), M,
                          self.lunit(M.src), self.lunit(M.tgt))

    def runit(self, A):
        return self._tight("runit", A, self.tensor(A, self.unit_object), A)

    def runit_cell(self, M):
        return self._cell("runit_cell", M.name, self.tensor_loose(M, self.unit_loose), M,
                          self.runit(M.src), self.runit(M.tgt))

    def braid(self, A, B):
        if not self.braided:
            return super().braid(A, B)
        return self._tight("braid", (A, B), self.tensor(A, B), self.tensor(B, A))

    def braid_cell(self, M, N):
        if not self.braided:
            return super().braid_cell(M, N)
        return self._cell("braid_cell", (M.name, N.name), self.tensor_loose(M, N),
                          self.tensor_loose(N, M), self.braid(M.src, N.src), self.braid(M.tgt, N.tgt))
