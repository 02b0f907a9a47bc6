"""Pseudo double categories: interface, universes, functors, transformations, checker.

Conventions used throughout the package:

* a loose 1-cell ``M: A -|-> B`` has ``M.src == A`` and ``M.tgt == B``;
* ``loose_compose(N, M)`` is ``N (.) M`` for ``A -M-> B -N-> C``;
* a 2-cell has ``top``, ``bottom`` (loose) and ``left``, ``right`` (tight),
  with ``left: top.src -> bottom.src`` and ``right: top.tgt -> bottom.tgt``;
* ``vcompose(b, a)`` is ``b . a`` (a on top), ``hcompose(b, a)`` is ``b (.) a``;
* ``assoc(P, N, M): (P.N).M => P.(N.M)``, ``lunitor(M): U_B . M => M``,
  ``runitor(M): M . U_A => M``.
"""

from dataclasses import dataclass
from itertools import product

from .errors import (BoundaryMismatch, EnumerationUnsupported,
                     UnresolvableUniverse)
from .report import Family, run_families


@dataclass(frozen=True)
class Tight:
    name: str
    src: object
    dst: object

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Loose:
    name: str
    src: object
    tgt: object

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Cell:
    name: str
    top: object
    bottom: object
    left: object
    right: object

    def __repr__(self):
        return self.name


class DoubleCategory:
    """Abstract pseudo double category.

    Subclasses implement the underscored primitives; the public methods
    check boundaries first and raise BoundaryMismatch on disagreement.
    """

    name = "D"

    # -- primitives -------------------------------------------------------
    def _tight_id(self, A):
        raise NotImplementedError

    def _tight_compose(self, g, f):
        raise NotImplementedError

    def _unit(self, A):
        raise NotImplementedError

    def _unit_cell(self, f):
        raise NotImplementedError

    def _loose_compose(self, N, M):
        raise NotImplementedError

    def _cell_id(self, M):
        raise NotImplementedError

    def _vcompose(self, b, a):
        raise NotImplementedError

    def _hcompose(self, b, a):
        raise NotImplementedError

    def _assoc(self, P, N, M):
        raise NotImplementedError

    def _lunitor(self, M):
        raise NotImplementedError

    def _runitor(self, M):
        raise NotImplementedError

    def inverse(self, cell):
        """Inverse of a 2-cell under vertical composition, or None."""
        return None

    def tight_inverse(self, f):
        return None

    def cells_between(self, M, N, f, g):
        raise EnumerationUnsupported(f"{self.name} cannot enumerate 2-cells")

    def loose_between(self, A, B, limit=None):
        raise EnumerationUnsupported(f"{self.name} cannot enumerate loose cells")

    def cell_eq(self, a, b):
        return a == b

    # -- checked public operations ----------------------------------------
    def tight_id(self, A):
        return self._tight_id(A)

    def tight_compose(self, g, f):
        if f.dst != g.src:
            raise BoundaryMismatch(f"tight composite: {f!r} ends at {f.dst!r}, {g!r} starts at {g.src!r}")
        return self._tight_compose(g, f)

    def unit(self, A):
        return self._unit(A)

    def unit_cell(self, f):
        return self._unit_cell(f)

    def loose_compose(self, N, M):
        if M.tgt != N.src:
            raise BoundaryMismatch(f"loose composite: {M!r} ends at {M.tgt!r}, {N!r} starts at {N.src!r}")
        return self._loose_compose(N, M)

    def cell_id(self, M):
        return self._cell_id(M)

    def vcompose(self, b, a):
        if a.bottom != b.top:
            raise BoundaryMismatch(f"vertical composite: bottom {a.bottom!r} vs top {b.top!r}")
        return self._vcompose(b, a)

    def hcompose(self, b, a):
        if a.right != b.left:
            raise BoundaryMismatch(f"horizontal composite: right {a.right!r} vs left {b.left!r}")
        return self._hcompose(b, a)

    def assoc(self, P, N, M):
        if M.tgt != N.src or N.tgt != P.src:
            raise BoundaryMismatch("associator of non-composable loose cells")
        return self._assoc(P, N, M)

    def lunitor(self, M):
        return self._lunitor(M)

    def runitor(self, M):
        return self._runitor(M)

    # -- derived ----------------------------------------------------------
    def vcompose_all(self, *cells):
        """``vcompose_all(c_n, ..., c_1)`` = c_n . ... . c_1."""
        result = cells[-1]
        for c in reversed(cells[:-1]):
            result = self.vcompose(c, result)
        return result

    def is_globular(self, cell):
        return (cell.left == self.tight_id(cell.top.src)
                and cell.right == self.tight_id(cell.top.tgt))

    def globular_cells_between(self, M, N):
        if M.src != N.src or M.tgt != N.tgt:
            raise BoundaryMismatch("globular cells need parallel loose cells")
        return self.cells_between(M, N, self.tight_id(M.src), self.tight_id(M.tgt))

    def checked_inverse(self, cell):
        """Inverse of ``cell`` verified by composing both ways, or None."""
        inv = self.inverse(cell)
        if inv is None:
            return None
        try:
            if (self.cell_eq(self.vcompose(inv, cell), self.cell_id(cell.top))
                    and self.cell_eq(self.vcompose(cell, inv), self.cell_id(cell.bottom))):
                return inv
        except BoundaryMismatch:
            return None
        return None

    def search_inverse(self, cell):
        """Inverse found by enumerating globular cells (a certificate), or None."""
        try:
            candidates = self.globular_cells_between(cell.bottom, cell.top)
        except EnumerationUnsupported:
            return self.checked_inverse(cell)
        for inv in candidates:
            if (self.cell_eq(self.vcompose(inv, cell), self.cell_id(cell.top))
                    and self.cell_eq(self.vcompose(cell, inv), self.cell_id(cell.bottom))):
                return inv
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# Universes


class Universe:
    """A finite window onto a double category used by exhaustive checks."""

    def __init__(self, objects, tight, loose, cells, size_bound=None):
        self.objects = list(objects)
        self.tight = list(tight)
        self.loose = list(loose)
        self.cells = list(cells)
        self.size_bound = size_bound
        self._index()

    def _index(self):
        objs = set(self.objects)
        for f in self.tight:
            if f.src not in objs or f.dst not in objs:
                raise UnresolvableUniverse(f"tight cell {f!r} leaves the object list")
        for M in self.loose:
            if M.src not in objs or M.tgt not in objs:
                raise UnresolvableUniverse(f"loose cell {M!r} leaves the object list")
        self.tight_from = {}
        for i, f in enumerate(self.tight):
            self.tight_from.setdefault(f.src, []).append(i)
        self.loose_from = {}
        for i, M in enumerate(self.loose):
            self.loose_from.setdefault(M.src, []).append(i)
        self.cells_by_top = {}
        self.cells_by_left = {}
        for i, c in enumerate(self.cells):
            self.cells_by_top.setdefault(c.top, []).append(i)
            self.cells_by_left.setdefault(c.left, []).append(i)

    def tight_pairs(self):
        """Index pairs (i, j) with tight[j] after tight[i]."""
        for i, f in enumerate(self.tight):
            for j in self.tight_from.get(f.dst, ()):
                yield i, j

    def tight_triples(self):
        for i, j in self.tight_pairs():
            for k in self.tight_from.get(self.tight[j].dst, ()):
                yield i, j, k

    def loose_pairs(self):
        """Index pairs (i, j) with loose[i] first and loose[j] second."""
        for i, M in enumerate(self.loose):
            for j in self.loose_from.get(M.tgt, ()):
                yield i, j

    def loose_triples(self):
        for i, j in self.loose_pairs():
            for k in self.loose_from.get(self.loose[j].tgt, ()):
                yield i, j, k

    def loose_quadruples(self):
        for i, j, k in self.loose_triples():
            for m in self.loose_from.get(self.loose[k].tgt, ()):
                yield i, j, k, m

    def vertical_pairs(self):
        """(i, j): cells[j] stacked below cells[i]."""
        for i, a in enumerate(self.cells):
            for j in self.cells_by_top.get(a.bottom, ()):
                yield i, j

    def vertical_triples(self):
        for i, j in self.vertical_pairs():
            for k in self.cells_by_top.get(self.cells[j].bottom, ()):
                yield i, j, k

    def horizontal_pairs(self):
        """(i, j): cells[j] to the right of cells[i]."""
        for i, a in enumerate(self.cells):
            for j in self.cells_by_left.get(a.right, ()):
                if self.cells[j].top.src == a.top.tgt:
                    yield i, j

    def horizontal_triples(self):
        for i, j in self.horizontal_pairs():
            b = self.cells[j]
            for k in self.cells_by_left.get(b.right, ()):
                if self.cells[k].top.src == b.top.tgt:
                    yield i, j, k

    def grids(self):
        """2x2 grids (i, j, k, m): a1=cells[i], a2=cells[j] side by side on top,
        b1=cells[k], b2=cells[m] below them."""
        for i, j in self.horizontal_pairs():
            a1, a2 = self.cells[i], self.cells[j]
            for k in self.cells_by_top.get(a1.bottom, ()):
                b1 = self.cells[k]
                for m in self.cells_by_top.get(a2.bottom, ()):
                    if self.cells[m].left == b1.right:
                        yield i, j, k, m

    def __repr__(self):
        return (f"Universe({len(self.objects)} objects, {len(self.tight)} tight, "
                f"{len(self.loose)} loose, {len(self.cells)} cells)")


def universe_from_enumeration(D, objects, tight, loose, max_cells_per_boundary=None, cell_filter=None):
    """Build a universe whose 2-cells are all cells between listed loose cells
    over listed tight cells (optionally capped per boundary)."""
    by_ends = {}
    for f in tight:
        by_ends.setdefault((f.src, f.dst), []).append(f)
    cells = []
    for M in loose:
        for N in loose:
            for f in by_ends.get((M.src, N.src), ()):
                for g in by_ends.get((M.tgt, N.tgt), ()):
                    found = D.cells_between(M, N, f, g)
                    if cell_filter is not None:
                        found = [c for c in found if cell_filter(c)]
                    if max_cells_per_boundary is not None:
                        found = found[:max_cells_per_boundary]
                    cells.extend(found)
    return Universe(objects, tight, loose, cells)


def stride_sample(items, n):
    """At most ``n`` items, evenly spaced, first item always kept."""
    items = list(items)
    if n is None or len(items) <= n:
        return items
    step = len(items) / n
    return [items[int(i * step)] for i in range(n)]


def windowed_universe(D, objects, tight, loose, cell_size_bound=None, tight_for_cells="all",
                      max_cells_per_boundary=None, max_cells=None):
    """Universe whose 2-cells are enumerated between the listed loose cells
    with both ends of size at most ``cell_size_bound``, over identities
    (``tight_for_cells='ids'``) or every listed tight cell, then thinned to
    ``max_cells`` by an even stride."""
    small = loose if cell_size_bound is None else [
        M for M in loose if len(M.src) <= cell_size_bound and len(M.tgt) <= cell_size_bound]
    if tight_for_cells == "ids":
        ctight = [D.tight_id(A) for A in objects]
    else:
        ctight = tight
    if cell_size_bound is not None:
        ctight = [f for f in ctight if len(f.src) <= cell_size_bound and len(f.dst) <= cell_size_bound]
    by_ends = {}
    for f in ctight:
        by_ends.setdefault((f.src, f.dst), []).append(f)
    cells = []
    for M in small:
        for N in small:
            for f in by_ends.get((M.src, N.src), ()):
                for g in by_ends.get((M.tgt, N.tgt), ()):
                    found = D.cells_between(M, N, f, g)
                    if max_cells_per_boundary is not None:
                        found = found[:max_cells_per_boundary]
                    cells.extend(found)
    return Universe(objects, tight, loose, stride_sample(cells, max_cells), len(objects) - 1)


# ---------------------------------------------------------------------------
# Checker


def _same(D, lhs, rhs):
    if D.cell_eq(lhs, rhs):
        return True
    return f"{lhs!r} != {rhs!r}"


def _boundary(cell, top, bottom, left, right):
    if cell.top != top:
        return f"top {cell.top!r} != {top!r}"
    if cell.bottom != bottom:
        return f"bottom {cell.bottom!r} != {bottom!r}"
    if cell.left != left:
        return f"left {cell.left!r} != {left!r}"
    if cell.right != right:
        return f"right {cell.right!r} != {right!r}"
    return True


def double_category_families(D, U):
    T, L, C = U.tight, U.loose, U.cells
    ident = D.tight_id

    def tight_units(f):
        return (D.tight_compose(f, ident(f.src)) == f and D.tight_compose(ident(f.dst), f) == f)

    def tight_assoc(f, g, h):
        return D.tight_compose(h, D.tight_compose(g, f)) == D.tight_compose(D.tight_compose(h, g), f)

    def cell_units(a):
        return (D.cell_eq(D.vcompose(a, D.cell_id(a.top)), a)
                and D.cell_eq(D.vcompose(D.cell_id(a.bottom), a), a))

    def cell_assoc(a, b, c):
        return _same(D, D.vcompose(c, D.vcompose(b, a)), D.vcompose(D.vcompose(c, b), a))

    def cell_id_boundary(M):
        return _boundary(D.cell_id(M), M, M, ident(M.src), ident(M.tgt))

    def vcomp_boundary(a, b):
        ba = D.vcompose(b, a)
        return _boundary(ba, a.top, b.bottom, D.tight_compose(b.left, a.left),
                         D.tight_compose(b.right, a.right))

    def unit_ends(A):
        UA = D.unit(A)
        return UA.src == A and UA.tgt == A

    def compose_ends(M, N):
        NM = D.loose_compose(N, M)
        return NM.src == M.src and NM.tgt == N.tgt

    def unit_functor_id(A):
        return _same(D, D.unit_cell(ident(A)), D.cell_id(D.unit(A)))

    def unit_functor_comp(f, g):
        return _same(D, D.unit_cell(D.tight_compose(g, f)),
                     D.vcompose(D.unit_cell(g), D.unit_cell(f)))

    def unit_cell_boundary(f):
        return _boundary(D.unit_cell(f), D.unit(f.src), D.unit(f.dst), f, f)

    def hcomp_boundary(a, b):
        ba = D.hcompose(b, a)
        return _boundary(ba, D.loose_compose(b.top, a.top), D.loose_compose(b.bottom, a.bottom),
                         a.left, b.right)

    def hcomp_ids(M, N):
        return _same(D, D.hcompose(D.cell_id(N), D.cell_id(M)), D.cell_id(D.loose_compose(N, M)))

    def interchange(a1, a2, b1, b2):
        lhs = D.vcompose(D.hcompose(b2, b1), D.hcompose(a2, a1))
        rhs = D.hcompose(D.vcompose(b2, a2), D.vcompose(b1, a1))
        return _same(D, lhs, rhs)

    def assoc_natural(a1, a2, a3):
        lhs = D.vcompose(D.assoc(a3.bottom, a2.bottom, a1.bottom),
                         D.hcompose(D.hcompose(a3, a2), a1))
        rhs = D.vcompose(D.hcompose(a3, D.hcompose(a2, a1)),
                         D.assoc(a3.top, a2.top, a1.top))
        return _same(D, lhs, rhs)

    def lunitor_natural(a):
        lhs = D.vcompose(D.lunitor(a.bottom), D.hcompose(D.unit_cell(a.right), a))
        rhs = D.vcompose(a, D.lunitor(a.top))
        return _same(D, lhs, rhs)

    def runitor_natural(a):
        lhs = D.vcompose(D.runitor(a.bottom), D.hcompose(a, D.unit_cell(a.left)))
        rhs = D.vcompose(a, D.runitor(a.top))
        return _same(D, lhs, rhs)

    def assoc_globular(M, N, P):
        a = D.assoc(P, N, M)
        return _boundary(a, D.loose_compose(D.loose_compose(P, N), M),
                         D.loose_compose(P, D.loose_compose(N, M)), ident(M.src), ident(P.tgt))

    def unitors_globular(M):
        l, r = D.lunitor(M), D.runitor(M)
        ok = _boundary(l, D.loose_compose(D.unit(M.tgt), M), M, ident(M.src), ident(M.tgt))
        if ok is not True:
            return "lunitor " + ok
        ok = _boundary(r, D.loose_compose(M, D.unit(M.src)), M, ident(M.src), ident(M.tgt))
        return ok if ok is True else "runitor " + ok

    def invertible(cell):
        return D.checked_inverse(cell) is not None or f"no inverse for {cell!r}"

    def constraints_invertible_1(M):
        for c in (D.lunitor(M), D.runitor(M)):
            if D.checked_inverse(c) is None:
                return f"constraint {c!r} not invertible"
        return True

    def constraints_invertible_3(M, N, P):
        return invertible(D.assoc(P, N, M))

    def pentagon(M1, M2, M3, M4):
        a = D.assoc
        c = D.loose_compose
        lhs = D.vcompose(a(M4, M3, c(M2, M1)), a(c(M4, M3), M2, M1))
        rhs = D.vcompose_all(D.hcompose(D.cell_id(M4), a(M3, M2, M1)),
                             a(M4, c(M3, M2), M1),
                             D.hcompose(a(M4, M3, M2), D.cell_id(M1)))
        return _same(D, lhs, rhs)

    def triangle(M, N):
        lhs = D.vcompose(D.hcompose(D.cell_id(N), D.lunitor(M)), D.assoc(N, D.unit(M.tgt), M))
        rhs = D.hcompose(D.runitor(N), D.cell_id(M))
        return _same(D, lhs, rhs)

    def gen(items, pick):
        return lambda: ((k, pick(k)) for k in items())

    def over(seq):
        return lambda: (((i,), (x,)) for i, x in enumerate(seq))

    def tup(seq, idx_iter):
        return lambda: ((key, tuple(seq[i] for i in key)) for key in idx_iter())

    return [
        Family("D0 unit laws", over(T), tight_units),
        Family("D0 associativity", tup(T, U.tight_triples), tight_assoc),
        Family("D1 unit laws", over(C), cell_units),
        Family("D1 associativity", tup(C, U.vertical_triples), cell_assoc),
        Family("S,T on identity cells", over(L), cell_id_boundary),
        Family("S,T functorial on vertical composites", tup(C, U.vertical_pairs), vcomp_boundary),
        Family("S,T of units", over(U.objects), unit_ends),
        Family("S,T of loose composites", tup(L, U.loose_pairs), compose_ends),
        Family("U preserves identities", over(U.objects), unit_functor_id),
        Family("U preserves composites", tup(T, U.tight_pairs), unit_functor_comp),
        Family("U_f boundary", over(T), unit_cell_boundary),
        Family("horizontal composite boundary", tup(C, U.horizontal_pairs), hcomp_boundary),
        Family("horizontal composite of identities", tup(L, U.loose_pairs), hcomp_ids),
        Family("interchange", tup(C, U.grids), interchange),
        Family("associator naturality", tup(C, U.horizontal_triples), assoc_natural),
        Family("left unitor naturality", over(C), lunitor_natural),
        Family("right unitor naturality", over(C), runitor_natural),
        Family("associator globular", tup(L, U.loose_triples), assoc_globular),
        Family("unitors globular", over(L), unitors_globular),
        Family("associator invertible", tup(L, U.loose_triples), constraints_invertible_3),
        Family("unitors invertible", over(L), constraints_invertible_1),
        Family("pentagon", tup(L, U.loose_quadruples), pentagon),
        Family("triangle", tup(L, U.loose_pairs), triangle),
    ]


def check_double_category(D, U):
    """Every pseudo double category axiom, exhaustively over the universe."""
    return run_families(double_category_families(D, U))


# ---------------------------------------------------------------------------
# Loose opposite


class _OpLoose:
    __slots__ = ("base",)

    def __init__(self, base):
        self.base = base

    @property
    def src(self):
        return self.base.tgt

    @property
    def tgt(self):
        return self.base.src

    def __eq__(self, other):
        return isinstance(other, _OpLoose) and self.base == other.base

    def __hash__(self):
        return hash(("op", self.base))

    def __repr__(self):
        return f"op({self.base!r})"


class _OpCell:
    __slots__ = ("base",)

    def __init__(self, base):
        self.base = base

    @property
    def top(self):
        return _OpLoose(self.base.top)

    @property
    def bottom(self):
        return _OpLoose(self.base.bottom)

    @property
    def left(self):
        return self.base.right

    @property
    def right(self):
        return self.base.left

    def __eq__(self, other):
        return isinstance(other, _OpCell) and self.base == other.base

    def __hash__(self):
        return hash(("op", self.base))

    def __repr__(self):
        return f"op({self.base!r})"


class LooseOpposite(DoubleCategory):
    """Loose cells reversed: S and T swap, loose composition flips, and the
    left/right tight boundaries of every 2-cell swap."""

    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}^lop"

    def _tight_id(self, A):
        return self.base.tight_id(A)

    def _tight_compose(self, g, f):
        return self.base.tight_compose(g, f)

    def tight_inverse(self, f):
        return self.base.tight_inverse(f)

    def _unit(self, A):
        return _OpLoose(self.base.unit(A))

    def _unit_cell(self, f):
        return _OpCell(self.base.unit_cell(f))

    def _loose_compose(self, N, M):
        return _OpLoose(self.base.loose_compose(M.base, N.base))

    def _cell_id(self, M):
        return _OpCell(self.base.cell_id(M.base))

    def _vcompose(self, b, a):
        return _OpCell(self.base.vcompose(b.base, a.base))

    def _hcompose(self, b, a):
        return _OpCell(self.base.hcompose(a.base, b.base))

    def _assoc(self, P, N, M):
        inv = self.base.inverse(self.base.assoc(M.base, N.base, P.base))
        return _OpCell(inv)

    def _lunitor(self, M):
        return _OpCell(self.base.runitor(M.base))

    def _runitor(self, M):
        return _OpCell(self.base.lunitor(M.base))

    def inverse(self, cell):
        inv = self.base.inverse(cell.base)
        return None if inv is None else _OpCell(inv)

    def cells_between(self, M, N, f, g):
        return [_OpCell(c) for c in self.base.cells_between(M.base, N.base, g, f)]

    def loose_between(self, A, B, limit=None):
        return [_OpLoose(M) for M in self.base.loose_between(B, A, limit)]

    def wrap_loose(self, M):
        return _OpLoose(M)

    def wrap_cell(self, c):
        return _OpCell(c)


def loose_opposite(D):
    """The loose opposite; applying it twice returns the original instance."""
    if isinstance(D, LooseOpposite):
        return D.base
    return LooseOpposite(D)


def opposite_universe(D_op, U):
    return Universe(U.objects, U.tight, [_OpLoose(M) for M in U.loose],
                    [_OpCell(c) for c in U.cells], U.size_bound)


# ---------------------------------------------------------------------------
# Products


class ProdTight:
    __slots__ = ("parts", "src", "dst", "_h")

    def __init__(self, parts):
        self.parts = tuple(parts)
        self.src = tuple(p.src for p in self.parts)
        self.dst = tuple(p.dst for p in self.parts)
        self._h = hash(("PT", self.parts))

    def __eq__(self, other):
        return isinstance(other, ProdTight) and self.parts == other.parts

    def __hash__(self):
        return self._h

    def __repr__(self):
        return "<" + ", ".join(map(repr, self.parts)) + ">"


class ProdLoose:
    __slots__ = ("parts", "src", "tgt", "_h")

    def __init__(self, parts):
        self.parts = tuple(parts)
        self.src = tuple(p.src for p in self.parts)
        self.tgt = tuple(p.tgt for p in self.parts)
        self._h = hash(("PL", self.parts))

    def __eq__(self, other):
        return isinstance(other, ProdLoose) and self.parts == other.parts

    def __hash__(self):
        return self._h

    def __repr__(self):
        return "<" + ", ".join(map(repr, self.parts)) + ">"


class ProdCell:
    __slots__ = ("parts", "top", "bottom", "left", "right", "_h")

    def __init__(self, parts):
        self.parts = tuple(parts)
        self.top = ProdLoose(p.top for p in self.parts)
        self.bottom = ProdLoose(p.bottom for p in self.parts)
        self.left = ProdTight(p.left for p in self.parts)
        self.right = ProdTight(p.right for p in self.parts)
        self._h = hash(("PC", self.parts))

    def __eq__(self, other):
        return isinstance(other, ProdCell) and self.parts == other.parts

    def __hash__(self):
        return self._h

    def __repr__(self):
        return "<" + ", ".join(map(repr, self.parts)) + ">"


class ProductDouble(DoubleCategory):
    """Finite product of double categories; objects are tuples."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.name = " x ".join(f.name for f in self.factors)

    def _each(self, method, *args):
        return tuple(getattr(D, method)(*(a[i] for a in args)) for i, D in enumerate(self.factors))

    def _tight_id(self, A):
        return ProdTight(D.tight_id(a) for D, a in zip(self.factors, A))

    def _tight_compose(self, g, f):
        return ProdTight(self._each("tight_compose", g.parts, f.parts))

    def tight_inverse(self, f):
        parts = self._each("tight_inverse", f.parts)
        return None if any(p is None for p in parts) else ProdTight(parts)

    def _unit(self, A):
        return ProdLoose(D.unit(a) for D, a in zip(self.factors, A))

    def _unit_cell(self, f):
        return ProdCell(self._each("unit_cell", f.parts))

    def _loose_compose(self, N, M):
        return ProdLoose(self._each("loose_compose", N.parts, M.parts))

    def _cell_id(self, M):
        return ProdCell(self._each("cell_id", M.parts))

    def _vcompose(self, b, a):
        return ProdCell(self._each("vcompose", b.parts, a.parts))

    def _hcompose(self, b, a):
        return ProdCell(self._each("hcompose", b.parts, a.parts))

    def _assoc(self, P, N, M):
        return ProdCell(self._each("assoc", P.parts, N.parts, M.parts))

    def _lunitor(self, M):
        return ProdCell(self._each("lunitor", M.parts))

    def _runitor(self, M):
        return ProdCell(self._each("runitor", M.parts))

    def inverse(self, cell):
        parts = self._each("inverse", cell.parts)
        return None if any(p is None for p in parts) else ProdCell(parts)

    def cells_between(self, M, N, f, g):
        lists = self._each("cells_between", M.parts, N.parts, f.parts, g.parts)
        return [ProdCell(ps) for ps in product(*lists)]

    def loose_between(self, A, B, limit=None):
        lists = [D.loose_between(a, b, limit) for D, a, b in zip(self.factors, A, B)]
        return [ProdLoose(ps) for ps in product(*lists)]


def product_universe(universes, max_cells=None):
    """Cartesian product of factor universes (sizes multiply; keep factors small)."""
    objects = list(product(*[u.objects for u in universes]))
    tight = [ProdTight(ps) for ps in product(*[u.tight for u in universes])]
    loose = [ProdLoose(ps) for ps in product(*[u.loose for u in universes])]
    cells = [ProdCell(ps) for ps in product(*[u.cells for u in universes])]
    if max_cells is not None:
        cells = cells[:max_cells]
    return Universe(objects, tight, loose, cells)


# ---------------------------------------------------------------------------
# Double functors and tight transformations


class DoubleFunctor:
    """A pseudo double functor with explicit globular constraints

    ``comp(N, M): F N (.) F M => F(N (.) M)`` and ``unit(A): U_{FA} => F(U_A)``.
    """

    def __init__(self, src, dst, obj, tight, loose, cell, comp, unit, name="F"):
        self.src = src
        self.dst = dst
        self.obj = obj
        self.tight = tight
        self.loose = loose
        self.cell = cell
        self.comp = comp
        self.unit = unit
        self.name = name

    def __repr__(self):
        return f"<DoubleFunctor {self.name}: {self.src.name} -> {self.dst.name}>"


def identity_functor(D):
    return DoubleFunctor(
        D, D, lambda A: A, lambda f: f, lambda M: M, lambda c: c,
        lambda N, M: D.cell_id(D.loose_compose(N, M)),
        lambda A: D.cell_id(D.unit(A)), name=f"id_{D.name}")


def compose_functors(G, F):
    """G after F, with constraints G(F_comp) . G_comp and G(F_unit) . G_unit."""
    E = G.dst

    def comp(N, M):
        return E.vcompose(G.cell(F.comp(N, M)), G.comp(F.loose(N), F.loose(M)))

    def unit(A):
        return E.vcompose(G.cell(F.unit(A)), G.unit(F.obj(A)))

    return DoubleFunctor(
        F.src, E,
        lambda A: G.obj(F.obj(A)), lambda f: G.tight(F.tight(f)),
        lambda M: G.loose(F.loose(M)), lambda c: G.cell(F.cell(c)),
        comp, unit, name=f"{G.name}{F.name}")


def functor_families(F, U):
    D, E = F.src, F.dst
    T, L, C = U.tight, U.loose, U.cells

    def over(seq):
        return lambda: (((i,), (x,)) for i, x in enumerate(seq))

    def tup(seq, idx_iter):
        return lambda: ((key, tuple(seq[i] for i in key)) for key in idx_iter())

    def tight_ids(A):
        return F.tight(D.tight_id(A)) == E.tight_id(F.obj(A))

    def tight_comp(f, g):
        return F.tight(D.tight_compose(g, f)) == E.tight_compose(F.tight(g), F.tight(f))

    def loose_ends(M):
        FM = F.loose(M)
        return FM.src == F.obj(M.src) and FM.tgt == F.obj(M.tgt)

    def cell_boundary(a):
        return _boundary(F.cell(a), F.loose(a.top), F.loose(a.bottom), F.tight(a.left), F.tight(a.right))

    def cell_ids(M):
        return _same(E, F.cell(D.cell_id(M)), E.cell_id(F.loose(M)))

    def cell_comp(a, b):
        return _same(E, F.cell(D.vcompose(b, a)), E.vcompose(F.cell(b), F.cell(a)))

    def comp_boundary(M, N):
        c = F.comp(N, M)
        return _boundary(c, E.loose_compose(F.loose(N), F.loose(M)), F.loose(D.loose_compose(N, M)),
                         E.tight_id(F.obj(M.src)), E.tight_id(F.obj(N.tgt)))

    def unit_boundary(A):
        return _boundary(F.unit(A), E.unit(F.obj(A)), F.loose(D.unit(A)),
                         E.tight_id(F.obj(A)), E.tight_id(F.obj(A)))

    def comp_natural(a1, a2):
        lhs = E.vcompose(F.cell(D.hcompose(a2, a1)), F.comp(a2.top, a1.top))
        rhs = E.vcompose(F.comp(a2.bottom, a1.bottom), E.hcompose(F.cell(a2), F.cell(a1)))
        return _same(E, lhs, rhs)

    def unit_natural(f):
        lhs = E.vcompose(F.cell(D.unit_cell(f)), F.unit(f.src))
        rhs = E.vcompose(F.unit(f.dst), E.unit_cell(F.tight(f)))
        return _same(E, lhs, rhs)

    def hexagon(M1, M2, M3):
        c = D.loose_compose
        FM1, FM2, FM3 = F.loose(M1), F.loose(M2), F.loose(M3)
        lhs = E.vcompose_all(F.cell(D.assoc(M3, M2, M1)), F.comp(c(M3, M2), M1),
                             E.hcompose(F.comp(M3, M2), E.cell_id(FM1)))
        rhs = E.vcompose_all(F.comp(M3, c(M2, M1)), E.hcompose(E.cell_id(FM3), F.comp(M2, M1)),
                             E.assoc(FM3, FM2, FM1))
        return _same(E, lhs, rhs)

    def left_unit(M):
        FM = F.loose(M)
        lhs = E.vcompose_all(F.cell(D.lunitor(M)), F.comp(D.unit(M.tgt), M),
                             E.hcompose(F.unit(M.tgt), E.cell_id(FM)))
        return _same(E, lhs, E.lunitor(FM))

    def right_unit(M):
        FM = F.loose(M)
        lhs = E.vcompose_all(F.cell(D.runitor(M)), F.comp(M, D.unit(M.src)),
                             E.hcompose(E.cell_id(FM), F.unit(M.src)))
        return _same(E, lhs, E.runitor(FM))

    def comp_invertible(M, N):
        return E.checked_inverse(F.comp(N, M)) is not None or "composition constraint not invertible"

    def unit_invertible(A):
        return E.checked_inverse(F.unit(A)) is not None or "unit constraint not invertible"

    return [
        Family("F preserves tight identities", over(U.objects), tight_ids),
        Family("F preserves tight composites", tup(T, U.tight_pairs), tight_comp),
        Family("F preserves S,T", over(L), loose_ends),
        Family("F on 2-cell boundaries", over(C), cell_boundary),
        Family("F preserves identity 2-cells", over(L), cell_ids),
        Family("F preserves vertical composites", tup(C, U.vertical_pairs), cell_comp),
        Family("composition constraint globular", tup(L, U.loose_pairs), comp_boundary),
        Family("unit constraint globular", over(U.objects), unit_boundary),
        Family("composition constraint natural", tup(C, U.horizontal_pairs), comp_natural),
        Family("unit constraint natural", over(T), unit_natural),
        Family("functor hexagon", tup(L, U.loose_triples), hexagon),
        Family("functor left unit law", over(L), left_unit),
        Family("functor right unit law", over(L), right_unit),
        Family("composition constraint invertible", tup(L, U.loose_pairs), comp_invertible),
        Family("unit constraint invertible", over(U.objects), unit_invertible),
    ]


def check_double_functor(F, U):
    return run_families(functor_families(F, U))


class TightTransformation:
    """Components ``obj(A): FA -> GA`` and ``loose(M): FM => GM`` over (obj(SM), obj(TM))."""

    def __init__(self, src, dst, obj, loose, name="alpha"):
        self.src = src  # DoubleFunctor F
        self.dst = dst  # DoubleFunctor G
        self.obj = obj
        self.loose = loose
        self.name = name

    def __repr__(self):
        return f"<TightTransformation {self.name}: {self.src.name} -> {self.dst.name}>"


def identity_transformation(F):
    E = F.dst
    return TightTransformation(F, F, lambda A: E.tight_id(F.obj(A)),
                               lambda M: E.cell_id(F.loose(M)), name=f"1_{F.name}")


def vertical_transformation(beta, alpha):
    """beta . alpha for alpha: F -> G, beta: G -> H."""
    E = alpha.src.dst
    return TightTransformation(
        alpha.src, beta.dst,
        lambda A: E.tight_compose(beta.obj(A), alpha.obj(A)),
        lambda M: E.vcompose(beta.loose(M), alpha.loose(M)),
        name=f"{beta.name}.{alpha.name}")


def whisker_transformation(alpha, K):
    """alpha * K for a functor K into the common domain."""
    return TightTransformation(
        compose_functors(alpha.src, K), compose_functors(alpha.dst, K),
        lambda A: alpha.obj(K.obj(A)), lambda M: alpha.loose(K.loose(M)),
        name=f"{alpha.name}{K.name}")


def transform_by(L, alpha):
    """L * alpha for a functor L out of the common codomain."""
    return TightTransformation(
        compose_functors(L, alpha.src), compose_functors(L, alpha.dst),
        lambda A: L.tight(alpha.obj(A)), lambda M: L.cell(alpha.loose(M)),
        name=f"{L.name}{alpha.name}")


def inverse_transformation(alpha):
    """Componentwise inverse of an invertible tight transformation."""
    E = alpha.src.dst

    def obj(A):
        inv = E.tight_inverse(alpha.obj(A))
        if inv is None:
            from .errors import NotInvertible
            raise NotInvertible(f"component {alpha.obj(A)!r} has no inverse")
        return inv

    def loose(M):
        c = alpha.loose(M)
        inv = E.inverse(c)
        if inv is None:
            from .errors import NotInvertible
            raise NotInvertible(f"component {c!r} has no inverse")
        return inv

    return TightTransformation(alpha.dst, alpha.src, obj, loose, name=f"{alpha.name}^-1")


def transformation_families(alpha, U):
    F, G = alpha.src, alpha.dst
    D, E = F.src, F.dst

    def over(seq):
        return lambda: (((i,), (x,)) for i, x in enumerate(seq))

    def tup(seq, idx_iter):
        return lambda: ((key, tuple(seq[i] for i in key)) for key in idx_iter())

    def obj_boundary(A):
        a = alpha.obj(A)
        return (a.src == F.obj(A) and a.dst == G.obj(A)) or f"component {a!r} has wrong ends"

    def loose_boundary(M):
        return _boundary(alpha.loose(M), F.loose(M), G.loose(M), alpha.obj(M.src), alpha.obj(M.tgt))

    def tight_natural(f):
        return (E.tight_compose(G.tight(f), alpha.obj(f.src))
                == E.tight_compose(alpha.obj(f.dst), F.tight(f)))

    def cell_natural(a):
        return _same(E, E.vcompose(G.cell(a), alpha.loose(a.top)),
                     E.vcompose(alpha.loose(a.bottom), F.cell(a)))

    def comp_compat(M, N):
        lhs = E.vcompose(alpha.loose(D.loose_compose(N, M)), F.comp(N, M))
        rhs = E.vcompose(G.comp(N, M), E.hcompose(alpha.loose(N), alpha.loose(M)))
        return _same(E, lhs, rhs)

    def unit_compat(A):
        lhs = E.vcompose(alpha.loose(D.unit(A)), F.unit(A))
        rhs = E.vcompose(G.unit(A), E.unit_cell(alpha.obj(A)))
        return _same(E, lhs, rhs)

    return [
        Family("component ends", over(U.objects), obj_boundary),
        Family("loose component boundary", over(U.loose), loose_boundary),
        Family("tight naturality", over(U.tight), tight_natural),
        Family("2-cell naturality", over(U.cells), cell_natural),
        Family("compatibility with loose composition", tup(U.loose, U.loose_pairs), comp_compat),
        Family("compatibility with units", over(U.objects), unit_compat),
    ]


def check_tight_transformation(alpha, U):
    return run_families(transformation_families(alpha, U))
