"""Monoids, bimodules and equivariant maps in a monoidal double category.

Loose composition of bimodules ``M: A -|-> B`` and ``N: B -|-> C`` is the
coequalizer of the two actions of B on ``N (.) (B (.) M)``; every other
structure map is induced on the quotients.  Coequalizers come from a small
provider object: apex quotients for spans, the trivial one for posetal
homs, and a bounded search for table-backed double categories.

An independent oracle composes bimodules over internal categories in Span
by the coend formula directly on elements.
"""

from dataclasses import dataclass, field
from itertools import product

from ..dblcore import DoubleCategory, Universe, _same
from ..mondbl import MonoidalDoubleCategory
from ..errors import BoundaryMismatch, EnumerationUnsupported, MissingCoequalizers, NotInvertible
from ..finbase import FinCategory, FinFunction, FinSet, UnionFind, coequalizer, compose_functions, factor_through, z2_category
from ..report import Family, run_families
from .mat import MatDouble
from .span import Span, SpanCell, SpanDouble
from .table import TableDouble


# ---------------------------------------------------------------------------
# Coequalizers of parallel globular cells


class SpanCoequalizers:
    """Quotients of apexes."""

    def __init__(self, D):
        self.D = D

    def coequalize(self, a, b):
        N = a.bottom
        Q, q = coequalizer(a.map, b.map)
        legs = factor_through(q, N.left), factor_through(q, N.right)
        if None in legs:
            raise MissingCoequalizers("quotient does not respect the legs")
        return SpanCell(N, Span(Q, *legs), FinFunction.identity(N.src), FinFunction.identity(N.tgt), q)

    def factor(self, e, h):
        """The u with ``u . e = h`` for a surjective globular ``e``, or None."""
        if len(set(e.map.table)) != len(e.bottom.apex):
            return None
        m = factor_through(e.map, h.map)
        if m is None:
            return None
        return SpanCell(e.bottom, h.bottom, h.left, h.right, m)


class PosetCoequalizers:
    """Hom-posets: parallel cells are equal and the identity coequalizes them."""

    def __init__(self, D):
        self.D = D

    def coequalize(self, a, b):
        if a != b:
            raise MissingCoequalizers("parallel cells differ in a posetal hom")
        return self.D.cell_id(a.bottom)

    def factor(self, e, h):
        found = self.D.cells_between(e.bottom, h.bottom, h.left, h.right)
        return found[0] if found else None


class SearchCoequalizers:
    """Coequalizers looked up among the loose cells of a finite universe."""

    def __init__(self, D, U):
        self.D = D
        self.U = U

    def _parallel(self, N):
        return [X for X in self.U.loose if X.src == N.src and X.tgt == N.tgt]

    def _coequalizing(self, a, b, X):
        D = self.D
        return [c for c in D.globular_cells_between(a.bottom, X)
                if D.cell_eq(D.vcompose(c, a), D.vcompose(c, b))]

    def is_coequalizer(self, a, b, q, extra=()):
        D = self.D
        if not D.cell_eq(D.vcompose(q, a), D.vcompose(q, b)):
            return False
        for X in self._parallel(a.bottom) + list(extra):
            for c in self._coequalizing(a, b, X):
                us = [u for u in D.globular_cells_between(q.bottom, X)
                      if D.cell_eq(D.vcompose(u, q), c)]
                if len(us) != 1:
                    return False
        return True

    def coequalize(self, a, b):
        for X in self._parallel(a.bottom):
            for q in self._coequalizing(a, b, X):
                if self.is_coequalizer(a, b, q):
                    return q
        raise MissingCoequalizers(f"no coequalizer of {a!r} and {b!r} within the universe")

    def factor(self, e, h):
        D = self.D
        for u in D.cells_between(e.bottom, h.bottom, h.left, h.right):
            if D.cell_eq(D.vcompose(u, e), h):
                return u
        return None


def coequalizers_for(D, U=None):
    if isinstance(D, SpanDouble):
        return SpanCoequalizers(D)
    if isinstance(D, MatDouble):
        return PosetCoequalizers(D)
    if U is None:
        raise MissingCoequalizers(f"{D.name} needs a universe to search for coequalizers")
    return SearchCoequalizers(D, U)


def _parallel_pairs(D, U):
    cells = [c for c in U.cells if D.is_globular(c)]
    for a in cells:
        for b in cells:
            if a.top == b.top and a.bottom == b.bottom:
                yield a, b


def local_coequalizer_families(D, U, provider=None):
    """Every parallel pair of globular cells in U has a coequalizer, and
    whiskering by a loose cell of U on either side keeps it one."""
    C = provider or coequalizers_for(D, U)
    search = SearchCoequalizers(D, U)
    pairs = list(_parallel_pairs(D, U))

    def exists(a, b):
        try:
            q = C.coequalize(a, b)
        except MissingCoequalizers as exc:
            return str(exc)
        return search.is_coequalizer(a, b, q) or "candidate is not universal within the universe"

    def whiskered(side):
        def pred(a, b, P):
            q = C.coequalize(a, b)
            if side == "left":
                w = lambda c: D.hcompose(D.cell_id(P), c)  # noqa: E731
            else:
                w = lambda c: D.hcompose(c, D.cell_id(P))  # noqa: E731
            wa, wb, wq = w(a), w(b), w(q)
            if not D.cell_eq(D.vcompose(wq, wa), D.vcompose(wq, wb)):
                return "whiskered quotient does not coequalize"
            q2 = C.coequalize(wa, wb)
            u = C.factor(q2, wq)
            if u is None:
                return "whiskered quotient does not factor"
            return D.inverse(u) is not None or "comparison with the coequalizer is not invertible"
        return pred

    def left_instances():
        for i, (a, b) in enumerate(pairs):
            for j, P in enumerate(U.loose):
                if P.src == a.top.tgt:
                    yield (i, j), (a, b, P)

    def right_instances():
        for i, (a, b) in enumerate(pairs):
            for j, P in enumerate(U.loose):
                if P.tgt == a.top.src:
                    yield (i, j), (a, b, P)

    def pair_instances():
        return (((i,), ab) for i, ab in enumerate(pairs))

    return [
        Family("coequalizers exist", pair_instances, exists),
        Family("preserved by composing on the left", left_instances, whiskered("left")),
        Family("preserved by composing on the right", right_instances, whiskered("right")),
    ]


def check_local_coequalizers(D, U, provider=None):
    return run_families(local_coequalizer_families(D, U, provider))


def no_coequalizer_fixture():
    """One object, loose cells U and M with M.M = M, and cells 1, e: M => M
    with e idempotent.  The pair (1, e) has no coequalizer: e coequalizes
    it but factors through itself in two ways."""
    objects = ["x"]
    tight = {"1": ("x", "x")}
    loose = {"U": ("x", "x"), "M": ("x", "x")}
    lcomp = {("U", "U"): "U", ("U", "M"): "M", ("M", "U"): "M", ("M", "M"): "M"}
    cells = {"iU": ("U", "U", "1", "1"), "iM": ("M", "M", "1", "1"), "e": ("M", "M", "1", "1")}
    prod = lambda b, a: "e" if "e" in (a, b) else "iM"  # noqa: E731
    vcomp = {("iU", "iU"): "iU"}
    hcomp = {("iU", "iU"): "iU"}
    for a in ("iM", "e"):
        hcomp[("iU", a)] = hcomp[(a, "iU")] = a
        for b in ("iM", "e"):
            vcomp[(b, a)] = hcomp[(b, a)] = prod(b, a)
    return TableDouble(objects, tight, {"x": "1"}, {("1", "1"): "1"}, loose, {"x": "U"}, lcomp,
                       cells, {"U": "iU", "M": "iM"}, vcomp, {"1": "iU"}, hcomp, strict=True,
                       name="idempotent")


# ---------------------------------------------------------------------------
# Monoids, bimodules, equivariant maps


@dataclass(frozen=True)
class Monoid:
    obj: object
    carrier: object  # loose cell obj -|-> obj
    mult: object  # carrier . carrier => carrier
    unit: object  # U_obj => carrier
    name: str = field(default="A", compare=False)

    def __repr__(self):
        return f"Monoid({self.name})"


@dataclass(frozen=True)
class MonoidHom:
    src: Monoid
    dst: Monoid
    tight: object
    cell: object  # src.carrier => dst.carrier over (tight, tight)
    name: str = field(default="f", compare=False)

    def __repr__(self):
        return f"Hom({self.name}: {self.src.name} -> {self.dst.name})"


@dataclass(frozen=True)
class Bimodule:
    src: Monoid
    tgt: Monoid
    loose: object
    act_src: object  # loose . src.carrier => loose
    act_tgt: object  # tgt.carrier . loose => loose
    name: str = field(default="M", compare=False)

    def __repr__(self):
        return f"Bimodule({self.name}: {self.src.name} -|-> {self.tgt.name})"


@dataclass(frozen=True)
class EquivariantMap:
    top: Bimodule
    bottom: Bimodule
    left: MonoidHom
    right: MonoidHom
    cell: object

    def __repr__(self):
        return f"Equivariant({self.cell!r})"


def monoid_families(D, A):
    m, e, X = A.mult, A.unit, A.carrier
    once = lambda: iter([((0,), ())])  # noqa: E731

    def assoc():
        lhs = D.vcompose(m, D.hcompose(m, D.cell_id(X)))
        rhs = D.vcompose_all(m, D.hcompose(D.cell_id(X), m), D.assoc(X, X, X))
        return _same(D, lhs, rhs)

    def left_unit():
        return _same(D, D.vcompose(m, D.hcompose(e, D.cell_id(X))), D.lunitor(X))

    def right_unit():
        return _same(D, D.vcompose(m, D.hcompose(D.cell_id(X), e)), D.runitor(X))

    return [Family(f"{A.name}: associativity", once, assoc),
            Family(f"{A.name}: left unit", once, left_unit),
            Family(f"{A.name}: right unit", once, right_unit)]


def bimodule_families(D, M):
    A, B, X = M.src, M.tgt, M.loose
    ls, lt = M.act_src, M.act_tgt
    i = D.cell_id
    once = lambda: iter([((0,), ())])  # noqa: E731

    def src_assoc():
        lhs = D.vcompose(ls, D.hcompose(ls, i(A.carrier)))
        rhs = D.vcompose_all(ls, D.hcompose(i(X), A.mult), D.assoc(X, A.carrier, A.carrier))
        return _same(D, lhs, rhs)

    def src_unit():
        return _same(D, D.vcompose(ls, D.hcompose(i(X), A.unit)), D.runitor(X))

    def tgt_assoc():
        lhs = D.vcompose_all(lt, D.hcompose(i(B.carrier), lt), D.assoc(B.carrier, B.carrier, X))
        rhs = D.vcompose(lt, D.hcompose(B.mult, i(X)))
        return _same(D, lhs, rhs)

    def tgt_unit():
        return _same(D, D.vcompose(lt, D.hcompose(B.unit, i(X))), D.lunitor(X))

    def compatible():
        lhs = D.vcompose_all(lt, D.hcompose(i(B.carrier), ls), D.assoc(B.carrier, X, A.carrier))
        rhs = D.vcompose(ls, D.hcompose(lt, i(A.carrier)))
        return _same(D, lhs, rhs)

    return [Family(f"{M.name}: source action associative", once, src_assoc),
            Family(f"{M.name}: source action unital", once, src_unit),
            Family(f"{M.name}: target action associative", once, tgt_assoc),
            Family(f"{M.name}: target action unital", once, tgt_unit),
            Family(f"{M.name}: actions commute", once, compatible)]


def is_hom(D, f):
    A, B, F = f.src, f.dst, f.cell
    if F.top != A.carrier or F.bottom != B.carrier or F.left != f.tight or F.right != f.tight:
        return False
    return (D.cell_eq(D.vcompose(F, A.mult), D.vcompose(B.mult, D.hcompose(F, F)))
            and D.cell_eq(D.vcompose(F, A.unit), D.vcompose(B.unit, D.unit_cell(f.tight))))


def is_equivariant(D, a):
    M, N, phi = a.top, a.bottom, a.cell
    if phi.top != M.loose or phi.bottom != N.loose:
        return False
    if phi.left != a.left.tight or phi.right != a.right.tight:
        return False
    src = D.cell_eq(D.vcompose(phi, M.act_src), D.vcompose(N.act_src, D.hcompose(phi, a.left.cell)))
    tgt = D.cell_eq(D.vcompose(phi, M.act_tgt), D.vcompose(N.act_tgt, D.hcompose(a.right.cell, phi)))
    return src and tgt


# ---------------------------------------------------------------------------
# The double category


@dataclass(frozen=True)
class _Composite:
    """Bimodule composite with its quotient cell ``q: N.M => composite``."""

    bimodule: Bimodule
    quotient: object


class AlgDouble(DoubleCategory):
    """Monoids, homomorphisms, bimodules and equivariant maps in ``D``."""

    def __init__(self, D, provider=None, name=None):
        self.base = D
        self.coeq = provider or coequalizers_for(D)
        self.name = name or f"Alg[{D.name}]"
        self._composites = {}
        self._units = {}

    # tight ---------------------------------------------------------------
    def _tight_id(self, A):
        D = self.base
        return MonoidHom(A, A, D.tight_id(A.obj), D.cell_id(A.carrier), name=f"1_{A.name}")

    def _tight_compose(self, g, f):
        D = self.base
        return MonoidHom(f.src, g.dst, D.tight_compose(g.tight, f.tight), D.vcompose(g.cell, f.cell),
                         name=f"{g.name}.{f.name}")

    def tight_inverse(self, f):
        D = self.base
        t, c = D.tight_inverse(f.tight), D.inverse(f.cell)
        if t is None or c is None:
            return None
        return MonoidHom(f.dst, f.src, t, c, name=f"{f.name}^-1")

    # loose ---------------------------------------------------------------
    def _unit(self, A):
        U = self._units.get(A)
        if U is None:
            U = self._units[A] = Bimodule(A, A, A.carrier, A.mult, A.mult, name=A.name)
        return U

    def _unit_cell(self, f):
        return EquivariantMap(self._unit(f.src), self._unit(f.dst), f, f, f.cell)

    def _composite(self, N, M):
        key = (N, M)
        hit = self._composites.get(key)
        if hit is not None:
            return hit
        D, C = self.base, self.coeq
        B = M.tgt
        i = D.cell_id
        x = D.hcompose(i(N.loose), M.act_tgt)
        y = D.vcompose(D.hcompose(N.act_src, i(M.loose)),
                       D.inverse(D.assoc(N.loose, B.carrier, M.loose)))
        q = C.coequalize(x, y)
        Q = q.bottom
        A, E = M.src, N.tgt
        src_raw = D.vcompose_all(q, D.hcompose(i(N.loose), M.act_src),
                                 D.assoc(N.loose, M.loose, A.carrier))
        act_src = C.factor(D.hcompose(q, i(A.carrier)), src_raw)
        tgt_raw = D.vcompose_all(q, D.hcompose(N.act_tgt, i(M.loose)),
                                 D.inverse(D.assoc(E.carrier, N.loose, M.loose)))
        act_tgt = C.factor(D.hcompose(i(E.carrier), q), tgt_raw)
        if act_src is None or act_tgt is None:
            raise MissingCoequalizers("composing does not preserve the quotient")
        comp = _Composite(Bimodule(A, E, Q, act_src, act_tgt, name=f"{N.name}.{M.name}"), q)
        self._composites[key] = comp
        return comp

    def _loose_compose(self, N, M):
        return self._composite(N, M).bimodule

    def quotient(self, N, M):
        """The quotient cell ``N.loose (.) M.loose => (N (.)_B M).loose``."""
        return self._composite(N, M).quotient

    # cells ---------------------------------------------------------------
    def _cell_id(self, M):
        return EquivariantMap(M, M, self._tight_id(M.src), self._tight_id(M.tgt),
                              self.base.cell_id(M.loose))

    def _vcompose(self, b, a):
        return EquivariantMap(a.top, b.bottom, self._tight_compose(b.left, a.left),
                              self._tight_compose(b.right, a.right), self.base.vcompose(b.cell, a.cell))

    def _hcompose(self, b, a):
        D = self.base
        top, bottom = self._composite(b.top, a.top), self._composite(b.bottom, a.bottom)
        raw = D.vcompose(bottom.quotient, D.hcompose(b.cell, a.cell))
        u = self.coeq.factor(top.quotient, raw)
        if u is None:
            raise MissingCoequalizers("horizontal composite does not descend to the quotient")
        return EquivariantMap(top.bimodule, bottom.bimodule, a.left, b.right, u)

    def _triple(self, P, N, M, left_first):
        """The epi ``(P.N).M => composite`` (left_first) or ``P.(N.M) => composite``."""
        D = self.base
        i = D.cell_id
        if left_first:
            PN = self._composite(P, N)
            outer = self._composite(PN.bimodule, M)
            return D.vcompose(outer.quotient, D.hcompose(PN.quotient, i(M.loose))), outer.bimodule
        NM = self._composite(N, M)
        outer = self._composite(P, NM.bimodule)
        return D.vcompose(outer.quotient, D.hcompose(i(P.loose), NM.quotient)), outer.bimodule

    def _assoc(self, P, N, M):
        D = self.base
        e1, top = self._triple(P, N, M, True)
        e2, bottom = self._triple(P, N, M, False)
        u = self.coeq.factor(e1, D.vcompose(e2, D.assoc(P.loose, N.loose, M.loose)))
        if u is None:
            raise MissingCoequalizers("associator does not descend to the quotients")
        return EquivariantMap(top, bottom, self._tight_id(M.src), self._tight_id(P.tgt), u)

    def _lunitor(self, M):
        comp = self._composite(self._unit(M.tgt), M)
        u = self.coeq.factor(comp.quotient, M.act_tgt)
        if u is None:
            raise MissingCoequalizers("left unitor does not descend")
        return EquivariantMap(comp.bimodule, M, self._tight_id(M.src), self._tight_id(M.tgt), u)

    def _runitor(self, M):
        comp = self._composite(M, self._unit(M.src))
        u = self.coeq.factor(comp.quotient, M.act_src)
        if u is None:
            raise MissingCoequalizers("right unitor does not descend")
        return EquivariantMap(comp.bimodule, M, self._tight_id(M.src), self._tight_id(M.tgt), u)

    def inverse(self, cell):
        D = self.base
        c = D.inverse(cell.cell)
        f, g = self.tight_inverse(cell.left), self.tight_inverse(cell.right)
        if c is None or f is None or g is None:
            return None
        return EquivariantMap(cell.bottom, cell.top, f, g, c)

    def cells_between(self, M, N, f, g):
        D = self.base
        if f.src != M.src or g.src != M.tgt or f.dst != N.src or g.dst != N.tgt:
            raise BoundaryMismatch("equivariant map boundary does not match")
        out = []
        for c in D.cells_between(M.loose, N.loose, f.tight, g.tight):
            a = EquivariantMap(M, N, f, g, c)
            if is_equivariant(D, a):
                out.append(a)
        return out

    def cell_eq(self, a, b):
        return (a.top == b.top and a.bottom == b.bottom and a.left == b.left and a.right == b.right
                and self.base.cell_eq(a.cell, b.cell))


def alg_construction(D, U=None, provider=None):
    """The double category of monoids and bimodules in ``D``.

    With a universe ``U`` the local-coequalizer hypothesis is checked first
    and MissingCoequalizers is raised when it fails.
    """
    base = getattr(D, "base", D)
    if U is not None:
        report = check_local_coequalizers(base, U, provider)
        if not report.ok:
            raise MissingCoequalizers(
                "local coequalizers fail: " + ", ".join(c.name for c in report.failed()))
    return AlgDouble(base, provider)


def alg_universe(A, monoids, homs, bimodules, cells=()):
    return Universe(list(monoids), list(homs), list(bimodules), list(cells))


class AlgMonoidal(MonoidalDoubleCategory):
    """Alg[D] for a monoidal double category ``M`` over D, tensored pointwise.

    Monoids, bimodules and maps are tensored componentwise; actions and
    multiplications are conjugated by the base interchange cells.  The
    interchange of Alg is induced on the quotients, so it exists only when
    the base tensor preserves the local coequalizers.
    """

    def __init__(self, M, provider=None):
        D = M.base
        UI = D.unit(M.unit_object)
        unit = Monoid(M.unit_object, UI, D.lunitor(UI), D.cell_id(UI), name="I")
        super().__init__(AlgDouble(D, provider), unit)
        self.monoidal = M
        self.braided = M.braided
        self.symmetric = M.symmetric
        self.name = f"Alg[{M.name}]"

    def tensor(self, A, B):
        M, D = self.monoidal, self.monoidal.base
        mult = D.vcompose(M.tensor_cell(A.mult, B.mult),
                          M.interchange(A.carrier, B.carrier, A.carrier, B.carrier))
        unit = D.vcompose(M.tensor_cell(A.unit, B.unit), M.unit_interchange(A.obj, B.obj))
        return Monoid(M.tensor(A.obj, B.obj), M.tensor_loose(A.carrier, B.carrier), mult, unit,
                      name=f"({A.name}x{B.name})")

    def tensor_tight(self, f, g):
        M = self.monoidal
        return MonoidHom(self.tensor(f.src, g.src), self.tensor(f.dst, g.dst),
                         M.tensor_tight(f.tight, g.tight), M.tensor_cell(f.cell, g.cell),
                         name=f"({f.name}x{g.name})")

    def tensor_loose(self, X, Y):
        M, D = self.monoidal, self.monoidal.base
        act_src = D.vcompose(M.tensor_cell(X.act_src, Y.act_src),
                             M.interchange(X.loose, Y.loose, X.src.carrier, Y.src.carrier))
        act_tgt = D.vcompose(M.tensor_cell(X.act_tgt, Y.act_tgt),
                             M.interchange(X.tgt.carrier, Y.tgt.carrier, X.loose, Y.loose))
        return Bimodule(self.tensor(X.src, Y.src), self.tensor(X.tgt, Y.tgt),
                        M.tensor_loose(X.loose, Y.loose), act_src, act_tgt,
                        name=f"({X.name}x{Y.name})")

    def tensor_cell(self, a, b):
        return EquivariantMap(self.tensor_loose(a.top, b.top), self.tensor_loose(a.bottom, b.bottom),
                              self.tensor_tight(a.left, b.left), self.tensor_tight(a.right, b.right),
                              self.monoidal.tensor_cell(a.cell, b.cell))

    def interchange(self, X2, Y2, X1, Y1):
        A, M, D = self.base, self.monoidal, self.monoidal.base
        top = A._composite(self.tensor_loose(X2, Y2), self.tensor_loose(X1, Y1))
        bottom = self.tensor_loose(A.loose_compose(X2, X1), A.loose_compose(Y2, Y1))
        raw = D.vcompose(M.tensor_cell(A.quotient(X2, X1), A.quotient(Y2, Y1)),
                         M.interchange(X2.loose, Y2.loose, X1.loose, Y1.loose))
        u = A.coeq.factor(top.quotient, raw)
        if u is None:
            raise MissingCoequalizers("the tensor does not preserve the quotient")
        return EquivariantMap(top.bimodule, bottom, A.tight_id(top.bimodule.src),
                              A.tight_id(top.bimodule.tgt), u)

    def unit_interchange(self, A, B):
        Alg = self.base
        top = Alg.unit(self.tensor(A, B))
        bottom = self.tensor_loose(Alg.unit(A), Alg.unit(B))
        return EquivariantMap(top, bottom, Alg.tight_id(top.src), Alg.tight_id(top.tgt),
                              self.monoidal.base.cell_id(top.loose))

    def assoc(self, A, B, C):
        M = self.monoidal
        return MonoidHom(self.tensor(self.tensor(A, B), C), self.tensor(A, self.tensor(B, C)),
                         M.assoc(A.obj, B.obj, C.obj), M.assoc_cell(A.carrier, B.carrier, C.carrier))

    def assoc_cell(self, X, Y, Z):
        tl = self.tensor_loose
        return EquivariantMap(tl(tl(X, Y), Z), tl(X, tl(Y, Z)), self.assoc(X.src, Y.src, Z.src),
                              self.assoc(X.tgt, Y.tgt, Z.tgt),
                              self.monoidal.assoc_cell(X.loose, Y.loose, Z.loose))

    def lunit(self, A):
        M = self.monoidal
        return MonoidHom(self.tensor(self.unit_object, A), A, M.lunit(A.obj), M.lunit_cell(A.carrier))

    def lunit_cell(self, X):
        return EquivariantMap(self.tensor_loose(self.unit_loose, X), X, self.lunit(X.src),
                              self.lunit(X.tgt), self.monoidal.lunit_cell(X.loose))

    def runit(self, A):
        M = self.monoidal
        return MonoidHom(self.tensor(A, self.unit_object), A, M.runit(A.obj), M.runit_cell(A.carrier))

    def runit_cell(self, X):
        return EquivariantMap(self.tensor_loose(X, self.unit_loose), X, self.runit(X.src),
                              self.runit(X.tgt), self.monoidal.runit_cell(X.loose))

    def braid(self, A, B):
        M = self.monoidal
        return MonoidHom(self.tensor(A, B), self.tensor(B, A), M.braid(A.obj, B.obj),
                         M.braid_cell(A.carrier, B.carrier))

    def braid_cell(self, X, Y):
        return EquivariantMap(self.tensor_loose(X, Y), self.tensor_loose(Y, X),
                              self.braid(X.src, Y.src), self.braid(X.tgt, Y.tgt),
                              self.monoidal.braid_cell(X.loose, Y.loose))


def alg_structure_families(AM, U, partner=None):
    """The structure maps of the pointwise tensor really are homomorphisms and
    equivariant maps (the checker for monoidal double categories takes that
    for granted)."""
    D = AM.base.base
    V = partner or U
    monoids, bimods = list(U.objects), list(U.loose)
    pm, pb = list(V.objects), list(V.loose)

    def homs(*As):
        out = ([AM.assoc(*As)] if len(As) == 3 else
               [AM.braid(*As)] if len(As) == 2 else [AM.lunit(As[0]), AM.runit(As[0])])
        bad = [f.name or repr(f) for f in out if not is_hom(D, f)]
        return not bad or f"not homomorphisms: {bad}"

    def maps(*Xs):
        out = ([AM.assoc_cell(*Xs)] if len(Xs) == 3 else
               [AM.braid_cell(*Xs)] if len(Xs) == 2 else [AM.lunit_cell(Xs[0]), AM.runit_cell(Xs[0])])
        return all(is_equivariant(D, a) for a in out) or "structure cell is not equivariant"

    def well_formed(X):
        bad = [f.name for f in bimodule_families(D, X) if not f.evaluate(())[0]]
        return not bad or f"tensor is not a bimodule: {bad}"

    def enum(*seqs):
        return lambda: ((tuple(ix), tuple(x for _, x in combo))
                        for combo in product(*(list(enumerate(s)) for s in seqs))
                        for ix in [[i for i, _ in combo]])

    fams = [
        Family("tensor of bimodules is a bimodule",
               lambda: (((i, j), (AM.tensor_loose(X, Y),)) for i, X in enumerate(bimods)
                        for j, Y in enumerate(pb)), well_formed),
        Family("unitors are homomorphisms", enum(monoids), homs),
        Family("associators are homomorphisms", enum(monoids, pm, pm), homs),
        Family("unitor cells are equivariant", enum(bimods), maps),
        Family("associator cells are equivariant", enum(bimods, pb, pb), maps),
    ]
    if AM.braided:
        fams += [Family("braidings are homomorphisms", enum(monoids, pm), homs),
                 Family("braiding cells are equivariant", enum(bimods, pb), maps)]
    return fams


# ---------------------------------------------------------------------------
# Internal categories and profunctors in Span


def internal_category(D, C):
    """A finite category as a monoid in Span: objects, arrows, composition, identities."""
    objs = C.objects
    arrows = FinSet(C.arrow_list())
    src = FinFunction.from_labels(arrows, objs, C.src)
    dst = FinFunction.from_labels(arrows, objs, C.dst)
    A = Span(arrows, src, dst)
    AA = D.loose_compose(A, A)
    mult = SpanCell(AA, A, FinFunction.identity(objs), FinFunction.identity(objs),
                    FinFunction.from_labels(AA.apex, arrows, lambda fg: C.compose(fg[1], fg[0])))
    U = D.unit(objs)
    unit = SpanCell(U, A, FinFunction.identity(objs), FinFunction.identity(objs),
                    FinFunction.from_labels(objs, arrows, lambda x: C.ids[x]))
    return Monoid(objs, A, mult, unit, name=C.name)


def profunctor(D, A, B, elements, pre, post, name="M"):
    """A bimodule ``A -|-> B`` between internal categories from element data.

    ``elements`` maps each label to its (source object, target object);
    ``pre(m, f)`` is m precomposed with an arrow f of A into its source and
    ``post(g, m)`` is m followed by an arrow g of B out of its target.
    """
    labels = FinSet(elements)
    X = Span(labels, FinFunction.from_labels(labels, A.obj, lambda m: elements[m][0]),
             FinFunction.from_labels(labels, B.obj, lambda m: elements[m][1]))
    XA = D.loose_compose(X, A.carrier)
    act_src = SpanCell(XA, X, FinFunction.identity(A.obj), FinFunction.identity(B.obj),
                       FinFunction.from_labels(XA.apex, labels, lambda fm: pre(fm[1], fm[0])))
    BX = D.loose_compose(B.carrier, X)
    act_tgt = SpanCell(BX, X, FinFunction.identity(A.obj), FinFunction.identity(B.obj),
                       FinFunction.from_labels(BX.apex, labels, lambda mg: post(mg[1], mg[0])))
    return Bimodule(A, B, X, act_src, act_tgt, name=name)


def hom_profunctor(D, C, A=None):
    """The unit bimodule of an internal category, written out element-wise."""
    A = A or internal_category(D, C)
    elements = {f: C.arrows[f] for f in C.arrow_list()}
    return profunctor(D, A, A, elements, lambda m, f: C.compose(m, f), lambda g, m: C.compose(g, m),
                      name=f"hom_{C.name}")


def _action_tables(M):
    """(pre, post) dictionaries read off the action cells: (m, f) -> m.f and (g, m) -> g.m."""
    pre = {}
    for x, (f, m) in zip(M.act_src.map.table, M.act_src.top.apex):
        pre[(m, f)] = M.loose.apex[x]
    post = {}
    for x, (m, g) in zip(M.act_tgt.map.table, M.act_tgt.top.apex):
        post[(g, m)] = M.loose.apex[x]
    return pre, post


def profunctor_oracle(A, B, M, N):
    """Coend composite of ``M: A -|-> B`` and ``N: B -|-> C`` on elements.

    Pairs ``(m, n)`` with matching middle object, glued along
    ``(g.m, n) ~ (m, n.g)`` for every arrow g of B, by union-find.  Returns
    the composite bimodule whose elements are the least pairs of each class.
    """
    if M.tgt != N.src or M.src != A or N.src != B:
        raise BoundaryMismatch("bimodules do not compose over the given categories")
    X, Y = M.loose, N.loose
    pairs = [(m, n) for i, m in enumerate(X.apex) for j, n in enumerate(Y.apex)
             if X.right.table[i] == Y.left.table[j]]
    index = {p: k for k, p in enumerate(pairs)}
    _, postM = _action_tables(M)
    preN, postN = _action_tables(N)
    preM, _ = _action_tables(M)
    uf = UnionFind(len(pairs))
    B_arrows = B.carrier.apex
    B_src, B_dst = B.carrier.left, B.carrier.right
    for mi, m in enumerate(X.apex):
        for gi, g in enumerate(B_arrows):
            if B_src.table[gi] != X.right.table[mi]:
                continue
            for nj, n in enumerate(Y.apex):
                if Y.left.table[nj] == B_dst.table[gi]:
                    uf.union(index[(postM[(g, m)], n)], index[(m, preN[(n, g)])])
    classes = uf.classes()
    reps = [pairs[c[0]] for c in classes]
    cls = {}
    for k, c in enumerate(classes):
        for p in c:
            cls[pairs[p]] = k
    C = N.tgt
    elements = {}
    for (m, n) in reps:
        elements[(m, n)] = (X.left(m), Y.right(n))

    def pre(p, f):
        m, n = p
        return reps[cls[(preM[(m, f)], n)]]

    def post(h, p):
        m, n = p
        return reps[cls[(m, postN[(h, n)])]]

    return profunctor(SpanDouble(), A, C, elements, pre, post, name=f"{N.name}*{M.name}")


def comparison_iso(Alg, M, N, oracle):
    """The explicit map from the oracle's composite to Alg's: a class of
    (m, n) goes to the quotient class of the same pair.  Returns an
    invertible equivariant map, or raises NotInvertible."""
    D = Alg.base
    comp = Alg._composite(N, M)
    q, Q = comp.quotient, comp.bimodule
    top_apex = q.top.apex
    table = [q.map.table[top_apex.index(p)] for p in oracle.loose.apex]
    m = FinFunction(oracle.loose.apex, Q.loose.apex, table)
    cell = SpanCell(oracle.loose, Q.loose, FinFunction.identity(M.src.obj),
                    FinFunction.identity(N.tgt.obj), m)
    if not cell.is_valid():
        raise NotInvertible("comparison does not commute with the legs")
    iso = EquivariantMap(oracle, Q, Alg.tight_id(M.src), Alg.tight_id(N.tgt), cell)
    if not m.is_bijective():
        raise NotInvertible("comparison is not a bijection")
    if not is_equivariant(D, iso):
        raise NotInvertible("comparison is not equivariant")
    return iso


def oracle_agreement_families(Alg, pairs):
    """For each (M, N): the oracle and Alg composites are isomorphic via the
    explicit comparison, and the Alg unitors on M are invertible."""
    D = Alg.base

    def agree(M, N):
        oracle = profunctor_oracle(M.src, M.tgt, M, N)
        iso = comparison_iso(Alg, M, N, oracle)
        return Alg.inverse(iso) is not None or "comparison has no inverse"

    def unitors(M, N):
        for X in (M, N):
            for u in (Alg.lunitor(X), Alg.runitor(X)):
                if not is_equivariant(D, u):
                    return f"unitor on {X.name} is not equivariant"
                if Alg.checked_inverse(u) is None:
                    return f"unitor on {X.name} is not invertible"
        return True

    def well_formed(M, N):
        bad = [f.name for X in (M.src, M.tgt, N.tgt) for f in monoid_families(D, X)
               if not f.evaluate(())[0]]
        bad += [f.name for X in (M, N) for f in bimodule_families(D, X) if not f.evaluate(())[0]]
        return not bad or f"fixture is not well formed: {bad}"

    inst = lambda: (((k,), mn) for k, mn in enumerate(pairs))  # noqa: E731
    return [Family("fixtures are monoids and bimodules", inst, well_formed),
            Family("oracle agrees up to the comparison iso", inst, agree),
            Family("unitors invertible", inst, unitors)]


def check_oracle_agreement(Alg, pairs):
    return run_families(oracle_agreement_families(Alg, pairs))


# ---------------------------------------------------------------------------
# Shipped internal categories and bimodule pairs


def discrete_category(n, name=None):
    objs = list(range(n))
    arrows = {f"1_{x}": (x, x) for x in objs}
    ids = {x: f"1_{x}" for x in objs}
    comp = {(f"1_{x}", f"1_{x}"): f"1_{x}" for x in objs}
    return FinCategory(objs, arrows, ids, comp, name=name or f"disc{n}")


def arrow_category():
    """0 -> 1 with a single non-identity arrow ``u``."""
    arrows = {"1_0": (0, 0), "1_1": (1, 1), "u": (0, 1)}
    comp = {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1", ("u", "1_0"): "u", ("1_1", "u"): "u"}
    return FinCategory([0, 1], arrows, {0: "1_0", 1: "1_1"}, comp, name="arrow")


def _trivial(m, f):
    return m


def _swap_action(perm):
    """Action of Z/2 by the involution ``perm`` (a dict); 'e' acts trivially."""
    return lambda m, g: m if g == "e" else perm[m]


def sample_bimodule_pairs(D):
    """Composable bimodule pairs over internal categories with at most three
    objects: discrete categories, Z/2, the arrow category and hom bimodules."""
    one, d2, d3 = (internal_category(D, C) for C in
                   (FinCategory.terminal(), discrete_category(2), discrete_category(3)))
    Z = internal_category(D, z2_category())
    arr = internal_category(D, arrow_category())
    star = "*"
    pairs = []

    def disc(A, B, elements, name):
        return profunctor(D, A, B, elements, _trivial, lambda g, m: m, name=name)

    # matrices of sets over discrete categories
    M1 = disc(d2, d3, {"a": (0, 0), "b": (0, 2), "c": (1, 2), "d": (1, 2)}, "M1")
    N1 = disc(d3, d2, {"x": (0, 1), "y": (2, 0), "z": (2, 1)}, "N1")
    pairs.append((M1, N1))
    M2 = disc(one, d2, {"p": (star, 0), "q": (star, 1), "r": (star, 1)}, "M2")
    N2 = disc(d2, one, {"s": (0, star), "t": (1, star), "w": (1, star)}, "N2")
    pairs.append((M2, N2))
    pairs.append((N2, M2))
    E3 = disc(d3, d3, {}, "E3")
    pairs.append((M1, E3))
    # Z/2-sets: orbits of products
    flip = {"x0": "x1", "x1": "x0", "f": "f"}
    R = profunctor(D, one, Z, {k: (star, star) for k in flip}, _trivial,
                   lambda g, m: m if g == "e" else flip[m], name="Rflip")
    turn = {"y0": "y1", "y1": "y0"}
    L = profunctor(D, Z, one, {k: (star, star) for k in turn}, _swap_action(turn),
                   lambda g, m: m, name="Lfree")
    fixed = {"z": "z", "w": "w"}
    Lfix = profunctor(D, Z, one, {k: (star, star) for k in fixed}, _swap_action(fixed),
                      lambda g, m: m, name="Lfixed")
    pairs.append((R, L))
    pairs.append((R, Lfix))
    # Z/2 acting on both sides of itself, and the hom bimodule as a unit
    HZ = hom_profunctor(D, z2_category(), Z)
    pairs.append((HZ, L))
    pairs.append((R, HZ))
    reg = {"e": "s", "s": "e"}
    twist = profunctor(D, Z, Z, {"e": (star, star), "s": (star, star)}, _swap_action(reg),
                       lambda g, m: m if g == "e" else reg[m], name="regular")
    pairs.append((twist, twist))
    # presheaves on the arrow category
    Pa = profunctor(D, arr, one, {"a0": (0, star), "b0": (1, star), "b1": (1, star)},
                    lambda m, f: "a0" if f == "u" else m, lambda g, m: m, name="P")
    Ca = profunctor(D, one, arr, {"c": (star, 0), "d": (star, 1), "e": (star, 1)},
                    _trivial, lambda g, m: "d" if g == "u" else m, name="C")
    pairs.append((Ca, Pa))
    Harr = hom_profunctor(D, arrow_category(), arr)
    pairs.append((Harr, Pa))
    pairs.append((Ca, Harr))
    return pairs


def alg_window(AM, regular=True):
    """A small window onto Alg[Span]: the unit monoid and Z/2, bimodules
    between them (units, a free and a flip action, the regular and hom
    bimodules of Z/2) and every equivariant globular map among them.  The
    second universe, for further tensor factors, holds just the units.
    ``regular=False`` leaves out the two Z/2-Z/2 bimodules."""
    A = AM.base
    D = A.base
    I = AM.unit_object
    Z = internal_category(D, z2_category())
    u0 = I.obj[0]
    flip = {"x0": "x1", "x1": "x0", "f": "f"}
    R = profunctor(D, I, Z, {k: (u0, "*") for k in flip}, _trivial,
                   lambda g, m: m if g == "e" else flip[m], name="Rflip")
    turn = {"y0": "y1", "y1": "y0"}
    L = profunctor(D, Z, I, {k: ("*", u0) for k in turn}, _swap_action(turn), lambda g, m: m,
                   name="Lfree")
    reg = {"e": "s", "s": "e"}
    twist = profunctor(D, Z, Z, {"e": ("*", "*"), "s": ("*", "*")}, _swap_action(reg),
                       lambda g, m: m if g == "e" else reg[m], name="regular")
    HZ = hom_profunctor(D, z2_category(), Z)
    monoids = [I, Z]
    homs = [A.tight_id(m) for m in monoids]
    loose = [A.unit(I), A.unit(Z), R, L] + ([twist, HZ] if regular else [])
    cells = [c for X in loose for Y in loose if X.src == Y.src and X.tgt == Y.tgt
             for c in A.cells_between(X, Y, A.tight_id(X.src), A.tight_id(X.tgt))]
    units = [A.unit(I), A.unit(Z)]
    return (Universe(monoids, homs, loose, cells),
            Universe(monoids, homs, units, [A.cell_id(X) for X in units]))


__all__ = [
    "SpanCoequalizers", "PosetCoequalizers", "SearchCoequalizers", "coequalizers_for",
    "local_coequalizer_families", "check_local_coequalizers", "no_coequalizer_fixture",
    "Monoid", "MonoidHom", "Bimodule", "EquivariantMap", "monoid_families", "bimodule_families",
    "is_hom", "is_equivariant", "AlgDouble", "AlgMonoidal", "alg_structure_families",
    "alg_construction", "alg_universe", "alg_window",
    "internal_category", "profunctor", "hom_profunctor", "profunctor_oracle", "comparison_iso",
    "oracle_agreement_families", "check_oracle_agreement", "discrete_category",
    "arrow_category", "sample_bimodule_pairs",
]
