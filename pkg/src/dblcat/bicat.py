"""Bicategories, pseudofunctors, transformations, icons and modifications.

Conventions match the double-category layer:

* a 1-cell ``M: A -> B`` has ``M.src``, ``M.tgt``; ``compose(N, M)`` is
  ``N . M`` with M first;
* a 2-cell has ``top`` and ``bottom`` 1-cells; ``vcompose(b, a)`` puts a on
  top and ``hcompose(b, a)`` is ``b . a``;
* ``assoc(P, N, M): (P.N).M => P.(N.M)``, ``lunitor(M): 1.M => M``,
  ``runitor(M): M.1 => M``.

An oplax transformation ``alpha: P => Q`` has 2-cells
``alpha_M: alpha_B . PM => QM . alpha_A``; a lax one points the other way.
"""

from functools import lru_cache
from itertools import count

from .dblcore import _same
from .errors import BoundaryMismatch, EnumerationUnsupported, NotInvertible
from .report import Family, run_families

MODES = ("oplax", "lax", "pseudo")


class Bicategory:
    """Abstract bicategory; subclasses supply the operations below."""

    name = "B"

    def compose(self, N, M):
        raise NotImplementedError

    def unit(self, A):
        raise NotImplementedError

    def cell_id(self, M):
        raise NotImplementedError

    def vcompose(self, b, a):
        raise NotImplementedError

    def hcompose(self, b, a):
        raise NotImplementedError

    def assoc(self, P, N, M):
        raise NotImplementedError

    def lunitor(self, M):
        raise NotImplementedError

    def runitor(self, M):
        raise NotImplementedError

    def inverse(self, cell):
        return None

    def cells_between(self, M, N):
        raise EnumerationUnsupported(f"{self.name} cannot enumerate 2-cells")

    def cell_eq(self, a, b):
        return a == b

    # -- derived ----------------------------------------------------------
    def vcompose_all(self, *cells):
        """``vcompose_all(c_n, ..., c_1)`` = c_n . ... . c_1."""
        result = cells[-1]
        for c in reversed(cells[:-1]):
            result = self.vcompose(c, result)
        return result

    def whisker_left(self, N, a):
        """``N . a``: whisker a by N on the left."""
        return self.hcompose(self.cell_id(N), a)

    def whisker_right(self, a, M):
        """``a . M``."""
        return self.hcompose(a, self.cell_id(M))

    def strict_inverse(self, cell):
        inv = self.inverse(cell)
        if inv is None:
            raise NotInvertible(f"{cell!r} has no inverse in {self.name}")
        return inv

    def iter_cells_between(self, M, N):
        return iter(self.cells_between(M, N))

    def search_inverse(self, cell):
        """A two-sided inverse, verified by composing both ways, or None.

        The structural inverse is tried first; failing that, the globular
        cells ``bottom => top`` are enumerated lazily.
        """
        def candidates():
            inv = self.inverse(cell)
            if inv is not None:
                yield inv
            try:
                yield from self.iter_cells_between(cell.bottom, cell.top)
            except EnumerationUnsupported:
                return

        for inv in candidates():
            if (self.cell_eq(self.vcompose(inv, cell), self.cell_id(cell.top))
                    and self.cell_eq(self.vcompose(cell, inv), self.cell_id(cell.bottom))):
                return inv
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class LooseBicategory(Bicategory):
    """H(D): objects, loose 1-cells and globular 2-cells of a double category.

    Composition, identities and constraints are D's own.
    """

    def __init__(self, D):
        self.double = D
        self.name = f"H({D.name})"

    def _globular(self, cell, what):
        D = self.double
        if not D.is_globular(cell):
            raise BoundaryMismatch(f"{what}: {cell!r} is not globular")

    def compose(self, N, M):
        return self.double.loose_compose(N, M)

    def unit(self, A):
        return self.double.unit(A)

    def cell_id(self, M):
        return self.double.cell_id(M)

    def vcompose(self, b, a):
        return self.double.vcompose(b, a)

    def hcompose(self, b, a):
        if a.top.tgt != b.top.src:
            raise BoundaryMismatch(f"horizontal composite: {a.top!r} ends at {a.top.tgt!r}, "
                                   f"{b.top!r} starts at {b.top.src!r}")
        return self.double.hcompose(b, a)

    def assoc(self, P, N, M):
        return self.double.assoc(P, N, M)

    def lunitor(self, M):
        return self.double.lunitor(M)

    def runitor(self, M):
        return self.double.runitor(M)

    def inverse(self, cell):
        return self.double.inverse(cell)

    def cells_between(self, M, N):
        return self.double.globular_cells_between(M, N)

    def iter_cells_between(self, M, N):
        D = self.double
        between = getattr(D, "iter_cells_between", None)
        if between is None:
            return iter(D.globular_cells_between(M, N))
        if M.src != N.src or M.tgt != N.tgt:
            raise BoundaryMismatch("globular cells need parallel 1-cells")
        return between(M, N, D.tight_id(M.src), D.tight_id(M.tgt))

    def cell_eq(self, a, b):
        return self.double.cell_eq(a, b)


@lru_cache(maxsize=None)
def loose_bicategory(D):
    return LooseBicategory(D)


# ---------------------------------------------------------------------------
# Windows


class BicatUniverse:
    """A finite window onto a bicategory: objects, 1-cells, 2-cells."""

    def __init__(self, objects, ones, twos):
        self.objects = list(objects)
        self.ones = list(ones)
        self.twos = list(twos)
        self.ones_from = {}
        for i, M in enumerate(self.ones):
            self.ones_from.setdefault(M.src, []).append(i)
        self.twos_by_top = {}
        self.twos_from = {}
        for i, c in enumerate(self.twos):
            self.twos_by_top.setdefault(c.top, []).append(i)
            self.twos_from.setdefault(c.top.src, []).append(i)

    def one_pairs(self):
        for i, M in enumerate(self.ones):
            for j in self.ones_from.get(M.tgt, ()):
                yield i, j

    def one_triples(self):
        for i, j in self.one_pairs():
            for k in self.ones_from.get(self.ones[j].tgt, ()):
                yield i, j, k

    def one_quadruples(self):
        for i, j, k in self.one_triples():
            for m in self.ones_from.get(self.ones[k].tgt, ()):
                yield i, j, k, m

    def vertical_pairs(self):
        for i, a in enumerate(self.twos):
            for j in self.twos_by_top.get(a.bottom, ()):
                yield i, j

    def vertical_triples(self):
        for i, j in self.vertical_pairs():
            for k in self.twos_by_top.get(self.twos[j].bottom, ()):
                yield i, j, k

    def horizontal_pairs(self):
        """(i, j): twos[j] after twos[i] along 1-cells."""
        for i, a in enumerate(self.twos):
            for j in self.twos_from.get(a.top.tgt, ()):
                yield i, j

    def horizontal_triples(self):
        for i, j in self.horizontal_pairs():
            for k in self.twos_from.get(self.twos[j].top.tgt, ()):
                yield i, j, k

    def grids(self):
        for i, j in self.horizontal_pairs():
            a1, a2 = self.twos[i], self.twos[j]
            for k in self.twos_by_top.get(a1.bottom, ()):
                for m in self.twos_by_top.get(a2.bottom, ()):
                    yield i, j, k, m

    def __repr__(self):
        return f"BicatUniverse({len(self.objects)} objects, {len(self.ones)} 1-cells, {len(self.twos)} 2-cells)"


def loose_window(D, U):
    """The window of H(D) seen by a double-category universe: its globular cells."""
    return BicatUniverse(U.objects, U.loose, [c for c in U.cells if D.is_globular(c)])


def _over(seq):
    return lambda: (((i,), (x,)) for i, x in enumerate(seq))


def _tup(seq, idx_iter):
    return lambda: ((key, tuple(seq[i] for i in key)) for key in idx_iter())


def _ends(cell, top, bottom):
    if cell.top != top:
        return f"source {cell.top!r} != {top!r}"
    if cell.bottom != bottom:
        return f"target {cell.bottom!r} != {bottom!r}"
    return True


def _invertible(B, cell, what):
    if B.search_inverse(cell) is None:
        return f"{what} {cell!r}: no inverse within universe"
    return True


# ---------------------------------------------------------------------------
# Bicategory laws


def bicategory_families(B, W):
    O, L, C = W.objects, W.ones, W.twos
    c = B.compose

    def unit_ends(A):
        UA = B.unit(A)
        return (UA.src == A and UA.tgt == A) or f"unit of {A!r} has wrong ends"

    def compose_ends(M, N):
        NM = c(N, M)
        return (NM.src == M.src and NM.tgt == N.tgt) or "composite has wrong ends"

    def id_boundary(M):
        return _ends(B.cell_id(M), M, M)

    def vcomp_boundary(a, b):
        return _ends(B.vcompose(b, a), a.top, b.bottom)

    def hcomp_boundary(a, b):
        return _ends(B.hcompose(b, a), c(b.top, a.top), c(b.bottom, a.bottom))

    def vunits(a):
        return (B.cell_eq(B.vcompose(a, B.cell_id(a.top)), a)
                and B.cell_eq(B.vcompose(B.cell_id(a.bottom), a), a))

    def vassoc(a, b, d):
        return _same(B, B.vcompose(d, B.vcompose(b, a)), B.vcompose(B.vcompose(d, b), a))

    def hcomp_ids(M, N):
        return _same(B, B.hcompose(B.cell_id(N), B.cell_id(M)), B.cell_id(c(N, M)))

    def interchange(a1, a2, b1, b2):
        lhs = B.vcompose(B.hcompose(b2, b1), B.hcompose(a2, a1))
        rhs = B.hcompose(B.vcompose(b2, a2), B.vcompose(b1, a1))
        return _same(B, lhs, rhs)

    def assoc_natural(a1, a2, a3):
        lhs = B.vcompose(B.assoc(a3.bottom, a2.bottom, a1.bottom), B.hcompose(B.hcompose(a3, a2), a1))
        rhs = B.vcompose(B.hcompose(a3, B.hcompose(a2, a1)), B.assoc(a3.top, a2.top, a1.top))
        return _same(B, lhs, rhs)

    def lunitor_natural(a):
        lhs = B.vcompose(B.lunitor(a.bottom), B.whisker_left(B.unit(a.top.tgt), a))
        return _same(B, lhs, B.vcompose(a, B.lunitor(a.top)))

    def runitor_natural(a):
        lhs = B.vcompose(B.runitor(a.bottom), B.whisker_right(a, B.unit(a.top.src)))
        return _same(B, lhs, B.vcompose(a, B.runitor(a.top)))

    def assoc_boundary(M, N, P):
        return _ends(B.assoc(P, N, M), c(c(P, N), M), c(P, c(N, M)))

    def unitor_boundary(M):
        ok = _ends(B.lunitor(M), c(B.unit(M.tgt), M), M)
        return ok if ok is not True else _ends(B.runitor(M), c(M, B.unit(M.src)), M)

    def assoc_invertible(M, N, P):
        return _invertible(B, B.assoc(P, N, M), "associator")

    def unitors_invertible(M):
        ok = _invertible(B, B.lunitor(M), "left unitor")
        return ok if ok is not True else _invertible(B, B.runitor(M), "right unitor")

    def pentagon(M1, M2, M3, M4):
        a = B.assoc
        lhs = B.vcompose(a(M4, M3, c(M2, M1)), a(c(M4, M3), M2, M1))
        rhs = B.vcompose_all(B.whisker_left(M4, a(M3, M2, M1)), a(M4, c(M3, M2), M1),
                             B.whisker_right(a(M4, M3, M2), M1))
        return _same(B, lhs, rhs)

    def triangle(M, N):
        lhs = B.vcompose(B.whisker_left(N, B.lunitor(M)), B.assoc(N, B.unit(M.tgt), M))
        return _same(B, lhs, B.whisker_right(B.runitor(N), M))

    return [
        Family("unit ends", _over(O), unit_ends),
        Family("composite ends", _tup(L, W.one_pairs), compose_ends),
        Family("identity 2-cell boundary", _over(L), id_boundary),
        Family("vertical composite boundary", _tup(C, W.vertical_pairs), vcomp_boundary),
        Family("horizontal composite boundary", _tup(C, W.horizontal_pairs), hcomp_boundary),
        Family("vertical unit laws", _over(C), vunits),
        Family("vertical associativity", _tup(C, W.vertical_triples), vassoc),
        Family("horizontal composite of identities", _tup(L, W.one_pairs), hcomp_ids),
        Family("interchange", _tup(C, W.grids), interchange),
        Family("associator naturality", _tup(C, W.horizontal_triples), assoc_natural),
        Family("left unitor naturality", _over(C), lunitor_natural),
        Family("right unitor naturality", _over(C), runitor_natural),
        Family("associator boundary", _tup(L, W.one_triples), assoc_boundary),
        Family("unitor boundary", _over(L), unitor_boundary),
        Family("associator invertible", _tup(L, W.one_triples), assoc_invertible),
        Family("unitors invertible", _over(L), unitors_invertible),
        Family("pentagon", _tup(L, W.one_quadruples), pentagon),
        Family("triangle", _tup(L, W.one_pairs), triangle),
    ]


def check_bicategory(B, W):
    return run_families(bicategory_families(B, W))


# ---------------------------------------------------------------------------
# Pseudofunctors


class Pseudofunctor:
    """``comp(N, M): PN . PM => P(N.M)`` and ``unit(A): 1_{PA} => P(1_A)``."""

    def __init__(self, src, dst, obj, one, two, comp, unit, name="P"):
        self.src = src
        self.dst = dst
        self.obj = obj
        self.one = one
        self.two = two
        self.comp = comp
        self.unit = unit
        self.name = name

    def __repr__(self):
        return f"<Pseudofunctor {self.name}: {self.src.name} -> {self.dst.name}>"


def identity_pseudofunctor(B):
    return Pseudofunctor(B, B, lambda A: A, lambda M: M, lambda a: a,
                         lambda N, M: B.cell_id(B.compose(N, M)),
                         lambda A: B.cell_id(B.unit(A)), name=f"id_{B.name}")


def compose_pseudofunctors(Q, P):
    """Q after P, constraints ``Q(P_comp) . Q_comp`` and ``Q(P_unit) . Q_unit``."""
    E = Q.dst

    def comp(N, M):
        return E.vcompose(Q.two(P.comp(N, M)), Q.comp(P.one(N), P.one(M)))

    def unit(A):
        return E.vcompose(Q.two(P.unit(A)), Q.unit(P.obj(A)))

    return Pseudofunctor(P.src, E, lambda A: Q.obj(P.obj(A)), lambda M: Q.one(P.one(M)),
                         lambda a: Q.two(P.two(a)), comp, unit, name=f"{Q.name}{P.name}")


def pseudofunctor_families(P, W):
    B, E = P.src, P.dst
    L, C = W.ones, W.twos

    def one_ends(M):
        PM = P.one(M)
        return (PM.src == P.obj(M.src) and PM.tgt == P.obj(M.tgt)) or f"P({M!r}) has wrong ends"

    def two_boundary(a):
        return _ends(P.two(a), P.one(a.top), P.one(a.bottom))

    def ids(M):
        return _same(E, P.two(B.cell_id(M)), E.cell_id(P.one(M)))

    def vcomp(a, b):
        return _same(E, P.two(B.vcompose(b, a)), E.vcompose(P.two(b), P.two(a)))

    def comp_boundary(M, N):
        return _ends(P.comp(N, M), E.compose(P.one(N), P.one(M)), P.one(B.compose(N, M)))

    def unit_boundary(A):
        return _ends(P.unit(A), E.unit(P.obj(A)), P.one(B.unit(A)))

    def comp_natural(a1, a2):
        lhs = E.vcompose(P.two(B.hcompose(a2, a1)), P.comp(a2.top, a1.top))
        rhs = E.vcompose(P.comp(a2.bottom, a1.bottom), E.hcompose(P.two(a2), P.two(a1)))
        return _same(E, lhs, rhs)

    def hexagon(M1, M2, M3):
        c = B.compose
        F1, F2, F3 = P.one(M1), P.one(M2), P.one(M3)
        lhs = E.vcompose_all(P.two(B.assoc(M3, M2, M1)), P.comp(c(M3, M2), M1),
                             E.whisker_right(P.comp(M3, M2), F1))
        rhs = E.vcompose_all(P.comp(M3, c(M2, M1)), E.whisker_left(F3, P.comp(M2, M1)),
                             E.assoc(F3, F2, F1))
        return _same(E, lhs, rhs)

    def left_unit(M):
        FM = P.one(M)
        lhs = E.vcompose_all(P.two(B.lunitor(M)), P.comp(B.unit(M.tgt), M),
                             E.whisker_right(P.unit(M.tgt), FM))
        return _same(E, lhs, E.lunitor(FM))

    def right_unit(M):
        FM = P.one(M)
        lhs = E.vcompose_all(P.two(B.runitor(M)), P.comp(M, B.unit(M.src)),
                             E.whisker_left(FM, P.unit(M.src)))
        return _same(E, lhs, E.runitor(FM))

    def comp_invertible(M, N):
        return _invertible(E, P.comp(N, M), "composition constraint")

    def unit_invertible(A):
        return _invertible(E, P.unit(A), "unit constraint")

    return [
        Family("1-cell ends", _over(L), one_ends),
        Family("2-cell boundary", _over(C), two_boundary),
        Family("preserves identity 2-cells", _over(L), ids),
        Family("preserves vertical composites", _tup(C, W.vertical_pairs), vcomp),
        Family("composition constraint boundary", _tup(L, W.one_pairs), comp_boundary),
        Family("unit constraint boundary", _over(W.objects), unit_boundary),
        Family("composition constraint natural", _tup(C, W.horizontal_pairs), comp_natural),
        Family("hexagon", _tup(L, W.one_triples), hexagon),
        Family("left unit law", _over(L), left_unit),
        Family("right unit law", _over(L), right_unit),
        Family("composition constraint invertible", _tup(L, W.one_pairs), comp_invertible),
        Family("unit constraint invertible", _over(W.objects), unit_invertible),
    ]


def check_pseudofunctor(P, W):
    return run_families(pseudofunctor_families(P, W))


# ---------------------------------------------------------------------------
# Transformations

_fresh = count()


class Transformation:
    """1-cell components ``obj(A): PA -> QA`` and 2-cell components ``cell(M)``.

    ``cell(M)`` is ``obj(B) . PM => QM . obj(A)`` in oplax and pseudo mode and
    the reverse in lax mode.  Two transformations are equal when their
    ``key`` agrees; composites get structural keys so that boundaries built
    along different routes still match.
    """

    def __init__(self, src, tgt, obj, cell, mode="oplax", name="alpha", key=None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.src = src
        self.tgt = tgt
        self.obj = obj
        self.cell = cell
        self.mode = mode
        self.name = name
        self.key = key if key is not None else ("t", next(_fresh))

    def __eq__(self, other):
        return isinstance(other, Transformation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<Transformation {self.name} ({self.mode})>"


def identity_transformation(P):
    """Components 1_{PA}; cells ``r^-1 . l: 1 . PM => PM . 1``."""
    E = P.dst

    def cell(M):
        PM = P.one(M)
        return E.vcompose(E.strict_inverse(E.runitor(PM)), E.lunitor(PM))

    return Transformation(P, P, lambda A: E.unit(P.obj(A)), cell, "pseudo",
                          name=f"1_{P.name}", key=("id", id(P)))


def compose_transformations(beta, alpha):
    """Vertical composite of oplax transformations; components ``beta_A . alpha_A``."""
    E = alpha.src.dst
    P, R = alpha.src, beta.tgt

    def cell(M):
        A, B = M.src, M.tgt
        a, b = alpha.obj, beta.obj
        PM, QM, RM = P.one(M), alpha.tgt.one(M), R.one(M)
        return E.vcompose_all(
            E.assoc(RM, b(A), a(A)),
            E.whisker_right(beta.cell(M), a(A)),
            E.strict_inverse(E.assoc(b(B), QM, a(A))),
            E.whisker_left(b(B), alpha.cell(M)),
            E.assoc(b(B), a(B), PM))

    mode = "pseudo" if alpha.mode == beta.mode == "pseudo" else "oplax"
    return Transformation(P, R, lambda A: E.compose(beta.obj(A), alpha.obj(A)), cell, mode,
                          name=f"{beta.name}.{alpha.name}", key=("comp", beta.key, alpha.key))


def _oplax_families(t, W, B, E):
    P, Q = t.src, t.tgt
    a = t.obj

    def cell_boundary(M):
        return _ends(t.cell(M), E.compose(a(M.tgt), P.one(M)), E.compose(Q.one(M), a(M.src)))

    def natural(phi):
        lhs = E.vcompose(t.cell(phi.bottom), E.whisker_left(a(phi.top.tgt), P.two(phi)))
        rhs = E.vcompose(E.whisker_right(Q.two(phi), a(phi.top.src)), t.cell(phi.top))
        return _same(E, lhs, rhs)

    def composition(M, N):
        A, Bo, C = M.src, M.tgt, N.tgt
        PN, PM, QN, QM = P.one(N), P.one(M), Q.one(N), Q.one(M)
        lhs = E.vcompose(t.cell(B.compose(N, M)), E.whisker_left(a(C), P.comp(N, M)))
        rhs = E.vcompose_all(
            E.whisker_right(Q.comp(N, M), a(A)),
            E.strict_inverse(E.assoc(QN, QM, a(A))),
            E.whisker_left(QN, t.cell(M)),
            E.assoc(QN, a(Bo), PM),
            E.whisker_right(t.cell(N), PM),
            E.strict_inverse(E.assoc(a(C), PN, PM)))
        return _same(E, lhs, rhs)

    def unit(A):
        aA = a(A)
        lhs = E.vcompose(t.cell(B.unit(A)), E.whisker_left(aA, P.unit(A)))
        rhs = E.vcompose_all(E.whisker_right(Q.unit(A), aA), E.strict_inverse(E.lunitor(aA)),
                             E.runitor(aA))
        return _same(E, lhs, rhs)

    return cell_boundary, natural, composition, unit


def _lax_families(t, W, B, E):
    P, Q = t.src, t.tgt
    a = t.obj

    def cell_boundary(M):
        return _ends(t.cell(M), E.compose(Q.one(M), a(M.src)), E.compose(a(M.tgt), P.one(M)))

    def natural(phi):
        lhs = E.vcompose(t.cell(phi.bottom), E.whisker_right(Q.two(phi), a(phi.top.src)))
        rhs = E.vcompose(E.whisker_left(a(phi.top.tgt), P.two(phi)), t.cell(phi.top))
        return _same(E, lhs, rhs)

    def composition(M, N):
        A, Bo, C = M.src, M.tgt, N.tgt
        PN, PM, QN, QM = P.one(N), P.one(M), Q.one(N), Q.one(M)
        lhs = E.vcompose(t.cell(B.compose(N, M)), E.whisker_right(Q.comp(N, M), a(A)))
        rhs = E.vcompose_all(
            E.whisker_left(a(C), P.comp(N, M)),
            E.assoc(a(C), PN, PM),
            E.whisker_right(t.cell(N), PM),
            E.strict_inverse(E.assoc(QN, a(Bo), PM)),
            E.whisker_left(QN, t.cell(M)),
            E.assoc(QN, QM, a(A)))
        return _same(E, lhs, rhs)

    def unit(A):
        aA = a(A)
        lhs = E.vcompose(t.cell(B.unit(A)), E.whisker_right(Q.unit(A), aA))
        rhs = E.vcompose_all(E.whisker_left(aA, P.unit(A)), E.strict_inverse(E.runitor(aA)),
                             E.lunitor(aA))
        return _same(E, lhs, rhs)

    return cell_boundary, natural, composition, unit


def transformation_families(t, W, mode=None):
    """Boundary, naturality, composition and unit axioms; pseudo mode adds
    invertibility of every 2-cell component, certified by inverse search."""
    mode = mode or t.mode
    P, Q = t.src, t.tgt
    B, E = P.src, P.dst
    build = _lax_families if mode == "lax" else _oplax_families
    cell_boundary, natural, composition, unit = build(t, W, B, E)

    def comp_ends(A):
        aA = t.obj(A)
        return (aA.src == P.obj(A) and aA.tgt == Q.obj(A)) or f"component {aA!r} has wrong ends"

    fams = [
        Family("component ends", _over(W.objects), comp_ends),
        Family("2-cell component boundary", _over(W.ones), cell_boundary),
        Family("naturality", _over(W.twos), natural),
        Family("respects composition", _tup(W.ones, W.one_pairs), composition),
        Family("respects units", _over(W.objects), unit),
    ]
    if mode == "pseudo":
        fams.append(Family("2-cell components invertible", _over(W.ones),
                           lambda M: _invertible(E, t.cell(M), "component")))
    return fams


def check_transformation(t, W, mode=None):
    return run_families(transformation_families(t, W, mode))


# ---------------------------------------------------------------------------
# Icons


class Icon:
    """Components ``cell(M): PM => QM`` for pseudofunctors agreeing on objects."""

    def __init__(self, src, tgt, cell, name="icon"):
        self.src = src
        self.tgt = tgt
        self.cell = cell
        self.name = name

    def __repr__(self):
        return f"<Icon {self.name}>"


def identity_icon(P):
    return Icon(P, P, lambda M: P.dst.cell_id(P.one(M)), name=f"1_{P.name}")


def compose_icons(tau, sigma):
    E = sigma.src.dst
    return Icon(sigma.src, tau.tgt, lambda M: E.vcompose(tau.cell(M), sigma.cell(M)),
                name=f"{tau.name}.{sigma.name}")


def icon_families(i, W, invertible=True):
    P, Q = i.src, i.tgt
    B, E = P.src, P.dst

    def objects_agree(A):
        return P.obj(A) == Q.obj(A) or f"{P.obj(A)!r} != {Q.obj(A)!r}"

    def boundary(M):
        return _ends(i.cell(M), P.one(M), Q.one(M))

    def natural(phi):
        return _same(E, E.vcompose(i.cell(phi.bottom), P.two(phi)),
                     E.vcompose(Q.two(phi), i.cell(phi.top)))

    def composition(M, N):
        lhs = E.vcompose(i.cell(B.compose(N, M)), P.comp(N, M))
        rhs = E.vcompose(Q.comp(N, M), E.hcompose(i.cell(N), i.cell(M)))
        return _same(E, lhs, rhs)

    def unit(A):
        return _same(E, E.vcompose(i.cell(B.unit(A)), P.unit(A)), Q.unit(A))

    fams = [
        Family("agrees on objects", _over(W.objects), objects_agree),
        Family("component boundary", _over(W.ones), boundary),
        Family("naturality", _over(W.twos), natural),
        Family("respects composition", _tup(W.ones, W.one_pairs), composition),
        Family("respects units", _over(W.objects), unit),
    ]
    if invertible:
        fams.append(Family("components invertible", _over(W.ones),
                           lambda M: _invertible(E, i.cell(M), "component")))
    return fams


def check_icon(i, W, invertible=True):
    return run_families(icon_families(i, W, invertible))


# ---------------------------------------------------------------------------
# Modifications


class Modification:
    """Components ``comp(A): alpha_A => beta_A`` between parallel oplax transformations."""

    def __init__(self, top, bottom, comp, name="Gamma"):
        self.top = top
        self.bottom = bottom
        self.comp = comp
        self.name = name

    def __repr__(self):
        return f"<Modification {self.name}>"


def modification_families(m, W, inverse=None):
    """The modification axiom ``beta_M . (G_B . 1) = (1 . G_A) . alpha_M``;
    every component is certified invertible by search, and a supplied
    ``inverse`` is checked to be a two-sided inverse."""
    alpha, beta = m.top, m.bottom
    P, Q = alpha.src, alpha.tgt
    E = P.dst

    def parallel(_):
        return (beta.src is P and beta.tgt is Q) or "transformations are not parallel"

    def boundary(A):
        return _ends(m.comp(A), alpha.obj(A), beta.obj(A))

    def axiom(M):
        lhs = E.vcompose(beta.cell(M), E.whisker_right(m.comp(M.tgt), P.one(M)))
        rhs = E.vcompose(E.whisker_left(Q.one(M), m.comp(M.src)), alpha.cell(M))
        return _same(E, lhs, rhs)

    def invertible(A):
        return _invertible(E, m.comp(A), "component")

    fams = [
        Family("parallel transformations", lambda: iter([((0,), (None,))]), parallel),
        Family("component boundary", _over(W.objects), boundary),
        Family("modification axiom", _over(W.ones), axiom),
        Family("components invertible", _over(W.objects), invertible),
    ]
    if inverse is not None:
        def two_sided(A):
            c, d = m.comp(A), inverse.comp(A)
            if not E.cell_eq(E.vcompose(d, c), E.cell_id(c.top)):
                return "inverse after component is not the identity"
            return _same(E, E.vcompose(c, d), E.cell_id(c.bottom))

        fams.append(Family("certified inverse", _over(W.objects), two_sided))
        fams.extend(Family("inverse: " + f.name, f.instances, f.predicate)
                    for f in modification_families(inverse, W)[:3])
    return fams


def check_modification(m, W, inverse=None):
    return run_families(modification_families(m, W, inverse))


class TransformationBicategory(Bicategory):
    """Pseudofunctors B -> E, oplax transformations and modifications.

    Equality of modifications is componentwise over ``objects``; that list
    is the window the bicategory is observed through.
    """

    def __init__(self, E, objects, name=None):
        self.E = E
        self.objects = list(objects)
        self.name = name or f"Trans(-, {E.name})"

    def _mod(self, top, bottom, comp, name):
        return Modification(top, bottom, comp, name)

    def compose(self, N, M):
        return compose_transformations(N, M)

    def unit(self, P):
        return identity_transformation(P)

    def cell_id(self, t):
        return self._mod(t, t, lambda A: self.E.cell_id(t.obj(A)), f"1_{t.name}")

    def vcompose(self, b, a):
        if a.bottom != b.top:
            raise BoundaryMismatch(f"vertical composite: {a.bottom!r} vs {b.top!r}")
        return self._mod(a.top, b.bottom, lambda A: self.E.vcompose(b.comp(A), a.comp(A)),
                         f"{b.name}.{a.name}")

    def hcompose(self, b, a):
        return self._mod(self.compose(b.top, a.top), self.compose(b.bottom, a.bottom),
                         lambda A: self.E.hcompose(b.comp(A), a.comp(A)), f"{b.name}*{a.name}")

    def assoc(self, P, N, M):
        c = self.compose
        return self._mod(c(c(P, N), M), c(P, c(N, M)),
                         lambda A: self.E.assoc(P.obj(A), N.obj(A), M.obj(A)), "a")

    def lunitor(self, M):
        return self._mod(self.compose(self.unit(M.tgt), M), M,
                         lambda A: self.E.lunitor(M.obj(A)), "l")

    def runitor(self, M):
        return self._mod(self.compose(M, self.unit(M.src)), M,
                         lambda A: self.E.runitor(M.obj(A)), "r")

    def inverse(self, cell):
        comps = {}
        for A in self.objects:
            inv = self.E.inverse(cell.comp(A))
            if inv is None:
                return None
            comps[A] = inv
        return self._mod(cell.bottom, cell.top,
                         lambda A: comps[A] if A in comps else self.E.strict_inverse(cell.comp(A)),
                         f"{cell.name}^-1")

    def search_inverse(self, cell):
        comps = {}
        for A in self.objects:
            inv = self.E.search_inverse(cell.comp(A))
            if inv is None:
                return None
            comps[A] = inv
        return self._mod(cell.bottom, cell.top,
                         lambda A: comps[A] if A in comps else self.E.search_inverse(cell.comp(A)),
                         f"{cell.name}^-1")

    def cell_eq(self, a, b):
        return all(self.E.cell_eq(a.comp(A), b.comp(A)) for A in self.objects)


# ---------------------------------------------------------------------------
# Adjoint equivalences


def triangle_composites(B, f, g, unit, counit):
    """The two triangle composites for ``f -| g`` (unit ``1 => g.f``, counit ``f.g => 1``)."""
    inv = B.strict_inverse
    first = B.vcompose_all(B.lunitor(f), B.whisker_right(counit, f), inv(B.assoc(f, g, f)),
                           B.whisker_left(f, unit), inv(B.runitor(f)))
    second = B.vcompose_all(B.runitor(g), B.whisker_left(g, counit), B.assoc(g, f, g),
                            B.whisker_right(unit, g), inv(B.lunitor(g)))
    return first, second


def adjoint_equivalence_families(B, f, g, unit, counit):
    once = lambda: iter([((0,), ())])  # noqa: E731

    def shapes():
        if f.src != g.tgt or f.tgt != g.src:
            return "f and g are not opposed"
        ok = _ends(unit, B.unit(f.src), B.compose(g, f))
        if ok is not True:
            return "unit " + ok
        ok = _ends(counit, B.compose(f, g), B.unit(f.tgt))
        return ok if ok is True else "counit " + ok

    def first():
        return _same(B, triangle_composites(B, f, g, unit, counit)[0], B.cell_id(f))

    def second():
        return _same(B, triangle_composites(B, f, g, unit, counit)[1], B.cell_id(g))

    return [
        Family("adjunction shape", once, shapes),
        Family("first triangle identity", once, first),
        Family("second triangle identity", once, second),
        Family("unit invertible", once, lambda: _invertible(B, unit, "unit")),
        Family("counit invertible", once, lambda: _invertible(B, counit, "counit")),
    ]


def check_adjoint_equivalence(B, f, g, unit, counit):
    return run_families(adjoint_equivalence_families(B, f, g, unit, counit))
