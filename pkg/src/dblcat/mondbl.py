"""Monoidal, braided and symmetric double categories; monoidal double functors
and monoidal tight transformations; tensor-word functors D^n -> D.

Cell conventions for a monoidal double category ``M`` over ``D = M.base``:

* ``interchange(M2, N2, M1, N1): (M2 x N2) (.) (M1 x N1) => (M2 (.) M1) x (N2 (.) N1)``
  where M1, N1 come first (loose_compose argument order);
* ``unit_interchange(A, B): U_{A x B} => U_A x U_B``;
* ``assoc(A, B, C): (A x B) x C -> A x (B x C)`` and ``assoc_cell(M, N, P)`` over it;
* ``lunit(A): I x A -> A``, ``runit(A): A x I -> A`` with cell versions;
* ``braid(A, B): A x B -> B x A`` and ``braid_cell(M, N)``.
"""

from itertools import product

from .dblcore import (DoubleFunctor, ProdCell, ProdLoose, ProdTight, ProductDouble,
                      TightTransformation, _boundary, _same, check_double_functor,
                      check_tight_transformation)
from .errors import LevelUnavailable, MissingStructure
from .report import Family, Report, run_families

LEVELS = ("monoidal", "braided", "symmetric")


class MonoidalDoubleCategory:
    """Abstract monoidal double category; subclasses supply the structure."""

    name = "M"
    braided = False
    symmetric = False

    def __init__(self, base, unit_object):
        self.base = base
        self.unit_object = unit_object

    # tensor --------------------------------------------------------------
    def tensor(self, A, B):
        raise NotImplementedError

    def tensor_tight(self, f, g):
        raise NotImplementedError

    def tensor_loose(self, M, N):
        raise NotImplementedError

    def tensor_cell(self, a, b):
        raise NotImplementedError

    def interchange(self, M2, N2, M1, N1):
        raise NotImplementedError

    def unit_interchange(self, A, B):
        raise NotImplementedError

    # constraints ---------------------------------------------------------
    def assoc(self, A, B, C):
        raise NotImplementedError

    def assoc_cell(self, M, N, P):
        raise NotImplementedError

    def lunit(self, A):
        raise NotImplementedError

    def lunit_cell(self, M):
        raise NotImplementedError

    def runit(self, A):
        raise NotImplementedError

    def runit_cell(self, M):
        raise NotImplementedError

    def braid(self, A, B):
        raise MissingStructure(f"{self.name} has no braiding")

    def braid_cell(self, M, N):
        raise MissingStructure(f"{self.name} has no braiding")

    # derived -------------------------------------------------------------
    @property
    def unit_loose(self):
        return self.base.unit(self.unit_object)

    def level(self):
        if self.symmetric:
            return "symmetric"
        return "braided" if self.braided else "monoidal"

    def supports(self, level):
        if level not in LEVELS:
            raise LevelUnavailable(f"unknown level {level!r}")
        return LEVELS.index(level) <= LEVELS.index(self.level())

    def tensor_functor(self):
        """The tensor as a pseudo double functor D x D -> D with constraints x and u."""
        D = self.base
        return DoubleFunctor(
            ProductDouble((D, D)), D,
            lambda AB: self.tensor(*AB),
            lambda f: self.tensor_tight(*f.parts),
            lambda M: self.tensor_loose(*M.parts),
            lambda a: self.tensor_cell(*a.parts),
            lambda N, M: self.interchange(N.parts[0], N.parts[1], M.parts[0], M.parts[1]),
            lambda AB: self.unit_interchange(*AB),
            name="tensor")

    def word_functor(self, word, arity):
        return WordFunctor(self, word, arity)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} ({self.level()})>"


# ---------------------------------------------------------------------------
# Words: binary trees over variable indices and the unit (None)


def word_str(w):
    if w is None:
        return "I"
    if isinstance(w, int):
        return f"x{w}"
    return f"({word_str(w[0])}*{word_str(w[1])})"


def _eval_word(w, leaf, unit, pair):
    if w is None:
        return unit()
    if isinstance(w, int):
        return leaf(w)
    return pair(_eval_word(w[0], leaf, unit, pair), _eval_word(w[1], leaf, unit, pair))


class WordFunctor(DoubleFunctor):
    """The pseudo double functor D^n -> D sending (X_0, ..., X_{n-1}) to a tensor word.

    Its composition constraint is built from interchange cells, its unit
    constraint from unit-interchange cells; a unit leaf contributes the
    left unitor of U_I.
    """

    def __init__(self, M, word, arity):
        self.monoidal = M
        self.word = word
        self.arity = arity
        D = M.base
        super().__init__(
            ProductDouble((D,) * arity), D, self._obj, self._tight, self._loose, self._cell,
            self._comp, self._unit, name=word_str(word))

    def _obj(self, As):
        M = self.monoidal
        return _eval_word(self.word, lambda i: As[i], lambda: M.unit_object, M.tensor)

    def _tight(self, f):
        M = self.monoidal
        return _eval_word(self.word, lambda i: f.parts[i],
                          lambda: M.base.tight_id(M.unit_object), M.tensor_tight)

    def _loose(self, X):
        M = self.monoidal
        return _eval_word(self.word, lambda i: X.parts[i], lambda: M.unit_loose, M.tensor_loose)

    def _cell(self, a):
        M = self.monoidal
        return _eval_word(self.word, lambda i: a.parts[i],
                          lambda: M.base.cell_id(M.unit_loose), M.tensor_cell)

    def _comp(self, N, Mx):
        Mon = self.monoidal
        D = Mon.base

        def go(w):
            # returns (F_w N, F_w M, constraint)
            if w is None:
                U = Mon.unit_loose
                return U, U, D.lunitor(U)
            if isinstance(w, int):
                n, m = N.parts[w], Mx.parts[w]
                return n, m, D.cell_id(D.loose_compose(n, m))
            n1, m1, c1 = go(w[0])
            n2, m2, c2 = go(w[1])
            x = Mon.interchange(n1, n2, m1, m2)
            return (Mon.tensor_loose(n1, n2), Mon.tensor_loose(m1, m2),
                    D.vcompose(Mon.tensor_cell(c1, c2), x))

        return go(self.word)[2]

    def _unit(self, As):
        Mon = self.monoidal
        D = Mon.base

        def go(w):
            if w is None:
                return Mon.unit_object, D.cell_id(Mon.unit_loose)
            if isinstance(w, int):
                return As[w], D.cell_id(D.unit(As[w]))
            A1, c1 = go(w[0])
            A2, c2 = go(w[1])
            return Mon.tensor(A1, A2), D.vcompose(Mon.tensor_cell(c1, c2), Mon.unit_interchange(A1, A2))

        return go(self.word)[1]


def constraint_transformation(M, kind):
    """The constraint of ``kind`` ('assoc', 'lunit', 'runit', 'braid') as a
    tight transformation between word functors."""
    if kind == "assoc":
        F, G = WordFunctor(M, ((0, 1), 2), 3), WordFunctor(M, (0, (1, 2)), 3)
        return TightTransformation(F, G, lambda As: M.assoc(*As),
                                   lambda X: M.assoc_cell(*X.parts), name="assoc")
    if kind == "lunit":
        F, G = WordFunctor(M, (None, 0), 1), WordFunctor(M, 0, 1)
        return TightTransformation(F, G, lambda As: M.lunit(As[0]),
                                   lambda X: M.lunit_cell(X.parts[0]), name="lunit")
    if kind == "runit":
        F, G = WordFunctor(M, (0, None), 1), WordFunctor(M, 0, 1)
        return TightTransformation(F, G, lambda As: M.runit(As[0]),
                                   lambda X: M.runit_cell(X.parts[0]), name="runit")
    if kind == "braid":
        F, G = WordFunctor(M, (0, 1), 2), WordFunctor(M, (1, 0), 2)
        return TightTransformation(F, G, lambda As: M.braid(*As),
                                   lambda X: M.braid_cell(*X.parts), name="braid")
    raise MissingStructure(f"no constraint named {kind!r}")


# ---------------------------------------------------------------------------
# Checker


def _over(seq):
    return lambda: (((i,), (x,)) for i, x in enumerate(seq))


def _prod(*seqs):
    """Instances over a product of lists, keyed by index tuples."""
    def gen():
        for idx in product(*[range(len(s)) for s in seqs]):
            yield idx, tuple(s[i] for s, i in zip(seqs, idx))
    return gen


def _prod_chains(*chains):
    """Instances over a product of (seq, index-iterator) chains; args are flattened."""
    def gen():
        lists = [list(it()) for _, it in chains]
        for combo in product(*lists):
            args = []
            for (seq, _), key in zip(chains, combo):
                args.extend(seq[i] for i in key)
            yield combo, tuple(args)
    return gen


def monoidal_families(M, U, level="monoidal", partner=None):
    """Axiom families for ``M`` at ``level``; first tensor factors range over
    ``U``, further factors over ``partner`` (default ``U``)."""
    if not M.supports(level):
        raise MissingStructure(f"{M.name} has no structure for level {level!r}")
    V = partner or U
    D = M.base
    t, tt, tl, tc = M.tensor, M.tensor_tight, M.tensor_loose, M.tensor_cell
    v, h, cid, ident = D.vcompose, D.hcompose, D.cell_id, D.tight_id
    tcomp = D.tight_compose
    I = M.unit_object
    UI = M.unit_loose

    def eq(lhs, rhs):
        return _same(D, lhs, rhs)

    # tensor functoriality -------------------------------------------------
    def tensor_tight_ids(A, B):
        return tt(ident(A), ident(B)) == ident(t(A, B))

    def tensor_tight_comp(f1, g1, f2, g2):
        return tt(tcomp(g1, f1), tcomp(g2, f2)) == tcomp(tt(g1, g2), tt(f1, f2))

    def tensor_cell_ids(Mx, N):
        return eq(tc(cid(Mx), cid(N)), cid(tl(Mx, N)))

    def tensor_cell_comp(a1, b1, a2, b2):
        return eq(tc(v(b1, a1), v(b2, a2)), v(tc(b1, b2), tc(a1, a2)))

    def tensor_strict(a, b):
        ok = _boundary(tc(a, b), tl(a.top, b.top), tl(a.bottom, b.bottom),
                       tt(a.left, b.left), tt(a.right, b.right))
        if ok is not True:
            return ok
        X = tl(a.top, b.top)
        if X.src != t(a.top.src, b.top.src) or X.tgt != t(a.top.tgt, b.top.tgt):
            return "S or T of a tensor of loose cells is not the tensor of the ends"
        return True

    def interchange_boundary(M1, M2, N1, N2):
        return _boundary(M.interchange(M2, N2, M1, N1),
                         D.loose_compose(tl(M2, N2), tl(M1, N1)),
                         tl(D.loose_compose(M2, M1), D.loose_compose(N2, N1)),
                         ident(t(M1.src, N1.src)), ident(t(M2.tgt, N2.tgt)))

    def unit_interchange_boundary(A, B):
        return _boundary(M.unit_interchange(A, B), D.unit(t(A, B)), tl(D.unit(A), D.unit(B)),
                         ident(t(A, B)), ident(t(A, B)))

    def interchange_natural(a1, a2, b1, b2):
        lhs = v(M.interchange(a2.bottom, b2.bottom, a1.bottom, b1.bottom),
                h(tc(a2, b2), tc(a1, b1)))
        rhs = v(tc(h(a2, a1), h(b2, b1)), M.interchange(a2.top, b2.top, a1.top, b1.top))
        return eq(lhs, rhs)

    def unit_interchange_natural(f, g):
        lhs = v(M.unit_interchange(f.dst, g.dst), D.unit_cell(tt(f, g)))
        rhs = v(tc(D.unit_cell(f), D.unit_cell(g)), M.unit_interchange(f.src, g.src))
        return eq(lhs, rhs)

    def interchange_invertible(M1, M2, N1, N2):
        return D.checked_inverse(M.interchange(M2, N2, M1, N1)) is not None or "no inverse"

    def unit_interchange_invertible(A, B):
        return D.checked_inverse(M.unit_interchange(A, B)) is not None or "no inverse"

    def interchange_assoc(M1, M2, M3, N1, N2, N3):
        c = D.loose_compose
        x = M.interchange
        lhs = D.vcompose_all(tc(D.assoc(M3, M2, M1), D.assoc(N3, N2, N1)),
                             x(c(M3, M2), c(N3, N2), M1, N1),
                             h(x(M3, N3, M2, N2), cid(tl(M1, N1))))
        rhs = D.vcompose_all(x(M3, N3, c(M2, M1), c(N2, N1)),
                             h(cid(tl(M3, N3)), x(M2, N2, M1, N1)),
                             D.assoc(tl(M3, N3), tl(M2, N2), tl(M1, N1)))
        return eq(lhs, rhs)

    def interchange_runit(Mx, N):
        lhs = D.vcompose_all(tc(D.runitor(Mx), D.runitor(N)),
                             M.interchange(Mx, N, D.unit(Mx.src), D.unit(N.src)),
                             h(cid(tl(Mx, N)), M.unit_interchange(Mx.src, N.src)))
        return eq(lhs, D.runitor(tl(Mx, N)))

    def interchange_lunit(Mx, N):
        lhs = D.vcompose_all(tc(D.lunitor(Mx), D.lunitor(N)),
                             M.interchange(D.unit(Mx.tgt), D.unit(N.tgt), Mx, N),
                             h(M.unit_interchange(Mx.tgt, N.tgt), cid(tl(Mx, N))))
        return eq(lhs, D.lunitor(tl(Mx, N)))

    # D0 monoidal category ------------------------------------------------
    def tight_assoc_natural(f, g, k):
        return (tcomp(M.assoc(f.dst, g.dst, k.dst), tt(tt(f, g), k))
                == tcomp(tt(f, tt(g, k)), M.assoc(f.src, g.src, k.src)))

    def tight_unitors_natural(f):
        ok = tcomp(M.lunit(f.dst), tt(ident(I), f)) == tcomp(f, M.lunit(f.src))
        return ok and tcomp(M.runit(f.dst), tt(f, ident(I))) == tcomp(f, M.runit(f.src))

    def tight_pentagon(A, B, C, E):
        a = M.assoc
        lhs = tcomp(a(A, B, t(C, E)), a(t(A, B), C, E))
        rhs = tcomp(tt(ident(A), a(B, C, E)), tcomp(a(A, t(B, C), E), tt(a(A, B, C), ident(E))))
        return lhs == rhs

    def tight_triangle(A, B):
        return tcomp(tt(ident(A), M.lunit(B)), M.assoc(A, I, B)) == tt(M.runit(A), ident(B))

    def tight_constraints_invertible(A, B, C):
        for f in (M.assoc(A, B, C), M.lunit(A), M.runit(A)):
            if D.tight_inverse(f) is None:
                return f"{f!r} has no inverse"
        return True

    # D1 monoidal category ------------------------------------------------
    def constraint_cells_over(Mx, N, P):
        ok = _boundary(M.assoc_cell(Mx, N, P), tl(tl(Mx, N), P), tl(Mx, tl(N, P)),
                       M.assoc(Mx.src, N.src, P.src), M.assoc(Mx.tgt, N.tgt, P.tgt))
        if ok is not True:
            return "associator " + ok
        ok = _boundary(M.lunit_cell(Mx), tl(UI, Mx), Mx, M.lunit(Mx.src), M.lunit(Mx.tgt))
        if ok is not True:
            return "left unitor " + ok
        ok = _boundary(M.runit_cell(Mx), tl(Mx, UI), Mx, M.runit(Mx.src), M.runit(Mx.tgt))
        return ok if ok is True else "right unitor " + ok

    def cell_assoc_natural(a, b, c):
        return eq(v(M.assoc_cell(a.bottom, b.bottom, c.bottom), tc(tc(a, b), c)),
                  v(tc(a, tc(b, c)), M.assoc_cell(a.top, b.top, c.top)))

    def cell_unitors_natural(a):
        ok = eq(v(M.lunit_cell(a.bottom), tc(cid(UI), a)), v(a, M.lunit_cell(a.top)))
        if ok is not True:
            return "left: " + ok
        ok = eq(v(M.runit_cell(a.bottom), tc(a, cid(UI))), v(a, M.runit_cell(a.top)))
        return ok if ok is True else "right: " + ok

    def cell_pentagon(A, B, C, E):
        a = M.assoc_cell
        lhs = v(a(A, B, tl(C, E)), a(tl(A, B), C, E))
        rhs = D.vcompose_all(tc(cid(A), a(B, C, E)), a(A, tl(B, C), E), tc(a(A, B, C), cid(E)))
        return eq(lhs, rhs)

    def cell_triangle(A, B):
        return eq(v(tc(cid(A), M.lunit_cell(B)), M.assoc_cell(A, UI, B)), tc(M.runit_cell(A), cid(B)))

    def cell_constraints_invertible(A, B, C):
        for c in (M.assoc_cell(A, B, C), M.lunit_cell(A), M.runit_cell(A)):
            if D.checked_inverse(c) is None:
                return f"{c!r} has no inverse"
        return True

    # constraints are transformations of double categories ---------------
    def assoc_interchange(M1, M2, N1, N2, P1, P2):
        c = D.loose_compose
        x = M.interchange
        lhs = D.vcompose_all(tc(cid(c(M2, M1)), x(N2, P2, N1, P1)),
                             x(M2, tl(N2, P2), M1, tl(N1, P1)),
                             h(M.assoc_cell(M2, N2, P2), M.assoc_cell(M1, N1, P1)))
        rhs = D.vcompose_all(M.assoc_cell(c(M2, M1), c(N2, N1), c(P2, P1)),
                             tc(x(M2, N2, M1, N1), cid(c(P2, P1))),
                             x(tl(M2, N2), P2, tl(M1, N1), P1))
        return eq(lhs, rhs)

    def assoc_units(A, B, C):
        u = M.unit_interchange
        lhs = D.vcompose_all(tc(cid(D.unit(A)), u(B, C)), u(A, t(B, C)), D.unit_cell(M.assoc(A, B, C)))
        rhs = D.vcompose_all(M.assoc_cell(D.unit(A), D.unit(B), D.unit(C)),
                             tc(u(A, B), cid(D.unit(C))), u(t(A, B), C))
        return eq(lhs, rhs)

    def runit_interchange(M1, M2):
        lhs = D.vcompose_all(M.runit_cell(D.loose_compose(M2, M1)),
                             tc(cid(D.loose_compose(M2, M1)), D.runitor(UI)),
                             M.interchange(M2, UI, M1, UI))
        return eq(lhs, h(M.runit_cell(M2), M.runit_cell(M1)))

    def runit_units(A):
        return eq(v(M.runit_cell(D.unit(A)), M.unit_interchange(A, I)), D.unit_cell(M.runit(A)))

    def lunit_interchange(M1, M2):
        lhs = D.vcompose_all(M.lunit_cell(D.loose_compose(M2, M1)),
                             tc(D.lunitor(UI), cid(D.loose_compose(M2, M1))),
                             M.interchange(UI, M2, UI, M1))
        return eq(lhs, h(M.lunit_cell(M2), M.lunit_cell(M1)))

    def lunit_units(A):
        return eq(v(M.lunit_cell(D.unit(A)), M.unit_interchange(I, A)), D.unit_cell(M.lunit(A)))

    def unit_object(A):
        if D.unit(I).src != I:
            return "U_I does not sit on I"
        return _boundary(M.lunit_cell(D.unit(A)), tl(UI, D.unit(A)), D.unit(A),
                         M.lunit(A), M.lunit(A))

    L, T, C, O = U.loose, U.tight, U.cells, U.objects
    L2, T2, C2, O2 = V.loose, V.tight, V.cells, V.objects
    lp = (L, U.loose_pairs)
    lp2 = (L2, V.loose_pairs)
    tp = (T, U.tight_pairs)
    tp2 = (T2, V.tight_pairs)
    vp = (C, U.vertical_pairs)
    vp2 = (C2, V.vertical_pairs)
    hp = (C, U.horizontal_pairs)
    hp2 = (C2, V.horizontal_pairs)
    lt = (L, U.loose_triples)
    lt2 = (L2, V.loose_triples)

    fams = [
        Family("tensor preserves tight identities", _prod(O, O2), tensor_tight_ids),
        Family("tensor preserves tight composites", _prod_chains(tp, tp2), tensor_tight_comp),
        Family("tensor preserves identity 2-cells", _prod(L, L2), tensor_cell_ids),
        Family("tensor preserves vertical composites", _prod_chains(vp, vp2), tensor_cell_comp),
        Family("S and T strict monoidal on tensors", _prod(C, C2), tensor_strict),
        Family("interchange boundary", _prod_chains(lp, lp2), interchange_boundary),
        Family("unit interchange boundary", _prod(O, O2), unit_interchange_boundary),
        Family("interchange natural", _prod_chains(hp, hp2), interchange_natural),
        Family("unit interchange natural", _prod(T, T2), unit_interchange_natural),
        Family("interchange invertible", _prod_chains(lp, lp2), interchange_invertible),
        Family("unit interchange invertible", _prod(O, O2), unit_interchange_invertible),
        Family("interchange associativity", _prod_chains(lt, lt2), interchange_assoc),
        Family("interchange right unit", _prod(L, L2), interchange_runit),
        Family("interchange left unit", _prod(L, L2), interchange_lunit),
        Family("tight associator natural", _prod(T, T2, T2), tight_assoc_natural),
        Family("tight unitors natural", _over(T), tight_unitors_natural),
        Family("tight pentagon", _prod(O, O2, O2, O2), tight_pentagon),
        Family("tight triangle", _prod(O, O2), tight_triangle),
        Family("tight constraints invertible", _prod(O, O2, O2), tight_constraints_invertible),
        Family("constraint cells over tight constraints", _prod(L, L2, L2), constraint_cells_over),
        Family("unit object", _over(O), unit_object),
        Family("cell associator natural", _prod(C, C2, C2), cell_assoc_natural),
        Family("cell unitors natural", _over(C), cell_unitors_natural),
        Family("cell pentagon", _prod(L, L2, L2, L2), cell_pentagon),
        Family("cell triangle", _prod(L, L2), cell_triangle),
        Family("cell constraints invertible", _prod(L, L2, L2), cell_constraints_invertible),
        Family("associator respects interchange", _prod_chains(lp, lp2, lp2), assoc_interchange),
        Family("associator respects unit interchange", _prod(O, O2, O2), assoc_units),
        Family("right unitor respects interchange", _prod_chains(lp), runit_interchange),
        Family("right unitor respects units", _over(O), runit_units),
        Family("left unitor respects interchange", _prod_chains(lp), lunit_interchange),
        Family("left unitor respects units", _over(O), lunit_units),
    ]
    if LEVELS.index(level) >= 1:
        fams += _braided_families(M, U, V)
    if level == "symmetric":
        fams += _symmetric_families(M, U, V)
    return fams


def _braided_families(M, U, V):
    D = M.base
    t, tt, tl, tc = M.tensor, M.tensor_tight, M.tensor_loose, M.tensor_cell
    v, h, ident, cid = D.vcompose, D.hcompose, D.tight_id, D.cell_id
    tcomp = D.tight_compose
    s, sc, a, ac = M.braid, M.braid_cell, M.assoc, M.assoc_cell

    def eq(lhs, rhs):
        return _same(D, lhs, rhs)

    def tight_braid_natural(f, g):
        return tcomp(s(f.dst, g.dst), tt(f, g)) == tcomp(tt(g, f), s(f.src, g.src))

    def cell_braid_natural(x, y):
        return eq(v(sc(x.bottom, y.bottom), tc(x, y)), v(tc(y, x), sc(x.top, y.top)))

    def braid_over(Mx, N):
        return _boundary(sc(Mx, N), tl(Mx, N), tl(N, Mx), s(Mx.src, N.src), s(Mx.tgt, N.tgt))

    def tight_hexagons(A, B, C):
        # s_{A,BC} after associators, and its mirror
        inv = D.tight_inverse
        lhs = tcomp(a(B, C, A), tcomp(s(A, t(B, C)), a(A, B, C)))
        rhs = tcomp(tt(ident(B), s(A, C)), tcomp(a(B, A, C), tt(s(A, B), ident(C))))
        if lhs != rhs:
            return "first hexagon fails"
        lhs = tcomp(inv(a(C, A, B)), tcomp(s(t(A, B), C), inv(a(A, B, C))))
        rhs = tcomp(tt(s(A, C), ident(B)), tcomp(inv(a(A, C, B)), tt(ident(A), s(B, C))))
        return lhs == rhs or "second hexagon fails"

    def cell_hexagons(A, B, C):
        inv = D.inverse
        lhs = D.vcompose_all(ac(B, C, A), sc(A, tl(B, C)), ac(A, B, C))
        rhs = D.vcompose_all(tc(cid(B), sc(A, C)), ac(B, A, C), tc(sc(A, B), cid(C)))
        ok = eq(lhs, rhs)
        if ok is not True:
            return "first hexagon: " + ok
        lhs = D.vcompose_all(inv(ac(C, A, B)), sc(tl(A, B), C), inv(ac(A, B, C)))
        rhs = D.vcompose_all(tc(sc(A, C), cid(B)), inv(ac(A, C, B)), tc(cid(A), sc(B, C)))
        ok = eq(lhs, rhs)
        return ok if ok is True else "second hexagon: " + ok

    def braid_interchange(M1, M2, N1, N2):
        lhs = v(M.interchange(N2, M2, N1, M1), h(sc(M2, N2), sc(M1, N1)))
        rhs = v(sc(D.loose_compose(M2, M1), D.loose_compose(N2, N1)), M.interchange(M2, N2, M1, N1))
        return eq(lhs, rhs)

    def braid_units(A, B):
        return eq(v(M.unit_interchange(B, A), D.unit_cell(s(A, B))),
                  v(sc(D.unit(A), D.unit(B)), M.unit_interchange(A, B)))

    def braid_invertible(Mx, N):
        if D.tight_inverse(s(Mx.src, N.src)) is None:
            return "tight braiding not invertible"
        return D.checked_inverse(sc(Mx, N)) is not None or "braiding cell not invertible"

    L, T, C, O = U.loose, U.tight, U.cells, U.objects
    L2, T2, C2, O2 = V.loose, V.tight, V.cells, V.objects
    return [
        Family("tight braiding natural", _prod(T, T2), tight_braid_natural),
        Family("cell braiding natural", _prod(C, C2), cell_braid_natural),
        Family("braiding over tight braiding", _prod(L, L2), braid_over),
        Family("tight hexagons", _prod(O, O2, O2), tight_hexagons),
        Family("cell hexagons", _prod(L, L2, L2), cell_hexagons),
        Family("braiding respects interchange",
               _prod_chains((L, U.loose_pairs), (L2, V.loose_pairs)), braid_interchange),
        Family("braiding respects unit interchange", _prod(O, O2), braid_units),
        Family("braiding invertible", _prod(L, L2), braid_invertible),
    ]


def _symmetric_families(M, U, V):
    D = M.base
    s, sc = M.braid, M.braid_cell

    def tight_self_inverse(A, B):
        return D.tight_compose(s(B, A), s(A, B)) == D.tight_id(M.tensor(A, B))

    def cell_self_inverse(Mx, N):
        return _same(D, D.vcompose(sc(N, Mx), sc(Mx, N)), D.cell_id(M.tensor_loose(Mx, N)))

    return [
        Family("tight braiding self-inverse", _prod(U.objects, V.objects), tight_self_inverse),
        Family("cell braiding self-inverse", _prod(U.loose, V.loose), cell_self_inverse),
    ]


def check_monoidal_double_category(M, U, level="monoidal", partner=None):
    """Every monoidal (braided, symmetric) double category axiom over the window."""
    return run_families(monoidal_families(M, U, level, partner))


# ---------------------------------------------------------------------------
# Product monoidal structure and the middle-four interchange


class ProductMonoidal(MonoidalDoubleCategory):
    """M x N with the componentwise structure."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        super().__init__(ProductDouble([F.base for F in self.factors]),
                         tuple(F.unit_object for F in self.factors))
        self.name = " x ".join(F.name for F in self.factors)
        self.braided = all(F.braided for F in self.factors)
        self.symmetric = all(F.symmetric for F in self.factors)

    def _zip(self, method, wrap, *args):
        parts = []
        for i, F in enumerate(self.factors):
            parts.append(getattr(F, method)(*(_part(x, i) for x in args)))
        return wrap(parts) if wrap else tuple(parts)

    def tensor(self, A, B):
        return self._zip("tensor", None, A, B)

    def tensor_tight(self, f, g):
        return self._zip("tensor_tight", ProdTight, f, g)

    def tensor_loose(self, Mx, N):
        return self._zip("tensor_loose", ProdLoose, Mx, N)

    def tensor_cell(self, a, b):
        return self._zip("tensor_cell", ProdCell, a, b)

    def interchange(self, M2, N2, M1, N1):
        return self._zip("interchange", ProdCell, M2, N2, M1, N1)

    def unit_interchange(self, A, B):
        return self._zip("unit_interchange", ProdCell, A, B)

    def assoc(self, A, B, C):
        return self._zip("assoc", ProdTight, A, B, C)

    def assoc_cell(self, Mx, N, P):
        return self._zip("assoc_cell", ProdCell, Mx, N, P)

    def lunit(self, A):
        return self._zip("lunit", ProdTight, A)

    def lunit_cell(self, Mx):
        return self._zip("lunit_cell", ProdCell, Mx)

    def runit(self, A):
        return self._zip("runit", ProdTight, A)

    def runit_cell(self, Mx):
        return self._zip("runit_cell", ProdCell, Mx)

    def braid(self, A, B):
        return self._zip("braid", ProdTight, A, B)

    def braid_cell(self, Mx, N):
        return self._zip("braid_cell", ProdCell, Mx, N)


def _part(x, i):
    if isinstance(x, tuple):
        return x[i]
    return x.parts[i]


def middle_four(M, A, B, C, E):
    """(A x B) x (C x E) -> (A x C) x (B x E), built from associators and one braiding."""
    D = M.base
    a, t, tt, ident = M.assoc, M.tensor, M.tensor_tight, D.tight_id
    inv = D.tight_inverse
    # B x (C x E) -> (B x C) x E -> (C x B) x E -> C x (B x E)
    inner = D.tight_compose(a(C, B, E), D.tight_compose(tt(M.braid(B, C), ident(E)), inv(a(B, C, E))))
    step = D.tight_compose(tt(ident(A), inner), a(A, B, t(C, E)))
    return D.tight_compose(inv(a(A, C, t(B, E))), step)


def middle_four_cell(M, Mx, N, P, Q):
    D = M.base
    a, tl, tc, cid = M.assoc_cell, M.tensor_loose, M.tensor_cell, D.cell_id
    inv = D.inverse
    inner = D.vcompose_all(a(P, N, Q), tc(M.braid_cell(N, P), cid(Q)), inv(a(N, P, Q)))
    step = D.vcompose(tc(cid(Mx), inner), a(Mx, N, tl(P, Q)))
    return D.vcompose(inv(a(Mx, P, tl(N, Q))), step)


# ---------------------------------------------------------------------------
# Monoidal double functors


class MonoidalDoubleFunctor:
    """A double functor F: M -> N with comparison ``phi`` and unit comparison ``phi_unit``.

    For laxity 'lax' or 'strong': ``phi(A, B): FA x FB -> F(A x B)``,
    ``phi_cell(M, N): FM x FN => F(M x N)``, ``phi_unit: I -> F(I)`` and
    ``phi_unit_cell: U_I => F(U_I)``.  For 'colax' every comparison points
    the other way.
    """

    def __init__(self, functor, src, dst, phi, phi_cell, phi_unit, phi_unit_cell, laxity="lax",
                 name=None):
        if laxity not in ("lax", "colax", "strong"):
            raise ValueError(f"unknown laxity {laxity!r}")
        self.functor = functor
        self.src = src
        self.dst = dst
        self.phi = phi
        self.phi_cell = phi_cell
        self.phi_unit = phi_unit
        self.phi_unit_cell = phi_unit_cell
        self.laxity = laxity
        self.name = name or functor.name

    def phi_transformation(self):
        """phi as a tight transformation (x) . (F x F) -> F . (x) of functors D x D -> E."""
        F, Ms, Mt = self.functor, self.src, self.dst
        D2 = ProductDouble((Ms.base, Ms.base))
        E = Mt.base

        def pair(FF):
            return DoubleFunctor(
                D2, E,
                lambda AB: Mt.tensor(F.obj(AB[0]), F.obj(AB[1])),
                lambda f: Mt.tensor_tight(F.tight(f.parts[0]), F.tight(f.parts[1])),
                lambda X: Mt.tensor_loose(F.loose(X.parts[0]), F.loose(X.parts[1])),
                lambda a: Mt.tensor_cell(F.cell(a.parts[0]), F.cell(a.parts[1])),
                lambda N, X: E.vcompose(
                    Mt.tensor_cell(F.comp(N.parts[0], X.parts[0]), F.comp(N.parts[1], X.parts[1])),
                    Mt.interchange(F.loose(N.parts[0]), F.loose(N.parts[1]),
                                   F.loose(X.parts[0]), F.loose(X.parts[1]))),
                lambda AB: E.vcompose(Mt.tensor_cell(F.unit(AB[0]), F.unit(AB[1])),
                                      Mt.unit_interchange(F.obj(AB[0]), F.obj(AB[1]))),
                name=f"{F.name}x{F.name}")

        tensor_after = pair(F)
        T = Ms.tensor_functor()
        after_tensor = DoubleFunctor(
            D2, E, lambda AB: F.obj(T.obj(AB)), lambda f: F.tight(T.tight(f)),
            lambda X: F.loose(T.loose(X)), lambda a: F.cell(T.cell(a)),
            lambda N, X: E.vcompose(F.cell(T.comp(N, X)), F.comp(T.loose(N), T.loose(X))),
            lambda AB: E.vcompose(F.cell(T.unit(AB)), F.unit(T.obj(AB))),
            name=f"{F.name}.tensor")
        src, dst = (tensor_after, after_tensor) if self.laxity != "colax" else (after_tensor, tensor_after)
        return TightTransformation(src, dst, lambda AB: self.phi(*AB),
                                   lambda X: self.phi_cell(*X.parts), name=f"phi_{self.name}")

    def __repr__(self):
        return f"<MonoidalDoubleFunctor {self.name} ({self.laxity})>"


def identity_monoidal_functor(M):
    from .dblcore import identity_functor
    D = M.base
    return MonoidalDoubleFunctor(
        identity_functor(D), M, M,
        lambda A, B: D.tight_id(M.tensor(A, B)),
        lambda X, Y: D.cell_id(M.tensor_loose(X, Y)),
        D.tight_id(M.unit_object), D.cell_id(M.unit_loose), laxity="strong", name="id")


def tensor_monoidal_functor(M, swapped=False):
    """The tensor of a braided M as a strong monoidal functor M x M -> M.

    The comparison is the middle-four interchange.  With ``swapped`` the
    functor is the tensor after the symmetry of M x M: (A, B) goes to B x A.
    """
    D = M.base
    T = M.tensor_functor()
    order = (lambda p: (p[1], p[0])) if swapped else (lambda p: (p[0], p[1]))

    def parts(x):
        return order(x if isinstance(x, tuple) else x.parts)

    F = DoubleFunctor(
        ProductDouble((D, D)), D,
        lambda AB: M.tensor(*parts(AB)),
        lambda f: M.tensor_tight(*parts(f)),
        lambda X: M.tensor_loose(*parts(X)),
        lambda a: M.tensor_cell(*parts(a)),
        lambda N, X: M.interchange(*parts(N), *parts(X)),
        lambda AB: M.unit_interchange(*parts(AB)),
        name="tensor after swap" if swapped else T.name)
    I = M.unit_object
    return MonoidalDoubleFunctor(
        F, ProductMonoidal((M, M)), M,
        lambda A, B: middle_four(M, *parts(A), *parts(B)),
        lambda X, Y: middle_four_cell(M, *parts(X), *parts(Y)),
        D.tight_inverse(M.lunit(I)), D.inverse(M.lunit_cell(M.unit_loose)),
        laxity="strong", name=F.name)


def monoidal_functor_families(Phi, U, partner=None):
    V = partner or U
    F, Ms, Mt = Phi.functor, Phi.src, Phi.dst
    D, E = Ms.base, Mt.base
    lax = Phi.laxity != "colax"
    phi, pc = Phi.phi, Phi.phi_cell
    tcomp, v, h = E.tight_compose, E.vcompose, E.hcompose
    ident, cid = E.tight_id, E.cell_id
    Ft, Fc, Fl, Fo = F.tight, F.cell, F.loose, F.obj
    Ti, Ci = Ms.unit_object, Ms.unit_loose

    def eq(lhs, rhs):
        return _same(E, lhs, rhs)

    def tight_assoc(A, B, C):
        if lax:
            lhs = tcomp(Ft(Ms.assoc(A, B, C)), tcomp(phi(Ms.tensor(A, B), C), Mt.tensor_tight(phi(A, B), ident(Fo(C)))))
            rhs = tcomp(phi(A, Ms.tensor(B, C)), tcomp(Mt.tensor_tight(ident(Fo(A)), phi(B, C)),
                                                       Mt.assoc(Fo(A), Fo(B), Fo(C))))
        else:
            lhs = tcomp(Mt.assoc(Fo(A), Fo(B), Fo(C)), tcomp(Mt.tensor_tight(phi(A, B), ident(Fo(C))),
                                                             phi(Ms.tensor(A, B), C)))
            rhs = tcomp(Mt.tensor_tight(ident(Fo(A)), phi(B, C)),
                        tcomp(phi(A, Ms.tensor(B, C)), Ft(Ms.assoc(A, B, C))))
        return lhs == rhs

    def tight_unit_laws(A):
        if lax:
            left = tcomp(Ft(Ms.lunit(A)), tcomp(phi(Ti, A), Mt.tensor_tight(Phi.phi_unit, ident(Fo(A)))))
            right = tcomp(Ft(Ms.runit(A)), tcomp(phi(A, Ti), Mt.tensor_tight(ident(Fo(A)), Phi.phi_unit)))
            if left != Mt.lunit(Fo(A)):
                return "left unit law fails"
            return right == Mt.runit(Fo(A)) or "right unit law fails"
        left = tcomp(Mt.lunit(Fo(A)), tcomp(Mt.tensor_tight(Phi.phi_unit, ident(Fo(A))), phi(Ti, A)))
        right = tcomp(Mt.runit(Fo(A)), tcomp(Mt.tensor_tight(ident(Fo(A)), Phi.phi_unit), phi(A, Ti)))
        if left != Ft(Ms.lunit(A)):
            return "left unit law fails"
        return right == Ft(Ms.runit(A)) or "right unit law fails"

    def cell_assoc(X, Y, Z):
        tl = Ms.tensor_loose
        if lax:
            lhs = E.vcompose_all(Fc(Ms.assoc_cell(X, Y, Z)), pc(tl(X, Y), Z),
                                 Mt.tensor_cell(pc(X, Y), cid(Fl(Z))))
            rhs = E.vcompose_all(pc(X, tl(Y, Z)), Mt.tensor_cell(cid(Fl(X)), pc(Y, Z)),
                                 Mt.assoc_cell(Fl(X), Fl(Y), Fl(Z)))
        else:
            lhs = E.vcompose_all(Mt.assoc_cell(Fl(X), Fl(Y), Fl(Z)), Mt.tensor_cell(pc(X, Y), cid(Fl(Z))),
                                 pc(tl(X, Y), Z))
            rhs = E.vcompose_all(Mt.tensor_cell(cid(Fl(X)), pc(Y, Z)), pc(X, tl(Y, Z)),
                                 Fc(Ms.assoc_cell(X, Y, Z)))
        return eq(lhs, rhs)

    def cell_unit_laws(X):
        pu = Phi.phi_unit_cell
        if lax:
            left = E.vcompose_all(Fc(Ms.lunit_cell(X)), pc(Ci, X), Mt.tensor_cell(pu, cid(Fl(X))))
            right = E.vcompose_all(Fc(Ms.runit_cell(X)), pc(X, Ci), Mt.tensor_cell(cid(Fl(X)), pu))
            ok = eq(left, Mt.lunit_cell(Fl(X)))
            if ok is not True:
                return "left: " + ok
            ok = eq(right, Mt.runit_cell(Fl(X)))
            return ok if ok is True else "right: " + ok
        left = E.vcompose_all(Mt.lunit_cell(Fl(X)), Mt.tensor_cell(pu, cid(Fl(X))), pc(Ci, X))
        right = E.vcompose_all(Mt.runit_cell(Fl(X)), Mt.tensor_cell(cid(Fl(X)), pu), pc(X, Ci))
        ok = eq(left, Fc(Ms.lunit_cell(X)))
        if ok is not True:
            return "left: " + ok
        ok = eq(right, Fc(Ms.runit_cell(X)))
        return ok if ok is True else "right: " + ok

    def unit_cell_matches():
        pu = Phi.phi_unit
        if lax:
            expect = v(F.unit(Ti), E.unit_cell(pu))
        else:
            expect = v(E.unit_cell(pu), E.inverse(F.unit(Ti)))
        return eq(Phi.phi_unit_cell, expect)

    def phi_strict(X, Y):
        c = pc(X, Y)
        if lax:
            return _boundary(c, Mt.tensor_loose(Fl(X), Fl(Y)), Fl(Ms.tensor_loose(X, Y)),
                             phi(X.src, Y.src), phi(X.tgt, Y.tgt))
        return _boundary(c, Fl(Ms.tensor_loose(X, Y)), Mt.tensor_loose(Fl(X), Fl(Y)),
                         phi(X.src, Y.src), phi(X.tgt, Y.tgt))

    def phi_tight_natural(f, g):
        if lax:
            return (tcomp(Ft(Ms.tensor_tight(f, g)), phi(f.src, g.src))
                    == tcomp(phi(f.dst, g.dst), Mt.tensor_tight(Ft(f), Ft(g))))
        return (tcomp(Mt.tensor_tight(Ft(f), Ft(g)), phi(f.src, g.src))
                == tcomp(phi(f.dst, g.dst), Ft(Ms.tensor_tight(f, g))))

    def phi_cell_natural(a, b):
        if lax:
            return eq(v(Fc(Ms.tensor_cell(a, b)), pc(a.top, b.top)),
                      v(pc(a.bottom, b.bottom), Mt.tensor_cell(Fc(a), Fc(b))))
        return eq(v(Mt.tensor_cell(Fc(a), Fc(b)), pc(a.top, b.top)),
                  v(pc(a.bottom, b.bottom), Fc(Ms.tensor_cell(a, b))))

    def phi_interchange(X1, X2, Y1, Y2):
        c = D.loose_compose
        tl = Ms.tensor_loose
        if lax:
            lhs = E.vcompose_all(Fc(Ms.interchange(X2, Y2, X1, Y1)), F.comp(tl(X2, Y2), tl(X1, Y1)),
                                 h(pc(X2, Y2), pc(X1, Y1)))
            rhs = E.vcompose_all(pc(c(X2, X1), c(Y2, Y1)),
                                 Mt.tensor_cell(F.comp(X2, X1), F.comp(Y2, Y1)),
                                 Mt.interchange(Fl(X2), Fl(Y2), Fl(X1), Fl(Y1)))
        else:
            lhs = E.vcompose_all(Mt.interchange(Fl(X2), Fl(Y2), Fl(X1), Fl(Y1)), h(pc(X2, Y2), pc(X1, Y1)),
                                 E.inverse(F.comp(tl(X2, Y2), tl(X1, Y1))))
            rhs = E.vcompose_all(Mt.tensor_cell(E.inverse(F.comp(X2, X1)), E.inverse(F.comp(Y2, Y1))),
                                 pc(c(X2, X1), c(Y2, Y1)), Fc(Ms.interchange(X2, Y2, X1, Y1)))
        return eq(lhs, rhs)

    def phi_units(A, B):
        if lax:
            lhs = E.vcompose_all(Fc(Ms.unit_interchange(A, B)), F.unit(Ms.tensor(A, B)),
                                 E.unit_cell(phi(A, B)))
            rhs = E.vcompose_all(pc(D.unit(A), D.unit(B)), Mt.tensor_cell(F.unit(A), F.unit(B)),
                                 Mt.unit_interchange(Fo(A), Fo(B)))
        else:
            lhs = E.vcompose_all(Mt.unit_interchange(Fo(A), Fo(B)), E.unit_cell(phi(A, B)),
                                 E.inverse(F.unit(Ms.tensor(A, B))))
            rhs = E.vcompose_all(Mt.tensor_cell(E.inverse(F.unit(A)), E.inverse(F.unit(B))),
                                 pc(D.unit(A), D.unit(B)), Fc(Ms.unit_interchange(A, B)))
        return eq(lhs, rhs)

    L, T, C, O = U.loose, U.tight, U.cells, U.objects
    L2, T2, C2, O2 = V.loose, V.tight, V.cells, V.objects
    fams = [
        Family("comparison over the tensor", _prod(L, L2), phi_strict),
        Family("comparison natural on tight cells", _prod(T, T2), phi_tight_natural),
        Family("comparison natural on 2-cells", _prod(C, C2), phi_cell_natural),
        Family("tight associativity of the comparison", _prod(O, O2, O2), tight_assoc),
        Family("tight unit laws of the comparison", _over(O), tight_unit_laws),
        Family("cell associativity of the comparison", _prod(L, L2, L2), cell_assoc),
        Family("cell unit laws of the comparison", _over(L), cell_unit_laws),
        Family("unit comparison cell", lambda: iter([((), ())]), unit_cell_matches),
        Family("comparison respects interchange",
               _prod_chains((L, U.loose_pairs), (L2, V.loose_pairs)), phi_interchange),
        Family("comparison respects unit interchange", _prod(O, O2), phi_units),
    ]
    if Ms.braided and Mt.braided:
        def braid_tight(A, B):
            if lax:
                return (tcomp(Ft(Ms.braid(A, B)), phi(A, B))
                        == tcomp(phi(B, A), Mt.braid(Fo(A), Fo(B))))
            return (tcomp(Mt.braid(Fo(A), Fo(B)), phi(A, B))
                    == tcomp(phi(B, A), Ft(Ms.braid(A, B))))

        def braid_cell(X, Y):
            if lax:
                return eq(v(Fc(Ms.braid_cell(X, Y)), pc(X, Y)), v(pc(Y, X), Mt.braid_cell(Fl(X), Fl(Y))))
            return eq(v(Mt.braid_cell(Fl(X), Fl(Y)), pc(X, Y)), v(pc(Y, X), Fc(Ms.braid_cell(X, Y))))

        fams += [Family("comparison respects tight braiding", _prod(O, O2), braid_tight),
                 Family("comparison respects cell braiding", _prod(L, L2), braid_cell)]
    if Phi.laxity == "strong":
        def strong_obj(A, B):
            return E.tight_inverse(phi(A, B)) is not None or "tight comparison not invertible"

        def strong_cell(X, Y):
            return E.checked_inverse(pc(X, Y)) is not None or "comparison cell not invertible"

        def strong_unit():
            if E.tight_inverse(Phi.phi_unit) is None:
                return "unit comparison not invertible"
            return E.checked_inverse(Phi.phi_unit_cell) is not None or "unit comparison cell not invertible"

        fams += [Family("strong: tight comparison invertible", _prod(O, O2), strong_obj),
                 Family("strong: comparison cells invertible", _prod(L, L2), strong_cell),
                 Family("strong: unit comparison invertible", lambda: iter([((), ())]), strong_unit)]
    return fams


def check_monoidal_double_functor(Phi, U, partner=None):
    """The underlying double functor's laws, then the monoidal-functor laws."""
    report = Report()
    report.extend(check_double_functor(Phi.functor, U), prefix="functor: ")
    report.extend(run_families(monoidal_functor_families(Phi, U, partner)))
    return report


# ---------------------------------------------------------------------------
# Monoidal tight transformations


class MonoidalTightTransformation:
    def __init__(self, transformation, src, dst, name=None):
        if src.laxity == "colax" or dst.laxity == "colax":
            if src.laxity != dst.laxity:
                raise ValueError("source and target laxity differ")
        self.transformation = transformation
        self.src = src
        self.dst = dst
        self.name = name or transformation.name


def monoidal_transformation_families(mt, U, partner=None):
    V = partner or U
    alpha, Phi, Psi = mt.transformation, mt.src, mt.dst
    Ms, Mt = Phi.src, Phi.dst
    E = Mt.base
    tcomp, v = E.tight_compose, E.vcompose
    lax = Phi.laxity != "colax"

    def eq(lhs, rhs):
        return _same(E, lhs, rhs)

    def tight_tensor(A, B):
        if lax:
            return (tcomp(alpha.obj(Ms.tensor(A, B)), Phi.phi(A, B))
                    == tcomp(Psi.phi(A, B), Mt.tensor_tight(alpha.obj(A), alpha.obj(B))))
        return (tcomp(Psi.phi(A, B), alpha.obj(Ms.tensor(A, B)))
                == tcomp(Mt.tensor_tight(alpha.obj(A), alpha.obj(B)), Phi.phi(A, B)))

    def cell_tensor(X, Y):
        if lax:
            return eq(v(alpha.loose(Ms.tensor_loose(X, Y)), Phi.phi_cell(X, Y)),
                      v(Psi.phi_cell(X, Y), Mt.tensor_cell(alpha.loose(X), alpha.loose(Y))))
        return eq(v(Psi.phi_cell(X, Y), alpha.loose(Ms.tensor_loose(X, Y))),
                  v(Mt.tensor_cell(alpha.loose(X), alpha.loose(Y)), Phi.phi_cell(X, Y)))

    def units():
        I = Ms.unit_object
        if lax:
            if tcomp(alpha.obj(I), Phi.phi_unit) != Psi.phi_unit:
                return "tight unit equation fails"
            return eq(v(alpha.loose(Ms.unit_loose), Phi.phi_unit_cell), Psi.phi_unit_cell)
        if tcomp(Psi.phi_unit, alpha.obj(I)) != Phi.phi_unit:
            return "tight unit equation fails"
        return eq(v(Psi.phi_unit_cell, alpha.loose(Ms.unit_loose)), Phi.phi_unit_cell)

    return [
        Family("monoidal on objects", _prod(U.objects, V.objects), tight_tensor),
        Family("monoidal on loose cells", _prod(U.loose, V.loose), cell_tensor),
        Family("monoidal on units", lambda: iter([((), ())]), units),
    ]


def braiding_monoidal_transformation(M):
    """The braiding as a monoidal transformation from the tensor to the tensor after the swap."""
    Phi, Psi = tensor_monoidal_functor(M), tensor_monoidal_functor(M, swapped=True)
    alpha = TightTransformation(Phi.functor, Psi.functor, lambda AB: M.braid(*AB),
                                lambda X: M.braid_cell(*X.parts), name="braiding")
    return MonoidalTightTransformation(alpha, Phi, Psi)


def check_monoidal_tight_transformation(mt, U, partner=None):
    report = Report()
    report.extend(check_tight_transformation(mt.transformation, U), prefix="transformation: ")
    report.extend(run_families(monoidal_transformation_families(mt, U, partner)))
    return report
