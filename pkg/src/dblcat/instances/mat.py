"""Matrices valued in a finite quantale.

Loose cells are Q-valued matrices, 2-cells are pointwise inequalities, so
between any boundary there is at most one 2-cell.  Constraint cells are
identities because matrix multiplication in a quantale is strictly
associative and unital.
"""

from itertools import combinations, product

from ..dblcore import DoubleCategory, stride_sample, windowed_universe
from ..errors import BoundaryMismatch, NotCommutative
from ..finbase import (FinFunction, FinSet, all_functions, compose_functions, ordinal,
                       product_function, product_set)
from ..mondbl import MonoidalDoubleCategory


class Quantale:
    """A finite quantale given by its order, binary join and multiplication.

    ``leq(x, y)``, ``join(x, y)`` and ``mult(x, y)`` are over labels of
    ``carrier``; ``bottom`` and ``unit`` are labels.  Laws are checked on
    construction.
    """

    def __init__(self, carrier, leq, join, mult, bottom, unit, name="Q"):
        self.name = name
        self.carrier = FinSet(carrier)
        els = list(self.carrier)
        self._leq = {(x, y): bool(leq(x, y)) for x in els for y in els}
        self._join = {(x, y): join(x, y) for x in els for y in els}
        self._mult = {(x, y): mult(x, y) for x in els for y in els}
        self.bottom = bottom
        self.unit = unit
        problems = self.law_violations()
        if problems:
            raise ValueError(f"{name} is not a quantale: {problems[0]}")
        self.commutative = all(self._mult[x, y] == self._mult[y, x] for x in els for y in els)

    def leq(self, x, y):
        return self._leq[x, y]

    def join(self, x, y):
        return self._join[x, y]

    def mult(self, x, y):
        return self._mult[x, y]

    def join_all(self, xs):
        out = self.bottom
        for x in xs:
            out = self._join[out, x]
        return out

    def law_violations(self):
        els = list(self.carrier)
        leq, join, mult = self._leq, self._join, self._mult
        bad = []
        for x in els:
            if not leq[x, x]:
                bad.append(f"order not reflexive at {x!r}")
            if not leq[self.bottom, x]:
                bad.append(f"bottom not below {x!r}")
            if mult[self.unit, x] != x or mult[x, self.unit] != x:
                bad.append(f"unit law fails at {x!r}")
            if mult[self.bottom, x] != self.bottom or mult[x, self.bottom] != self.bottom:
                bad.append(f"bottom not absorbing at {x!r}")
        for x, y in product(els, repeat=2):
            if x != y and leq[x, y] and leq[y, x]:
                bad.append(f"order not antisymmetric at {x!r}, {y!r}")
            j = join[x, y]
            if not (leq[x, j] and leq[y, j]) or any(
                    leq[x, z] and leq[y, z] and not leq[j, z] for z in els):
                bad.append(f"{j!r} is not the join of {x!r}, {y!r}")
        for x, y, z in product(els, repeat=3):
            if leq[x, y] and leq[y, z] and not leq[x, z]:
                bad.append(f"order not transitive at {x!r}, {y!r}, {z!r}")
            if mult[mult[x, y], z] != mult[x, mult[y, z]]:
                bad.append(f"multiplication not associative at {x!r}, {y!r}, {z!r}")
            if mult[x, join[y, z]] != join[mult[x, y], mult[x, z]]:
                bad.append(f"left distributivity fails at {x!r}, {y!r}, {z!r}")
            if mult[join[y, z], x] != join[mult[y, x], mult[z, x]]:
                bad.append(f"right distributivity fails at {x!r}, {y!r}, {z!r}")
        return bad

    def __repr__(self):
        return f"Quantale({self.name}, {len(self.carrier)} elements)"


def boolean_quantale():
    return Quantale([0, 1], lambda x, y: x <= y, max, min, 0, 1, name="Bool")


def chain_quantale(n):
    """The chain 0 < 1 < ... < n-1 with multiplication = meet."""
    top = n - 1
    return Quantale(range(n), lambda x, y: x <= y, max, min, 0, top, name=f"Chain{n}")


def powerset_quantale(elements, mult, unit, name="P(M)"):
    """Subsets of a finite monoid under union, with the pointwise product."""
    elements = list(elements)
    subsets = [frozenset(s) for n in range(len(elements) + 1)
               for s in combinations(elements, n)]
    return Quantale(
        subsets, lambda x, y: x <= y, lambda x, y: x | y,
        lambda x, y: frozenset(mult(a, b) for a in x for b in y),
        frozenset(), frozenset([unit]), name=name)


def left_zero_quantale():
    """Powerset of the monoid {e, x, y} with xy = x, yx = y: not commutative."""
    def mult(a, b):
        if a == "e":
            return b
        return a
    return powerset_quantale(["e", "x", "y"], mult, "e", name="P(LZ)")


class Matrix:
    """A Q-valued matrix ``src -|-> tgt``; ``rows[i][j]`` is the entry at (src[i], tgt[j])."""

    __slots__ = ("src", "tgt", "rows", "_h")

    def __init__(self, src, tgt, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != len(src) or any(len(r) != len(tgt) for r in rows):
            raise BoundaryMismatch(f"matrix shape does not match {src} x {tgt}")
        self.src = src
        self.tgt = tgt
        self.rows = rows
        self._h = hash((src, tgt, rows))

    def entry(self, a, b):
        return self.rows[self.src.index(a)][self.tgt.index(b)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self._h == other._h and self.rows == other.rows
                and self.src == other.src and self.tgt == other.tgt)

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"Matrix({self.src}->{self.tgt}: {self.rows})"


class MatCell:
    """The unique 2-cell ``top => bottom`` over (left, right), when it exists."""

    __slots__ = ("top", "bottom", "left", "right", "_h")

    def __init__(self, top, bottom, left, right):
        self.top = top
        self.bottom = bottom
        self.left = left
        self.right = right
        self._h = hash((top, bottom, left, right))

    def __eq__(self, other):
        return (isinstance(other, MatCell) and self._h == other._h and self.top == other.top
                and self.bottom == other.bottom and self.left == other.left
                and self.right == other.right)

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"MatCell({self.top.rows} <= {self.bottom.rows} over {self.left.table},{self.right.table})"


class MatDouble(DoubleCategory):
    """Mat(Q): finite sets, functions, Q-matrices and pointwise inequalities."""

    def __init__(self, Q, name=None):
        self.Q = Q
        self.name = name or f"Mat({Q.name})"

    def holds(self, M, N, f, g):
        """Whether M[a][b] <= N[f a][g b] everywhere."""
        Q = self.Q
        for i, row in enumerate(M.rows):
            nrow = N.rows[f.table[i]]
            for j, x in enumerate(row):
                if not Q.leq(x, nrow[g.table[j]]):
                    return False
        return True

    def cell(self, M, N, f, g):
        """The 2-cell M => N over (f, g); BoundaryMismatch if the inequality fails."""
        if f.dom != M.src or g.dom != M.tgt or f.cod != N.src or g.cod != N.tgt:
            raise BoundaryMismatch("2-cell boundary does not match the matrices")
        if not self.holds(M, N, f, g):
            raise BoundaryMismatch(f"no 2-cell {M!r} => {N!r}: inequality fails")
        return MatCell(M, N, f, g)

    def _tight_id(self, A):
        return FinFunction.identity(A)

    def _tight_compose(self, g, f):
        return compose_functions(g, f)

    def tight_inverse(self, f):
        return f.inverse()

    def _unit(self, A):
        Q = self.Q
        n = len(A)
        return Matrix(A, A, [[Q.unit if i == j else Q.bottom for j in range(n)] for i in range(n)])

    def _unit_cell(self, f):
        return MatCell(self._unit(f.dom), self._unit(f.cod), f, f)

    def _loose_compose(self, N, M):
        Q = self.Q
        rows = []
        for row in M.rows:
            out = []
            for c in range(len(N.tgt)):
                acc = Q.bottom
                for b, x in enumerate(row):
                    acc = Q.join(acc, Q.mult(x, N.rows[b][c]))
                out.append(acc)
            rows.append(out)
        return Matrix(M.src, N.tgt, rows)

    def _cell_id(self, M):
        return MatCell(M, M, FinFunction.identity(M.src), FinFunction.identity(M.tgt))

    def _vcompose(self, b, a):
        return MatCell(a.top, b.bottom, compose_functions(b.left, a.left),
                       compose_functions(b.right, a.right))

    def _hcompose(self, b, a):
        return MatCell(self.loose_compose(b.top, a.top), self.loose_compose(b.bottom, a.bottom),
                       a.left, b.right)

    def _assoc(self, P, N, M):
        top = self.loose_compose(self.loose_compose(P, N), M)
        bottom = self.loose_compose(P, self.loose_compose(N, M))
        return MatCell(top, bottom, FinFunction.identity(M.src), FinFunction.identity(P.tgt))

    def _lunitor(self, M):
        top = self.loose_compose(self._unit(M.tgt), M)
        return MatCell(top, M, FinFunction.identity(M.src), FinFunction.identity(M.tgt))

    def _runitor(self, M):
        top = self.loose_compose(M, self._unit(M.src))
        return MatCell(top, M, FinFunction.identity(M.src), FinFunction.identity(M.tgt))

    def inverse(self, cell):
        f, g = cell.left.inverse(), cell.right.inverse()
        if f is None or g is None or not self.holds(cell.bottom, cell.top, f, g):
            return None
        return MatCell(cell.bottom, cell.top, f, g)

    def is_valid(self, cell):
        return self.holds(cell.top, cell.bottom, cell.left, cell.right)

    def cells_between(self, M, N, f, g):
        if f.dom != M.src or g.dom != M.tgt or f.cod != N.src or g.cod != N.tgt:
            raise BoundaryMismatch("2-cell boundary does not match the matrices")
        return [MatCell(M, N, f, g)] if self.holds(M, N, f, g) else []

    def loose_between(self, A, B, limit=None):
        """Every Q-matrix A -|-> B in a fixed order."""
        els = list(self.Q.carrier)
        out = []
        for flat in product(els, repeat=len(A) * len(B)):
            rows = [flat[i * len(B):(i + 1) * len(B)] for i in range(len(A))]
            out.append(Matrix(A, B, rows))
            if limit is not None and len(out) >= limit:
                break
        return out

    # companions and conjoints are characteristic matrices
    def graph_matrix(self, f):
        Q = self.Q
        return Matrix(f.dom, f.cod, [[Q.unit if f.table[i] == j else Q.bottom
                                      for j in range(len(f.cod))] for i in range(len(f.dom))])

    def cograph_matrix(self, f):
        Q = self.Q
        return Matrix(f.cod, f.dom, [[Q.unit if f.table[j] == i else Q.bottom
                                      for j in range(len(f.dom))] for i in range(len(f.cod))])


def mat_objects(size_bound):
    return [ordinal(n) for n in range(size_bound + 1)]


def mat_universe(D, size_bound, loose_per_hom=None, cell_size_bound=None, tight_for_cells="all",
                 max_cells=None):
    """Functions and (up to ``loose_per_hom``, evenly spaced) matrices between {0..n-1}, n <= size_bound.

    Each endo-hom keeps the unit matrix."""
    objects = mat_objects(size_bound)
    tight = [f for A in objects for B in objects for f in all_functions(A, B)]
    loose = []
    for A in objects:
        for B in objects:
            found = stride_sample(D.loose_between(A, B), loose_per_hom)
            if A == B and D.unit(A) not in found:
                found[-1] = D.unit(A)
            loose.extend(found)
    return windowed_universe(D, objects, tight, loose, cell_size_bound, tight_for_cells,
                             None, max_cells)


def require_commutative(Q):
    if not Q.commutative:
        raise NotCommutative(f"{Q.name} is not commutative; Mat({Q.name}) has no tensor interchange")
    return Q


class MatMonoidal(MonoidalDoubleCategory):
    """Mat(Q) for commutative Q, tensored by the Kronecker product."""

    braided = True
    symmetric = True

    def __init__(self, Q, size_bound):
        require_commutative(Q)
        super().__init__(MatDouble(Q), ordinal(1))
        self.Q = Q
        self.size_bound = size_bound
        self.objects = mat_objects(size_bound)
        self.name = f"Mat({Q.name}, {size_bound})"
        self._tights = {}

    def universe(self, **kw):
        return mat_universe(self.base, self.size_bound, **kw)

    def _map(self, key, dom, cod, fn):
        hit = self._tights.get(key)
        if hit is None:
            hit = self._tights[key] = FinFunction.from_labels(dom, cod, fn)
        return hit

    def tensor(self, A, B):
        return product_set(A, B)

    def tensor_tight(self, f, g):
        return product_function(f, g)

    def tensor_loose(self, M, N):
        mult = self.Q.mult
        # rows indexed by (a, c), columns by (b, d), both in product order
        rows = [[mult(mrow[b], nrow[d]) for b in range(len(M.tgt)) for d in range(len(N.tgt))]
                for mrow in M.rows for nrow in N.rows]
        return Matrix(product_set(M.src, N.src), product_set(M.tgt, N.tgt), rows)

    def tensor_cell(self, a, b):
        return MatCell(self.tensor_loose(a.top, b.top), self.tensor_loose(a.bottom, b.bottom),
                       product_function(a.left, b.left), product_function(a.right, b.right))

    def interchange(self, M2, N2, M1, N1):
        D = self.base
        top = D.loose_compose(self.tensor_loose(M2, N2), self.tensor_loose(M1, N1))
        bottom = self.tensor_loose(D.loose_compose(M2, M1), D.loose_compose(N2, N1))
        return D.cell(top, bottom, FinFunction.identity(top.src), FinFunction.identity(top.tgt))

    def unit_interchange(self, A, B):
        D = self.base
        top = D.unit(product_set(A, B))
        bottom = self.tensor_loose(D.unit(A), D.unit(B))
        return D.cell(top, bottom, FinFunction.identity(top.src), FinFunction.identity(top.tgt))

    def assoc(self, A, B, C):
        return self._map(("a", A, B, C), product_set(product_set(A, B), C),
                         product_set(A, product_set(B, C)), lambda x: (x[0][0], (x[0][1], x[1])))

    def assoc_cell(self, M, N, P):
        tl = self.tensor_loose
        return self.base.cell(tl(tl(M, N), P), tl(M, tl(N, P)), self.assoc(M.src, N.src, P.src),
                              self.assoc(M.tgt, N.tgt, P.tgt))

    def lunit(self, A):
        return self._map(("l", A), product_set(self.unit_object, A), A, lambda x: x[1])

    def lunit_cell(self, M):
        return self.base.cell(self.tensor_loose(self.unit_loose, M), M, self.lunit(M.src), self.lunit(M.tgt))

    def runit(self, A):
        return self._map(("r", A), product_set(A, self.unit_object), A, lambda x: x[0])

    def runit_cell(self, M):
        return self.base.cell(self.tensor_loose(M, self.unit_loose), M, self.runit(M.src), self.runit(M.tgt))

    def braid(self, A, B):
        return self._map(("s", A, B), product_set(A, B), product_set(B, A), lambda x: (x[1], x[0]))

    def braid_cell(self, M, N):
        return self.base.cell(self.tensor_loose(M, N), self.tensor_loose(N, M),
                              self.braid(M.src, N.src), self.braid(M.tgt, N.tgt))


def mat_quantale(Q, size_bound):
    """The symmetric monoidal double category of Q-matrices; Q must be commutative."""
    if size_bound < 0:
        raise ValueError("size bound must be non-negative")
    return MatMonoidal(Q, size_bound)


def char_companion(D, f):
    """The characteristic matrix of f as its companion."""
    from ..companion import CompanionPair
    G = D.graph_matrix(f)
    A, B = f.dom, f.cod
    return CompanionPair(f, G, D.cell(D.unit(A), G, FinFunction.identity(A), f),
                         D.cell(G, D.unit(B), f, FinFunction.identity(B)))


def char_conjoint(D, f):
    from ..companion import ConjointPair
    G = D.cograph_matrix(f)
    A, B = f.dom, f.cod
    return ConjointPair(f, G, D.cell(D.unit(A), G, f, FinFunction.identity(A)),
                        D.cell(G, D.unit(B), FinFunction.identity(B), f))


def char_choice(D):
    from ..companion import CompanionChoice
    choice = CompanionChoice(D, lambda f: char_companion(D, f), name="characteristic matrices")
    choice.conjoint_rule = lambda f: char_conjoint(D, f)
    return choice
