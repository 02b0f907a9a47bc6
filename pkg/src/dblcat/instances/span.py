"""Spans of finite sets, with chosen pullbacks and the cartesian monoidal structure."""

from itertools import product

from ..dblcore import DoubleCategory, windowed_universe
from ..mondbl import MonoidalDoubleCategory
from ..errors import BoundaryMismatch
from ..finbase import (FinFunction, FinSet, all_functions, compose_functions,
                       ordinal, product_function, product_set, pullback)


class Span:
    """A span ``src <- apex -> tgt``."""

    __slots__ = ("apex", "left", "right", "src", "tgt", "_h")

    def __init__(self, apex, left, right):
        if left.dom != apex or right.dom != apex:
            raise BoundaryMismatch("span legs must start at the apex")
        self.apex = apex
        self.left = left
        self.right = right
        self.src = left.cod
        self.tgt = right.cod
        self._h = hash((left, right))

    def __eq__(self, other):
        return (self is other or isinstance(other, Span) and self._h == other._h
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"Span({self.src}<-{self.apex}->{self.tgt}: {self.left.table}|{self.right.table})"


class SpanCell:
    """A map of spans: an apex function commuting with the legs over (left, right)."""

    __slots__ = ("top", "bottom", "left", "right", "map", "_h")

    def __init__(self, top, bottom, left, right, map):
        self.top = top
        self.bottom = bottom
        self.left = left
        self.right = right
        self.map = map
        self._h = hash((top, bottom, left, right, map.table))

    def __eq__(self, other):
        return (self is other or isinstance(other, SpanCell) and self._h == other._h
                and self.map.table == other.map.table and self.top == other.top
                and self.bottom == other.bottom and self.left == other.left
                and self.right == other.right)

    def __hash__(self):
        return self._h

    def is_valid(self):
        t, b = self.top, self.bottom
        return (compose_functions(b.left, self.map) == compose_functions(self.left, t.left)
                and compose_functions(b.right, self.map) == compose_functions(self.right, t.right))

    def __repr__(self):
        return f"SpanCell({self.map.table} over {self.left.table},{self.right.table})"


def span(A, B, pairs):
    """Span from A to B whose apex is ``0..n-1`` with the given leg values (as labels)."""
    apex = ordinal(len(pairs))
    left = FinFunction(apex, A, [A.index(a) for a, _ in pairs])
    right = FinFunction(apex, B, [B.index(b) for _, b in pairs])
    return Span(apex, left, right)


def graph_span(f):
    """The companion span ``A <- A -> B`` with legs (1, f)."""
    return Span(f.dom, FinFunction.identity(f.dom), f)


def cograph_span(f):
    """The conjoint span ``B <- A -> A`` with legs (f, 1)."""
    return Span(f.dom, f, FinFunction.identity(f.dom))


def relabel_span(M, labels):
    """The same span with its apex relabelled by ``labels`` (new label per element, in order)."""
    apex = FinSet(labels)
    return Span(apex, FinFunction(apex, M.src, M.left.table), FinFunction(apex, M.tgt, M.right.table))


class SpanDouble(DoubleCategory):
    """Span(FinSet): objects finite sets, tight functions, loose spans, maps of spans."""

    def __init__(self, name="Span"):
        self.name = name
        self._units = {}
        self._comp = {}

    def _tight_id(self, A):
        return FinFunction.identity(A)

    def _tight_compose(self, g, f):
        return compose_functions(g, f)

    def tight_inverse(self, f):
        return f.inverse()

    def _unit(self, A):
        U = self._units.get(A)
        if U is None:
            i = FinFunction.identity(A)
            U = self._units[A] = Span(A, i, i)
        return U

    def _unit_cell(self, f):
        return SpanCell(self._unit(f.dom), self._unit(f.cod), f, f, f)

    def _loose_compose(self, N, M):
        key = (N, M)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        apex, p, q = pullback(M.right, N.left)
        res = Span(apex, compose_functions(M.left, p), compose_functions(N.right, q))
        if len(self._comp) > 200000:
            self._comp.clear()
        self._comp[key] = res
        return res

    def _cell_id(self, M):
        i = FinFunction.identity(M.tgt)
        return SpanCell(M, M, FinFunction.identity(M.src), i, FinFunction.identity(M.apex))

    def _vcompose(self, b, a):
        return SpanCell(a.top, b.bottom, compose_functions(b.left, a.left),
                        compose_functions(b.right, a.right), compose_functions(b.map, a.map))

    def _hcompose(self, b, a):
        top = self.loose_compose(b.top, a.top)
        bottom = self.loose_compose(b.bottom, a.bottom)
        am, bm = a.map, b.map
        idx = bottom.apex.index
        table = [idx((am(x), bm(y))) for x, y in top.apex]
        return SpanCell(top, bottom, a.left, b.right, FinFunction(top.apex, bottom.apex, table))

    def _assoc(self, P, N, M):
        top = self.loose_compose(self.loose_compose(P, N), M)
        bottom = self.loose_compose(P, self.loose_compose(N, M))
        idx = bottom.apex.index
        table = [idx(((x, y), z)) for x, (y, z) in top.apex]
        return SpanCell(top, bottom, FinFunction.identity(M.src), FinFunction.identity(P.tgt),
                        FinFunction(top.apex, bottom.apex, table))

    def _lunitor(self, M):
        top = self.loose_compose(self._unit(M.tgt), M)
        idx = M.apex.index
        table = [idx(x) for x, _ in top.apex]
        return SpanCell(top, M, FinFunction.identity(M.src), FinFunction.identity(M.tgt),
                        FinFunction(top.apex, M.apex, table))

    def _runitor(self, M):
        top = self.loose_compose(M, self._unit(M.src))
        idx = M.apex.index
        table = [idx(x) for _, x in top.apex]
        return SpanCell(top, M, FinFunction.identity(M.src), FinFunction.identity(M.tgt),
                        FinFunction(top.apex, M.apex, table))

    def inverse(self, cell):
        m, f, g = cell.map.inverse(), cell.left.inverse(), cell.right.inverse()
        if m is None or f is None or g is None:
            return None
        return SpanCell(cell.bottom, cell.top, f, g, m)

    def cells_between(self, M, N, f, g):
        return list(self.iter_cells_between(M, N, f, g))

    def iter_cells_between(self, M, N, f, g):
        """Lazily enumerate the apex maps M => N over (f, g)."""
        if f.dom != M.src or g.dom != M.tgt or f.cod != N.src or g.cod != N.tgt:
            raise BoundaryMismatch("2-cell boundary does not match the loose cells")
        by_ends = {}
        for j in range(len(N.apex)):
            by_ends.setdefault((N.left.table[j], N.right.table[j]), []).append(j)
        options = []
        for i in range(len(M.apex)):
            want = (f.table[M.left.table[i]], g.table[M.right.table[i]])
            opts = by_ends.get(want)
            if not opts:
                return
            options.append(opts)
        for t in product(*options):
            yield SpanCell(M, N, f, g, FinFunction(M.apex, N.apex, t))

    def loose_between(self, A, B, limit=None, max_apex=1):
        """All spans with apex 0..n-1 for n up to ``max_apex``, in a fixed order."""
        out = []
        pairs = [(a, b) for a in A for b in B]
        for n in range(max_apex + 1):
            for choice in product(pairs, repeat=n):
                out.append(span(A, B, list(choice)))
                if limit is not None and len(out) >= limit:
                    return out
        return out


def span_objects(size_bound, alphabet=None):
    """The sets of the first n labels of ``alphabet`` (default 0, 1, 2, ...), n <= size_bound."""
    if alphabet is None:
        return [ordinal(n) for n in range(size_bound + 1)]
    alphabet = list(alphabet)
    if len(alphabet) < size_bound:
        raise ValueError(f"alphabet of {len(alphabet)} labels is shorter than size bound {size_bound}")
    return [FinSet(alphabet[:n]) for n in range(size_bound + 1)]


def span_loose_sample(D, A, B, apex_bound=1, limit=None):
    """Deterministic sample of spans A -|-> B.

    Order of preference: the unit (when A = B), a doubled span with a
    nontrivial automorphism (when A, B are nonempty), the graph span of the
    first non-identity function A -> B, then all spans with apex of size up
    to ``apex_bound``.  ``limit`` truncates the list.
    """
    seen = []

    def add(M):
        if M not in seen:
            seen.append(M)

    if A == B:
        add(D.unit(A))
    if len(A) and len(B):
        a, b = A[0], B[len(B) - 1]
        add(span(A, B, [(a, b), (a, b)]))
        for f in all_functions(A, B):
            if not (A == B and f == FinFunction.identity(A)):
                add(graph_span(f))
                break
    for M in D.loose_between(A, B, max_apex=apex_bound):
        add(M)
    return seen if limit is None else seen[:limit]


def span_universe(D, size_bound, apex_bound=1, loose_per_hom=None, cell_size_bound=None,
                  tight_for_cells="all", max_cells_per_boundary=4, max_cells=None, alphabet=None):
    """A finite window onto Span.

    Objects are {}, {0}, ..., {0..size_bound-1}; tight cells are all functions
    between them; loose cells come from :func:`span_loose_sample`.
    """
    objects = span_objects(size_bound, alphabet)
    tight = [f for A in objects for B in objects for f in all_functions(A, B)]
    loose = [M for A in objects for B in objects
             for M in span_loose_sample(D, A, B, apex_bound, loose_per_hom)]
    return windowed_universe(D, objects, tight, loose, cell_size_bound, tight_for_cells,
                             max_cells_per_boundary, max_cells)


# ---------------------------------------------------------------------------
# Cartesian monoidal structure


def tensor_loose(M, N):
    apex = product_set(M.apex, N.apex)
    return Span(apex, product_function(M.left, N.left), product_function(M.right, N.right))


def tensor_cell(a, b):
    return SpanCell(tensor_loose(a.top, b.top), tensor_loose(a.bottom, b.bottom),
                    product_function(a.left, b.left), product_function(a.right, b.right),
                    product_function(a.map, b.map))


class SpanMonoidal(MonoidalDoubleCategory):
    """Span(FinSet) with the cartesian product; symmetric via the swap."""

    braided = True
    symmetric = True

    def __init__(self, size_bound, alphabet=None):
        objects = span_objects(size_bound, alphabet)
        unit_label = objects[1][0] if len(objects) > 1 else 0
        super().__init__(SpanDouble(), FinSet([unit_label]))
        self.size_bound = size_bound
        self.alphabet = alphabet
        self.objects = objects
        self.name = f"Span({size_bound})"
        self._tights = {}
        self._tensors = {}

    def universe(self, **kw):
        return span_universe(self.base, self.size_bound, alphabet=self.alphabet, **kw)

    def _map(self, key, dom, cod, fn):
        hit = self._tights.get(key)
        if hit is None:
            hit = self._tights[key] = FinFunction.from_labels(dom, cod, fn)
        return hit

    def _apex_cell(self, top, bottom, left, right, fn):
        return SpanCell(top, bottom, left, right, FinFunction.from_labels(top.apex, bottom.apex, fn))

    def tensor(self, A, B):
        return product_set(A, B)

    def tensor_tight(self, f, g):
        return product_function(f, g)

    def tensor_loose(self, M, N):
        hit = self._tensors.get((M, N))
        if hit is None:
            if len(self._tensors) > 100000:
                self._tensors.clear()
            hit = self._tensors[(M, N)] = tensor_loose(M, N)
        return hit

    def tensor_cell(self, a, b):
        tl = self.tensor_loose
        return SpanCell(tl(a.top, b.top), tl(a.bottom, b.bottom), product_function(a.left, b.left),
                        product_function(a.right, b.right), product_function(a.map, b.map))

    def interchange(self, M2, N2, M1, N1):
        D = self.base
        top = D.loose_compose(self.tensor_loose(M2, N2), self.tensor_loose(M1, N1))
        bottom = self.tensor_loose(D.loose_compose(M2, M1), D.loose_compose(N2, N1))
        ident = FinFunction.identity
        return self._apex_cell(top, bottom, ident(top.src), ident(top.tgt),
                               lambda p: ((p[0][0], p[1][0]), (p[0][1], p[1][1])))

    def unit_interchange(self, A, B):
        U = self.base.unit(product_set(A, B))
        return self.base.cell_id(U)

    def assoc(self, A, B, C):
        return self._map(("a", A, B, C), product_set(product_set(A, B), C),
                         product_set(A, product_set(B, C)), lambda x: (x[0][0], (x[0][1], x[1])))

    def assoc_cell(self, M, N, P):
        top = self.tensor_loose(self.tensor_loose(M, N), P)
        bottom = self.tensor_loose(M, self.tensor_loose(N, P))
        return self._apex_cell(top, bottom, self.assoc(M.src, N.src, P.src),
                               self.assoc(M.tgt, N.tgt, P.tgt), lambda x: (x[0][0], (x[0][1], x[1])))

    def lunit(self, A):
        return self._map(("l", A), product_set(self.unit_object, A), A, lambda x: x[1])

    def lunit_cell(self, M):
        top = self.tensor_loose(self.unit_loose, M)
        return self._apex_cell(top, M, self.lunit(M.src), self.lunit(M.tgt), lambda x: x[1])

    def runit(self, A):
        return self._map(("r", A), product_set(A, self.unit_object), A, lambda x: x[0])

    def runit_cell(self, M):
        top = self.tensor_loose(M, self.unit_loose)
        return self._apex_cell(top, M, self.runit(M.src), self.runit(M.tgt), lambda x: x[0])

    def braid(self, A, B):
        return self._map(("s", A, B), product_set(A, B), product_set(B, A), lambda x: (x[1], x[0]))

    def braid_cell(self, M, N):
        return self._apex_cell(self.tensor_loose(M, N), self.tensor_loose(N, M), self.braid(M.src, N.src),
                               self.braid(M.tgt, N.tgt), lambda x: (x[1], x[0]))


def span_finset(size_bound, label_alphabet=None):
    """The symmetric monoidal double category of spans, windowed at ``size_bound``."""
    if size_bound < 0:
        raise ValueError("size bound must be non-negative")
    return SpanMonoidal(size_bound, label_alphabet)


# ---------------------------------------------------------------------------
# Companions


def graph_companion(D, f):
    """The graph span of f with the identity and f as binding maps."""
    from ..companion import CompanionPair
    G = graph_span(f)
    A, B = f.dom, f.cod
    eta = SpanCell(D.unit(A), G, FinFunction.identity(A), f, FinFunction.identity(A))
    eps = SpanCell(G, D.unit(B), f, FinFunction.identity(B), f)
    return CompanionPair(f, G, eta, eps)


def cograph_conjoint(D, f):
    """The reversed graph span of f as a conjoint."""
    from ..companion import ConjointPair
    G = cograph_span(f)
    A, B = f.dom, f.cod
    eta = SpanCell(D.unit(A), G, f, FinFunction.identity(A), FinFunction.identity(A))
    eps = SpanCell(G, D.unit(B), FinFunction.identity(B), f, f)
    return ConjointPair(f, G, eta, eps)


def graph_choice(D):
    from ..companion import CompanionChoice
    choice = CompanionChoice(D, lambda f: graph_companion(D, f), name="graph spans")
    choice.conjoint_rule = lambda f: cograph_conjoint(D, f)
    return choice


def relabelled_choice(D, tag="'"):
    """Graph spans transported to an apex relabelled (a -> (tag, a)) in reverse order.

    A second, genuinely different choice of companions: theta between the
    two is the relabelling bijection, not an identity."""
    from ..companion import CompanionChoice, transport_companion

    def rule(f):
        p = graph_companion(D, f)
        G = p.fhat
        n = len(G.apex)
        order = list(reversed(range(n)))
        apex = FinSet((tag, G.apex[i]) for i in order)
        M = Span(apex, FinFunction(apex, G.src, [G.left.table[i] for i in order]),
                 FinFunction(apex, G.tgt, [G.right.table[i] for i in order]))
        iso = SpanCell(G, M, FinFunction.identity(G.src), FinFunction.identity(G.tgt),
                       FinFunction(G.apex, apex, [n - 1 - i for i in range(n)]))
        return transport_companion(D, p, iso)

    return CompanionChoice(D, rule, name=f"relabelled graph spans{tag}")


def companion_window(D, size_bound, alphabet=None):
    """Every span between the window's sets whose apex is {0..k-1} with k <= size_bound,
    together with the functions; enough to contain every companion up to relabelling."""
    from ..dblcore import Universe
    objects = span_objects(size_bound, alphabet)
    tight = [f for A in objects for B in objects for f in all_functions(A, B)]
    loose = [M for A in objects for B in objects for M in D.loose_between(A, B, max_apex=size_bound)]
    return Universe(objects, tight, loose, [], size_bound)
