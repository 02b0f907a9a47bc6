"""Finite sets, functions, finite categories, chosen pullbacks and coequalizers."""

from functools import lru_cache
from itertools import product

from .errors import BoundaryMismatch, DuplicateLabel
from .report import Family, run_families


class FinSet:
    """An ordered finite set of hashable labels; equality is list equality."""

    __slots__ = ("elements", "_index", "_hash")

    def __init__(self, elements=()):
        elements = tuple(elements)
        index = {}
        for i, x in enumerate(elements):
            if x in index:
                raise DuplicateLabel(f"duplicate label {x!r}")
            index[x] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hash", hash(("FinSet", elements)))

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x):
        return self._index[x]

    def __eq__(self, other):
        return self is other or (isinstance(other, FinSet) and self._hash == other._hash
                                 and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "{" + ",".join(_label_str(x) for x in self.elements) + "}"

    def __reduce__(self):
        return (FinSet, (self.elements,))


def _label_str(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_label_str(y) for y in x) + ")"
    return str(x)


def canonical_finset(labels):
    return FinSet(labels)


def ordinal(n):
    """The set {0, ..., n-1}."""
    return FinSet(range(n))


class FinFunction:
    """A total function between FinSets, stored as a tuple of codomain indices."""

    __slots__ = ("dom", "cod", "table", "_hash")

    def __init__(self, dom, cod, table):
        table = tuple(table)
        if len(table) != len(dom):
            raise BoundaryMismatch(f"table of length {len(table)} on domain of size {len(dom)}")
        n = len(cod)
        if table and (min(table) < 0 or max(table) >= n):
            bad = next(t for t in table if not 0 <= t < n)
            raise BoundaryMismatch(f"table entry {bad} outside codomain of size {n}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_hash", hash((dom, cod, table)))

    def __setattr__(self, name, value):
        raise AttributeError("FinFunction is immutable")

    @classmethod
    def from_labels(cls, dom, cod, mapping):
        """Build from a label-to-label mapping (dict or callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return cls(dom, cod, [cod.index(f(x)) for x in dom])

    @classmethod
    def identity(cls, A):
        return _identity(A)

    @property
    def src(self):
        return self.dom

    @property
    def dst(self):
        return self.cod

    def __call__(self, x):
        return self.cod[self.table[self.dom.index(x)]]

    def at(self, i):
        return self.table[i]

    def __eq__(self, other):
        return self is other or (isinstance(other, FinFunction) and self._hash == other._hash
                                 and self.table == other.table and self.dom == other.dom
                                 and self.cod == other.cod)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        pairs = ",".join(f"{_label_str(x)}>{_label_str(self.cod[t])}" for x, t in zip(self.dom, self.table))
        return f"[{pairs}]"

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_bijective(self):
        return self.is_injective() and len(self.dom) == len(self.cod)

    def inverse(self):
        if not self.is_bijective():
            return None
        inv = [0] * len(self.table)
        for i, t in enumerate(self.table):
            inv[t] = i
        return FinFunction(self.cod, self.dom, inv)


@lru_cache(maxsize=4096)
def _identity(A):
    return FinFunction(A, A, range(len(A)))


def compose_functions(g, f):
    """g after f."""
    if f.cod != g.dom:
        raise BoundaryMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    gt = g.table
    return FinFunction(f.dom, g.cod, [gt[i] for i in f.table])


def all_functions(A, B):
    for table in product(range(len(B)), repeat=len(A)):
        yield FinFunction(A, B, table)


@lru_cache(maxsize=8192)
def product_set(A, B):
    return FinSet((a, b) for a in A for b in B)


@lru_cache(maxsize=65536)
def product_function(f, g):
    n = len(g.cod)
    table = [f.table[i] * n + g.table[j] for i in range(len(f.dom)) for j in range(len(g.dom))]
    return FinFunction(product_set(f.dom, g.dom), product_set(f.cod, g.cod), table)


def pullback(f, g):
    """Chosen pullback of ``f: X -> Z`` and ``g: Y -> Z``.

    The apex lists the agreeing pairs ``(x, y)`` ordered by (index of x,
    index of y); ``p`` and ``q`` are the projections.
    """
    if f.cod != g.cod:
        raise BoundaryMismatch(f"pullback of maps into {f.cod} and {g.cod}")
    X, Y = f.dom, g.dom
    by_z = {}
    for j, z in enumerate(g.table):
        by_z.setdefault(z, []).append(j)
    pairs = []
    for i, z in enumerate(f.table):
        for j in by_z.get(z, ()):
            pairs.append((i, j))
    apex = FinSet((X[i], Y[j]) for i, j in pairs)
    p = FinFunction(apex, X, [i for i, _ in pairs])
    q = FinFunction(apex, Y, [j for _, j in pairs])
    return apex, p, q


class UnionFind:
    """Union-find over 0..n-1; the root of a class is always its least member."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return rx

    def classes(self):
        """Classes as sorted index lists, ordered by least member."""
        groups = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


def coequalizer(f, g):
    """Coequalizer of ``f, g: X -> Y``: quotient of Y with least-index representatives."""
    if f.dom != g.dom or f.cod != g.cod:
        raise BoundaryMismatch("coequalizer of non-parallel functions")
    Y = f.cod
    uf = UnionFind(len(Y))
    for a, b in zip(f.table, g.table):
        uf.union(a, b)
    classes = uf.classes()
    Q = FinSet(Y[c[0]] for c in classes)
    cls_of = {}
    for k, c in enumerate(classes):
        for y in c:
            cls_of[y] = k
    q = FinFunction(Y, Q, [cls_of[y] for y in range(len(Y))])
    return Q, q


def factor_through(q, h):
    """The unique u with u . q = h, or None when h does not respect q's classes."""
    table = [None] * len(q.cod)
    for y, k in enumerate(q.table):
        t = h.table[y]
        if table[k] is None:
            table[k] = t
        elif table[k] != t:
            return None
    return FinFunction(q.cod, h.cod, table)


class FinCategory:
    """A finite category given by hom-sets, identities and a composition table.

    ``comp`` maps ``(g, f)`` (g after f) to an arrow label; arrow labels are
    global, each with a unique source and target.
    """

    def __init__(self, objects, arrows, ids, comp, name="C"):
        self.name = name
        self.objects = FinSet(objects)
        self.arrows = dict(arrows)  # label -> (src, dst)
        self.ids = dict(ids)
        self.comp = dict(comp)

    def src(self, f):
        return self.arrows[f][0]

    def dst(self, f):
        return self.arrows[f][1]

    def hom(self, a, b):
        return FinSet(f for f, (s, t) in self.arrows.items() if s == a and t == b)

    def arrow_list(self):
        return list(self.arrows)

    def compose(self, g, f):
        if self.dst(f) != self.src(g):
            raise BoundaryMismatch(f"{g} . {f} not composable")
        return self.comp[(g, f)]

    def composable_pairs(self):
        for f in self.arrows:
            for g in self.arrows:
                if self.dst(f) == self.src(g):
                    yield g, f

    @classmethod
    def from_monoid(cls, elements, mult, unit, obj="*", name="M"):
        arrows = {e: (obj, obj) for e in elements}
        comp = {(g, f): mult(g, f) for g in elements for f in elements}
        return cls([obj], arrows, {obj: unit}, comp, name=name)

    @classmethod
    def terminal(cls):
        return cls(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"}, name="1")

    def __repr__(self):
        return f"FinCategory({self.name}, {len(self.objects)} objects, {len(self.arrows)} arrows)"


def z2_category():
    """The group Z/2 as a one-object category with arrows 'e' and 's'."""
    return FinCategory.from_monoid(["e", "s"], lambda g, f: "e" if g == f else "s", "e", name="Z2")


class CatFunctor:
    def __init__(self, src, dst, obj_map, arrow_map):
        self.src = src
        self.dst = dst
        self.obj_map = dict(obj_map)
        self.arrow_map = dict(arrow_map)

    def check(self):
        C, D = self.src, self.dst
        for f in C.arrows:
            s, t = C.arrows[f]
            if D.arrows[self.arrow_map[f]] != (self.obj_map[s], self.obj_map[t]):
                return False
        for a in C.objects:
            if self.arrow_map[C.ids[a]] != D.ids[self.obj_map[a]]:
                return False
        for g, f in C.composable_pairs():
            if self.arrow_map[C.compose(g, f)] != D.compose(self.arrow_map[g], self.arrow_map[f]):
                return False
        return True


def check_category(C):
    """Totality, associativity and unit laws of a finite category."""
    arrows = list(C.arrows)
    pairs = [(g, f) for g in arrows for f in arrows if C.dst(f) == C.src(g)]
    triples = [(h, g, f) for (g, f) in pairs for h in arrows if C.dst(g) == C.src(h)]

    def total(g, f):
        if (g, f) not in C.comp:
            return "composite undefined"
        h = C.comp[(g, f)]
        if h not in C.arrows:
            return f"composite {h!r} is not an arrow"
        if C.arrows[h] != (C.src(f), C.dst(g)):
            return f"composite {h!r} has wrong boundary"
        return True

    def assoc(h, g, f):
        try:
            return C.compose(C.compose(h, g), f) == C.compose(h, C.compose(g, f))
        except (KeyError, BoundaryMismatch) as exc:
            return f"undefined composite: {exc}"

    def units(f):
        s, t = C.arrows[f]
        try:
            return C.compose(f, C.ids[s]) == f and C.compose(C.ids[t], f) == f
        except (KeyError, BoundaryMismatch) as exc:
            return f"undefined composite: {exc}"

    def ids_ok(a):
        i = C.ids.get(a)
        return i in C.arrows and C.arrows[i] == (a, a)

    fams = [
        Family("identities", lambda: ((a, (a,)) for a in C.objects), ids_ok),
        Family("totality", lambda: (((g, f), (g, f)) for g, f in pairs), total),
        Family("associativity", lambda: (((h, g, f), (h, g, f)) for h, g, f in triples), assoc),
        Family("unit laws", lambda: ((f, (f,)) for f in arrows), units),
    ]
    return run_families(fams)
