"""From double categories to bicategories.

``H`` sends a double category to its loose bicategory, a double functor to a
pseudofunctor and, given companions of the tight components, a tight
transformation to an oplax transformation whose 2-cells are

    alpha_B . FM  =r^-1=>  (alpha_B . FM) . U  =(eps_B . alpha_M) . eta_A=>
    (U . GM) . alpha_A  =a=>  U . (GM . alpha_A)  =l=>  GM . alpha_A.

Every higher cell of the lifted monoidal structure is the canonical
comparison ``theta`` between two companions of one tight composite: the
composites agree on the nose in the double category, so their companions
are related by a unique invertible globular cell.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .bicat import (BicatUniverse, Bicategory, Icon, Modification, Pseudofunctor,
                    TransformationBicategory, Transformation, adjoint_equivalence_families,
                    check_icon, compose_transformations, identity_transformation, loose_bicategory,
                    modification_families, pseudofunctor_families, transformation_families)
from .cellexpr import CellEnv, eval_cell_expr
from .companion import (comp_iso_holds, compose_companions, conjoint_of_inverse, identity_companion,
                        map_companion, product_companion, theta, adjunction_data)
from .dblcore import (ProdCell, ProdLoose, ProductDouble, TightTransformation, _same,
                      identity_transformation as identity_tight_transformation, inverse_transformation,
                      stride_sample, vertical_transformation)
from .errors import BoundaryError, BoundaryMismatch, LevelUnavailable, MissingCompanion, NotInvertible, NotLooselyStrong
from .mondbl import LEVELS, WordFunctor, word_str
from .report import Family, Report, run_families


# ---------------------------------------------------------------------------
# H on functors and transformations


@lru_cache(maxsize=None)
def lift_double_functor(F):
    """H(F): the same maps, with F's globular constraints."""
    return Pseudofunctor(loose_bicategory(F.src), loose_bicategory(F.dst), F.obj, F.loose, F.cell,
                         F.comp, F.unit, name=f"H({F.name})")


def lifted_cell(D, p, q, cell):
    """The oplax 2-cell ``q.fhat . top => bottom . p.fhat`` built from a cell
    ``top => bottom`` over (p.f, q.f)."""
    inv = D.inverse
    FM, GM = cell.top, cell.bottom
    middle = D.hcompose(D.hcompose(q.eps, cell), p.eta)
    return D.vcompose_all(D.lunitor(D.loose_compose(GM, p.fhat)),
                          D.assoc(D.unit(q.f.dst), GM, p.fhat),
                          middle,
                          inv(D.runitor(D.loose_compose(q.fhat, FM))))


def _companion_rule(alpha, choice, companions):
    if companions is not None:
        return companions
    if choice is None:
        raise MissingCompanion("no companion choice given")
    return lambda A: choice(alpha.obj(A))


def lift_tight_transformation(alpha, choice=None, companions=None, name=None):
    """The oplax transformation H(F) => H(G) induced by ``alpha: F -> G``.

    ``companions(A)`` (default ``choice(alpha.obj(A))``) supplies the
    companion of each component; the result carries it as ``.companion``.
    """
    D = alpha.src.dst
    rule = _companion_rule(alpha, choice, companions)
    cache = {}

    def comp(A):
        p = cache.get(A)
        if p is None:
            p = cache[A] = rule(A)
            if p.f != alpha.obj(A):
                raise MissingCompanion(f"companion supplied for {p.f!r}, wanted {alpha.obj(A)!r}")
        return p

    t = Transformation(lift_double_functor(alpha.src), lift_double_functor(alpha.dst),
                       lambda A: comp(A).fhat,
                       lambda M: lifted_cell(D, comp(M.src), comp(M.tgt), alpha.loose(M)),
                       mode="oplax", name=name or f"H({alpha.name})")
    t.companion = comp
    t.tight = alpha
    return t


def is_loosely_strong(alpha, choice, W, companions=None):
    """Whether every lifted 2-cell component over the window has an inverse."""
    t = lift_tight_transformation(alpha, choice, companions)
    E = t.src.dst
    return all(E.search_inverse(t.cell(M)) is not None for M in W.ones)


# ---------------------------------------------------------------------------
# H on the locally discrete bicategory of tight transformations


class TightPath:
    """A composable list of tight transformations, first applied first."""

    def __init__(self, src, tgt, steps=()):
        self.src = src
        self.tgt = tgt
        self.steps = tuple(steps)
        for s, t in zip(self.steps, self.steps[1:]):
            if s.dst is not t.src:
                raise BoundaryMismatch(f"{s.name} and {t.name} do not compose")

    def _key(self):
        return (id(self.src), id(self.tgt), tuple(id(s) for s in self.steps))

    def __eq__(self, other):
        return isinstance(other, TightPath) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def transformation(self):
        if not self.steps:
            return identity_tight_transformation(self.src)
        t = self.steps[0]
        for s in self.steps[1:]:
            t = vertical_transformation(s, t)
        return t

    def __repr__(self):
        return "[" + ", ".join(s.name for s in self.steps) + "]" if self.steps else f"[1_{self.src.name}]"


def tight_path(*steps):
    return TightPath(steps[0].src, steps[-1].dst, steps)


@dataclass(frozen=True)
class PathCell:
    top: TightPath

    @property
    def bottom(self):
        return self.top


class TightPathBicategory(Bicategory):
    """Double functors, composable lists of tight transformations, identity 2-cells."""

    name = "Tight"

    def compose(self, N, M):
        if M.tgt is not N.src:
            raise BoundaryMismatch("paths do not compose")
        return TightPath(M.src, N.tgt, M.steps + N.steps)

    def unit(self, A):
        return TightPath(A, A)

    def cell_id(self, M):
        return PathCell(M)

    def vcompose(self, b, a):
        if a.bottom != b.top:
            raise BoundaryMismatch("vertical composite of different paths")
        return a

    def hcompose(self, b, a):
        return PathCell(self.compose(b.top, a.top))

    def assoc(self, P, N, M):
        return PathCell(self.compose(self.compose(P, N), M))

    def lunitor(self, M):
        return PathCell(M)

    def runitor(self, M):
        return PathCell(M)

    def inverse(self, cell):
        return cell

    def cells_between(self, M, N):
        return [PathCell(M)] if M == N else []


class LiftFunctor(Pseudofunctor):
    """H_choice: tight transformations to oplax transformations, with the
    theta-built composition and unit constraints."""

    def __init__(self, choice, objects, name=None):
        self.choice = choice
        self.paths = TightPathBicategory()
        self._lifted = {}
        D = choice.D
        self.trans = TransformationBicategory(loose_bicategory(D), objects)
        super().__init__(self.paths, self.trans, lift_double_functor, self._one,
                         lambda c: self.trans.cell_id(self._one(c.top)),
                         self._comp, self._unit, name=name or f"H[{choice.name}]")

    def _one(self, path):
        t = self._lifted.get(path)
        if t is None:
            t = self._lifted[path] = lift_tight_transformation(path.transformation(), self.choice,
                                                              name=f"H{path!r}")
        return t

    def _comp(self, N, M):
        return composition_constraint(self._one(M), self._one(N), self._one(self.paths.compose(N, M)),
                                      self.trans)

    def _unit(self, F):
        one = self._one(self.paths.unit(F))
        D = self.choice.D
        return Modification(identity_transformation(lift_double_functor(F)), one,
                            lambda A: theta(D, identity_companion(D, F.obj(A)), one.companion(A)),
                            name="unit constraint")


def composition_constraint(alpha_hat, beta_hat, composite_hat, trans=None):
    """The modification ``beta_hat . alpha_hat => composite_hat`` with
    components theta between the composite companion and the chosen one."""
    D = alpha_hat.src.dst.double

    def comp(A):
        p = compose_companions(D, alpha_hat.companion(A), beta_hat.companion(A))
        return theta(D, p, composite_hat.companion(A))

    return Modification(compose_transformations(beta_hat, alpha_hat), composite_hat, comp,
                        name="composition constraint")


def compare_companion_choices(choice1, choice2, objects):
    """The icon H[choice1] => H[choice2]; its component at a path is the
    modification of theta isomorphisms between the two chosen companions."""
    H1, H2 = LiftFunctor(choice1, objects), LiftFunctor(choice2, objects)
    D = choice1.D

    def cell(path):
        s, t = H1.one(path), H2.one(path)
        return Modification(s, t, lambda A: theta(D, s.companion(A), t.companion(A)),
                            name=f"theta{path!r}")

    icon = Icon(H1, H2, cell, name=f"{choice1.name} => {choice2.name}")
    icon.functors = (H1, H2)
    return icon


def path_window(paths, functors):
    """Bicategory window over the given paths: identity 2-cells only."""
    return BicatUniverse(functors, paths, [PathCell(p) for p in paths])


# ---------------------------------------------------------------------------
# Rewrite steps on tensor words

_PATTERNS = {
    "a": lambda w: isinstance(w, tuple) and isinstance(w[0], tuple),
    "a-": lambda w: isinstance(w, tuple) and isinstance(w[1], tuple),
    "l": lambda w: isinstance(w, tuple) and w[0] is None,
    "r": lambda w: isinstance(w, tuple) and w[1] is None,
    "l-": lambda w: True,
    "r-": lambda w: True,
    "s": lambda w: isinstance(w, tuple),
    "s-": lambda w: isinstance(w, tuple),
}


def _rewrite(w, kind):
    if kind == "a":
        (x, y), z = w
        return (x, (y, z))
    if kind == "a-":
        x, (y, z) = w
        return ((x, y), z)
    if kind == "l":
        return w[1]
    if kind == "r":
        return w[0]
    if kind == "l-":
        return (None, w)
    if kind == "r-":
        return (w, None)
    return (w[1], w[0])


def _sub(w, path):
    for k in path:
        w = w[k]
    return w


def _replace(w, path, new):
    if not path:
        return new
    k = path[0]
    parts = list(w)
    parts[k] = _replace(w[k], path[1:], new)
    return tuple(parts)


def _embed(w, path, sub, other, combine):
    if not path:
        return sub(w)
    k = path[0]
    inner = _embed(w[k], path[1:], sub, other, combine)
    o = other(w[1 - k])
    return combine(inner, o) if k == 0 else combine(o, inner)


@dataclass
class Step:
    word: object
    path: tuple
    kind: str
    target: object
    tight: TightTransformation
    lifted: Transformation

    def __repr__(self):
        where = "".join(str(k) for k in self.path) or "root"
        return f"{self.kind}@{where}:{word_str(self.word)}"


class MonoidalLift:
    """Shared cache of word functors, rewrite steps and their lifts."""

    def __init__(self, M, choice):
        self.M = M
        self.D = M.base
        self.choice = choice
        self.tensor_functor = M.tensor_functor()
        self._words = {}
        self._steps = {}

    def word(self, w, arity):
        key = (w, arity)
        F = self._words.get(key)
        if F is None:
            F = self._words[key] = WordFunctor(self.M, w, arity)
        return F

    # -- values of a word at a tuple -------------------------------------
    def _obj(self, w, As):
        M = self.M
        if w is None:
            return M.unit_object
        if isinstance(w, int):
            return As[w]
        return M.tensor(self._obj(w[0], As), self._obj(w[1], As))

    def _loose(self, w, X):
        M = self.M
        if w is None:
            return M.unit_loose
        if isinstance(w, int):
            return X.parts[w]
        return M.tensor_loose(self._loose(w[0], X), self._loose(w[1], X))

    # -- the constraint applied at a subword -----------------------------
    def _kind_tight(self, kind, w, As):
        M, D = self.M, self.D
        o = lambda x: self._obj(x, As)  # noqa: E731
        if kind == "a":
            return M.assoc(o(w[0][0]), o(w[0][1]), o(w[1]))
        if kind == "a-":
            return D.tight_inverse(M.assoc(o(w[0]), o(w[1][0]), o(w[1][1])))
        if kind == "l":
            return M.lunit(o(w[1]))
        if kind == "l-":
            return D.tight_inverse(M.lunit(o(w)))
        if kind == "r":
            return M.runit(o(w[0]))
        if kind == "r-":
            return D.tight_inverse(M.runit(o(w)))
        if kind == "s":
            return M.braid(o(w[0]), o(w[1]))
        return D.tight_inverse(M.braid(o(w[1]), o(w[0])))

    def _kind_cell(self, kind, w, X):
        M, D = self.M, self.D
        x = lambda v: self._loose(v, X)  # noqa: E731
        if kind == "a":
            return M.assoc_cell(x(w[0][0]), x(w[0][1]), x(w[1]))
        if kind == "a-":
            return D.inverse(M.assoc_cell(x(w[0]), x(w[1][0]), x(w[1][1])))
        if kind == "l":
            return M.lunit_cell(x(w[1]))
        if kind == "l-":
            return D.inverse(M.lunit_cell(x(w)))
        if kind == "r":
            return M.runit_cell(x(w[0]))
        if kind == "r-":
            return D.inverse(M.runit_cell(x(w)))
        if kind == "s":
            return M.braid_cell(x(w[0]), x(w[1]))
        return D.inverse(M.braid_cell(x(w[1]), x(w[0])))

    def step(self, w, arity, path, kind):
        """The rewrite applying ``kind`` at ``path`` of word ``w``, tight and lifted."""
        key = (w, arity, tuple(path), kind)
        s = self._steps.get(key)
        if s is not None:
            return s
        path = tuple(path)
        if kind not in _PATTERNS or not _PATTERNS[kind](_sub(w, path)):
            raise ValueError(f"cannot apply {kind} at {path} of {word_str(w)}")
        target = _replace(w, path, _rewrite(_sub(w, path), kind))
        M, D, T = self.M, self.D, self.tensor_functor
        F, G = self.word(w, arity), self.word(target, arity)

        def obj(As):
            return _embed(w, path, lambda v: self._kind_tight(kind, v, As),
                          lambda v: D.tight_id(self._obj(v, As)), M.tensor_tight)

        def loose(X):
            return _embed(w, path, lambda v: self._kind_cell(kind, v, X),
                          lambda v: D.cell_id(self._loose(v, X)), M.tensor_cell)

        def companion(As):
            return _embed(w, path, lambda v: self.choice(self._kind_tight(kind, v, As)),
                          lambda v: identity_companion(D, self._obj(v, As)),
                          lambda p, q: map_companion(T, product_companion([p, q])))

        where = "".join(str(k) for k in path)
        name = f"{kind}{'@' + where if where else ''}"
        tight = TightTransformation(F, G, obj, loose, name=name)
        lifted = lift_tight_transformation(tight, companions=companion, name=f"H({name})")
        s = self._steps[key] = Step(w, path, kind, target, tight, lifted)
        return s

    def path(self, w, arity, moves):
        """Steps applying ``moves`` (pairs (path, kind)) in order starting at ``w``."""
        steps = []
        for p, kind in moves:
            s = self.step(w, arity, p, kind)
            steps.append(s)
            w = s.target
        return steps

    def composite(self, steps, w=None, arity=None):
        """The composite oplax transformation of a list of steps (left fold)
        and the companion of its components."""
        D = self.D
        if not steps:
            P = lift_double_functor(self.word(w, arity))
            t = identity_transformation(P)
            t.companion = lambda As: identity_companion(D, P.obj(As))
            return t
        t = steps[0].lifted
        comps = [steps[0].lifted.companion]
        for s in steps[1:]:
            t = compose_transformations(s.lifted, t)
            comps.append(s.lifted.companion)

        def companion(As):
            p = comps[0](As)
            for c in comps[1:]:
                p = compose_companions(D, p, c(As))
            return p

        t.companion = companion
        return t


# ---------------------------------------------------------------------------
# Lifted monoidal structure


@dataclass
class HigherCell:
    """An invertible modification built as theta between two composite companions."""

    name: str
    word: object
    arity: int
    source_steps: list
    target_steps: list
    cell: Modification
    inverse: Modification


@dataclass
class Equivalence:
    """A lifted constraint with its adjoint-equivalence inverse, unit and counit."""

    name: str
    arity: int
    forward: Transformation
    backward: Transformation
    unit: Modification
    counit: Modification


@dataclass
class MonoidalBicatData:
    base: Bicategory
    monoidal: object
    choice: object
    level: str
    tensor: Pseudofunctor
    unit_object: object
    assoc: Equivalence
    lunit: Equivalence
    runit: Equivalence
    pent: HigherCell
    mu: HigherCell
    lam: HigherCell
    rho: HigherCell
    braiding: Equivalence = None
    R: HigherCell = None
    S: HigherCell = None
    upsilon: HigherCell = None
    symmetric: bool = False
    lift: MonoidalLift = None
    report: Report = None

    def higher_cells(self):
        cells = [self.pent, self.mu, self.lam, self.rho, self.R, self.S, self.upsilon]
        return [c for c in cells if c is not None]

    def equivalences(self):
        eqs = [self.assoc, self.lunit, self.runit, self.braiding]
        return [e for e in eqs if e is not None]


def _higher(L, name, w, arity, source_moves, target_moves):
    D = L.D
    src_steps = L.path(w, arity, source_moves)
    tgt_steps = L.path(w, arity, target_moves)
    end_src = src_steps[-1].target if src_steps else w
    end_tgt = tgt_steps[-1].target if tgt_steps else w
    if end_src != end_tgt:
        raise ValueError(f"{name}: paths end at {word_str(end_src)} and {word_str(end_tgt)}")
    s = L.composite(src_steps, w, arity)
    t = L.composite(tgt_steps, w, arity)
    fwd = Modification(s, t, lambda As: theta(D, s.companion(As), t.companion(As)), name=name)
    bwd = Modification(t, s, lambda As: theta(D, t.companion(As), s.companion(As)), name=name + "^-1")
    return HigherCell(name, w, arity, src_steps, tgt_steps, fwd, bwd)


def _equivalence(L, name, w, arity, kind, inverse_kind):
    D = L.D
    fwd_step = L.step(w, arity, (), kind)
    bwd_step = L.step(fwd_step.target, arity, (), inverse_kind)
    f, g = fwd_step.lifted, bwd_step.lifted

    def data(As):
        p = f.companion(As)
        return adjunction_data(D, p, conjoint_of_inverse(D, g.companion(As)))

    unit = Modification(identity_transformation(f.src), compose_transformations(g, f),
                        lambda As: data(As)[0], name=f"{name} unit")
    counit = Modification(compose_transformations(f, g), identity_transformation(f.tgt),
                          lambda As: data(As)[1], name=f"{name} counit")
    return Equivalence(name, arity, f, g, unit, counit)


def lift_monoidal(M, choice, level="monoidal", window=None):
    """Monoidal-bicategory data on H(D) from a monoidal double category.

    With a :class:`LiftWindow` the structural checks run before returning
    and their report is stored on the result.
    """
    if not M.supports(level):
        raise LevelUnavailable(f"{M.name} is {M.level()}, not {level}")
    L = MonoidalLift(M, choice)
    B = loose_bicategory(M.base)
    tensor = lift_double_functor(L.tensor_functor)
    A, l, r, s = "a", "l", "r", "s"
    data = MonoidalBicatData(
        base=B, monoidal=M, choice=choice, level=level, tensor=tensor, unit_object=M.unit_object,
        assoc=_equivalence(L, "assoc", ((0, 1), 2), 3, A, "a-"),
        lunit=_equivalence(L, "lunit", (None, 0), 1, l, "l-"),
        runit=_equivalence(L, "runit", (0, None), 1, r, "r-"),
        pent=_higher(L, "pi", (((0, 1), 2), 3), 4,
                     [((0,), A), ((), A), ((1,), A)], [((), A), ((), A)]),
        mu=_higher(L, "mu", ((0, None), 1), 2, [((), A), ((1,), l)], [((0,), r)]),
        lam=_higher(L, "lambda", ((None, 0), 1), 2, [((), A), ((), l)], [((0,), l)]),
        rho=_higher(L, "rho", ((0, 1), None), 2, [((), A), ((1,), r)], [((), r)]),
        lift=L)
    if LEVELS.index(level) >= 1:
        data.braiding = _equivalence(L, "braiding", (0, 1), 2, s, "s-")
        data.R = _higher(L, "R", ((0, 1), 2), 3, [((), A), ((), s), ((), A)],
                         [((0,), s), ((), A), ((1,), s)])
        data.S = _higher(L, "S", (0, (1, 2)), 3, [((), "a-"), ((), s), ((), "a-")],
                         [((1,), s), ((), "a-"), ((0,), s)])
    if level == "symmetric":
        data.symmetric = True
        data.upsilon = _higher(L, "upsilon", (0, 1), 2, [((), s), ((), s)], [])
    if window is not None:
        data.report = verify_structure(data, window)
    return data


# ---------------------------------------------------------------------------
# Windows and structural verification


class LiftWindow:
    """Product windows onto H(D)^n built from one window of H(D).

    ``ones``/``twos`` are the factor 1-cells and globular 2-cells; each
    arity keeps at most ``max_objects``/``max_ones``/``max_twos`` tuples,
    chosen by an even stride.
    """

    def __init__(self, D, objects, ones, twos=(), max_objects=None, max_ones=None, max_twos=None):
        self.D = D
        self.objects = list(objects)
        self.ones = list(ones)
        self.twos = [c for c in twos if D.is_globular(c)]
        self.max_objects = max_objects
        self.max_ones = max_ones
        self.max_twos = max_twos
        self._cache = {}

    def arity(self, n):
        W = self._cache.get(n)
        if W is None:
            objs = stride_sample(product(self.objects, repeat=n), self.max_objects)
            ones = stride_sample((ProdLoose(p) for p in product(self.ones, repeat=n)), self.max_ones)
            twos = stride_sample((ProdCell(p) for p in product(self.twos, repeat=n)), self.max_twos)
            W = self._cache[n] = BicatUniverse(objs, ones, twos)
        return W

    def base(self):
        return BicatUniverse(self.objects, self.ones, self.twos)


def _prefixed(prefix, families):
    return [Family(prefix + f.name, f.instances, f.predicate) for f in families]


def _theta_family(L, hc, W):
    D = L.D
    s = L.composite(hc.source_steps, hc.word, hc.arity)
    t = L.composite(hc.target_steps, hc.word, hc.arity)

    def is_theta(As):
        p, q = s.companion(As), t.companion(As)
        cell = hc.cell.comp(As)
        if not comp_iso_holds(D, p, q, cell):
            return "component fails the comparison equation"
        return True

    return Family(f"{hc.name}: component is the canonical comparison",
                  lambda: (((i,), (As,)) for i, As in enumerate(W.objects)), is_theta)


def structure_families(data, window):
    L = data.lift
    fams = []
    fams += _prefixed("tensor: ", pseudofunctor_families(data.tensor, window.arity(2)))
    for eq in data.equivalences():
        W = window.arity(eq.arity)
        fams += _prefixed(f"{eq.name}: ", transformation_families(eq.forward, W, "pseudo"))
        fams += _prefixed(f"{eq.name} inverse: ", transformation_families(eq.backward, W, "pseudo"))
        fams += _prefixed(f"{eq.name} unit: ", modification_families(eq.unit, W)[:3])
        fams += _prefixed(f"{eq.name} counit: ", modification_families(eq.counit, W)[:3])
        trans = TransformationBicategory(data.base, W.objects)
        fams += _prefixed(f"{eq.name} adjoint equivalence: ",
                          adjoint_equivalence_families(trans, eq.forward, eq.backward, eq.unit,
                                                       eq.counit))
    for hc in data.higher_cells():
        W = window.arity(hc.arity)
        fams += _prefixed(f"{hc.name}: ", modification_families(hc.cell, W, inverse=hc.inverse))
        fams.append(_theta_family(L, hc, W))
    return fams


def verify_structure(data, window):
    return run_families(structure_families(data, window))


# ---------------------------------------------------------------------------
# Cell expressions over the lifted structure


def lift_env(data, names=None):
    """Operators for cell expressions over lifted data.

    ``t`` tensors objects, 1-cells or 2-cells; ``tc``/``tu`` are the tensor's
    composition and unit constraints; ``ahat``/``lhat``/``rhat``/``shat``
    the lifted constraint 1-cells and ``acell``/``lcell``/``rcell``/``scell``
    their 2-cell components; ``pi``, ``mu``, ``lam``, ``rho``, ``R``, ``S``,
    ``ups`` the higher cells at objects.
    """
    M, T = data.monoidal, data.tensor

    def t(x, y):
        if hasattr(x, "top"):
            return T.two(ProdCell((x, y)))
        if hasattr(x, "src"):
            return T.one(ProdLoose((x, y)))
        return M.tensor(x, y)

    def need(cell, what):
        if cell is None:
            raise BoundaryError(f"{what} is not available at level {data.level}")
        return cell

    ops = {
        "t": t,
        "tc": lambda M2, N2, M1, N1: T.comp(ProdLoose((M2, N2)), ProdLoose((M1, N1))),
        "tu": lambda X, Y: T.unit((X, Y)),
        "ahat": lambda X, Y, Z: data.assoc.forward.obj((X, Y, Z)),
        "abar": lambda X, Y, Z: data.assoc.backward.obj((X, Y, Z)),
        "lhat": lambda X: data.lunit.forward.obj((X,)),
        "rhat": lambda X: data.runit.forward.obj((X,)),
        "acell": lambda X, Y, Z: data.assoc.forward.cell(ProdLoose((X, Y, Z))),
        "lcell": lambda X: data.lunit.forward.cell(ProdLoose((X,))),
        "rcell": lambda X: data.runit.forward.cell(ProdLoose((X,))),
        "pi": lambda *As: data.pent.cell.comp(tuple(As)),
        "mu": lambda X, Y: data.mu.cell.comp((X, Y)),
        "lam": lambda X, Y: data.lam.cell.comp((X, Y)),
        "rho": lambda X, Y: data.rho.cell.comp((X, Y)),
    }
    if data.braiding is not None:
        ops.update({
            "shat": lambda X, Y: data.braiding.forward.obj((X, Y)),
            "scell": lambda X, Y: data.braiding.forward.cell(ProdLoose((X, Y))),
            "R": lambda X, Y, Z: need(data.R, "R").cell.comp((X, Y, Z)),
            "S": lambda X, Y, Z: need(data.S, "S").cell.comp((X, Y, Z)),
        })
    if data.upsilon is not None:
        ops["ups"] = lambda X, Y: data.upsilon.cell.comp((X, Y))
    return CellEnv(dict(names or {}), ops)


def evaluate_equation(data, lhs, rhs, names=None):
    """Evaluate both sides; BoundaryError unless they are parallel 2-cells."""
    B = data.base
    env = lift_env(data, names)
    left = eval_cell_expr(B, lhs, env)
    right = eval_cell_expr(B, rhs, env)
    for side, val in (("lhs", left), ("rhs", right)):
        if not hasattr(val, "top"):
            raise BoundaryError(f"{side} is not a 2-cell", (side,))
    if left.top != right.top:
        raise BoundaryError(f"sides have different sources {left.top!r} and {right.top!r}", ("rhs",))
    if left.bottom != right.bottom:
        raise BoundaryError(f"sides have different targets {left.bottom!r} and {right.bottom!r}",
                            ("rhs",))
    return left, right


def verify_lifted(data, U=None, fixtures=()):
    """Evaluate every fixture equation over the lifted data.

    Each equation is a one-instance family, evaluated lazily so that a
    boundary error (non-parallel sides, unbound names) is recorded as a
    failing witness instead of aborting the run.  With a window ``U`` the
    structural checks are included as well.
    """
    B = data.base
    report = verify_structure(data, U) if U is not None else Report()
    fams = []
    for fx in fixtures:
        def holds(eq, fx=fx):
            left, right = evaluate_equation(data, eq.lhs, eq.rhs, fx.bind(data, lift_env))
            return _same(B, left, right)

        for eq in fx.equations:
            fams.append(Family(f"{fx.name}: {eq.name}", lambda eq=eq: iter([((eq.line,), (eq,))]),
                               holds))
    report.extend(run_families(fams))
    return report


# ---------------------------------------------------------------------------
# Monoidal functors and transformations


@dataclass
class MonoidalPseudofunctorData:
    P: Pseudofunctor
    chi: Transformation
    iota: object
    omega: dict
    gamma: dict
    delta: dict
    laxity: str
    chi_inverse: Transformation = None
    chi_unit: Modification = None
    chi_counit: Modification = None
    iota_conjoint: object = None
    report: Report = None


def _tensor_id(T, p, D, A, left):
    """Companion of p.f x 1_A (left=True) or 1_A x p.f, mapped through the tensor."""
    i = identity_companion(D, A)
    return map_companion(T, product_companion([p, i] if left else [i, p]))


def _fold(D, pairs):
    p = pairs[0]
    for q in pairs[1:]:
        p = compose_companions(D, p, q)
    return p


def lift_monoidal_functor(Phi, choices, window=None):
    """Lift a strong (or loosely strong lax) monoidal double functor.

    ``choices = (source choice, target choice)``.  ``window`` is a
    :class:`LiftWindow` on the source; lax functors need it to certify
    loose strength and fail with NotLooselyStrong when an inverse is missing.
    """
    if Phi.laxity == "colax":
        raise NotLooselyStrong("colax monoidal functors lift only to colax functors")
    c1, c2 = choices
    Ms, Mt = Phi.src, Phi.dst
    F = Phi.functor
    E = Mt.base
    T1, T2 = Ms.tensor_functor(), Mt.tensor_functor()
    phi_t = Phi.phi_transformation()
    chi = lift_tight_transformation(phi_t, c2, name=f"chi_{Phi.name}")
    iota = c2(Phi.phi_unit)
    iota_cell = lifted_cell(E, iota, iota, Phi.phi_unit_cell)
    if Phi.laxity == "lax":
        if window is None:
            raise NotLooselyStrong("a lax functor needs a window to certify loose strength")
        W2 = window.arity(2)
        for X in W2.ones:
            if E.search_inverse(chi.cell(X)) is None:
                raise NotLooselyStrong(f"lifted comparison at {X!r} has no inverse within the window")
        if E.search_inverse(iota_cell) is None:
            raise NotLooselyStrong("lifted unit comparison has no inverse")

    def omega(A, B, C):
        lhs = [_tensor_id(T2, c2(Phi.phi(A, B)), E, F.obj(C), True),
               c2(Phi.phi(Ms.tensor(A, B), C)),
               map_companion(F, c1(Ms.assoc(A, B, C)))]
        rhs = [c2(Mt.assoc(F.obj(A), F.obj(B), F.obj(C))),
               _tensor_id(T2, c2(Phi.phi(B, C)), E, F.obj(A), False),
               c2(Phi.phi(A, Ms.tensor(B, C)))]
        return _fold(E, lhs), _fold(E, rhs)

    def gamma(A):
        lhs = [_tensor_id(T2, iota, E, F.obj(A), True), c2(Phi.phi(Ms.unit_object, A)),
               map_companion(F, c1(Ms.lunit(A)))]
        return _fold(E, lhs), c2(Mt.lunit(F.obj(A)))

    def delta(A):
        lhs = [_tensor_id(T2, iota, E, F.obj(A), False), c2(Phi.phi(A, Ms.unit_object)),
               map_companion(F, c1(Ms.runit(A)))]
        return _fold(E, lhs), c2(Mt.runit(F.obj(A)))

    data = MonoidalPseudofunctorData(lift_double_functor(F), chi, iota,
                                     omega=_ThetaFamily(E, omega), gamma=_ThetaFamily(E, gamma),
                                     delta=_ThetaFamily(E, delta), laxity=Phi.laxity)
    if Phi.laxity == "strong":
        inv = inverse_transformation(phi_t)
        data.chi_inverse = lift_tight_transformation(inv, c2, name=f"chi_{Phi.name}^-1")

        def adj(AB):
            return adjunction_data(E, chi.companion(AB), conjoint_of_inverse(E, data.chi_inverse.companion(AB)))

        data.chi_unit = Modification(identity_transformation(chi.src),
                                     compose_transformations(data.chi_inverse, chi),
                                     lambda AB: adj(AB)[0], name="chi unit")
        data.chi_counit = Modification(compose_transformations(chi, data.chi_inverse),
                                       identity_transformation(chi.tgt),
                                       lambda AB: adj(AB)[1], name="chi counit")
        g = E.tight_inverse(Phi.phi_unit)
        if g is None:
            raise NotInvertible("strong functor with a non-invertible unit comparison")
        data.iota_conjoint = conjoint_of_inverse(E, c2(g))
    if window is not None:
        data.report = verify_monoidal_functor(data, window)
    return data


class _ThetaFamily:
    """Component family ``args -> theta(lhs companion, rhs companion)``."""

    def __init__(self, E, pairs):
        self.E = E
        self.pairs = pairs

    def companions(self, *args):
        return self.pairs(*args)

    def __call__(self, *args):
        p, q = self.pairs(*args)
        return theta(self.E, p, q)


def _component_families(name, fam, E, arg_tuples):
    def boundary(args):
        p, q = fam.companions(*args)
        cell = fam(*args)
        if cell.top != p.fhat or cell.bottom != q.fhat:
            return "component does not run between the two composite companions"
        if not E.is_globular(cell):
            return "component is not globular"
        return True

    def canonical(args):
        p, q = fam.companions(*args)
        return comp_iso_holds(E, p, q, fam(*args)) or "comparison equation fails"

    def invertible(args):
        cell = fam(*args)
        B = loose_bicategory(E)
        return B.search_inverse(cell) is not None or "no inverse within universe"

    inst = lambda: (((i,), (a,)) for i, a in enumerate(arg_tuples))  # noqa: E731
    return [Family(f"{name} boundary", inst, boundary),
            Family(f"{name} is the canonical comparison", inst, canonical),
            Family(f"{name} invertible", inst, invertible)]


def monoidal_functor_lift_families(data, window):
    E = data.P.dst.double
    objs = window.objects
    fams = []
    fams += _prefixed("P: ", pseudofunctor_families(data.P, window.base()))
    W2 = window.arity(2)
    mode = "pseudo" if data.laxity == "strong" else "oplax"
    fams += _prefixed("chi: ", transformation_families(data.chi, W2, mode))
    fams += _component_families("omega", data.omega, E, list(product(objs, repeat=3)))
    fams += _component_families("gamma", data.gamma, E, [(A,) for A in objs])
    fams += _component_families("delta", data.delta, E, [(A,) for A in objs])

    def iota_companion():
        from .companion import companion_equations
        first, second = companion_equations(E, data.iota)
        return (first and second) or "unit comparison companion fails its equations"

    fams.append(Family("iota companion", lambda: iter([((0,), ())]), iota_companion))
    if data.laxity == "strong":
        fams += _prefixed("chi inverse: ", transformation_families(data.chi_inverse, W2, "pseudo"))
        fams += _prefixed("chi unit: ", modification_families(data.chi_unit, W2)[:3])
        fams += _prefixed("chi counit: ", modification_families(data.chi_counit, W2)[:3])
        trans = TransformationBicategory(data.chi.src.dst, W2.objects)
        fams += _prefixed("chi adjoint equivalence: ",
                          adjoint_equivalence_families(trans, data.chi, data.chi_inverse,
                                                       data.chi_unit, data.chi_counit))

        def iota_equivalence():
            B = loose_bicategory(E)
            unit, counit = adjunction_data(E, data.iota, data.iota_conjoint)
            rep = run_families(adjoint_equivalence_families(B, data.iota.fhat, data.iota_conjoint.fchk,
                                                            unit, counit))
            return rep.ok or f"failed: {[c.name for c in rep.failed()]}"

        fams.append(Family("iota adjoint equivalence", lambda: iter([((0,), ())]), iota_equivalence))
    return fams


def verify_monoidal_functor(data, window):
    return run_families(monoidal_functor_lift_families(data, window))


@dataclass
class MonoidalTransData:
    beta: Transformation
    Pi: object
    M: object
    report: Report = None


def lift_monoidal_transformation(mt, choice, window=None):
    """Lift a monoidal tight transformation between lax monoidal functors.

    Pi and M are theta comparisons for the tensor and unit axioms of the
    underlying tight transformation.
    """
    alpha, Phi, Psi = mt.transformation, mt.src, mt.dst
    Ms, Mt = Phi.src, Phi.dst
    E = Mt.base
    T2 = Mt.tensor_functor()
    beta = lift_tight_transformation(alpha, choice, name=f"H({alpha.name})")
    if window is not None:
        for X in window.base().ones:
            if E.search_inverse(beta.cell(X)) is None:
                raise NotLooselyStrong(f"lifted component at {X!r} has no inverse within the window")

    def pi_pairs(A, B):
        lhs = [choice(Phi.phi(A, B)), choice(alpha.obj(Ms.tensor(A, B)))]
        both = map_companion(T2, product_companion([choice(alpha.obj(A)), choice(alpha.obj(B))]))
        return _fold(E, lhs), _fold(E, [both, choice(Psi.phi(A, B))])

    def m_pairs():
        lhs = _fold(E, [choice(Phi.phi_unit), choice(alpha.obj(Ms.unit_object))])
        return lhs, choice(Psi.phi_unit)

    data = MonoidalTransData(beta, _ThetaFamily(E, pi_pairs), _ThetaFamily(E, m_pairs))
    if window is not None:
        W = window.base()
        fams = _prefixed("beta: ", transformation_families(beta, W, "pseudo"))
        fams += _component_families("Pi", data.Pi, E, list(product(window.objects, repeat=2)))
        fams += _component_families("M", data.M, E, [()])
        data.report = run_families(fams)
    return data


__all__ = [
    "lift_double_functor", "lift_tight_transformation", "is_loosely_strong", "lifted_cell",
    "composition_constraint", "compare_companion_choices", "LiftFunctor", "TightPath",
    "TightPathBicategory", "tight_path", "path_window", "MonoidalLift", "lift_monoidal",
    "MonoidalBicatData", "LiftWindow", "verify_structure", "lift_env", "evaluate_equation",
    "verify_lifted", "lift_monoidal_functor", "verify_monoidal_functor",
    "lift_monoidal_transformation", "check_icon", "loose_bicategory", "ProductDouble",
]
