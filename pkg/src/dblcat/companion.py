"""Companions, conjoints and the canonical comparison cells between companions.

Shapes, for a tight ``f: A -> B``:

* companion ``fhat: A -|-> B`` with ``eta: U_A => fhat`` over (1_A, f) and
  ``eps: fhat => U_B`` over (f, 1_B);
* conjoint ``fchk: B -|-> A`` with ``eta: U_A => fchk`` over (f, 1_A) and
  ``eps: fchk => U_B`` over (1_B, f).

Wherever a pasting needs unit constraints they are inserted outermost:
a right unitor inverse on the way in and a left unitor on the way out.
"""

from dataclasses import dataclass
from itertools import product

from .dblcore import (ProdCell, ProdLoose, ProdTight, _boundary, _same, loose_opposite)
from .errors import BoundaryMismatch, EnumerationUnsupported, MismatchedTight, NotInvertible
from .report import Family, run_families


@dataclass(frozen=True)
class CompanionPair:
    f: object
    fhat: object
    eta: object
    eps: object


@dataclass(frozen=True)
class ConjointPair:
    f: object
    fchk: object
    eta: object
    eps: object


def _shape_error(D, p):
    A, B = p.f.src, p.f.dst
    if p.fhat.src != A or p.fhat.tgt != B:
        return f"loose cell {p.fhat!r} does not run from {A!r} to {B!r}"
    ok = _boundary(p.eta, D.unit(A), p.fhat, D.tight_id(A), p.f)
    if ok is not True:
        return "eta: " + ok
    ok = _boundary(p.eps, p.fhat, D.unit(B), p.f, D.tight_id(B))
    if ok is not True:
        return "eps: " + ok
    return None


def companion_equations(D, p):
    """(first, second): the vertical equation and the horizontal equation."""
    err = _shape_error(D, p)
    if err:
        raise BoundaryMismatch(err)
    first = D.cell_eq(D.vcompose(p.eps, p.eta), D.unit_cell(p.f))
    pasted = D.vcompose_all(D.lunitor(p.fhat), D.hcompose(p.eps, p.eta),
                            _inverse(D, D.runitor(p.fhat)))
    second = D.cell_eq(pasted, D.cell_id(p.fhat))
    return first, second


def check_companion(D, p):
    """Whether both companion equations hold; BoundaryMismatch on a malformed pair."""
    first, second = companion_equations(D, p)
    return first and second


def _inverse(D, cell):
    inv = D.inverse(cell)
    if inv is None:
        raise NotInvertible(f"{cell!r} has no inverse")
    return inv


def as_opposite_companion(D, c):
    """A conjoint pair of D, read as a companion pair of the loose opposite."""
    Dop = loose_opposite(D)
    return Dop, CompanionPair(c.f, Dop.wrap_loose(c.fchk), Dop.wrap_cell(c.eta), Dop.wrap_cell(c.eps))


def check_conjoint(D, c):
    Dop, p = as_opposite_companion(D, c)
    return check_companion(Dop, p)


def search_companions(D, f, U):
    """Every (fhat, eta, eps) within ``U`` satisfying the companion equations, in order."""
    A, B = f.src, f.dst
    UA, UB = D.unit(A), D.unit(B)
    ia, ib = D.tight_id(A), D.tight_id(B)
    found = []
    for M in U.loose:
        if M.src != A or M.tgt != B:
            continue
        try:
            etas = D.cells_between(UA, M, ia, f)
            epss = D.cells_between(M, UB, f, ib) if etas else []
        except EnumerationUnsupported:
            raise
        for eta, eps in product(etas, epss):
            p = CompanionPair(f, M, eta, eps)
            if check_companion(D, p):
                found.append(p)
    return found


# ---------------------------------------------------------------------------
# theta


def theta(D, p, q):
    """The canonical globular isomorphism p.fhat => q.fhat between companions of one f."""
    if p.f != q.f:
        raise MismatchedTight(f"companions of different tight cells {p.f!r} and {q.f!r}")
    return D.vcompose_all(D.lunitor(q.fhat), D.hcompose(p.eps, q.eta),
                          _inverse(D, D.runitor(p.fhat)))


def comp_iso_holds(D, p, q, cell):
    """Whether eps_q . cell . eta_p = U_f."""
    return D.cell_eq(D.vcompose_all(q.eps, cell, p.eta), D.unit_cell(p.f))


def comp_iso_cells(D, p, q):
    """Every globular cell p.fhat => q.fhat satisfying the comparison equation."""
    return [c for c in D.globular_cells_between(p.fhat, q.fhat) if comp_iso_holds(D, p, q, c)]


def transport_companion(D, p, iso):
    """Move companion data along a globular isomorphism ``iso: p.fhat => M``."""
    if iso.top != p.fhat or not D.is_globular(iso):
        raise BoundaryMismatch("transport needs a globular cell out of the companion")
    return CompanionPair(p.f, iso.bottom, D.vcompose(iso, p.eta), D.vcompose(p.eps, _inverse(D, iso)))


def identity_companion(D, A):
    U = D.unit(A)
    one = D.cell_id(U)
    return CompanionPair(D.tight_id(A), U, one, one)


def compose_companions(D, p, q):
    """Companion of ``q.f . p.f`` on ``q.fhat (.) p.fhat``."""
    f, g = p.f, q.f
    if f.dst != g.src:
        raise BoundaryMismatch(f"companions of non-composable {f!r} and {g!r}")
    C = g.dst
    eps = D.vcompose_all(D.lunitor(D.unit(C)),
                         D.hcompose(q.eps, D.unit_cell(g)),
                         D.hcompose(D.cell_id(q.fhat), p.eps))
    eta = D.vcompose_all(D.hcompose(q.eta, D.cell_id(p.fhat)),
                         D.hcompose(D.unit_cell(f), p.eta),
                         _inverse(D, D.runitor(D.unit(f.src))))
    return CompanionPair(D.tight_compose(g, f), D.loose_compose(q.fhat, p.fhat), eta, eps)


def map_companion(F, p):
    """Companion of F(f) on F(fhat), with F's unit constraints attached."""
    E = F.dst
    A, B = p.f.src, p.f.dst
    eta = E.vcompose(F.cell(p.eta), F.unit(A))
    eps = E.vcompose(_inverse(E, F.unit(B)), F.cell(p.eps))
    return CompanionPair(F.tight(p.f), F.loose(p.fhat), eta, eps)


def product_companion(pairs):
    """Componentwise companion in a product double category."""
    return CompanionPair(ProdTight(p.f for p in pairs), ProdLoose(p.fhat for p in pairs),
                         ProdCell(p.eta for p in pairs), ProdCell(p.eps for p in pairs))


def conjoint_of_inverse(D, p):
    """A companion of an invertible f, exhibited as a conjoint of f^-1."""
    g = D.tight_inverse(p.f)
    if g is None:
        raise NotInvertible(f"{p.f!r} is not a tight isomorphism")
    eps = D.vcompose(D.unit_cell(g), p.eps)
    eta = D.vcompose(p.eta, D.unit_cell(g))
    return ConjointPair(g, p.fhat, eta, eps)


def identity_conjoint(D, A):
    U = D.unit(A)
    one = D.cell_id(U)
    return ConjointPair(D.tight_id(A), U, one, one)


def adjunction_data(D, p, c):
    """Unit ``U_A => fchk (.) fhat`` and counit ``fhat (.) fchk => U_B`` of fhat -| fchk."""
    if p.f != c.f:
        raise MismatchedTight(f"companion of {p.f!r} with conjoint of {c.f!r}")
    A, B = p.f.src, p.f.dst
    unit = D.vcompose(D.hcompose(c.eta, p.eta), _inverse(D, D.runitor(D.unit(A))))
    counit = D.vcompose(D.lunitor(D.unit(B)), D.hcompose(p.eps, c.eps))
    return unit, counit


def triangle_identities(D, fhat, fchk, unit, counit):
    """(first, second) triangle identities for fhat -| fchk in the loose bicategory."""
    i1, i2 = D.cell_id(fhat), D.cell_id(fchk)
    first = D.vcompose_all(D.lunitor(fhat), D.hcompose(counit, i1),
                           _inverse(D, D.assoc(fhat, fchk, fhat)),
                           D.hcompose(i1, unit), _inverse(D, D.runitor(fhat)))
    second = D.vcompose_all(D.runitor(fchk), D.hcompose(i2, counit),
                            D.assoc(fchk, fhat, fchk),
                            D.hcompose(unit, i2), _inverse(D, D.lunitor(fchk)))
    return D.cell_eq(first, i1), D.cell_eq(second, i2)


def check_adjunction(D, p, c):
    unit, counit = adjunction_data(D, p, c)
    return all(triangle_identities(D, p.fhat, c.fchk, unit, counit))


def is_adjoint_equivalence(D, p, c):
    """Triangle identities plus unit and counit invertible, inverses found by search."""
    unit, counit = adjunction_data(D, p, c)
    if not all(triangle_identities(D, p.fhat, c.fchk, unit, counit)):
        return False
    return D.search_inverse(unit) is not None and D.search_inverse(counit) is not None


def fu_theta_holds(F, A):
    """Whether F's unit constraint at A is the theta between the two companions of 1_FA."""
    E = F.dst
    lhs = F.unit(A)
    rhs = theta(E, identity_companion(E, F.obj(A)), map_companion(F, identity_companion(F.src, A)))
    return E.cell_eq(lhs, rhs)


# ---------------------------------------------------------------------------
# Companion choices


class CompanionChoice:
    """A rule assigning companion data to tight cells, memoised."""

    def __init__(self, D, rule, name="choice"):
        self.D = D
        self.rule = rule
        self.name = name
        self._cache = {}

    def __call__(self, f):
        p = self._cache.get(f)
        if p is None:
            p = self._cache[f] = self.rule(f)
            if p.f != f:
                raise MismatchedTight(f"{self.name} returned a companion of {p.f!r} for {f!r}")
        return p

    def conjoint(self, f):
        """The conjoint of an invertible f: the chosen companion of f^-1, reread."""
        g = self.D.tight_inverse(f)
        if g is None:
            raise NotInvertible(f"{f!r} is not a tight isomorphism")
        return conjoint_of_inverse(self.D, self(g))

    def __repr__(self):
        return f"<CompanionChoice {self.name} on {self.D.name}>"


def search_choice(D, U, name="first found"):
    """The first companion found by search within U."""
    def rule(f):
        found = search_companions(D, f, U)
        if not found:
            from .errors import MissingCompanion
            raise MissingCompanion(f"no companion of {f!r} within the window")
        return found[0]
    return CompanionChoice(D, rule, name)


def product_choice(choices, D):
    return CompanionChoice(D, lambda f: product_companion([c(x) for c, x in zip(choices, f.parts)]),
                           name=" x ".join(c.name for c in choices))


# ---------------------------------------------------------------------------
# Check families for the theta calculus


def _over(seq):
    return lambda: (((i,), (x,)) for i, x in enumerate(seq))


def companion_families(D, tights, pairs_of):
    """Families over tight cells ``tights``; ``pairs_of(f)`` lists companion pairs of f."""
    table = [(f, pairs_of(f)) for f in tights]

    def pair_instances(arity):
        def gen():
            for i, (f, ps) in enumerate(table):
                for idx in product(range(len(ps)), repeat=arity):
                    yield (i,) + idx, tuple(ps[j] for j in idx)
        return gen

    def composable_instances():
        def gen():
            for i, (f, ps) in enumerate(table):
                for j, (g, qs) in enumerate(table):
                    if f.dst != g.src:
                        continue
                    for a, b, c, d in product(range(len(ps)), range(len(ps)), range(len(qs)), range(len(qs))):
                        yield (i, j, a, b, c, d), (ps[a], ps[b], qs[c], qs[d])
        return gen

    def found(f, ps):
        return bool(ps) or f"no companion of {f!r}"

    def equations(p):
        first, second = companion_equations(D, p)
        if not first:
            return "first companion equation fails"
        return second or "second companion equation fails"

    def unique(p, q):
        cells = comp_iso_cells(D, p, q)
        if len(cells) != 1:
            return f"{len(cells)} globular cells satisfy the comparison equation"
        return _same(D, cells[0], theta(D, p, q))

    def theta_id(p):
        return _same(D, theta(D, p, p), D.cell_id(p.fhat))

    def theta_vert(p, q, r):
        return _same(D, theta(D, p, r), D.vcompose(theta(D, q, r), theta(D, p, q)))

    def theta_horiz(p, p2, q, q2):
        lhs = D.hcompose(theta(D, q, q2), theta(D, p, p2))
        rhs = theta(D, compose_companions(D, p, q), compose_companions(D, p2, q2))
        return _same(D, lhs, rhs)

    def theta_unit(p):
        A, B = p.f.src, p.f.dst
        right = theta(D, p, compose_companions(D, identity_companion(D, A), p))
        ok = _same(D, right, _inverse(D, D.runitor(p.fhat)))
        if ok is not True:
            return "right: " + ok
        left = theta(D, p, compose_companions(D, p, identity_companion(D, B)))
        ok = _same(D, left, _inverse(D, D.lunitor(p.fhat)))
        return ok if ok is True else "left: " + ok

    def comp_iso(p, q):
        return comp_iso_holds(D, p, q, theta(D, p, q)) or "theta fails the comparison equation"

    def theta_inverse(p, q):
        return _same(D, D.vcompose(theta(D, q, p), theta(D, p, q)), D.cell_id(p.fhat))

    return [
        Family("companion found", lambda: (((i,), (f, ps)) for i, (f, ps) in enumerate(table)), found),
        Family("companion equations", pair_instances(1), equations),
        Family("theta uniqueness", pair_instances(2), unique),
        Family("theta identity", pair_instances(1), theta_id),
        Family("theta vertical composition", pair_instances(3), theta_vert),
        Family("theta horizontal composition", composable_instances(), theta_horiz),
        Family("theta unit", pair_instances(1), theta_unit),
        Family("theta satisfies the comparison equation", pair_instances(2), comp_iso),
        Family("theta inverse", pair_instances(2), theta_inverse),
    ]


def adjunction_families(D, tights, choice):
    """Triangle identities for chosen companions against conjoints built from inverses
    (invertible f) or supplied by ``choice.conjoint_rule`` when present."""
    table = list(tights)

    def conjoint_for(f):
        rule = getattr(choice, "conjoint_rule", None)
        if rule is not None:
            return rule(f)
        return choice.conjoint(f)

    def triangles(f):
        p, c = choice(f), conjoint_for(f)
        if not check_conjoint(D, c):
            return "conjoint equations fail"
        unit, counit = adjunction_data(D, p, c)
        first, second = triangle_identities(D, p.fhat, c.fchk, unit, counit)
        if not first:
            return "first triangle identity fails"
        return second or "second triangle identity fails"

    def equivalence(f):
        if D.tight_inverse(f) is None:
            return True
        p, c = choice(f), conjoint_for(f)
        unit, counit = adjunction_data(D, p, c)
        if D.search_inverse(unit) is None:
            return "unit not invertible"
        return D.search_inverse(counit) is not None or "counit not invertible"

    return [
        Family("adjunction triangle identities", _over(table), triangles),
        Family("adjoint equivalence for isomorphisms", _over(table), equivalence),
    ]


def functor_theta_families(F, tights, pairs_of):
    """theta commutes with F, and F's unit constraint is a theta."""
    D, E = F.src, F.dst
    table = [(f, pairs_of(f)) for f in tights]

    def pairs2():
        for i, (f, ps) in enumerate(table):
            for a, b in product(range(len(ps)), repeat=2):
                yield (i, a, b), (ps[a], ps[b])

    def mapped_equations(p):
        return check_companion(E, map_companion(F, p)) or "mapped pair fails the companion equations"

    def func(p, q):
        return _same(E, F.cell(theta(D, p, q)), theta(E, map_companion(F, p), map_companion(F, q)))

    objects = sorted({f.src for f, _ in table} | {f.dst for f, _ in table}, key=repr)

    def fu(A):
        return fu_theta_holds(F, A) or "unit constraint differs from theta"

    return [
        Family(f"{F.name}: mapped companions", lambda: (((i, a), (p,)) for i, (f, ps) in enumerate(table)
                                                        for a, p in enumerate(ps)), mapped_equations),
        Family(f"{F.name}: theta functoriality", pairs2, func),
        Family(f"{F.name}: unit constraint is theta", _over(objects), fu),
    ]


def check_companions(D, tights, pairs_of):
    return run_families(companion_families(D, tights, pairs_of))
