"""Double functors between the shipped instances."""

from ..dblcore import DoubleFunctor
from ..finbase import FinFunction, FinSet
from ..mondbl import MonoidalDoubleFunctor
from .mat import MatCell, Matrix


def relation_of_span(Q, M):
    """The Q-matrix recording which (a, b) are joined by some apex element."""
    rows = [[Q.bottom] * len(M.tgt) for _ in M.src]
    for x in range(len(M.apex)):
        rows[M.left.table[x]][M.right.table[x]] = Q.unit
    return Matrix(M.src, M.tgt, rows)


def span_to_mat(S, Mt):
    """Span -> Mat(Bool): a span goes to the relation it jointly picks out.

    Strict on composition and units (relational composite = image of the
    pullback), strong monoidal with identity comparisons.
    """
    D, E = S.base, Mt.base
    Q = E.Q

    def loose(M):
        return relation_of_span(Q, M)

    def cell(a):
        return E.cell(loose(a.top), loose(a.bottom), a.left, a.right)

    def comp(N, M):
        top = E.loose_compose(loose(N), loose(M))
        return E.cell(top, loose(D.loose_compose(N, M)), FinFunction.identity(M.src),
                      FinFunction.identity(N.tgt))

    def unit(A):
        return E.cell(E.unit(A), loose(D.unit(A)), FinFunction.identity(A), FinFunction.identity(A))

    F = DoubleFunctor(D, E, lambda A: A, lambda f: f, loose, cell, comp, unit, name="Rel")

    def phi(A, B):
        return FinFunction.identity(S.tensor(A, B))

    def phi_cell(M, N):
        top = Mt.tensor_loose(loose(M), loose(N))
        return E.cell(top, loose(S.tensor_loose(M, N)), phi(M.src, N.src), phi(M.tgt, N.tgt))

    I = S.unit_object
    return MonoidalDoubleFunctor(F, S, Mt, phi, phi_cell, FinFunction.identity(I),
                                 E.cell(Mt.unit_loose, loose(S.unit_loose), FinFunction.identity(I),
                                        FinFunction.identity(I)),
                                 laxity="strong", name="Rel")


STAR = "*"


def maybe_functor(Mt):
    """A lax, not strong, monoidal endofunctor of Mat(Q): adjoin a point ``*``.

    F(A) = A + {*}; F(M) is M with the new corner entry set to the unit; the
    comparison FA x FB -> F(A x B) keeps pairs of old points and sends
    everything else to ``*``.  Strict as a double functor.  Because the
    comparison is not a bijection its lifted 2-cells are not invertible,
    which is what makes it a useful negative fixture.
    """
    E = Mt.base
    Q = E.Q

    def obj(A):
        return FinSet(list(A) + [STAR])

    def tight(f):
        n = len(f.cod)
        return FinFunction(obj(f.dom), obj(f.cod), list(f.table) + [n])

    def loose(M):
        rows = [list(r) + [Q.bottom] for r in M.rows]
        rows.append([Q.bottom] * len(M.tgt) + [Q.unit])
        return Matrix(obj(M.src), obj(M.tgt), rows)

    def cell(a):
        return MatCell(loose(a.top), loose(a.bottom), tight(a.left), tight(a.right))

    def comp(N, M):
        top = E.loose_compose(loose(N), loose(M))
        return E.cell(top, loose(E.loose_compose(N, M)), FinFunction.identity(top.src),
                      FinFunction.identity(top.tgt))

    def unit(A):
        return E.cell(E.unit(obj(A)), loose(E.unit(A)), FinFunction.identity(obj(A)),
                      FinFunction.identity(obj(A)))

    F = DoubleFunctor(E, E, obj, tight, loose, cell, comp, unit, name="Maybe")

    def phi(A, B):
        src = Mt.tensor(obj(A), obj(B))
        dst = obj(Mt.tensor(A, B))
        return FinFunction.from_labels(src, dst, lambda p: p if STAR not in p else STAR)

    def phi_cell(M, N):
        return E.cell(Mt.tensor_loose(loose(M), loose(N)), loose(Mt.tensor_loose(M, N)),
                      phi(M.src, N.src), phi(M.tgt, N.tgt))

    I = Mt.unit_object
    phi_unit = FinFunction(I, obj(I), [0])
    phi_unit_cell = E.cell(Mt.unit_loose, loose(Mt.unit_loose), phi_unit, phi_unit)
    return MonoidalDoubleFunctor(F, Mt, Mt, phi, phi_cell, phi_unit, phi_unit_cell,
                                 laxity="lax", name="Maybe")
