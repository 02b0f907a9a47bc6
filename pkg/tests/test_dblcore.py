import pytest
from hypothesis import given, settings, strategies as st

from dblcat.companion import check_companion, check_conjoint, search_companions
from dblcat.dblcore import (check_double_category, loose_opposite, opposite_universe, windowed_universe)
from dblcat.errors import BoundaryMismatch
from dblcat.finbase import FinFunction, all_functions, compose_functions, ordinal, z2_category
from dblcat.instances.span import (SpanCell, SpanDouble, cograph_conjoint, cograph_span, companion_window,
                                   graph_companion, span, span_universe)
from dblcat.instances.square import square_double

D = SpanDouble()
ONE, TWO = ordinal(1), ordinal(2)


def leg_commuting_maps(M, N, f, g):
    """Oracle: filter every apex function M.apex -> N.apex by the leg equations."""
    out = []
    for m in all_functions(M.apex, N.apex):
        if (compose_functions(N.left, m) == compose_functions(f, M.left)
                and compose_functions(N.right, m) == compose_functions(g, M.right)):
            out.append(m)
    return out


def agreeing_pairs(M, N):
    return [(x, y) for x in M.apex for y in N.apex if M.right(x) == N.left(y)]


# -- checker on instances -------------------------------------------------


def test_squares_double_category_passes():
    Sq = square_double(z2_category())
    report = check_double_category(Sq, Sq.universe())
    assert report.ok, report.summary()


def test_span_double_category_passes_small():
    U = span_universe(D, 2, loose_per_hom=4, cell_size_bound=2, tight_for_cells="ids")
    report = check_double_category(D, U)
    assert report.ok, report.summary()
    assert report["interchange"].instances > 0
    assert report["pentagon"].instances > 0


class SkewedAssociator(SpanDouble):
    """Span with the associator at one triple followed by a non-trivial apex permutation."""

    def __init__(self, target):
        super().__init__(name="Span[skewed]")
        self.target = target

    def _assoc(self, P, N, M):
        cell = super()._assoc(P, N, M)
        if (P, N, M) != self.target:
            return cell
        n = len(cell.bottom.apex)
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        bottom = cell.bottom
        perm = FinFunction(bottom.apex, bottom.apex, swap)
        twist = SpanCell(bottom, bottom, FinFunction.identity(bottom.src),
                         FinFunction.identity(bottom.tgt), perm)
        assert twist.is_valid()
        return self.vcompose(twist, cell)


def test_non_natural_associator_is_witnessed():
    X = span(ONE, ONE, [(0, 0), (0, 0)])
    Dm = SkewedAssociator((X, X, X))
    U = windowed_universe(Dm, [ONE], [FinFunction.identity(ONE)], [Dm.unit(ONE), X], None, "ids")
    report = check_double_category(Dm, U)
    assert not report.ok
    assert not report["associator naturality"].ok
    w = report["associator naturality"].witnesses[0]
    assert report.replay(w) is False


# -- loose composition ----------------------------------------------------


def test_loose_compose_example_and_mismatch():
    M = span(TWO, ONE, [(0, 0), (1, 0)])
    N = span(ONE, ONE, [(0, 0)])
    assert len(D.loose_compose(N, M).apex) == 2
    with pytest.raises(BoundaryMismatch):
        D.loose_compose(M, M)


def test_right_unit_related_by_unitor():
    N = span(TWO, ONE, [(0, 0), (1, 0), (1, 0)])
    top = D.loose_compose(N, D.unit(N.src))
    r = D.runitor(N)
    assert r.top == top and r.bottom == N and r.map.is_bijective()


spans_2 = st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), max_size=3)


@settings(max_examples=60, deadline=None)
@given(spans_2, spans_2)
def test_loose_composite_apex_is_agreeing_pairs(m, n):
    M, N = span(TWO, TWO, m), span(TWO, TWO, n)
    NM = D.loose_compose(N, M)
    assert list(NM.apex) == agreeing_pairs(M, N)
    for (x, y) in NM.apex:
        assert NM.left((x, y)) == M.left(x) and NM.right((x, y)) == N.right(y)


# -- globular cells -------------------------------------------------------


def test_globular_cells_examples():
    assert len(D.globular_cells_between(D.unit(ONE), D.unit(ONE))) == 1
    doubled = span(TWO, TWO, [(0, 0), (1, 1), (0, 0), (1, 1)])
    maps = {c.map.table for c in D.globular_cells_between(doubled, doubled)}
    oracle = {m.table for m in leg_commuting_maps(doubled, doubled, FinFunction.identity(TWO),
                                                  FinFunction.identity(TWO))}
    assert maps == oracle and len(oracle) == 16
    assert (2, 3, 0, 1) in maps
    M = span(TWO, TWO, [(0, 1)])
    N = span(TWO, TWO, [(1, 0), (0, 0)])
    assert D.globular_cells_between(M, N) == []


@settings(max_examples=60, deadline=None)
@given(spans_2, spans_2, st.sampled_from(list(all_functions(TWO, TWO))),
       st.sampled_from(list(all_functions(TWO, TWO))))
def test_cells_between_matches_oracle(m, n, f, g):
    M, N = span(TWO, TWO, m), span(TWO, TWO, n)
    got = [c.map for c in D.cells_between(M, N, f, g)]
    assert got == leg_commuting_maps(M, N, f, g)


# -- interchange and constraints -----------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_interchange_on_random_grids(data):
    U = span_universe(D, 2, loose_per_hom=3, cell_size_bound=2, tight_for_cells="ids")
    grids = list(U.grids())
    i, j, k, m = data.draw(st.sampled_from(grids))
    a1, a2, b1, b2 = (U.cells[x] for x in (i, j, k, m))
    lhs = D.hcompose(D.vcompose(b2, a2), D.vcompose(b1, a1))
    rhs = D.vcompose(D.hcompose(b2, b1), D.hcompose(a2, a1))
    assert D.cell_eq(lhs, rhs)


def test_constraint_cells_have_inverses():
    U = span_universe(D, 2, loose_per_hom=3)
    for M in U.loose:
        for c in (D.lunitor(M), D.runitor(M)):
            inv = D.inverse(c)
            assert D.cell_eq(D.vcompose(inv, c), D.cell_id(c.top))
            assert D.cell_eq(D.vcompose(c, inv), D.cell_id(c.bottom))
    M, N, P = U.loose[:3]
    for triple in [(M, M, M), (N, M, M)]:
        if triple[0].src == triple[1].tgt == triple[1].src == triple[2].tgt:
            a = D.assoc(*triple)
            assert D.cell_eq(D.vcompose(D.inverse(a), a), D.cell_id(a.top))


# -- loose opposite -------------------------------------------------------


def test_loose_opposite_is_an_involution():
    assert loose_opposite(loose_opposite(D)) is D
    Dop = loose_opposite(D)
    A = TWO
    assert Dop.unit(A).base == D.unit(A)


def test_loose_opposite_checker_passes():
    U = span_universe(D, 1, loose_per_hom=3, cell_size_bound=2)
    Dop = loose_opposite(D)
    report = check_double_category(Dop, opposite_universe(Dop, U))
    assert report.ok, report.summary()


def test_companion_in_opposite_is_reversed_graph():
    f = FinFunction(TWO, ONE, [0, 0])
    c = cograph_conjoint(D, f)
    assert c.fchk == cograph_span(f)
    assert check_conjoint(D, c)
    Dop = loose_opposite(D)
    W = companion_window(D, 2)
    found = search_companions(Dop, f, opposite_universe(Dop, W))
    assert found
    for p in found:
        assert p.fhat.base.apex and p.fhat.base.tgt == f.dom and p.fhat.base.src == f.cod
        assert check_companion(Dop, p)
    assert check_companion(D, graph_companion(D, f))
