import pytest

from dblcat.companion import (CompanionPair, adjunction_data, check_adjunction, check_companion,
                              check_conjoint, compose_companions, conjoint_of_inverse, identity_companion,
                              identity_conjoint, is_adjoint_equivalence, map_companion, search_companions,
                              theta, transport_companion, triangle_identities)
from dblcat.dblcore import identity_functor
from dblcat.errors import BoundaryMismatch, MismatchedTight, NotInvertible
from dblcat.finbase import FinFunction, FinSet, all_functions, compose_functions, ordinal, z2_category
from dblcat.instances.functors import span_to_mat
from dblcat.instances.mat import boolean_quantale, char_companion, mat_quantale
from dblcat.instances.span import (Span, SpanCell, SpanDouble, cograph_conjoint, cograph_span,
                                   companion_window, graph_companion, graph_span, span_finset)
from dblcat.instances.square import square_double
from dblcat.instances.table import table_from_rules

D = SpanDouble()
ONE, TWO = ordinal(1), ordinal(2)
SWAP = FinFunction(TWO, TWO, [1, 0])
COLLAPSE = FinFunction(TWO, ONE, [0, 0])


def apex_maps_satisfying_comparison(p, q):
    """Oracle: every apex map p.fhat -> q.fhat commuting with the legs with
    eps_q . m . eta_p = f, computed on apex tables directly."""
    M, N = p.fhat, q.fhat
    out = []
    for m in all_functions(M.apex, N.apex):
        if compose_functions(N.left, m) != M.left or compose_functions(N.right, m) != M.right:
            continue
        composite = compose_functions(q.eps.map, compose_functions(m, p.eta.map))
        if composite == p.f:
            out.append(m)
    return out


def relabelled(p):
    G = p.fhat
    apex = FinSet(("x", a) for a in reversed(list(G.apex)))
    n = len(G.apex)
    order = list(reversed(range(n)))
    M = Span(apex, FinFunction(apex, G.src, [G.left.table[i] for i in order]),
             FinFunction(apex, G.tgt, [G.right.table[i] for i in order]))
    iso = SpanCell(G, M, FinFunction.identity(G.src), FinFunction.identity(G.tgt),
                   FinFunction(G.apex, apex, [n - 1 - i for i in range(n)]))
    return transport_companion(D, p, iso), iso


# -- check_companion ------------------------------------------------------


def test_unit_pair_is_a_companion_of_identity():
    for A in (ONE, TWO):
        assert check_companion(D, identity_companion(D, A))


def test_graph_span_companion_binding_cells_are_forced():
    for f in [COLLAPSE, SWAP, FinFunction(TWO, TWO, [0, 0])]:
        p = graph_companion(D, f)
        assert check_companion(D, p)
        A, B = f.dom, f.cod
        etas = D.cells_between(D.unit(A), p.fhat, FinFunction.identity(A), f)
        epss = D.cells_between(p.fhat, D.unit(B), f, FinFunction.identity(B))
        assert etas == [p.eta] and epss == [p.eps]


def test_mutating_binding_cells_breaks_the_equations():
    f = FinFunction(TWO, TWO, [0, 0])
    p = graph_companion(D, f)
    M = Span(FinSet([0, 1, 2]), FinFunction(FinSet([0, 1, 2]), TWO, [0, 1, 1]),
             FinFunction(FinSet([0, 1, 2]), TWO, [0, 0, 0]))
    candidates = [CompanionPair(f, M, eta, eps)
                  for eta in D.cells_between(D.unit(TWO), M, FinFunction.identity(TWO), f)
                  for eps in D.cells_between(M, D.unit(TWO), f, FinFunction.identity(TWO))]
    assert candidates
    assert not any(check_companion(D, c) for c in candidates)
    assert check_companion(D, p)


def test_malformed_pair_raises():
    p = graph_companion(D, COLLAPSE)
    with pytest.raises(BoundaryMismatch):
        check_companion(D, CompanionPair(SWAP, p.fhat, p.eta, p.eps))


# -- search_companions ----------------------------------------------------


def test_square_identity_has_unit_companion():
    Sq = square_double(z2_category())
    U = Sq.universe()
    for A in Sq.objects:
        f = Sq.tight_id(A)
        found = search_companions(Sq, f, U)
        assert any(p.fhat == Sq.unit(A) for p in found)


def test_every_span_function_has_graph_like_companions():
    W = companion_window(D, 2)
    for f in W.tight:
        found = search_companions(D, f, W)
        assert found
        for p in found:
            assert len(p.fhat.apex) == len(f.dom)
            iso = [c for c in D.globular_cells_between(graph_span(f), p.fhat) if c.map.is_bijective()]
            assert iso


def test_table_without_loose_cells_has_no_companion():
    T = table_from_rules(["a", "b"],
                         ({"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b")}, {"a": "1a", "b": "1b"},
                          lambda g, f: f if g.startswith("1") else g),
                         ({"Ua": ("a", "a"), "Ub": ("b", "b")}, {"a": "Ua", "b": "Ub"},
                          lambda N, M: M),
                         [("Ua", "Ua", "1a", "1a"), ("Ub", "Ub", "1b", "1b"), ("Ua", "Ub", "f", "f")])
    assert search_companions(T, T.tight_cell("f"), T.universe()) == []
    assert search_companions(T, T.tight_cell("1a"), T.universe())


# -- theta ----------------------------------------------------------------


def test_theta_of_a_pair_with_itself_is_identity():
    p = graph_companion(D, COLLAPSE)
    assert theta(D, p, p) == D.cell_id(p.fhat)


def test_theta_between_relabelled_companions_is_the_relabelling():
    p = graph_companion(D, FinFunction.identity(TWO))
    q, iso = relabelled(p)
    assert check_companion(D, q)
    oracle = apex_maps_satisfying_comparison(p, q)
    assert len(oracle) == 1
    t = theta(D, p, q)
    assert t.map == oracle[0] == iso.map
    assert t.map.table == (1, 0)


def test_theta_rejects_companions_of_different_cells():
    with pytest.raises(MismatchedTight):
        theta(D, graph_companion(D, SWAP), graph_companion(D, FinFunction.identity(TWO)))


# -- identity and composite companions -----------------------------------


def test_identity_companion_in_span():
    p = identity_companion(D, TWO)
    assert check_companion(D, p)
    assert p.fhat.apex == TWO
    assert p.fhat.left == p.fhat.right == FinFunction.identity(TWO)
    assert theta(D, p, p) == D.cell_id(p.fhat)


def test_composing_with_identity_companion_gives_unitor_theta():
    p = graph_companion(D, COLLAPSE)
    right = compose_companions(D, identity_companion(D, TWO), p)
    assert check_companion(D, right)
    assert theta(D, p, right) == D.inverse(D.runitor(p.fhat))


def test_composite_of_graph_spans_is_graph_of_composite_up_to_theta():
    f = FinFunction(TWO, TWO, [1, 1])
    g = FinFunction(TWO, ONE, [0, 0])
    pq = compose_companions(D, graph_companion(D, f), graph_companion(D, g))
    r = graph_companion(D, compose_functions(g, f))
    assert check_companion(D, pq)
    # oracle: the pullback apex pairs (x, f(x)) biject with the graph apex
    assert sorted(pq.fhat.apex) == sorted((x, f(x)) for x in TWO)
    t = theta(D, r, pq)
    assert t.map.is_bijective()
    assert [pq.fhat.apex[i] for i in t.map.table] == [(x, f(x)) for x in TWO]
    with pytest.raises(BoundaryMismatch):
        compose_companions(D, graph_companion(D, g), graph_companion(D, g))


# -- mapped companions ----------------------------------------------------


def test_identity_functor_leaves_pairs_alone():
    p = graph_companion(D, SWAP)
    q = map_companion(identity_functor(D), p)
    assert (q.f, q.fhat) == (p.f, p.fhat)
    assert D.cell_eq(q.eta, p.eta) and D.cell_eq(q.eps, p.eps)


def test_span_to_mat_sends_graph_to_characteristic_matrix():
    S = span_finset(2)
    Mt = mat_quantale(boolean_quantale(), 2)
    Phi = span_to_mat(S, Mt)
    E = Mt.base
    for f in [SWAP, COLLAPSE, FinFunction(TWO, TWO, [0, 0])]:
        mapped = map_companion(Phi.functor, graph_companion(S.base, f))
        assert check_companion(E, mapped)
        expected = char_companion(E, f).fhat
        assert mapped.fhat == expected
        Q = E.Q
        for i, a in enumerate(f.dom):
            for j, b in enumerate(f.cod):
                assert expected.rows[i][j] == (Q.unit if f(a) == b else Q.bottom)


def test_theta_commutes_with_span_to_mat():
    S = span_finset(2)
    Phi = span_to_mat(S, mat_quantale(boolean_quantale(), 2)).functor
    p = graph_companion(D, FinFunction.identity(TWO))
    q, _ = relabelled(p)
    lhs = Phi.cell(theta(D, p, q))
    rhs = theta(Phi.dst, map_companion(Phi, p), map_companion(Phi, q))
    assert Phi.dst.cell_eq(lhs, rhs)


# -- conjoints and adjunctions -------------------------------------------


def test_conjoint_of_identity_is_unit():
    c = conjoint_of_inverse(D, identity_companion(D, TWO))
    assert c.fchk == D.unit(TWO)
    assert check_conjoint(D, c)


def test_conjoint_of_swap_is_reversed_graph():
    c = conjoint_of_inverse(D, graph_companion(D, SWAP))
    assert check_conjoint(D, c)
    assert c.f == SWAP.inverse()
    # reversed graph of the inverse: legs (f^-1, 1) read backwards
    rev = cograph_span(SWAP)
    assert {(c.fchk.left(x), c.fchk.right(x)) for x in c.fchk.apex} == \
           {(rev.right(x), rev.left(x)) for x in rev.apex}
    with pytest.raises(NotInvertible):
        conjoint_of_inverse(D, graph_companion(D, COLLAPSE))


def test_identity_adjunction_is_trivial():
    p, c = identity_companion(D, TWO), identity_conjoint(D, TWO)
    unit, counit = adjunction_data(D, p, c)
    U = D.unit(TWO)
    assert unit.top == U and counit.bottom == U
    assert all(triangle_identities(D, p.fhat, c.fchk, unit, counit))


def test_swap_adjunction_is_an_equivalence():
    p = graph_companion(D, SWAP)
    c = cograph_conjoint(D, SWAP)
    assert check_adjunction(D, p, c)
    assert is_adjoint_equivalence(D, p, c)


def test_collapse_adjunction_has_non_invertible_unit():
    p = graph_companion(D, COLLAPSE)
    c = cograph_conjoint(D, COLLAPSE)
    assert check_adjunction(D, p, c)
    unit, counit = adjunction_data(D, p, c)
    assert D.search_inverse(unit) is None
    assert not is_adjoint_equivalence(D, p, c)
