from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dblcat.errors import BoundaryMismatch, DuplicateLabel
from dblcat.finbase import (FinCategory, FinFunction, FinSet, all_functions, canonical_finset,
                            check_category, coequalizer, compose_functions, factor_through, ordinal,
                            pullback, z2_category)


def fn(dom, cod, table):
    return FinFunction(ordinal(dom) if isinstance(dom, int) else dom,
                       ordinal(cod) if isinstance(cod, int) else cod, table)


@st.composite
def functions(draw, dom=None, cod=None, max_size=3):
    n = draw(st.integers(0, max_size)) if dom is None else len(dom)
    m = draw(st.integers(1, max_size)) if cod is None else len(cod)
    if n and not m:
        m = 1
    table = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)) if m else []
    return FinFunction(dom or ordinal(n), cod or ordinal(m), table)


# -- oracles --------------------------------------------------------------


def pullback_pairs(f, g):
    """Agreeing pairs by direct enumeration."""
    return {(x, y) for x in f.dom for y in g.dom if f(x) == g(y)}


def kernel_partition(f, g):
    """The equivalence on Y generated by f(x) ~ g(x): merge blocks until nothing changes."""
    blocks = [{y} for y in f.cod]
    changed = True
    while changed:
        changed = False
        for x in f.dom:
            a = next(b for b in blocks if f(x) in b)
            c = next(b for b in blocks if g(x) in b)
            if a is not c:
                a |= c
                blocks.remove(c)
                changed = True
    return {frozenset(b) for b in blocks}


# -- canonical_finset -----------------------------------------------------


def test_canonical_finset_examples():
    assert len(canonical_finset(["0", "1"])) == 2
    assert len(canonical_finset([])) == 0
    with pytest.raises(DuplicateLabel):
        canonical_finset(["a", "a"])


# -- compose_functions ----------------------------------------------------


def test_compose_identity_and_constant():
    f = fn(2, 1, [0, 0])
    assert compose_functions(FinFunction.identity(f.cod), f) == f
    g = fn(1, 2, [1])
    gf = compose_functions(g, f)
    assert [gf(x) for x in gf.dom] == [1, 1]
    with pytest.raises(BoundaryMismatch):
        compose_functions(f, f)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_composition_associative_and_unital(data):
    A, B, C, E = (ordinal(data.draw(st.integers(1, 3))) for _ in range(4))
    f = data.draw(functions(A, B))
    g = data.draw(functions(B, C))
    h = data.draw(functions(C, E))
    assert compose_functions(h, compose_functions(g, f)) == compose_functions(compose_functions(h, g), f)
    assert compose_functions(f, FinFunction.identity(A)) == f
    assert compose_functions(FinFunction.identity(B), f) == f
    for x in A:
        assert compose_functions(g, f)(x) == g(f(x))


def test_composition_laws_exhaustive_small():
    sets = [ordinal(n) for n in range(3)]
    for A, B, C in product(sets, repeat=3):
        for f in all_functions(A, B):
            for g in all_functions(B, C):
                gf = compose_functions(g, f)
                assert all(gf(x) == g(f(x)) for x in A)


# -- pullback -------------------------------------------------------------


def test_pullback_examples():
    f, g = fn(2, 1, [0, 0]), fn(1, 1, [0])
    apex, p, q = pullback(f, g)
    assert set(apex) == {(0, 0), (1, 0)} and len(apex) == 2
    h = fn(3, 2, [1, 0, 1])
    apex, p, q = pullback(h, FinFunction.identity(h.cod))
    assert p.is_bijective()
    assert [q(a) for a in apex] == [h(p(a)) for a in apex]
    apex, _, _ = pullback(fn(2, 3, [0, 0]), fn(1, 3, [2]))
    assert len(apex) == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pullback_matches_oracle_and_is_deterministic(data):
    Z = ordinal(data.draw(st.integers(1, 3)))
    f = data.draw(functions(cod=Z))
    g = data.draw(functions(cod=Z))
    apex, p, q = pullback(f, g)
    assert set(apex) == pullback_pairs(f, g)
    assert all(f(p(a)) == g(q(a)) for a in apex)
    assert pullback(f, g) == (apex, p, q)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_pullback_universal_property(data):
    Z = ordinal(data.draw(st.integers(1, 2)))
    f = data.draw(functions(cod=Z, max_size=2))
    g = data.draw(functions(cod=Z, max_size=2))
    apex, p, q = pullback(f, g)
    for n in range(3):
        W = ordinal(n)
        for h in all_functions(W, f.dom):
            for k in all_functions(W, g.dom):
                if compose_functions(f, h) != compose_functions(g, k):
                    continue
                mediating = [u for u in all_functions(W, apex)
                             if compose_functions(p, u) == h and compose_functions(q, u) == k]
                assert len(mediating) == 1


# -- coequalizer ----------------------------------------------------------


def test_coequalizer_examples():
    f = fn(2, 3, [0, 2])
    Q, q = coequalizer(f, f)
    assert q.is_bijective()
    Q, q = coequalizer(fn(1, 2, [0]), fn(1, 2, [1]))
    assert len(Q) == 1
    Q, q = coequalizer(fn(2, 3, [0, 1]), fn(2, 3, [1, 2]))
    assert list(Q) == [0]


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_coequalizer_universal_property(data):
    X = ordinal(data.draw(st.integers(0, 3)))
    Y = ordinal(data.draw(st.integers(1, 4)))
    f = data.draw(functions(X, Y))
    g = data.draw(functions(X, Y))
    Q, q = coequalizer(f, g)
    classes = {}
    for y in Y:
        classes.setdefault(q(y), set()).add(y)
    assert {frozenset(c) for c in classes.values()} == kernel_partition(f, g)
    assert compose_functions(q, f) == compose_functions(q, g)
    for T in (ordinal(1), ordinal(2)):
        for h in all_functions(Y, T):
            coequalizes = compose_functions(h, f) == compose_functions(h, g)
            us = [u for u in all_functions(Q, T) if compose_functions(u, q) == h]
            assert len(us) == (1 if coequalizes else 0)
            assert (factor_through(q, h) is not None) == coequalizes


# -- finite categories ----------------------------------------------------


def test_check_category_examples():
    assert check_category(FinCategory.terminal()).ok
    report = check_category(z2_category())
    assert report.ok
    assert report["associativity"].instances == 8


def test_check_category_corrupted_composite_is_witnessed():
    C = FinCategory.from_monoid([0, 1, 2], lambda g, f: (g + f) % 3, 0, name="Z3")
    assert check_category(C).ok
    C.comp[(1, 1)] = 0
    report = check_category(C)
    assert report.failed() and report.failed()[0].name == "associativity"
    witnesses = report["associativity"].witnesses
    assert any(w.key[:2] == (1, 1) or w.key[1:] == (1, 1) for w in witnesses)
    assert all(report.replay(w) is False for w in witnesses)


def test_finset_order_matters_for_equality():
    assert FinSet([0, 1]) != FinSet([1, 0])
    assert FinSet([0, 1]) == FinSet((0, 1))
