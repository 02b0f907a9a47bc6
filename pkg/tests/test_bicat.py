import pytest

from dblcat.bicat import (Icon, Pseudofunctor, TransformationBicategory, check_adjoint_equivalence,
                          check_bicategory, check_icon, check_modification, check_pseudofunctor,
                          check_transformation, compose_icons, compose_pseudofunctors,
                          compose_transformations, identity_icon, identity_pseudofunctor,
                          identity_transformation, loose_bicategory, loose_window)
from dblcat.cellexpr import CellEnv, boundary, eval_cell_expr, parse_cell_expr
from dblcat.errors import BoundaryError, ParseError
from dblcat.finbase import ordinal, z2_category
from dblcat.instances.span import SpanDouble, span, span_universe
from dblcat.instances.square import square_double
from dblcat.mutation import corrupting_cell

D = SpanDouble()
H = loose_bicategory(D)
W = loose_window(D, span_universe(D, 1, loose_per_hom=3, cell_size_bound=2))
ONE, TWO = ordinal(1), ordinal(2)
DOUBLED = span(ONE, ONE, [(0, 0), (0, 0)])


def twisted(cell):
    """``cell`` followed by a non-identity endo-cell of its bottom."""
    return D.vcompose(corrupting_cell(D, cell, globular_only=True), cell)


def all_witnesses_replay(report):
    return all(report.replay(w) is False for c in report.failed() for w in c.witnesses)


# -- bicategories ---------------------------------------------------------


def test_loose_bicategories_pass():
    Sq = square_double(z2_category())
    assert check_bicategory(loose_bicategory(Sq), loose_window(Sq, Sq.universe())).ok
    report = check_bicategory(H, W)
    assert report.ok, report.summary()
    assert DOUBLED in W.ones


# -- pseudofunctors -------------------------------------------------------


def test_identity_pseudofunctor_and_its_square_pass():
    P = identity_pseudofunctor(H)
    assert check_pseudofunctor(P, W).ok
    assert check_pseudofunctor(compose_pseudofunctors(P, P), W).ok


def test_corrupted_composition_constraint_is_witnessed():
    P = identity_pseudofunctor(H)

    def comp(N, M):
        c = H.cell_id(H.compose(N, M))
        return twisted(c) if (N, M) == (DOUBLED, DOUBLED) else c

    bad = Pseudofunctor(H, H, P.obj, P.one, P.two, comp, P.unit, name="bad")
    report = check_pseudofunctor(bad, W)
    assert not report.ok
    assert "hexagon" in {c.name for c in report.failed()}
    assert all_witnesses_replay(report)


# -- transformations, icons, modifications -------------------------------


def test_identity_transformation_and_composite_are_pseudo():
    a = identity_transformation(identity_pseudofunctor(H))
    assert check_transformation(a, W, "pseudo").ok
    assert check_transformation(compose_transformations(a, a), W, "pseudo").ok


def test_identity_icon_and_composite_pass():
    i = identity_icon(identity_pseudofunctor(H))
    assert check_icon(i, W).ok
    assert check_icon(compose_icons(i, i), W).ok


def test_twisted_icon_component_fails():
    P = identity_pseudofunctor(H)
    bad = Icon(P, P, lambda M: twisted(H.cell_id(M)) if M == DOUBLED else H.cell_id(M))
    report = check_icon(bad, W)
    assert {"respects composition", "naturality"} <= {c.name for c in report.failed()}
    assert all_witnesses_replay(report)


def test_identity_modification_with_inverse():
    a = identity_transformation(identity_pseudofunctor(H))
    TB = TransformationBicategory(H, W.objects)
    m = TB.cell_id(a)
    report = check_modification(m, W, inverse=m)
    assert report.ok, report.summary()


def test_unit_one_cell_is_an_adjoint_equivalence():
    u = H.unit(ONE)
    report = check_adjoint_equivalence(H, u, u, H.inverse(H.lunitor(u)), H.lunitor(u))
    assert report.ok, report.summary()


# -- cell expressions -----------------------------------------------------


def test_cell_expression_boundaries():
    env = CellEnv({"M": DOUBLED})
    top, bottom = boundary(H, parse_cell_expr("v(l(M), inv(l(M)))"), env)
    assert top == bottom == DOUBLED
    cell = eval_cell_expr(H, parse_cell_expr("wr(i(M), u(X))"), CellEnv({"M": DOUBLED, "X": ONE}))
    assert cell.top == H.compose(DOUBLED, H.unit(ONE))


def test_mismatched_horizontal_composite_raises():
    env = CellEnv({"M": DOUBLED, "N": span(TWO, TWO, [(0, 0)])})
    with pytest.raises(BoundaryError):
        eval_cell_expr(H, parse_cell_expr("h(i(M), i(N))"), env)
    with pytest.raises(BoundaryError):
        eval_cell_expr(H, parse_cell_expr("i(Q)"), env)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_cell_expr("v(a, b")
    assert (info.value.line, info.value.column) == (1, 7)
    with pytest.raises(ParseError):
        parse_cell_expr("v(a) b")
