from dblcat.bicat import (Modification, check_icon, check_modification, check_pseudofunctor, loose_window)
from dblcat.dblcore import ProdLoose, identity_functor, identity_transformation
from dblcat.finbase import ordinal
from dblcat.fixture import load_fixture, shipped_fixture_dir
from dblcat.instances.span import (graph_choice, relabelled_choice, span, span_finset, span_objects,
                                   span_universe)
from dblcat.lift import (LiftWindow, TightPath, compare_companion_choices, is_loosely_strong,
                         lift_double_functor, lift_monoidal, lift_monoidal_transformation, path_window,
                         tight_path, verify_lifted)
from dblcat.mondbl import braiding_monoidal_transformation, constraint_transformation
from dblcat.mutation import corrupting_cell

S = span_finset(2)
D = S.base
ONE, TWO = ordinal(1), ordinal(2)
DOUBLED = span(ONE, ONE, [(0, 0), (0, 0)])


def small_window():
    return LiftWindow(D, span_objects(1)[1:] + [TWO], [D.unit(TWO), DOUBLED], max_objects=4, max_ones=6)


def test_lifted_identity_functor_is_a_pseudofunctor():
    W = loose_window(D, span_universe(D, 1, loose_per_hom=3, cell_size_bound=2))
    assert check_pseudofunctor(lift_double_functor(identity_functor(D)), W).ok
    assert is_loosely_strong(identity_transformation(identity_functor(D)), graph_choice(D), W)


def test_icons_between_three_choices_compose():
    c1, c2, c3 = graph_choice(D), relabelled_choice(D), relabelled_choice(D, tag="''")
    a = constraint_transformation(S, "assoc")
    objects = small_window().arity(3).objects
    i12 = compare_companion_choices(c1, c2, objects)
    i23 = compare_companion_choices(c2, c3, objects)
    i13 = compare_companion_choices(c1, c3, objects)
    paths = [tight_path(a), TightPath(a.src, a.src)]
    PW = path_window(paths, [a.src, a.dst])
    for icon in (i12, i23, i13):
        assert check_icon(icon, PW).ok
    for p in paths:
        for A in objects:
            via_middle = D.vcompose(i23.cell(p).comp(A), i12.cell(p).comp(A))
            assert D.cell_eq(via_middle, i13.cell(p).comp(A))
    # relabelling twice in different ways is not the identity comparison
    assert any(not D.cell_eq(i12.cell(paths[0]).comp(A), i13.cell(paths[0]).comp(A)) for A in objects)


def test_pentagonator_passes_and_cannot_be_twisted():
    data = lift_monoidal(S, graph_choice(D), "symmetric")
    pi = data.pent
    W = small_window().arity(pi.arity)
    assert check_modification(pi.cell, W, inverse=pi.inverse).ok
    # components run between companions, whose globular endo-cells are identities
    assert all(corrupting_cell(D, pi.cell.comp(As), globular_only=True) is None for As in W.objects)


def test_pentagonator_with_identity_components_fails():
    data = lift_monoidal(S, graph_choice(D), "symmetric")
    m = data.pent.cell
    W = small_window().arity(data.pent.arity)
    bad = Modification(m.top, m.bottom, lambda As: D.cell_id(m.comp(As).top), name="bad pi")
    report = check_modification(bad, W)
    assert "component boundary" in {c.name for c in report.failed()}
    assert all(report.replay(w) is False for c in report.failed() for w in c.witnesses)


def test_braiding_lifts_to_a_pseudo_transformation():
    mt = braiding_monoidal_transformation(S)
    objs = [(ONE, TWO), (TWO, TWO)]
    ones = [ProdLoose((D.unit(A), D.unit(B))) for A, B in objs] + [ProdLoose((DOUBLED, D.unit(TWO)))]
    data = lift_monoidal_transformation(mt, graph_choice(D), window=LiftWindow(D, objs, ones))
    assert data.report.ok, data.report.summary()
    assert data.report["Pi is the canonical comparison"].instances == len(objs) ** 2


def test_shipped_fixtures_hold():
    data = lift_monoidal(S, graph_choice(D), "symmetric")
    fixtures = [load_fixture(shipped_fixture_dir() / n) for n in ("rho.fix", "braid.fix", "pent.fix")]
    report = verify_lifted(data, None, fixtures)
    assert report.ok, report.summary()
    assert [c.instances for c in report.checks] == [1, 1, 1]
