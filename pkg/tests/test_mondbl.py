import copy

from dblcat.dblcore import TightTransformation, product_universe, windowed_universe
from dblcat.finbase import FinFunction, ordinal
from dblcat.instances.functors import maybe_functor
from dblcat.instances.mat import boolean_quantale, mat_quantale
from dblcat.instances.span import span_finset
from dblcat.mondbl import (MonoidalTightTransformation, braiding_monoidal_transformation,
                           check_monoidal_double_category, check_monoidal_double_functor,
                           check_monoidal_tight_transformation, identity_monoidal_functor,
                           middle_four, monoidal_families, monoidal_functor_families,
                           tensor_monoidal_functor)
from dblcat.mutation import first_failure, mutate, mutation_sites
from dblcat.report import run_families

TWO = ordinal(2)
SWAP = FinFunction(TWO, TWO, [1, 0])

STRONG_FAMILIES = {"strong: tight comparison invertible", "strong: comparison cells invertible",
                   "strong: unit comparison invertible"}


def pair_window(S):
    """Both factors restricted to the 2-element set, its identity and swap."""
    D = S.base
    U = windowed_universe(D, [TWO], [D.tight_id(TWO), SWAP], [D.unit(TWO)], 2, "all")
    return product_universe([U, U])


# -- monoidal double categories ------------------------------------------


def test_span_size_one_is_symmetric_monoidal():
    S = span_finset(1)
    U = S.universe(loose_per_hom=2, cell_size_bound=1)
    report = check_monoidal_double_category(S, U, "symmetric")
    assert report.ok, report.summary()
    assert report["tight braiding self-inverse"].instances == len(U.objects) ** 2


def test_corrupted_interchange_is_witnessed_and_replays():
    S = span_finset(1)
    U = S.universe(loose_per_hom=2, cell_size_bound=1)
    sites = [s for s in mutation_sites(S, U) if s[0] == "interchange"]
    assert sites
    method, args = sites[0]
    mutant = mutate(S, method, args)
    assert mutant is not None and mutant.interchange(*args) != S.interchange(*args)
    fam, key, _ = first_failure(monoidal_families(mutant, U))
    assert fam.replay(key) is False
    assert first_failure(monoidal_families(S, U)) is None


# -- monoidal double functors --------------------------------------------


def test_identity_monoidal_functor_passes():
    S = span_finset(1)
    report = check_monoidal_double_functor(identity_monoidal_functor(S),
                                           S.universe(loose_per_hom=2, cell_size_bound=1))
    assert report.ok, report.summary()


def test_tensor_is_strong_monoidal_both_ways_round():
    S = span_finset(2)
    UU = pair_window(S)
    for swapped in (False, True):
        report = check_monoidal_double_functor(tensor_monoidal_functor(S, swapped), UU)
        assert report.ok, report.summary()


def test_middle_four_on_two_element_sets():
    S = span_finset(2)
    A = B = C = E = TWO
    m = middle_four(S, A, B, C, E)
    # ((a, b), (c, e)) goes to ((a, c), (b, e))
    for x in m.src:
        (a, b), (c, e) = x
        assert m(x) == ((a, c), (b, e))


def test_lax_functor_is_not_strong():
    Mt = mat_quantale(boolean_quantale(), 1)
    W = Mt.universe(loose_per_hom=2, cell_size_bound=1)
    Phi = maybe_functor(Mt)
    assert Phi.laxity == "lax"
    report = check_monoidal_double_functor(Phi, W)
    assert report.ok, report.summary()
    tagged = copy.copy(Phi)
    tagged.laxity = "strong"
    report = run_families(monoidal_functor_families(tagged, W))
    assert {c.name for c in report.failed()} == STRONG_FAMILIES


# -- monoidal tight transformations --------------------------------------


def test_braiding_is_a_monoidal_transformation():
    S = span_finset(2)
    report = check_monoidal_tight_transformation(braiding_monoidal_transformation(S), pair_window(S))
    assert report.ok, report.summary()


def test_identity_components_in_place_of_braiding_fail():
    S = span_finset(2)
    mt = braiding_monoidal_transformation(S)
    a = mt.transformation
    bad = TightTransformation(a.src, a.dst, lambda AB: S.base.tight_id(S.tensor(*AB)), a.loose, name="bad")
    report = check_monoidal_tight_transformation(MonoidalTightTransformation(bad, mt.src, mt.dst),
                                                 pair_window(S))
    assert not report.ok
    assert "transformation: tight naturality" in {c.name for c in report.failed()}
    for check in report.failed():
        for w in check.witnesses:
            assert report.replay(w) is False
