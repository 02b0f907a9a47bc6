"""Acceptance criteria 1-9, one test each.

``pytest tests/test_acceptance.py`` prints a ``criterion N: PASS|FAIL`` line per
criterion in the terminal summary (see conftest.py).  Running this file
directly prints the same lines.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from dblcat.bicat import (check_adjoint_equivalence, check_icon, check_modification,
                          check_pseudofunctor, check_transformation, TransformationBicategory)
from dblcat.companion import (adjunction_families, companion_families, functor_theta_families,
                              product_companion, search_companions)
from dblcat.dblcore import ProdTight, check_double_category, inverse_transformation
from dblcat.errors import NotLooselyStrong
from dblcat.finbase import z2_category
from dblcat.fixture import load_fixture, shipped_fixture_dir
from dblcat.instances.alg import AlgDouble, alg_construction, oracle_agreement_families, sample_bimodule_pairs
from dblcat.instances.functors import maybe_functor, span_to_mat
from dblcat.instances.mat import boolean_quantale, char_choice, mat_objects, mat_quantale, mat_universe
from dblcat.instances.span import (companion_window, graph_choice, relabelled_choice, span_finset,
                                   span_loose_sample, span_objects, span_universe)
from dblcat.instances.square import square_double
from dblcat.lift import (LiftWindow, TightPath, compare_companion_choices, lift_monoidal,
                         lift_monoidal_functor, monoidal_functor_lift_families, path_window,
                         tight_path, verify_lifted)
from dblcat.mondbl import (check_monoidal_double_category, check_monoidal_double_functor,
                           constraint_transformation)
from dblcat.mutation import run_mutation_harness
from dblcat.report import run_families

CRITERION_SECONDS = 60


def span_lift_window(D, size=2):
    objs = span_objects(size)[1:]
    ones = [M for A in objs for B in objs for M in span_loose_sample(D, A, B, 1, 2)]
    return LiftWindow(D, objs, ones, [D.cell_id(M) for M in ones], max_objects=8, max_ones=30,
                      max_twos=12)


def assert_ok(report):
    assert report.ok, report.summary()


# -- 1 ------------------------------------------------------------------------


def _timed_double(D, U):
    start = time.perf_counter()
    report = check_double_category(D, U)
    return report, time.perf_counter() - start


def test_criterion_1_double_category_checker():
    Ds = span_finset(3).base
    Dm = mat_quantale(boolean_quantale(), 3).base
    Dq = square_double(z2_category())
    cases = [
        (Ds, span_universe(Ds, 3, loose_per_hom=4, cell_size_bound=2, tight_for_cells="ids")),
        (Dm, mat_universe(Dm, 3, 4, 2, "all", 120)),
        (Dq, Dq.universe()),
    ]
    for D, U in cases:
        report, seconds = _timed_double(D, U)
        assert_ok(report)
        assert sum(c.instances for c in report.checks) > 0
        assert seconds <= CRITERION_SECONDS, f"{D.name} took {seconds:.1f}s"


# -- 2 ------------------------------------------------------------------------


def test_criterion_2_span_companions_and_theta_uniqueness():
    D = span_finset(3).base
    W = companion_window(D, 3)
    assert {len(A) for A in W.objects} == {0, 1, 2, 3}
    cache = {}

    def pairs_of(f):
        if f not in cache:
            cache[f] = search_companions(D, f, W)
        return cache[f]

    fams = [f for f in companion_families(D, W.tight, pairs_of)
            if f.name in ("companion found", "companion equations", "theta uniqueness")]
    assert_ok(run_families(fams))
    assert all(len(pairs_of(f)) >= 1 for f in W.tight)
    assert any(len(pairs_of(f)) >= 2 for f in W.tight)


# -- 3 ------------------------------------------------------------------------


THETA_FAMILIES = {"theta identity", "theta vertical composition", "theta horizontal composition",
                  "theta unit", "theta satisfies the comparison equation"}


def test_criterion_3_theta_coherence_exhaustive():
    S = span_finset(2)
    D = S.base
    W = companion_window(D, 2)
    cache = {}

    def pairs_of(f):
        if f not in cache:
            cache[f] = search_companions(D, f, W)
        return cache[f]

    fams = companion_families(D, W.tight, pairs_of)
    assert THETA_FAMILIES <= {f.name for f in fams}
    assert_ok(run_families(fams))

    # compconj-adj triangles, on every tight cell of the window
    assert_ok(run_families(adjunction_families(D, W.tight, graph_choice(D))))

    # theta functoriality and FU-theta under the tensor
    W1 = companion_window(D, 1)
    ptights = [ProdTight((f, g)) for f in W1.tight for g in W1.tight]

    def product_pairs(fg):
        return [product_companion([p, q]) for p in pairs_of(fg.parts[0]) for q in pairs_of(fg.parts[1])]

    tensor = functor_theta_families(S.tensor_functor(), ptights, product_pairs)
    assert any("unit constraint is theta" in f.name for f in tensor)
    assert_ok(run_families(tensor))

    # ... and under Span -> Mat(Bool)
    Phi = span_to_mat(S, mat_quantale(boolean_quantale(), 2))
    assert_ok(run_families(functor_theta_families(Phi.functor, W.tight, pairs_of)))


# -- 4 ------------------------------------------------------------------------


def _monoidal_cases():
    B = boolean_quantale()
    return [(span_finset(2), span_finset(1)), (mat_quantale(B, 2), mat_quantale(B, 1))]


SELF_INVERSE = {"tight braiding self-inverse", "cell braiding self-inverse"}


def test_criterion_4_monoidal_suite_and_mutation_harness():
    for M, M1 in _monoidal_cases():
        U = M.universe(loose_per_hom=3, cell_size_bound=1)
        V = M1.universe(loose_per_hom=2)
        report = check_monoidal_double_category(M, U, "symmetric", V)
        assert_ok(report)
        assert SELF_INVERSE <= {c.name for c in report.checks}
        outcomes = run_mutation_harness(M, U, "symmetric", V)
        kinds = {o.method for o in outcomes}
        assert {"interchange", "unit_interchange", "assoc_cell", "lunit_cell", "runit_cell",
                "braid_cell"} <= kinds
        for o in outcomes:
            assert o.detected, f"{M.name}: corrupting {o.method}{o.args} went unnoticed"
            assert o.replays, f"{M.name}: witness {o.family} {o.key} does not replay"


# -- 5 ------------------------------------------------------------------------


def test_criterion_5_lifted_monoidal_bicategory():
    S = span_finset(2)
    D = S.base
    window = span_lift_window(D)
    data = lift_monoidal(S, graph_choice(D), "symmetric")
    assert_ok(check_pseudofunctor(data.tensor, window.arity(2)))
    for eq in (data.assoc, data.lunit, data.runit, data.braiding):
        W = window.arity(eq.arity)
        assert_ok(check_transformation(eq.forward, W, "pseudo"))
        assert_ok(check_transformation(eq.backward, W, "pseudo"))
        trans = TransformationBicategory(data.base, W.objects)
        assert_ok(check_adjoint_equivalence(trans, eq.forward, eq.backward, eq.unit, eq.counit))
    for hc in (data.pent, data.mu, data.lam, data.rho, data.R, data.S):
        assert_ok(check_modification(hc.cell, window.arity(hc.arity), inverse=hc.inverse))
    pent = load_fixture(shipped_fixture_dir() / "pent.fix")
    objs = pent.objects
    assert [sorted(objs[k]) for k in ("A", "I", "B", "C")] == [[0], [0], [0, 1], [0, 1]]
    assert_ok(verify_lifted(data, None, [pent]))


# -- 6 ------------------------------------------------------------------------


def test_criterion_6_functor_lifting():
    S = span_finset(2)
    Mt = mat_quantale(boolean_quantale(), 2)
    Phi = span_to_mat(S, Mt)
    assert Phi.laxity == "strong"
    assert_ok(check_monoidal_double_functor(Phi, S.universe(loose_per_hom=3, cell_size_bound=1)))
    W = span_lift_window(S.base)
    data = lift_monoidal_functor(Phi, (graph_choice(S.base), char_choice(Mt.base)), window=W)
    assert_ok(data.report)
    assert_ok(run_families(monoidal_functor_lift_families(data, W)))

    E = Mt.base
    objs = mat_objects(2)[1:]
    ones = [M for A in objs for B in objs for M in E.loose_between(A, B)][:12]
    MW = LiftWindow(E, objs, ones, [E.cell_id(M) for M in ones], max_objects=8, max_ones=20)
    cm = char_choice(E)
    with pytest.raises(NotLooselyStrong):
        lift_monoidal_functor(maybe_functor(Mt), (cm, cm), window=MW)


# -- 7 ------------------------------------------------------------------------


def test_criterion_7_alg_agrees_with_profunctor_oracle():
    D = span_finset(2).base
    Alg = alg_construction(D)
    assert isinstance(Alg, AlgDouble)
    pairs = sample_bimodule_pairs(D)
    assert len(pairs) >= 10
    fams = oracle_agreement_families(Alg, pairs)
    assert "unitors invertible" in {f.name for f in fams}
    report = run_families(fams)
    assert_ok(report)
    assert all(c.instances == len(pairs) for c in report.checks)


# -- 8 ------------------------------------------------------------------------


def test_criterion_8_companion_choices_related_by_icon():
    S = span_finset(2)
    D = S.base
    c1, c2 = graph_choice(D), relabelled_choice(D)
    a = constraint_transformation(S, "assoc")
    F, G = a.src, a.dst
    objects = span_lift_window(D).arity(3).objects
    icon = compare_companion_choices(c1, c2, objects)
    paths = [tight_path(a), tight_path(inverse_transformation(a)), TightPath(F, F),
             TightPath(G, G), tight_path(a, inverse_transformation(a))]
    PW = path_window(paths, [F, G])
    assert_ok(check_pseudofunctor(icon.src, PW))
    assert_ok(check_pseudofunctor(icon.tgt, PW))
    assert_ok(check_icon(icon, PW))


# -- 9 ------------------------------------------------------------------------


def _cli(*args, seed="0", cwd=None):
    env = dict(os.environ, PYTHONHASHSEED=seed)
    return subprocess.run([sys.executable, "-m", "dblcat", *args], capture_output=True, env=env,
                          cwd=cwd)


def _without_timing(stdout):
    obj = json.loads(stdout)
    obj.pop("wallMillis")
    return json.dumps(obj, sort_keys=True)


def test_criterion_9_cli_determinism_and_replay(tmp_path):
    args = ("check", "--instance", "span", "--size", "2", "--level", "symmetric",
            "--checks", "double,companions,theta,lift,fixtures", "--out", "json")
    runs = [_cli(*args, seed=s) for s in ("0", "1", "12345")]
    for r in runs:
        assert r.returncode == 0, r.stderr.decode()
    assert len({_without_timing(r.stdout) for r in runs}) == 1
    assert len({r.stdout.split(b'"wallMillis"')[0] for r in runs}) == 1

    pent = (shipped_fixture_dir() / "pent.fix").read_text()
    bad = tmp_path / "bad.fix"
    bad.write_text(pent.replace("wr(mu(A, BC), t1)", "wr(mu(A, B), t1)"))
    fail_args = ("lift", "--instance", "span", "--size", "2", "--fixtures", str(bad),
                 "--checks", "fixtures", "--out", "json")
    failing = [_cli(*fail_args, seed=s) for s in ("0", "7")]
    for r in failing:
        assert r.returncode == 1, r.stderr.decode()
    assert _without_timing(failing[0].stdout) == _without_timing(failing[1].stdout)
    report = json.loads(failing[0].stdout)
    witnesses = [w for c in report["checks"] for w in c["witnesses"]]
    assert witnesses
    saved = tmp_path / "report.json"
    saved.write_bytes(failing[0].stdout)
    replay = _cli("replay", str(saved), seed="99")
    assert replay.returncode == 0, replay.stdout.decode() + replay.stderr.decode()
    assert replay.stdout.decode().count("reproduced") == len(witnesses)
    assert "NOT" not in replay.stdout.decode()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
