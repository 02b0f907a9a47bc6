"""Suite configuration, orchestration and machine-readable reports.

A run resolves the selected instance (rule-backed by name and size, or
table-backed from a ``.dcat`` file), builds the axiom families of every
selected check and evaluates them in dependency order.  Every failing
instance becomes a witness ``{family, key, detail}`` that
:func:`replay_witness` re-checks in isolation.
"""

import json
import time
from dataclasses import asdict, dataclass, field, replace
from functools import cached_property
from pathlib import Path

from . import __version__
from .companion import (CompanionChoice, adjunction_families, companion_families,
                        functor_theta_families, product_companion, search_choice,
                        search_companions)
from .dblcore import ProdTight, double_category_families
from .errors import (ConfigError, DblcatError, MissingStructure, ParseError, SemanticError)
from .fixture import load_fixture, shipped_fixture_dir, shipped_fixtures
from .lift import (LiftWindow, lift_monoidal, lift_monoidal_functor,
                   monoidal_functor_lift_families, structure_families, verify_lifted)
from .mondbl import LEVELS, monoidal_families
from .report import Family, Witness, run_families

CHECKS = ("double", "monoidal", "companions", "theta", "lift", "fixtures", "alg")
DEFAULT_CHECKS = ("double", "monoidal", "companions", "theta")
DEPENDS = {
    "double": (),
    "monoidal": ("double",),
    "companions": ("double",),
    "theta": ("companions",),
    "lift": ("monoidal", "companions"),
    "fixtures": ("lift",),
    "alg": ("double",),
}
INSTANCES = ("span", "mat", "square", "file")
BUILTIN_QUANTALES = ("Bool", "Chain3")
MAX_SIZE = 3  # enumeration windows grow super-exponentially past this


class NotApplicable(DblcatError):
    """The check has nothing to run on this instance."""


@dataclass(frozen=True)
class SuiteConfig:
    instance: str = "span"
    size: int = 2
    level: str = None
    checks: tuple = DEFAULT_CHECKS
    file: str = None
    fixtures: tuple = ()
    quantale: str = None

    def validate(self):
        """A normalised copy: checks deduplicated and put in dependency order."""
        if self.instance not in INSTANCES:
            raise ConfigError(f"unknown instance {self.instance!r}; expected one of {INSTANCES}")
        if self.instance == "file" and not self.file:
            raise ConfigError("instance 'file' needs a presentation path")
        if not isinstance(self.size, int) or not 0 <= self.size <= MAX_SIZE:
            raise ConfigError(f"size must be an integer in 0..{MAX_SIZE}, got {self.size!r}")
        if self.level is not None and self.level not in LEVELS:
            raise ConfigError(f"unknown level {self.level!r}; expected one of {LEVELS}")
        names = []
        for name in self.checks:
            if name == "all":
                names.extend(CHECKS)
            elif name not in CHECKS:
                raise ConfigError(f"unknown check {name!r}; expected one of {CHECKS}")
            else:
                names.append(name)
        ordered = tuple(c for c in CHECKS if c in names)
        return replace(self, checks=ordered, fixtures=tuple(str(f) for f in self.fixtures))

    def to_json(self):
        out = asdict(self)
        out["checks"] = list(self.checks)
        out["fixtures"] = list(self.fixtures)
        return out

    @classmethod
    def from_json(cls, obj):
        obj = dict(obj)
        obj["checks"] = tuple(obj.get("checks", DEFAULT_CHECKS))
        obj["fixtures"] = tuple(obj.get("fixtures", ()))
        try:
            return cls(**obj)
        except TypeError as exc:
            raise ConfigError(f"bad configuration: {exc}") from None


# ---------------------------------------------------------------------------
# Instances


class Instance:
    """What the checks need from an instance; subclasses fill in windows."""

    name = "instance"
    fixture_instance = None

    def __init__(self, config):
        self.config = config

    @property
    def level(self):
        own = self.M.level() if self.M is not None else "monoidal"
        if self.config.level is None:
            return own
        if self.M is not None and not self.M.supports(self.config.level):
            raise ConfigError(f"{self.name} only supports level {own!r}")
        return self.config.level

    M = None

    @property
    def D(self):
        return self.M.base

    def double_universe(self):
        raise NotImplementedError

    def monoidal_universes(self):
        raise NotImplementedError

    def pairs_of(self, f):
        return self._pairs(f)

    @cached_property
    def _pair_cache(self):
        return {}

    def _pairs(self, f):
        hit = self._pair_cache.get(f)
        if hit is None:
            hit = self._pair_cache[f] = search_companions(self.D, f, self.companion_window())
        return hit

    def companion_window(self):
        raise NotImplementedError

    def theta_window(self):
        return self.companion_window()

    def tensor_tights(self):
        """Tight cells whose pairs exercise theta functoriality under the tensor."""
        return self.theta_window().tight

    def choice(self):
        raise NotImplementedError

    def extra_functors(self):
        """(functor, tights, pairs_of) triples for theta functoriality beyond the tensor."""
        return []

    def lift_window(self):
        raise NotImplementedError

    @cached_property
    def lift_data(self):
        if self.M is None:
            raise NotApplicable(f"{self.name} has no monoidal structure to lift")
        return lift_monoidal(self.M, self.choice(), self.level)

    def functor_lifts(self):
        """(name, MonoidalPseudofunctorData, window) for monoidal functors out of the instance."""
        return []

    def alg_families(self):
        raise NotApplicable(f"no Alg construction for {self.name}")


class SpanInstance(Instance):
    fixture_instance = "span"

    def __init__(self, config):
        super().__init__(config)
        from .instances.span import span_finset
        self.M = span_finset(config.size)
        self.name = self.M.name

    def double_universe(self):
        from .instances.span import span_universe
        return span_universe(self.D, min(self.config.size, 3), loose_per_hom=4,
                             cell_size_bound=2, tight_for_cells="ids")

    def monoidal_universes(self):
        from .instances.span import span_finset
        n = min(self.config.size, 2)
        return (span_finset(n).universe(loose_per_hom=3, cell_size_bound=1),
                span_finset(min(n, 1)).universe(loose_per_hom=2))

    @cached_property
    def _windows(self):
        from .instances.span import companion_window
        return {n: companion_window(self.D, n) for n in {min(self.config.size, 3),
                                                          min(self.config.size, 2)}}

    def companion_window(self):
        return self._windows[min(self.config.size, 3)]

    def theta_window(self):
        return self._windows[min(self.config.size, 2)]

    def tensor_tights(self):
        from .instances.span import companion_window
        return companion_window(self.D, min(self.config.size, 1)).tight

    def choice(self):
        from .instances.span import graph_choice
        return graph_choice(self.D)

    def extra_functors(self):
        from .instances.functors import span_to_mat
        from .instances.mat import boolean_quantale, mat_quantale
        Phi = span_to_mat(self.M, mat_quantale(boolean_quantale(), min(self.config.size, 2)))
        return [(Phi.functor, self.theta_window().tight, self.pairs_of)]

    def lift_window(self):
        from .instances.span import span_loose_sample, span_objects
        D = self.D
        objs = span_objects(min(self.config.size, 2))[1:]
        ones = [M for A in objs for B in objs for M in span_loose_sample(D, A, B, 1, 2)]
        return LiftWindow(D, objs, ones, [D.cell_id(M) for M in ones], max_objects=8,
                          max_ones=30, max_twos=12)

    def functor_lifts(self):
        from .instances.functors import span_to_mat
        from .instances.mat import boolean_quantale, char_choice, mat_quantale
        Mt = mat_quantale(boolean_quantale(), min(self.config.size, 2))
        Phi = span_to_mat(self.M, Mt)
        W = self.lift_window()
        data = lift_monoidal_functor(Phi, (self.choice(), char_choice(Mt.base)), window=W)
        return [("Span->Mat(Bool)", data, W)]

    def alg_families(self):
        from .instances.alg import (AlgMonoidal, alg_structure_families, alg_window,
                                    local_coequalizer_families, oracle_agreement_families,
                                    sample_bimodule_pairs)
        from .instances.span import span_universe
        D = self.D
        n = min(self.config.size, 2)
        U = span_universe(D, n, apex_bound=2, loose_per_hom=3, cell_size_bound=2,
                          tight_for_cells="ids")
        AM = AlgMonoidal(self.M)
        W, V = alg_window(AM, regular=False)
        fams = _prefixed("local coequalizers: ", local_coequalizer_families(D, U))
        fams += _prefixed("oracle: ", oracle_agreement_families(AM.base, sample_bimodule_pairs(D)))
        fams += _prefixed("Alg double: ", double_category_families(AM.base, W))
        fams += _prefixed("Alg monoidal: ", monoidal_families(AM, W, self.level, V))
        fams += _prefixed("Alg structure: ", alg_structure_families(AM, W, V))
        return fams


class MatInstance(Instance):
    def __init__(self, config, Q=None):
        super().__init__(config)
        from .instances.mat import mat_quantale
        self.Q = Q if Q is not None else builtin_quantale(config.quantale or "Bool")
        self.M = mat_quantale(self.Q, config.size)
        self.name = self.M.name

    def double_universe(self):
        from .instances.mat import mat_universe
        return mat_universe(self.D, min(self.config.size, 3), 4, 2, "all", 120)

    def monoidal_universes(self):
        from .instances.mat import mat_quantale
        n = min(self.config.size, 2)
        return (mat_quantale(self.Q, n).universe(loose_per_hom=3, cell_size_bound=1),
                mat_quantale(self.Q, min(n, 1)).universe(loose_per_hom=2))

    @cached_property
    def _window(self):
        from .instances.mat import mat_universe
        return mat_universe(self.D, min(self.config.size, 2))

    def companion_window(self):
        return self._window

    def tensor_tights(self):
        from .instances.mat import mat_universe
        return mat_universe(self.D, min(self.config.size, 1)).tight

    def choice(self):
        from .instances.mat import char_choice
        return char_choice(self.D)

    def lift_window(self):
        from .instances.mat import mat_objects
        D = self.D
        objs = mat_objects(min(self.config.size, 2))[1:]
        ones = [M for A in objs for B in objs for M in D.loose_between(A, B)][:12]
        return LiftWindow(D, objs, ones, [D.cell_id(M) for M in ones], max_objects=8,
                          max_ones=20, max_twos=12)

    def alg_families(self):
        from .instances.alg import local_coequalizer_families
        from .instances.mat import mat_universe
        U = mat_universe(self.D, min(self.config.size, 2), loose_per_hom=4)
        return _prefixed("local coequalizers: ", local_coequalizer_families(self.D, U))


class TableInstance(Instance):
    """A table-backed double category, optionally monoidal, with declared companions."""

    def __init__(self, config, D, M=None, companions=None, name=None):
        super().__init__(config)
        self._D = D
        self.M = M
        self.companions = companions or {}
        self.name = name or D.name

    @property
    def D(self):
        return self._D

    @cached_property
    def _universe(self):
        return self._D.universe()

    def double_universe(self):
        return self._universe

    def monoidal_universes(self):
        if self.M is None:
            raise NotApplicable(f"{self.name} has no monoidal structure")
        return self._universe, self._universe

    def companion_window(self):
        return self._universe

    def choice(self):
        if self.companions:
            declared = self.companions
            fallback = search_choice(self.D, self._universe)

            def rule(f):
                return declared[f.name] if f.name in declared else fallback(f)
            return CompanionChoice(self.D, rule, name="declared")
        return search_choice(self.D, self._universe)

    def lift_window(self):
        U = self._universe
        return LiftWindow(self.D, U.objects, U.loose,
                          [c for c in U.cells if self.D.is_globular(c)],
                          max_objects=8, max_ones=30, max_twos=12)

    def alg_families(self):
        from .instances.alg import local_coequalizer_families
        return _prefixed("local coequalizers: ",
                         local_coequalizer_families(self.D, self._universe))


def builtin_quantale(name):
    from .instances.mat import boolean_quantale, chain_quantale
    if name == "Bool":
        return boolean_quantale()
    if name == "Chain3":
        return chain_quantale(3)
    raise ConfigError(f"unknown quantale {name!r}; built in: {BUILTIN_QUANTALES} "
                      "(others load from a presentation file)")


def resolve_instance(config):
    """The :class:`Instance` selected by ``config`` (which must be validated)."""
    if config.instance == "span":
        return SpanInstance(config)
    if config.instance == "mat":
        return MatInstance(config)
    if config.instance == "square":
        from .finbase import z2_category
        from .instances.square import square_companion, square_monoidal
        M = square_monoidal(z2_category())
        T = M.base
        return TableInstance(config, T, M, {f: square_companion(T, T.tight_cell(f))
                                             for f in T.tight_table})
    from .presentation import load_presentation
    path = Path(config.file)
    if not path.exists():
        raise ConfigError(f"no such presentation file: {config.file}")
    p = load_presentation(path)
    if p.has_double:
        M = p.monoidal_double() if p.monoidal is not None else None
        D = M.base if M is not None else p.double()
        return TableInstance(config, D, M, p.companion_pairs(D))
    if config.quantale is not None and config.quantale not in p.quantales:
        raise ConfigError(f"{config.file} declares no quantale {config.quantale!r}")
    return MatInstance(config, p.quantale(config.quantale))


# ---------------------------------------------------------------------------
# Check builders: each returns the list of families for one check


def _prefixed(prefix, families):
    return [Family(prefix + f.name, f.instances, f.predicate) for f in families]


_COMPANION_FAMILIES = ("companion found", "companion equations", "theta uniqueness")


def _double(inst):
    return double_category_families(inst.D, inst.double_universe())


def _monoidal(inst):
    if inst.M is None:
        raise NotApplicable(f"{inst.name} has no monoidal structure")
    U, V = inst.monoidal_universes()
    return monoidal_families(inst.M, U, inst.level, V)


def _companions(inst):
    fams = companion_families(inst.D, inst.companion_window().tight, inst.pairs_of)
    return [f for f in fams if f.name in _COMPANION_FAMILIES]


def _theta(inst):
    D = inst.D
    tights = inst.theta_window().tight
    fams = [f for f in companion_families(D, tights, inst.pairs_of)
            if f.name not in _COMPANION_FAMILIES]
    fams += adjunction_families(D, [f for f in tights if _has_conjoint(inst, f)], inst.choice())
    if inst.M is not None:
        small = inst.tensor_tights()
        pairs = [ProdTight((f, g)) for f in small for g in small]

        def product_pairs(fg):
            return [product_companion([p, q]) for p in inst.pairs_of(fg.parts[0])
                    for q in inst.pairs_of(fg.parts[1])]
        fams += functor_theta_families(inst.M.tensor_functor(), pairs, product_pairs)
    for F, ts, pairs_of in inst.extra_functors():
        fams += functor_theta_families(F, ts, pairs_of)
    return fams


def _has_conjoint(inst, f):
    choice = inst.choice()
    if getattr(choice, "conjoint_rule", None) is not None:
        return True
    return inst.D.tight_inverse(f) is not None


def _lift(inst):
    data = inst.lift_data
    fams = _prefixed("monoidal lift: ", structure_families(data, inst.lift_window()))
    for name, fdata, W in inst.functor_lifts():
        fams += _prefixed(f"{name} lift: ", monoidal_functor_lift_families(fdata, W))
    return fams


def _fixtures(inst):
    config = inst.config
    if config.fixtures:
        fixtures = [load_fixture(resolve_fixture(f)) for f in config.fixtures]
    elif inst.fixture_instance is not None:
        fixtures = [load_fixture(p) for p in shipped_fixtures()]
    else:
        raise NotApplicable(f"no shipped fixtures for {inst.name}")
    data = inst.lift_data
    usable = []
    for fx in fixtures:
        if fx.instance != inst.fixture_instance:
            raise ConfigError(f"fixture {fx.name} is for instance {fx.instance!r}, not {inst.name}")
        if LEVELS.index(fx.level) > LEVELS.index(data.level):
            if config.fixtures:
                raise ConfigError(f"fixture {fx.name} needs level {fx.level!r}")
            continue
        usable.append(fx)
    report = verify_lifted(data, None, usable)
    return [report._families[c.name] for c in report.checks]


def resolve_fixture(name):
    """A fixture path, or the name of a shipped fixture (with or without ``.fix``)."""
    path = Path(name)
    if path.exists():
        return path
    for candidate in (shipped_fixture_dir() / name, shipped_fixture_dir() / f"{name}.fix"):
        if candidate.exists():
            return candidate
    raise ConfigError(f"no fixture file {name!r} (shipped: "
                      f"{', '.join(p.name for p in shipped_fixtures())})")


BUILDERS = {
    "double": _double,
    "monoidal": _monoidal,
    "companions": _companions,
    "theta": _theta,
    "lift": _lift,
    "fixtures": _fixtures,
    "alg": lambda inst: inst.alg_families(),
}


def check_families(inst, name):
    """Families for check ``name``; construction errors become one failing family."""
    try:
        return BUILDERS[name](inst)
    except (ConfigError, ParseError, SemanticError, NotApplicable):
        raise
    except (DblcatError, MissingStructure) as exc:
        message = f"{type(exc).__name__}: {exc}"

        def fails():
            return message
        return [Family(f"{name}: construction", lambda: iter([((0,), ())]), fails)]


# ---------------------------------------------------------------------------
# Running and reporting


@dataclass
class CheckEntry:
    name: str
    status: str
    instances: int = 0
    witnesses: list = field(default_factory=list)
    detail: str = ""
    report: object = field(default=None, repr=False)

    def to_json(self):
        out = {"name": self.name, "status": self.status, "instances": self.instances,
               "witnesses": [w.to_json() for w in self.witnesses]}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    config: SuiteConfig
    checks: list
    wall_millis: int = 0
    version: str = __version__

    @property
    def ok(self):
        return all(c.status in ("pass", "skip") for c in self.checks)

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    def to_json(self):
        return {"version": self.version, "config": self.config.to_json(),
                "checks": [c.to_json() for c in self.checks], "wallMillis": self.wall_millis}

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def run_suite(config, max_witnesses=3):
    """Run the configured checks; raises ConfigError, ParseError or SemanticError."""
    start = time.perf_counter()
    config = config.validate()
    inst = resolve_instance(config)
    inst.level  # reject unsupported levels before any work
    entries = {}
    for name in config.checks:
        blocked = [d for d in DEPENDS[name] if d in entries and entries[d].status == "fail"]
        if blocked:
            entries[name] = CheckEntry(name, "skip", detail=f"{', '.join(blocked)} failed")
            continue
        try:
            fams = check_families(inst, name)
        except NotApplicable as exc:
            entries[name] = CheckEntry(name, "skip", detail=str(exc))
            continue
        report = run_families(fams, max_witnesses=max_witnesses)
        witnesses = [w for c in report.checks for w in c.witnesses]
        entries[name] = CheckEntry(name, "pass" if report.ok else "fail",
                                   sum(c.instances for c in report.checks), witnesses,
                                   report=report)
    wall = int((time.perf_counter() - start) * 1000)
    return SuiteReport(config, [entries[n] for n in config.checks], wall)


def replay_witness(config, check, witness):
    """Re-run the single instance named by ``witness``; True means it passes now."""
    config = config.validate()
    inst = resolve_instance(config)
    if isinstance(witness, dict):
        witness = Witness(witness["family"], witness["key"], witness.get("detail", ""))
    for fam in check_families(inst, check):
        if fam.name == witness.family:
            return fam.replay(witness.key)
    raise KeyError(f"check {check!r} has no family {witness.family!r}")


def replay_report(obj):
    """Replay every witness of a JSON report; yields (check, witness, still_fails)."""
    config = SuiteConfig.from_json(obj["config"])
    for entry in obj["checks"]:
        for w in entry.get("witnesses", []):
            yield entry["name"], w, not replay_witness(config, entry["name"], w)


def emit_report(report, fmt="json"):
    """The report as bytes: stable JSON or human-readable text."""
    if fmt == "json":
        return (json.dumps(report.to_json(), indent=2) + "\n").encode()
    if fmt != "text":
        raise ConfigError(f"unknown output format {fmt!r}")
    cfg = report.config
    where = cfg.file if cfg.instance == "file" else f"{cfg.instance} size {cfg.size}"
    lines = [f"dblcat {report.version}: {where}, level {cfg.level or 'default'}"]
    for c in report.checks:
        extra = f"  ({c.detail})" if c.detail else ""
        lines.append(f"{c.status.upper():5} {c.name:11} {c.instances} instances{extra}")
        for w in c.witnesses:
            lines.append(f"      {w.family} {list(w.key)}: {w.detail}")
    lines.append(f"{'all checks pass' if report.ok else 'FAILED'} in {report.wall_millis} ms")
    return ("\n".join(lines) + "\n").encode()


__all__ = ["SuiteConfig", "SuiteReport", "CheckEntry", "CHECKS", "DEFAULT_CHECKS", "run_suite",
           "emit_report", "replay_witness", "replay_report", "resolve_instance",
           "resolve_fixture", "check_families", "NotApplicable"]
