"""Corrupt one constraint cell of a monoidal double category and confirm the
checker notices.

A corruption replaces the cell ``c`` at one argument tuple by ``t . c`` where
``t`` is a non-identity cell from ``c.bottom`` to itself: a globular
automorphism when one exists, otherwise one over a pair of permutations.
"""

import copy
from dataclasses import dataclass
from itertools import permutations

from .dblcore import stride_sample
from .finbase import FinFunction
from .mondbl import LEVELS, monoidal_families

CONSTRAINT_CELLS = ("interchange", "unit_interchange", "assoc_cell", "lunit_cell", "runit_cell",
                    "braid_cell")


def _bijections(A):
    for perm in permutations(range(len(A))):
        yield FinFunction(A, A, perm)


def corrupting_cell(D, cell, globular_only=False):
    """A non-identity cell ``cell.bottom => cell.bottom``, or None.

    Permutation boundaries are only searched for ends of size at most four.
    """
    N = cell.bottom
    ident = D.cell_id(N)
    between = getattr(D, "iter_cells_between", D.cells_between)
    for t in between(N, N, D.tight_id(N.src), D.tight_id(N.tgt)):
        if not D.cell_eq(t, ident):
            return t
    if globular_only or len(N.src) > 4 or len(N.tgt) > 4:
        return None
    for f in _bijections(N.src):
        for g in _bijections(N.tgt):
            for t in between(N, N, f, g):
                if not D.cell_eq(t, ident):
                    return t
    return None


def mutate(M, method, args):
    """A shallow copy of ``M`` whose ``method`` is corrupted at ``args`` only, or None."""
    original = getattr(M, method)
    cell = original(*args)
    t = corrupting_cell(M.base, cell, globular_only=True) or corrupting_cell(M.base, cell)
    if t is None:
        return None
    bad = M.base.vcompose(t, cell)
    mutant = copy.copy(M)

    def patched(*a):
        if len(a) == len(args) and all(x == y for x, y in zip(a, args)):
            return bad
        return original(*a)

    setattr(mutant, method, patched)
    mutant.name = f"{M.name}[{method} corrupted]"
    return mutant


def mutation_sites(M, U, level="monoidal", partner=None, per_kind=2):
    """Argument tuples where each constraint cell can be corrupted, a few per kind."""
    V = partner or U
    D = M.base
    candidates = {
        "interchange": [(L2, N2, L1, N1) for L1, L2 in _loose_pairs(U) for N1, N2 in _loose_pairs(V)],
        "unit_interchange": [(A, B) for A in U.objects for B in V.objects],
        "assoc_cell": [(X, Y, Z) for X in U.loose for Y in V.loose for Z in V.loose],
        "lunit_cell": [(X,) for X in U.loose],
        "runit_cell": [(X,) for X in U.loose],
    }
    if LEVELS.index(level) >= 1:
        candidates["braid_cell"] = [(X, Y) for X in U.loose for Y in V.loose]
    sites = []
    for method, arglist in candidates.items():
        # globular corruptions keep every boundary intact, so prefer them
        usable = [args for args in arglist
                  if corrupting_cell(D, getattr(M, method)(*args), globular_only=True) is not None]
        if not usable:
            usable = []
            for args in arglist:
                if corrupting_cell(D, getattr(M, method)(*args)) is not None:
                    usable.append(args)
                    if len(usable) >= per_kind:
                        break
        for args in stride_sample(usable, per_kind):
            sites.append((method, args))
    return sites


def _loose_pairs(U):
    return [(U.loose[i], U.loose[j]) for i, j in U.loose_pairs()]


@dataclass
class MutationOutcome:
    method: str
    args: tuple
    detected: bool
    family: str = ""
    key: tuple = ()
    detail: str = ""
    replays: bool = False


def first_failure(families):
    """The first failing (family, key, detail), or None when every instance passes.

    Smaller families are tried first so that a corruption is usually found
    without sweeping the large ones.
    """
    staged = sorted(((sum(1 for _ in fam.instances()), i, fam) for i, fam in enumerate(families)),
                    key=lambda x: x[:2])
    for _, _, fam in staged:
        for key, args in fam.instances():
            ok, detail = fam.evaluate(args)
            if not ok:
                return fam, key, detail
    return None


def run_mutation_harness(M, U, level="monoidal", partner=None, per_kind=2):
    """Corrupt each site in turn; every outcome records the detecting diagram,
    and whether replaying that witness on the mutant fails again."""
    outcomes = []
    for method, args in mutation_sites(M, U, level, partner, per_kind):
        mutant = mutate(M, method, args)
        hit = first_failure(monoidal_families(mutant, U, level, partner))
        if hit is None:
            outcomes.append(MutationOutcome(method, args, False))
            continue
        fam, key, detail = hit
        outcomes.append(MutationOutcome(method, args, True, fam.name, key, detail,
                                        replays=fam.replay(key) is False))
    return outcomes
