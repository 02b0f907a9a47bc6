"""The double category of commuting squares in a finite category."""

from ..errors import InvalidCategory
from ..finbase import check_category
from .table import table_from_rules


def square_double(C, name=None):
    """Tight and loose 1-cells are the morphisms of C; 2-cells are commuting squares.

    Every tight f is its own companion.  Raises InvalidCategory when the
    composition table of C fails a category law.
    """
    report = check_category(C)
    if not report.ok:
        bad = report.failed()[0]
        raise InvalidCategory(f"{C.name} fails {bad.name}: {bad.witnesses[0].key}")
    arrows = dict(C.arrows)
    ids = dict(C.ids)

    def comp(g, f):
        return C.compose(g, f)

    cells = []
    for top, (a, b) in arrows.items():
        for bottom, (c, d) in arrows.items():
            for left in C.hom(a, c):
                for right in C.hom(b, d):
                    if C.compose(right, top) == C.compose(bottom, left):
                        cells.append((top, bottom, left, right))
    return table_from_rules(list(C.objects), (arrows, ids, comp), (arrows, ids, comp), cells,
                            name=name or f"Sq({C.name})")


def square_cell_name(D, top, bottom, left, right):
    """Name of the square with the given boundary, or None."""
    for nm, bd in D.cell_table.items():
        if bd == (top, bottom, left, right):
            return nm
    return None


def square_companion(D, f):
    """f as its own companion; both binding cells are the evident commuting squares."""
    from ..companion import CompanionPair
    s, t = D.tight_table[f.name]
    ids, idt = D.tight_ids[s], D.tight_ids[t]
    eta = square_cell_name(D, ids, f.name, ids, f.name)
    eps = square_cell_name(D, f.name, idt, f.name, idt)
    return CompanionPair(f, D.loose_cell(f.name), D.cell(eta), D.cell(eps))


def square_choice(D):
    from ..companion import CompanionChoice
    return CompanionChoice(D, lambda f: square_companion(D, f), name="self")


def square_monoidal(C, name=None):
    """Sq(C) for a commutative one-object C, tensored by composition in C.

    All constraints are identities; the braiding is the identity too, so the
    structure is strict and symmetric.
    """
    from ..errors import SemanticError
    from .table import TableMonoidal
    if len(C.objects) != 1:
        raise SemanticError(f"{C.name} must have exactly one object")
    arrows = list(C.arrows)
    if any(C.compose(g, f) != C.compose(f, g) for f in arrows for g in arrows):
        raise SemanticError(f"{C.name} is not commutative")
    D = square_double(C, name=name)
    (o,) = list(C.objects)
    comp = {(f, g): C.compose(f, g) for f in arrows for g in arrows}
    cells = {}
    for a, (ta, ba, la, ra) in D.cell_table.items():
        for b, (tb, bb, lb, rb) in D.cell_table.items():
            cells[(a, b)] = square_cell_name(D, comp[ta, tb], comp[ba, bb], comp[la, lb], comp[ra, rb])
    return TableMonoidal(D, o, {(o, o): o}, comp, comp, cells, level="symmetric", strict=True,
                         name=f"{D.name}, composition")
