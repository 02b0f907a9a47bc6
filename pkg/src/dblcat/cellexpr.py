"""Explicit cell expressions over a bicategory, their surface syntax and evaluator.

Surface syntax (prefix, comma separated)::

    v(e1, ..., en)   vertical composite e1 . ... . en  (en on top)
    h(e1, e2)        horizontal composite e1 . e2      (e2 first along 1-cells)
    wl(f, e)         1_f . e
    wr(e, f)         e . 1_f
    a(M, N, P)       associator (M.N).P => M.(N.P)
    l(M), r(M)       unitors 1.M => M and M.1 => M
    inv(e)           inverse of an invertible cell
    i(M)             identity 2-cell on a 1-cell
    c(M, N, ...)     composite 1-cell M . N . ... (rightmost first)
    u(X)             identity 1-cell on an object
    name             a leaf bound in the environment

Any other ``op(args)`` is looked up in the environment's operator table, so
a caller can expose pseudofunctor constraints or named families of cells.
Nothing is inserted silently: each composition node checks that the
1-cells it glues along agree and raises :class:`BoundaryError` with the
path of the offending node otherwise.
"""

import re
from dataclasses import dataclass, field

from .errors import BoundaryError, DblcatError, ParseError


@dataclass(frozen=True)
class CellExpr:
    op: str
    args: tuple = ()

    def __str__(self):
        if self.op == "name":
            return self.args[0]
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


def leaf(name):
    return CellExpr("name", (name,))


def expr(op, *args):
    return CellExpr(op, tuple(args))


@dataclass
class CellEnv:
    """Bindings for named leaves and extra operators."""

    names: dict = field(default_factory=dict)
    ops: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\()|(\))|(,)|(\S))")


def _tokens(text, line=1, col0=0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(5) is not None:
            raise ParseError(f"unexpected character {m.group(5)!r}", line, col0 + m.start(5) + 1)
        kind = next(i for i in range(1, 5) if m.group(i) is not None)
        out.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    return out


def parse_cell_expr(text, line=1, col0=0):
    """Parse the surface syntax into a :class:`CellExpr`."""
    toks = _tokens(text, line, col0)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(kind, what):
        nonlocal pos
        t = peek()
        if t is None or t[0] != kind:
            col = t[2] if t else col0 + len(text) + 1
            raise ParseError(f"expected {what}", line, col)
        pos += 1
        return t

    def term():
        nonlocal pos
        name = take(1, "identifier")[1]
        t = peek()
        if t is None or t[0] != 2:
            return leaf(name)
        pos += 1
        args = [term()]
        while peek() is not None and peek()[0] == 4:
            pos += 1
            args.append(term())
        take(3, "')'")
        return CellExpr(name, tuple(args))

    e = term()
    if peek() is not None:
        raise ParseError(f"trailing input {peek()[1]!r}", line, peek()[2])
    return e


# ---------------------------------------------------------------------------
# Evaluation


def _is_cell(x):
    return hasattr(x, "top") and hasattr(x, "bottom")


def _is_one(x):
    return hasattr(x, "src") and hasattr(x, "tgt") and not _is_cell(x)


def eval_cell_expr(B, e, env=None):
    """Evaluate ``e`` in bicategory ``B``; the result is a 2-cell, 1-cell or object."""
    env = env or CellEnv()
    return _eval(B, e, env, ())


def _want_cell(x, path, what):
    if not _is_cell(x):
        raise BoundaryError(f"{what} must be a 2-cell, got {x!r}", path)
    return x


def _want_one(x, path, what):
    if not _is_one(x):
        raise BoundaryError(f"{what} must be a 1-cell, got {x!r}", path)
    return x


def _eval(B, e, env, path):
    op, args = e.op, e.args
    if op == "name":
        if args[0] not in env.names:
            raise BoundaryError(f"unbound name {args[0]!r}", path)
        return env.names[args[0]]
    vals = [_eval(B, a, env, path + (f"{op}[{k}]",)) for k, a in enumerate(args)]
    try:
        return _apply(B, op, vals, env, path)
    except BoundaryError:
        raise
    except DblcatError as exc:
        raise BoundaryError(f"{op}: {exc}", path) from exc


def _arity(op, vals, n, path):
    if len(vals) != n:
        raise BoundaryError(f"{op} takes {n} arguments, got {len(vals)}", path)


def _apply(B, op, vals, env, path):
    if op == "v":
        if len(vals) < 1:
            raise BoundaryError("v needs at least one argument", path)
        cells = [_want_cell(x, path, "v argument") for x in vals]
        for k in range(len(cells) - 1):
            upper, lower = cells[k + 1], cells[k]
            if upper.bottom != lower.top:
                raise BoundaryError(f"vertical composite: {upper.bottom!r} meets {lower.top!r}",
                                    path + (f"v[{k}]",))
        return B.vcompose_all(*cells)
    if op == "h":
        _arity(op, vals, 2, path)
        b, a = (_want_cell(x, path, "h argument") for x in vals)
        if a.top.tgt != b.top.src:
            raise BoundaryError(f"horizontal composite: {a.top!r} ends where {b.top!r} does not start",
                                path)
        return B.hcompose(b, a)
    if op == "wl":
        _arity(op, vals, 2, path)
        f, a = _want_one(vals[0], path, "wl whisker"), _want_cell(vals[1], path, "wl cell")
        if a.top.tgt != f.src:
            raise BoundaryError(f"left whisker {f!r} does not follow {a.top!r}", path)
        return B.whisker_left(f, a)
    if op == "wr":
        _arity(op, vals, 2, path)
        a, f = _want_cell(vals[0], path, "wr cell"), _want_one(vals[1], path, "wr whisker")
        if f.tgt != a.top.src:
            raise BoundaryError(f"right whisker {f!r} does not precede {a.top!r}", path)
        return B.whisker_right(a, f)
    if op == "a":
        _arity(op, vals, 3, path)
        P, N, M = (_want_one(x, path, "associator argument") for x in vals)
        if M.tgt != N.src or N.tgt != P.src:
            raise BoundaryError("associator of non-composable 1-cells", path)
        return B.assoc(P, N, M)
    if op in ("l", "r"):
        _arity(op, vals, 1, path)
        M = _want_one(vals[0], path, "unitor argument")
        return B.lunitor(M) if op == "l" else B.runitor(M)
    if op == "inv":
        _arity(op, vals, 1, path)
        cell = _want_cell(vals[0], path, "inv argument")
        inv = B.inverse(cell)
        if inv is None:
            raise BoundaryError(f"{cell!r} has no inverse", path)
        return inv
    if op == "i":
        _arity(op, vals, 1, path)
        return B.cell_id(_want_one(vals[0], path, "identity argument"))
    if op == "c":
        ones = [_want_one(x, path, "composite argument") for x in vals]
        result = ones[-1]
        for k in range(len(ones) - 2, -1, -1):
            if result.tgt != ones[k].src:
                raise BoundaryError(f"composite: {result!r} ends where {ones[k]!r} does not start",
                                    path + (f"c[{k}]",))
            result = B.compose(ones[k], result)
        return result
    if op == "u":
        _arity(op, vals, 1, path)
        return B.unit(vals[0])
    if op in env.ops:
        return env.ops[op](*vals)
    raise BoundaryError(f"unknown operator {op!r}", path)


def boundary(B, e, env=None):
    """Source and target 1-cells of a 2-cell expression."""
    cell = eval_cell_expr(B, e, env)
    if not _is_cell(cell):
        raise BoundaryError("expression is not a 2-cell")
    return cell.top, cell.bottom
