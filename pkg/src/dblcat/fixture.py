"""Cell-expression equation fixtures.

A fixture file is a header of ``key: value`` lines followed by ``let``
bindings and equations::

    # comment
    instance: span
    size: 2
    level: monoidal
    objects: A = {0}; B = {0,1}
    source: where the pasting shape was transcribed from
    let s = ahat(A, B, B)
    equation name
    lhs: v(...)
    rhs: v(...)

Lines that start with whitespace continue the previous line.  Object
literals are finite sets ``{x, y, ...}`` of integers or identifiers.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from .cellexpr import CellEnv, eval_cell_expr, parse_cell_expr
from .errors import ParseError
from .finbase import FinSet

HEADER_KEYS = ("instance", "size", "level", "objects", "source")


@dataclass
class Equation:
    name: str
    lhs: object
    rhs: object
    line: int = 0


@dataclass
class Fixture:
    name: str
    instance: str
    size: int
    objects: dict
    source: str
    level: str = "monoidal"
    lets: list = field(default_factory=list)
    equations: list = field(default_factory=list)

    def bind(self, data, env_factory):
        """Object names plus every ``let`` evaluated in order."""
        names = dict(self.objects)
        for name, e, _line in self.lets:
            names[name] = eval_cell_expr(data.base, e, env_factory(data, names))
        return names


def _logical_lines(text):
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if raw[:1].isspace() and out:
            out[-1] = (out[-1][0], out[-1][1] + " " + line.strip(), out[-1][2])
        else:
            out.append((n, line, len(raw) - len(raw.lstrip())))
    return out


_ELEMENT = re.compile(r"-?\d+|[A-Za-z_][A-Za-z0-9_]*")


def parse_set_literal(text, line=0):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"expected a set literal, got {text!r}", line, 1)
    body = text[1:-1].strip()
    if not body:
        return FinSet()
    elems = []
    for part in body.split(","):
        part = part.strip()
        if not _ELEMENT.fullmatch(part):
            raise ParseError(f"bad set element {part!r}", line, 1)
        elems.append(int(part) if part.lstrip("-").isdigit() else part)
    return FinSet(elems)


def _parse_objects(value, line):
    objects = {}
    for binding in value.split(";"):
        if not binding.strip():
            continue
        if "=" not in binding:
            raise ParseError(f"object binding {binding.strip()!r} needs '='", line, 1)
        name, lit = binding.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"bad object name {name!r}", line, 1)
        objects[name] = parse_set_literal(lit, line)
    return objects


def parse_fixture(text, name="fixture"):
    header = {}
    lets, equations = [], []
    current = None
    for n, line, _indent in _logical_lines(text):
        head = line.strip()
        if head.startswith("let "):
            m = re.fullmatch(r"let\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)", head)
            if m is None:
                raise ParseError("expected 'let NAME = expr'", n, 1)
            col = line.index(m.group(2))
            lets.append((m.group(1), parse_cell_expr(m.group(2), n, col), n))
            continue
        if head.startswith("equation"):
            m = re.fullmatch(r"equation\s+(\S+)", head)
            if m is None:
                raise ParseError("expected 'equation NAME'", n, 1)
            current = {"name": m.group(1), "line": n}
            equations.append(current)
            continue
        if ":" not in head:
            raise ParseError(f"unexpected line {head!r}", n, 1)
        key, value = (s.strip() for s in head.split(":", 1))
        if key in ("lhs", "rhs"):
            if current is None:
                raise ParseError(f"{key} outside an equation", n, 1)
            if key in current:
                raise ParseError(f"duplicate {key}", n, 1)
            current[key] = parse_cell_expr(value, n, line.index(value))
            continue
        if key not in HEADER_KEYS:
            raise ParseError(f"unknown header key {key!r}", n, 1)
        if equations or lets:
            raise ParseError(f"header key {key!r} after the body started", n, 1)
        header[key] = (value, n)
    for key in ("instance", "size", "objects", "source"):
        if key not in header:
            raise ParseError(f"missing header '{key}'", 1, 1)
    size_text, size_line = header["size"]
    if not size_text.isdigit():
        raise ParseError(f"size must be a non-negative integer, got {size_text!r}", size_line, 1)
    eqs = []
    for eq in equations:
        for side in ("lhs", "rhs"):
            if side not in eq:
                raise ParseError(f"equation {eq['name']} has no {side}", eq["line"], 1)
        eqs.append(Equation(eq["name"], eq["lhs"], eq["rhs"], eq["line"]))
    if not eqs:
        raise ParseError("fixture has no equations", 1, 1)
    return Fixture(name=name, instance=header["instance"][0], size=int(size_text),
                   objects=_parse_objects(*header["objects"]), source=header["source"][0],
                   level=header.get("level", ("monoidal", 0))[0], lets=lets, equations=eqs)


def load_fixture(path):
    path = Path(path)
    return parse_fixture(path.read_text(), name=path.stem)


def shipped_fixture_dir():
    return Path(__file__).resolve().parent / "fixtures"


def shipped_fixtures():
    return sorted(shipped_fixture_dir().glob("*.fix"))


__all__ = ["Equation", "Fixture", "parse_fixture", "load_fixture", "parse_set_literal",
           "shipped_fixtures", "shipped_fixture_dir", "CellEnv"]
