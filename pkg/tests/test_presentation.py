import pytest
from hypothesis import given, settings, strategies as st

from dblcat.dblcore import check_double_category
from dblcat.errors import ParseError, SemanticError
from dblcat.finbase import FinCategory
from dblcat.instances.square import square_double
from dblcat.presentation import (load_presentation, parse_presentation, presentation_of,
                                 serialize_presentation, shipped_presentation_dir)

SHIPPED = shipped_presentation_dir()


def test_shipped_squares_presentation_is_lawful():
    p = load_presentation(SHIPPED / "squares_z2.dcat")
    T = p.double()
    assert len(p.cells) == 8
    report = check_double_category(T, T.universe())
    assert report.ok, report.summary()


def test_shipped_idempotent_presentation_is_lawful():
    T = load_presentation(SHIPPED / "idempotent.dcat").double()
    assert check_double_category(T, T.universe()).ok


def test_broken_unit_law_is_witnessed():
    text = (SHIPPED / "idempotent.dcat").read_text()
    assert "vcomp iM e = e\n" in text
    T = parse_presentation(text.replace("vcomp iM e = e\n", "vcomp iM e = iM\n")).double()
    report = check_double_category(T, T.universe())
    assert "D1 unit laws" in {c.name for c in report.failed()}
    assert all(report.replay(w) is False for c in report.failed() for w in c.witnesses)


def test_cell_with_wrong_boundary_is_rejected():
    text = (SHIPPED / "idempotent.dcat").read_text()
    with pytest.raises(SemanticError):
        parse_presentation(text.replace("cell e : M => M along 1 1", "cell e : M => U along 1 1")).double()


def test_parse_errors_report_the_line():
    with pytest.raises(ParseError) as info:
        parse_presentation("double X\nobject\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_presentation("double X\nfrobnicate a b\n")


@st.composite
def finite_monoids(draw):
    """Cyclic groups and truncated additive monoids on 1..3 elements."""
    n = draw(st.integers(1, 3))
    if draw(st.booleans()):
        return FinCategory.from_monoid(list(range(n)), lambda g, f: (g + f) % n, 0, name=f"Z{n}")
    return FinCategory.from_monoid(list(range(n)), lambda g, f: min(g + f, n - 1), 0, name=f"T{n}")


@settings(max_examples=20, deadline=None)
@given(finite_monoids())
def test_presentations_round_trip(C):
    p = presentation_of(square_double(C))
    text = serialize_presentation(p)
    q = parse_presentation(text)
    assert q == p
    assert serialize_presentation(q) == text
    T = q.double()
    assert check_double_category(T, T.universe()).ok
