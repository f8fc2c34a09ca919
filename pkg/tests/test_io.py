"""Text exchange format: round trips and parse failures."""

import io as stdio

import pytest

from resglue import io
from resglue.core import godel_chain, table_equal
from resglue.io import ParseError
from resglue.partial import PartialRL

from helpers import luk, two_coatom_partial, two_potent_4chain


GODEL2 = (
    "resglue 1\nkind rl\nn 2\nunit 1\nzero 0\n"
    "leq\n11\n01\n"
    "join\n0 1\n1 1\nmeet\n0 0\n0 1\nmul\n0 0\n0 1\n"
    "ldiv\n1 1\n0 1\nrdiv\n1 0\n1 1\nend\n"
)


def test_dump_format_is_stable():
    assert io.dumps(godel_chain(2)) == GODEL2


def test_total_round_trips_are_bit_exact():
    for a in (godel_chain(5), luk(4), two_potent_4chain()):
        text = io.dumps(a)
        b = io.loads(text)
        assert table_equal(a, b)
        assert io.dumps(b) == text


def test_partial_round_trip():
    l5 = two_coatom_partial()
    b = io.loads(io.dumps(l5))
    assert isinstance(b, PartialRL)
    assert b.table_key() == l5.table_key()


def test_labels_survive():
    from resglue.core import from_leq_mul
    g = godel_chain(3)
    a = from_leq_mul(g.leq, g.mul, g.unit, zero=0, labels=("o", "m", "e"))
    b = io.loads(io.dumps(a))
    assert b.labels == ("o", "m", "e")


def test_file_and_stream_targets(tmp_path):
    a = luk(3)
    p = tmp_path / "alg.rl"
    io.dump(a, str(p))
    assert table_equal(io.load(str(p)), a)
    buf = stdio.StringIO()
    io.dump(a, buf)
    buf.seek(0)
    assert table_equal(io.load(buf), a)


def test_comments_and_blank_lines_ignored():
    text = GODEL2.replace("kind rl\n", "kind rl\n\n# a remark\n")
    assert table_equal(io.loads(text), godel_chain(2))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError):
        io.loads("nope 1\nkind rl\n")
    with pytest.raises(ParseError):
        io.loads(GODEL2.replace("end\n", ""))
    # undefined cells are only legal in partial algebras
    bad = GODEL2.replace("ldiv\n1 1\n0 1\n", "ldiv\n1 -1\n0 1\n")
    with pytest.raises(ParseError) as exc:
        io.loads(bad)
    assert exc.value.lineno > 0
    with pytest.raises(ParseError):
        io.loads(GODEL2.replace("mul\n0 0\n0 1\n", "mul\n0 7\n0 1\n"))


def test_truncated_table_rejected():
    with pytest.raises(ParseError):
        io.loads(GODEL2.replace("rdiv\n1 0\n1 1\n", "rdiv\n1 0\n"))
