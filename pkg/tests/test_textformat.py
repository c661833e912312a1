import pytest
from hypothesis import given, settings, strategies as st

from fcnet.errors import ParseError
from fcnet.netgen import generate
from fcnet.textformat import format_net, parse

from helpers import e2, small_params

E2_TEXT = """\
place p1 tokens=1
place p2
trans a : p1 -> p2
trans b : p2 -> p1
trans c : p2 ->
"""


def test_parse_e2():
    net, m0 = parse(E2_TEXT)
    assert net == e2()
    assert m0 == (1, 0)


def test_e2_round_trips():
    assert format_net(*parse(E2_TEXT)) == E2_TEXT


def test_comments_blank_lines_and_spacing():
    text = "# header\n\n  place   p1 tokens=1   # one token\nplace p2\n\ttrans a :p1 -> p2\n".replace(":p1", ": p1")
    text += "trans b : p2 -> p1\ntrans c : p2 ->   \n"
    net, m0 = parse(text)
    assert net == e2() and m0 == (1, 0)
    assert format_net(net, m0) == E2_TEXT


def test_forward_references_and_empty_sides():
    net, m0 = parse("trans t : -> p\ntrans u : p ->\nplace p tokens=2\n")
    assert net.pre("t") == frozenset() and net.post("t") == {"p"}
    assert m0 == (2,)
    assert parse(format_net(net, m0)) == (net, m0)


def test_bytes_input():
    assert parse(E2_TEXT.encode()) == parse(E2_TEXT)


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("place p1\ntrans a : p1 -> p1 p1\n", 2, 20, "duplicate arc"),
        ("place a\ntrans a : ->\n", 2, 7, "collision"),
        ("place p\nplace p\n", 2, 7, "duplicate place"),
        ("trans t : ->\ntrans t : ->\n", 2, 7, "duplicate transition"),
        ("place p tokens=x\n", 1, 9, "tokens="),
        ("place p tokens=99999999999999999999\n", 1, 9, "exceeds"),
        ("place p-q\n", 1, 7, "invalid id"),
        ("place\n", 1, 6, "expected a place id"),
        ("place p tokens=1 extra\n", 1, 18, "unexpected"),
        ("trans t p -> q\n", 1, 9, "':'"),
        ("trans t : p q\n", 1, 14, "'->'"),
        ("trans t : p -> q -> r\n", 1, 18, "'->'"),
        ("trans t : p ->\n", 1, 11, "undeclared place"),
        ("trans t : ->\ntrans u : t ->\n", 2, 11, "not a place"),
        ("arc p t\n", 1, 1, "expected 'place' or 'trans'"),
        (b"place p\n\xff\n", 2, 1, "UTF-8"),
    ],
)
def test_parse_errors_have_positions(text, line, column, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    e = exc.value
    assert (e.line, e.column) == (line, column), str(e)
    assert fragment in e.message


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**40))
def test_generated_nets_round_trip(seed):
    net, m0 = generate(small_params(seed))
    text = format_net(net, m0)
    assert parse(text) == (net, m0)
    assert format_net(*parse(text)) == text


_ALPHABET = st.sampled_from(list("place trans tokens=0123456789 :->#\n\tpq_ab") + ["->", "place ", "trans ", "\n"])


@settings(max_examples=300, deadline=None)
@given(st.one_of(st.binary(max_size=80), st.lists(_ALPHABET, max_size=40).map("".join)))
def test_parser_never_crashes(data):
    try:
        net, m0 = parse(data)
    except ParseError:
        return
    assert parse(format_net(net, m0)) == (net, m0)
