import re
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from ldo.errors import ParseError
from ldo.formula import CnfFormula
from ldo.words import (CLOSE, END, OPEN, Token, TokenKind, detect_format, emit_dimacs,
                       encode_word, formula_tokens, parse_dimacs, parse_word, read_formula,
                       read_word, tokenize)

from strategies import cnfs


def test_tokenize_example():
    assert tokenize("[a1 ~a3]$") == [OPEN, Token.lit(1), Token.lit(3, True), CLOSE, END]


def test_tokenize_single_gap():
    toks = tokenize("[~a1 a2 ~a3]$")
    assert len(toks) == 6
    assert [t.kind for t in toks] == [TokenKind.OPEN] + [TokenKind.LITERAL] * 3 + [TokenKind.CLOSE, TokenKind.END]


def test_tokenize_whitespace_and_positions():
    toks = tokenize("  [ a12\n~a3 ]\t$ ")
    assert [str(t) for t in toks] == ["[", "a12", "~a3", "]", "$"]
    assert [t.pos for t in toks] == [2, 4, 8, 12, 14]


@pytest.mark.parametrize("text, pos", [
    ("a1]", 0),
    ("[a0]$", 1),
    ("[a]$", 1),
    ("[~b1]$", 1),
    ("[a1 + a2]$", 4),
    ("[x]$", 1),
])
def test_tokenize_errors(text, pos):
    with pytest.raises(ParseError) as info:
        tokenize(text)
    assert info.value.pos == pos


def test_parse_word_example():
    f = read_word("[a1 ~a3]$")
    assert f == CnfFormula.from_ints([[1, -3]])
    assert f.n == 3 and f.m == 1


def test_parse_word_empty_formula():
    f = read_word("$")
    assert f.m == 0 and f.n == 0


def test_parse_word_empty_clause_and_override():
    f = read_word("[] [a2]$", n=5)
    assert f == CnfFormula.from_ints([[], [2]], n=5)


@pytest.mark.parametrize("text, message", [
    ("[[a1]]$", "nested"),
    ("[a1]", "missing end"),
    ("[a1]$ [a2]", "after"),
    ("]$", "without matching"),
    ("[a1 $", "inside an open clause"),
])
def test_parse_word_errors(text, message):
    with pytest.raises(ParseError, match=message):
        read_word(text)


def test_parse_word_rejects_empty_token_list():
    with pytest.raises(ParseError):
        parse_word([])


@pytest.mark.parametrize("text", ["[a1 ~a3]$", "$", "[] [~a2 a2 a2]$"])
def test_word_round_trip_examples(text):
    f = read_word(text)
    assert read_word(encode_word(f)) == f


@settings(max_examples=200, deadline=None)
@given(cnfs(max_n=12, max_m=50))
def test_word_round_trip(f):
    assert read_word(encode_word(f), n=f.n) == f


def test_parse_dimacs_example():
    assert parse_dimacs("p cnf 3 1\n1 -3 0") == CnfFormula.from_ints([[1, -3]], n=3)


def test_parse_dimacs_contradiction():
    assert parse_dimacs("p cnf 2 2\n1 0\n-1 0") == CnfFormula.from_ints([[1], [-1]], n=2)


def test_parse_dimacs_comments_multiline_and_sentinel():
    text = "c hello\nc world\np cnf 3 2\n1 -2\n 3 0 -1\n0\n%\n0\n"
    assert parse_dimacs(text) == CnfFormula.from_ints([[1, -2, 3], [-1]], n=3)


@pytest.mark.parametrize("text, message", [
    ("p cnf 1 1\n1 2 0", "exceeds"),
    ("1 0\n", "before"),
    ("c only comments\n", "missing"),
    ("p cnf 1 1\np cnf 1 1\n1 0", "duplicate"),
    ("p cnf 2 1\n1 2", "not terminated"),
    ("p dnf 2 1\n1 0", "bad header"),
    ("p cnf 2 1\n1 x 0", "not an integer"),
])
def test_parse_dimacs_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_dimacs(text)


def test_parse_dimacs_count_mismatch_warns():
    with pytest.warns(UserWarning, match="declares 3"):
        f = parse_dimacs("p cnf 2 3\n1 0\n2 0")
    assert f.m == 2


@pytest.mark.parametrize("text", ["p cnf 3 1\n1 -3 0", "p cnf 2 2\n1 0\n-1 0", "p cnf 4 2\n0\n2 2 -2 0"])
def test_dimacs_round_trip_examples(text):
    f = parse_dimacs(text)
    assert parse_dimacs(emit_dimacs(f)) == f


@settings(max_examples=200, deadline=None)
@given(cnfs(max_n=12, max_m=50))
def test_dimacs_round_trip(f):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert parse_dimacs(emit_dimacs(f)) == f


def test_detect_and_read_formula():
    assert detect_format("c x\np cnf 1 1\n1 0\n") == "dimacs"
    assert detect_format("[a1]$") == "word"
    assert read_formula("p cnf 3 1\n1 0\n") == read_formula("[a1]$", n=3)
    assert read_formula("p cnf 1 1\n1 0\n", n=4).n == 4


# --- grammar property: parse_word accepts exactly ( '[' L* ']' )* '$' -------------

_GRAMMAR = re.compile(r"(\[L*\])*\$")


def _shape(tokens):
    return "".join("L" if t.kind is TokenKind.LITERAL else t.kind.value for t in tokens)


_ANY_TOKEN = st.sampled_from([OPEN, CLOSE, END, Token.lit(1), Token.lit(2, True)])


@settings(max_examples=300, deadline=None)
@given(cnfs(max_n=4, max_m=6, max_width=3), st.data())
def test_single_token_mutations(f, data):
    tokens = formula_tokens(f)
    assert parse_word(tokens, f.n) == f
    op = data.draw(st.sampled_from(["delete", "insert", "replace"]))
    i = data.draw(st.integers(0, len(tokens) - (0 if op == "insert" else 1)))
    mutated = list(tokens)
    if op == "delete":
        del mutated[i]
    elif op == "insert":
        mutated.insert(i, data.draw(_ANY_TOKEN))
    else:
        mutated[i] = data.draw(_ANY_TOKEN)
    if _GRAMMAR.fullmatch(_shape(mutated)):
        parse_word(mutated)
    else:
        with pytest.raises(ParseError):
            parse_word(mutated)
