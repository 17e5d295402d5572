import pytest
from hypothesis import given

from conftest import specs
from sectour.corpus import CorpusConfig, generate
from sectour.dsl import SpecSyntaxError, format_spec, parse_expression, parse_spec
from sectour.errors import InvalidParameter
from sectour.tournament import Compose, HighlyRegular, Transitive

R1, R3 = Transitive(1), HighlyRegular(3)


def test_example_parses():
    assert parse_spec("R5(R1,R1,R3,R3,R1)") == Compose(5, (R1, R1, R3, R3, R1))


def test_leaves():
    assert parse_spec("TT4") == Transitive(4)
    assert parse_spec("R7") == HighlyRegular(7)
    assert parse_spec("R1") == parse_spec("TT1") == R1


def test_nested_with_spaces():
    spec = parse_spec("R5(R1, R5(R1,R1,R3,R3,R1), R3, R5, R1)")
    assert spec.children[1] == parse_spec("R5(R1,R1,R3,R3,R1)")
    assert spec.n == 1 + 9 + 3 + 5 + 1


def test_whitespace_insensitive():
    assert parse_spec("  R3 (\n TT2 ,R1,\tR1 ) \n") == parse_spec("R3(TT2,R1,R1)")


def test_format():
    assert format_spec(parse_spec("R3(TT1,TT2,R5)")) == "R3(R1,TT2,R5)"


@pytest.mark.parametrize("text,line,col,fragment", [
    ("R5(R1,R1,R3,R1)", 1, 1, "R5 expects 5 blocks, found 4"),
    ("R3(R1,R4,R1)", 1, 8, "R4"),
    ("R4(R1,R1,R1,R1)", 1, 2, "odd"),
    ("R3(R1,R1,R1", 1, 12, "expected ')'"),
    ("R3(R1,\n  R1,\n  X1)", 3, 3, "unexpected character 'X'"),
    ("R3 R1", 1, 4, "trailing input"),
    ("TT0", 1, 3, "positive"),
    ("", 1, 1, "expected head"),
    ("R3(R1,R1,R1,R1)", 1, 1, "R3 expects 3 blocks, found 4"),
])
def test_errors_are_positioned(text, line, col, fragment):
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec(text)
    assert (err.value.line, err.value.column) == (line, col)
    assert fragment in str(err.value)
    assert isinstance(err.value, InvalidParameter)


def test_spans():
    expr = parse_expression("R3(R1,\n R3,R1)")
    assert expr.spans[()] == (1, 1)
    assert expr.spans[(2,)] == (2, 2)
    assert expr.source.startswith("R3")


def test_round_trip_corpus():
    corpus = generate(100, seed=3, cfg=CorpusConfig(max_n=30, max_depth=3, orders=(3, 5, 7, 9)))
    assert len({format_spec(s) for s in corpus}) == 100
    for spec in corpus:
        text = format_spec(spec)
        assert parse_spec(text) == spec
        assert format_spec(parse_spec(text)) == text


@given(specs(max_n=20))
def test_round_trip_hypothesis(spec):
    assert parse_spec(format_spec(spec)) == spec
