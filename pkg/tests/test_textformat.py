import pytest
from hypothesis import given

from monocycle.constructions import example1, k5_two_bulls
from monocycle.textformat import FormatError, parse, read, serialize, write
from strategies import colored_graphs


def test_round_trip_example1():
    g = example1(2, 0).graph
    assert parse(serialize(g)) == g


def test_serialization_is_one_indexed_and_sorted():
    text = serialize(k5_two_bulls().graph, ["bulls"])
    lines = text.splitlines()
    assert lines[0] == "c bulls"
    assert lines[1] == "p cgraph 5 10"
    assert lines[2] == "e 1 2 R"
    assert all(line.startswith("e ") for line in lines[2:])


def test_dual_color_token():
    g = parse("p cgraph 2 1\ne 1 2 RB\n")
    assert serialize(g).splitlines()[-1] == "e 1 2 RB"


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 1 2 R\n", 1),
        ("p cgraph 2 1\ne 1 3 R\n", 2),
        ("p cgraph 2 1\ne 1 1 R\n", 2),
        ("p cgraph 2 1\ne 1 2 G\n", 2),
        ("p cgraph 2 1\np cgraph 2 1\n", 2),
        ("p graph 2 1\n", 1),
        ("p cgraph 2 1\nx\n", 2),
        ("p cgraph 2 1\ne 1 a R\n", 2),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(FormatError) as err:
        parse(text)
    assert err.value.line == line


def test_edge_count_mismatch_and_missing_header():
    with pytest.raises(FormatError):
        parse("p cgraph 3 2\ne 1 2 R\n")
    with pytest.raises(FormatError):
        parse("c only comments\n")


def test_file_round_trip(tmp_path):
    g = example1(3, 1).graph
    path = tmp_path / "g.cg"
    write(g, path, ["x"])
    assert read(path) == g


@given(colored_graphs(min_n=1, max_n=9))
def test_round_trip_property(g):
    assert parse(serialize(g)) == g
    assert serialize(parse(serialize(g))) == serialize(g)
