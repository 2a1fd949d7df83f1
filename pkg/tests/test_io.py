import pytest

from hyperboot.cube import DimensionError, WordSet
from hyperboot.io import (
    format_snake,
    format_vertex_set,
    parse_snake,
    parse_vertex_set,
    read_snake,
    read_vertex_set,
    write_snake,
    write_vertex_set,
)
from hyperboot.snake import SnakePath


def test_vertex_set_comments_and_blanks():
    ws = parse_vertex_set("# header\n\n10100  # trailing\n00000\n")
    assert ws.dim == 5 and ws.texts() == ["00000", "10100"]


def test_vertex_set_errors():
    with pytest.raises(DimensionError):
        parse_vertex_set("01\n011\n")
    with pytest.raises(DimensionError):
        parse_vertex_set("# nothing\n")
    assert len(parse_vertex_set("", d=3)) == 0
    with pytest.raises(DimensionError):
        parse_vertex_set("01\n", d=3)
    with pytest.raises(ValueError):
        parse_vertex_set("0a1\n")


def test_vertex_set_roundtrip(tmp_path):
    ws = WordSet.from_strings(["011", "100", "111"])
    path = tmp_path / "s.txt"
    write_vertex_set(path, ws, "three")
    assert path.read_text().startswith("# three\n")
    assert read_vertex_set(path) == ws
    assert parse_vertex_set(format_vertex_set(ws)) == ws


def test_snake_roundtrip(tmp_path):
    s = SnakePath.from_strings(["000", "001", "011", "111"], 3)
    assert format_snake(s).splitlines()[0] == "k=3 d=3"
    path = tmp_path / "snake.txt"
    write_snake(path, s)
    assert read_snake(path) == s


def test_snake_errors():
    with pytest.raises(ValueError):
        parse_snake("")
    with pytest.raises(ValueError):
        parse_snake("k=3\n000\n")
    with pytest.raises(DimensionError):
        parse_snake("k=3 d=3\n0000\n")
