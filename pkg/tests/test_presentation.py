import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from thicklat.errors import (
    InvalidParameter,
    SchemaError,
    UnknownFamily,
    ValidationError,
)
from thicklat.presentation import (
    Presentation,
    TensorTable,
    Triangle,
    builtin,
    make_expr,
    parse_presentation,
    serialize_presentation,
)


def test_parse_empty_presentation():
    pres = parse_presentation('{"indecomposables":[],"triangles":[]}')
    assert pres.names == ()
    assert pres.triangles == ()
    assert pres.tensor is None


def test_parse_basic_presentation():
    pres = parse_presentation(
        '{"indecomposables":["P1","P2","S2"],"triangles":[[["P1"],["P2"],["S2"]]]}')
    assert pres.names == ("P1", "P2", "S2")
    assert pres.triangles == (Triangle((0,), (1,), (2,)),)


def test_parse_dangling_reference_names_the_culprit():
    with pytest.raises(ValidationError, match="P2"):
        parse_presentation('{"indecomposables":["P1"],"triangles":[[["P1"],["P2"],[]]]}')


def test_parse_duplicate_name():
    with pytest.raises(ValidationError, match="duplicate"):
        parse_presentation('{"indecomposables":["P1","P1"],"triangles":[]}')


@pytest.mark.parametrize("text", [
    "not json at all",
    "[1,2,3]",
    '{"indecomposables":[]}',
    '{"indecomposables":[1],"triangles":[]}',
    '{"indecomposables":["a"],"triangles":[[["a"],["a"]]]}',
    '{"indecomposables":["a"],"triangles":[],"extra":1}',
    '{"indecomposables":["a"],"triangles":"x"}',
])
def test_parse_schema_errors(text):
    with pytest.raises(SchemaError):
        parse_presentation(text)


def test_parse_rejects_separator_in_name():
    with pytest.raises(ValidationError):
        parse_presentation('{"indecomposables":["a|b"],"triangles":[]}')


def test_parse_tensor_missing_pair():
    doc = {
        "indecomposables": ["a", "b"],
        "triangles": [],
        "tensor": {"unit": ["a"], "table": {"a|a": ["a"], "a|b": [], "b|a": []}},
    }
    with pytest.raises(ValidationError, match="missing"):
        parse_presentation(json.dumps(doc))


def test_parse_tensor_asymmetric():
    doc = {
        "indecomposables": ["a", "b"],
        "triangles": [],
        "tensor": {
            "unit": ["a"],
            "table": {"a|a": ["a"], "a|b": ["a"], "b|a": ["b"], "b|b": ["b"]},
        },
    }
    with pytest.raises(ValidationError, match="symmetric"):
        parse_presentation(json.dumps(doc))


def test_parse_tensor_unknown_name_and_bad_key():
    base = {"indecomposables": ["a"], "triangles": []}
    with pytest.raises(ValidationError):
        parse_presentation(json.dumps(
            {**base, "tensor": {"unit": ["a"], "table": {"a|z": ["a"], "a|a": ["a"]}}}))
    with pytest.raises(SchemaError):
        parse_presentation(json.dumps(
            {**base, "tensor": {"unit": ["a"], "table": {"aa": ["a"]}}}))


@pytest.mark.parametrize("family,n", [
    ("a2", None), ("point", None), ("an", 3), ("product", 3),
])
def test_roundtrip_builtins(family, n):
    pres = builtin(family, n)
    assert parse_presentation(serialize_presentation(pres)) == pres


@st.composite
def presentations(draw):
    n = draw(st.integers(min_value=0, max_value=5))
    names = tuple(f"m{i}" for i in range(n))
    exprs = st.lists(st.integers(0, n - 1), max_size=4).map(make_expr) if n else st.just(())
    triangles = tuple(
        Triangle(draw(exprs), draw(exprs), draw(exprs))
        for _ in range(draw(st.integers(0, 4)))
    )
    tensor = None
    if n and draw(st.booleans()):
        cells = [[None] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                value = draw(exprs)
                cells[x][y] = value
                cells[y][x] = value
        tensor = TensorTable(draw(exprs), tuple(tuple(row) for row in cells))
    return Presentation(names, triangles, tensor)


@given(presentations())
def test_roundtrip_random_presentations(pres):
    assert parse_presentation(serialize_presentation(pres)) == pres


def test_builtin_a2_shape():
    pres = builtin("a2")
    assert pres.names == ("P1", "P2", "S2")
    assert pres.triangles == (Triangle((0,), (1,), (2,)),)


@pytest.mark.parametrize("n", range(1, 9))
def test_an_counts(n):
    pres = builtin("an", n)
    assert len(pres.names) == math.comb(n + 1, 2)
    assert len(pres.triangles) == math.comb(n + 1, 3)


def test_an3_shape():
    pres = builtin("an", 3)
    assert len(pres.names) == 6
    assert len(pres.triangles) == 4


def test_an2_isomorphic_to_a2_by_relabeling():
    a2 = builtin("a2")
    an2 = builtin("an", 2)
    assert len(an2.names) == 3
    matches = []
    for perm in itertools.permutations(range(3)):
        relabeled = {
            tuple(tuple(sorted(perm[i] for i in expr)) for expr in (t.a, t.b, t.c))
            for t in an2.triangles
        }
        original = {(t.a, t.b, t.c) for t in a2.triangles}
        if relabeled == original:
            matches.append(perm)
    assert (0, 1, 2) in matches  # [0,1] -> P1, [0,2] -> P2, [1,2] -> S2


def test_builtin_point():
    pres = builtin("point")
    assert pres.names == ("k",)
    assert pres.triangles == ()
    assert pres.tensor.unit == (0,)
    assert pres.tensor.product(0, 0) == (0,)


def test_builtin_product():
    pres = builtin("product", 3)
    assert pres.names == ("e1", "e2", "e3")
    assert pres.tensor.unit == (0, 1, 2)
    for x in range(3):
        for y in range(3):
            assert pres.tensor.product(x, y) == ((x,) if x == y else ())


def test_builtin_errors():
    with pytest.raises(UnknownFamily):
        builtin("nope")
    with pytest.raises(InvalidParameter):
        builtin("an")
    with pytest.raises(InvalidParameter):
        builtin("product", 0)
    with pytest.raises(InvalidParameter):
        builtin("a2", 3)


def test_expr_normalization():
    assert make_expr([2, 0, 2]) == (0, 2, 2)
    assert make_expr([]) == ()


def test_label_and_expr_names():
    pres = builtin("a2")
    assert pres.label(0b101) == "{P1,S2}"
    assert pres.label(0) == "{}"
    assert pres.expr_names((0, 1, 1)) == ["P1", "P2", "P2"]
