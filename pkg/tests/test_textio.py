import pytest

from lasagna.corpus import closed_corpus, glue_corpus, square_tangles
from lasagna.diagram import DiagramError
from lasagna.linalg import Field
from lasagna.textio import (ParseError, parse_diagram, parse_module, parse_relations,
                            serialize_diagram)


def test_minimal_unknot():
    d = parse_diagram("components: 1\n")
    assert d.is_closed and d.n_components() == 1 and d.n_crossings == 0


def test_positive_hopf_document():
    text = """
    # positive Hopf link
crossings: (1, 3, 2, 4)
  (3, 1, 4, 2)
"""
    d = parse_diagram(text.replace("\n    #", "\n#"))
    assert d.writhe == 2


def test_label_used_three_times():
    with pytest.raises(DiagramError) as e:
        parse_diagram("crossings: (1 1 2 2) (1 3 3 4)\n")
    assert e.value.rule == "label-occurs-twice"
    assert e.value.label == 1


@pytest.mark.parametrize("text,line,col", [
    ("crossings: (1, 2, 3, 4\n", 1, 23),
    ("framing: 0\nbogus: 1\n", 2, 1),
    ("top: 1 2\ntop: 3 4\n", 2, 1),
    ("crossings: (1, 2, x, 4)\n", 1, 19),
    ("  1 2\n", 1, 1),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_diagram(text)
    assert (e.value.line, e.value.column) == (line, col)
    assert e.value.rule == "syntax"


def test_crossing_arity_is_a_syntax_error():
    with pytest.raises(ParseError):
        parse_diagram("crossings: (1, 2, 3)\n")


def _all_diagrams():
    out = dict(closed_corpus())
    out.update(square_tangles())
    for name, up, low in glue_corpus():
        out[name + " upper"] = up
        out[name + " lower"] = low
    return out


@pytest.mark.parametrize("name,d", sorted(_all_diagrams().items()))
def test_round_trip(name, d):
    text = serialize_diagram(d)
    parsed = parse_diagram(text)
    assert parsed.canonical() == d.canonical()
    assert serialize_diagram(parse_diagram(serialize_diagram(parsed))) == serialize_diagram(parsed)


def test_module_and_relation_files():
    m = parse_module({"dims": [[0, 0, 2], [1, 2, 1]]})
    assert m.dims == {(0, 0): 2, (1, 2): 1}
    rels = parse_relations({"relations": [{"epsilon": 1, "blocks": [
        {"degree": [0, 0], "matrix": [[1, 0], [0, 1]]}]}]}, Field(2))
    assert rels[0].blocks[(0, 0)].shape == (2, 2)
    with pytest.raises(ValueError):
        parse_module({"dims": [[0, 0]]})
    with pytest.raises(ValueError):
        parse_relations({"relations": [{"blocks": [{"degree": [0, 0], "matrix": [[1], [0, 1]]}]}]},
                        Field(2))
