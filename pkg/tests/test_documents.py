import json
from fractions import Fraction as F

import pytest

from thickness import Interval, make_explicit_cutout, make_ifs, make_middle_cantor
from thickness.documents import build, dump, dumps, parse
from thickness.errors import ParseError
from thickness.setsrd import CornerCantor, CubeRd, ExplicitTree, carpet_spec

OBJECTS = [
    make_middle_cantor(F(1, 3)),
    make_explicit_cutout(Interval(0, 10), [Interval(4, 6), Interval(1, 2)]),
    make_ifs(Interval(0, 1), [(F(1, 3), 0), (F(1, 2), F(1, 2))]),
    CornerCantor(2, 10, F(7, 50)),
    CornerCantor(1, 2, F(2, 3), CubeRd((5,), 2)),
    ExplicitTree((CubeRd((0, 0), 1), [(CubeRd((F(1, 2), F(1, 2)), F(1, 4)), [])])),
    carpet_spec(2),
]


@pytest.mark.parametrize("obj", OBJECTS, ids=lambda o: type(o).__name__)
def test_round_trip(obj):
    doc = dump(obj)
    again = dump(build(json.loads(json.dumps(doc))))
    assert again == doc


def test_parse_reads_rationals_exactly():
    doc = parse('{"kind": "middle_cantor", "epsilon": "1/3"}')
    assert doc.kind == "middle_cantor" and doc.dimension == 1
    assert doc.value.thickness().value == 1


def test_dimension_of_cube_documents():
    assert parse(dumps(CornerCantor(3, 2, F(1, 2)))).dimension == 3
    assert parse(dumps(carpet_spec(1))).dimension == 2


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"kind": "spiral"}',
    '{"kind": "middle_cantor"}',
    '{"kind": "middle_cantor", "epsilon": 0.3}',
    '{"kind": "middle_cantor", "epsilon": "2"}',
    '{"kind": "cutout", "hull": ["0", "1"], "gaps": [["1/2", "2"]]}',
    '{"kind": "corner_cantor", "d": "2", "n": 10, "ell": "7/50"}',
])
def test_bad_documents(text):
    with pytest.raises(ParseError):
        parse(text)
