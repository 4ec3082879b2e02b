import json
from fractions import Fraction

import pytest

from fsreal import (
    Curve1D,
    PointSeq1D,
    SignVectorSet,
    Witness,
    compute_diagram_1d,
    gen_partition,
    gen_random_instance,
)
from fsreal.formats import FormatError, parse, serialize


def _round_trip(instance):
    text = serialize(instance)
    again = parse(text)
    assert serialize(again) == text
    return again


def test_matrix_round_trip():
    m = gen_random_instance(4, kind="matrix")
    assert _round_trip(m) == m


def test_diagram_round_trip(partition_diagram):
    assert _round_trip(partition_diagram) == partition_diagram


def test_rational_diagram_round_trip():
    d = compute_diagram_1d(
        Curve1D([0, Fraction(5, 3)]), Curve1D([Fraction(1, 3), Fraction(7, 6)]), Fraction(1, 2)
    )
    assert _round_trip(d) == d


def test_witness_round_trip():
    w = Witness(Curve1D([0, 2, 1]), Curve1D([Fraction(1, 3), 2]), Fraction(1, 2))
    again = _round_trip(w)
    assert again.curve_p == w.curve_p and again.curve_q == w.curve_q


def test_point_witness_round_trip():
    w = Witness(PointSeq1D([0, 0, 1]), PointSeq1D([2]), 1)
    again = _round_trip(w)
    assert isinstance(again.curve_p, PointSeq1D)


def test_signvectors_round_trip():
    s = SignVectorSet.from_strings(["--", "++", "-+", "+-"])
    assert _round_trip(s) == s


def test_rational_string_parsing():
    d = compute_diagram_1d(Curve1D([0, 1]), Curve1D([0, 1]), Fraction(1, 3))
    obj = json.loads(serialize(d))
    assert obj["epsilon"] == "1/3"
    assert parse(json.dumps(obj)).epsilon == Fraction(1, 3)


def test_bad_entry_rejected():
    bad = {"format": "fsreal/1", "kind": "matrix", "rows": 1, "cols": 1, "entries": [[2]]}
    with pytest.raises(FormatError):
        parse(json.dumps(bad))


def test_unknown_field_rejected():
    bad = {"format": "fsreal/1", "kind": "matrix", "rows": 1, "cols": 1, "entries": [[1]], "extra": 1}
    with pytest.raises(FormatError):
        parse(json.dumps(bad))


def test_unknown_kind_rejected():
    with pytest.raises(FormatError):
        parse(json.dumps({"format": "fsreal/1", "kind": "nope"}))


def test_wrong_format_version_rejected():
    with pytest.raises(FormatError):
        parse(json.dumps({"format": "fsreal/2", "kind": "matrix"}))


def test_malformed_json_rejected():
    with pytest.raises(FormatError):
        parse("{not json")


def test_structurally_invalid_diagram_rejected():
    text = serialize(gen_partition([2, 2]))
    obj = json.loads(text)
    obj["cells"][0][0]["cHi"] = "99"  # slab width != 2*eps
    with pytest.raises(FormatError):
        parse(json.dumps(obj))
