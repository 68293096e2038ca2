import json

import jsonschema
import pytest

from toroidal import fans, jacobi, qexp, vdfan
from toroidal.cones import Cone
from toroidal.cusps import Matrix2, derive_cusp_data
from toroidal.errors import SchemaMismatch
from toroidal.field import QuadraticField
from toroidal.ideals import FractionalIdeal, ideal, inverse_different
from toroidal.serialize import dumps, envelope, loads, parse_ideal, schema
from toroidal.weights import AlgebraicWeight, HalfIntegralWeight

F5 = QuadraticField(5)
O5 = FractionalIdeal.unit(F5)


def samples():
    fan = fans.build_unit_invariant_fan(F5, inverse_different(F5))
    d = vdfan.DegenerationData.standard(F5, 2)
    sigma = next(c for c in fan.cones if c.dim == 2)
    return [
        F5, F5(3, -1), ideal(F5, 7, F5(2, 1)), Cone(((1, 0), (1, 2))), Matrix2.of(F5, [[-2, 1], [-3, 1]]),
        fan, fans.smooth_subdivide_equivariant(fans.build_unit_invariant_fan(QuadraticField(2),
                                                inverse_different(QuadraticField(2)))),
        derive_cusp_data(F5(2, 1), F5(3), O5, ideal(F5, 7)), AlgebraicWeight((2, 4)),
        HalfIntegralWeight.t_over_2(2), qexp.theta_qexp(lambda a: 1, O5, 8),
        qexp.QExpansion(O5, AlgebraicWeight((2, 4)), 6, {F5.one: F5(1, 2)}),
        jacobi.orbit_constant(O5, O5, O5, F5.one, AlgebraicWeight((2, 2)), 4),
        vdfan.VDConeLabel(sigma, {(F5.zero, F5.one), (F5(0, 1), F5.zero)}), d,
    ]


@pytest.mark.parametrize("obj", samples(), ids=lambda o: type(o).__name__)
def test_round_trip(obj):
    text = dumps(obj)
    back = loads(text)
    assert back == obj
    assert dumps(back) == text
    jsonschema.validate(json.loads(text), schema())


def test_numbers_are_strings():
    doc = envelope(F5.from_surd(1, 1) / 3)
    assert doc["data"] == ["0", "2/3"]


def test_unknown_version():
    doc = envelope(F5(1, 2))
    doc["format"] = "toroidal/0"
    with pytest.raises(SchemaMismatch):
        loads(json.dumps(doc))
    doc["format"] = "toroidal/1"
    doc["kind"] = "widget"
    with pytest.raises(SchemaMismatch):
        loads(json.dumps(doc))


def test_ideal_input_forms():
    I = ideal(F5, 7, F5(2, 1))
    assert parse_ideal(F5, {"gens": [["7", "0"], ["2", "1"]]}) == I
    with pytest.raises(SchemaMismatch):
        parse_ideal(F5, {"hnf": [["7", "3"], ["0", "1"]], "den": "1"})


def test_tampered_cusp_rejected():
    cd = derive_cusp_data(F5(2, 1), F5(3), O5, ideal(F5, 7))
    doc = envelope(cd)
    doc["data"]["X"] = envelope(O5)["data"]
    with pytest.raises(SchemaMismatch):
        loads(json.dumps(doc))
