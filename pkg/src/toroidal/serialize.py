"""JSON round-tripping for the domain types.

Every number is written as an exact string ("3", "-7/2"). A document is an
envelope ``{"format": FORMAT, "kind": ..., "field": ..., "data": ...}``;
an unknown format tag or kind raises SchemaMismatch.
"""
import json
from fractions import Fraction
from importlib import resources

from .cones import Cone
from .cusps import CuspData, Matrix2, derive_cusp_data
from .errors import SchemaMismatch
from .fans import Fan
from .field import FieldDescriptor, FieldElement, QuadraticField, UnitGroupData
from .ideals import FractionalIdeal
from .jacobi import JacobiExpansion
from .qexp import QExpansion
from .vdfan import DegenerationData, VDConeLabel
from .weights import AlgebraicWeight, HalfIntegralWeight

FORMAT = "toroidal/1"


def num(x):
    return str(Fraction(x))


def parse_num(s):
    try:
        return Fraction(s)
    except (TypeError, ValueError) as exc:
        raise SchemaMismatch(f"not an exact number: {s!r}") from exc


def field_to_data(F):
    if F.D is not None:
        return {"degree": 2, "D": F.D}
    return {"degree": F.degree, "table": [[[num(c) for c in e] for e in row] for row in F.table]}


def field_from_data(d):
    if d.get("D") is not None:
        return QuadraticField(int(d["D"]))
    table = tuple(tuple(tuple(parse_num(c) for c in e) for e in row) for row in d["table"])
    return FieldDescriptor(int(d["degree"]), table)


def elem(x):
    return [num(c) for c in x.c]


def parse_elem(F, d):
    return FieldElement(F, [parse_num(c) for c in d])


def ideal_to_data(I):
    return {"hnf": [[str(x) for x in r] for r in I.hnf], "den": str(I.den)}


def parse_ideal(F, d):
    """Canonical form, or {"gens": [...]} meaning the sum of the principal ideals."""
    if "gens" in d:
        return FractionalIdeal.from_generators(F, [parse_elem(F, g) for g in d["gens"]])
    hnf = [[int(x) for x in r] for r in d["hnf"]]
    I = FractionalIdeal.from_lattice_rows(F, [[Fraction(x, int(d["den"])) for x in r] for r in hnf])
    if [list(r) for r in I.hnf] != hnf or I.den != int(d["den"]):
        raise SchemaMismatch("ideal is not in canonical form")
    return I


def value_to_data(v):
    if isinstance(v, FieldElement):
        return elem(v)
    return num(v)


def parse_value(F, d):
    if isinstance(d, list):
        return parse_elem(F, d)
    return parse_num(d)


def weight_to_data(w):
    if w.half:
        return {"weight": list(w.doubled), "half": True}
    return {"weight": list(w.k), "half": False}


def parse_weight(d):
    if d.get("half"):
        return HalfIntegralWeight(tuple(int(x) for x in d["weight"]))
    return AlgebraicWeight(tuple(int(x) for x in d["weight"]))


def _key(x):
    return x.sort_key()


def to_data(obj):
    """Plain JSON data for a domain object (without the envelope)."""
    if isinstance(obj, FieldDescriptor):
        return field_to_data(obj)
    if isinstance(obj, FieldElement):
        return elem(obj)
    if isinstance(obj, FractionalIdeal):
        return ideal_to_data(obj)
    if isinstance(obj, Cone):
        return obj.to_json()
    if isinstance(obj, Matrix2):
        return [[elem(obj.a), elem(obj.b)], [elem(obj.c), elem(obj.d)]]
    if isinstance(obj, UnitGroupData):
        return {"fundamental": elem(obj.fundamental),
                "totally_positive": [elem(u) for u in obj.totally_positive],
                "squares": [elem(u) for u in obj.squares],
                "modulus": ideal_to_data(obj.modulus) if obj.modulus is not None else None,
                "congruence": [elem(u) for u in obj.congruence]}
    if isinstance(obj, Fan):
        return {"lattice": ideal_to_data(obj.lattice), "unit": elem(obj.unit),
                "symmetry": [[str(x) for x in r] for r in obj.symmetry],
                "anchor": [str(x) for x in obj.anchor],
                "cones": [c.to_json() for c in obj.cones],
                "fundamental": list(range(len(obj.cones)))}
    if isinstance(obj, CuspData):
        return {"a": elem(obj.a), "c": elem(obj.c), "c_ideal": ideal_to_data(obj.c_ideal),
                "level": ideal_to_data(obj.level), "b": ideal_to_data(obj.b),
                "b_prime": ideal_to_data(obj.b_prime), "a_ideal": ideal_to_data(obj.a_ideal),
                "X": ideal_to_data(obj.X), "X_star": ideal_to_data(obj.X_star),
                "unramified": obj.unramified, "subgroup_only": obj.subgroup_only,
                "congruence_units": [elem(u) for u in obj.units.congruence] if obj.units else []}
    if isinstance(obj, (AlgebraicWeight, HalfIntegralWeight)):
        return weight_to_data(obj)
    if isinstance(obj, QExpansion):
        d = {"X": ideal_to_data(obj.X), "T": num(obj.T), "modulus": obj.modulus,
             "coeffs": [{"xi": elem(xi), "a": value_to_data(obj.coeffs[xi])}
                        for xi in sorted(obj.coeffs, key=_key)]}
        d.update(weight_to_data(obj.weight))
        d["cusp"] = to_data(obj.cusp) if obj.cusp is not None else None
        return d
    if isinstance(obj, JacobiExpansion):
        d = {"X": ideal_to_data(obj.X), "a_ideal": ideal_to_data(obj.a_ideal),
             "b_ideal": ideal_to_data(obj.b_ideal), "mu": elem(obj.mu), "T": num(obj.T),
             "coeffs": [{"xi": elem(xi), "alpha": elem(al), "a": value_to_data(obj.coeffs[(xi, al)])}
                        for xi, al in sorted(obj.coeffs, key=lambda k: (_key(k[0]), _key(k[1])))]}
        d.update(weight_to_data(obj.weight))
        return d
    if isinstance(obj, VDConeLabel):
        return {"sigma": obj.sigma.to_json(), "B": [[elem(b) for b in beta] for beta in obj.sorted_B()]}
    if isinstance(obj, DegenerationData):
        return {"mus": [elem(m) for m in obj.mus], "a_ideal": ideal_to_data(obj.a_ideal),
                "b_ideal": ideal_to_data(obj.b_ideal), "X_star": ideal_to_data(obj.X_star)}
    raise TypeError(f"no serialization for {type(obj).__name__}")


def _cone(d):
    return Cone(tuple(tuple(int(x) for x in r) for r in d["rays"]))


def from_data(kind, F, d):
    if kind == "field":
        return field_from_data(d)
    if kind == "element":
        return parse_elem(F, d)
    if kind == "ideal":
        return parse_ideal(F, d)
    if kind == "cone":
        return _cone(d)
    if kind == "matrix":
        return Matrix2(*(parse_elem(F, e) for row in d for e in row))
    if kind == "fan":
        return Fan(parse_ideal(F, d["lattice"]), parse_elem(F, d["unit"]),
                   tuple(tuple(int(x) for x in r) for r in d["symmetry"]),
                   tuple(int(x) for x in d["anchor"]), tuple(_cone(c) for c in d["cones"]))
    if kind == "cusp":
        cusp = derive_cusp_data(parse_elem(F, d["a"]), parse_elem(F, d["c"]),
                                parse_ideal(F, d["c_ideal"]), parse_ideal(F, d["level"]))
        if to_data(cusp) != d:
            raise SchemaMismatch("stored cusp data disagrees with the recomputed ideals")
        return cusp
    if kind == "weight":
        return parse_weight(d)
    if kind == "qexp":
        cusp = from_data("cusp", F, d["cusp"]) if d.get("cusp") else None
        coeffs = {parse_elem(F, c["xi"]): parse_value(F, c["a"]) for c in d["coeffs"]}
        return QExpansion(parse_ideal(F, d["X"]), parse_weight(d), parse_num(d["T"]), coeffs,
                          cusp=cusp, modulus=d.get("modulus"))
    if kind == "jacobi":
        coeffs = {(parse_elem(F, c["xi"]), parse_elem(F, c["alpha"])): parse_value(F, c["a"])
                  for c in d["coeffs"]}
        return JacobiExpansion(parse_ideal(F, d["X"]), parse_ideal(F, d["a_ideal"]),
                               parse_ideal(F, d["b_ideal"]), parse_elem(F, d["mu"]),
                               parse_weight(d), parse_num(d["T"]), coeffs)
    if kind == "vd-label":
        return VDConeLabel(_cone(d["sigma"]), frozenset(tuple(parse_elem(F, b) for b in beta)
                                                        for beta in d["B"]))
    if kind == "degeneration":
        return DegenerationData(tuple(parse_elem(F, m) for m in d["mus"]), parse_ideal(F, d["a_ideal"]),
                                parse_ideal(F, d["b_ideal"]), parse_ideal(F, d["X_star"]))
    raise SchemaMismatch(f"unknown kind {kind!r}")


KINDS = {FieldDescriptor: "field", FieldElement: "element", FractionalIdeal: "ideal", Cone: "cone",
         Matrix2: "matrix", Fan: "fan", CuspData: "cusp", AlgebraicWeight: "weight",
         HalfIntegralWeight: "weight", QExpansion: "qexp", JacobiExpansion: "jacobi",
         VDConeLabel: "vd-label", DegenerationData: "degeneration"}


def _field_of(obj):
    for attr in ("F",):
        F = getattr(obj, attr, None)
        if isinstance(F, FieldDescriptor):
            return F
    for attr in ("lattice", "X", "a_ideal"):
        inner = getattr(obj, attr, None)
        if isinstance(inner, FractionalIdeal):
            return inner.F
    if isinstance(obj, VDConeLabel):
        for beta in obj.B:
            return beta[0].F
    return None


def envelope(obj):
    kind = KINDS.get(type(obj))
    if kind is None:
        raise TypeError(f"no serialization for {type(obj).__name__}")
    F = _field_of(obj)
    return {"format": FORMAT, "kind": kind, "field": field_to_data(F) if F is not None else None,
            "data": to_data(obj)}


def dumps(obj):
    return json.dumps(envelope(obj), sort_keys=True, indent=2) + "\n"


def loads(text):
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise SchemaMismatch(f"unsupported format tag {doc.get('format') if isinstance(doc, dict) else None!r}")
    F = field_from_data(doc["field"]) if doc.get("field") else None
    return from_data(doc.get("kind"), F, doc["data"])


def schema():
    """The JSON schema shipped with the package."""
    return json.loads(resources.files("toroidal").joinpath("schema.json").read_text())
