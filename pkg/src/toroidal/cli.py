"""Command-line entry point.

Each subcommand calls one library operation and prints JSON. Exit codes:
0 when every reported check passes, 1 when one fails (the witness is in
the output), 2 for usage or configuration errors.
"""
import argparse
import json
import sys
from dataclasses import fields
from fractions import Fraction

from . import cones as cn
from . import fans, hodge, jacobi, qexp, vdfan
from .cusps import (classify_cusps, derive_cusp_data, find_torsion_witness,
                    nt_random_torsion_search, sample_cusps, torsion_probe)
from .errors import SchemaMismatch, ToroidalError
from .field import QuadraticField, fundamental_unit, totally_positive_square_units
from .ideals import FractionalIdeal, check_NT, class_representatives
from .pipeline import RunConfig, parse_ideal_spec, report_text, run_pipeline
from .serialize import envelope, loads, to_data
from .weights import AlgebraicWeight


class UsageError(Exception):
    pass


def _vec(text):
    """'1,-2/3' -> (Fraction(1), Fraction(-2, 3))."""
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad coordinate vector {text!r}") from exc


def _vecs(text):
    return [_vec(t) for t in text.split(";") if t]


def _elem(F, text):
    v = _vec(text)
    return F(*v) if len(v) > 1 else F(v[0])


def _ideal(F, text, default="o"):
    try:
        return parse_ideal_spec(F, text or default)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad ideal {text!r}: {exc}") from exc


def _cone(text):
    rays = [tuple(int(x) for x in v) for v in _vecs(text or "")]
    if not rays:
        raise UsageError("--rays is required, e.g. --rays '1,0;1,2'")
    return cn.Cone(tuple(rays))


def _read(path, cls):
    if not path:
        raise UsageError("--input is required")
    try:
        with open(path) as fh:
            obj = loads(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not isinstance(obj, cls):
        raise UsageError(f"{path} holds a {type(obj).__name__}, expected {cls.__name__}")
    return obj


# -- handlers: each returns (payload, ok) ------------------------------------

def cmd_field(a, F):
    data = totally_positive_square_units(F)
    return {"field": to_data(F), "basis": [to_data(b) for b in F.basis],
            "discriminant": str(F.discriminant), "fundamental_unit": to_data(fundamental_unit(F)),
            "square_generator": to_data(data.square_generator)}, True


def cmd_ideal(a, F):
    I = _ideal(F, a.ideal)
    if a.op == "dual":
        return {"ideal": to_data(I), "trace_dual": to_data(I.trace_dual())}, True
    if a.op == "mul":
        J = _ideal(F, a.other)
        return {"product": to_data(I * J)}, True
    if a.op == "norm":
        return {"norm": str(I.norm())}, True
    n = _ideal(F, a.level, "7")
    ok = check_NT(n, I)
    out = {"NT": ok}
    if not ok:
        w = find_torsion_witness(I, n)
        out["witness"] = to_data(w) if w is not None else None
        out["order"] = torsion_probe(w) if w is not None else None
    return out, ok


def cmd_cone(a, F):
    sigma = _cone(a.rays)
    if a.op == "smooth":
        return {"cone": sigma.to_json(), "smooth": cn.is_smooth(sigma)}, True
    if a.op == "hilbert-basis":
        return {"cone": sigma.to_json(), "hilbert_basis": [list(v) for v in cn.hilbert_basis(sigma)]}, True
    return {"faces": [{"face": t.to_json(), "dim": t.dim, "orbit_dim": cn.orbit_dimension(t)}
                      for t in cn.faces(sigma)]}, True


def _fan(a, F):
    if a.input:
        return _read(a.input, fans.Fan)
    return fans.build_unit_invariant_fan(F, _ideal(F, a.ideal, "dual-o"))


def cmd_fan(a, F):
    fan = _fan(a, F)
    if a.op == "build":
        return envelope(fan), True
    if a.op == "subdivide":
        return envelope(fans.smooth_subdivide_equivariant(fan)), True
    out, ok = {"orbit_counts": {str(k): v for k, v in fans.orbit_counts(fan).items()},
               "invariant": fans.check_invariance(fan), "axioms": fans.check_fan_axioms(fan)}, True
    ok = out["invariant"] and out["axioms"]
    if a.complete or not a.smooth:
        rep = fans.is_complete_mod_units(fan, a.samples, a.seed)
        out["complete"] = rep.complete
        out["samples"] = rep.samples
        if rep.witness is not None:
            out["witness"] = [str(x) for x in rep.witness]
        ok = ok and rep.complete
    if a.smooth:
        out["smooth"] = fans.is_smooth_fan(fan)
        ok = ok and out["smooth"]
    return out, ok


def cmd_cusps(a, F):
    c_ideal, n = _ideal(F, a.ideal), _ideal(F, a.level, "7")
    if a.op == "derive":
        cusp = derive_cusp_data(_elem(F, a.a or "1"), _elem(F, a.c or "0"), c_ideal, n)
        return envelope(cusp), True
    if a.op == "classify":
        cusps = sample_cusps(F, a.count, a.seed)
        cls = classify_cusps(c_ideal, n, cusps, class_representatives(F))
        return {"classes": [{"a": to_data(p[0]), "c": to_data(p[1]), "class": k}
                            for p, k in cls.items()]}, True
    rep = nt_random_torsion_search(c_ideal, n, a.samples, seed=a.seed)
    return {"trials": rep.trials, "seed": rep.seed, "NT": rep.nt, "torsion_free": rep.torsion_free,
            "torsion": [{"matrix": to_data(m), "order": k} for m, k in rep.torsion]}, rep.torsion_free


def _theta(a, F):
    return qexp.theta_qexp(lambda x: 1, _ideal(F, a.ideal), a.trace_bound)


def cmd_theta(a, F):
    f = _theta(a, F)
    return envelope(f), qexp.koecher_check(f)


def cmd_qexp(a, F):
    if a.op == "theta":
        return cmd_theta(a, F)
    if a.op == "reduce":
        if not a.xi:
            raise UsageError("--xi is required")
        rep, k = qexp.orbit_reduce(_elem(F, a.xi))
        return {"representative": to_data(rep), "power": k}, True
    f = _read(a.input, qexp.QExpansion) if a.input else _theta(a, F)
    if a.op == "padic":
        ok = qexp.padic_congruence(f, a.p, a.m)
        return {"p": a.p, "m": a.m, "divisible": ok}, True
    units = [totally_positive_square_units(f.X.F).fundamental, -f.X.F.one]
    rel = qexp.verify_unit_relation(f, units) if not f.weight.half else None
    ok = qexp.koecher_check(f) and (rel is None or rel.ok)
    out = {"koecher": qexp.koecher_check(f)}
    if rel is not None:
        out["unit_relation"] = {"ok": rel.ok, "checked": rel.checked,
                                "witness": _witness(rel.witness)}
    return out, ok


def _witness(w):
    if w is None:
        return None
    if isinstance(w, (list, tuple)):
        return [_witness(x) for x in w]
    try:
        return to_data(w)
    except TypeError:
        return str(w)


def cmd_jacobi(a, F):
    if a.op == "enumerate":
        mu = _elem(F, a.mu)
        X = _ideal(F, a.ideal)
        if a.orbit_constant:
            w = AlgebraicWeight((2,) * F.degree)
            return envelope(jacobi.orbit_constant(X, X, FractionalIdeal.unit(F), mu, w,
                                                  a.trace_bound, a.seed)), True
        pts = jacobi.enumerate_support(mu, X, X, a.trace_bound)
        return {"count": len(pts), "support": [[to_data(x), to_data(y)] for x, y in pts]}, True
    f = _read(a.input, jacobi.JacobiExpansion)
    betas = [f.b_ideal.element(e) for e in ((1, 0), (0, 1), (-1, 0), (1, -1))]
    units = [fundamental_unit(F), -F.one] if a.units else []
    rep = jacobi.verify_jacobi_relations(f, betas, units)
    ok = rep.ok and jacobi.jacobi_koecher_check(f)
    return {"ok": rep.ok, "checked": rep.checked, "koecher": jacobi.jacobi_koecher_check(f),
            "witness": _witness(rep.witness)}, ok


def cmd_hodge(a, F):
    try:
        w = AlgebraicWeight(tuple(int(x) for x in a.weights.split(",")))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sym = hodge.verify_weight_symmetry(w)
    table = hodge.bgg_table(w)
    return {"weight": list(w.k), "multiset": hodge.hodge_tate_multiset(w), "symmetry": sym,
            "bgg": {str(i): [{"J": list(J), "size": h, "degree": n} for J, h, n in terms]
                    for i, terms in table.items()}}, sym


def _vd_point(a, data):
    F = data.F
    if not a.q:
        raise UsageError("--q is required")
    q = _elem(F, a.q)
    ls = [_elem(F, t) for t in (a.l or "").split(";") if t] or [F.zero] * data.s
    if len(ls) != data.s:
        raise UsageError(f"--l needs {data.s} entries separated by ';'")
    return q, tuple(ls)


def cmd_vd(a, F):
    data = vdfan.DegenerationData.standard(F, a.s)
    q, l = _vd_point(a, data)
    if a.op == "phi":
        val, arg = vdfan.phi(data, q, l)
        return {"phi": str(val), "argmin": [[to_data(b) for b in beta] for beta in sorted(
            arg, key=lambda b: tuple(x.c for x in b))]}, True
    fan = fans.build_unit_invariant_fan(F, data.X_star)
    i, k = fans.locate(fan, q)
    sigma = fan.translate(fan.cones[i], k)
    label = vdfan.voronoi_label(data, sigma, q, l)
    if a.op == "member":
        ok = vdfan.tau_membership(data, label, q, l)
        return {"label": to_data(label), "member": ok}, ok
    u = totally_positive_square_units(F).fundamental
    y = tuple(_elem(F, t) for t in a.y.split(";")) if a.y else tuple(F.one for _ in range(data.s))
    moved = vdfan.act_on_label(data, label, u=u, y=y)
    q2, l2 = vdfan.act_on_point(q, l, u=u, y=y)
    ok = vdfan.tau_membership(data, moved, q2, l2) and vdfan.commutation_square(data, label, u, y)
    return {"label": to_data(label), "moved": to_data(moved), "member_after": ok}, ok


def _config_from_file(path):
    try:
        with open(path) as fh:
            raw = fh.read()
        d = json.loads(raw) if raw.strip() else {}
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if not isinstance(d, dict) or "D" not in d:
        raise UsageError("config must be a JSON object naming at least the field (D)")
    known = {f.name for f in fields(RunConfig)}
    extra = set(d) - known
    if extra:
        raise UsageError(f"unknown config keys {sorted(extra)}")
    if "weights" in d:
        d["weights"] = tuple(tuple(w) for w in d["weights"])
    return RunConfig(**d)


def cmd_pipeline(a, F):
    if a.config:
        cfg = _config_from_file(a.config)
    else:
        cfg = RunConfig(D=a.D, c_ideal=a.ideal or "o", level=a.level or "7", seed=a.seed,
                        trace_bound=a.trace_bound, samples=a.samples, s=a.s)
    report = run_pipeline(cfg)
    path = a.json_out or cfg.output
    if path:
        with open(path, "w") as fh:
            fh.write(report_text(report))
    return report, report["passed"]


# -- parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--D", type=int, default=5, help="squarefree D > 1 of Q(sqrt D)")
    common.add_argument("--ideal", help="ideal spec: o, dual-o, diff, sqrtD or generators '2;0,1'")
    common.add_argument("--level", help="level ideal spec (default 7)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trace-bound", type=int, default=20)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--json-out", help="also write the JSON output to this file")

    p = argparse.ArgumentParser(prog="toroidal",
                                description="Exact cusp combinatorics for Hilbert modular surfaces.",
                                epilog="Exit codes: 0 all checks pass, 1 a check fails, 2 usage error.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, ops=None, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        if ops:
            sp.add_argument("op", choices=ops)
        sp.set_defaults(handler=handler)
        return sp

    add("field", cmd_field, ["info"])
    sp = add("ideal", cmd_ideal, ["dual", "mul", "norm", "nt-check"])
    sp.add_argument("--other", help="second ideal for mul")
    sp = add("cone", cmd_cone, ["smooth", "hilbert-basis", "faces"])
    sp.add_argument("--rays", help="integer rays, e.g. '1,0;1,2'")
    sp = add("fan", cmd_fan, ["build", "check", "subdivide"])
    sp.add_argument("--input", help="fan JSON document instead of building one")
    sp.add_argument("--complete", action="store_true")
    sp.add_argument("--smooth", action="store_true")
    sp = add("cusps", cmd_cusps, ["derive", "classify", "torsion-search"])
    sp.add_argument("--a", help="cusp numerator as coordinates")
    sp.add_argument("--c", help="cusp denominator as coordinates")
    sp.add_argument("--count", type=int, default=12)
    sp = add("qexp", cmd_qexp, ["verify", "theta", "reduce", "padic"])
    sp.add_argument("--input")
    sp.add_argument("--xi")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--m", type=int, default=1)
    add("theta", cmd_theta)
    sp = add("jacobi", cmd_jacobi, ["check", "enumerate"])
    sp.add_argument("--input")
    sp.add_argument("--mu", default="1")
    sp.add_argument("--orbit-constant", action="store_true",
                    help="emit a random translation-invariant expansion (parallel weight 2) instead")
    sp.add_argument("--units", action="store_true", help="also check the unit relation")
    sp = add("hodge-tate", cmd_hodge)
    sp.add_argument("--weights", required=True, help="comma-separated, e.g. 2,4")
    sp = add("vd", cmd_vd, ["phi", "member", "act"])
    sp.add_argument("--q")
    sp.add_argument("--l", help="l_1;...;l_s")
    sp.add_argument("--y", help="translation y_1;...;y_s for act")
    sp.add_argument("--s", type=int, default=1)
    sp = add("pipeline", cmd_pipeline)
    sp.add_argument("--config", help="JSON file with RunConfig fields")
    sp.add_argument("--s", type=int, default=1)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        F = QuadraticField(args.D)
        payload, ok = args.handler(args, F)
    except (UsageError, SchemaMismatch, ValueError) as exc:
        print(f"toroidal: error: {exc}", file=sys.stderr)
        return 2
    except ToroidalError as exc:
        print(f"toroidal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.json_out and args.command != "pipeline":
        with open(args.json_out, "w") as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
