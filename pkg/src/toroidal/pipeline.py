"""End-to-end run: field, ideals, cusps, fans, expansions and the combinatorial suites.

``run_pipeline`` returns a JSON-ready report; each stage records a list of
named checks with pass/fail and witnesses. A stage that raises is recorded
as an error and the independent stages still run. Identical configs give
byte-identical reports (no timings, fixed seeds, sorted keys).
"""
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import cones as cn
from . import fans, hodge, jacobi, qexp, vdfan
from .cusps import (classify_cusps, derive_cusp_data, find_torsion_witness, in_gamma1,
                    nt_random_torsion_search, random_group_element, sample_cusps, unipotent_lattice)
from .field import QuadraticField, fundamental_unit, totally_positive_square_units
from .ideals import (FractionalIdeal, check_NT, class_representatives, different, ideal,
                     inverse_different, random_element)
from .serialize import FORMAT, to_data
from .weights import AlgebraicWeight

DEFAULT_WEIGHTS = ((2, 2), (2, 4), (3, 5), (4, 8))


@dataclass
class RunConfig:
    D: int = 5
    c_ideal: str = "o"
    level: str = "7"
    seed: int = 0
    trace_bound: int = 20
    samples: int = 2000
    torsion_trials: int = 200
    vd_samples: int = 40
    s: int = 1
    weights: tuple = DEFAULT_WEIGHTS
    output: str = None
    format: str = FORMAT

    def to_json(self):
        d = asdict(self)
        d.pop("output")
        d["weights"] = [list(w) for w in self.weights]
        return d


def parse_ideal_spec(F, spec):
    """Ideal from a short string.

    Names: ``o``, ``dual-o`` (the inverse different), ``diff`` (the
    different), ``sqrtD`` (the principal ideal of sqrt D). Otherwise a
    ``;``-separated list of generators, each an integer or a comma-separated
    coordinate pair on the integral basis: ``7``, ``2;0,1``.
    """
    spec = spec.strip()
    named = {"o": lambda: FractionalIdeal.unit(F), "dual-o": lambda: inverse_different(F),
             "diff": lambda: different(F), "sqrtD": lambda: ideal(F, F.sqrt_D())}
    if spec in named:
        return named[spec]()
    gens = []
    for tok in spec.split(";"):
        parts = [Fraction(x) for x in tok.split(",")]
        gens.append(F(*parts) if len(parts) > 1 else F(parts[0]))
    return FractionalIdeal.from_generators(F, gens)


def _s(x):
    """Stable string form for witnesses."""
    if isinstance(x, (list, tuple)):
        return [_s(y) for y in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def check(name, passed, detail=None, witness=None):
    out = {"name": name, "passed": bool(passed)}
    if detail is not None:
        out["detail"] = detail
    if witness is not None:
        out["witness"] = _s(witness)
    return out


# -- stages ------------------------------------------------------------------

def stage_field(ctx):
    F = ctx["F"]
    eps0 = fundamental_unit(F)
    data = totally_positive_square_units(F)
    ctx["units"] = data
    return [
        check("discriminant-from-trace-form", F.discriminant in (F.D, 4 * F.D), str(F.discriminant)),
        check("fundamental-unit-norm", abs(eps0.norm()) == 1, _s(eps0)),
        check("square-generator-totally-positive", data.square_generator.is_totally_positive(),
              _s(data.square_generator)),
    ]


def stage_ideals(ctx):
    F, n, c = ctx["F"], ctx["level"], ctx["c"]
    o = FractionalIdeal.unit(F)
    reps = class_representatives(F)
    ctx["class_reps"] = reps
    return [
        check("norm-of-different", different(F).norm() == abs(F.discriminant)),
        check("inverse", n * n.inverse() == o and c * c.inverse() == o),
        check("trace-dual-biduality", c.trace_dual().trace_dual() == c),
        check("trace-dual-formula", c.trace_dual() == c.inverse() * inverse_different(F)),
        check("class-number", True, len(reps)),
    ]


def stage_nt(ctx):
    F, n, c = ctx["F"], ctx["level"], ctx["c"]
    if not check_NT(n, c):
        w = find_torsion_witness(c, n)
        from .cusps import torsion_probe
        return [check("NT-hypothesis", False, "level fails (NT)",
                      witness=[w, torsion_probe(w)] if w is not None else None)]
    rep = nt_random_torsion_search(c, n, ctx["cfg"].torsion_trials, seed=ctx["cfg"].seed)
    return [check("NT-hypothesis", True),
            check("random-torsion-search", rep.torsion_free, {"trials": rep.trials, "seed": rep.seed},
                  witness=list(rep.torsion[:1]) or None)]


def stage_cusps(ctx):
    F, n, c = ctx["F"], ctx["level"], ctx["c"]
    cfg = ctx["cfg"]
    rng = random.Random(cfg.seed)
    o = FractionalIdeal.unit(F)
    inf = derive_cusp_data(F.one, F.zero, c, n)
    ctx["cusp"] = inf
    out = [check("infinity-lattice-is-c-star", inf.X_star == c.trace_dual()),
           check("infinity-unramified", inf.unramified)]
    bad = None
    for _ in range(20):
        a, cc = random_element(o, rng, 3), random_element(o, rng, 3)
        if a.is_zero() and cc.is_zero():
            continue
        cd = derive_cusp_data(a, cc, c, n)
        if unipotent_lattice(a, cc, c, n) != cd.X_star:
            bad = (a, cc)
            break
        g = random_group_element(c, n, rng, data=cd.units)
        a2, c2 = g.apply(a, cc)
        if not in_gamma1(g, c, n) or derive_cusp_data(a2, c2, c, n).X != cd.X:
            bad = (a, cc, g)
            break
    out.append(check("X-star-equals-stabilizer-and-orbit-invariant", bad is None, witness=bad))
    cls = classify_cusps(c, n, sample_cusps(F, 8, cfg.seed), ctx["class_reps"])
    out.append(check("cusp-classes", True, sorted({v for v in cls.values()})))
    return out


def stage_fans(ctx):
    F, cfg = ctx["F"], ctx["cfg"]
    Xs = ctx["cusp"].X_star
    fan = fans.build_unit_invariant_fan(F, Xs)
    sub = fans.smooth_subdivide_equivariant(fan)
    ctx["fan"] = fan
    comp = fans.is_complete_mod_units(fan, cfg.samples, cfg.seed)
    comp2 = fans.is_complete_mod_units(sub, cfg.samples, cfg.seed)
    return [
        check("complete-mod-units", comp.complete, {"samples": comp.samples, "seed": comp.seed},
              witness=comp.witness),
        check("invariant", fans.check_invariance(fan)),
        check("fan-axioms", fans.check_fan_axioms(fan)),
        check("orbit-counts", fans.orbit_counts(fan) == {0: 1, 1: 1, 2: 1},
              {str(k): v for k, v in fans.orbit_counts(fan).items()}),
        check("subdivision-smooth", fans.is_smooth_fan(sub),
              {str(k): v for k, v in fans.orbit_counts(sub).items()}),
        check("subdivision-invariant", fans.check_invariance(sub) and fans.check_fan_axioms(sub)),
        check("subdivision-complete", comp2.complete, witness=comp2.witness),
        check("subdivision-refines", fans.is_refinement(sub, fan, 200, cfg.seed)),
        check("fan", True, to_data(sub)),
    ]


def stage_qexp(ctx):
    F, cfg = ctx["F"], ctx["cfg"]
    o = FractionalIdeal.unit(F)
    T = cfg.trace_bound
    th = qexp.theta_qexp(lambda a: 1, o, T)
    squares_ok = all(xi.is_zero() or xi.is_totally_positive() for xi in th.support())
    try:
        qexp.QExpansion(o, AlgebraicWeight((2, 4)), T, {F.zero: 1})
        rejected = False
    except qexp.KoecherViolation:
        rejected = True
    pts = set(qexp.totally_positive_points(o, T))
    reps = qexp.orbit_representatives(o, T)
    round_trip = qexp.expand_orbits(reps, T) == pts
    w = AlgebraicWeight((2, 4))
    f = qexp.QExpansion.from_orbit_representatives(
        o, w, T, {r: (0 if r.is_zero() else i) for i, r in enumerate(reps)})
    units = [ctx["units"].fundamental, -F.one]
    rel = qexp.verify_unit_relation(f, units)
    rel_theta = qexp.verify_unit_relation(th, [-F.one] + list(ctx["cusp"].units.congruence))
    return [
        check("theta-support-in-squares", squares_ok and qexp.koecher_check(th)),
        check("koecher-rejects-constant-term", rejected),
        check("orbit-round-trip", round_trip, {"points": len(pts), "representatives": len(reps)}),
        check("unit-relation", rel.ok, rel.checked, rel.witness),
        check("theta-unit-relation", rel_theta.ok, rel_theta.checked, rel_theta.witness),
        check("theta-not-2-divisible", not qexp.padic_congruence(th, 2, 1)),
    ]


def stage_jacobi(ctx):
    F, cfg = ctx["F"], ctx["cfg"]
    rng = random.Random(cfg.seed)
    o = FractionalIdeal.unit(F)
    mu = F.one
    bad = None
    for _ in range(200):
        xi, al, beta = (random_element(o, rng, 5) for _ in range(3))
        x2, a2 = jacobi.beta_translate(xi, al, beta, mu)
        if jacobi.discriminant(x2, a2, mu) != jacobi.discriminant(xi, al, mu):
            bad = (xi, al, beta)
            break
    T = min(cfg.trace_bound, 8)
    w = AlgebraicWeight((2, 2))
    f = jacobi.orbit_constant(o, o, o, mu, w, T, seed=cfg.seed)
    betas = [F(1), F(0, 1), F(-1), F(1, -1)]
    rep = jacobi.verify_jacobi_relations(f, betas)
    key = next(k for k in f.domain() if not k[0].is_zero()
               and jacobi.beta_translate(*k, F(1), mu)[0].trace() <= T)
    rep_bad = jacobi.verify_jacobi_relations(f.with_coefficient(key, f[key] + 1), betas)
    g = jacobi.from_discriminant(lambda D: D.norm(), o, o, o, mu, w, T)
    rep_u = jacobi.verify_jacobi_relations(g, betas, [ctx["units"].fundamental, -F.one])
    return [
        check("discriminant-invariant", bad is None, witness=bad),
        check("orbit-constant-passes", rep.ok, rep.checked, rep.witness),
        check("perturbed-fails", not rep_bad.ok, witness=rep_bad.witness),
        check("discriminant-expansion-unit-relation", rep_u.ok, rep_u.checked, rep_u.witness),
        check("koecher", jacobi.jacobi_koecher_check(g)),
    ]


def stage_hodge(ctx):
    out = []
    for k in ctx["cfg"].weights:
        w = AlgebraicWeight(tuple(k))
        ms = hodge.hodge_tate_multiset(w)
        table = hodge.bgg_table(w)
        ok = (hodge.verify_weight_symmetry(w) and sum(len(v) for v in table.values()) == 2 ** w.d
              and (w.d != 2 or ms == hodge.quadratic_multiset(w)))
        out.append(check(f"kappa={list(k)}", ok, ms))
    return out


def stage_vd(ctx):
    F, cfg = ctx["F"], ctx["cfg"]
    rng = random.Random(cfg.seed)
    data = vdfan.DegenerationData.standard(F, cfg.s)
    fan = fans.build_unit_invariant_fan(F, data.X_star)
    sigma = next(c for c in fan.cones if c.dim == 2)
    twist_bad = member_bad = action_bad = None
    for _ in range(cfg.vd_samples):
        q, l, b = vdfan.random_q(data, rng), vdfan.random_l(data, rng), vdfan.random_beta(data, rng)
        if not vdfan.verify_one_twisted(data, q, l, b):
            twist_bad = (q, l, b)
            break
    u = ctx["units"].fundamental
    for _ in range(cfg.vd_samples):
        q, l = vdfan.random_q(data, rng, sigma), vdfan.random_l(data, rng)
        lab = vdfan.voronoi_label(data, sigma, q, l)
        y = vdfan.random_beta(data, rng)
        try:
            same = (vdfan.tau_membership(data, lab, q, l)
                    and vdfan.tau_membership(data, vdfan.act_on_label(data, lab, u=u),
                                             *vdfan.act_on_point(q, l, u=u))
                    and vdfan.tau_membership(data, vdfan.act_on_label(data, lab, y=y),
                                             *vdfan.act_on_point(q, l, y=y)))
        except AssertionError:
            same = False
        if not same:
            member_bad = (q, l)
            break
        if not vdfan.commutation_square(data, lab, u, y):
            action_bad = (lab, y)
            break
    zero = tuple(F.zero for _ in range(data.s))
    eq = vdfan.equidimensional_check(data, vdfan.VDConeLabel(sigma, {zero}), 5, cfg.seed)
    return [
        check("one-twisted-identity", twist_bad is None, cfg.vd_samples, twist_bad),
        check("membership-routes-and-equivariance", member_bad is None, witness=member_bad),
        check("label-commutation-square", action_bad is None, witness=action_bad),
        check("equidimensional-zero-label", eq.nonempty and eq.fills, _s(eq.hull)),
    ]


STAGES = [("field", stage_field), ("ideals", stage_ideals), ("nt", stage_nt), ("cusps", stage_cusps),
          ("fans", stage_fans), ("qexp", stage_qexp), ("jacobi", stage_jacobi), ("hodge", stage_hodge),
          ("vd", stage_vd)]

# stages that cannot run without an earlier one
NEEDS = {"cusps": {"ideals"}, "fans": {"cusps"}, "qexp": {"field", "cusps"}, "jacobi": {"field"},
         "vd": {"field"}}


def run_pipeline(config):
    F = QuadraticField(config.D)
    ctx = {"F": F, "cfg": config, "c": parse_ideal_spec(F, config.c_ideal),
           "level": parse_ideal_spec(F, config.level)}
    stages, done = [], set()
    for name, fn in STAGES:
        missing = NEEDS.get(name, set()) - done
        if missing:
            stages.append({"stage": name, "status": "skipped", "checks": [],
                           "error": f"needs {sorted(missing)}"})
            continue
        try:
            checks = fn(ctx)
            status = "pass" if all(c["passed"] for c in checks) else "fail"
            stages.append({"stage": name, "status": status, "checks": checks})
            done.add(name)
        except Exception as exc:  # recorded per stage; the run goes on
            stages.append({"stage": name, "status": "error", "checks": [],
                           "error": f"{type(exc).__name__}: {exc}"})
    return {"format": FORMAT, "config": config.to_json(), "stages": stages,
            "passed": all(s["status"] == "pass" for s in stages)}


def report_text(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
