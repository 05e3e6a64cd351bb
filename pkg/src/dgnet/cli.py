"""Batch front-end: build models from config, run verification suites, and
export canonical JSON artifacts.

Subcommands:

- ``build-model``: build the cylinder model for a config and emit a summary;
- ``verify``: run named verification suites and emit a deterministic report
  (exit 0 all-pass, 1 on any check failure, 2 on config/build errors);
- ``verify-net``: validate a net description supplied as JSON;
- ``export``: canonical JSON artifacts (algebra, complex, pairing table,
  representation summary, cohomology report).

Canonical JSON uses sorted keys and exact rationals as ``[num, den]`` /
Gaussian rationals as 4-tuples, so identical configs give byte-identical
artifacts.  Timing goes to a separate metadata file, never into the
canonical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor

from ._ratback import Rat, rat
from .complexes import cohomology, complex_to_json, is_quasi_iso
from .freealg import algebra_from_json, algebra_to_json
from .scalar import QQi

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2

SUITES = ("small-model", "two-point", "causality", "timeslice", "gns", "kg")

DEFAULT_TOLERANCES = {
    "tau": 1e-9,
    "two-point": 1e-9,
    "homotopy": 1e-9,
    "data": 1e-9,
    "gns": 1e-9,
    "gram-psd": 1e-9,
    "causality-disjoint": 1e-9,
    "causality-overlap": 1e-3,
}


class ConfigError(Exception):
    pass


def _rat_pair(q):
    q = Rat(q)
    return [int(q.numerator), int(q.denominator)]


def _parse_rat(v):
    if isinstance(v, (list, tuple)):
        num, den = v
        return rat(int(num), int(den))
    return Rat(v)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ": "),
                      indent=1, allow_nan=False) + "\n"


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class RunContext:
    """Resolved configuration: cylinder grid, cutoffs, tolerances."""

    def __init__(self, config=None, tolerance_overrides=None):
        from .maxwell.cylinder import CylinderConfig

        config = dict(config or {})
        kwargs = {}
        if "knots" in config:
            kwargs["knots"] = [_parse_rat(k) for k in config["knots"]]
        if "degree" in config:
            kwargs["degree"] = int(config["degree"])
        if "mode_cutoff" in config:
            kwargs["mode_cutoff"] = int(config["mode_cutoff"])
        try:
            self.cylinder = CylinderConfig(**kwargs)
        except (ValueError, TypeError) as exc:
            raise ConfigError("bad cylinder config: %s" % exc)
        self.word_cutoff = int(config.get("word_cutoff", 6))
        self.causality_modes = int(config.get("causality_modes", 240))
        self.tolerances = dict(DEFAULT_TOLERANCES)
        for k, v in (config.get("tolerances") or {}).items():
            self.tolerances[k] = float(v)
        for k, v in (tolerance_overrides or {}).items():
            self.tolerances[k] = float(v)
        for k, v in self.tolerances.items():
            if v <= 0:
                raise ConfigError("tolerance %r must be positive" % k)
        self._small = None

    def tol(self, key):
        return self.tolerances[key]

    def small_model(self):
        if self._small is None:
            from .maxwell.small import small_model

            self._small = small_model(self.cylinder, self.word_cutoff)
        return self._small

    def describe(self):
        return {
            "degree": self.cylinder.degree,
            "knots": [_rat_pair(k) for k in self.cylinder.knots],
            "mode_cutoff": self.cylinder.mode_cutoff,
            "word_cutoff": self.word_cutoff,
            "causality_modes": self.causality_modes,
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc))


def _record(name, reference, ok, residual=None, witness=None):
    rec = {"name": name, "reference": reference,
           "status": "pass" if ok else "fail"}
    if residual is not None:
        rec["residual"] = float(residual)
    if not ok and witness is not None:
        rec["witness"] = witness
    return rec


def _dims_str(dims):
    return {str(k): v for k, v in sorted(dims.items())}


# -- verification suites -----------------------------------------------------


def suite_small_model(ctx):
    from .maxwell.green import poisson
    from .maxwell.small import GENERATOR_ORDER, TAU_TABLE

    m = ctx.small_model()
    recs = [
        _record("small-model/retraction", "projection after inclusion is the identity",
                m.retraction_is_identity()),
    ]
    dims = {n: d for n, d in cohomology(m.L).dims.items() if d}
    recs.append(_record(
        "small-model/harmonic-cohomology",
        "cohomology dimensions {-1: 1, 0: 2, 1: 1}",
        dims == {-1: 1, 0: 2, 1: 1}, witness=_dims_str(dims)))
    worst = 0.0
    exact_ok = True
    for x in GENERATOR_ORDER:
        for y in GENERATOR_ORDER:
            cx, cy = m.cochains[x], m.cochains[y]
            if cx.m + cy.m != 0:
                continue
            v = poisson(cx, cy)
            target = TAU_TABLE.get((x, y), 0)
            if target == 0 and (y, x) in TAU_TABLE:
                target = -TAU_TABLE[(y, x)] * (-1) ** (cx.m * cy.m)
            worst = max(worst, abs(v.value - target))
            if v.exact is None or v.exact != QQi(target):
                exact_ok = False
    recs.append(_record(
        "small-model/poisson-table-residual",
        "numeric Poisson pairings within tolerance of the integer table",
        worst < ctx.tol("tau"), residual=worst))
    recs.append(_record(
        "small-model/poisson-table-exact",
        "rounded Poisson pairings reproduce the integer table exactly",
        exact_ok))
    recs.append(_record(
        "small-model/tau-matches-relations",
        "transferred table equals the relation set of the CCR algebra",
        m.tau_matches_relations()))
    return recs


def suite_two_point(ctx):
    from .maxwell.checks import (
        antisymmetry_report,
        bisolution_report,
        two_point_condition_report,
    )

    m = ctx.small_model()
    recs = []
    conds = two_point_condition_report(m.model)
    for key in sorted(conds):
        recs.append(_record(
            "two-point/cochain-condition[%s]" % key,
            "cochain-map condition of the two-point pairing",
            conds[key] < ctx.tol("two-point"), residual=conds[key]))
    anti = antisymmetry_report(m.cochains)
    recs.append(_record(
        "two-point/antisymmetry",
        "antisymmetric part equals i times the Poisson pairing",
        anti < ctx.tol("two-point"), residual=anti))
    bis = bisolution_report(m.model)
    recs.append(_record(
        "two-point/bisolution",
        "wave-operator bisolution property of the kernel",
        bis < ctx.tol("two-point"), residual=bis))
    return recs


def suite_timeslice(ctx):
    from .maxwell.checks import data_comparison_report, timeslice_check
    from .maxwell.cylinder import Region

    m = ctx.small_model()
    recs = [
        _record("timeslice/inclusion-quasi-iso",
                "harmonic generators include quasi-isomorphically",
                m.sectorwise_quasi_iso()),
    ]
    dims = m.model.cohomology_dims()
    recs.append(_record(
        "timeslice/truncated-cohomology",
        "truncated observable cohomology {-1: 1, 0: 2, 1: 1}",
        dims == {-1: 1, 0: 2, 1: 1}, witness=_dims_str(dims)))
    dc = data_comparison_report(m.model)
    recs.append(_record(
        "timeslice/data-comparison",
        "initial data after trivialization is a quasi-isomorphism",
        dc["ok"] and max(dc["sector_defects"].values()) < ctx.tol("data"),
        residual=max(dc["sector_defects"].values())))
    slab = Region.slab(rat(-7, 8), rat(7, 8))  # contains supp f1, f2
    ts = timeslice_check(m.config, slab)
    recs.append(_record(
        "timeslice/slab-inclusion",
        "a slab containing the profile supports includes quasi-isomorphically",
        ts["ok"], witness={"slab": ts["slab_cohomology"] and
                           _dims_str(ts["slab_cohomology"]),
                           "full": _dims_str(ts["full_cohomology"])}))
    return recs


def suite_causality(ctx):
    from .maxwell.checks import causality_check
    from .maxwell.cylinder import Region

    d1 = Region.diamond(0, 0, rat(1, 10))
    d2 = Region.diamond(0, rat(1, 2), rat(1, 10))
    res = causality_check(d1, d2, ctx.causality_modes)
    recs = [
        _record("causality/disjoint",
                "cross pairings of spacelike separated diamonds vanish",
                res["max_pairing"] < ctx.tol("causality-disjoint"),
                residual=res["max_pairing"],
                witness={"%s|%s" % k: v for k, v in res["pairings"].items()}),
    ]
    d3 = Region.diamond(0, rat(1, 20), rat(1, 10))
    ov = causality_check(d1, d3, min(ctx.causality_modes, 100))
    recs.append(_record(
        "causality/overlap",
        "overlapping diamonds have a nondegenerate pairing",
        ov["max_pairing"] > ctx.tol("causality-overlap"),
        residual=ov["max_pairing"]))
    return recs


def suite_gns(ctx):
    from .maxwell.state import (
        degree_zero_gram,
        gns_radical,
        left_ideal_defect,
        quasifree_state,
        radical_contains,
        two_point_table,
    )

    m = ctx.small_model()
    state = quasifree_state(m.algebra, two_point_table(m.cochains))
    rad = gns_radical(state, 3)
    recs = [
        _record("gns/unit-not-in-radical", "the unit has norm one",
                not radical_contains(state, rad, ())),
        _record("gns/e-not-in-radical", "the degree 1 generator survives",
                not radical_contains(state, rad, ("e",))),
    ]
    defects = left_ideal_defect(state, rad, test_cutoff=3)
    recs.append(_record(
        "gns/left-ideal-closure",
        "the radical is a left ideal at the cutoff",
        defects == 0, witness={"failing pairs": defects}))
    _, _, eig = degree_zero_gram(state, 1)
    min_eig = min(eig) if eig else 0.0
    recs.append(_record(
        "gns/gram-positive-semidefinite",
        "degree-0 bosonic Gram matrix has no negative eigenvalues",
        min_eig > -ctx.tol("gram-psd"), residual=min_eig,
        witness={"eigenvalues": eig}))
    stable = gns_radical(state, 3, row_cutoff=4)
    dims3 = rad.quotient_dims()
    dims4 = stable.quotient_dims()
    recs.append(_record(
        "gns/quotient-dims-stable",
        "quotient dimensions unchanged when the test cutoff grows 3 to 4",
        dims3 == dims4,
        witness={"cutoff 3": _dims_str(dims3), "cutoff 4 rows": _dims_str(dims4)}))
    return recs


def suite_kg(ctx):
    from .complexes import CochainComplex, GradedSpace
    from .maxwell.kg import (
        all_negative_actions_zero,
        has_nonzero_negative_action,
        kg_model,
        net_regular_rep,
    )
    from .nets import change_of_net_res, free_rep, is_we_net, quillen_unit_check_net

    model = kg_model(word_cutoff=2)
    recs = [
        _record("kg/comparison-weak-equivalence",
                "the resolved-to-standard comparison is a weak equivalence",
                is_we_net(model.phi, 2)),
        _record("kg/commutator-oracle",
                "presented commutators match the Green pairing",
                model.tau_residual() < ctx.tol("tau"),
                residual=model.tau_residual()),
    ]
    bv_rep = net_regular_rep(model.net_bv, 2)
    recs.append(_record(
        "kg/resolved-regular-rep-acts",
        "the resolved net acting on itself has a nonzero degree -1 action",
        has_nonzero_negative_action(bv_rep)))
    std_rep = net_regular_rep(model.net, 2)
    res_rep = change_of_net_res(std_rep, model.phi)
    recs.append(_record(
        "kg/restricted-reps-degenerate",
        "every restricted representation kills all degree -1 generators",
        all_negative_actions_zero(res_rep)))
    first = model.site.objects[0]
    point = CochainComplex(GradedSpace({0: ["x"]}), {})
    free = free_rep(model.net_bv, {first: point})
    recs.append(_record(
        "kg/quillen-unit-on-free",
        "the change-of-net unit is a weak equivalence on a free representation",
        quillen_unit_check_net(model.phi, free)))
    return recs


SUITE_FUNCTIONS = {
    "small-model": suite_small_model,
    "two-point": suite_two_point,
    "causality": suite_causality,
    "timeslice": suite_timeslice,
    "gns": suite_gns,
    "kg": suite_kg,
}


def run_suites(ctx, suites, jobs=1):
    """Run the named suites (in parallel up to ``jobs``) and merge their
    records sorted by check name."""
    records = []
    timings = {}

    def run_one(name):
        t0 = time.time()
        recs = SUITE_FUNCTIONS[name](ctx)
        return name, recs, time.time() - t0

    if jobs > 1 and len(suites) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, suites))
    else:
        results = [run_one(name) for name in suites]
    for name, recs, dt in results:
        records.extend(recs)
        timings[name] = dt
    records.sort(key=lambda r: r["name"])
    report = {
        "suites": sorted(suites),
        "config": ctx.describe(),
        "checks": records,
        "failed": sum(1 for r in records if r["status"] != "pass"),
    }
    return report, timings


# -- exports -----------------------------------------------------------------


def export_algebra(ctx):
    return algebra_to_json(ctx.small_model().algebra)


def export_complex(ctx):
    return complex_to_json(ctx.small_model().L)


def export_tau(ctx):
    m = ctx.small_model()
    table = m.tau_table()
    out = {}
    for (x, y), v in table.items():
        if v:
            out["(%s,%s)" % (x, y)] = v.to_tuple()
    return out


def export_report(ctx):
    m = ctx.small_model()
    return {
        "harmonic_cohomology": _dims_str(
            {n: d for n, d in cohomology(m.L).dims.items() if d}),
        "truncated_cohomology": _dims_str(m.model.cohomology_dims()),
    }


def export_rep(ctx):
    from .maxwell.state import (
        gns_module,
        gns_radical,
        observable_algebra,
        observable_net,
        quasifree_state,
        vacuum_rep,
    )

    ga = observable_algebra(ctx.cylinder, word_cutoff=ctx.word_cutoff)
    state = ga.state()
    rad = gns_radical(state, 2)
    module = gns_module(ga.algebra, rad, cutoff=2)
    net = observable_net(ga)
    rep = vacuum_rep(net, module)
    out = {"objects": list(net.site.objects), "dims": {}}
    for c in net.site.objects:
        r = rep.module_at[c].realization()
        out["dims"][c] = _dims_str({n: r.dim(n) for n in r.complex.degrees()
                                    if r.dim(n)})
    out["radical_dims"] = _dims_str({n: rad.dim(n)
                                     for n in sorted(rad.monomials)})
    return out


EXPORTS = {
    "algebra": export_algebra,
    "complex": export_complex,
    "tau": export_tau,
    "report": export_report,
    "rep": export_rep,
}


# -- net descriptions --------------------------------------------------------


def net_from_json(obj):
    """A net from a JSON description: a poset site, one presented algebra
    per object, and name-based generator maps along the morphisms (default:
    name-preserving)."""
    from .freealg import DGAMorphism
    from .nets import Net, poset_site

    site_desc = obj["site"]
    site = poset_site(site_desc["objects"],
                      [tuple(p) for p in site_desc.get("pairs", [])])
    algebra_at = {c: algebra_from_json(obj["algebras"][c])
                  for c in site.objects}
    maps = obj.get("maps", {})
    map_at = {}
    for m, (s, t) in site.morphisms.items():
        src, tgt = algebra_at[s], algebra_at[t]
        images = maps.get(m, {})
        map_at[m] = DGAMorphism(
            src, tgt, {g: tgt.gen(images.get(g, g)) for g in src.names()})
    return Net(site, algebra_at, map_at)


def verify_net_report(obj):
    from .nets import validate_net

    records = []
    net = None
    try:
        net = net_from_json(obj)
        records.append(_record("net/morphism-maps",
                               "algebra maps respect degree, differential, "
                               "relations", True))
    except (KeyError, ValueError) as exc:
        records.append(_record("net/morphism-maps",
                               "algebra maps respect degree, differential, "
                               "relations", False, witness=str(exc)))
    if net is not None:
        try:
            validate_net(net)
            records.append(_record("net/functoriality",
                                   "identities and composition of the "
                                   "algebra assignment", True))
        except ValueError as exc:
            records.append(_record("net/functoriality",
                                   "identities and composition of the "
                                   "algebra assignment", False,
                                   witness=str(exc)))
    return {"checks": records,
            "failed": sum(1 for r in records if r["status"] != "pass")}


# -- argument parsing / entry point ------------------------------------------


def _parse_tolerances(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError("bad --tolerance %r (expected KEY=VAL)" % item)
        k, v = item.split("=", 1)
        try:
            out[k] = float(v)
        except ValueError:
            raise ConfigError("bad tolerance value %r" % v)
        if k not in DEFAULT_TOLERANCES:
            raise ConfigError("unknown tolerance key %r" % k)
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dgnet",
        description="build, verify, and export cylinder field-theory models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-model", help="build a model and emit a summary")
    p.add_argument("--config", help="model config JSON")
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--config", help="model config JSON")
    p.add_argument("--suite", action="append", default=None,
                   choices=SUITES, help="suite to run (repeatable)")
    p.add_argument("--out", help="output directory for report.json")
    p.add_argument("--jobs", type=int, default=1, help="parallel suites")
    p.add_argument("--tolerance", action="append", metavar="KEY=VAL",
                   help="override a tolerance")

    p = sub.add_parser("verify-net", help="validate a JSON net description")
    p.add_argument("net", help="net description JSON file")
    p.add_argument("--out", help="output directory for report.json")

    p = sub.add_parser("export", help="export canonical JSON artifacts")
    p.add_argument("--what", required=True, choices=sorted(EXPORTS))
    p.add_argument("--format", default="json", choices=["json"])
    p.add_argument("--config", help="model config JSON")
    p.add_argument("--out", help="output file (default: stdout)")
    return parser


def _emit(text, out, default_name):
    if out:
        path = out if out.endswith(".json") else os.path.join(out, default_name)
        write_atomic(path, text)
        print(path)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build-model":
            ctx = RunContext(load_config(args.config))
            m = ctx.small_model()
            summary = {
                "config": ctx.describe(),
                "generators": {g: m.algebra.degree(g)
                               for g in m.algebra.names()},
                "harmonic_cohomology": _dims_str(
                    {n: d for n, d in cohomology(m.L).dims.items() if d}),
            }
            _emit(canonical_json(summary), args.out, "model.json")
            return EXIT_OK
        if args.command == "verify":
            ctx = RunContext(load_config(args.config),
                             _parse_tolerances(args.tolerance))
            suites = args.suite or []
            bad = [s for s in suites if s not in SUITE_FUNCTIONS]
            if bad:
                raise ConfigError("unknown suites: %s" % ", ".join(bad))
            report, timings = run_suites(ctx, suites, max(1, args.jobs))
            _emit(canonical_json(report), args.out, "report.json")
            if args.out:
                meta = {"timings": {k: round(v, 3)
                                    for k, v in timings.items()}}
                write_atomic(os.path.join(args.out, "report.meta.json")
                             if not args.out.endswith(".json")
                             else args.out + ".meta",
                             canonical_json(meta))
            return EXIT_CHECK_FAILED if report["failed"] else EXIT_OK
        if args.command == "verify-net":
            try:
                with open(args.net) as fh:
                    obj = json.load(fh)
            except (OSError, ValueError) as exc:
                raise ConfigError("cannot read net description: %s" % exc)
            report = verify_net_report(obj)
            _emit(canonical_json(report), args.out, "report.json")
            return EXIT_CHECK_FAILED if report["failed"] else EXIT_OK
        if args.command == "export":
            ctx = RunContext(load_config(args.config))
            artifact = EXPORTS[args.what](ctx)
            _emit(canonical_json(artifact), args.out, "%s.json" % args.what)
            return EXIT_OK
        raise ConfigError("unknown command %r" % args.command)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
