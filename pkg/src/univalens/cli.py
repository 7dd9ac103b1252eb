"""Command-line front end.

Subcommands: ``reduce``, ``classify``, ``affine``, ``continue``, ``monodromy``
(also reachable as ``riccati monodromy``), ``riccati fiber``/``riccati forbid``,
``census``, ``examples`` and ``verify``.  Reports go to ``--out`` or stdout as
deterministic JSON (``--format json``, the default) or a plain text rendering.

Exit codes: 0 on success, 2 for parse or input errors (with the location),
3 for numeric failures (with diagnostics).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .algebra import ParseError, RationalVF2, parse_point
from .report import AnalysisReport, dumps, format_table

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
DEFAULT_TOL = 1e-10


class NumericFailure(RuntimeError):
    """A computation finished without a certified answer; the report is still written."""

    def __init__(self, message: str, report: Optional[AnalysisReport] = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# helpers


def _complex(text) -> complex:
    if isinstance(text, (list, tuple)):
        return complex(float(text[0]), float(text[1]))
    return complex(str(text).replace(" ", "").replace("*", "").replace("i", "j").replace("I", "j"))


def _start(text: str):
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    return tuple(_complex(p) for p in parts)


def _read_json(arg: str):
    """Inline JSON or a path to a JSON file."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    with open(arg) as fh:
        return json.load(fh)


def _local_rows(report) -> List[List[str]]:
    return [list(r) for r in report.table_rows()] or [[report.kind.value, "-", "-", "-", "-"]]


def _hint_from_local(reports, holomorphic: bool) -> str:
    kinds = {r.kind.value for r in reports}
    if "NotAdmissible" in kinds:
        return "consistent with: obstructed"
    if holomorphic:
        return "consistent with: holomorphic"
    return "consistent with: fibration-preserving"


def _is_polynomial(vf: RationalVF2) -> bool:
    return vf.px.den.is_constant() and vf.py.den.is_constant()


# ---------------------------------------------------------------------------
# subcommands; each returns (report, text rendering)


def cmd_reduce(args):
    from .localmodels import classify_local
    from .reduction import ReductionDepthError, reduce

    vf = RationalVF2.parse(args.field)
    try:
        tree = reduce(vf, max_depth=args.max_depth)
    except ReductionDepthError as exc:
        rep = AnalysisReport("reduce", {"field": args.field, "max_depth": args.max_depth},
                             {"tree": exc.tree, "error": str(exc)})
        raise NumericFailure(str(exc), rep)
    locals_ = []
    for sp in tree.terminal_points():
        try:
            lm = classify_local(tree.charts[sp.chart].vf, sp.point)
            locals_.append({"chart": sp.chart, "point": list(sp.point), "local_model": lm})
        except ValueError as exc:
            locals_.append({"chart": sp.chart, "point": list(sp.point), "error": str(exc)})
    sections = {"summary": {"n_blowups": tree.n_blowups, "depth": tree.depth, "all_reduced": tree.all_reduced(),
                            "exceptional": len(tree.exceptional)},
                "local_models": locals_}
    if args.emit_tree:
        sections["tree"] = tree
    if args.dot:
        sections["dual_graph_dot"] = tree.to_dot()
    hint = _hint_from_local([d["local_model"] for d in locals_ if "local_model" in d], _is_polynomial(vf))
    rep = AnalysisReport("reduce", {"field": args.field, "max_depth": args.max_depth}, sections, hint,
                         citations=["reducedness: nondegenerate or saddle-node saturation, normal crossings"])
    rows = [[str(d["chart"]), f"({d['point'][0]}, {d['point'][1]})",
             d["local_model"].kind.value if "local_model" in d else "error"] for d in locals_]
    text = (f"field: {args.field}\nblow-ups: {tree.n_blowups}  all reduced: {tree.all_reduced()}\n"
            f"self-intersections: {[e.self_intersection for e in tree.exceptional]}\n"
            + format_table(["chart", "point", "local model"], rows) + f"\n{hint}\n")
    if args.plot:
        from .plotting import plot_dual_graph
        plot_dual_graph(tree, args.plot)
    return rep, text


def cmd_classify(args):
    from .localmodels import classify_local

    vf = RationalVF2.parse(args.field)
    point = parse_point(args.point) if args.point else (0, 0)
    lm = classify_local(vf, point)
    hint = _hint_from_local([lm], _is_polynomial(vf))
    rep = AnalysisReport("classify", {"field": args.field, "point": [str(point[0]), str(point[1])]},
                         {"local_model": lm}, hint, citations=["local model table: kind, ord, ind, CS per branch"])
    params = f"p={lm.p} q={lm.q}" + (f" m={lm.m} n={lm.n}" if lm.m is not None else "") + \
        (f" k={lm.k}" if lm.k is not None else "")
    text = format_table(["model", "branch", "ord", "ind", "CS"], _local_rows(lm))
    text = f"{text}\n{params}  ({lm.exactness})" + (f"\nreason: {lm.reason}" if lm.reason else "") + "\n"
    return rep, text


def cmd_affine(args):
    from . import affine

    if args.affine_cmd == "signature":
        sig = affine.OrbifoldSignature.parse(args.genus, args.indices)
        v = affine.uniformizable_signature(sig)
        rep = AnalysisReport("affine signature", {"genus": args.genus, "indices": args.indices},
                             {"uniformizable": bool(v), "label": v.label,
                              "essential_indices": [str(i) for i in sig.essential()]},
                             citations=["uniformizable orbifold signatures of compact curves"])
        return rep, f"{'uniformizable' if v else 'not uniformizable'}: {v.label}\n"
    if args.affine_cmd == "univalence1d":
        v = affine.univalence_1d(args.field.replace("x", "z") if "z" not in args.field else args.field)
        rep = AnalysisReport("affine univalence1d", {"field": args.field}, {"verdict": v},
                             citations=["at most two zeros counted with multiplicity, no poles"])
        return rep, f"{v.status.value} (determinations >= {v.determinations_lower_bound})\n" + \
            "".join(f"  {r}\n" for r in v.reasons)
    # defect
    c1, c2 = _chart(args.chart1), _chart(args.chart2)
    d = affine.defect_between(c1, c2)
    res = d.residue(parse_point(f"({args.at},0)")[0] if args.at else 0)
    idx = affine.ramification_index(res)
    rep = AnalysisReport("affine defect", {"chart1": args.chart1, "chart2": args.chart2, "at": args.at or "0"},
                         {"defect": d, "residue": res, "index": "inf" if idx.is_infinite else str(idx.value)},
                         citations=["ind = 1/(Res + 1)"])
    return rep, f"defect form: {d.form.to_string('z', 'w')}\nresidue: {res}\nindex: {idx}\n"


def _chart(text: str):
    from .affine import Chart1D

    t = text.strip()
    if t == "log":
        return Chart1D.log()
    if t.startswith("root:"):
        return Chart1D.root(int(t[5:]))
    if t.startswith("power:"):
        from .algebra import parse_number
        return Chart1D.power(parse_number(t[6:]))
    return Chart1D.from_function(t)


def _path_from_args(args):
    from .continuation import PathSpec

    if args.path:
        return PathSpec.from_json(_read_json(args.path))
    if args.to is None:
        raise ValueError("give --path or --to")
    t0 = _complex(args.t0)
    return PathSpec.segment(t0, _complex(args.to))


def cmd_continue(args):
    from .continuation import continue_solution

    vf = RationalVF2.parse(args.field)
    start = _start(args.start)
    path = _path_from_args(args)
    keep = bool(args.samples or args.plot)
    res = continue_solution(vf, start, path, args.tol, keep_samples=keep)
    if args.samples:
        with open(args.samples, "w") as fh:
            fh.write(res.samples_csv())
    rep = AnalysisReport("continue", {"field": args.field, "start": list(start), "path": path},
                         {"result": res}, tolerance=args.tol,
                         citations=["maximality: escape from every compact subset"])
    if args.plot:
        from .plotting import plot_trajectory
        plot_trajectory(res, args.plot)
    text = (f"outcome: {res.outcome.value}\nendpoint: {list(res.endpoint)}\n"
            f"error estimate: {res.error_estimate:.3e}  steps: {res.steps}\n"
            + (f"reason: {res.reason}\n" if res.reason else ""))
    if res.outcome.value in ("StepFailure", "Indeterminate"):
        raise NumericFailure(f"continuation ended with {res.outcome.value}: {res.reason}", rep)
    return rep, text


def _monodromy_report(eq, loops, tol, census_tol, command, inputs):
    from .riccati import fixed_point_census, monodromy

    rep = monodromy(eq, loops, tol=min(tol, 1e-11))
    census = fixed_point_census(rep, census_tol)
    hint = "consistent with: fibration-preserving" if census.verdict.value == "AllMaximal" else None
    maps = rep.maps
    out = AnalysisReport(command, inputs, {"monodromy": rep, "census": census,
                                           "max_distance_to_identity": max(m.distance_to_identity() for m in maps)},
                         hint, tolerance=census_tol,
                         citations=["monodromy factors through the Riccati representation",
                                    "three common fixed points of the kernel force identity"])
    rows = [[str(i), m.kind(), f"{m.distance_to_identity():.2e}", f"{e:.2e}"]
            for i, (m, e) in enumerate(zip(maps, rep.error_estimates))]
    text = format_table(["loop", "kind", "|M - I|", "error"], rows) + f"\ncensus: {census.label()}\n"
    return out, text


def cmd_monodromy(args):
    from .continuation import loads_paths
    from .riccati import RiccatiEq, wittich_equation, wittich_loops

    if args.eq is None:
        if args.loops is not None:
            raise ValueError("--loops needs --eq")
        return _monodromy_report(wittich_equation(), wittich_loops(), args.tol, args.census_tol, "monodromy",
                                 {"example": "wittich"})
    if args.loops is None:
        raise ValueError("monodromy needs --loops together with --eq")
    eq = RiccatiEq.from_json(_read_json(args.eq))
    loops = loads_paths(json.dumps(_read_json(args.loops)))
    return _monodromy_report(eq, loops, args.tol, args.census_tol, "monodromy", {"eq": eq, "loops": loops})


def cmd_riccati(args):
    from .riccati import classify_fiber, forbid_check

    if args.riccati_cmd == "monodromy":
        return cmd_monodromy(args)
    if args.riccati_cmd == "fiber":
        fc = classify_fiber(args.field)
        rep = AnalysisReport("riccati fiber", {"field": args.field}, {"fiber": fc},
                             citations=["standard forms of special Riccati fibers"])
        return rep, f"{fc.label()}\n" + "".join(f"  {n}\n" for n in fc.notes)
    kinds = [k.strip() for k in args.fibers.split(",") if k.strip()]
    fr = forbid_check(kinds, args.transverse_zeros, args.ell_size)
    hint = "consistent with: obstructed" if not fr.compatible else None
    rep = AnalysisReport("riccati forbid", {"fibers": kinds, "transverse_zeros": args.transverse_zeros,
                                            "ell_size": args.ell_size}, {"forbid": fr}, hint,
                         citations=["with transverse zeros and three leaf points, special fibers are "
                                    "parabolic non-degenerate or dicritical"])
    return rep, f"{fr.verdict}: {fr.reason}\n"


def cmd_census(args):
    import numpy as np

    from .riccati import ExactMobius, Mobius, exact_census, fixed_point_census
    from .riccati.equation import MonodromyRep

    data = _read_json(args.maps)
    mats = data["maps"] if isinstance(data, dict) else data
    if args.exact:
        from .algebra import parse_number
        maps = [ExactMobius(*(parse_number(str(v)) for row in m for v in row)) for m in mats]
        verdict, fixed = exact_census(maps)
        rep = AnalysisReport("census", {"maps": mats, "exact": True},
                             {"verdict": verdict, "fixed": fixed},
                             citations=["three common fixed points of a Moebius group force identity"])
        count = fixed.count if hasattr(fixed, "count") else fixed
        return rep, f"exact census: {verdict.value} ({count} common fixed points)\n"
    gens = []
    for m in mats:
        arr = np.array([[_complex(v) for v in row] for row in m], dtype=complex)
        gens.append(Mobius.from_matrix(arr))
    periods = [_complex(p) for p in data.get("time_periods", [0] * len(gens))] if isinstance(data, dict) \
        else [0j] * len(gens)
    rep_ = MonodromyRep([(None, g) for g in gens], periods, [0.0] * len(gens), [0.0] * len(gens))
    census = fixed_point_census(rep_, args.census_tol)
    rep = AnalysisReport("census", {"maps": mats}, {"census": census}, tolerance=args.census_tol,
                         citations=["three common fixed points of the kernel force identity"])
    return rep, f"census: {census.label()}\n"


EXAMPLES = ("wittich", "four-maximal", "e8", "briot-bouquet", "cusp", "table1", "corpus")


def cmd_examples(args):
    from . import corpus

    name = args.name
    if name == "list":
        return AnalysisReport("examples", {}, {"examples": list(EXAMPLES)}), "\n".join(EXAMPLES) + "\n"
    if name == "wittich":
        from .riccati import wittich_equation, wittich_loops
        rep, text = _monodromy_report(wittich_equation(), wittich_loops(), args.tol, args.census_tol,
                                      "examples wittich", {"example": "wittich"})
        worst = rep.sections["max_distance_to_identity"]
        rep.sections["all_identity"] = worst <= 1e-6
        return rep, text + f"all identity within 1e-6: {worst <= 1e-6}\n"
    if name == "four-maximal":
        r = corpus.four_maximal_report(tol=args.tol)
        rep = AnalysisReport("examples four-maximal", {"lattice": [[1, 0], [0, 1]]},
                             {"special": r["special"], "generic": r["generic"], "leaves": r["leaves"]},
                             tolerance=args.tol, citations=["determinations counted by orbit clustering"])
        rows = [[str(c), str(d.count), str(d.certified_lower_bound)] for c, d in r["leaves"]]
        return rep, format_table(["leaf c", "count", "certified >="], rows) + "\n"
    if name == "e8":
        r = corpus.e8_report(1e-8)
        rep = AnalysisReport("examples e8", {"example": "e8"}, {"verification": r["report"]}, tolerance=1e-8)
        return rep, f"E8 solution residual: {r['max_residual']:.3e}  passed: {r['passed']}\n"
    if name == "briot-bouquet":
        r = corpus.briot_bouquet_report()
        rep = AnalysisReport("examples briot-bouquet", {"example": "briot-bouquet"},
                             {"stated": r["stated"], "corrected": r["corrected"],
                              "stated_passed": r["stated_passed"], "corrected_passed": r["corrected_passed"]})
        rows = [[k, f"{r['stated'][k]:.3e}", f"{r['corrected'][k]:.3e}"] for k in r["stated"]]
        return rep, format_table(["solution", "stated Q", "corrected Q"], rows) + "\n"
    if name == "cusp":
        args.field, args.emit_tree, args.dot = "(2*y, 3*x^2)", True, True
        return cmd_reduce(args)
    if name == "table1":
        rows, reps = [], []
        for e in corpus.load_corpus():
            if e["command"] == "classify":
                from .localmodels import classify_local
                lm = classify_local(RationalVF2.parse(e["field"]))
                reps.append({"field": e["field"], "local_model": lm})
                rows += [[e["field"]] + r for r in _local_rows(lm)]
        rep = AnalysisReport("examples table1", {}, {"rows": reps})
        return rep, format_table(["field", "model", "branch", "ord", "ind", "CS"], rows) + "\n"
    if name == "corpus":
        results = corpus.run_corpus()
        rep = AnalysisReport("examples corpus", {}, {"entries": results,
                                                     "all_passed": all(r.passed for r in results)})
        rows = [[r.name, "pass" if r.passed else "FAIL", f"{r.seconds:.2f}s"] for r in results]
        text = format_table(["entry", "result", "time"], rows) + "\n"
        if not all(r.passed for r in results):
            raise NumericFailure("corpus entries failed", rep)
        return rep, text
    raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def cmd_verify(args):
    from .continuation import PolynomialField, verify_solution

    if args.example:
        if args.example == "e8":
            return cmd_examples(argparse.Namespace(name="e8", tol=args.tol, census_tol=args.census_tol))
        if args.example == "briot-bouquet":
            return cmd_examples(argparse.Namespace(name="briot-bouquet", tol=args.tol, census_tol=args.census_tol))
        raise ValueError(f"unknown verification example {args.example!r}")
    if not (args.field and args.solution and args.times):
        raise ValueError("verify needs --example, or --field, --solution and --times")
    import sympy as sp

    comps = [c.strip() for c in args.field.strip().strip("()").split(",")]
    variables = tuple(args.variables.split(",")) if args.variables else ("x", "y", "z")[:len(comps)]
    fieldfn = PolynomialField(comps, variables)
    t = sp.Symbol("t")
    sol = [sp.sympify(s.strip().replace("^", "**"), locals={"t": t, "i": sp.I})
           for s in args.solution.split(";")]
    fns = [sp.lambdify(t, s, "cmath") for s in sol]
    times = [_complex(s) for s in args.times.split(";")]
    r = verify_solution(lambda tt: tuple(complex(f(tt)) for f in fns), fieldfn, times, args.tol)
    rep = AnalysisReport("verify", {"field": args.field, "solution": args.solution, "times": times},
                         {"verification": r}, tolerance=args.tol)
    text = f"max residual {r.max_residual:.3e}  passed: {r.passed}\n"
    if not r.passed:
        raise NumericFailure(f"residual {r.max_residual:.3e} exceeds {args.tol:g}", rep)
    return rep, text


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=float, default=d(DEFAULT_TOL), help="numeric tolerance")
    p.add_argument("--census-tol", type=float, default=d(1e-7), help="tolerance for fixed-point matching")
    p.add_argument("--max-depth", type=int, default=d(16), help="maximum blow-up depth")
    p.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    p.add_argument("--plot", default=d(None), help="save a plot to this file (needs matplotlib)")
    p.add_argument("--format", choices=("json", "text"), default=d("json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="univalens", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"univalens {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, func):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("reduce", "blow up until every singular point is reduced", cmd_reduce)
    p.add_argument("--field", required=True, help='vector field, e.g. "(2*y, 3*x^2)"')
    p.add_argument("--emit-tree", action="store_true", help="include the full blow-up tree")
    p.add_argument("--dot", action="store_true", help="include the dual graph in DOT syntax")

    p = add("classify", "classify a reduced point against the local models", cmd_classify)
    p.add_argument("--field", required=True)
    p.add_argument("--point", default=None, help='point "(x0, y0)", default the origin')

    p = add("affine", "affine structures on curves", cmd_affine)
    asub = p.add_subparsers(dest="affine_cmd", required=True)
    q = asub.add_parser("signature", help="is an orbifold signature uniformizable")
    _common(q, suppress=True)
    q.add_argument("--genus", type=int, default=0)
    q.add_argument("--indices", default="", help='comma list, e.g. "2,3,6" or "2,2,inf"')
    q = asub.add_parser("univalence1d", help="univalence of f(z) d/dz on the Riemann sphere")
    _common(q, suppress=True)
    q.add_argument("--field", required=True, help='rational function f(z), e.g. "z^2"')
    q = asub.add_parser("defect", help="defect form and ramification index between two charts")
    _common(q, suppress=True)
    q.add_argument("--chart1", required=True, help='"z", "log", "root:3", "power:1/2" or a rational function')
    q.add_argument("--chart2", required=True)
    q.add_argument("--at", default=None, help="point for the residue (default 0)")

    p = add("continue", "continue a solution along a path in complex time", cmd_continue)
    p.add_argument("--field", required=True)
    p.add_argument("--start", required=True, help='initial point "x0, y0" (complex allowed, e.g. "1+2j, 0")')
    p.add_argument("--path", default=None, help="path JSON (inline or file)")
    p.add_argument("--t0", default="0", help="start time for --to")
    p.add_argument("--to", default=None, help="end time of a straight segment")
    p.add_argument("--samples", default=None, help="write dense samples as CSV")

    def add_monodromy_args(q):
        q.add_argument("--eq", default=None, help="Riccati equation JSON with a, b, c (inline or file)")
        q.add_argument("--loops", default=None, help="loops JSON (inline or file)")
        q.add_argument("--example", default=None, choices=("wittich",))

    p = add("monodromy", "monodromy of a Riccati equation", cmd_monodromy)
    add_monodromy_args(p)

    p = add("riccati", "Riccati foliations", cmd_riccati)
    rsub = p.add_subparsers(dest="riccati_cmd", required=True)
    q = rsub.add_parser("monodromy", help="monodromy of a Riccati equation")
    _common(q, suppress=True)
    add_monodromy_args(q)
    q = rsub.add_parser("fiber", help="classify the fiber z = 0")
    _common(q, suppress=True)
    q.add_argument("--field", required=True, help='local field in (z, w), e.g. "(z, 3*i*w)"')
    q = rsub.add_parser("forbid", help="check special fibers against transverse zeros")
    _common(q, suppress=True)
    q.add_argument("--fibers", required=True, help="comma list of fiber kinds")
    q.add_argument("--transverse-zeros", action="store_true", help="a zero divisor transverse to the fibration")
    q.add_argument("--ell-size", type=int, default=2, help="asserted number of points of the leaf set")

    p = add("census", "common fixed points of Moebius maps", cmd_census)
    p.add_argument("--maps", required=True, help='JSON list of 2x2 matrices, or {"maps": ..., "time_periods": ...}')
    p.add_argument("--exact", action="store_true", help="entries are exact Gaussian rationals")

    p = add("examples", "run a bundled example", cmd_examples)
    p.add_argument("name", choices=EXAMPLES + ("list",))

    p = add("verify", "check a closed-form solution of a polynomial field", cmd_verify)
    p.add_argument("--example", default=None, choices=("e8", "briot-bouquet"))
    p.add_argument("--field", default=None, help='components, e.g. "(y, -x)"')
    p.add_argument("--variables", default=None, help='e.g. "x,y"')
    p.add_argument("--solution", default=None, help='components separated by ";", e.g. "sin(t); cos(t)"')
    p.add_argument("--times", default=None, help='sample times separated by ";"')
    return parser


def _render(rep: AnalysisReport, text: str, fmt: str) -> str:
    return dumps(rep) if fmt == "json" else text


def _write(out: Optional[str], content: str) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, text = args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n{exc.pointer()}\n")
        return EXIT_INPUT
    except NumericFailure as exc:
        if exc.report is not None:
            _write(args.out, _render(exc.report, f"{exc}\n", args.format))
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except (ArithmeticError, RuntimeError) as exc:
        sys.stderr.write(f"numeric failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    _write(args.out, _render(rep, text, args.format))
    return EXIT_OK

