"""The bundled example corpus and its table-driven runner.

Each entry of ``data/corpus.json`` names a command, its inputs, the expected
verdict, a provenance tag (``PAPER``, ``DERIVED`` or ``TRIVIAL``) and a
tolerance.  :func:`run_entry` executes one entry and compares only the keys
listed under ``expect``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Dict, List

from .algebra import RationalVF2
from .common import is_inf


@lru_cache(maxsize=1)
def _load_text() -> str:
    return resources.files("univalens").joinpath("data/corpus.json").read_text()


def load_corpus() -> List[dict]:
    return json.loads(_load_text())["entries"]


def corpus_entry(name: str) -> dict:
    for e in load_corpus():
        if e["name"] == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


@dataclass
class EntryResult:
    name: str
    passed: bool
    actual: Dict[str, Any]
    expected: Dict[str, Any]
    seconds: float
    mismatches: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "expected": self.expected, "actual": self.actual, "mismatches": self.mismatches}


# ---------------------------------------------------------------------------
# per-command evaluators; each returns a dict with at least the expected keys


def _reduce(e: dict) -> dict:
    from .reduction import reduce

    tree = reduce(RationalVF2.parse(e["field"]))
    return {"n_blowups": tree.n_blowups, "all_reduced": tree.all_reduced(),
            "self_intersections": [d.self_intersection for d in tree.exceptional]}


def _classify(e: dict) -> dict:
    from .localmodels import classify_local

    r = classify_local(RationalVF2.parse(e["field"]), e.get("point", (0, 0)))
    branches = {b.label: [str(b.ord), "inf" if is_inf(b.ind) else str(b.ind), str(b.cs)] for b in r.branch_data}
    return {"kind": r.kind.value, "p": r.p, "q": r.q, "m": r.m, "n": r.n, "k": r.k, "branches": branches}


def _signature(e: dict) -> dict:
    from .affine import OrbifoldSignature, uniformizable_signature

    v = uniformizable_signature(OrbifoldSignature.parse(int(e["genus"]), e["indices"]))
    return {"uniformizable": bool(v), "label": v.label}


def _univalence(e: dict) -> dict:
    from .affine import univalence_1d

    v = univalence_1d(e["field"])
    return {"status": v.status.value, "determinations_lower_bound": v.determinations_lower_bound}


def wittich_report(tol: float = 1e-6) -> dict:
    """Monodromy of Wittich's equation, the census verdict and the worst identity defect."""
    from .riccati import fixed_point_census, monodromy, wittich_equation, wittich_loops

    rep = monodromy(wittich_equation(), wittich_loops())
    census = fixed_point_census(rep)
    worst = max(m.distance_to_identity() for m in rep.maps)
    return {"all_identity": worst <= tol, "max_distance_to_identity": worst, "verdict": census.verdict.value,
            "monodromy": rep, "census": census}


def _monodromy(e: dict) -> dict:
    if e.get("equation") != "wittich":
        raise ValueError("corpus monodromy entries support the bundled Wittich equation only")
    return wittich_report(e["tolerance"])


GENERIC_LEAF = 0.3 + 0.17j


def four_maximal_report(lattice=(1, 1j), tol: float = 1e-10) -> dict:
    """Determination counts on the four leaves ``c`` in ``(1/2) Lambda`` and on a generic leaf."""
    from .common import parallel_map
    from .continuation import example4_count, half_lattice_points

    leaves = half_lattice_points(lattice) + [GENERIC_LEAF]
    counts = parallel_map(lambda c: example4_count(c, lattice, tol=tol), leaves)
    return {"special": [c.count for c in counts[:4]], "generic": counts[4].count,
            "leaves": [[c, r] for c, r in zip(leaves, counts)]}


def _count(e: dict) -> dict:
    lattice = tuple(complex(*p) for p in e["lattice"])
    return four_maximal_report(lattice, e["tolerance"])


def e8_report(tol: float = 1e-8) -> dict:
    from .continuation import verify_solution
    from .continuation.classical import e8_field, e8_sample_times, e8_solution

    r = verify_solution(e8_solution(), e8_field(), e8_sample_times(), tol)
    return {"passed": r.passed, "max_residual": r.max_residual, "report": r}


def briot_bouquet_report() -> dict:
    from .continuation.classical import briot_bouquet_checks

    stated, corrected = briot_bouquet_checks(False), briot_bouquet_checks(True)
    return {"stated_passed": all(r.passed for r in stated.values()),
            "corrected_passed": all(r.passed for r in corrected.values()),
            "stated": {k: r.max_residual for k, r in stated.items()},
            "corrected": {k: r.max_residual for k, r in corrected.items()}}


def _verify(e: dict) -> dict:
    if e["example"] == "e8":
        return e8_report(e["tolerance"])
    if e["example"] == "briot-bouquet":
        return briot_bouquet_report()
    raise ValueError(f"unknown verification example {e['example']!r}")


def _continue(e: dict) -> dict:
    from .continuation import PathSpec, continue_solution

    start = tuple(complex(v) if not isinstance(v, list) else complex(*v) for v in e["start"])
    r = continue_solution(RationalVF2.parse(e["field"]), start, PathSpec.from_json(e["path"]), e["tolerance"])
    return {"outcome": r.outcome.value, "result": r}


EVALUATORS = {"reduce": _reduce, "classify": _classify, "affine-signature": _signature,
              "affine-univalence1d": _univalence, "monodromy": _monodromy, "count": _count,
              "verify": _verify, "continue": _continue}


def run_entry(entry: dict) -> EntryResult:
    t0 = time.perf_counter()
    actual = EVALUATORS[entry["command"]](entry)
    seconds = time.perf_counter() - t0
    expected = entry["expect"]
    mismatches = [f"{k}: expected {v!r}, got {actual.get(k)!r}" for k, v in expected.items() if actual.get(k) != v]
    shown = {k: actual[k] for k in actual if k in expected or k.startswith("max_")}
    return EntryResult(entry["name"], not mismatches, shown, expected, seconds, mismatches)


def run_corpus(names=None) -> List[EntryResult]:
    return [run_entry(e) for e in load_corpus() if names is None or e["name"] in names]
