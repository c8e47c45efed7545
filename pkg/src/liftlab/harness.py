"""Built-in corpus, group-file ingestion, suite runner, and report emission.

The corpus embeds permutation generators directly in source so every run is
reproducible with zero external inputs.  Reports are deterministic: two runs
of the same selection produce byte-identical JSON apart from the timing field
in the metadata.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import __version__, vertex
from .brauer import ibr, lifts
from .errors import (ConsistencyError, InputError, PreconditionError,
                     UnsupportedPrimeError)
from .permgroup import (DEFAULT_ORDER_BOUND, Group, Permutation,
                        group_from_generators)

CHECK_NAMES = ("theoremA", "corollaryB", "cossey", "cl12", "lemmaA", "lemmaI52")

_CHECKS = {
    "theoremA": vertex.theoremA_sweep,
    "corollaryB": vertex.corollaryB_verify,
    "cossey": vertex.cossey_verify,
    "cl12": vertex.cl12_sweep,
    "lemmaA": vertex.lemmaA_verify,
    "lemmaI52": vertex.lemmaI52_verify,
}


@dataclass(frozen=True)
class CorpusEntry:
    """One corpus group with its odd primes and optional golden values."""

    name: str
    group: Group
    primes: tuple
    expected: dict = field(default_factory=dict)


def _linear_group(matrices, q=3, name=None):
    """Permutation group from 2x2 matrices over F_q acting on the q*q-1
    nonzero column vectors, numbered lexicographically."""
    vecs = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for m in matrices:
        images = tuple(index[((m[0][0] * a + m[0][1] * b) % q,
                              (m[1][0] * a + m[1][1] * b) % q)]
                       for (a, b) in vecs)
        gens.append(Permutation(images))
    return group_from_generators(len(vecs), gens, name=name)


def _cyc(degree, *cycle_texts):
    return [Permutation.from_cycles(t, degree) for t in cycle_texts]


@lru_cache(maxsize=None)
def corpus_catalog():
    """The built-in corpus, with golden values frozen from standard
    small-group theory (class counts, IBr counts, lift counts per phi)."""
    entries = [
        CorpusEntry("C1", group_from_generators(1, [], name="C1"), (),
                    {"classes": 1}),
        CorpusEntry("C2", group_from_generators(2, _cyc(2, "(1,2)"), name="C2"),
                    (), {"classes": 2}),
        CorpusEntry("C3", group_from_generators(3, _cyc(3, "(1,2,3)"), name="C3"),
                    (3,), {"classes": 3, "ibr": {3: 1}, "lifts": {3: [3]}}),
        CorpusEntry("C6",
                    group_from_generators(6, _cyc(6, "(1,2,3,4,5,6)"), name="C6"),
                    (3,), {"classes": 6, "ibr": {3: 2}, "lifts": {3: [3, 3]}}),
        CorpusEntry("S3",
                    group_from_generators(3, _cyc(3, "(1,2)", "(1,2,3)"),
                                          name="S3"),
                    (3,), {"classes": 3, "ibr": {3: 2}, "lifts": {3: [1, 1]}}),
        CorpusEntry("D4",
                    group_from_generators(4, _cyc(4, "(1,2,3,4)", "(1,3)"),
                                          name="D4"),
                    (), {"classes": 5}),
        CorpusEntry("Q8",
                    group_from_generators(
                        8, _cyc(8, "(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"),
                        name="Q8"),
                    (), {"classes": 5}),
        CorpusEntry("A4",
                    group_from_generators(4, _cyc(4, "(1,2,3)", "(1,2)(3,4)"),
                                          name="A4"),
                    (3,), {"classes": 4, "ibr": {3: 2}, "lifts": {3: [3, 1]}}),
        CorpusEntry("D6",
                    group_from_generators(
                        6, _cyc(6, "(1,2,3,4,5,6)", "(2,6)(3,5)"), name="D6"),
                    (3,), {"classes": 6, "ibr": {3: 4}}),
        CorpusEntry("F21",
                    group_from_generators(
                        7, _cyc(7, "(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"),
                        name="F21"),
                    (3, 7),
                    {"classes": 5, "ibr": {3: 3, 7: 3},
                     "lifts": {3: [3, 1, 1], 7: [1, 1, 1]}}),
        CorpusEntry("SL(2,3)",
                    _linear_group([[[1, 1], [0, 1]], [[0, 2], [1, 0]]],
                                  name="SL(2,3)"),
                    (3,),
                    {"classes": 7, "ibr": {3: 3}, "lifts": {3: [3, 3, 1]}}),
        CorpusEntry("S4",
                    group_from_generators(4, _cyc(4, "(1,2)", "(1,2,3,4)"),
                                          name="S4"),
                    (3,), {"classes": 5, "ibr": {3: 4},
                           "lifts": {3: [1, 1, 1, 1]}}),
        CorpusEntry("GL(2,3)",
                    _linear_group([[[2, 0], [0, 1]], [[2, 1], [2, 0]]],
                                  name="GL(2,3)"),
                    (3,),
                    {"classes": 8, "ibr": {3: 6},
                     "lifts": {3: [1, 1, 1, 1, 1, 1]}}),
    ]
    return tuple(entries)


def verify_golden(entry: CorpusEntry):
    """Recompute and compare the entry's golden values; raises on mismatch."""
    exp = entry.expected
    G = entry.group
    if "classes" in exp and len(G.classes) != exp["classes"]:
        raise ConsistencyError(
            f"{entry.name}: {len(G.classes)} classes, expected {exp['classes']}")
    for p, count in exp.get("ibr", {}).items():
        if len(ibr(G, p)) != count:
            raise ConsistencyError(
                f"{entry.name}: |IBr_{p}| = {len(ibr(G, p))}, expected {count}")
    for p, counts in exp.get("lifts", {}).items():
        got = [len(lifts(phi).members) for phi in ibr(G, p)]
        if got != list(counts):
            raise ConsistencyError(
                f"{entry.name}: lift counts {got}, expected {list(counts)}")


# ---------------------------------------------------------------------------
# group file ingestion

def parse_group_file(path, order_bound: int = DEFAULT_ORDER_BOUND) -> Group:
    """Read the plain-text group format: name, degree, then gen lines."""
    name = None
    degree = None
    gens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("name "):
                name = line[5:].strip()
            elif line.startswith("degree "):
                try:
                    degree = int(line[7:].strip())
                except ValueError:
                    raise InputError(f"{path}:{lineno}: malformed degree") from None
            elif line.startswith("gen "):
                if degree is None:
                    raise InputError(f"{path}:{lineno}: gen before degree")
                try:
                    gens.append(Permutation.from_cycles(line[4:], degree))
                except InputError as exc:
                    raise InputError(f"{path}:{lineno}: {exc}") from None
            else:
                raise InputError(f"{path}:{lineno}: unrecognized directive")
    if degree is None:
        raise InputError(f"{path}: missing degree line")
    return group_from_generators(degree, gens, name=name,
                                 order_bound=order_bound)


def read_config(path) -> dict:
    """Key-value config: 'order_bound' and 'workers', one 'key = value' per
    line, '#' comments allowed."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in ("order_bound", "workers"):
                raise InputError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = int(value)
            except ValueError:
                raise InputError(f"{path}:{lineno}: {key} must be an integer") \
                    from None
    return out


# ---------------------------------------------------------------------------
# suite runner

@dataclass
class SuiteReport:
    entries: list
    summary: dict
    metadata: dict

    @property
    def failed_nonvacuous(self) -> int:
        return self.summary["failed"]

    def to_dict(self) -> dict:
        return {"entries": self.entries, "summary": self.summary,
                "metadata": self.metadata}


def resolve_checks(names) -> tuple:
    if not names or "all" in names:
        return CHECK_NAMES
    bad = [n for n in names if n not in _CHECKS]
    if bad:
        raise InputError(f"unknown checks: {', '.join(bad)}; "
                         f"valid: {', '.join(CHECK_NAMES)} or all")
    return tuple(n for n in CHECK_NAMES if n in names)


def run_check(G: Group, p: int, check: str) -> dict:
    """Run one named verifier; unsupported or inapplicable inputs become a
    reported outcome rather than an exception."""
    try:
        report = _CHECKS[check](G, p)
    except UnsupportedPrimeError as exc:
        return {"name": check, "instances": 0, "passed": 0, "vacuous": 0,
                "witnesses": [], "outcome": "unsupported", "reason": str(exc)}
    except PreconditionError as exc:
        return {"name": check, "instances": 0, "passed": 0, "vacuous": 0,
                "witnesses": [], "outcome": "skipped", "reason": str(exc)}
    out = report.to_dict()
    out["outcome"] = "ok" if report.failed == 0 else "fail"
    return out


def run_suite(groups=None, primes=None, checks=None, workers: int = 1):
    """Run the selected verifiers over the corpus selection.

    The report content is deterministic and independent of the worker count:
    tasks are collected and sorted canonically before assembly."""
    started = time.time()
    selected = [e for e in corpus_catalog()
                if groups is None or e.name in groups]
    check_list = resolve_checks(checks)
    tasks = []
    for entry in selected:
        entry_primes = tuple(primes) if primes else entry.primes
        for p in entry_primes:
            tasks.append((entry, p))
    if not tasks:
        raise InputError("selection resolves to no (group, prime) pairs")
    for entry in selected:
        verify_golden(entry)

    def run_pair(task):
        entry, p = task
        return {"group": entry.name, "order": entry.group.order, "p": p,
                "checks": [run_check(entry.group, p, c) for c in check_list]}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_pair, tasks))
    else:
        results = [run_pair(t) for t in tasks]
    results.sort(key=lambda r: (r["group"], r["p"]))

    summary = {"pairs": len(results), "checks": 0, "instances": 0,
               "passed": 0, "failed": 0, "vacuous": 0, "unsupported": 0}
    for res in results:
        for chk in res["checks"]:
            summary["checks"] += 1
            summary["instances"] += chk["instances"]
            summary["passed"] += chk["passed"]
            summary["failed"] += chk["instances"] - chk["passed"]
            summary["vacuous"] += chk["vacuous"]
            if chk["outcome"] == "unsupported":
                summary["unsupported"] += 1
    metadata = {"version": __version__,
                "timing_s": round(time.time() - started, 3)}
    return SuiteReport(results, summary, metadata)


def render_report(report: SuiteReport, fmt: str = "markdown") -> str:
    """Render as canonical JSON or a human-readable markdown table; both
    carry the same information."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if fmt != "markdown":
        raise InputError(f"unknown report format {fmt!r}")
    lines = ["| group | order | p | check | instances | passed | vacuous | outcome |",
             "|---|---|---|---|---|---|---|---|"]
    for res in report.entries:
        for chk in res["checks"]:
            lines.append(
                f"| {res['group']} | {res['order']} | {res['p']} "
                f"| {chk['name']} | {chk['instances']} | {chk['passed']} "
                f"| {chk['vacuous']} | {chk['outcome']} |")
    s = report.summary
    lines.append("")
    lines.append(f"checks: {s['checks']}  instances: {s['instances']}  "
                 f"passed: {s['passed']}  failed: {s['failed']}  "
                 f"vacuous: {s['vacuous']}  unsupported: {s['unsupported']}")
    lines.append(f"version: {report.metadata['version']}  "
                 f"elapsed: {report.metadata['timing_s']}s")
    return "\n".join(lines)
