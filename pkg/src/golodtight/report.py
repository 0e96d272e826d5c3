"""Assemble the analysis of one complex into a plain, deterministic dict."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import __version__
from .complex import SimplicialComplex, f_vector, is_connected
from .errors import BudgetExceeded, GolodTightError, PrerequisiteFailed
from .fm import verify_FM
from .hochster import (
    golod_bound_series,
    hochster_table,
    is_weakly_golod,
    rzk_betti_predicted,
    tor_poincare_series,
    zk_betti,
)
from .homology import betti
from .io import facet_digest
from .linalg import GF2, QQ, Field
from .oracle import rzk_betti_oracle, zk_betti_oracle
from .tightness import (
    is_k_neighborly,
    is_locally_stacked,
    is_tight,
    is_tight_neighborly,
    middle_dimension_check,
    validate_manifold,
)

# default sizes up to which analyze also runs the brute-force oracles
ORACLE_RZK_MAX = 8
ORACLE_ZK_MAX = 6

HYPOTHESIS_NOTE = ("the input most likely violates a hypothesis of this statement "
                   "(not a manifold, wrong orientability, or a mislabeled file)")


class Timer:
    def __init__(self):
        self.times: dict[str, float] = {}

    def run(self, key: str, fn: Callable):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            self.times[key] = round(time.perf_counter() - t0, 6)


def outcome(fn: Callable, convert: Callable = lambda x: x) -> dict:
    """Run one predicate; preconditions failing is 'not-applicable', not an error."""
    try:
        return {"status": "ok", "value": convert(fn())}
    except BudgetExceeded as exc:
        return {"status": "budget", "reason": str(exc)}
    except PrerequisiteFailed as exc:
        return {"status": "not-applicable", "reason": str(exc)}
    except (GolodTightError, AssertionError) as exc:
        return {"status": "error", "reason": f"{type(exc).__name__}: {exc}"}


def _value(block: dict, key: str | None = None):
    if block.get("status") != "ok":
        return None
    v = block["value"]
    return v.get(key) if key and isinstance(v, dict) else v


def _tight_dict(r) -> dict:
    out = {"tight": r.tight, "checked": r.checked, "pruned": r.pruned,
           "pruned_by": dict(sorted(r.pruned_by.items())), "prune": r.prune}
    if r.witness:
        out["witness"] = {"I": list(r.witness[0]), "degree": r.witness[1]}
    return out


def _golod_dict(c) -> dict:
    out = {"weakly_golod": c.vanishing, "pairs_total": c.pairs_total,
           "pairs_computed": c.pairs_computed, "pairs_prefiltered": c.pairs_prefiltered}
    if c.witness:
        w = c.witness
        out["witness"] = {"I": list(w.I), "J": list(w.J), "degree": w.degree,
                          "bidegree": list(w.bidegree), "rank": w.rank}
    return out


def _manifold_dict(r) -> dict:
    return {
        "dim": r.dim,
        "pure": r.is_pure,
        "closed_pseudomanifold": r.is_closed_pseudomanifold,
        "strongly_connected": r.is_strongly_connected,
        "connected": r.is_connected,
        "links": {str(v): s for v, s in sorted(r.link_verdicts.items())},
        "orientable_over": dict(sorted(r.orientable_over.items())),
        "valid": r.ok,
        "certified": r.ok and r.certified,
        "witnesses": {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(r.witnesses.items())},
    }


def _field_block(K: SimplicialComplex, F: Field, prune: bool, max_vertices: int, truncate: int,
                 oracles: bool, timer: Timer) -> dict:
    name = F.name
    block = {}
    block["homology"] = outcome(lambda: {"reduced": list(betti(K, F, True)), "unreduced": list(betti(K, F, False))})
    block["tight"] = timer.run(f"{name}.tight", lambda: outcome(
        lambda: is_tight(K, F, prune=prune, max_vertices=max_vertices), _tight_dict))
    block["weakly_golod"] = timer.run(f"{name}.golod", lambda: outcome(
        lambda: is_weakly_golod(K, F, prune=prune, max_vertices=max_vertices), _golod_dict))
    block["tight_neighborly"] = outcome(lambda: is_tight_neighborly(K, F), lambda t: {
        "holds": t.holds, "m": t.m, "d": t.d, "beta1": t.beta1, "lhs": t.lhs, "rhs": t.rhs})

    def hochster():
        table = hochster_table(K, F, max_vertices=max_vertices)
        return {
            "nonzero_rows": [[list(I), p, r] for I, p, r in table.nonzero_rows()],
            "by_size": [[s, p, r] for (s, p), r in table.by_size().items()],
        }

    block["hochster"] = timer.run(f"{name}.hochster", lambda: outcome(hochster))
    block["series"] = outcome(lambda: {
        "truncation": truncate,
        "tor": list(tor_poincare_series(K, F, truncate).coefficients),
        "golod_bound": list(golod_bound_series(K, F, truncate).coefficients),
    })
    block["zk_betti"] = outcome(lambda: list(zk_betti(K, F)))
    block["rzk_betti_predicted"] = outcome(lambda: list(rzk_betti_predicted(K, F)))
    if oracles:
        block["rzk_oracle"] = (timer.run(f"{name}.rzk_oracle", lambda: outcome(lambda: list(rzk_betti_oracle(K, F))))
                               if K.m <= ORACLE_RZK_MAX else {"status": "skipped", "reason": f"m > {ORACLE_RZK_MAX}"})
        block["zk_oracle"] = (timer.run(f"{name}.zk_oracle", lambda: outcome(lambda: list(zk_betti_oracle(K, F))))
                              if K.m <= ORACLE_ZK_MAX else {"status": "skipped", "reason": f"m > {ORACLE_ZK_MAX}"})
    return block


def _fm_dict(r) -> dict:
    return {
        "passed": r.passed,
        "FM_facets": len(r.FM.facets),
        "SM": [list(I) for I in r.SM],
        "betti": {k: list(v) for k, v in sorted(r.betti.items())},
        "claims": {k: {"passed": c.passed, "witness": _plain(c.witness)} for k, c in r.claims.items()},
    }


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def audit(report: dict, fields: Sequence[Field]) -> dict:
    """Flag verdict combinations that the known equivalences rule out."""
    findings = []
    warnings = []
    man = _value(report["manifold"]) or {}
    neighborly = report["neighborly"]
    stacked = _value(report["locally_stacked"])
    locally_stacked = isinstance(stacked, dict) and all(v == "stacked" for v in stacked.values())
    dim = report["input"]["dim"]

    def add(statement, field, detail):
        findings.append({"statement": statement, "field": field, "detail": detail, "note": HYPOTHESIS_NOTE})

    for F in fields:
        blk = report["fields"][F.name]
        tight = _value(blk["tight"], "tight")
        golod = _value(blk["weakly_golod"], "weakly_golod")
        tn = _value(blk["tight_neighborly"], "holds")
        orientable = man.get("certified") and man.get("orientable_over", {}).get(F.name)
        if tight and not neighborly:
            add("tight implies neighborly", F.name, "tight but not neighborly")
        if tight and golod is False:
            add("tight implies weakly Golod", F.name, "tight but a nonzero product exists")
        if dim == 2 and orientable and neighborly and golod is False:
            add("neighborly orientable surfaces are Golod", F.name, "neighborly but not weakly Golod")
        if dim >= 3 and orientable and tn and tight is False:
            add("tight-neighborly implies tight", F.name, "tight-neighborly but not tight")
        if dim == 3 and orientable and None not in (tight, tn):
            stack_ok = neighborly and locally_stacked
            if not (tight == tn == stack_ok):
                add("for closed orientable 3-manifolds: tight, tight-neighborly, neighborly and stacked agree",
                    F.name, f"tight={tight}, tight-neighborly={tn}, neighborly-and-locally-stacked={stack_ok}")
    mid = report.get("middle_dimension")
    if mid and mid.get("status") == "ok":
        v = mid["value"]
        if v["connected_enough"] and v["neighborly"] and not all(v["tight"].values()):
            add(f"{v['k']}-neighborly highly connected {2 * v['k']}-manifolds are tight", None,
                f"tight per field: {v['tight']}")
    b1 = {F.name: _value(report["fields"][F.name]["tight_neighborly"], "beta1") for F in fields}
    b1 = {k: v for k, v in b1.items() if v is not None}
    if len(set(b1.values())) > 1:
        warnings.append({"check": "first Betti number agrees across fields", "values": b1})
    fm = report.get("fm")
    if fm and fm.get("status") == "ok" and not fm["value"]["passed"]:
        hyp = man.get("certified") and neighborly and locally_stacked and any(
            _value(report["fields"][F.name]["tight_neighborly"], "holds") for F in fields)
        if hyp:
            failed = [k for k, c in fm["value"]["claims"].items() if not c["passed"]]
            add("F(M) claims for neighborly stacked manifolds", None, f"failed: {failed}")
    return {"clean": not findings, "findings": findings, "warnings": warnings}


def analyze(K: SimplicialComplex, fields: Sequence[Field] = (GF2, QQ), prune: bool = True,
            max_vertices: int = 20, truncate: int = 12, oracles: bool = True,
            parallel: int = 1) -> tuple[dict, dict]:
    """Return (report, timing).  The report is deterministic for fixed inputs."""
    timer = Timer()
    report: dict = {
        "tool": {"name": "golodtight", "version": __version__},
        "input": {"m": K.m, "dim": K.dim, "f_vector": list(f_vector(K)), "facet_sha256": facet_digest(K),
                  "connected": is_connected(K)},
        "field_list": [F.name for F in fields],
        "options": {"prune": prune, "max_vertices": max_vertices, "truncate": truncate, "oracles": oracles},
    }
    report["manifold"] = timer.run("manifold", lambda: outcome(lambda: validate_manifold(K, fields), _manifold_dict))
    report["neighborly"] = is_k_neighborly(K, 1)
    kmax = 0
    while kmax < K.m and is_k_neighborly(K, kmax + 1):
        kmax += 1
    report["neighborliness"] = kmax
    report["locally_stacked"] = timer.run("locally_stacked", lambda: outcome(
        lambda: is_locally_stacked(K), lambda d: {str(v): s for v, s in sorted(d.items())}))

    def per_field(F):
        return _field_block(K, F, prune, max_vertices, truncate, oracles, timer)

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            blocks = list(pool.map(per_field, fields))
    else:
        blocks = [per_field(F) for F in fields]
    report["fields"] = {F.name: b for F, b in zip(fields, blocks)}

    man = _value(report["manifold"]) or {}
    if K.dim >= 4 and K.dim % 2 == 0 and man.get("valid"):
        report["middle_dimension"] = outcome(lambda: middle_dimension_check(K, fields), lambda c: {
            "k": c.k, "connected_enough": c.connected_enough, "tight": c.tight, "neighborly": c.neighborly})
    if K.dim >= 3:
        report["fm"] = timer.run("fm", lambda: outcome(lambda: verify_FM(K, fields), _fm_dict))
    report["audit"] = audit(report, fields)
    return report, timer.times


def exit_status(report: dict) -> int:
    """0 clean; 5 a predicate errored; 4 audit finding; 6 oracle mismatch; 3 budget."""
    statuses = []

    def walk(x):
        if isinstance(x, dict):
            if "status" in x:
                statuses.append(x["status"])
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(report)
    if "error" in statuses:
        return 5
    if not report["audit"]["clean"]:
        return 4
    for blk in report["fields"].values():
        pred_r, pred_z = _value(blk["rzk_betti_predicted"]), _value(blk["zk_betti"])
        if "rzk_oracle" in blk and _value(blk["rzk_oracle"]) not in (None, pred_r):
            return 6
        if "zk_oracle" in blk and _value(blk["zk_oracle"]) not in (None, pred_z):
            return 6
    if "budget" in statuses:
        return 3
    return 0
