"""Deterministic JSON report and graph artifacts for an analysis run.

Exact values are rendered as canonical strings; decimal approximations are
tagged "approx" and never replace the exact fields.  Construction order is
fixed, so identical inputs yield byte-identical artifacts.
"""

from __future__ import annotations

import json

from .blowup import configuration_graph
from .reduction import ORDINARY, POSITIVE_IRRATIONAL, POSITIVE_RATIONAL, SIMPLE


def _approx(tower, e, digits=20):
    return tower.eval_interval(e, 192).midpoint_str(digits)


def _class_entry(tower, cls):
    out = {"kind": cls.kind, "multiplicity": cls.multiplicity}
    if cls.ratio_class is not None:
        out["ratio_class"] = cls.ratio_class
    if cls.trace is not None:
        out["trace"] = str(cls.trace)
        out["det"] = str(cls.det)
    if cls.rational_ratio is not None:
        out["ratio"] = "%s" % cls.rational_ratio
    if cls.kind == SIMPLE and cls.ratio_class == POSITIVE_IRRATIONAL:
        s = cls.trace * cls.trace / cls.det
        out["s_approx"] = _approx(tower, s)
    return out


def configuration_section(result):
    cand = result.candidates
    red = cand.reduction
    cfg = red.config
    omega = set(cand.omega_ids)
    omega_prime = set(red.omega_prime)
    points = []
    for pid in cfg.ids():
        pt = cfg.points[pid]
        info = cfg.info.get(pid, {})
        form = cfg.forms[pid]
        entry = {
            "id": pid,
            "parent": pt.parent,
            "proximate_to": sorted(pt.proximate_to),
            "free": pt.free,
            "on_infinity": pt.on_infinity,
            "in_omega": pid in omega,
            "in_omega_prime": pid in omega_prime,
        }
        if pt.root_coords is not None:
            x0, y0 = pt.root_coords
            entry["point_at_infinity"] = "(%s : %s : 0)" % (x0, y0)
        if "class" in info:
            entry["class"] = _class_entry(cfg.tower, info["class"])
        if info.get("dicritical") is not None:
            entry["dicritical"] = info["dicritical"]
        if form.removed_content is not None:
            entry["removed_content"] = form.removed_content.text()
        points.append(entry)
    return {
        "points": points,
        "omega": sorted(omega),
        "omega_prime": sorted(omega_prime),
        "extension": list(cand.extension_ids),
    }


def build_report(document, result, chains=None, content=None):
    tower = document.tower
    out = {
        "input": {
            "document": document.render(),
            "block": document.block_kind,
            "orientation": "a dx + b dy corresponds to (p, q) = (b, -a)",
            "degree": result.system.degree,
        },
        "constants": [
            {
                "name": s.name,
                "kind": s.kind,
                "minpoly": [str(c) for c in s.minpoly] if s.minpoly else None,
                "numeric": s.numeric,
            }
            for s in document.symbols
        ],
        "options": {
            "budget_points": document.options.budget_points,
            "cf_depth": document.options.cf_depth,
            "precision_max": document.options.precision_max,
            "seed": document.options.seed,
            "jobs": document.options.jobs,
        },
    }
    if content is not None:
        out["input"]["removed_content"] = content.text()
    if result.zero is not None:
        out["outcome"] = {"status": "zero", "stage": result.zero.stage, "reason": result.zero.reason}
    else:
        out["outcome"] = {"status": "integral"}
    out["configuration"] = configuration_section(result)
    cand = result.candidates
    if cand.s_points:
        out["s_points"] = [
            {
                "id": sp.pid,
                "chain": list(sp.cluster.chain),
                "m": list(sp.cluster.m),
                "d": sp.d,
                "I": sp.index,
                "curve": sp.curve.text(),
                "curve_projective": sp.form_projective.text(),
            }
            for sp in cand.s_points
        ]
    integral = result.integral
    if integral is not None:
        out["curves"] = [f.text() for f in integral.curves]
        out["cofactors"] = [k.text() for k in integral.cofactors]
        out["exponents"] = {
            "ray": [str(e) for e in integral.ray],
            "display": [str(e) for e in integral.ray_display],
            "approx": [_approx(tower, e) for e in integral.ray_display],
            "positive": integral.positive,
        }
        out["verified"] = integral.verified
        out["integral"] = integral.text()
        out["dpwai"] = {"certified": integral.dpwai_certified, "notes": list(integral.dpwai_notes)}
        if result.rho is not None:
            n = len(integral.curves)
            out["rho"] = [
                [None if i == j else result.rho[(i, j)] for j in range(n)] for i in range(n)
            ]
        if result.deltas is not None:
            out["deltas"] = {
                "exact": [str(d) for d in result.deltas],
                "approx": [_approx(tower, d) for d in result.deltas],
            }
    if chains:
        out["chains"] = [
            {
                "s_point": ch.s_pid,
                "delta": str(ch.delta),
                "alpha": str(ch.alpha),
                "ratio_approx": _approx(tower, ch.delta / ch.alpha),
                "cf": {"digits": list(ch.cf.digits), "exact": ch.cf.exact},
                "prefix_length": len(ch.chain),
                "delta_from_local_form": None
                if ch.delta_from_local_form is None
                else str(ch.delta_from_local_form),
                "cross_check": ch.cross_check,
            }
            for ch in chains
        ]
    return out


def report_json(report):
    return json.dumps(report, indent=2) + "\n"


def omega_dot(result):
    return configuration_graph(result.candidates.reduction.config, result.candidates.omega_ids).dot()


def chain_dot(descriptor):
    labels = {0: "S"}
    for i in range(1, len(descriptor.chain)):
        labels[i] = "R%d" % i
    return descriptor.chain.graph(labels).dot()
