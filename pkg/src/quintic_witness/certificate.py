"""Canonical JSON certificates and their independent validator."""
from __future__ import annotations

import json
from typing import Any

from .construct import ConstructionResult
from .curves import RationalCurveMap
from .deformation import IncidencePair, apply_phi
from .groebner import ORDER
from .poly import BinaryForm, MultiPoly, PolySyntaxError, parse_poly

VERSION = "1"

CERTIFICATE_KEYS = (
    "attempts", "checks", "config", "curve", "f0", "g0", "g1", "g2",
    "overall_pass", "q", "seed", "version",
)
CHECK_KEYS = (
    "condition01", "h0", "h1", "identification_pair_count", "image_equality",
    "immersion", "incidence", "ker_phi_dim", "node_classification",
    "orbit_in_kernel", "rank_lambda", "rank_mu", "rank_phi", "scenario_strict",
    "smooth", "witness_beta", "witness_residual_zero", "witness_slot1_zero",
)

CONVENTIONS = {
    "monomial_order": ORDER,
    "phi_domain_basis": "slot-major, then ascending t-power: column i*(d+1)+k is s^(d-k) t^k in slot i",
    "codomain_coordinates": "ascending t-power in H^0(O(5d))",
    "g_degrees": "g0 and g1 have degree 4 so that z0*g0 + z1*g1 + g2*q is a homogeneous quintic",
    "condition01_model": (
        "image(M_mu) contained in image(Phi); (0, f0) is tangent to the incidence variety "
        "since c0^*(f0) = 0, so this containment is surjectivity onto the tangent space of "
        "the projective space of quintics"
    ),
    "h1_model": "h1 = dim coker(Phi) with Phi(alpha) = sum_i alpha_i c^*(df/dz_i); h0 = dim ker(Phi) - 4",
    "lambda_target": "rank_lambda is compared with 15, the dimension of the image of M_mu",
    "smooth_over_Q": "one smooth fibre of the integral content-free model at a good prime",
}


def canonical_dumps(obj: Any) -> str:
    """Sorted keys, two-space indent, LF endings, trailing newline."""
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _reject_floats(obj):
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in certificates")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def expected_failures(checks: dict, d: int = 3) -> list[str]:
    """Names of the checks that do not meet the target values."""
    n = 5 * (d + 1)
    bad = []
    want = {
        "incidence": True,
        "identification_pair_count": 1,
        "node_classification": "node",
        "immersion": True,
        "rank_phi": 5 * d,
        "ker_phi_dim": 5,
        "rank_mu": 5 * d,
        "rank_lambda": 5 * d,
        "condition01": True,
        "image_equality": True,
        "scenario_strict": True,
        "witness_slot1_zero": True,
        "witness_residual_zero": True,
        "orbit_in_kernel": True,
    }
    for k, v in want.items():
        if checks.get(k) != v:
            bad.append(k)
    smooth = checks.get("smooth") or {}
    if smooth.get("conclusion_over_Q") != "smooth":
        bad.append("smooth")
    rp, ker = checks.get("rank_phi"), checks.get("ker_phi_dim")
    if not (isinstance(rp, int) and isinstance(ker, int) and rp + ker == n):
        bad.append("rank_nullity")
    h0, h1 = checks.get("h0"), checks.get("h1")
    if not (isinstance(h1, int) and isinstance(rp, int) and h1 == 5 * d + 1 - rp and h1 >= 1):
        bad.append("h1")
    if not (isinstance(h0, int) and isinstance(ker, int) and h0 == ker - 4):
        bad.append("h0")
    beta = checks.get("witness_beta")
    if not beta or beta[0] == "0":
        bad.append("witness_beta")
    return bad


def build_certificate(result: ConstructionResult) -> dict:
    r = result.report
    w = result.witness
    checks = {
        "incidence": IncidencePair(result.curve, result.f0).incident,
        "identification_pair_count": result.curve_info.pair_count,
        "node_classification": result.curve_info.node_classification,
        "immersion": result.curve_info.immersion,
        "smooth": {
            "prime": result.smooth.prime,
            "witnesses": result.smooth.witnesses,
            "conclusion_over_Q": result.smooth.conclusion_over_Q,
        },
        "rank_phi": r.rank_phi,
        "ker_phi_dim": r.ker_phi_dim,
        "rank_mu": r.rank_mu,
        "rank_lambda": result.rank_lambda,
        "condition01": r.condition01,
        "h0": r.h0,
        "h1": r.h1,
        "image_equality": r.image_equality,
        "scenario_strict": r.scenario_strict,
        "witness_beta": w.strings() if w is not None else None,
        "witness_slot1_zero": bool(w and w.slot1_zero),
        "witness_residual_zero": bool(w and w.residual_zero),
        "orbit_in_kernel": r.orbit_in_kernel,
    }
    config = dict(result.config.to_json())
    config["conventions"] = dict(CONVENTIONS)
    return {
        "version": VERSION,
        "seed": result.config.seed,
        "config": config,
        "curve": result.curve.to_strings(),
        "g0": result.g0.to_str(),
        "g1": result.g1.to_str(),
        "g2": result.g2.to_str(),
        "q": result.q.to_str(),
        "f0": result.f0.to_str(),
        "checks": checks,
        "attempts": result.attempts,
        "overall_pass": not expected_failures(checks, result.curve.degree),
    }


def validate_certificate(cert: dict, algebra: bool = True) -> list[str]:
    """Problems found in a certificate; an empty list means it is consistent.

    Reads the JSON only: the key set, the numeric relations, the overall
    verdict and, with ``algebra``, the polynomial identities that can be
    re-checked cheaply from the serialised strings (assembly of f0,
    incidence, the witness residual, parse/print round trips).
    """
    problems = []
    if set(cert) != set(CERTIFICATE_KEYS):
        problems.append(f"key set differs: {sorted(set(cert) ^ set(CERTIFICATE_KEYS))}")
        return problems
    checks = cert["checks"]
    if set(checks) != set(CHECK_KEYS):
        problems.append(f"checks key set differs: {sorted(set(checks) ^ set(CHECK_KEYS))}")
        return problems
    try:
        _reject_floats(cert)
    except TypeError as exc:
        problems.append(str(exc))
    rp, ker = checks["rank_phi"], checks["ker_phi_dim"]
    if rp + ker != 20:
        problems.append("rank_phi + ker_phi_dim != 20")
    if checks["h1"] is not None and checks["h1"] != 16 - rp:
        problems.append("h1 != 16 - rank_phi")
    if checks["h0"] is not None and checks["h0"] != ker - 4:
        problems.append("h0 != ker_phi_dim - 4")
    if checks["h0"] != checks["h1"]:
        problems.append("h0 != h1")
    if checks["image_equality"] and not checks["condition01"]:
        problems.append("image_equality without condition01")
    if checks["scenario_strict"] != (rp < 16):
        problems.append("scenario_strict inconsistent with rank_phi")
    if cert["overall_pass"] != (not expected_failures(checks)):
        problems.append("overall_pass is not the conjunction of the checks")
    if not algebra:
        return problems
    try:
        curve = RationalCurveMap.from_strings(cert["curve"])
        polys = {k: parse_poly(cert[k], "z") for k in ("g0", "g1", "g2", "q", "f0")}
    except (PolySyntaxError, ValueError) as exc:
        return problems + [f"unparseable polynomial: {exc}"]
    for k, f in polys.items():
        if f.to_str() != cert[k]:
            problems.append(f"{k} is not in canonical form")
    for i, text in enumerate(cert["curve"]):
        if curve.components[i].to_str() != text:
            problems.append(f"curve component {i} is not in canonical form")
    z0, z1 = MultiPoly.variable(0), MultiPoly.variable(1)
    f0 = polys["f0"]
    if not (f0 - z0 * polys["g0"] - z1 * polys["g1"] - polys["g2"] * polys["q"]).is_zero():
        problems.append("f0 != z0*g0 + z1*g1 + g2*q")
    pair = IncidencePair(curve, f0)
    if pair.incident != checks["incidence"]:
        problems.append("incidence flag disagrees with the pullback")
    beta = checks["witness_beta"]
    if beta is not None:
        d = curve.degree
        forms = []
        for text in beta:
            f = parse_poly(text, "st")
            forms.append(BinaryForm.zero(d) if f.is_zero() else f)
        if any(f.degree != d for f in forms):
            problems.append("witness slots have the wrong degree")
        else:
            residual_zero = apply_phi(pair, forms).is_zero()
            if residual_zero != checks["witness_residual_zero"]:
                problems.append("witness residual flag disagrees with Phi(beta)")
            if forms[1].is_zero() != checks["witness_slot1_zero"]:
                problems.append("witness slot-1 flag disagrees with beta_1")
    return problems
