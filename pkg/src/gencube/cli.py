"""Command-line front end: thresholds, tradeoff curves, verification suite,
sampling simulation, and operator-compatibility checks.

Exit codes: 0 ok, 1 verification failure or invalid input, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import constructions, separability, simulator, thresholds
from .pauli import BlochOp
from .spaces import PovmSet, StateSpaceSpec, operator_compatible, qubit_xyz_povms

USAGE_ERROR = 2


def _tolerance_banner(out) -> None:
    print(
        "tolerances: lp-feasibility=1e-09 positivity=1e-09 bisection=1e-07",
        file=out,
    )


def _threshold_query(noise: str, space: str, R: float) -> thresholds.ThresholdQuery:
    if space == "cube":
        return thresholds.ThresholdQuery(
            noise, StateSpaceSpec.cube(R), "cube-separable", "worst-vertex"
        )
    return thresholds.ThresholdQuery(
        noise, StateSpaceSpec.sphere(R), "quantum-separable", "sphere-grid"
    )


def _cmd_threshold(args, out) -> int:
    _tolerance_banner(out)
    q = _threshold_query(args.noise, args.space, args.R)
    lam = thresholds.min_noise(q)
    print(f"{lam:.{args.precision}f}", file=out)
    return 0


def _cmd_curve(args, out) -> int:
    _tolerance_banner(out)
    q = _threshold_query(args.noise, args.space, args.r_min)
    points = thresholds.curve(q, args.r_min, args.r_max, args.steps)
    csv = thresholds.curve_to_csv(points)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
        print(f"wrote {len(points)} points to {args.out}", file=out)
    else:
        out.write(csv)
    return 0


def _report(out, name: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}{(' ' + detail) if detail else ''}", file=out)
    return ok


def _verify_appendix1(out) -> bool:
    items = separability.appendix1_certificates()
    ok_all = True
    results = {}
    for item in items:
        good = item.valid and separability.verify_certificate(
            item.certificate, item.target, 1.0, 1e-12
        )
        key = item.name.split(":")[0].rstrip("ab")
        results.setdefault(key, True)
        results[key] &= good
    for key in sorted(results, key=int):
        ok_all &= _report(out, f"appendix certificate {key}", results[key])
    return ok_all


def _verify_appendix2(out) -> bool:
    rep = constructions.appendix2_checks()
    ok = True
    ok &= _report(out, "stated vertex probability equals -1/2",
                  rep.stated_probability == -0.5, f"got {rep.stated_probability!r}")
    ok &= _report(out, "witnesses found for all over-unit vectors",
                  rep.over_unit_violations == rep.over_unit_trials,
                  f"{rep.over_unit_violations}/{rep.over_unit_trials}")
    ok &= _report(out, "no witnesses for unit-ball vectors",
                  rep.unit_ball_violations == 0,
                  f"{rep.unit_ball_violations}/{rep.unit_ball_trials}")
    return ok


def _verify_appendix3(out) -> bool:
    from .gates import NoiseModel, pipeline
    from .pauli import eigenvalues_hermitian, partial_transpose, to_dense

    rng = np.random.default_rng(99)
    ok = True
    for trial in range(5):
        th, ph = rng.uniform(0, math.pi / 2, 2)
        R = rng.uniform(0.8, 1.6)
        noise = NoiseModel("joint-depol", rng.uniform(0.1, 0.9))

        def out_at(theta, phi):
            u = BlochOp(np.array([math.cos(theta), 0.0, math.sin(theta)]))
            v = BlochOp(np.array([math.cos(phi), 0.0, math.sin(phi)]))
            return pipeline(u, v, R, noise)

        a = out_at(th, ph)
        b = out_at(th + math.pi, ph)
        spec_match = np.allclose(
            eigenvalues_hermitian(to_dense(a)), eigenvalues_hermitian(to_dense(b)), atol=1e-10
        ) and np.allclose(
            eigenvalues_hermitian(to_dense(partial_transpose(a))),
            eigenvalues_hermitian(to_dense(partial_transpose(b))),
            atol=1e-10,
        )
        ok &= _report(out, f"theta -> theta+pi spectrum invariance (trial {trial})", spec_match)
    return ok


def _verify_bell(out) -> bool:
    ok = True
    for which in ("phi+", "phi-", "psi+", "psi-"):
        target, cert = constructions.bell_cube_certificate(which)
        good = separability.verify_certificate(cert, target, 1.0, 1e-12)
        ok &= _report(out, f"Bell {which} cube certificate", good)
    return ok


def _verify_lemma8(out) -> bool:
    rep, _ = constructions.find_lemma8_params()
    if rep is None:
        return _report(out, "lemma8 parameter search", False, "no candidate met PT/marginal checks")
    ok = True
    ok &= _report(out, "CJ marginal is I/4", rep.marginal_deviation < 1e-10,
                  f"dev {rep.marginal_deviation:.2e}")
    ok &= _report(out, "output non-PPT for (|T>+|Tbar>)/sqrt2 input",
                  rep.output_min_pt < -1e-8, f"min PT {rep.output_min_pt:.2e}")
    ok &= _report(out, "CJ non-PPT across input:output split", rep.cj_min_pt_inout < -1e-9,
                  f"{rep.cj_min_pt_inout:.2e}")
    ok &= _report(out, "CJ non-PPT across A:B split", rep.cj_min_pt_ab < -1e-9,
                  f"{rep.cj_min_pt_ab:.2e}")
    ok &= _report(out, "all 64 vertex outputs cube-separable", rep.all_vertices_feasible,
                  f"{rep.vertex_feasible}/64 at alpha={rep.alpha}, eps={rep.epsilon}")
    return ok


def _verify_epg(out) -> bool:
    rep = constructions.error_per_gate_bounds()
    ok = True
    ok &= _report(out, "lower bound equals 1/5 exactly", rep.lower == 0.2)
    ok &= _report(out, "magic identity residual < 1e-12", rep.w_identity_residual < 1e-12,
                  f"{rep.w_identity_residual:.2e}")
    ok &= _report(out, "w^2+(w-1)^2 = 2", abs(rep.w_square_identity - 2.0) < 1e-12)
    ok &= _report(out, "50% one-arm dephasing feasible on all 64 vertices",
                  rep.upper_feasible_count == 64, f"{rep.upper_feasible_count}/64")
    return ok


def _verify_orbit(out) -> bool:
    orbit = constructions.vertex_orbit()
    distinct = len(set(orbit)) == 8 and len(orbit) == 8
    return _report(out, "X/Y/S cycle visits all 8 vertices", distinct, f"{orbit}")


_VERIFIERS = {
    "appendix1": _verify_appendix1,
    "appendix2": _verify_appendix2,
    "appendix3": _verify_appendix3,
    "bell": _verify_bell,
    "lemma8": _verify_lemma8,
    "epg-bounds": _verify_epg,
    "orbit": _verify_orbit,
}


def _cmd_verify(args, out) -> int:
    _tolerance_banner(out)
    ok = _VERIFIERS[args.which](out)
    return 0 if ok else 1


def _cmd_simulate(args, out) -> int:
    _tolerance_banner(out)
    with open(args.circuit) as fh:
        circuit = simulator.parse_circuit(fh.read())
    try:
        result = simulator.simulate_hn(circuit, args.shots, args.seed)
    except simulator.CircuitNotSimulableError as exc:
        print(f"error: {exc}", file=out)
        return 1
    print(f"rng: {result.rng_name} seed: {result.seed} shots: {result.shots}", file=out)
    out.write(simulator.histogram_to_csv(result.histogram))
    if args.compare_dense:
        exact = simulator.simulate_dense(circuit)
        dist = simulator.tvd(result.histogram, exact)
        print(f"tvd_vs_dense: {dist:.6f}", file=out)
    return 0


def _load_povms(path: str) -> PovmSet:
    """POVM file: JSON {"dim": d, "povms": [[element...]]} with complex
    entries encoded as [re, im] pairs."""
    with open(path) as fh:
        data = json.load(fh)
    dim = int(data["dim"])
    povms = []
    for p in data["povms"]:
        elems = []
        for m in p:
            arr = np.array([[complex(c[0], c[1]) for c in row] for row in m])
            elems.append(arr)
        povms.append(tuple(elems))
    return PovmSet(tuple(povms), dim)


def _cmd_compat(args, out) -> int:
    _tolerance_banner(out)
    povms = qubit_xyz_povms() if args.povms == "xyz" else _load_povms(args.povms)
    res = operator_compatible(povms)
    if res.compatible:
        print(f"compatible: yes ({len(res.corners)} corner operators)", file=out)
        return 0
    print(f"compatible: no ({res.reason})", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gencube",
        description="Noise thresholds and separability for Bloch-cube and "
                    "rescaled-sphere state spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    noise_choices = ("joint-depol", "local-depol", "local-dephase")

    p = sub.add_parser("threshold", help="minimal noise for separability at one R")
    p.add_argument("--noise", required=True, choices=noise_choices)
    p.add_argument("--space", required=True, choices=("cube", "sphere"))
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--precision", type=int, default=6)
    p.set_defaults(fn=_cmd_threshold)

    p = sub.add_parser("curve", help="threshold as a function of R (CSV)")
    p.add_argument("--noise", required=True, choices=noise_choices)
    p.add_argument("--space", required=True, choices=("cube", "sphere"))
    p.add_argument("--r-min", dest="r_min", type=float, required=True)
    p.add_argument("--r-max", dest="r_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("verify", help="run a named verification bundle")
    p.add_argument("which", choices=sorted(_VERIFIERS))
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("simulate", help="sample a circuit with the HN method")
    p.add_argument("--circuit", required=True)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--compare-dense", action="store_true")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("compat", help="operator compatibility of a POVM set")
    p.add_argument("--povms", required=True,
                   help="JSON file, or 'xyz' for the Pauli projective set")
    p.set_defaults(fn=_cmd_compat)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except (ValueError, OSError, thresholds.ThresholdBracketError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
