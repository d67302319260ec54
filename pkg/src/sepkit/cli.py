"""Command-line front end.  Every subcommand emits machine-readable output
(JSON unless a different format is requested); exit codes are 0 on success,
1 on domain errors (structured error object on stdout), 2 on usage errors.
The ``equisingular`` subcommand uses 0 = equisingular, 1 = not, 2 = usage.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys

import numpy as np

from . import dynamics, torusmaps
from .blowup import resolve, run_length_encoding
from .equising import (
    SeparatorSpec,
    compare_eigenvalues,
    equisingular_separators,
    normalize_eigenvalue,
)
from .exactnum import ExactEigenvalue, cf_expand, node_transform
from .torusmaps import LiftSample, UnimodularMatrix

JSON_KW = dict(sort_keys=True, separators=(",", ": "))


class DomainError(Exception):
    """Wraps a domain failure for the structured exit-1 path."""


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, **JSON_KW) + "\n")


def _seed() -> int:
    return int(os.environ.get("SEPK_SEED", "0"))


def _parse_eigenvalue(text: str) -> ExactEigenvalue:
    try:
        return ExactEigenvalue.from_wire(text)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def _parse_matrix(text: str) -> UnimodularMatrix:
    try:
        return UnimodularMatrix.from_wire(text)
    except (ValueError, TypeError) as exc:
        raise DomainError(f"bad matrix literal {text!r}: {exc}") from exc


def _phase(turns: float) -> complex:
    return cmath.exp(2j * math.pi * turns)


# -- subcommands -----------------------------------------------------------


def cmd_cf(args) -> int:
    lam = _parse_eigenvalue(args.value)
    value = node_transform(lam) if args.transform == "node" else lam
    if value.sign() <= 0:
        raise DomainError("continued fraction requires a positive value")
    expansion = cf_expand(value, args.depth)
    if args.format == "json":
        _emit(
            {
                "claim": "eigenvalue-continued-fraction",
                "value": value.to_wire(),
                "entries": list(expansion.entries),
                "period_start": expansion.period_start,
                "period": list(expansion.period) if expansion.period else None,
                "text": str(expansion),
            }
        )
    else:
        sys.stdout.write(str(expansion) + "\n")
    return 0


def cmd_resolve(args) -> int:
    lam = _parse_eigenvalue(args.lam)
    if lam.sign() <= 0:
        raise DomainError("eigenvalue must be positive")
    rec = resolve(lam, args.depth)
    if args.format == "dot":
        sys.stdout.write(rec.to_dot() + "\n")
    elif args.format == "text":
        retained = " ".join(d.name for d in rec.retained_sequence())
        sys.stdout.write(retained + "\n")
        try:
            rle = run_length_encoding(rec)
            sys.stdout.write("runs: " + ",".join(map(str, rle)) + "\n")
        except ValueError:
            sys.stdout.write("runs: (none certified)\n")
    else:
        payload = rec.to_json_dict()
        payload["claim"] = "blowup-proximity-log"
        try:
            payload["runs"] = list(run_length_encoding(rec))
        except ValueError:
            payload["runs"] = None
        _emit(payload)
    return 0


def cmd_equisingular(args) -> int:
    s1 = SeparatorSpec(_parse_eigenvalue(args.lam1))
    s2 = SeparatorSpec(_parse_eigenvalue(args.lam2))
    n1 = normalize_eigenvalue(s1.eigenvalue)
    n2 = normalize_eigenvalue(s2.eigenvalue)
    equal = equisingular_separators(s1, s2)
    cert: dict = {
        "claim": "equisingularity-decision",
        "equisingular": equal,
        "normalized": [n1.to_wire(), n2.to_wire()],
    }
    if equal:
        expansion = cf_expand(n1, 64)
        cert["proof"] = "equal-period"
        cert["period_start"] = expansion.period_start
        cert["period"] = list(expansion.period) if expansion.period else None
    else:
        cert["proof"] = "cf-disagreement"
        cert["first_disagreement_index"] = _first_cf_disagreement(n1, n2)
    _emit(cert)
    return 0 if equal else 1


def _first_cf_disagreement(a: ExactEigenvalue, b: ExactEigenvalue) -> int:
    for depth in (16, 64, 256, 1024):
        ea = cf_expand(a, depth).entries
        eb = cf_expand(b, depth).entries
        for k in range(depth):
            if ea[k] != eb[k]:
                return k
    raise DomainError("continued fractions agree to depth 1024")


def cmd_moebius(args) -> int:
    mat = _parse_matrix(args.matrix)
    lam = _parse_eigenvalue(args.value)
    try:
        image = torusmaps.moebius_apply(mat, lam)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    if args.format == "json":
        _emit(
            {
                "claim": "slope-moebius-transport",
                "matrix": mat.to_wire(),
                "value": lam.to_wire(),
                "image": image.to_wire(),
            }
        )
    else:
        sys.stdout.write(image.to_wire() + "\n")
    return 0


def cmd_classify(args) -> int:
    lam = _parse_eigenvalue(args.lam)
    try:
        survivors = torusmaps.classify_equisingular_matrices(
            lam, args.bound, args.conv_depth
        )
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    if args.format == "json":
        _emit(
            {
                "claim": "plus-minus-identity-rigidity",
                "eigenvalue": lam.to_wire(),
                "bound": args.bound,
                "conv_depth": args.conv_depth,
                "matrices": [m.to_wire() for m in survivors],
            }
        )
    else:
        sys.stdout.write(" ".join(m.to_wire() for m in survivors) + "\n")
    return 0


def cmd_approx(args) -> int:
    lam = _parse_eigenvalue(args.lam)
    mat = _parse_matrix(args.matrix)
    lam_f = float(lam)
    try:
        spec = dynamics.SeparatorMapSpec(
            matrix=mat,
            mu0=_phase(args.mu0_turns),
            nu0=_phase(args.nu0_turns),
            lam=lam_f,
            lam_tilde=torusmaps.slope_transport(mat, lam_f),
        )
        result = dynamics.approx_curve(lam, args.conv_index, spec)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    _emit(
        {
            "claim": "convergent-cusp-transport",
            "eigenvalue": lam.to_wire(),
            "matrix": mat.to_wire(),
            "source": [result.source.m, result.source.n],
            "image": [result.image.m, result.image.n],
            "phases_turns": [args.mu0_turns, args.nu0_turns],
            "equisingular": result.equisingular,
        }
    )
    return 0


def cmd_simulate(args) -> int:
    lam = args.lam_value
    if lam is None:
        lam = float(_parse_eigenvalue(args.lam))
    if not lam > 0:
        raise DomainError("slope must be positive")
    try:
        distinct, gaps = dynamics.leaf_gap_statistics(lam, args.points)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    orbit = [(j * lam) % 1.0 for j in range(args.points)]

    orbit_csv = args.out + "_orbit.csv"
    with open(orbit_csv, "w") as fh:
        fh.write("j,orbit\n")
        for j, val in enumerate(orbit):
            fh.write(f"{j},{val!r}\n")
    gaps_csv = args.out + "_gaps.csv"
    with open(gaps_csv, "w") as fh:
        fh.write("rank,gap\n")
        for rank, gap in enumerate(gaps):
            fh.write(f"{rank},{gap!r}\n")

    from .plots import save_orbit_figure

    figure = save_orbit_figure(args.out + "_orbit.svg", lam, orbit, gaps)
    _emit(
        {
            "claim": "leaf-density-three-gap",
            "lam": lam,
            "points": args.points,
            "num_distinct_gaps": distinct,
            "min_gap": min(gaps),
            "max_gap": max(gaps),
            "gap_sum": math.fsum(gaps),
            "files": {"orbit": orbit_csv, "gaps": gaps_csv, "figure": figure},
        }
    )
    return 0


def _synthetic_sample(n: int, seed: int) -> LiftSample:
    rng = np.random.default_rng(seed)
    mat = UnimodularMatrix(1, 0, 1, 1)
    lam = math.sqrt(2.0)
    lam_tilde = torusmaps.slope_transport(mat, lam)
    base = rng.uniform(-1.0, 1.0, size=2)
    amps = rng.uniform(-0.05, 0.05, size=(2, 2))
    coords = np.arange(2 * n) / n
    uu, vv = np.meshgrid(coords, coords, indexing="ij")
    kappa = sum(
        amps[j, k] * np.sin(2 * math.pi * ((j + 1) * uu + k * vv))
        for j in range(2)
        for k in range(2)
    )
    vals = np.empty((2 * n, 2 * n, 2))
    vals[:, :, 0] = base[0] + mat.a * uu + mat.b * vv + kappa
    vals[:, :, 1] = base[1] + mat.c * uu + mat.d * vv + kappa * lam_tilde
    return LiftSample(n, vals, mat, lam, lam_tilde)


def _sample_from_file(path: str) -> LiftSample:
    with open(path) as fh:
        data = json.load(fh)
    try:
        mat = UnimodularMatrix(*(int(x) for row in data["matrix"] for x in row))
        return LiftSample(
            n=int(data["n"]),
            values=np.asarray(data["values"], dtype=float),
            matrix=mat,
            lam=float(data["lambda"]),
            lam_tilde=float(data["lambda_tilde"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise DomainError(f"bad lift sample file: {exc}") from exc


def cmd_verify_lift(args) -> int:
    if args.input is None and not args.synthetic:
        raise DomainError("provide --input FILE or --synthetic")
    if args.synthetic:
        sample = _synthetic_sample(args.grid_n, _seed())
    else:
        sample = _sample_from_file(args.input)
    try:
        decomp = torusmaps.decompose_lift(sample)
    except torusmaps.DecompositionError as exc:
        raise DomainError(
            f"{exc} (kind={exc.kind}, cell={list(exc.cell)}, value={exc.value!r})"
        ) from exc
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    extracted = torusmaps.extract_deck_matrix(sample)
    _emit(
        {
            "claim": "torus-lift-decomposition",
            "matrix_declared": sample.matrix.to_wire(),
            "matrix_extracted": extracted.to_wire(),
            "base": list(decomp.base),
            "kappa_sup": float(np.max(np.abs(decomp.kappa))),
            "residuals": decomp.residuals,
        }
    )
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepkit",
        description="Exact and numeric calculus of nodal separator germs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="continued-fraction expansion of an eigenvalue")
    p.add_argument("--value", required=True, help='eigenvalue "(p+q*sqrt(d))/r"')
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--transform", choices=["none", "node"], default="none",
                   help="node: expand lam/(lam-1) instead of lam")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("resolve", help="blow-up log of the separator germ")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("equisingular", help="decide equisingularity of two separators")
    p.add_argument("--lambda1", dest="lam1", required=True)
    p.add_argument("--lambda2", dest="lam2", required=True)
    p.set_defaults(func=cmd_equisingular)

    p = sub.add_parser("moebius", help="apply (c+d*lam)/(a+b*lam) exactly")
    p.add_argument("--matrix", required=True, help='matrix "[[a,b],[c,d]]"')
    p.add_argument("--value", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_moebius)

    p = sub.add_parser("classify", help="matrices compatible with self-equisingularity")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--conv-depth", type=int, default=4)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("approx", help="transport a convergent cusp through a map")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--conv-index", type=int, required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--mu0-turns", type=float, default=0.0)
    p.add_argument("--nu0-turns", type=float, default=0.0)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("simulate", help="orbit/gap report: CSV plus SVG figure")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", help="exact eigenvalue")
    group.add_argument("--lambda-value", dest="lam_value", type=float,
                       help="slope as a double")
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify-lift", help="decompose a sampled torus lift")
    p.add_argument("--input", help="lift sample JSON file")
    p.add_argument("--synthetic", action="store_true",
                   help="generate a sample (seeded by SEPK_SEED)")
    p.add_argument("--grid-n", type=int, default=torusmaps.DEFAULT_GRID)
    p.set_defaults(func=cmd_verify_lift)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        _emit({"error": {"message": str(exc), "command": args.command}})
        return 2 if args.command == "equisingular" else 1
    except OSError as exc:
        _emit({"error": {"message": str(exc), "command": args.command}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
