"""``sgon`` command-line front end.

Exit codes: 0 success, 1 input/schema problems, 2 domain errors,
3 internal invariant violations (including failed verification batteries).
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Callable

import mpmath

from . import io
from . import planar as pl
from . import sparse_core as sc
from . import verify
from .errors import InvariantViolation, SchemaError, SgonError
from .exact_arith import DEFAULT_PRECISION

LATTICE_COMMANDS = ("lattice-analyze", "lattice-sparse", "lattice-rect", "lattice-slevels", "lattice-minima")
TAU_COMMANDS = ("tau-reduce", "tau-vr", "tau-isogeny", "tau-geodesic", "tau-cm", "tau-jinv")
COMMANDS = LATTICE_COMMANDS + TAU_COMMANDS + ("verify-suite",)

PROVENANCE = {
    "lattice-analyze": "row decomposition a_i = sum_j alpha_ij f_ij; d(L) = sum d_i; nu(L) = prod |alpha_i| "
                       "when every d_i = 1; mu = sup-to-sup norm of the coordinate map onto a Z-basis of the entry group",
    "lattice-sparse": "integer kernels of F(A)_I for |I| = n - k with d_I < n; "
                      "prod |x_i| <= n^(n - d_I/2) |A|^n mu^d_I",
    "lattice-rect": "B = A adj(F(A)) is diagonal; [L : BZ^n] = |det F(A)|^(n-1) = (det L / nu(L))^(n-1)",
    "lattice-slevels": "s_i = least s with dim span of s-sparse lattice vectors >= i; "
                       "span computed from kernels of F(A) rows outside each support",
    "lattice-minima": "k-sparse successive minima by enumeration of integer preimages in a box",
    "tau-reduce": "SL2(Z) reduction into -1/2 < a <= 1/2, |tau| >= 1, left arc excluded",
    "tau-vr": "virtually rectangular iff a is rational or some t has a - bt and a + b/t rational; "
              "t found from a rational quadratic in u = a0 - r",
    "tau-isogeny": "degree |b| v w (t^2 + 1)/|t| compared with the index of an explicit rectangular sublattice",
    "tau-geodesic": "vertical line x = a, or the semicircle X^2 - pX + q with rational p, q through tau; "
                    "closed at infinity iff both ends are rational",
    "tau-cm": "CM iff a and b^2 are rational; then t = q b works for all rational q, otherwise t t' = -1",
    "tau-jinv": "j = 1/Q + 744 + sum c_k Q^k, Q = exp(2 pi i tau), tail estimate 2 |c_(T+1) Q^(T+1)|",
    "verify-suite": "elliptic vs geodesic criterion; Siegel property of reduced kernels; "
                    "d(L) = n iff nu(L) != 0 iff all s_i = 1; CM families; j on the boundary of the domain",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are input errors, not domain errors
        raise SchemaError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sgon", description="Sparse lattice vectors and planar virtually rectangular lattices.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="JSON input file, or fixture:NAME for a bundled fixture")
    p.add_argument("--k", type=int, help="sparsity level")
    p.add_argument("--radius", type=float, default=10.0, help="norm radius for lattice-minima")
    p.add_argument("--box", type=int, default=0, help="lattice-slevels: also check by enumeration in this box")
    p.add_argument("--terms", type=int, default=pl.MAX_TERMS, help="j series terms (1..20)")
    p.add_argument("--tolerance", type=float, default=pl.DEFAULT_J_TOLERANCE, help="j tail tolerance")
    p.add_argument("--precision", type=int, help="decimal digits (default 50, or $SGON_PRECISION)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for verify-suite")
    p.add_argument("--quick", action="store_true", help="verify-suite with reduced sample counts")
    return p


def _precision(args) -> int:
    if args.precision is not None:
        prec = args.precision
    else:
        env = os.environ.get("SGON_PRECISION")
        try:
            prec = int(env) if env else DEFAULT_PRECISION
        except ValueError:
            raise SchemaError(f"SGON_PRECISION={env!r} is not an integer") from None
    if prec < 16:
        raise SchemaError(f"precision must be at least 16, got {prec}")
    return prec


def _resolve(path: str | None) -> str:
    if not path:
        raise SchemaError("this command needs an input file")
    if path.startswith("fixture:"):
        return str(io.fixture_path(path[len("fixture:"):]))
    return path


def _num(x, prec: int) -> str:
    return mpmath.nstr(x, prec)


# ---------------------------------------------------------------------------
# Command handlers: each returns a JSON-ready dict


def _lattice_analyze(A: sc.LatticeBasis, args, prec: int) -> dict:
    dec = sc.row_decompose(A)
    mu = sc.mu_estimate(A, prec)
    normA = A.sup_norm(prec)
    with mpmath.workdps(prec + 10):
        det = mpmath.det(A.numeric(prec))
    out = {"n": A.n, "decomposition": dec.to_json(), "nu": sc.nu(A, prec).to_json(prec),
           "mu": mu.to_json(prec), "sup_norm_A": _num(normA, prec), "sup_norm_F": str(sc.f_norm(dec)),
           "det": _num(det, prec)}
    out["F_bounded_by_mu_A"] = bool(sc.f_norm(dec) <= mu.value * normA * (1 + mpmath.mpf(10) ** -10))
    return out


def _lattice_sparse(A: sc.LatticeBasis, args, prec: int) -> dict:
    if args.k is None or not 1 <= args.k <= A.n - 1:
        raise SchemaError(f"--k must lie in [1, {A.n - 1}]")
    reports = sc.find_sparse(A, args.k, prec)
    return {"k": args.k, "reports": [r.to_json(prec) for r in reports],
            "verified": [sc.verify_sparse_bound(r) for r in reports]}


def _lattice_rect(A: sc.LatticeBasis, args, prec: int) -> dict:
    R = sc.rectangular_sublattice(A, prec)
    out = R.to_json(prec)
    out["columns_in_lattice"] = all(A.is_member([R.B[r][c] for r in range(A.n)]) for c in range(A.n))
    return out


def _lattice_slevels(A: sc.LatticeBasis, args, prec: int) -> dict:
    out = sc.sparsity_levels(A).to_json()
    if args.box:
        brute = sc.sparsity_levels_bruteforce(A, args.box)
        out["bruteforce_box"] = args.box
        out["bruteforce_levels"] = None if brute is None else list(brute)
    return out


def _lattice_minima(A: sc.LatticeBasis, args, prec: int) -> dict:
    if args.k is None or not 1 <= args.k <= A.n:
        raise SchemaError(f"--k must lie in [1, {A.n}]")
    return sc.sparse_minima_oracle(A, args.k, args.radius, precision=prec).to_json(prec)


def _tau_reduce(tau: pl.Tau, args, prec: int) -> dict:
    return pl.reduce_to_fundamental(tau).to_json()


def _tau_vr(tau: pl.Tau, args, prec: int) -> dict:
    return pl.vr_decide(tau).to_json()


def _tau_isogeny(tau: pl.Tau, args, prec: int) -> dict:
    cert = pl.vr_decide(tau)
    if not cert.is_vr:
        return {"certificate": cert.to_json(), "isogeny": None}
    return {"certificate": cert.to_json(), "isogeny": pl.isogeny_degree(tau, cert).to_json()}


def _tau_geodesic(tau: pl.Tau, args, prec: int) -> dict:
    return pl.geodesic_classify(tau).to_json()


def _tau_cm(tau: pl.Tau, args, prec: int) -> dict:
    return pl.cm_analyze(tau).to_json()


def _tau_jinv(tau: pl.Tau, args, prec: int) -> dict:
    if not 1 <= args.terms <= pl.MAX_TERMS:
        raise SchemaError(f"--terms must lie in [1, {pl.MAX_TERMS}]")
    jv = pl.j_invariant(tau, args.terms, prec, args.tolerance)
    out = jv.to_json(prec)
    if pl.is_reduced(jv.reduced):
        out["region"] = pl.region_classify(jv.reduced).to_json()
    return out


HANDLERS: dict[str, Callable[..., dict]] = {
    "lattice-analyze": _lattice_analyze,
    "lattice-sparse": _lattice_sparse,
    "lattice-rect": _lattice_rect,
    "lattice-slevels": _lattice_slevels,
    "lattice-minima": _lattice_minima,
    "tau-reduce": _tau_reduce,
    "tau-vr": _tau_vr,
    "tau-isogeny": _tau_isogeny,
    "tau-geodesic": _tau_geodesic,
    "tau-cm": _tau_cm,
    "tau-jinv": _tau_jinv,
}


def run(args: argparse.Namespace) -> tuple[dict, int]:
    """Dispatch one request; returns the report and the exit code."""
    prec = _precision(args)
    report: dict[str, Any] = {"command": args.command, "precision": prec,
                              "provenance": PROVENANCE[args.command]}
    if args.command == "verify-suite":
        results = verify.run_all(args.seed, quick=args.quick)
        report["seed"] = args.seed
        report["result"] = {"batteries": [r.to_json() for r in results], "ok": all(r.ok for r in results)}
        return report, 0 if report["result"]["ok"] else InvariantViolation.exit_code
    path = _resolve(args.input)
    report["input"] = args.input
    if args.command in LATTICE_COMMANDS:
        obj = io.parse_lattice_file(path)
    else:
        obj = io.parse_tau_file(path)
    report["result"] = HANDLERS[args.command](obj, args, prec)
    return report, 0


def _flatten(value: Any, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            lines.extend(_flatten(value[key], f"{prefix}.{key}" if prefix else key))
        return lines
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines = []
        for i, v in enumerate(value):
            lines.extend(_flatten(v, f"{prefix}[{i}]"))
        return lines or [f"{prefix}: []"]
    if isinstance(value, list):
        return [f"{prefix}: [" + ", ".join(str(v) for v in value) + "]"]
    return [f"{prefix}: {value}"]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(report)
    return "\n".join(_flatten(report)) + "\n"


def main(argv: list[str] | None = None) -> int:
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        report, code = run(args)
    except SgonError as exc:
        print(f"sgon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # anything unexpected is an internal failure
        print(f"sgon: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return InvariantViolation.exit_code
    sys.stdout.write(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
