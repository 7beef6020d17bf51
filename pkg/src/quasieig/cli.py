"""Command-line surface: matrix/cone ingestion, subcommand dispatch, and
deterministic JSON reports.

Exit codes: 0 success, 1 usage or parse error, 2 inapplicable check,
3 numerical failure.
"""

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import analysis
from .cones import Cone, random_orthogonal
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonFinite,
    NonSquare,
    NotInterior,
    NotOrthogonal,
    NumericalBreakdown,
    ParseError,
    QuasiEigError,
)
from .matcore import as_matrix, classify, operator_norm
from .quasi import brute_minimax, quasi_pair

_SUBCOMMANDS = (
    "quasi",
    "classify",
    "perron",
    "maxre",
    "perturb",
    "normal",
    "invariance",
    "oracle",
    "verify",
)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    matrix_path: str
    cone_spec: str = "orthant"
    tol: float = 1e-9
    grid_k: int = 2000
    seed: int = 0
    output: str = "human"  # "human" | "json"
    perturbation_path: str | None = None

    def __post_init__(self):
        if self.subcommand not in _SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if not 0.0 < self.tol <= 1e-2:
            raise ValueError("tol must lie in (0, 1e-2]")
        if self.grid_k < 10:
            raise ValueError("grid_k must be at least 10")


def parse_matrix_file(path: str) -> np.ndarray:
    """Load a matrix from JSON ({"n": ..., "rows": [[...], ...]}) or from
    whitespace text (first line n, then n rows of n reals)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_matrix_json(text)
    return _parse_matrix_text(text)


def _parse_matrix_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise ParseError('JSON matrix must be an object with "n" and "rows"')
    n, rows = obj["n"], obj["rows"]
    if not isinstance(n, int) or n < 1:
        raise ParseError('"n" must be a positive integer')
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must hold {n} rows')
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} does not have {n} entries", line=i + 1)
        for j, x in enumerate(row):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise ParseError(f"entry ({i}, {j}) is not a number", line=i + 1, column=j + 1)
    m = np.array(rows, dtype=float)
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix entries must be finite")
    return as_matrix(m)


def _parse_matrix_text(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise ParseError("first line must hold the dimension", line=1, column=1)
    if n < 1:
        raise ParseError("dimension must be positive", line=1)
    rows = []
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != n:
            raise ParseError(f"expected {n} entries, found {len(parts)}", line=lineno)
        row = []
        for col, tok in enumerate(parts):
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(f"bad number {tok!r}", line=lineno, column=col + 1)
        rows.append(row)
        if len(rows) == n:
            break
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    m = np.array(rows)
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix entries must be finite")
    return as_matrix(m)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def emit_matrix(m: np.ndarray) -> str:
    """Canonical JSON for a matrix; floats carry 17 significant digits so
    parse(emit(m)) reproduces m bit-exactly."""
    m = as_matrix(m)
    rows = ",".join(
        "[" + ",".join(_fmt_float(float(x)) for x in row) + "]" for row in m
    )
    return f'{{"n":{m.shape[0]},"rows":[{rows}]}}'


def emit_json(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return emit_json(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(emit_json(x) for x in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{emit_json(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _resolve_cone(spec: str, n: int) -> Cone:
    if spec == "orthant":
        return Cone.orthant(n)
    if spec.startswith("rotation:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad rotation seed in cone spec {spec!r}")
        return Cone.rotated(random_orthogonal(n, seed))
    u = parse_matrix_file(spec)
    return Cone.rotated(u)  # raises NotOrthogonal past 1e-10


def _digest(m: np.ndarray) -> str:
    return hashlib.sha256(emit_matrix(m).encode()).hexdigest()


def _report_dict(r: analysis.TheoremReport) -> dict:
    return asdict(r)


def run(config: RunConfig) -> tuple[int, dict]:
    """Dispatch a config; returns (exit code, report object)."""
    try:
        m = parse_matrix_file(config.matrix_path)
        cone = _resolve_cone(config.cone_spec, m.shape[0])
    except (ParseError, NonSquare, NonFinite, NotOrthogonal, DimensionMismatch, OSError) as exc:
        return 1, {"error": str(exc)}

    report: dict = {
        "subcommand": config.subcommand,
        "input_digest": _digest(m),
        "lambda_upper": None,
        "lambda_lower": None,
        "u_right": None,
        "v_left": None,
        "flags": {},
        "theorem_reports": [],
        "tol": config.tol,
        "seed": config.seed,
    }
    try:
        code = _dispatch(config, m, cone, report)
    except (NumericalBreakdown, ConvergenceFailure) as exc:
        report["error"] = str(exc)
        return 3, report
    except QuasiEigError as exc:
        report["error"] = str(exc)
        return 1, report
    return code, report


def _fill_quasi(report: dict, pair) -> None:
    report["lambda_upper"] = pair.lambda_upper
    report["lambda_lower"] = pair.lambda_lower
    report["u_right"] = pair.u_right
    report["v_left"] = pair.v_left
    report["flags"].update(
        {
            "u_interior": pair.u_interior,
            "v_interior": pair.v_interior,
            "is_saddle": pair.is_saddle,
            "eigen_residual_right": pair.eigen_residual_right,
            "eigen_residual_left": pair.eigen_residual_left,
        }
    )


def _dispatch(config: RunConfig, m: np.ndarray, cone: Cone, report: dict) -> int:
    sub = config.subcommand
    tol = config.tol

    if sub == "quasi":
        _fill_quasi(report, quasi_pair(m, cone, tol))
        return 0

    if sub == "classify":
        report["flags"].update(asdict(classify(m)))
        return 0

    if sub == "perron":
        rep = analysis.perron_check(m, tol)
        report["theorem_reports"].append(_report_dict(rep))
        return 0 if rep.applicable and rep.holds else (2 if not rep.applicable else 3)

    if sub == "maxre":
        rep = analysis.max_re_check(m, tol)
        report["theorem_reports"].append(_report_dict(rep))
        return 0 if rep.applicable and rep.holds else (2 if not rep.applicable else 3)

    if sub == "perturb":
        if config.perturbation_path is None:
            report["error"] = "perturb requires --perturbation"
            return 1
        d = parse_matrix_file(config.perturbation_path)
        pair = quasi_pair(m, cone, tol)
        _fill_quasi(report, pair)
        try:
            rep = analysis.perturbation_bound_check(m, cone, d, tol, pair=pair)
        except NotInterior as exc:
            report["error"] = str(exc)
            return 2
        report["theorem_reports"].append(_report_dict(rep))
        return 0 if rep.applicable and rep.holds else (2 if not rep.applicable else 3)

    if sub == "normal":
        if not classify(m).normal:
            report["error"] = "matrix is not normal"
            return 2
        form = analysis.normal_canonical_form(m)
        report["flags"]["rotation_blocks"] = [list(b) for b in form.rotation_blocks]
        report["flags"]["real_eigs"] = list(form.real_eigs)
        rep = analysis.theorem4_classify(m, cone, tol)
        report["theorem_reports"].append(_report_dict(rep))
        return 0 if rep.holds else 3

    if sub == "invariance":
        u = random_orthogonal(m.shape[0], config.seed)
        rep = analysis.invariance_check(m, cone, u, tol)
        report["theorem_reports"].append(_report_dict(rep))
        return 0 if rep.holds else 3

    if sub == "oracle":
        sup_inf, inf_sup = brute_minimax(m, cone, config.grid_k)
        report["lambda_upper"] = sup_inf
        report["flags"]["sup_inf"] = sup_inf
        report["flags"]["inf_sup"] = inf_sup
        return 0

    if sub == "verify":
        return _verify(config, m, cone, report)

    raise ValueError(f"unknown subcommand {sub!r}")


def _verify(config: RunConfig, m: np.ndarray, cone: Cone, report: dict) -> int:
    """Run every applicable checker for one matrix; success iff all
    applicable reports hold."""
    tol = config.tol
    pair = quasi_pair(m, cone, tol)
    _fill_quasi(report, pair)
    report["flags"].update(asdict(classify(m)))

    reps = [
        analysis.bounds_check(m, cone, tol),
        analysis.perron_check(m, tol),
        analysis.max_re_check(m, tol),
        analysis.isc_check(m, tol),
        analysis.invariance_check(m, cone, random_orthogonal(m.shape[0], config.seed), tol),
    ]
    if classify(m).normal:
        reps.append(analysis.theorem4_classify(m, cone, tol))
    if pair.u_interior or pair.v_interior:
        rng = np.random.default_rng(config.seed)
        d = rng.standard_normal(m.shape)
        d *= 0.05 * max(operator_norm(m), 1.0) / max(operator_norm(d), 1e-30)
        reps.append(analysis.perturbation_bound_check(m, cone, d, tol, pair=pair))
    report["theorem_reports"] = [_report_dict(r) for r in reps]
    ok = all(r.holds for r in reps if r.applicable)
    return 0 if ok else 3


def _print_human(report: dict, code: int) -> None:
    if "error" in report:
        print(f"error: {report['error']}")
    if report.get("lambda_upper") is not None:
        print(f"lambda_upper = {report['lambda_upper']:.12g}")
    if report.get("lambda_lower") is not None:
        print(f"lambda_lower = {report['lambda_lower']:.12g}")
    if report.get("u_right") is not None:
        print(f"u_right = {np.asarray(report['u_right'])}")
    if report.get("v_left") is not None:
        print(f"v_left  = {np.asarray(report['v_left'])}")
    for key, val in report.get("flags", {}).items():
        print(f"{key} = {val}")
    for rep in report.get("theorem_reports", []):
        status = "HOLDS" if rep["holds"] else ("N/A" if not rep["applicable"] else "FAILS")
        print(f"[{status}] {rep['name']}: slack={rep['slack']:.3g} {rep['details']}")
    print(f"exit {code}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise ParseError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quasieig", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in _SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--matrix", required=True, help="matrix file (JSON or text)")
        sp.add_argument(
            "--cone",
            default="orthant",
            help="'orthant', 'rotation:SEED', or a path to an orthogonal matrix file",
        )
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--grid", type=int, default=2000, dest="grid_k")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        if name == "perturb":
            sp.add_argument("--perturbation", required=True, help="perturbation matrix file")
    return p


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        config = RunConfig(
            subcommand=args.subcommand,
            matrix_path=args.matrix,
            cone_spec=args.cone,
            tol=args.tol,
            grid_k=args.grid_k,
            seed=args.seed,
            output="json" if args.json else "human",
            perturbation_path=getattr(args, "perturbation", None),
        )
    except (ParseError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    code, report = run(config)
    if config.output == "json":
        print(emit_json(report))
    else:
        _print_human(report, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
