"""Command-line entry point: fit a CSV dataset, synthesize one, or run the
outlier-contamination demo comparing the robust fit against plain PCA.

Exit codes: 0 success, 2 parse error, 3 degenerate input, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from .datagen import ExperimentSpec, generate_experiment
from .linalg import sym_evd
from .mcpi import DegenerateInputError, MCPIConfig, PCAResult, fit, standard_pca
from .metrics import component_alignment

SCHEMA_VERSION = 1

# Demo default scatter for p=3; distinct eigenvalues, off-axis eigenvectors.
DEFAULT_SCATTER_3D = np.array(
    [[8.0, 3.0, -1.0], [3.0, 4.0, -2.0], [-1.0, -2.0, 6.0]]
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


def _default_scatter(p: int) -> np.ndarray:
    if p == 3:
        return DEFAULT_SCATTER_3D.copy()
    return np.diag(np.arange(p, 0, -1, dtype=float))


def _read_matrix_csv(path: str, header: bool = False) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # empty input is reported as a parse error
        X = np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2)
    if X.size == 0:
        raise ValueError("empty input")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains non-finite values")
    return X


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _result_dict(result: PCAResult) -> dict:
    return {
        "components_rows": result.components.tolist(),
        "apriori_eigenvalues": result.apriori_eigenvalues.tolist(),
        "diagnostics": [d.as_dict() for d in result.diagnostics],
    }


def _config_from_args(args) -> MCPIConfig:
    return MCPIConfig(
        eta=args.eta,
        n_decay=args.n_decay,
        center=getattr(args, "center", False),
    )


def cmd_fit(args) -> int:
    try:
        X = _read_matrix_csv(args.input, args.header)
    except (OSError, ValueError) as err:
        print(f"error: cannot parse {args.input}: {err}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _config_from_args(args)
    try:
        result = fit(X, cfg)
    except DegenerateInputError as err:
        print(f"error: degenerate input: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "fit",
        "config": {
            "eta": cfg.eta,
            "n_decay": cfg.n_decay,
            "center": cfg.center,
            "seed": args.seed,
            "input": args.input,
        },
        "n": int(X.shape[0]),
        "p": int(X.shape[1]),
        **_result_dict(result),
    }
    try:
        _write_json(args.output, report)
    except OSError as err:
        print(f"error: cannot write {args.output}: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _spec_from_args(args, scatter: np.ndarray, seed: int) -> ExperimentSpec:
    return ExperimentSpec(
        n=args.n,
        p=args.p,
        scatter=scatter,
        outlier_fraction=args.outlier_frac,
        nu=args.nu,
        seed=seed,
    )


def _load_scatter(args) -> np.ndarray:
    if getattr(args, "scatter_csv", None):
        S = _read_matrix_csv(args.scatter_csv)
        if S.shape != (args.p, args.p):
            raise ValueError(f"scatter must be {args.p} x {args.p}, got {S.shape}")
        return S
    return _default_scatter(args.p)


def cmd_synth(args) -> int:
    try:
        scatter = _load_scatter(args)
    except (OSError, ValueError) as err:
        print(f"error: bad scatter matrix: {err}", file=sys.stderr)
        return EXIT_PARSE
    spec = _spec_from_args(args, scatter, args.seed)
    try:
        spec.validate()
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    X, idx = generate_experiment(spec, args.outlier_basis)
    sidecar = {
        "schema_version": SCHEMA_VERSION,
        "command": "synth",
        "seed": spec.seed,
        "n": spec.n,
        "p": spec.p,
        "scatter_rows": scatter.tolist(),
        "outlier_fraction": spec.outlier_fraction,
        "nu": spec.nu,
        "outlier_basis": args.outlier_basis,
        "outlier_indices": idx.tolist(),
    }
    try:
        np.savetxt(args.output, X, delimiter=",", fmt="%.17g")
        _write_json(args.output + ".meta.json", sidecar)
    except OSError as err:
        print(f"error: cannot write {args.output}: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _write_plot_csv(path, X, idx, eigvals, V_true, V_mcpi, V_pca) -> None:
    """Plot-ready rows: samples first, then the direction triples, scaled by
    twice the true standard deviation along each component."""
    p = X.shape[1]
    with open(path, "w") as fh:
        fh.write("kind,index," + ",".join(f"c{i + 1}" for i in range(p)) + "\n")
        outliers = set(int(i) for i in idx)
        for k, row in enumerate(X):
            kind = "outlier" if k in outliers else "sample"
            fh.write(f"{kind},{k}," + ",".join(f"{x:.17g}" for x in row) + "\n")
        for label, V in (("true", V_true), ("mcpi", V_mcpi), ("pca", V_pca)):
            for j in range(p):
                d = 2.0 * np.sqrt(eigvals[j]) * V[:, j]
                fh.write(f"{label},{j}," + ",".join(f"{x:.17g}" for x in d) + "\n")


def cmd_demo(args) -> int:
    try:
        scatter = _load_scatter(args)
    except (OSError, ValueError) as err:
        print(f"error: bad scatter matrix: {err}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _config_from_args(args)
    truth = sym_evd(scatter)
    V_true = truth.vectors

    replicate_rows = []
    mcpi_scores = np.empty((args.replicates, args.p))
    pca_scores = np.empty((args.replicates, args.p))
    first = None
    try:
        for r in range(args.replicates):
            spec = _spec_from_args(args, scatter, args.seed + r)
            X, idx = generate_experiment(spec, args.outlier_basis)
            res_m = fit(X, cfg)
            res_p = standard_pca(X, cfg.center)
            a_m = component_alignment(res_m.components, V_true)
            a_p = component_alignment(res_p.components, V_true)
            mcpi_scores[r] = a_m.per_component_abs_cos
            pca_scores[r] = a_p.per_component_abs_cos
            if first is None:
                first = (X, idx, res_m.components, res_p.components)
            replicate_rows.append(
                {
                    "replicate": r,
                    "seed": spec.seed,
                    "n_outliers": int(idx.size),
                    "mcpi_abs_cos": a_m.per_component_abs_cos.tolist(),
                    "pca_abs_cos": a_p.per_component_abs_cos.tolist(),
                }
            )
    except DegenerateInputError as err:
        print(f"error: degenerate input: {err}", file=sys.stderr)
        return EXIT_DEGENERATE

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "demo",
        "config": {
            "n": args.n,
            "p": args.p,
            "outlier_fraction": args.outlier_frac,
            "nu": args.nu,
            "eta": cfg.eta,
            "n_decay": cfg.n_decay,
            "center": cfg.center,
            "seed": args.seed,
            "replicates": args.replicates,
            "outlier_basis": args.outlier_basis,
            "scatter_rows": scatter.tolist(),
        },
        "true_eigenvalues": truth.values.tolist(),
        "true_components_rows": V_true.tolist(),
        "replicates": replicate_rows,
        "aggregate": {
            "mcpi_median_abs_cos": np.median(mcpi_scores, axis=0).tolist(),
            "mcpi_mean_abs_cos": np.mean(mcpi_scores, axis=0).tolist(),
            "pca_median_abs_cos": np.median(pca_scores, axis=0).tolist(),
            "pca_mean_abs_cos": np.mean(pca_scores, axis=0).tolist(),
        },
    }
    try:
        _write_json(args.output, report)
        if args.plot_csv:
            X, idx, V_m, V_p = first
            _write_plot_csv(args.plot_csv, X, idx, truth.values, V_true, V_m, V_p)
    except OSError as err:
        print(f"error: cannot write output: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrpca",
        description="Robust PCA via correntropy-weighted power iterations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a CSV dataset and write a JSON report")
    p_fit.add_argument("--input", required=True)
    p_fit.add_argument("--output", default="-")
    p_fit.add_argument("--eta", type=float, default=0.95)
    p_fit.add_argument("--n-decay", type=int, default=65)
    p_fit.add_argument("--center", action="store_true")
    p_fit.add_argument("--header", action="store_true", help="skip one header line")
    p_fit.add_argument("--seed", type=int, default=0, help="echoed into the report")
    p_fit.set_defaults(func=cmd_fit)

    p_demo = sub.add_parser("demo", help="synthetic comparison against plain PCA")
    p_demo.add_argument("--n", type=int, default=400)
    p_demo.add_argument("--p", type=int, default=3)
    p_demo.add_argument("--outlier-frac", type=float, default=0.0)
    p_demo.add_argument("--nu", type=float, default=15.0)
    p_demo.add_argument("--eta", type=float, default=0.95)
    p_demo.add_argument("--n-decay", type=int, default=65)
    p_demo.add_argument("--center", action="store_true")
    p_demo.add_argument("--replicates", type=int, default=20)
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.add_argument("--output", default="-")
    p_demo.add_argument("--plot-csv", default=None)
    p_demo.add_argument("--outlier-basis", choices=("literal", "rotated"), default="literal")
    p_demo.add_argument("--scatter-csv", default=None, help="override the p x p scatter")
    p_demo.set_defaults(func=cmd_demo)

    p_synth = sub.add_parser("synth", help="write a synthetic dataset as CSV")
    p_synth.add_argument("--n", type=int, required=True)
    p_synth.add_argument("--p", type=int, required=True)
    p_synth.add_argument("--outlier-frac", type=float, default=0.0)
    p_synth.add_argument("--nu", type=float, default=15.0)
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("--output", required=True)
    p_synth.add_argument("--outlier-basis", choices=("literal", "rotated"), default="literal")
    p_synth.add_argument("--scatter-csv", default=None, help="override the p x p scatter")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
