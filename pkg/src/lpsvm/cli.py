"""Command-line surface tying the toolkit together.

Subcommands: gen-toy, train, eval, cv, compare, figure.  Exit codes: 0 on
success, 1 on runtime failure (divergence, I/O), 2 on usage or validation
errors.  Models and figure data are JSON; anything tabular is CSV/TSV.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import DEFAULT_SV_THRESHOLD, LabeledDataset, SvmModel, margin_width, slack
from .data import ToySpec, gen_toy, kfold, load_csv, save_csv, standardize
from .metrics import REPORT_FIELDS, accuracy, comparison_to_dict, run_comparison
from .solver import DivergenceError, TrainConfig, TrainTrace, train

__all__ = ["main", "save_model", "load_model", "figure_data"]

MODEL_FORMAT_VERSION = 1

_DEFAULTS = TrainConfig()


def save_model(model: SvmModel, trace: TrainTrace, path) -> None:
    """Write the model-file JSON; floats keep shortest round-trip precision."""
    cfg = model.meta if model.meta is not None else _DEFAULTS
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "w": [float(v) for v in model.w],
        "b": float(model.b),
        "config": {
            "C": cfg.C,
            "p": cfg.p,
            "s": cfg.s,
            "eta": cfg.eta,
            "eps": cfg.eps,
            "tol_obj": cfg.tol_obj,
            "tol_grad": cfg.tol_grad,
            "max_iter": cfg.max_iter,
            "regularize_bias": cfg.regularize_bias,
        },
        "trace": {
            "iterations": trace.iterations,
            "final_objective": float(trace.objective_history[-1]),
            "converged": trace.converged,
            "stop_reason": trace.stop_reason,
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_model(path) -> tuple[SvmModel, dict]:
    """Read a model file back; returns the model and the raw document."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format_version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported model format_version "
                         f"{doc.get('format_version')!r}")
    cfg = TrainConfig(**doc["config"])
    model = SvmModel(w=np.array(doc["w"], dtype=np.float64), b=float(doc["b"]), meta=cfg)
    return model, doc


def figure_data(model: SvmModel, dataset: LabeledDataset,
                sv_threshold: float = DEFAULT_SV_THRESHOLD) -> dict:
    """Plot-ready export for 2-d data: points with support-vector flags, the
    three loci w.x + b in {-1, 0, +1} as (w, b') line coefficients, margin
    width and the support-vector count."""
    if dataset.k != 2:
        raise ValueError(f"figure export requires 2-d data, got k={dataset.k}")
    if model.k != dataset.k:
        raise ValueError(f"dimension mismatch: model expects k={model.k}, "
                         f"data has k={dataset.k}")
    report = slack(model, dataset, sv_threshold)
    is_sv = np.zeros(dataset.n, dtype=bool)
    is_sv[report.sv_indices] = True
    points = [
        {"x": float(x[0]), "y": float(x[1]), "label": int(label), "is_sv": bool(flag)}
        for x, label, flag in zip(dataset.X, dataset.y, is_sv)
    ]
    w_list = [float(v) for v in model.w]
    lines = [
        {"level": level, "w": w_list, "b": float(model.b - level)}
        for level in (-1, 0, 1)
    ]
    return {
        "points": points,
        "lines": lines,
        "margin_width": margin_width(model),
        "n_sv": report.n_sv,
        "sv_threshold": float(sv_threshold),
    }


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two floats, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected a non-empty list")
    return values


def _add_config_flags(p: argparse.ArgumentParser, with_p: bool = True) -> None:
    p.add_argument("--C", type=float, default=_DEFAULTS.C, help="slack penalty weight")
    if with_p:
        p.add_argument("--p", type=float, default=_DEFAULTS.p,
                       help="slack exponent in (0, 1]; 1 gives the standard hinge")
    p.add_argument("--s", type=float, default=_DEFAULTS.s, help="softplus sharpness")
    p.add_argument("--eta", type=float, default=_DEFAULTS.eta, help="learning rate")
    p.add_argument("--eps", type=float, default=_DEFAULTS.eps, help="momentum coefficient")
    p.add_argument("--tol-obj", type=float, default=_DEFAULTS.tol_obj,
                   help="relative objective-change tolerance")
    p.add_argument("--tol-grad", type=float, default=_DEFAULTS.tol_grad,
                   help="gradient-norm tolerance")
    p.add_argument("--max-iter", type=int, default=_DEFAULTS.max_iter, help="iteration cap")
    p.add_argument("--regularize-bias", action="store_true",
                   help="include the bias in the quadratic term")


def _config_from_args(args, **overrides) -> TrainConfig:
    kw = dict(
        C=args.C, p=getattr(args, "p", _DEFAULTS.p), s=args.s, eta=args.eta,
        eps=args.eps, tol_obj=args.tol_obj, tol_grad=args.tol_grad,
        max_iter=args.max_iter, regularize_bias=args.regularize_bias,
    )
    kw.update(overrides)
    return TrainConfig(**kw)


def _config_echo(cfg: TrainConfig) -> dict:
    return {
        "C": cfg.C, "p": cfg.p, "s": cfg.s, "eta": cfg.eta, "eps": cfg.eps,
        "tol_obj": cfg.tol_obj, "tol_grad": cfg.tol_grad,
        "max_iter": cfg.max_iter, "regularize_bias": cfg.regularize_bias,
    }


def cmd_gen_toy(args) -> int:
    spec = ToySpec(seed=args.seed, n_per_class=args.n_per_class,
                   mean_pos=args.mean_pos, mean_neg=args.mean_neg,
                   cov_scale=args.cov_scale)
    dataset = gen_toy(spec)
    save_csv(dataset, args.out)
    print(f"wrote {dataset.n} samples ({spec.n_per_class} per class) to {args.out}")
    return 0


def cmd_train(args) -> int:
    cfg = _config_from_args(args)
    dataset = load_csv(args.data, has_header=args.has_header)
    model, trace = train(dataset, cfg)
    save_model(model, trace, args.out)
    if args.trace:
        _write_trace_csv(trace, args.trace)
    print(f"trained on {dataset.n} samples: iterations={trace.iterations} "
          f"converged={trace.converged} stop_reason={trace.stop_reason} "
          f"final_objective={trace.objective_history[-1]:.6g}")
    return 0


def _write_trace_csv(trace: TrainTrace, path) -> None:
    # One row per objective entry; the final point has no gradient evaluation.
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("iter,objective,grad_norm\n")
        for it, value in enumerate(trace.objective_history):
            grad = repr(float(trace.grad_norm_history[it])) if it < trace.iterations else ""
            fh.write(f"{it},{float(value)!r},{grad}\n")


def cmd_eval(args) -> int:
    model, _ = load_model(args.model)
    dataset = load_csv(args.data, has_header=args.has_header)
    if model.k != dataset.k:
        raise ValueError(f"dimension mismatch: model expects k={model.k}, "
                         f"data has k={dataset.k}")
    report = slack(model, dataset, args.sv_threshold)
    print(f"accuracy {accuracy(model, dataset):.6f}")
    print(f"n_sv {report.n_sv}")
    print(f"margin_width {margin_width(model):.6f}")
    return 0


def cmd_cv(args) -> int:
    cfg = _config_from_args(args)
    dataset = load_csv(args.data, has_header=args.has_header)
    split = kfold(dataset, args.k, args.seed)
    folds = []
    for fold in range(args.k):
        train_ds = dataset.subset(split.train_indices(fold))
        test_ds = dataset.subset(split.test_indices(fold))
        if args.standardize:
            train_ds, test_ds = standardize(train_ds, test_ds)
        model, _ = train(train_ds, cfg)
        folds.append({
            "fold": fold,
            "train_acc": accuracy(model, train_ds),
            "test_acc": accuracy(model, test_ds),
            "n_sv": slack(model, train_ds, args.sv_threshold).n_sv,
        })
    means = {key: float(np.mean([f[key] for f in folds]))
             for key in ("train_acc", "test_acc", "n_sv")}
    print("fold  train_acc  test_acc  n_sv")
    for f in folds:
        print(f"{f['fold']:>4}  {f['train_acc']:>9.4f}  {f['test_acc']:>8.4f}  {f['n_sv']:>4}")
    print(f"mean  {means['train_acc']:>9.4f}  {means['test_acc']:>8.4f}  {means['n_sv']:>6.1f}")
    if args.out_json:
        doc = {"k": args.k, "seed": args.seed, "sv_threshold": args.sv_threshold,
               "config": _config_echo(cfg), "folds": folds, "means": means}
        with open(args.out_json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_compare(args) -> int:
    dataset = load_csv(args.data, has_header=args.has_header)
    blocks = []
    for C in args.c_list:
        cfg_std = _config_from_args(args, C=C, p=1.0)
        cfg_min = _config_from_args(args, C=C, p=args.p)
        report = run_comparison(dataset, cfg_std, cfg_min, args.k, args.seed,
                                args.sv_threshold, standardize=args.standardize)
        blocks.append((C, cfg_std, cfg_min, report))

    header = ["C", "fold", *REPORT_FIELDS]
    print("\t".join(header))
    tsv_lines = ["\t".join(header)]
    for C, _, _, report in blocks:
        for f in report.folds:
            row = [f"{C:g}", str(f.fold)] + [_cell(getattr(f, name)) for name in REPORT_FIELDS]
            tsv_lines.append("\t".join(row))
        mean_row = [f"{C:g}", "mean"] + [_cell(report.means[name]) for name in REPORT_FIELDS]
        tsv_lines.append("\t".join(mean_row))
        print("\t".join(mean_row))

    if args.out_tsv:
        with open(args.out_tsv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(tsv_lines) + "\n")
    if args.out_json:
        doc = {
            "data": str(args.data),
            "k": args.k,
            "seed": args.seed,
            "sv_threshold": args.sv_threshold,
            "configs": [
                {"C": C, "config_std": _config_echo(cs), "config_min": _config_echo(cm),
                 **comparison_to_dict(report)}
                for C, cs, cm, report in blocks
            ],
        }
        with open(args.out_json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0


def _cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6f}"


def cmd_figure(args) -> int:
    model, _ = load_model(args.model)
    dataset = load_csv(args.data, has_header=args.has_header)
    doc = figure_data(model, dataset, args.sv_threshold)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(f"wrote figure data for {dataset.n} points (n_sv={doc['n_sv']}) to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpsvm",
        description="Linear SVM training with an Lp-norm slack penalty.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("gen-toy", help="generate a seeded 2-d Gaussian toy dataset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-per-class", type=int, default=50)
    p.add_argument("--mean-pos", type=_pair, default=(2.0, 2.0), metavar="X,Y")
    p.add_argument("--mean-neg", type=_pair, default=(0.0, 0.0), metavar="X,Y")
    p.add_argument("--cov-scale", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_toy)

    p = sub.add_parser("train", help="train a model and write it as JSON")
    p.add_argument("--data", required=True)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", help="write per-iteration objective/gradient-norm CSV")
    _add_config_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model file on a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--sv-threshold", type=float, default=DEFAULT_SV_THRESHOLD)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cv", help="stratified k-fold cross-validation of one configuration")
    p.add_argument("--data", required=True)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sv-threshold", type=float, default=DEFAULT_SV_THRESHOLD)
    p.add_argument("--standardize", action="store_true",
                   help="rescale features per fold using training-split statistics")
    p.add_argument("--out-json")
    _add_config_flags(p)
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("compare", help="cross-validated comparison of p=1 vs p<1 at each C")
    p.add_argument("--data", required=True)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--c-list", type=_float_list, required=True, metavar="C1,C2,...")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sv-threshold", type=float, default=DEFAULT_SV_THRESHOLD)
    p.add_argument("--standardize", action="store_true",
                   help="rescale features per fold using training-split statistics")
    p.add_argument("--out-json")
    p.add_argument("--out-tsv")
    _add_config_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("figure", help="export plot-ready JSON for a 2-d dataset and model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--sv-threshold", type=float, default=DEFAULT_SV_THRESHOLD)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
