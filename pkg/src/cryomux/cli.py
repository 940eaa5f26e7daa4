"""Command-line front end.

Subcommands ``simulate``, ``fit-noise``, ``compare``, ``budget`` and
``rf-report``.  Exit status is 0 on success, 1 on a runtime failure and 2 on
a usage or configuration error.  ``CRYOMUX_LOG`` sets the log level
(``DEBUG``, ``INFO``, ``WARNING``, ...); logs go to stderr so JSON on stdout
stays machine readable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import export
from .campaign import (
    InsufficientDataError,
    UnidentifiableError,
    added_dephasing_report,
    compare_paths,
    extract_noise_params,
    fingerprint,
    fit_noise_table,
    run_coherence_campaign,
    run_flux_sweep,
)
from .config import ConfigError, default_config, example_config_path, load_config
from .device import TransmonParams, table_qubit
from .fitting import FitError
from .mux import SpectrumRangeError, insertion_loss, isolation
from .planner import UnboundedBudgetError, budget_report
from .stats import StatsError, box_summary

__all__ = ["main", "build_parser", "UsageError"]

log = logging.getLogger("cryomux")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """Bad command-line input that argparse itself cannot detect."""


def _version():
    try:
        return version("cryomux")
    except PackageNotFoundError:  # running from a source tree
        return "0+unknown"


def _setup_logging():
    level = os.environ.get("CRYOMUX_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _common(parser, config=True, seed=False, fmt=True):
    if config:
        parser.add_argument("--config", type=Path, help="JSON run configuration")
    if seed:
        parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("--out-dir", type=Path, help="directory for result files and the manifest")
    if fmt:
        parser.add_argument("--format", choices=("csv", "json"), help="format of tabular outputs")


def build_parser():
    parser = argparse.ArgumentParser(prog="cryomux", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("simulate", help="run coherence campaigns (and the flux sweep) from a config")
    _common(p, seed=True)

    p = sub.add_parser("fit-noise", help="extract flux-noise amplitudes from a dephasing table")
    p.add_argument("table", type=Path, help="CSV with dispersion_hz_per_phi0, gamma_phi_e_hz")
    p.add_argument(
        "--sweet-spot-rate",
        type=float,
        help="sweet-spot dephasing rate [1/s]; default is the mean over zero-dispersion rows, else 0",
    )
    _common(p, config=False, fmt=False)

    p = sub.add_parser("compare", help="Welch tests and added dephasing between two campaign CSVs")
    p.add_argument("ref_csv", type=Path)
    p.add_argument("mux_csv", type=Path)
    p.add_argument("--qubit", type=int, help="take kappa and chi from this row of the bundled qubit table")
    p.add_argument("--kappa-over-2pi-hz", type=float)
    p.add_argument("--chi-over-2pi-hz", type=float)
    p.add_argument("--alpha", type=float, default=0.05)
    _common(p, config=False, fmt=False)

    p = sub.add_parser("budget", help="cooling-power budget for scaling")
    _common(p, fmt=False)

    p = sub.add_parser("rf-report", help="tabulate insertion loss and isolation")
    p.add_argument("--fmin", type=float, help="lowest frequency [Hz]")
    p.add_argument("--fmax", type=float, help="highest frequency [Hz]")
    p.add_argument("--points", type=int, help="number of grid points")
    _common(p)
    return parser


def _config(args):
    if getattr(args, "config", None) is not None:
        return load_config(args.config)
    if args.command == "simulate":
        return load_config(example_config_path())
    return default_config()


def _out_dir(path):
    if path is None:
        return None
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(payload, out_dir, name):
    text = export.dumps_json(payload)
    if out_dir is not None:
        (out_dir / name).write_text(text)
    sys.stdout.write(text)


def _manifest(out_dir, command, files, seed=None, cfg=None, extra=None):
    """Everything needed to rerun ``command``: inputs, seed and output digests."""
    manifest = {
        "tool": "cryomux",
        "version": _version(),
        "command": command,
        "seed": seed,
        "config": cfg.raw if cfg is not None else None,
        "config_fingerprint": fingerprint(cfg.raw, seed) if cfg is not None else None,
        "outputs": {Path(f).name: export.sha256_file(f) for f in sorted(files)},
    }
    if extra:
        manifest.update(extra)
    export.write_json(out_dir / "manifest.json", manifest)


def _box(x):
    b = box_summary(x)
    return {**b.as_dict(), "iqr": b.iqr}


def _path_summary(result):
    return {
        "n": len(result),
        "t1_s": _box(result.t1),
        "t2e_s": _box(result.t2e),
        "gamma_phi_hz": _box(result.gamma_phi),
    }


def _welch_dict(results):
    return {name: r.as_dict() for name, r in results.items()}


def cmd_simulate(args):
    cfg = _config(args)
    seed = args.seed if args.seed is not None else cfg.seed
    fmt = args.format or cfg.out_format
    out_dir = _out_dir(args.out_dir or cfg.out_dir)
    files, qubit_summaries = [], []
    for index, spec in enumerate(cfg.qubits):
        ccfg = cfg.campaign_config(spec)
        label = spec.params.label or f"qubit_{index}"
        log.info("campaign %s: %d repetitions", label, ccfg.n_repetitions)
        ref, mux = run_coherence_campaign(ccfg, seed=[seed, index])
        for result in (ref, mux):
            files.append(export.write_table(out_dir / f"{label}_{result.path}", export.campaign_rows(result), export.CAMPAIGN_COLUMNS, fmt))
        entry = {
            "label": label,
            "n_add_configured": spec.n_add,
            "reference": _path_summary(ref),
            "mux": _path_summary(mux),
            "welch": _welch_dict(compare_paths(ref, mux)),
            "added_dephasing": added_dephasing_report(ref, mux, spec.params).as_dict(),
        }
        qubit_summaries.append(entry)
    summary = {"seed": seed, "config_fingerprint": fingerprint(cfg.raw, seed), "qubits": qubit_summaries}
    if cfg.sweep is not None:
        scfg = cfg.sweep_config()
        sweep = run_flux_sweep(scfg, cfg.sweep_grid(), seed=[seed, len(cfg.qubits)])
        files.append(export.write_table(out_dir / "flux_sweep", export.sweep_rows(sweep, include_sweet_spot=True), export.SWEEP_COLUMNS, fmt))
        summary["sweep"] = {
            "n_points": int(sweep.phi_e.size),
            "gamma_phi_ss_hz": sweep.gamma_phi_ss,
            "gamma_phi_ss_err_hz": sweep.gamma_phi_ss_err,
            "noise_fit": extract_noise_params(sweep).as_dict(),
        }
    files.append(export.write_json(out_dir / "summary.json", summary))
    _manifest(out_dir, "simulate", files, seed, cfg)
    sys.stdout.write(f"wrote {len(files) + 1} files to {out_dir}\n")
    return EXIT_OK


def cmd_fit_noise(args):
    df, gamma = export.read_noise_table(args.table)
    rate = args.sweet_spot_rate
    if rate is None:
        zero = np.abs(df) == 0
        rate = float(gamma[zero].mean()) if zero.any() else 0.0
    fit = fit_noise_table(df, gamma, rate)
    payload = {"table": str(args.table), "sweet_spot_rate_hz": rate, **fit.as_dict()}
    out_dir = _out_dir(args.out_dir)
    _emit(payload, out_dir, "noise_fit.json")
    if out_dir is not None:
        _manifest(out_dir, "fit-noise", [out_dir / "noise_fit.json"], extra={"inputs": {"table": str(args.table)}})
    return EXIT_OK


def _compare_qubit(args):
    if args.qubit is not None:
        try:
            return table_qubit(args.qubit)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if (args.kappa_over_2pi_hz is None) != (args.chi_over_2pi_hz is None):
        raise UsageError("--kappa-over-2pi-hz and --chi-over-2pi-hz must be given together")
    if args.kappa_over_2pi_hz is None:
        return None
    return TransmonParams(1.0, 1.0, args.kappa_over_2pi_hz, args.chi_over_2pi_hz, label="cli")


def cmd_compare(args):
    qubit = _compare_qubit(args)
    ref, ref_header = export.read_campaign_csv(args.ref_csv)
    mux, mux_header = export.read_campaign_csv(args.mux_csv)
    if ref_header != mux_header:
        raise export.SchemaMismatchError("reference and mux tables have different columns")
    if len(ref) < 2 or len(mux) < 2:
        raise InsufficientDataError("each table needs at least two repetitions")
    welch = compare_paths(ref, mux, alpha=args.alpha)
    payload = {
        "reference": {"file": str(args.ref_csv), **_path_summary(ref)},
        "mux": {"file": str(args.mux_csv), **_path_summary(mux)},
        "welch": _welch_dict(welch),
        "added_dephasing": added_dephasing_report(ref, mux, qubit).as_dict(),
        "alpha": args.alpha,
    }
    out_dir = _out_dir(args.out_dir)
    _emit(payload, out_dir, "compare.json")
    if out_dir is not None:
        inputs = {"ref_csv": str(args.ref_csv), "mux_csv": str(args.mux_csv), "qubit": args.qubit}
        _manifest(out_dir, "compare", [out_dir / "compare.json"], extra={"inputs": inputs})
    return EXIT_OK


def cmd_budget(args):
    cfg = _config(args)
    report = budget_report(cfg.budget, cfg.mux)
    b = cfg.budget
    payload = {
        "inputs": {
            "cooling_power_w": b.cooling_power,
            "per_mux_static_w": b.per_mux_static,
            "ports_per_mux": b.ports_per_mux,
            "switching_rate_hz": b.switching_rate,
            "flux_bias_current_a": b.flux_bias_current,
            "margin": b.margin,
            "vdd": b.vdd,
        },
        "report": report.as_dict(),
    }
    out_dir = _out_dir(args.out_dir)
    _emit(payload, out_dir, "budget.json")
    if out_dir is not None:
        _manifest(out_dir, "budget", [out_dir / "budget.json"], cfg=cfg)
    return EXIT_OK


def cmd_rf_report(args):
    cfg = _config(args)
    fmin = args.fmin if args.fmin is not None else cfg.rf["fmin_hz"]
    fmax = args.fmax if args.fmax is not None else cfg.rf["fmax_hz"]
    n = args.points if args.points is not None else cfg.rf["n_points"]
    if not (0 < fmin < fmax) or n < 2:
        raise UsageError("need 0 < fmin < fmax and at least 2 points")
    freqs = np.linspace(fmin, fmax, n)
    il = insertion_loss(cfg.mux, freqs)
    iso = isolation(cfg.mux, freqs)
    rows = [
        {"freq_hz": float(f), "insertion_loss_db": float(a), "isolation_db": float(b)}
        for f, a, b in zip(freqs, il, iso)
    ]
    fmt = args.format or "csv"
    out_dir = _out_dir(args.out_dir)
    if out_dir is not None:
        path = export.write_table(out_dir / "rf_report", rows, export.RF_COLUMNS, fmt)
        _manifest(out_dir, "rf-report", [path], cfg=cfg, extra={"inputs": {"fmin_hz": fmin, "fmax_hz": fmax, "points": n}})
    if fmt == "json":
        sys.stdout.write(export.dumps_json(rows))
    else:
        sys.stdout.write(",".join(export.RF_COLUMNS) + "\n")
        for r in rows:
            sys.stdout.write(",".join(repr(r[c]) for c in export.RF_COLUMNS) + "\n")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "fit-noise": cmd_fit_noise,
    "compare": cmd_compare,
    "budget": cmd_budget,
    "rf-report": cmd_rf_report,
}

_USAGE_ERRORS = (ConfigError, UsageError, export.SchemaMismatchError, SpectrumRangeError, FileNotFoundError)
_RUNTIME_ERRORS = (
    UnidentifiableError,
    InsufficientDataError,
    FitError,
    StatsError,
    UnboundedBudgetError,
    ArithmeticError,
    ValueError,
    OSError,
)


def main(argv=None):
    """Entry point; returns the process exit status."""
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"cryomux {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except _RUNTIME_ERRORS as exc:
        sys.stderr.write(f"cryomux {args.command}: {type(exc).__name__}: {exc}\n")
        log.debug("traceback", exc_info=True)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
