"""Command-line frontend.

Subcommands: ``simulate`` (run the three experiments and analyze them),
``fit`` (analyze an external curve CSV), ``predict`` (model-based
addressability estimates, no Monte Carlo), ``verify`` (oracle suite) and
``dump-group`` (group table export).  Configuration is flat ``key = value``
text; all structured outputs are JSON, curves are CSV.  Exit codes:
0 success, 1 usage/config error, 2 analysis error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .cliffords import dump_group_csv, get_group
from .fitting import FitError, fit_protocol_curves
from .noise import (
    DEFAULT_EVOLVE_STEPS,
    DEVICE_PRESETS,
    SAMPLE_A,
    SAMPLE_B,
    Composite,
    CrossTalk,
    Decoherence,
    Depolarizing,
    DeviceParams,
    Ideal,
    describe_model,
    predict_addressability,
)
from .protocol import RBConfig, read_curves_csv, run_protocol, write_curves_csv
from .report import build_report
from .verify import run_verification

OUT_ENV_VAR = "RB_ADDR_OUT"

# Per-generator depolarizing strength matched to sample a's measured r_1
# through the mean word length of the Clifford decomposition.
SAMPLE_A_ALPHA_PER_GENERATOR = 0.9957

DEVICE_KEYS = {
    "omega1_ghz",
    "omega2_ghz",
    "t1_1_us",
    "t1_2_us",
    "t2_1_us",
    "t2_2_us",
    "zeta_mhz",
    "m12",
    "m21",
    "mu1",
    "mu2",
    "nu1",
    "nu2",
    "gate_time_ns",
}
RUN_KEYS = {
    "model",
    "preset",
    "alpha1",
    "alpha2",
    "joint",
    "lengths",
    "k",
    "seed",
    "sample_label",
    "granularity",
    "shots",
    "steps",
}


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with code 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_config_file(path) -> dict[str, str]:
    """Flat 'key = value' config with '#' comments."""
    cfg: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in DEVICE_KEYS | RUN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key '{key}'")
        cfg[key] = value
    return cfg


def _device_from_config(cfg: dict[str, str], preset: str | None) -> DeviceParams:
    if preset is not None:
        if preset not in DEVICE_PRESETS:
            raise ConfigError(
                f"unknown device preset '{preset}' (have: {', '.join(sorted(DEVICE_PRESETS))})"
            )
        params = DEVICE_PRESETS[preset]
        if "gate_time_ns" in cfg:
            params = params.with_gate_time(float(cfg["gate_time_ns"]) * 1e-9)
        return params
    device_cfg = {k: v for k, v in cfg.items() if k in DEVICE_KEYS}
    required = {"omega1_ghz", "omega2_ghz", "t1_1_us", "t1_2_us", "t2_1_us", "t2_2_us"}
    missing = sorted(required - device_cfg.keys())
    if missing:
        raise ConfigError("missing device parameters: " + ", ".join(missing))
    return DeviceParams.from_config(device_cfg)


def model_presets() -> dict:
    a_dep = Depolarizing(SAMPLE_A_ALPHA_PER_GENERATOR)
    return {
        "ideal": (Ideal(), "ideal"),
        "sample_a_depolarizing": (a_dep, "sample_a"),
        "sample_a_crosstalk": (CrossTalk(SAMPLE_A), "sample_a"),
        "sample_a_decoherence": (Decoherence(SAMPLE_A), "sample_a"),
        "sample_a_full": (
            Composite((CrossTalk(SAMPLE_A), Decoherence(SAMPLE_A))),
            "sample_a",
        ),
        "sample_b_decoherence": (Decoherence(SAMPLE_B), "sample_b"),
    }


def _build_model(cfg: dict[str, str], args):
    presets = model_presets()
    preset = args.preset or cfg.get("preset")
    if preset is not None:
        if preset not in presets:
            raise ConfigError(
                f"unknown preset '{preset}' (have: {', '.join(sorted(presets))})"
            )
        return presets[preset][0], presets[preset][1]
    name = args.model or cfg.get("model", "ideal")
    label = cfg.get("sample_label", name)
    if name == "ideal":
        return Ideal(), label
    if name == "depolarizing":
        if "alpha1" not in cfg:
            raise ConfigError("depolarizing model needs config key 'alpha1'")
        alpha2 = float(cfg["alpha2"]) if "alpha2" in cfg else None
        joint = cfg.get("joint", "false").lower() in ("1", "true", "yes")
        return Depolarizing(float(cfg["alpha1"]), alpha2, joint), label
    device = _device_from_config(cfg, None)
    if name == "decoherence":
        return Decoherence(device), label
    steps = int(cfg.get("steps", DEFAULT_EVOLVE_STEPS))
    if name == "crosstalk":
        return CrossTalk(device, steps), label
    if name == "crosstalk_decoherence":
        return Composite((CrossTalk(device, steps), Decoherence(device))), label
    raise ConfigError(f"unknown model '{name}'")


def _rb_config(cfg: dict[str, str], args) -> RBConfig:
    kwargs = {}
    lengths = args.lengths or cfg.get("lengths")
    if lengths:
        kwargs["lengths"] = tuple(int(x) for x in str(lengths).split(",") if x.strip())
    k = args.K or cfg.get("k")
    if k:
        kwargs["K"] = int(k)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    kwargs["seed"] = int(seed)
    if "granularity" in cfg:
        kwargs["granularity"] = cfg["granularity"]
    if "shots" in cfg:
        kwargs["shots"] = int(cfg["shots"])
    return RBConfig(**kwargs)


# ---------------------------------------------------------------------------
# Artifact helpers


def _out_dir(args, command: str) -> Path:
    if args.out:
        out = Path(args.out)
    else:
        base = os.environ.get(OUT_ENV_VAR, "rbaddr_runs")
        out = Path(base) / command
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(
    out: Path, command: str, args_dict: dict, cfg: dict, seed, started: str,
    inputs: dict[str, str], outputs: list[Path],
) -> None:
    args_dict = {
        k: v
        for k, v in args_dict.items()
        if k != "func" and isinstance(v, (str, int, float, bool))
    }
    manifest = {
        "command": command,
        "args": dict(sorted(args_dict.items())),
        "config": dict(sorted(cfg.items())),
        "seed": seed,
        "toolkit_version": __version__,
        "timestamps": {
            "started": started,
            "finished": datetime.now(timezone.utc).isoformat(),
        },
        "inputs": inputs,
        "outputs": {p.name: _sha256(p) for p in outputs},
    }
    _dump_json(out / "manifest.json", manifest)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _plot_data_rows(fits: dict) -> list[list]:
    rows = []
    for (experiment, projection), fit in sorted(fits.items()):
        if isinstance(fit, dict):  # failed fit
            continue
        ms = np.unique(
            np.rint(
                np.geomspace(1, max(2, fit.curve_meta.get("max_m", 512)), 64)
            ).astype(int)
        )
        a, alpha, b = fit.A, fit.alpha, fit.B
        values = a * np.power(alpha, ms.astype(float)) + b
        for m, v in zip(ms, values):
            rows.append([experiment, projection, int(m), repr(float(v))])
    return rows


def _write_plot_csv(path: Path, fits: dict) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["experiment", "projection", "m", "fitted"])
        writer.writerows(_plot_data_rows(fits))


def _analyze_and_write(
    curves, out: Path, sample_label: str, provenance: dict
) -> list[Path]:
    result = fit_protocol_curves(curves)
    fits_payload = {
        "curves": [
            fit.to_dict() if not isinstance(fit, dict) else fit
            for fit in (result["fits"][key] for key in sorted(result["fits"]))
        ],
        "alpha_keys": {
            k: f"{v[0]}/{v[1]}" for k, v in sorted(result["alpha_sources"].items())
        },
    }
    fits_path = out / "fits.json"
    _dump_json(fits_path, fits_payload)
    plot_path = out / "plot_data.csv"
    _write_plot_csv(plot_path, result["fits"])

    report = build_report(
        result["alpha_fits"], sample_label=sample_label, provenance=provenance
    )
    report_json = out / "report.json"
    _dump_json(report_json, report.to_dict())
    report_txt = out / "report.txt"
    report_txt.write_text(report.to_text())
    if report.missing:
        print(
            "note: partial report; missing fits for " + ", ".join(report.missing)
        )
    print(report.to_text(), end="")
    return [fits_path, plot_path, report_json, report_txt]


# ---------------------------------------------------------------------------
# Commands


def cmd_simulate(args) -> int:
    started = _now()
    cfg = parse_config_file(args.config) if args.config else {}
    model, sample_label = _build_model(cfg, args)
    rb_cfg = _rb_config(cfg, args)
    out = _out_dir(args, "simulate")

    curves = run_protocol(rb_cfg, model)
    curves_path = out / "curves.csv"
    write_curves_csv(curves, curves_path)

    config_digest = hashlib.sha256(
        json.dumps(sorted(cfg.items())).encode()
    ).hexdigest()
    provenance = {
        "model": describe_model(model),
        "seed": rb_cfg.seed,
        "lengths": list(rb_cfg.lengths),
        "K": rb_cfg.K,
        "granularity": rb_cfg.granularity,
        "mean_generators_per_clifford": get_group("c1").mean_slots,
        "config_digest": config_digest,
        "toolkit_version": __version__,
    }
    outputs = [curves_path]
    outputs += _analyze_and_write(curves, out, sample_label, provenance)
    _write_manifest(
        out, "simulate", vars(args), cfg, rb_cfg.seed, started, {}, outputs
    )
    print(f"artifacts written to {out}")
    return 0


def cmd_fit(args) -> int:
    started = _now()
    out = _out_dir(args, "fit")
    curves_path = Path(args.curves)
    curves = read_curves_csv(curves_path)
    if not curves:
        raise FitError("no curves found in input CSV")
    provenance = {"input": str(curves_path), "toolkit_version": __version__}
    outputs = _analyze_and_write(
        curves, out, args.sample_label or curves_path.stem, provenance
    )
    _write_manifest(
        out,
        "fit",
        vars(args),
        {},
        None,
        started,
        {str(curves_path): _sha256(curves_path)},
        outputs,
    )
    print(f"artifacts written to {out}")
    return 0


def cmd_predict(args) -> int:
    started = _now()
    cfg = parse_config_file(args.config) if args.config else {}
    device = _device_from_config(cfg, args.preset)
    missing = device.missing_crosstalk_fields()
    if missing:
        raise ConfigError(
            "cross-talk prediction needs parameters: " + ", ".join(missing)
        )
    model = CrossTalk(device)
    if args.with_decoherence:
        model = Composite((model, Decoherence(device)))
    prediction = predict_addressability(model)
    prediction["gate_time_ns"] = device.gate_time * 1e9
    out = _out_dir(args, "predict")
    pred_path = out / "predictions.json"
    _dump_json(pred_path, prediction)
    _write_manifest(
        out, "predict", vars(args), cfg, None, started, {}, [pred_path]
    )
    print(json.dumps(prediction, indent=2, sort_keys=True))
    print(f"artifacts written to {out}")
    return 0


def cmd_verify(args) -> int:
    results = run_verification(args.level, args.tol_override)
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail} [{res.seconds:.2f}s]")
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 3 if failures else 0


def cmd_dump_group(args) -> int:
    out = _out_dir(args, "dump-group")
    group = get_group(args.group)
    path = out / f"group_{args.group}.csv"
    dump_group_csv(group, path)
    print(f"wrote {len(group)} elements to {path}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rbaddr",
        description="Simultaneous randomized benchmarking and addressability toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help=f"output directory (default ${OUT_ENV_VAR}/<cmd>)")

    p_sim = sub.add_parser("simulate", help="run the three RB experiments")
    p_sim.add_argument("--config", help="flat key=value config file")
    p_sim.add_argument("--preset", help="bundled model preset name")
    p_sim.add_argument(
        "--model",
        help="ideal | depolarizing | decoherence | crosstalk | crosstalk_decoherence",
    )
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--lengths", help="comma-separated sequence lengths")
    p_sim.add_argument("--K", type=int, default=None, help="sequences per length")
    add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_fit = sub.add_parser("fit", help="fit externally supplied curves CSV")
    p_fit.add_argument("curves", help="curves CSV (experiment,projection,m,mean,stderr,K)")
    p_fit.add_argument("--sample-label", default=None)
    add_common(p_fit)
    p_fit.set_defaults(func=cmd_fit)

    p_pred = sub.add_parser("predict", help="model-based addressability prediction")
    p_pred.add_argument("--config", help="device parameter config file")
    p_pred.add_argument("--preset", help="device preset: sample_a | sample_b")
    p_pred.add_argument(
        "--with-decoherence", action="store_true", help="compose T1/T2 decay per slot"
    )
    add_common(p_pred)
    p_pred.set_defaults(func=cmd_predict)

    p_ver = sub.add_parser("verify", help="run the self-verification oracle suite")
    p_ver.add_argument("--level", choices=("quick", "full"), default="quick")
    p_ver.add_argument(
        "--tol-override",
        type=float,
        default=None,
        help="replace all tolerances (negative control for the harness)",
    )
    p_ver.set_defaults(func=cmd_verify)

    p_dump = sub.add_parser("dump-group", help="export a Clifford group table")
    p_dump.add_argument("--group", choices=("c1", "cxc", "cxi", "ixc"), default="c1")
    add_common(p_dump)
    p_dump.set_defaults(func=cmd_dump_group)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (FitError, ValueError) as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
