"""Command line entry point: ``slowlight {sweep,beat,fit,info}``."""

from __future__ import annotations

import argparse
import logging
import sys


from . import output
from .config import DOPPLER_CHOICES, ScenarioConfig, from_preset, load_config
from .errors import SlowLightError
from .medium import PARAMETER_UNITS, PRESET_DOPPLER, PRESETS, TWO_PI
from .scenarios import (fit_parameters, read_delay_csv, run_beat_scenario, run_figure3,
                        run_power_sweep, synthetic_delay_data)

log = logging.getLogger("slowlight")


def _build_config(args) -> ScenarioConfig:
    if args.config:
        cfg = load_config(args.config)
        if args.preset:
            # preset replaces the medium but keeps the file's other settings
            cfg = cfg.with_(medium=PRESETS[args.preset], preset=args.preset,
                            doppler=PRESET_DOPPLER[args.preset])
    else:
        cfg = from_preset(args.preset or "paper-baseline")
    changes = {}
    if args.doppler:
        changes["doppler"] = args.doppler
    if args.slices is not None:
        changes["n_slices"] = args.slices
    if args.out:
        changes["output_dir"] = args.out
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.no_depletion:
        changes["depletion"] = False
    return cfg.with_(**changes).validated()


def cmd_sweep(cfg, args):
    rows = run_power_sweep(cfg)
    tables = [output.sweep_table(rows)]
    if args.figure3:
        tables.append(output.fig3_table(run_figure3(cfg)))
    for r in rows:
        flag = "opaque" if r.opaque else ""
        print(f"{r.power * 1e3:9.4f} mW  T_g = {r.T_g * 1e3:9.4f} ms  "
              f"v_g = {r.v_g:10.2f} m/s  T = {r.transmission:.3e} {flag}{r.error}")
    return tables


def cmd_beat(cfg, args):
    res = run_beat_scenario(cfg)
    print(f"drive {cfg.beat_power * 1e3:.2f} mW: xi*T_g = {res.gain:.4f}, "
          f"T_g = {res.T_g * 1e6:.2f} us, |E_n|/|E_p| = {res.state.ratio:.4f}")
    for p in res.spectrum.peaks:
        pairs = ", ".join("x".join(pair) for pair in p.contributors)
        print(f"  {p.frequency / 1e9:.6f} GHz  power {p.power:.4e}  ({pairs})")
    return [output.beat_table(res.spectrum)]


def cmd_fit(cfg, args):
    free = tuple(s for s in (args.free or ",".join(cfg.free)).split(",") if s)
    if args.data:
        data = read_delay_csv(args.data)
    else:
        truth = cfg
        data = synthetic_delay_data(truth, args.noise, cfg.seed)
        log.info("no --data given; fitting synthetic data with %.1f%% noise", 100 * args.noise)
        # start away from the truth so the fit has work to do
        cfg = cfg.with_(medium=cfg.medium.with_(gamma_bc=cfg.medium.gamma_bc * 2.0))
    res = fit_parameters(data, free, cfg)
    for k, v in sorted(res.params.items()):
        shown = v / TWO_PI if k == "gamma_bc" else v
        unit = "Hz (gamma_bc/2pi)" if k == "gamma_bc" else ""
        print(f"{k:10s} = {shown:.6g} {unit}")
    print(f"residual norm {res.residual_norm:.4g} after {res.iterations} iterations"
          f" ({'converged' if res.converged else 'NOT converged'})")
    return [output.fit_table(res)]


def cmd_info(cfg, args):
    names = sorted(PRESETS)
    print(f"{'parameter':24s}" + "".join(f"{n:>18s}" for n in names))
    for attr, (key, unit, factor) in PARAMETER_UNITS.items():
        values = "".join(f"{getattr(PRESETS[n], attr) * factor:18.6g}" for n in names)
        print(f"{key + ' [' + unit.split(' ')[0] + ']':24s}{values}")
    print(f"{'doppler model':24s}" + "".join(f"{PRESET_DOPPLER[n]:>18s}" for n in names))
    return None


COMMANDS = {"sweep": cmd_sweep, "beat": cmd_beat, "fit": cmd_fit, "info": cmd_info}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value configuration file")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--doppler", choices=DOPPLER_CHOICES)
    common.add_argument("--slices", type=int, metavar="N")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--seed", type=int, metavar="N")
    common.add_argument("--no-depletion", action="store_true",
                        help="keep the drive power uniform along the cell")

    parser = argparse.ArgumentParser(prog="slowlight", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sweep", parents=[common], help="delay and velocity vs drive power")
    p.add_argument("--figure3", action="store_true",
                   help="also write the four-curve velocity comparison")
    sub.add_parser("beat", parents=[common], help="Raman two-mode state and RF beat spectrum")
    p = sub.add_parser("fit", parents=[common], help="fit parameters to delay-vs-power data")
    p.add_argument("--data", metavar="CSV", help="two columns power_mw,delay_s with header")
    p.add_argument("--free", help="comma-separated subset of gamma_bc,rabi_cal,N")
    p.add_argument("--noise", type=float, default=0.05,
                   help="noise level of synthetic data when --data is absent")
    sub.add_parser("info", parents=[common], help="print preset parameter tables")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        cfg = _build_config(args)
        tables = COMMANDS[args.command](cfg, args)
        if tables is not None:
            manifest = output.export_outputs(tables, cfg.output_dir)
            for fname, digest in manifest:
                log.info("wrote %s/%s  %s", cfg.output_dir, fname, digest[:12])
    except SlowLightError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
