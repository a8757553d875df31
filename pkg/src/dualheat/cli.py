"""Command-line entry point: ``dualheat {design,simulate,sweep,selftest}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .design import AstableDesignInput, PsuDesignInput, design_report
from .engine import alarm_intervals, run_transient, sweep_preset
from .scenario import ScenarioError, default_scenario_path, load_scenario, parse_number, write_trace
from .selftest import run_selftest


def _si(text: str) -> float:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _preset_list(text: str) -> list[float]:
    try:
        values = [parse_number(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not values:
        raise argparse.ArgumentTypeError("need at least one preset")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualheat", description="Dual-sensor heat alarm calculator and simulator.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{design,simulate,sweep,selftest}")

    design = sub.add_parser("design", help="print the component-sizing worksheet")
    design.add_argument("--vs", type=_si, default=12.0, help="transformer secondary, V rms")
    design.add_argument("--ripple", type=_si, default=0.07, help="ripple as a fraction of peak")
    design.add_argument("--iload", type=_si, default=0.2, help="load current, A")
    design.add_argument("--f", type=_si, default=50.0, help="mains frequency, Hz")
    design.add_argument("--vsupply", type=_si, default=5.0, help="LED supply, V")
    design.add_argument("--vled", type=_si, default=2.7, help="LED forward voltage, V")
    design.add_argument("--iled", type=_si, default=3.2e-3, help="LED current, A")
    design.add_argument("--r1", type=_si, default=68e3)
    design.add_argument("--r2", type=_si, default=68e3)
    design.add_argument("--c2", type=_si, default=1e-6)
    design.add_argument("--r3", type=_si, default=8.2e3)
    design.add_argument("--c3", type=_si, default=47e-6)

    simulate = sub.add_parser("simulate", help="run a scenario and write its trace")
    simulate.add_argument("scenario", help="scenario file, or 'default' for the bundled bench test")
    simulate.add_argument("--out", required=True, help="trace CSV path")

    sweep = sub.add_parser("sweep", help="first alarm time for several presets")
    sweep.add_argument("scenario", help="scenario file; profile.1 drives both channels")
    sweep.add_argument("--presets", type=_preset_list, required=True, help="comma-separated presets, degC")

    sub.add_parser("selftest", help="recompute the worked design values")
    return parser


def _scenario_path(arg: str) -> Path:
    return default_scenario_path() if arg == "default" else Path(arg)


def _cmd_design(args) -> int:
    psu = PsuDesignInput(vs_rms=args.vs, ripple_fraction=args.ripple, i_load=args.iload, mains_freq=args.f)
    timer = AstableDesignInput(r1=args.r1, r2=args.r2, r3=args.r3, c2=args.c2, c3=args.c3)
    r = design_report(psu, timer, v_led=args.vled, i_led=args.iled, v_supply=args.vsupply)
    rows = [
        ("Vpk", f"{r.v_pk:.8g} V", "16.97 V"),
        ("Vripple", f"{r.v_ripple:.8g} V", "1.1879 V"),
        ("C (exact)", f"{r.c_exact * 1e6:.8g} uF", "1684 uF"),
        ("C (standard E6)", f"{r.c_standard * 1e6:.8g} uF", "2200 uF"),
        ("R_led", f"{r.r_led:.8g} ohm", "718.75 ohm"),
        ("T_ON", f"{r.t_on:.8g} s", "0.0952 s"),
        ("T_OFF", f"{r.t_off:.8g} s", "0.26978 s"),
        ("T", f"{r.period:.8g} s", "-"),
        ("T (T_OFF rounded)", f"{r.period_rounded:.8g} s", "0.3652 s"),
        ("F", f"{r.frequency:.8g} Hz", "-"),
        ("F (T_OFF rounded)", f"{r.frequency_rounded:.8g} Hz", "2.74 Hz"),
        ("std 555 t_high", f"{r.std_t_high:.8g} s", "-"),
        ("std 555 t_low", f"{r.std_t_low:.8g} s", "-"),
        ("std 555 F", f"{r.std_frequency:.8g} Hz", "-"),
    ]
    print(f"{'quantity':<20} {'computed':>20}   {'worksheet':>12}")
    for label, computed, sheet in rows:
        print(f"{label:<20} {computed:>20}   {sheet:>12}")
    return 0


def _cmd_simulate(args) -> int:
    doc = load_scenario(_scenario_path(args.scenario))
    trace = run_transient(
        doc.to_system(), doc.profiles, doc.run.dt, doc.run.t_end, noise_amplitude=doc.run.noise, seed=doc.run.seed
    )
    write_trace(trace, args.out)
    print(f"wrote {len(trace)} samples x {len(trace.names)} channels to {args.out}")
    print(alarm_intervals(trace).summary())
    return 0


def _cmd_sweep(args) -> int:
    doc = load_scenario(_scenario_path(args.scenario))
    rows = sweep_preset(doc.to_system(), doc.profiles[0], args.presets, doc.run.dt, doc.run.t_end)
    print(f"{'preset_C':>10} {'first_alarm_s':>15}")
    for preset, t in rows:
        print(f"{preset:>10.6g} {('none' if t is None else f'{t:.6g}'):>15}")
    return 0


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"design": _cmd_design, "simulate": _cmd_simulate, "sweep": _cmd_sweep}
    try:
        if args.command == "selftest":
            return 0 if run_selftest() else 1
        return handlers[args.command](args)
    except ScenarioError as exc:
        print(f"dualheat: {args.scenario}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"dualheat: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
