"""First-alarm time against preset for a linear temperature ramp.

    python3 scripts/preset_sweep.py [--rate 1.0] [--dt 0.01]
"""

import argparse

import numpy as np

from dualheat.engine import CircuitSystem, TemperatureProfile, sweep_preset


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=float, default=20.0, help="ramp start in degC")
    ap.add_argument("--rate", type=float, default=1.0, help="degC per second")
    ap.add_argument("--span", type=float, default=30.0, help="ramp duration in s")
    ap.add_argument("--dt", type=float, default=0.01)
    args = ap.parse_args()

    stop = args.start + args.rate * args.span
    ramp = TemperatureProfile.ramp(0.0, args.start, args.span, stop)
    presets = np.linspace(args.start + 1, stop - 1, 10)
    rows = sweep_preset(CircuitSystem(), ramp, presets.tolist(), args.dt, args.span + 1.0)
    print(f"{'preset [degC]':>14} {'first alarm [s]':>16} {'analytic [s]':>13}")
    for preset, t in rows:
        analytic = (preset - args.start) / args.rate
        shown = "none" if t is None else f"{t:.4f}"
        print(f"{preset:>14.3f} {shown:>16} {analytic:>13.4f}")


if __name__ == "__main__":
    main()
