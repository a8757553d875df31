"""Alarm chatter with and without comparator hysteresis under sensor noise.

    python3 scripts/chatter_demo.py [--noise 5m] [--seed 2024]
"""

import argparse

from dualheat.engine import CircuitSystem, TemperatureProfile, alarm_intervals, edge_count, run_transient
from dualheat.scenario import parse_number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--noise", type=parse_number, default=5e-3, help="uniform noise amplitude in volts")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--preset", type=float, default=30.0)
    args = ap.parse_args()

    # sensor 1 creeps up to the preset and sits on it; sensor 2 stays at room temperature
    hover = TemperatureProfile(((0.0, 25.0), (1.0, args.preset)))
    room = TemperatureProfile.constant(25.0)
    print(f"{'hysteresis [mV]':>16} {'edges':>7} {'alarm intervals':>16}")
    for h_mv in (0, 1, 2, 5, 10, 15, 20):
        h = h_mv * 1e-3
        system = CircuitSystem.with_presets((args.preset, args.preset), hysteresis=(h, h))
        tr = run_transient(system, (hover, room), 1e-3, 10.0, noise_amplitude=args.noise, seed=args.seed)
        print(f"{h_mv:>16} {edge_count(tr['alarm']):>7} {len(alarm_intervals(tr).intervals):>16}")


if __name__ == "__main__":
    main()
