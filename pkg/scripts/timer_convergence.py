"""Free-running 555 frequency error as the step size shrinks.

    python3 scripts/timer_convergence.py [--periods 10]
"""

import argparse

from dualheat.design import standard_astable_period
from dualheat.engine import measure_duty_cycle, measure_frequency
from dualheat.timer555 import Timer555Config, simulate_timer_free_run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--periods", type=int, default=10)
    ap.add_argument("--r1", type=float, default=68e3)
    ap.add_argument("--r2", type=float, default=68e3)
    ap.add_argument("--c", type=float, default=1e-6)
    args = ap.parse_args()

    cfg = Timer555Config(r1=args.r1, r2=args.r2, c=args.c)
    t_high, t_low, f_ref = standard_astable_period(cfg.r1, cfg.r2, cfg.c)
    period = t_high + t_low
    print(f"closed-form f = {f_ref:.6f} Hz, duty = {t_high / period:.6f}")
    print(f"{'steps/tau':>10} {'dt [s]':>12} {'f [Hz]':>12} {'rel err':>10} {'duty':>9}")
    for div in (10, 25, 50, 100, 200, 400, 800):
        dt = cfg.tau_min / div
        tr = simulate_timer_free_run(cfg, args.periods * period, dt)
        window = (period, tr.t_end)
        f = measure_frequency(tr, "output", window)
        duty = measure_duty_cycle(tr, "output", window)
        print(f"{div:>10} {dt:>12.4e} {f:>12.6f} {abs(f - f_ref) / f_ref:>10.2e} {duty:>9.5f}")


if __name__ == "__main__":
    main()
