"""Measure particle 1 with kernels of different sharpness and follow the free evolution of particle 2."""
import argparse
from pathlib import Path

import numpy as np

from gaugering import io
from gaugering.domain import GaugeShape
from gaugering.dynamics import evolve_and_record
from gaugering.measurement import MeasurementKernel, measure_imperfect
from gaugering.spectral import solve_sector
from gaugering.twobody import TwoBodyState


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=1)
    parser.add_argument("--kappa", type=float, default=3.8)
    parser.add_argument("--p", type=int, default=-2)
    parser.add_argument("--theta0", type=float, default=0.0)
    parser.add_argument("--n", type=int, nargs="+", default=[1, 50])
    parser.add_argument("--t-max", type=float, default=2 * np.pi)
    parser.add_argument("--frames", type=int, default=200)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    state = TwoBodyState(solve_sector(GaugeShape(args.q, args.kappa), args.p)[0])
    for n in args.n:
        psi = measure_imperfect(state, MeasurementKernel(n, args.theta0))
        ev = evolve_and_record(psi, args.t_max, args.frames)
        cv = ev.circular_variance
        io.write_csv(args.out / f"evolve_n{n}.csv", ["t"] + [f"d{j}" for j in range(psi.n)],
                     [[t, *d] for t, d in zip(ev.times, ev.densities)], {"kernel_n": n, "theta0": args.theta0})
        io.write_csv(args.out / f"dispersion_n{n}.csv", ["t", "circular_variance", "ratio"],
                     [[t, c, c / cv[0]] for t, c in zip(ev.times, cv)], {"kernel_n": n})
        print(f"n={n:3d}: detection norm {psi.meta['detection_norm']:.4e}, CV(0)={cv[0]:.4f}, "
              f"max CV/CV(0)={cv.max() / cv[0]:.4f} at t={ev.times[np.argmax(cv)]:.3f}")


if __name__ == "__main__":
    main()
