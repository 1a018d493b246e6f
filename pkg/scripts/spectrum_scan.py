"""Ground energy of every momentum sector against coupling, for several ranges q.

Writes spectrum_q{q}.csv per q and prints where the ground state leaves p = 0.
"""
import argparse
from pathlib import Path

import numpy as np

from gaugering import io
from gaugering.spectral import ground_state_scan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, nargs="+", default=[1, 4, 32])
    parser.add_argument("--step", type=float, default=0.02)
    parser.add_argument("--parity", default="all", choices=["all", "even", "odd"])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    kappa = np.arange(0.0, 2 * np.pi + 1e-12, args.step)
    for q in args.q:
        scan = ground_state_scan(q, kappa, workers=args.workers, parity=args.parity)
        columns = ["kappa"] + [f"eps_p{p}" for p in scan.p_values] + ["ground_p", "ground_eps"]
        rows = [[k, *scan.energies[:, j], int(scan.ground_p[j]), scan.ground_energy[j]]
                for j, k in enumerate(kappa)]
        io.write_csv(args.out / f"spectrum_q{q}.csv", columns, rows, {"q": q, "parity": args.parity})
        off = np.nonzero(scan.ground_p != 0)[0]
        where = f"{kappa[off[0]]:.2f} (to p={scan.ground_p[off[0]]})" if off.size else "none below 2 pi"
        sectors = sorted(set(scan.ground_p.tolist()))
        print(f"q={q:3d}: leaves p=0 at kappa={where}; ground sectors visited {sectors}")


if __name__ == "__main__":
    main()
