"""Phasor uncertainties and covariances of the ground state along the coupling axis."""
import argparse
from pathlib import Path

import numpy as np

from gaugering import io
from gaugering.phasor import COLUMNS, RingPartition, uncertainty_scan


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=1)
    parser.add_argument("--count", type=int, default=315)
    parser.add_argument("--bins", type=int, default=64)
    parser.add_argument("--parity", default="all", choices=["all", "even", "odd"])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    scan = uncertainty_scan(args.q, np.linspace(0, 2 * np.pi, args.count), RingPartition(args.bins),
                            workers=args.workers, parity=args.parity)
    path = io.write_csv(args.out / f"uncertainty_q{args.q}_{args.parity}.csv", COLUMNS, scan.rows(),
                        {"q": args.q, "n_bins": args.bins, "parity": args.parity})
    kappa, cov = scan.column("kappa"), scan.column("cov_conj_abs")
    for target in (np.pi, 2 * np.pi):
        r = scan.records[int(np.argmin(np.abs(kappa - target)))]
        print(f"kappa={r.kappa:.4f}: ground p={r.ground_p} (set {r.degenerate}), |cov_conj|={r.cov_conj_abs:.3e}, "
              f"dQ1 dQ2={r.dQ1dQ2:.6f}")
    print(f"max |cov_conj| = {cov.max():.5f} at kappa = {kappa[np.argmax(cov)]:.4f}; wrote {path}")


if __name__ == "__main__":
    main()
