"""Scan convexity of I^s in s on a two-state qubit example.

The states are pure with Bloch vectors (0.6, 0, +-0.8); their equal mixture
has Bloch vector (0.6, 0, 0).  With A = sigma_z the average of the endpoint
values is 0.36 for every s, while the mixture value crosses it at s = -1.
A random search over mixed-state pairs in dims 2-8 is reported as well.
"""
import argparse

import numpy as np

from skewmum.skew import skew_information

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def bloch(x, z):
    return (np.eye(2) + x * SX + z * SZ) / 2


def random_density(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    up, down = bloch(0.6, 0.8), bloch(0.6, -0.8)
    print(f"{'s':>7}  {'I(mix)':>10}  {'avg':>10}  convex")
    for s in ("0", "-0.5", "-1", "-1.01", "-1.5", "-2", "-5", "-20", "-inf"):
        mix = skew_information((up + down) / 2, SZ, s)
        avg = (skew_information(up, SZ, s) + skew_information(down, SZ, s)) / 2
        print(f"{s:>7}  {mix:10.6f}  {avg:10.6f}  {mix <= avg + 1e-12}")

    rng = np.random.default_rng(args.seed)
    counts = {s: 0 for s in ("0", "-1", "-2", "-inf")}
    for _ in range(args.samples):
        dim = int(rng.integers(2, 9))
        r1, r2 = random_density(rng, dim), random_density(rng, dim)
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = (g + g.conj().T) / 2
        lam = rng.uniform()
        for s in counts:
            gap = skew_information(lam * r1 + (1 - lam) * r2, a, s) - (
                lam * skew_information(r1, a, s) + (1 - lam) * skew_information(r2, a, s))
            counts[s] += gap > 1e-9
    print(f"random pairs violating convexity out of {args.samples}: {counts}")


if __name__ == "__main__":
    main()
