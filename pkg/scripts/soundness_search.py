"""Adversarial search for fully separable qubit states that violate the ksep bound.

Maximizes the criterion sum over mixtures of R pure product states with
Nelder-Mead from random starts (pass ``--s=-inf`` with an equals sign) and prints the best value next to the
full-separability bound (k = N).  A value above the bound would be a
soundness counterexample.
"""
import argparse

import numpy as np
from scipy.optimize import minimize

from skewmum.collective import lhs_sum
from skewmum.criteria import ksep_bound
from skewmum.mum import default_mum_set


def qubit(theta, phi):
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def product_mixture(x, n, components):
    w = np.exp(x[:components])
    w /= w.sum()
    angles = x[components:].reshape(components, n, 2)
    rho = np.zeros((2**n, 2**n), dtype=complex)
    for r in range(components):
        v = np.ones(1, dtype=complex)
        for th, ph in angles[r]:
            v = np.kron(v, qubit(th, ph))
        rho += w[r] * np.outer(v, v.conj())
    return rho


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--N", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--s", nargs="+", default=["-inf", "-5", "-2", "-1", "0"])
    parser.add_argument("--components", type=int, default=2)
    parser.add_argument("--starts", type=int, default=30)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    mum = default_mum_set(2)
    rng = np.random.default_rng(args.seed)
    r = args.components
    for n in args.N:
        bound = ksep_bound(n, 2, mum.kappa, n)
        for s in args.s:
            def neg(x):
                return -lhs_sum(product_mixture(x, n, r), mum, s, n)

            best = max(-minimize(neg, 2 * rng.normal(size=r + 2 * r * n), method="Nelder-Mead",
                                 options={"maxiter": 3000, "xatol": 1e-8, "fatol": 1e-10}).fun
                       for _ in range(args.starts))
            print(f"N={n} s={s:>5}: best lhs {best:.6f}  bound {bound:.6f}  margin {best - bound:+.6f}", flush=True)


if __name__ == "__main__":
    main()
