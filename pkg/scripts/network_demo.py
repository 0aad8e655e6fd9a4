"""Classify the three six-qubit example states by certified entanglement depth.

Runs the depth classification for s in {0, -1, -inf} and prints the
inequality chain behind each network assignment.
"""
from skewmum.thresholds import network_depth_demo


def main():
    for s in ("0", "-1", "-inf"):
        rep = network_depth_demo(s)
        print(f"s = {rep.s}")
        for x in sorted(rep.values):
            print(f"  psi_{x}: I = {rep.values[x]:.6f} -> depth {rep.depths[x]} -> {rep.assignment[x]}")
            print(f"      {rep.chains[x]}")


if __name__ == "__main__":
    main()
