"""K-theory of the one-vertex graphs with n loops (the Cuntz algebras)."""

import argparse
import time

from kweb import Graph, build_kweb


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max", type=int, default=9, help="largest number of loops")
    args = p.parse_args()
    t0 = time.perf_counter()
    for n in range(2, args.max + 1):
        kg = build_kweb(Graph.from_matrix([[n]], ["v"])).total()
        print(f"n={n:2d}  K0 = {kg.k0}  K1 = {kg.k1}  unit = {list(kg.unit_class)}")
    print(f"{time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
