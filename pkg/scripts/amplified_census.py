"""Sort every amplified graph on n vertices into isomorphism classes of its
Leavitt path algebra and count the classes the K-web groups cannot separate."""

import argparse
import itertools
import warnings

from kweb import INF, Graph, amplified_transitive_closure, build_kweb, canonical_form, compare_kwebs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=3)
    args = ap.parse_args()
    n = args.n
    warnings.simplefilter("ignore")
    classes: dict = {}
    for flat in itertools.product((0, INF), repeat=n * n):
        g = Graph.from_matrix([list(flat[i * n:(i + 1) * n]) for i in range(n)])
        classes.setdefault(canonical_form(amplified_transitive_closure(g)).canon, g)
    print(f"{2 ** (n * n)} amplified graphs on {n} vertices, {len(classes)} classes")
    reps = [build_kweb(g) for g in classes.values()]
    blind = sum(compare_kwebs(a, b, amplified_shortcut=False).category == "Consistent"
                for a, b in itertools.combinations(reps, 2))
    print(f"{blind} pairs of distinct classes with matching K-web groups")


if __name__ == "__main__":
    main()
