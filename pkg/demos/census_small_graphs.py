"""Exhaustive percolation census over all labeled graphs on 4 vertices.

Enumerates every one of the 64 labeled graphs and asks, for each rule,
how many of them close to the complete graph. The K_4 rule is strict
(7 percolating graphs, only the near-complete ones), while the K_3 rule
lets any connected graph percolate (38 of 64).
"""

from wsatlab.graphs import make_clique
from wsatlab.oracle import percolation_census


def main():
    for r in (3, 4):
        rep = percolation_census(4, make_clique(r))
        print(f"K_{r} rule on n=4: {rep.percolating} of {rep.total} "
              f"labeled graphs percolate")
        for edges in sorted(rep.by_edge_count):
            total, perc = rep.by_edge_count[edges]
            print(f"  {edges} edges: {perc}/{total}")
        print()


if __name__ == "__main__":
    main()
