"""Walk through the density invariants for a few small patterns.

For each pattern H the analysis reports lambda = (e_H - 2)/(v_H - 2),
the subgraph-optimized lambda*, the argmin set V*, the gap xi, and the
balance classification that controls which closure bounds apply.
"""

from wsatlab.graphs import make_clique, make_complete_bipartite, make_double_barbell
from wsatlab.patterns import analyze, compute_lambda_prime


def describe(name, h):
    s = analyze(h)
    print(f"{name}: v={h.n}, e={h.edge_count}")
    print(f"  lambda      = {s.lam}")
    print(f"  lambda*     = {s.lambda_star}  (argmin V* = {sorted(s.v_star)})")
    print(f"  xi          = {s.xi}   xi' = {s.xi_prime}")
    print(f"  lambda'     = {compute_lambda_prime(h)}")
    if s.strictly_balanced:
        kind = "strictly balanced"
    elif s.balanced:
        kind = "balanced (not strictly)"
    else:
        kind = "unbalanced"
    print(f"  class       = {kind}")
    print()


def main():
    describe("K_5", make_clique(5))
    describe("K_4", make_clique(4))
    describe("K_6", make_clique(6))
    describe("K_{3,3}", make_complete_bipartite(3, 3))
    describe("DD_4 (two K_4s sharing an edge)", make_double_barbell(4))
    print("Cliques K_r with r >= 5 are strictly balanced, so the sharpest")
    print("witness bounds apply; K_4 is balanced but V* = {2, 3} makes the")
    print("gap xi undefined and the Case-2 count bound inapplicable.")


if __name__ == "__main__":
    main()
