"""Locate a percolation threshold by Monte Carlo bisection.

For the K_3 rule, percolation of G(n, p) is exactly connectivity, so the
estimated threshold should track log(n)/n. The curve shows the sharp
transition; the bisection zooms in on the p where half the samples
percolate. Every trial draws from a counter-based generator keyed by
(probe, trial), so results are identical for any WSAT_THREADS setting.
"""

import math

from wsatlab.graphs import make_clique
from wsatlab.experiments import bisect_pc, percolation_curve


def main():
    n = 80
    k3 = make_clique(3)
    marker = math.log(n) / n

    print(f"percolation curve for K_3 on G({n}, p), 100 trials per point:")
    grid = [marker * f for f in (0.4, 0.7, 1.0, 1.4, 2.0)]
    for pt in percolation_curve(n, k3, grid, trials=100, master_seed=11):
        bar = "#" * round(40 * pt.fraction)
        print(f"  p={pt.p:.4f}  {pt.fraction:5.2f}  {bar}")
    print()

    est = bisect_pc(n, k3, trials=200, tolerance=0.05, master_seed=29)
    print(f"bisection estimate: p_hat={est.p_hat:.4f} after "
          f"{len(est.probes)} probes (converged: {est.converged})")
    print(f"log(n)/n marker:    {marker:.4f}  "
          f"(ratio {est.p_hat / marker:.2f})")


if __name__ == "__main__":
    main()
