#!/usr/bin/env python3
"""Convergence study for recovering the angle marginal from the Wigner
function by a truncated action sum.

For each state index the residual against the closed form
theta_3(theta) |R_n(theta)|^2 is tabulated over a doubling ladder of
m_cut values together with the observed convergence order (expected ~2:
the symmetric window cancels the two alternating sinc tails in leading
order).

Usage:
    python scripts/mcut_convergence.py --mu 0.5 --n 0 1 3 --theta 1.0
"""

import argparse
import math

from qps import QParam, angle_distribution, angle_distribution_from_wigner


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mu", type=float, default=0.5)
    parser.add_argument("--n", type=int, nargs="+", default=[0, 1, 3])
    parser.add_argument("--theta", type=float, default=1.0)
    parser.add_argument("--m-cuts", type=int, nargs="+",
                        default=[50, 100, 200, 400, 800, 1600])
    args = parser.parse_args()

    qp = QParam.from_mu(args.mu)
    print(f"mu={args.mu}  theta={args.theta}")
    header = "  n | " + " | ".join(f"m_cut={m:<6d}" for m in args.m_cuts) + " | orders"
    print(header)
    print("-" * len(header))
    for n in args.n:
        exact = angle_distribution(n, args.theta, qp, 1e-13)
        errs = [
            abs(angle_distribution_from_wigner(n, args.theta, qp, m, 1e-13) - exact)
            for m in args.m_cuts
        ]
        orders = [
            math.log2(errs[i] / errs[i + 1]) if errs[i + 1] > 0 else float("inf")
            for i in range(len(errs) - 1)
        ]
        err_cols = " | ".join(f"{e:12.3e}" for e in errs)
        order_str = ", ".join(f"{o:.2f}" for o in orders)
        print(f"  {n} | {err_cols} | {order_str}")


if __name__ == "__main__":
    main()
