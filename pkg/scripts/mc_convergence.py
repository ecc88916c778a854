#!/usr/bin/env python3
"""Monte Carlo convergence table: estimator error and standard error
versus sample count, against the closed forms and the exact-covariance
quadrature at the default operating point."""

import argparse

from sqlink import LinkParams, estimate_link, link_figures, quadrature_link_figures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=12345)
    ap.add_argument("--max-exp", type=int, default=7, help="largest sample count 10**k")
    args = ap.parse_args()

    params = LinkParams()
    figs = link_figures(params)
    q_ps, q_f = quadrature_link_figures(params)
    print(f"closed forms:   P_s = {figs.p_s:.8f}   F = {figs.fidelity:.8f}")
    print(f"exact (quad):   P_s = {q_ps:.8f}   F = {q_f:.8f}")
    print(f"{'n':>10} {'ps_hat':>12} {'err/sigma':>10} {'std_err':>12} {'f_hat':>12} {'err/sigma':>10}")
    for k in range(3, args.max_exp + 1):
        n = 10**k
        est = estimate_link(params, n, seed=args.seed)
        dev_ps = (est.p_s_hat - q_ps) / est.std_err_ps
        dev_f = (est.fidelity_hat - q_f) / est.std_err_f
        print(
            f"{n:>10} {est.p_s_hat:>12.6f} {dev_ps:>10.2f} {est.std_err_ps:>12.2e} "
            f"{est.fidelity_hat:>12.6f} {dev_f:>10.2f}"
        )


if __name__ == "__main__":
    main()
