#!/usr/bin/env python3
"""Generate the success-probability / fidelity trade-off data over the
selection window, and optionally render it.

Writes fig2.csv (pc, ps, fidelity) next to an optional fig2.png.
"""

import argparse
import dataclasses
import pathlib

from sqlink import LinkParams, link_figures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=float, default=0.02)
    ap.add_argument("--stop", type=float, default=1.0)
    ap.add_argument("--step", type=float, default=0.02)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("fig2.csv"))
    ap.add_argument("--plot", action="store_true", help="also write a PNG next to the CSV")
    args = ap.parse_args()

    base = LinkParams()
    count = int((args.stop - args.start) / args.step + 1e-9) + 1
    grid = [args.start + i * args.step for i in range(count)]
    rows = [(pc, link_figures(dataclasses.replace(base, p_c=pc))) for pc in grid]

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("pc,ps,fidelity\n")
        for pc, figs in rows:
            fh.write(f"{pc:.12g},{figs.p_s:.12g},{figs.fidelity:.12g}\n")
    print(f"wrote {args.out} ({len(rows)} rows)")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        pcs = [pc for pc, _ in rows]
        fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
        ax1.plot(pcs, [f.p_s for _, f in rows])
        ax1.set_ylabel(r"$P_s$")
        ax2.plot(pcs, [f.fidelity for _, f in rows])
        ax2.set_ylabel(r"$F$")
        ax2.set_xlabel(r"selection window $p_c$")
        for ax in (ax1, ax2):
            ax.grid(alpha=0.3)
        png = args.out.with_suffix(".png")
        fig.tight_layout()
        fig.savefig(png, dpi=150)
        print(f"wrote {png}")


if __name__ == "__main__":
    main()
