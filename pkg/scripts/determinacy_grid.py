"""Map the existence region over the policy-reaction plane.

Writes a CSV of classifications on an (a_pi, a_y) grid for the small-noise
system, suitable for region plots.  The existence frontier sits at
a_pi = 1 for every output reaction.
"""

import argparse
import csv
import sys
from dataclasses import replace

import numpy as np

from calvobench.determinacy import classify_params
from calvobench.model_core import preset


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="benchmark")
    ap.add_argument("--n", type=int, default=41)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    p0 = preset(args.preset)
    out = sys.stdout if args.out == "-" else open(args.out, "w")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["a_pi", "a_y", "classification"])
    for api in np.linspace(0.0, 2.0, args.n):
        for ay in np.linspace(0.0, 2.5, args.n):
            rpt = classify_params(replace(p0, a_pi=float(api), a_y=float(ay)))
            w.writerow([f"{api:.4f}", f"{ay:.4f}", rpt.classification])
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
