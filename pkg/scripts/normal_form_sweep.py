#!/usr/bin/env python3
"""Emit critical-value diagrams of the Hopf normal form over a parameter grid.

Covers the standard picture: omega = 1, sigma = 1, nu in {-1/2, +1/2},
D in {1, -2} (both regimes, both unfolding directions).  Each combination
produces <out>/nu<+->_D<+->_curve.csv and ..._diagram.json in the formats
documented in hopfdiag.spectrum.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hopfdiag import spectrum
from hopfdiag.hopf import HopfParams


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out/normal_form",
                        help="output directory (default: %(default)s)")
    parser.add_argument("--samples", type=int, default=801,
                        help="curve samples per diagram (default: %(default)s)")
    args = parser.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for nu in (0.5, -0.5):
        for big_d in (1.0, -2.0):
            params = HopfParams(omega=1.0, sigma=1, nu=nu, D=big_d)
            diagram = spectrum.assemble_hopf_diagram(params, args.samples)
            tag = f"nu{'p' if nu > 0 else 'm'}_D{'p1' if big_d > 0 else 'm2'}"
            spectrum.write_curve_csv(diagram, out / f"{tag}_curve.csv")
            spectrum.write_diagram_json(diagram, out / f"{tag}_diagram.json")
            n_pts = sum(len(seg.points) for seg in diagram.segments)
            print(f"{tag}: regime={diagram.regime.value} "
                  f"segments={len(diagram.segments)} points={n_pts}")
    print(f"wrote datasets to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
