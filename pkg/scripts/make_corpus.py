#!/usr/bin/env python3
"""Write the bundled synthetic corpus out as PNM files.

Useful for eyeballing the test content or feeding it to external codecs.
"""

import argparse
from pathlib import Path

from tlxs.pnm import store_pnm
from tlxs.synthetic import color_gradient_image, corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="corpus", help="output directory")
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument(
        "--depths", default="8,10,12", help="comma-separated bit depths"
    )
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for depth in (int(d) for d in args.depths.split(",")):
        for name, image in corpus(depth, args.size).items():
            path = out / f"{name}_n{depth}_{args.size}.pgm"
            store_pnm(image, str(path))
            print(path)
        color = color_gradient_image(args.size, args.size, depth)
        path = out / f"color_n{depth}_{args.size}.ppm"
        store_pnm(color, str(path))
        print(path)


if __name__ == "__main__":
    main()
