#!/usr/bin/env python3
"""Regenerate the bundled 256x256 P6 test fixtures from scikit-image sample data.

Each source image is center-cropped to a square and resampled with a Lanczos
filter. Output is written in canonical P6 form (no comments).
"""
import argparse
import os

import numpy as np
from PIL import Image
from skimage import data

SOURCES = {
    "astronaut": data.astronaut,
    "chelsea": data.chelsea,
    "coffee": data.coffee,
    "motorcycle": data.stereo_motorcycle,
    "rocket": data.rocket,
    "ihc": data.immunohistochemistry,
}


def load(name):
    img = SOURCES[name]()
    if isinstance(img, tuple):
        img = img[0]
    return np.asarray(img)[..., :3].astype(np.uint8)


def square_resize(arr, size):
    h, w = arr.shape[:2]
    side = min(h, w)
    top, left = (h - side) // 2, (w - side) // 2
    crop = Image.fromarray(arr[top:top + side, left:left + side])
    return np.asarray(crop.resize((size, size), Image.LANCZOS), dtype=np.uint8)


def write_ppm(path, arr):
    h, w = arr.shape[:2]
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        f.write(arr.tobytes())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures"))
    ap.add_argument("--size", type=int, default=256)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name in SOURCES:
        path = os.path.join(args.out, f"{name}.ppm")
        write_ppm(path, square_resize(load(name), args.size))
        print(path)


if __name__ == "__main__":
    main()
