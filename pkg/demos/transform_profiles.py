"""Totally geodesic k-plane transforms of a ball indicator in the three model spaces.

Prints R_k f(h) for a radial ball profile, comparing the one-dimensional
radial formula with the direct integral over a randomly oriented plane.
"""

import numpy as np

from geoxform.general_transform import AmbientFunction, kplane_general
from geoxform.geometry import Space, random_coord
from geoxform.radial_transform import ball_profile, kplane_radial

rng = np.random.default_rng(0)
print(f"{'space':>5} {'h':>5} {'radial':>14} {'direct':>14}")
for tag in ("rn", "hn", "sn"):
    space = Space(tag, 4)
    prof = ball_profile(space, 1.0)
    for h in (0.1, 0.5, 0.9):
        radial = kplane_radial(space, 2, prof, h)
        direct = kplane_general(space, random_coord(space, 2, h, rng), AmbientFunction.from_profile(space, prof))
        print(f"{tag:>5} {h:5.2f} {radial:14.10f} {direct:14.10f}")
