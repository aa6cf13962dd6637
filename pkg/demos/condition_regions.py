"""Scan the weighted L^p -> L^p condition on the sphere over (p, beta2).

A '#' marks parameters where the necessary condition holds.
"""

import numpy as np

from geoxform.verify import condition_check

betas = np.linspace(-3, 1, 17)
print(f"beta2 from {betas[0]} to {betas[-1]} in steps of {betas[1] - betas[0]}; region is beta2 >= -1")
for p in (1.0, 1.25, 1.5, 2.0, 3.0):
    marks = []
    for b2 in betas:
        rep = condition_check("SnLpLp", dict(n=3, k=1, p=p, alpha1=0, alpha2=0, beta1=0, beta2=float(b2)))
        marks.append("#" if rep.necessary_ok else ".")
    print(f"p={p:<5}  " + "".join(marks))
