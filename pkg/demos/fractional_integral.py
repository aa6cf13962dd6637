"""Riemann-Liouville integrals: a few values and the L^1 function whose
half-order integrals fail to be square integrable."""

import math

from geoxform.fracint import PsiParams, divergence_probe, psi_l1_closed_form, rl_lower

print("I^1/2 of 1 at x = 1:", rl_lower(0.5, 0.0, lambda y: 1.0, 1.0), "want", 2 / math.sqrt(math.pi))


def half(x):
    return rl_lower(0.5, 0.0, math.cos, x) if x > 0 else 0.0


print("I^1/2 I^1/2 cos at 0.8:", rl_lower(0.5, 0.0, half, 0.8), "want", math.sin(0.8))

psi = PsiParams()
print("psi L1 norm:", psi_l1_closed_form(psi.a, psi.gamma))
res = divergence_probe("IHalfPlus_L2", psi)
print("truncated L2 norms:", ", ".join(f"{v:.4g}" for v in res.values), "->", res.verdict)
