"""Locating the exponent frontier of the fractional maximal operator by dilation.

For M_a from a Lorentz-Morrey space with exponents (p, lam) into one with
(q, lam), dilating f(x) -> f(sigma x) multiplies the norm ratio by
sigma^(-(n - lam) * gap) where gap = 1/q - (1/p - a/(n - lam)). On the
frontier (gap = 0) the ratio is flat in sigma; off it the ratio drifts like
4^|gap| across sigma in [1/4, 4].

Run with ``python demos/frontier_dilation.py`` (about 15 seconds).
"""
import numpy as np

from lomo import make_domain
from lomo.verify import checks

p, alpha, lam = 1.5, 0.25, 0.5
dom = make_domain(1, 4.0, 512)
base = checks.dilation_base()
inv_q = 1 / p - alpha / (1 - lam)

print(f"balanced 1/q = {inv_q:.4f}")
for shift in (0.0, 0.15, 0.3, 0.6, -0.15):
    q = 1 / (inv_q + shift)
    rep = checks.check_theorem32_dilation(base, p, p, q, q, alpha, lam, domain=dom,
                                          enforce_hypotheses=False)
    R = np.asarray(rep.details["R"])
    print(f"shift {shift:+.2f}: max/min = {R.max() / R.min():.3f} "
          f"(predicted {4 ** abs(shift):.3f}), classified {rep.details['classified']}")
