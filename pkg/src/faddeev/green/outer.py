"""Sector dispatch of the contour formulas in the reduced frame (|w| >= 1)."""
from __future__ import annotations

import numpy as np

from ..spectral import ReducedZeta
from .contour import eval_contour_batch
from .domains import SECTOR_VARIANT, classify_sector


def eval_outer(x1, x2, red: ReducedZeta):
    """g_red at reduced-frame points using the sector rules A2..A7.

    Points with x1 < 0 are mapped by the switch g(-x1, x2) = conj g(x1, x2).
    Valid for any nonzero point; panel counts are calibrated for |w| >= 1.
    """
    x1 = np.atleast_1d(np.asarray(x1, dtype=float))
    x2 = np.atleast_1d(np.asarray(x2, dtype=float))
    out = np.empty(x1.shape, dtype=complex)
    tags = classify_sector(x1, x2)
    for tag, (variant, switch) in SECTOR_VARIANT.items():
        sel = tags == tag
        if not np.any(sel):
            continue
        a = -x1[sel] if switch else x1[sel]
        val = eval_contour_batch(a, x2[sel], red, variant)
        out[sel] = np.conj(val) if switch else val
    return out
