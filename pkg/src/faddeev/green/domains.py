"""Computational domains of the plane used by the Green's function dispatch.

Radii 0.2 / 0.5 / 1 / 2.5 split the plane into the inner disk D1a, the
annuli D1b and D1c, the working annulus (sectors A2..A7) and FAR. Sector
lines are x2 = +-0.5 x1 and x1 = 0. Points on a boundary go to the region
with the smaller tag.
"""
from __future__ import annotations

import enum

import numpy as np

R_D1A = 0.2
R_D1B = 0.5
R_D1C = 1.0
R_ANNULUS = 2.5


class DomainTag(enum.IntEnum):
    D1a = 0
    D1b = 1
    D1c = 2
    A2 = 3
    A3 = 4
    A4 = 5
    A5 = 6
    A6 = 7
    A7 = 8
    FAR = 9


# contour variant and whether the x1-switch (conjugation) is applied
SECTOR_VARIANT = {
    DomainTag.A2: ("T1", False),
    DomainTag.A3: ("T2", False),
    DomainTag.A4: ("T2", True),
    DomainTag.A5: ("T1", True),
    DomainTag.A6: ("T3", True),
    DomainTag.A7: ("T3", False),
}


def classify_sector(x1, x2):
    """Sector tag (A2..A7) of each point, ignoring the radius."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    half = 0.5 * x1
    out = np.full(np.broadcast(x1, x2).shape, int(DomainTag.A6), dtype=np.int8)
    # assigned in reverse tag order so smaller tags overwrite on ties
    out[(x1 > 0) & (x2 < -half)] = DomainTag.A7
    out[(x1 <= 0) & (x2 < half)] = DomainTag.A6
    out[(x1 < 0) & (x2 >= half) & (x2 < -half)] = DomainTag.A5
    out[(x1 < 0) & (x2 >= -half)] = DomainTag.A4
    out[(x1 >= 0) & (x2 > half)] = DomainTag.A3
    out[(x1 > 0) & (np.abs(x2) <= half)] = DomainTag.A2
    return out


def classify_domains(x1, x2):
    """Vectorized tags as int8 codes of :class:`DomainTag`."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    r = np.hypot(x1, x2)
    if np.any(r == 0):
        raise ValueError("z = 0 is the singular point of g")
    out = classify_sector(x1, x2)
    out[r > R_ANNULUS] = DomainTag.FAR
    out[r <= R_D1C] = DomainTag.D1c
    out[r <= R_D1B] = DomainTag.D1b
    out[r <= R_D1A] = DomainTag.D1a
    return out


def classify_domain(z) -> DomainTag:
    """Tag of a single point given as (x1, x2) or complex."""
    if isinstance(z, complex) or np.iscomplexobj(z):
        x1, x2 = complex(z).real, complex(z).imag
    else:
        x1, x2 = z
    return DomainTag(int(classify_domains(np.array([x1]), np.array([x2]))[0]))
