"""Sector description for numeric sampling."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = ["SectorSpec", "parse_sector"]


@dataclass(frozen=True)
class SectorSpec:
    """Open sector ``|x| < radius``, ``|arg x - bisector| < opening/2`` (degrees)."""

    radius: float
    opening_deg: float
    bisector_deg: float = 0.0
    samples: int = 4

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("sector radius must be a positive finite number")
        if not 0 < self.opening_deg < 360:
            raise ValueError("sector opening must lie strictly between 0 and 360 degrees")
        if self.samples < 1:
            raise ValueError("sector needs at least one sample")
        lo = self.bisector_deg - self.opening_deg / 2
        hi = self.bisector_deg + self.opening_deg / 2
        # the principal log is used, so the sector must not straddle the negative axis
        if lo < -180 or hi > 180:
            raise ValueError("sector crosses the branch cut of the principal logarithm")

    def grid(self, radii=(0.5, 0.25)) -> list[complex]:
        """Sample points: a few radii times evenly spaced interior angles."""
        pts = []
        k = self.samples
        for f in radii:
            r = self.radius * f
            for j in range(k):
                frac = (j + 1) / (k + 1) - 0.5
                ang = math.radians(self.bisector_deg + frac * self.opening_deg)
                pts.append(cmath.rect(r, ang))
        return pts

    def to_json(self) -> dict:
        return {"radius": self.radius, "opening_deg": self.opening_deg, "bisector_deg": self.bisector_deg}


def parse_sector(text: str) -> SectorSpec:
    """``"R,OPEN,BIS"`` as used on the command line."""
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("sector must be given as RADIUS,OPENING_DEG,BISECTOR_DEG")
    r, o, b = (float(p) for p in parts)
    return SectorSpec(r, o, b)
