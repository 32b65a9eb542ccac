"""
Radii sequences confined to a ratio window
比值窗口内的半径序列
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import BadRadii, NotIncreasing, RatioWindowInfeasible


RATIO_SLACK = 1e-12
MIN_RAW_RADII = 4


@dataclass(frozen=True)
class RadiiSequence:
    """Strictly increasing radii with q <= r_{k+1} / r_k <= Q"""

    radii: Tuple[float, ...]
    q: float
    Q: float

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 2:
            raise BadRadii("a radii sequence needs at least two radii")
        if radii[0] <= 0:
            raise BadRadii(f"radii must be positive, got {radii[0]}")
        if not self.q > 1:
            raise BadRadii(f"q must exceed 1, got {self.q}")
        if not self.Q >= self.q:
            raise BadRadii(f"Q must be at least q, got q = {self.q}, Q = {self.Q}")
        ratios = np.asarray(radii[1:]) / np.asarray(radii[:-1])
        if not (np.diff(radii) > 0).all():
            raise NotIncreasing("radii must be strictly increasing")
        low = self.q * (1.0 - RATIO_SLACK)
        high = self.Q * (1.0 + RATIO_SLACK)
        if (ratios < low).any() or (ratios > high).any():
            raise RatioWindowInfeasible(
                f"ratios {ratios.min():g}..{ratios.max():g} leave the window [{self.q:g}, {self.Q:g}]"
            )
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "Q", float(self.Q))

    def __len__(self) -> int:
        return len(self.radii)

    @property
    def ratios(self) -> List[float]:
        return [b / a for a, b in zip(self.radii, self.radii[1:])]

    @classmethod
    def geometric(cls, first: float, ratio: float, count: int) -> "RadiiSequence":
        """first * ratio^k for k = 1..count, with q = Q = ratio"""
        return cls(tuple(first * ratio ** k for k in range(1, count + 1)), ratio, ratio)


def thin_to_ratio_window(raw: Sequence[float], q: float, Q: float) -> RadiiSequence:
    """
    Thin an increasing sequence so consecutive ratios fall in [q, Q]

    Greedy from raw[0]: repeatedly keep the smallest later element whose ratio to
    the last kept one is at least q. The first element is always kept.

    Args:
        raw: Strictly increasing positive radii, at least 4
        q: Lower ratio, > 1
        Q: Upper ratio; Q >= q^2 guarantees the thinning when raw ratios stay below Q / q

    Returns:
        RadiiSequence: The thinned sequence

    Raises:
        RatioWindowInfeasible: If a greedy step overshoots Q
        NotIncreasing: If raw is not strictly increasing
    """
    raw = [float(r) for r in raw]
    if not q > 1:
        raise BadRadii(f"q must exceed 1, got {q}")
    if not Q >= q:
        raise BadRadii(f"Q must be at least q, got q = {q}, Q = {Q}")
    if not raw or raw[0] <= 0:
        raise BadRadii("raw radii must be positive")
    if any(b <= a for a, b in zip(raw, raw[1:])):
        raise NotIncreasing("raw radii must be strictly increasing")
    if Q < q * q:
        logger.warning(f"Q = {Q:g} < q^2 = {q * q:g}: greedy thinning may overshoot")
    raw_ratios = [b / a for a, b in zip(raw, raw[1:])]
    if raw_ratios and max(raw_ratios) > Q / q:
        logger.warning(f"raw ratio {max(raw_ratios):g} exceeds Q/q = {Q / q:g}")

    kept = [raw[0]]
    for r in raw[1:]:
        ratio = r / kept[-1]
        if ratio >= q * (1.0 - RATIO_SLACK):
            if ratio > Q * (1.0 + RATIO_SLACK):
                raise RatioWindowInfeasible(
                    f"step {kept[-1]:g} -> {r:g} has ratio {ratio:g} > Q = {Q:g}"
                )
            kept.append(r)

    if len(raw) < MIN_RAW_RADII:
        raise BadRadii(f"need at least {MIN_RAW_RADII} raw radii, got {len(raw)}")
    logger.debug(f"thinned {len(raw)} radii to {len(kept)} in [{q:g}, {Q:g}]")
    return RadiiSequence(tuple(kept), q, Q)
