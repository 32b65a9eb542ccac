"""
Node sets on circles, spheres and caps
圆周、球面与球冠上的节点集
"""

import math
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import null_space
from scipy.special import ndtri
from scipy.stats import qmc

from ..geometry.shapes import intersect_intervals, wrapped_arc


ARC_MIN_NODES = 4


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]"""
    nodes, weights = leggauss(int(order))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_gauss(a: float, b: float, panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre rule on [a, b]

    Args:
        a: Left end
        b: Right end
        panels: Number of equal panels
        order: Nodes per panel

    Returns:
        tuple: (nodes, weights) with weights summing to b - a
    """
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def circle_directions(n: int, offset: float = 0.5, start: float = 0.0) -> np.ndarray:
    """n equispaced unit vectors at angles start + 2 pi (j + offset) / n"""
    angles = start + 2.0 * math.pi * (np.arange(n) + offset) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


def product_sphere_rule(n_azimuth: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Product rule on S^2: Gauss-Legendre in cos(polar angle) times uniform azimuth

    Args:
        n_azimuth: Azimuthal nodes; n_azimuth // 2 polar nodes

    Returns:
        tuple: (directions (N, 3), weights summing to 1)
    """
    n_polar = max(n_azimuth // 2, 1)
    t, w = gauss_legendre(n_polar)
    phi = 2.0 * math.pi * (np.arange(n_azimuth) + 0.5) / n_azimuth
    sin_polar = np.sqrt(1.0 - t ** 2)
    directions = np.stack([
        np.outer(sin_polar, np.cos(phi)),
        np.outer(sin_polar, np.sin(phi)),
        np.repeat(t[:, None], n_azimuth, axis=1)
    ], axis=-1).reshape(-1, 3)
    weights = np.repeat(w / 2.0, n_azimuth) / n_azimuth
    return directions, weights


def orthonormal_complement(axis: np.ndarray) -> np.ndarray:
    """Columns spanning the orthogonal complement of a unit axis, shape (m, m - 1)"""
    return null_space(np.asarray(axis, dtype=float).reshape(1, -1))


def cap_product_rule(axis: np.ndarray, half_angle: float, n_azimuth: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cap-adapted product rule on S^2

    Gauss-Legendre in c = cos(angle to axis) over [cos(half_angle), 1] times a
    uniform azimuth about the axis.

    Returns:
        tuple: (directions (N, 3), weights) with weights summing to the cap area on S^2
    """
    n_polar = max(n_azimuth // 2, 1)
    x, w = gauss_legendre(n_polar)
    low = math.cos(half_angle)
    c = 0.5 * (1.0 - low) * x + 0.5 * (1.0 + low)
    wc = 0.5 * (1.0 - low) * w
    phi = 2.0 * math.pi * (np.arange(n_azimuth) + 0.5) / n_azimuth
    basis = orthonormal_complement(axis)
    s = np.sqrt(np.clip(1.0 - c ** 2, 0.0, None))
    ring = np.cos(phi)[:, None] * basis[:, 0][None, :] + np.sin(phi)[:, None] * basis[:, 1][None, :]
    directions = (
        c[:, None, None] * np.asarray(axis)[None, None, :] + s[:, None, None] * ring[None, :, :]
    ).reshape(-1, 3)
    weights = np.repeat(wc, n_azimuth) * (2.0 * math.pi / n_azimuth)
    return directions, weights


def cap_intersection_rule(
    caps: Sequence[Tuple[np.ndarray, float]],
    n_azimuth: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Product rule on the intersection of open caps of S^2

    The first cap carries the polar coordinate c = cos(angle to its axis); on each
    ring the remaining caps cut out azimuth arcs that are found in closed form and
    integrated with Gauss-Legendre nodes. The polar range is split where a ring
    starts or stops meeting another cap.

    Args:
        caps: (axis, half_angle) pairs
        n_azimuth: Azimuthal resolution of a full ring

    Returns:
        tuple: (directions (N, 3), weights) with weights summing to the area of the intersection
    """
    axis = np.asarray(caps[0][0], dtype=float)
    half_angle = float(caps[0][1])
    basis = orthonormal_complement(axis)
    others = []
    cuts = {math.cos(half_angle), 1.0}
    for other_axis, other_half in caps[1:]:
        u = np.asarray(other_axis, dtype=float)
        along = float(axis @ u)
        across = basis.T @ u
        others.append((along, float(np.hypot(across[0], across[1])), math.atan2(across[1], across[0]),
                       math.cos(other_half)))
        phi = math.acos(min(1.0, max(-1.0, along)))
        for t in (abs(phi - other_half), phi + other_half, 2.0 * math.pi - phi - other_half):
            if 0.0 < t < half_angle:
                cuts.add(math.cos(t))
    edges = sorted(cuts)

    n_polar = max(n_azimuth // 2, 1)
    x, w = gauss_legendre(n_polar)
    # Arc widths behave like square roots at segment ends; the cubic map
    # g(x) = (3x - x^3) / 2 flattens both ends.
    stretched = 0.5 * (3.0 * x - x ** 3)
    jacobian = 1.5 * (1.0 - x ** 2)
    directions, weights = [], []
    for low, high in zip(edges[:-1], edges[1:]):
        c_nodes = 0.5 * (high - low) * stretched + 0.5 * (high + low)
        c_weights = 0.5 * (high - low) * w * jacobian
        for c, wc in zip(c_nodes, c_weights):
            s = math.sqrt(max(1.0 - c * c, 0.0))
            arcs = [(-math.pi, math.pi)]
            for along, spread, psi, threshold in others:
                if spread * s <= 1e-15:
                    if not c * along > threshold:
                        arcs = []
                    continue
                kappa = (threshold - c * along) / (spread * s)
                if kappa >= 1.0:
                    arcs = []
                elif kappa > -1.0:
                    arcs = intersect_intervals(arcs, wrapped_arc(psi, math.acos(kappa)))
            for start, end in arcs:
                n_arc = max(ARC_MIN_NODES, int(math.ceil(n_azimuth * (end - start) / (2.0 * math.pi))))
                t_nodes, t_weights = gauss_legendre(n_arc)
                phi = 0.5 * (end - start) * t_nodes + 0.5 * (end + start)
                ring = np.cos(phi)[:, None] * basis[:, 0][None, :] + np.sin(phi)[:, None] * basis[:, 1][None, :]
                directions.append(c * axis[None, :] + s * ring)
                weights.append(wc * 0.5 * (end - start) * t_weights)
    if not directions:
        return np.empty((0, 3)), np.empty(0)
    return np.vstack(directions), np.concatenate(weights)


def gaussian_directions(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """n independent uniform directions on S^{m-1} from normalized Gaussian vectors"""
    directions = rng.standard_normal((n, m))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    # A zero Gaussian vector has probability zero; redraw to keep the rule total.
    while (norms == 0).any():
        bad = norms[:, 0] == 0
        directions[bad] = rng.standard_normal((int(bad.sum()), m))
        norms = np.linalg.norm(directions, axis=1, keepdims=True)
    return directions / norms


def cap_directions(rng: np.random.Generator, axis: np.ndarray, half_angle: float, n: int) -> np.ndarray:
    """
    n uniform directions in an open cap of S^{m-1}, m >= 2

    The angle to the axis is drawn by rejection against the density
    sin^{m-2}, the remaining direction uniformly in the complement.
    """
    axis = np.asarray(axis, dtype=float)
    m = len(axis)
    basis = orthonormal_complement(axis)
    peak = math.sin(min(half_angle, math.pi / 2.0))
    angles = np.empty(0)
    batch = max(2 * n, 1024)
    while len(angles) < n:
        proposal = rng.uniform(0.0, half_angle, size=batch)
        if m > 2 and peak > 0:
            accept = rng.uniform(size=batch) < (np.sin(proposal) / peak) ** (m - 2)
            proposal = proposal[accept]
        angles = np.concatenate([angles, proposal])
    angles = angles[:n]
    if m == 2:
        sides = np.where(rng.uniform(size=n) < 0.5, -1.0, 1.0)
        rest = sides[:, None] * basis[:, 0][None, :]
    else:
        rest = gaussian_directions(rng, n, m - 1) @ basis.T
    return np.cos(angles)[:, None] * axis[None, :] + np.sin(angles)[:, None] * rest


def fibonacci_sphere(n: int) -> np.ndarray:
    """Quasi-uniform Fibonacci lattice of n points on S^2"""
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    phi = 2.0 * math.pi * k / golden
    s = np.sqrt(1.0 - z ** 2)
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def halton_directions(m: int, n: int, seed: int = 0) -> np.ndarray:
    """Quasi-uniform directions on S^{m-1} from a scrambled Halton sequence"""
    sampler = qmc.Halton(d=m, scramble=True, seed=seed)
    u = np.clip(sampler.random(n), 1e-12, 1.0 - 1e-12)
    directions = ndtri(u)
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def quasi_uniform_directions(m: int, n: int, seed: int = 0) -> np.ndarray:
    """
    Deterministic quasi-uniform directions on S^{m-1}

    Equispaced angles for m = 2, a Fibonacci lattice for m = 3, Halton points
    pushed through the normal quantile for m >= 4.
    """
    if m == 1:
        return np.array([[1.0], [-1.0]])
    if m == 2:
        return circle_directions(n, offset=0.0)
    if m == 3:
        return fibonacci_sphere(n)
    return halton_directions(m, n, seed)
