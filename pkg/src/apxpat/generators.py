"""Deterministic test-input generators.

All randomness comes from a splitmix64 stream seeded by the caller, with
the 53-bit mantissa-fill mapping to [0, 1); outputs are therefore
bit-identical across runs, platforms, and kernel backends.
"""

from __future__ import annotations

from . import _kernels
from .bounds import ball_volume
from .errors import InfeasibleGeneration
from .geometry import PointSet

__all__ = ["gen_random_separated", "gen_jittered_lattice", "gen_adversarial_ap3"]

_ATTEMPT_FACTOR = 1_000_000


def gen_random_separated(
    d: int, length: float, delta: float, target_count: int, seed: int
) -> PointSet:
    """Dart throwing: uniform candidates in [0, length)^d, accepted while
    keeping the set delta-separated, until target_count points stand."""
    if int(d) != d or d < 1:
        raise ValueError("dimension must be a positive integer")
    d = int(d)
    length = float(length)
    delta = float(delta)
    if not (length > 0.0 and delta > 0.0):
        raise ValueError("length and delta must be positive")
    target_count = int(target_count)
    if target_count < 1:
        raise ValueError("target_count must be >= 1")
    if target_count * ball_volume(d, delta / 2.0) > (length + delta) ** d:
        raise InfeasibleGeneration(
            f"{target_count} balls of radius {delta / 2:g} cannot pack into "
            f"side {length:g} plus slack"
        )
    flat, attempts = _kernels.dart_throw(
        d, length, delta, target_count, int(seed), _ATTEMPT_FACTOR * target_count
    )
    n = len(flat) // d
    if n < target_count:
        raise InfeasibleGeneration(
            f"accepted only {n}/{target_count} points after {attempts} attempts"
        )
    return PointSet(d, [tuple(flat[i * d : (i + 1) * d]) for i in range(n)])


def gen_jittered_lattice(d: int, length: float, jitter: float, seed: int) -> PointSet:
    """One point per unit cell of the integer lattice in [0, length)^d,
    placed at the cell center plus uniform jitter in [-jitter, jitter]^d.

    The output is (1 - 2*jitter)-separated and every unit cell is occupied.
    """
    if int(d) != d or d < 1:
        raise ValueError("dimension must be a positive integer")
    d = int(d)
    length = float(length)
    if length < 1.0:
        raise ValueError("length must be >= 1")
    jitter = float(jitter)
    if not (0.0 <= jitter < 0.5):
        raise ValueError("jitter must lie in [0, 0.5)")
    n_side = int(length)
    state = int(seed) & ((1 << 64) - 1)
    pts: list[tuple[float, ...]] = []
    # Lexicographic cell order, axis order within a cell: fixed stream layout.
    cell = [0] * d
    total = n_side**d
    for _ in range(total):
        coords = []
        for a in range(d):
            state, z = _kernels.splitmix64_next(state)
            u = _kernels.unit_from_bits(z)
            coords.append(cell[a] + 0.5 + (2.0 * u - 1.0) * jitter)
        pts.append(tuple(coords))
        for a in range(d - 1, -1, -1):
            cell[a] += 1
            if cell[a] < n_side:
                break
            cell[a] = 0
    return PointSet(d, pts)


def gen_adversarial_ap3(n: int, variant: str, eps: float | None = None) -> PointSet:
    """Geometric sequences in (0, 1] with no eps-approximate 3-term AP.

    variant "xi": {xi^i} with xi = 1/3 - eps, valid for 0 <= eps < 1/3.
    variant "eighth": {8^-i}, valid for every eps <= 1/4 (eps is ignored).
    """
    if int(n) != n or n < 3:
        raise ValueError("n must be an integer >= 3")
    n = int(n)
    if variant == "xi":
        if eps is None or not (0.0 <= eps < 1.0 / 3.0):
            raise ValueError("variant 'xi' needs eps in [0, 1/3)")
        xi = 1.0 / 3.0 - float(eps)
        vals = [xi**i for i in range(n)]
    elif variant == "eighth":
        vals = [8.0**-i for i in range(n)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return PointSet(1, [(v,) for v in vals])
