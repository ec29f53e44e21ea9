"""Pure-Python reference kernels.

These are the semantics of record: the compiled core in ``_core.pyx`` must
produce bit-identical results (same splitmix64 stream, same accept/reject
decisions, same floating-point operation order).  Keep the two files in
lockstep when changing anything here.
"""

import math

BACKEND = "pure-python"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TO53 = 2.0**-53


def splitmix64_next(state):
    """Advance a splitmix64 state; returns (new_state, 64-bit output)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z ^= z >> 31
    return state, z


def unit_from_bits(z):
    """Map a 64-bit word to [0, 1) by filling the 53-bit mantissa."""
    return (z >> 11) * _TO53


def _neighbor_offsets(dim, rings):
    """All integer offset vectors in [-rings, rings]^dim, zero vector first."""
    span = range(-rings, rings + 1)
    offs = [()]
    for _ in range(dim):
        offs = [o + (v,) for o in offs for v in span]
    offs.sort(key=lambda o: (o != (0,) * dim, o))
    return offs


def dart_throw(dim, length, delta, target, seed, max_attempts):
    """Sequential dart throwing in [0, length)^dim with minimum distance delta.

    Returns (flat_coords, attempts) where flat_coords holds the accepted
    points row-major in acceptance order.  Stops when target points were
    accepted or max_attempts candidates were drawn.
    """
    cell = delta * (1.0 - 1e-9) / math.sqrt(dim)
    rings = int(delta / cell) + 1
    ncells = int(length / cell) + 2
    base = ncells + 2 * rings
    offsets = _neighbor_offsets(dim, rings)
    grid = {}
    accepted = []
    delta2 = delta * delta
    state = seed & _MASK64
    n = 0
    attempts = 0
    while n < target and attempts < max_attempts:
        attempts += 1
        cand = []
        for _ in range(dim):
            state, z = splitmix64_next(state)
            cand.append(unit_from_bits(z) * length)
        home = [int(cand[a] / cell) for a in range(dim)]
        ok = True
        for off in offsets:
            key = 0
            for a in range(dim):
                key = key * base + (home[a] + off[a] + rings)
            idx = grid.get(key)
            if idx is None:
                continue
            b = idx * dim
            d2 = 0.0
            for a in range(dim):
                t = accepted[b + a] - cand[a]
                d2 += t * t
            if d2 < delta2:
                ok = False
                break
        if ok:
            key = 0
            for a in range(dim):
                key = key * base + (home[a] + rings)
            grid[key] = n
            accepted.extend(cand)
            n += 1
    return accepted, attempts


def has_close_pair(flat, dim, threshold):
    """True iff some pair of points lies strictly closer than threshold.

    Grid-hash sweep with cell side threshold/sqrt(dim): two points sharing a
    cell are closer than threshold by construction, so each cell holds at
    most one accepted point and the scan is linear for separated inputs.
    """
    n = len(flat) // dim
    if n < 2:
        return False
    if threshold <= 0.0:
        return False
    lo = [min(flat[a::dim]) for a in range(dim)]
    cell = threshold * (1.0 - 1e-9) / math.sqrt(dim)
    rings = int(threshold / cell) + 1
    spans = [max(flat[a::dim]) - lo[a] for a in range(dim)]
    base = max(int(s / cell) + 2 for s in spans) + 2 * rings
    offsets = _neighbor_offsets(dim, rings)
    grid = {}
    thr2 = threshold * threshold
    for i in range(n):
        b = i * dim
        home = [int((flat[b + a] - lo[a]) / cell) for a in range(dim)]
        for off in offsets:
            key = 0
            for a in range(dim):
                key = key * base + (home[a] + off[a] + rings)
            j = grid.get(key)
            if j is None:
                continue
            jb = j * dim
            d2 = 0.0
            for a in range(dim):
                t = flat[jb + a] - flat[b + a]
                d2 += t * t
            if d2 < thr2:
                return True
        key = 0
        for a in range(dim):
            key = key * base + (home[a] + rings)
        grid[key] = i
    return False


def bin_cells(flat, dim, lo, width, ncells):
    """Assign each point its flat row-major cell index; also return counts.

    Per-axis index is floor((x - lo)/width) clamped to [0, ncells), which
    gives the half-closed subdivision semantics (right face of the parent
    box folds into the last cell).
    """
    n = len(flat) // dim
    cells = [0] * n
    counts = [0] * (ncells**dim)
    for i in range(n):
        b = i * dim
        f = 0
        for a in range(dim):
            c = math.floor((flat[b + a] - lo[a]) / width)
            if c < 0:
                c = 0
            elif c >= ncells:
                c = ncells - 1
            f = f * ncells + c
        cells[i] = f
        counts[f] += 1
    return cells, counts


def min_pairwise_sq(flat, dim):
    """Minimum squared pairwise distance (naive scan; callers keep n small)."""
    n = len(flat) // dim
    if n < 2:
        raise ValueError("need at least two points")
    best = math.inf
    for i in range(n):
        bi = i * dim
        for j in range(i + 1, n):
            bj = j * dim
            d2 = 0.0
            for a in range(dim):
                t = flat[bi + a] - flat[bj + a]
                d2 += t * t
            if d2 < best:
                best = d2
    return best


def max_pairwise_sq(flat, dim):
    """Maximum squared pairwise distance (naive scan)."""
    n = len(flat) // dim
    if n < 2:
        raise ValueError("need at least two points")
    best = 0.0
    for i in range(n):
        bi = i * dim
        for j in range(i + 1, n):
            bj = j * dim
            d2 = 0.0
            for a in range(dim):
                t = flat[bi + a] - flat[bj + a]
                d2 += t * t
            if d2 > best:
                best = d2
    return best
