# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Mirrors ``_fallback.py`` operation for operation; results must stay
bit-identical (same splitmix64 stream, same acceptance decisions, same
floating-point operation order; built with -ffp-contract=off).
The dispatch layer in ``__init__.py`` only routes here when the flat grid
fits the memory cap, so allocations below are bounded.
"""

from libc.math cimport floor as c_floor
from libc.math cimport sqrt as c_sqrt
from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND = "compiled"

ctypedef unsigned long long u64

cdef u64 _GAMMA = 0x9E3779B97F4A7C15ULL
cdef u64 _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef u64 _MIX2 = 0x94D049BB133111EBULL
cdef double _TO53 = 1.0 / 9007199254740992.0


cdef inline u64 _mix(u64 z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


def splitmix64_next(state):
    """Advance a splitmix64 state; returns (new_state, 64-bit output)."""
    cdef u64 s = <u64> (state & 0xFFFFFFFFFFFFFFFFULL)
    s = s + _GAMMA
    return s, _mix(s)


def unit_from_bits(z):
    """Map a 64-bit word to [0, 1) by filling the 53-bit mantissa."""
    cdef u64 zz = <u64> (z & 0xFFFFFFFFFFFFFFFFULL)
    return <double> (zz >> 11) * _TO53


def dart_throw(int dim, double length, double delta, long target,
               seed, long long max_attempts):
    """Sequential dart throwing in [0, length)^dim with minimum distance delta."""
    cdef double cell = delta * (1.0 - 1e-9) / c_sqrt(<double> dim)
    cdef int rings = <int> (delta / cell) + 1
    cdef long long ncells = <long long> (length / cell) + 2
    cdef long long total = 1
    cdef int a
    for a in range(dim):
        total *= ncells
    cdef long *grid = <long *> malloc(total * sizeof(long))
    cdef double *acc = <double *> malloc(target * dim * sizeof(double))
    cdef int *off = <int *> malloc(dim * sizeof(int))
    cdef long long *home = <long long *> malloc(dim * sizeof(long long))
    if grid == NULL or acc == NULL or off == NULL or home == NULL:
        free(grid); free(acc); free(off); free(home)
        raise MemoryError()
    memset(grid, 0xFF, total * sizeof(long))  # all -1

    cdef u64 state = <u64> (seed & 0xFFFFFFFFFFFFFFFFULL)
    cdef u64 z
    cdef double cand[16]
    cdef double delta2 = delta * delta
    cdef double d2, t
    cdef long n = 0, occupant
    cdef long long attempts = 0, key, c
    cdef int axis, ok, carry
    try:
        while n < target and attempts < max_attempts:
            attempts += 1
            for axis in range(dim):
                state = state + _GAMMA
                z = _mix(state)
                cand[axis] = (<double> (z >> 11) * _TO53) * length
            for axis in range(dim):
                home[axis] = <long long> (cand[axis] / cell)
            ok = 1
            # odometer over neighbor offsets in [-rings, rings]^dim
            for axis in range(dim):
                off[axis] = -rings
            while True:
                key = 0
                for axis in range(dim):
                    c = home[axis] + off[axis]
                    if c < 0 or c >= ncells:
                        key = -1
                        break
                    key = key * ncells + c
                if key >= 0:
                    occupant = grid[key]
                    if occupant >= 0:
                        d2 = 0.0
                        for axis in range(dim):
                            t = acc[occupant * dim + axis] - cand[axis]
                            d2 += t * t
                        if d2 < delta2:
                            ok = 0
                            break
                # advance odometer
                carry = 1
                for axis in range(dim - 1, -1, -1):
                    off[axis] += 1
                    if off[axis] <= rings:
                        carry = 0
                        break
                    off[axis] = -rings
                if carry:
                    break
            if ok:
                key = 0
                for axis in range(dim):
                    key = key * ncells + home[axis]
                grid[key] = n
                for axis in range(dim):
                    acc[n * dim + axis] = cand[axis]
                n += 1
        out = [acc[i] for i in range(n * dim)]
        return out, attempts
    finally:
        free(grid); free(acc); free(off); free(home)


def has_close_pair(flat, int dim, double threshold):
    """True iff some pair of points lies strictly closer than threshold."""
    cdef long n = len(flat) // dim
    if n < 2 or threshold <= 0.0:
        return False
    cdef double *pts = <double *> malloc(n * dim * sizeof(double))
    cdef double *lo = <double *> malloc(dim * sizeof(double))
    cdef int *off = <int *> malloc(dim * sizeof(int))
    cdef long long *home = <long long *> malloc(dim * sizeof(long long))
    if pts == NULL or lo == NULL or off == NULL or home == NULL:
        free(pts); free(lo); free(off); free(home)
        raise MemoryError()
    cdef long i, j
    cdef int axis
    for i in range(n * dim):
        pts[i] = flat[i]
    for axis in range(dim):
        lo[axis] = pts[axis]
    for i in range(n):
        for axis in range(dim):
            if pts[i * dim + axis] < lo[axis]:
                lo[axis] = pts[i * dim + axis]
    cdef double cell = threshold * (1.0 - 1e-9) / c_sqrt(<double> dim)
    cdef int rings = <int> (threshold / cell) + 1
    cdef long long ncells = 0, span_cells
    cdef double span
    for axis in range(dim):
        span = 0.0
        for i in range(n):
            if pts[i * dim + axis] - lo[axis] > span:
                span = pts[i * dim + axis] - lo[axis]
        span_cells = <long long> (span / cell) + 2
        if span_cells > ncells:
            ncells = span_cells
    cdef long long total = 1
    for axis in range(dim):
        total *= ncells
    cdef long *grid = <long *> malloc(total * sizeof(long))
    if grid == NULL:
        free(pts); free(lo); free(off); free(home)
        raise MemoryError()
    memset(grid, 0xFF, total * sizeof(long))
    cdef double thr2 = threshold * threshold
    cdef double d2, t
    cdef long long key, c
    cdef long occupant
    cdef int carry, hit = 0
    try:
        for i in range(n):
            for axis in range(dim):
                home[axis] = <long long> ((pts[i * dim + axis] - lo[axis]) / cell)
            for axis in range(dim):
                off[axis] = -rings
            while True:
                key = 0
                for axis in range(dim):
                    c = home[axis] + off[axis]
                    if c < 0 or c >= ncells:
                        key = -1
                        break
                    key = key * ncells + c
                if key >= 0:
                    occupant = grid[key]
                    if occupant >= 0:
                        d2 = 0.0
                        for axis in range(dim):
                            t = pts[occupant * dim + axis] - pts[i * dim + axis]
                            d2 += t * t
                        if d2 < thr2:
                            hit = 1
                            break
                carry = 1
                for axis in range(dim - 1, -1, -1):
                    off[axis] += 1
                    if off[axis] <= rings:
                        carry = 0
                        break
                    off[axis] = -rings
                if carry:
                    break
            if hit:
                return True
            key = 0
            for axis in range(dim):
                key = key * ncells + home[axis]
            grid[key] = i
        return False
    finally:
        free(grid); free(pts); free(lo); free(off); free(home)


def bin_cells(flat, int dim, lo, double width, int ncells):
    """Flat row-major cell index per point plus per-cell counts."""
    cdef long n = len(flat) // dim
    cdef long long total = 1
    cdef int axis
    for axis in range(dim):
        total *= ncells
    cdef double *pts = <double *> malloc(n * dim * sizeof(double)) if n else NULL
    cdef double *low = <double *> malloc(dim * sizeof(double))
    cdef long long *cel = <long long *> malloc(n * sizeof(long long)) if n else NULL
    cdef long *cnt = <long *> malloc(total * sizeof(long))
    if low == NULL or cnt == NULL or (n and (pts == NULL or cel == NULL)):
        free(pts); free(low); free(cel); free(cnt)
        raise MemoryError()
    cdef long i
    cdef long long f, ci
    for i in range(n * dim):
        pts[i] = flat[i]
    for axis in range(dim):
        low[axis] = lo[axis]
    for i in range(total):
        cnt[i] = 0
    try:
        for i in range(n):
            f = 0
            for axis in range(dim):
                ci = <long long> c_floor((pts[i * dim + axis] - low[axis]) / width)
                if ci < 0:
                    ci = 0
                elif ci >= ncells:
                    ci = ncells - 1
                f = f * ncells + ci
            cel[i] = f
            cnt[f] += 1
        cells = [cel[i] for i in range(n)]
        counts = [cnt[i] for i in range(total)]
        return cells, counts
    finally:
        free(pts); free(low); free(cel); free(cnt)


def min_pairwise_sq(flat, int dim):
    """Minimum squared pairwise distance (naive scan)."""
    cdef long n = len(flat) // dim
    if n < 2:
        raise ValueError("need at least two points")
    cdef double *pts = <double *> malloc(n * dim * sizeof(double))
    if pts == NULL:
        raise MemoryError()
    cdef long i, j
    cdef int axis
    cdef double best = float("inf"), d2, t
    for i in range(n * dim):
        pts[i] = flat[i]
    try:
        for i in range(n):
            for j in range(i + 1, n):
                d2 = 0.0
                for axis in range(dim):
                    t = pts[i * dim + axis] - pts[j * dim + axis]
                    d2 += t * t
                if d2 < best:
                    best = d2
        return best
    finally:
        free(pts)


def max_pairwise_sq(flat, int dim):
    """Maximum squared pairwise distance (naive scan)."""
    cdef long n = len(flat) // dim
    if n < 2:
        raise ValueError("need at least two points")
    cdef double *pts = <double *> malloc(n * dim * sizeof(double))
    if pts == NULL:
        raise MemoryError()
    cdef long i, j
    cdef int axis
    cdef double best = 0.0, d2, t
    for i in range(n * dim):
        pts[i] = flat[i]
    try:
        for i in range(n):
            for j in range(i + 1, n):
                d2 = 0.0
                for axis in range(dim):
                    t = pts[i * dim + axis] - pts[j * dim + axis]
                    d2 += t * t
                if d2 > best:
                    best = d2
        return best
    finally:
        free(pts)
