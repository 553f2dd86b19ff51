"""Hot numeric kernels.

Every kernel exists twice: a numba version (``*_numba``) and a pure-numpy
version (``*_numpy``). The public name is bound to the numba version unless
numba is missing or ``ENTANGLED_GUP_DISABLE_NUMBA`` is set. Both paths agree
to round-off; ``benchmarks/bench_kernels.py`` times them against each other.
"""
import numpy as np

from ._accel import USE_NUMBA, njit, prange

# Integer codes for the deformation families, shared with gup_models.
HUP, KMM, ADV, PEDRAM, EXP = 0, 1, 2, 3, 4


# -- deterministic reductions ------------------------------------------------

@njit(cache=True)
def _pairwise_sum_numba(values):
    n = values.shape[0]
    if n == 0:
        return 0.0
    buf = values.copy()
    m = n
    while m > 1:
        half = m // 2
        for i in range(half):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if m % 2 == 1:
            buf[half] = buf[m - 1]
            m = half + 1
        else:
            m = half
    return buf[0]


def _pairwise_sum_numpy(values):
    buf = np.asarray(values, dtype=np.float64)
    if buf.size == 0:
        return 0.0
    while buf.size > 1:
        if buf.size % 2 == 1:
            tail = buf[-1:]
            buf = np.concatenate((buf[:-1:2] + buf[1:-1:2], tail))
        else:
            buf = buf[0::2] + buf[1::2]
    return float(buf[0])


# -- grid moments ------------------------------------------------------------

@njit(cache=True, parallel=True)
def _row_sums_numba(rho, a2):
    n1, n2 = rho.shape
    tot = np.empty(n1)
    first = np.empty(n1)
    for i in prange(n1):
        s = 0.0
        s2 = 0.0
        for j in range(n2):
            r = rho[i, j]
            s += r
            s2 += r * a2[j]
        tot[i] = s
        first[i] = s2
    return tot, first


@njit(cache=True, parallel=True)
def _centered_rows_numba(rho, d2):
    n1, n2 = rho.shape
    v2 = np.empty(n1)
    c = np.empty(n1)
    for i in prange(n1):
        s = 0.0
        sc = 0.0
        for j in range(n2):
            r = rho[i, j] * d2[j]
            sc += r
            s += r * d2[j]
        v2[i] = s
        c[i] = sc
    return v2, c


@njit(cache=True)
def _grid_moments_numba(rho, a1, a2):
    tot, first = _row_sums_numba(rho, a2)
    total = _pairwise_sum_numba(tot)
    m1 = _pairwise_sum_numba(tot * a1) / total
    m2 = _pairwise_sum_numba(first) / total
    d1 = a1 - m1
    d2 = a2 - m2
    v2_rows, c_rows = _centered_rows_numba(rho, d2)
    out = np.empty(6)
    out[0] = total
    out[1] = m1
    out[2] = m2
    out[3] = _pairwise_sum_numba(tot * d1 * d1) / total
    out[4] = _pairwise_sum_numba(v2_rows) / total
    out[5] = _pairwise_sum_numba(c_rows * d1) / total
    return out


def _grid_moments_numpy(rho, a1, a2):
    rows = rho.sum(axis=1)
    cols = rho.sum(axis=0)
    total = rows.sum()
    m1 = rows @ a1 / total
    m2 = cols @ a2 / total
    d1 = a1 - m1
    d2 = a2 - m2
    return np.array([
        total,
        m1,
        m2,
        (rows * d1 * d1).sum() / total,
        (cols * d2 * d2).sum() / total,
        d1 @ (rho @ d2) / total,
    ])


def grid_moments(rho, a1, a2):
    """Moments of a non-negative 2-D weight array on a tensor grid.

    ``rho[i, j]`` is the weight at ``(a1[i], a2[j])``. Returns the array
    ``[total, mean1, mean2, var1, var2, cov]``; means and central moments are
    normalized by ``total``.
    """
    rho = np.ascontiguousarray(rho, dtype=np.float64)
    a1 = np.ascontiguousarray(a1, dtype=np.float64)
    a2 = np.ascontiguousarray(a2, dtype=np.float64)
    if USE_NUMBA:
        return _grid_moments_numba(rho, a1, a2)
    return _grid_moments_numpy(rho, a1, a2)


# -- commutator-factor averages ---------------------------------------------

@njit(cache=True)
def _factor_numba(kind, param, p):
    if kind == KMM:
        return 1.0 + param * p * p
    if kind == ADV:
        return 1.0 - 2.0 * param * p + 4.0 * param * param * p * p
    if kind == PEDRAM:
        return 1.0 / (1.0 - param * p * p)
    if kind == EXP:
        return np.exp(param * p * p)
    return 1.0


@njit(cache=True)
def _factor_at_moments_numba(kind, param, mean_p, mean_p_sq):
    if kind == KMM:
        return 1.0 + param * mean_p_sq
    if kind == ADV:
        return 1.0 - 2.0 * param * mean_p + 4.0 * param * param * mean_p_sq
    if kind == PEDRAM:
        return 1.0 / (1.0 - param * mean_p_sq)
    if kind == EXP:
        return np.exp(param * mean_p_sq)
    return 1.0


@njit(cache=True, parallel=True)
def _factor_averages_numba(momenta, weights, kind, param):
    m, k = momenta.shape
    avg = np.empty(m)
    at_moments = np.empty(m)
    for r in prange(m):
        wsum = 0.0
        fsum = 0.0
        p1 = 0.0
        p2 = 0.0
        for c in range(k):
            w = weights[r, c]
            p = momenta[r, c]
            wsum += w
            fsum += w * _factor_numba(kind, param, p)
            p1 += w * p
            p2 += w * p * p
        avg[r] = fsum / wsum
        at_moments[r] = _factor_at_moments_numba(kind, param, p1 / wsum, p2 / wsum)
    return avg, at_moments


def _factor_numpy(kind, param, p):
    if kind == KMM:
        return 1.0 + param * p * p
    if kind == ADV:
        return 1.0 - 2.0 * param * p + 4.0 * param * param * p * p
    if kind == PEDRAM:
        return 1.0 / (1.0 - param * p * p)
    if kind == EXP:
        return np.exp(param * p * p)
    return np.ones_like(p)


def _factor_averages_numpy(momenta, weights, kind, param):
    wsum = weights.sum(axis=1)
    avg = (weights * _factor_numpy(kind, param, momenta)).sum(axis=1) / wsum
    mean_p = (weights * momenta).sum(axis=1) / wsum
    mean_p_sq = (weights * momenta * momenta).sum(axis=1) / wsum
    if kind == KMM:
        at = 1.0 + param * mean_p_sq
    elif kind == ADV:
        at = 1.0 - 2.0 * param * mean_p + 4.0 * param * param * mean_p_sq
    elif kind == PEDRAM:
        at = 1.0 / (1.0 - param * mean_p_sq)
    elif kind == EXP:
        at = np.exp(param * mean_p_sq)
    else:
        at = np.ones_like(wsum)
    return avg, at


def factor_averages(momenta, weights, kind, param):
    """Row-wise ``sum(w f(p)) / sum(w)`` and ``f`` evaluated at the row's moments.

    ``momenta`` and ``weights`` have shape ``(m, k)``: ``m`` discrete
    distributions of ``k`` atoms each. The second output replaces ``p**2`` by
    the distribution's second moment (and ``p`` by its mean for the linear
    term), i.e. the expression the pair bounds are built from.
    """
    momenta = np.ascontiguousarray(np.atleast_2d(momenta), dtype=np.float64)
    weights = np.ascontiguousarray(np.atleast_2d(weights), dtype=np.float64)
    if momenta.shape != weights.shape:
        raise ValueError("momenta and weights must have the same shape")
    if USE_NUMBA:
        return _factor_averages_numba(momenta, weights, int(kind), float(param))
    return _factor_averages_numpy(momenta, weights, int(kind), float(param))


def pairwise_sum(values):
    """Deterministic pairwise sum of a 1-D array."""
    values = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if USE_NUMBA:
        return float(_pairwise_sum_numba(values))
    return _pairwise_sum_numpy(values)
