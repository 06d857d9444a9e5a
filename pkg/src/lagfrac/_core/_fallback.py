"""Pure-numpy implementations of the hot kernels.

Each function mirrors one in ``_kernels.pyx`` with identical signature and
semantics; ``lagfrac._core`` picks the compiled one when it imports.
"""
import numpy as np

_RESCALE = 1e150
_LOG_RESCALE = np.log(_RESCALE)

# chunk size (in matrix entries) for the node-by-point reductions
_CHUNK = 1 << 21


def laguerre_scaled(k, a, x):
    """L_k^a(x) as ``mant * exp(log_scale)`` via the three-term recurrence."""
    x = np.ascontiguousarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    log_scale = np.zeros_like(x)
    if k == 0:
        return p, log_scale
    p_prev = p
    p = 1.0 + a - x
    for m in range(1, k):
        p_next = ((2 * m + 1 + a - x) * p - (m + a) * p_prev) / (m + 1)
        p_prev, p = p, p_next
        big = np.abs(p) > _RESCALE
        if big.any():
            p = np.where(big, p / _RESCALE, p)
            p_prev = np.where(big, p_prev / _RESCALE, p_prev)
            log_scale = log_scale + np.where(big, _LOG_RESCALE, 0.0)
    return p, log_scale


def laguerre_table(kmax, a, x):
    """Rows L_0^a(x) .. L_kmax^a(x); no rescaling (callers keep kmax moderate)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 1.0 + a - x
    for m in range(1, kmax):
        out[m + 1] = ((2 * m + 1 + a - x) * out[m] - (m + a) * out[m - 1]) / (m + 1)
    return out


def hermite_table(kmax, x):
    """Normalized Hermite functions h_0 .. h_kmax at x (rows)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if kmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for m in range(1, kmax):
        out[m + 1] = np.sqrt(2.0 / (m + 1)) * x * out[m] - np.sqrt(m / (m + 1.0)) * out[m - 1]
    return out


def _rows(z, width):
    step = max(1, _CHUNK // max(width, 1))
    for start in range(0, z.size, step):
        yield slice(start, min(start + step, z.size))


def log_gegenbauer_sum(z, nodes, log_weights):
    """log sum_i w_i exp(-z (1 + s_i)) for every z (probability-normalized weights)."""
    z = np.ascontiguousarray(z, dtype=float).ravel()
    out = np.empty_like(z)
    opx = 1.0 + np.asarray(nodes)
    lw = np.asarray(log_weights)
    for sl in _rows(z, opx.size):
        e = lw[None, :] - z[sl, None] * opx[None, :]
        m = e.max(axis=1)
        out[sl] = m + np.log(np.exp(e - m[:, None]).sum(axis=1))
    return out


def log_laguerre_sum(z, nodes, log_weights, power):
    """log sum_{v_i < 2z} w_i (1 - v_i / (2z))^power for every z."""
    z = np.ascontiguousarray(z, dtype=float).ravel()
    out = np.empty_like(z)
    v = np.asarray(nodes)
    lw = np.asarray(log_weights)
    for sl in _rows(z, v.size):
        r = v[None, :] / (2.0 * z[sl, None])
        inside = r < 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            e = np.where(inside, lw[None, :] + power * np.log1p(-np.where(inside, r, 0.0)), -np.inf)
        m = e.max(axis=1)
        out[sl] = m + np.log(np.exp(e - m[:, None]).sum(axis=1))
    return out


def log_schlafli(z, g_nodes, g_logw, l_nodes, l_logw, power, lag_exponent, lag_offset, z_switch):
    """log of the normalized Schlafli average E[exp(-z(1+s))], regime by z."""
    z = np.ascontiguousarray(z, dtype=float).ravel()
    out = np.empty_like(z)
    low = z <= z_switch
    if low.any():
        out[low] = log_gegenbauer_sum(z[low], g_nodes, g_logw)
    high = ~low
    if high.any():
        zh = z[high]
        out[high] = lag_offset - lag_exponent * np.log(zh) + log_laguerre_sum(zh, l_nodes, l_logw, power)
    return out
