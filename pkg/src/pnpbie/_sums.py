"""Fast kernel-weighted sums over subinterval midpoints.

The quadratures pair the kernel sampled at subinterval midpoints with weights
q_j attached to the subintervals.  Because the nodes interlace the midpoints
(mid_{k-1} < x_k < mid_k on any increasing grid), the sign of x_k - mid_j is
determined by the indices alone, so both sums can be evaluated for every node
at once from prefix sums in O(n) instead of forming the dense kernel matrix.
"""

from __future__ import annotations

import numpy as np


def _prefix(values: np.ndarray) -> np.ndarray:
    """P[k] = sum of values[j] for j < k, with P[0] = 0."""
    out = np.empty(len(values) + 1)
    out[0] = 0.0
    np.cumsum(values, out=out[1:])
    return out


def kernel_g_sum(x: np.ndarray, mid: np.ndarray, q: np.ndarray) -> np.ndarray:
    """For every node x_k, the sum over j of g(x_k, mid_j) * q_j.

    Uses -|x - m| = -(x - m) for m below x and -(m - x) above, so the sum
    splits into prefix sums of q and of mid * q.
    """
    p_q = _prefix(q)
    p_mq = _prefix(mid * q)
    return -0.5 * (x * (2.0 * p_q - p_q[-1]) - (2.0 * p_mq - p_mq[-1]))


def kernel_gx_sum(x: np.ndarray, mid: np.ndarray, q: np.ndarray) -> np.ndarray:
    """For every node x_k, the sum over j of g_x(x_k, mid_j) * q_j.

    g_x is -1/2 for midpoints below the node and +1/2 above.
    """
    p_q = _prefix(q)
    return 0.5 * p_q[-1] - p_q
