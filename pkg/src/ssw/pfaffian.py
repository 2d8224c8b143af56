"""Pfaffian of a small complex antisymmetric matrix."""

import numpy as np


def pfaffian(a) -> complex:
    """Pfaffian by Parlett-Reid elimination with partial pivoting.

    Reduces ``a`` to tridiagonal form with Gauss transformations that keep it
    antisymmetric; the Pfaffian is then the product of the super-diagonal
    entries at even positions, up to the sign of the row swaps.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n % 2:
        return 0.0j
    result = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            result = -result
        if a[k + 1, k] == 0:
            return 0.0j
        result *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2 :] / a[k, k + 1]
            col = a[k + 2 :, k + 1].copy()
            a[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return result
