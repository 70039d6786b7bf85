"""Hot numeric loops.

Every kernel here is plain Python over numpy scalars/arrays and is passed
through :func:`nlkp._accel.njit`, so the same source runs compiled or
interpreted. ``hankel1_pair_numpy`` is the vectorized fallback used for
array evaluation when numba is off.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# Crossover between the ascending series and the Hankel asymptotic
# expansion; both branches are ~4e-12 relative at z = 12 (series loses
# digits to cancellation in Y, the optimally truncated asymptotic sum
# gains them).
Z_CROSSOVER = 12.0

_SERIES_TOL = 1e-17
_MAX_SERIES_TERMS = 400
_MAX_ASYM_TERMS = 80


def _j_series(mu, z):
    h = 0.5 * z
    term = h**mu / math.gamma(mu + 1.0)
    total = term
    hh = h * h
    for m in range(1, _MAX_SERIES_TERMS):
        term *= -hh / (m * (m + mu))
        total += term
        if m > h and abs(term) <= _SERIES_TOL * abs(total):
            break
    return total


def _hankel1_series(nu, z):
    jp = _j_series(nu, z)
    jm = _j_series(-nu, z)
    y = (jp * math.cos(nu * math.pi) - jm) / math.sin(nu * math.pi)
    return complex(jp, y)


def _hankel1_asymptotic(nu, z):
    mu = 4.0 * nu * nu
    re = 1.0
    im = 0.0
    coeff = 1.0
    prev = math.inf
    for k in range(1, _MAX_ASYM_TERMS):
        coeff *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z)
        size = abs(coeff)
        if size > prev:
            break
        # i^k cycles 1, i, -1, -i
        r = k % 4
        if r == 0:
            re += coeff
        elif r == 1:
            im += coeff
        elif r == 2:
            re -= coeff
        else:
            im -= coeff
        prev = size
        if size < _SERIES_TOL:
            break
    # e^{i(z - shift)} split so libm reduces z itself; avoids rounding z - shift
    shift = 0.5 * nu * math.pi + 0.25 * math.pi
    cz = math.cos(z)
    sz = math.sin(z)
    c = cz * math.cos(shift) + sz * math.sin(shift)
    s = sz * math.cos(shift) - cz * math.sin(shift)
    amp = math.sqrt(2.0 / (math.pi * z))
    return complex(amp * (re * c - im * s), amp * (re * s + im * c))


_j_series = njit(_j_series)
_hankel1_series = njit(_hankel1_series)
_hankel1_asymptotic = njit(_hankel1_asymptotic)


def _hankel1_pair(z):
    """Return (H1_{1/3}(z), H1_{-2/3}(z)) for real z > 0."""
    if z > Z_CROSSOVER:
        return _hankel1_asymptotic(1.0 / 3.0, z), _hankel1_asymptotic(-2.0 / 3.0, z)
    return _hankel1_series(1.0 / 3.0, z), _hankel1_series(-2.0 / 3.0, z)


hankel1_pair = njit(_hankel1_pair)


def _hankel1_pair_array(z):
    n = z.shape[0]
    h13 = np.empty(n, dtype=np.complex128)
    hm23 = np.empty(n, dtype=np.complex128)
    for i in range(n):
        a, b = hankel1_pair(z[i])
        h13[i] = a
        hm23[i] = b
    return h13, hm23


hankel1_pair_array = njit(_hankel1_pair_array)


def _series_numpy(nu, z):
    def j(mu):
        h = 0.5 * z
        term = h**mu / math.gamma(mu + 1.0)
        total = term.copy()
        hh = h * h
        for m in range(1, _MAX_SERIES_TERMS):
            term = term * (-hh / (m * (m + mu)))
            total = total + term
            if m > h.max() and np.all(np.abs(term) <= _SERIES_TOL * np.abs(total)):
                break
        return total

    jp = j(nu)
    jm = j(-nu)
    y = (jp * math.cos(nu * math.pi) - jm) / math.sin(nu * math.pi)
    return jp + 1j * y


def _asymptotic_numpy(nu, z):
    mu = 4.0 * nu * nu
    total = np.ones_like(z, dtype=np.complex128)
    coeff = np.ones_like(z)
    prev = np.full_like(z, np.inf)
    live = np.ones(z.shape, dtype=bool)
    ik = 1.0 + 0.0j
    for k in range(1, _MAX_ASYM_TERMS):
        ik *= 1j
        coeff = coeff * ((mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z))
        size = np.abs(coeff)
        live &= size <= prev
        if not live.any():
            break
        total = np.where(live, total + ik * coeff, total)
        prev = np.where(live, size, prev)
        live &= size >= _SERIES_TOL
    shift = 0.5 * nu * math.pi + 0.25 * math.pi
    phase = (np.cos(z) + 1j * np.sin(z)) * complex(math.cos(shift), -math.sin(shift))
    return np.sqrt(2.0 / (math.pi * z)) * total * phase


def hankel1_pair_numpy(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized counterpart of :func:`hankel1_pair_array`."""
    z = np.asarray(z, dtype=np.float64)
    h13 = np.empty(z.shape, dtype=np.complex128)
    hm23 = np.empty(z.shape, dtype=np.complex128)
    big = z > Z_CROSSOVER
    if big.any():
        h13[big] = _asymptotic_numpy(1.0 / 3.0, z[big])
        hm23[big] = _asymptotic_numpy(-2.0 / 3.0, z[big])
    small = ~big
    if small.any():
        h13[small] = _series_numpy(1.0 / 3.0, z[small])
        hm23[small] = _series_numpy(-2.0 / 3.0, z[small])
    return h13, hm23


def hankel_pairs(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Backend-selected array evaluation."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    if USE_NUMBA:
        return hankel1_pair_array(z)
    return hankel1_pair_numpy(z)


def _propagate_sites(vp, ph, a1, b1, alpha, beta, cap):
    """Iterate the site map over precomputed basis values.

    ``vp[i]``, ``ph[i]`` are the two basis functions at site ``i + 1``.
    Returns the coefficient arrays, psi at the sites and the number of
    valid entries (smaller than ``len(vp)`` on blow-up).
    """
    n = vp.shape[0]
    A = np.zeros(n, dtype=np.complex128)
    B = np.zeros(n, dtype=np.complex128)
    psi = np.zeros(n, dtype=np.complex128)
    a = a1
    b = b1
    done = n
    for i in range(n):
        A[i] = a
        B[i] = b
        p = a * vp[i] + b * ph[i]
        psi[i] = p
        if i == n - 1:
            break
        g = 2.0 * (beta + alpha * (p.real * p.real + p.imag * p.imag)) * p
        a = a - ph[i] * g
        b = b + vp[i] * g
        # written so NaN also trips the cap
        if not (abs(a) <= cap and abs(b) <= cap):
            done = i + 1
            break
    return A, B, psi, done


propagate_sites = njit(_propagate_sites)


def _rk4_lattice(E, F, alpha, beta, psi0, dpsi0, nsub, nsites, cap):
    """Classical RK4 for psi'' = -2(E + F x) psi with delta kicks at sites.

    Kicks are applied at interior sites 1..nsites-1; the stored derivative
    at those sites is the post-kick (right) limit. Returns positions,
    psi, psi_x and the number of valid points.
    """
    h = 1.0 / nsub
    npts = nsites * nsub + 1
    xs = np.empty(npts, dtype=np.float64)
    ps = np.zeros(npts, dtype=np.complex128)
    ds = np.zeros(npts, dtype=np.complex128)
    y = psi0
    v = dpsi0
    xs[0] = 0.0
    ps[0] = y
    ds[0] = v
    for n in range(nsites):
        for s in range(nsub):
            x = n + s * h
            q0 = -2.0 * (E + F * x)
            qm = -2.0 * (E + F * (x + 0.5 * h))
            q1 = -2.0 * (E + F * (x + h))
            k1y = v
            k1v = q0 * y
            k2y = v + 0.5 * h * k1v
            k2v = qm * (y + 0.5 * h * k1y)
            k3y = v + 0.5 * h * k2v
            k3v = qm * (y + 0.5 * h * k2y)
            k4y = v + h * k3v
            k4v = q1 * (y + h * k3y)
            y = y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            i = n * nsub + s + 1
            xs[i] = n + (s + 1) * h
            ps[i] = y
            ds[i] = v
        i = (n + 1) * nsub
        xs[i] = n + 1.0
        if n + 1 < nsites:
            v = v + 2.0 * (beta + alpha * (y.real * y.real + y.imag * y.imag)) * y
            ds[i] = v
        if not (abs(y) <= cap and abs(v) <= cap):
            return xs, ps, ds, i + 1
    return xs, ps, ds, npts


rk4_lattice = njit(_rk4_lattice)
