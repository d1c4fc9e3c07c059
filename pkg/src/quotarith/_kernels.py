"""Hot integer kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``QUOTARITH_DISABLE_NUMBA`` is unset (or ``0``).  Both paths
return identical arrays; ``tests/test_kernels.py`` holds them to that.
The flag only chooses an implementation, it never changes results.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

# m**2 * m**2 must fit in int64 for the modular-power kernels
MAX_QUOTIENT_MODULUS = 55_000

_BACKEND = "numba" if HAVE_NUMBA and os.environ.get("QUOTARITH_DISABLE_NUMBA", "0") in ("", "0") else "numpy"


def get_backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _BACKEND = name


# ---------------------------------------------------------------- numpy path


def _spf_numpy(x: int) -> np.ndarray:
    spf = np.zeros(x + 1, dtype=np.int64)
    if x >= 1:
        spf[1] = 1
    for p in range(2, int(x**0.5) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx[idx >= 2]] = idx[idx >= 2]
    return spf


def _profile_numpy(spf, lo, hi):
    m = np.arange(lo, hi, dtype=np.int64)
    n = hi - lo
    phi = np.ones(n, dtype=np.int64)
    lam = np.ones(n, dtype=np.int64)
    rad = np.ones(n, dtype=np.int64)
    phirad = np.ones(n, dtype=np.int64)
    rem = m.copy()
    active = np.nonzero(rem > 1)[0]
    while active.size:
        r = rem[active]
        p = spf[r]
        pk = p.copy()
        r //= p
        more = np.nonzero(r % p == 0)[0]
        while more.size:
            r[more] //= p[more]
            pk[more] *= p[more]
            more = more[r[more] % p[more] == 0]
        rem[active] = r
        lp = pk // p * (p - 1)
        phi[active] *= lp
        two_big = (p == 2) & (pk >= 8)
        lp[two_big] = pk[two_big] // 4
        lam[active] = np.lcm(lam[active], lp)
        rad[active] *= p
        phirad[active] *= p - 1
        active = active[r > 1]
    delta = np.where(m % 4 == 0, 2, 1).astype(np.int8)
    d = np.gcd(m, delta * phirad)
    f = np.gcd(m, delta * lam * phirad // phi)
    return phi, lam, rad, phirad, delta, d, f


def _modpow_numpy(base, e, mod):
    result = np.ones_like(base)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def _quotient_numpy(m, exponent, lo, hi):
    mm = m * m
    a = np.arange(lo, hi, dtype=np.int64)
    a = a[np.gcd(a, m) == 1]
    if a.size == 0:
        return 0, 0, 0
    t = _modpow_numpy(a, exponent, mm)
    res = ((t - 1) % mm) // m
    return int(np.gcd.reduce(res)), int(np.count_nonzero(res == 0)), int(a.size)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _gcd(a, b):
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True, nogil=True)
    def _spf_numba(x):
        spf = np.zeros(x + 1, dtype=np.int64)
        if x >= 1:
            spf[1] = 1
        primes = np.empty(x // 2 + 16, dtype=np.int64)
        count = 0
        for i in range(2, x + 1):
            if spf[i] == 0:
                spf[i] = i
                primes[count] = i
                count += 1
            si = spf[i]
            for j in range(count):
                p = primes[j]
                if p > si or p * i > x:
                    break
                spf[p * i] = p
        return spf

    @njit(cache=True, nogil=True)
    def _gcd_on_primes(primes, exps, k, x):
        # gcd(m, x) for m = prod primes[i]**exps[i]; avoids a full Euclid run
        g = 1
        for i in range(k):
            p = primes[i]
            for _ in range(exps[i]):
                if x % p:
                    break
                x //= p
                g *= p
        return g

    @njit(cache=True, nogil=True, error_model="numpy")
    def _profile_numba_fill(spf, lo, hi, phi, lam, rad, phirad, delta, d, f):
        primes = np.empty(64, dtype=np.int64)
        exps = np.empty(64, dtype=np.int64)
        for i in range(hi - lo):
            m = lo + i
            n = m
            ph = 1
            la = 1
            ra = 1
            pr = 1
            k = 0
            while n > 1:
                p = spf[n]
                pk = 1
                r = 0
                while n % p == 0:
                    n //= p
                    pk *= p
                    r += 1
                primes[k] = p
                exps[k] = r
                k += 1
                lp = pk // p * (p - 1)
                ph *= lp
                if p == 2 and pk >= 8:
                    lp = pk // 4
                if k > 1:
                    la = la // _gcd(la, lp) * lp
                else:
                    la = lp
                ra *= p
                pr *= p - 1
            dl = 2 if m % 4 == 0 else 1
            phi[i] = ph
            lam[i] = la
            rad[i] = ra
            phirad[i] = pr
            delta[i] = dl
            d[i] = _gcd_on_primes(primes, exps, k, dl * pr)
            f[i] = _gcd_on_primes(primes, exps, k, dl * la * pr // ph)

    @njit(cache=True, nogil=True, error_model="numpy")
    def _quotient_numba(m, primes, exponent, lo, hi):
        mm = m * m
        g = 0
        zeros = 0
        units = 0
        for a in range(lo, hi):
            shared = False
            for p in primes:
                if a % p == 0:
                    shared = True
                    break
            if shared:
                continue
            units += 1
            result = 1
            base = a % mm
            e = exponent
            while e:
                if e & 1:
                    result = result * base % mm
                base = base * base % mm
                e >>= 1
            res = ((result - 1) % mm) // m
            if res == 0:
                zeros += 1
            else:
                g = _gcd(g, res)
        return g, zeros, units


def _profile_numba(spf, lo, hi):
    n = hi - lo
    out = [np.empty(n, dtype=np.int64) for _ in range(4)]
    delta = np.empty(n, dtype=np.int8)
    d = np.empty(n, dtype=np.int64)
    f = np.empty(n, dtype=np.int64)
    _profile_numba_fill(spf, lo, hi, *out, delta, d, f)
    return (*out, delta, d, f)


# ---------------------------------------------------------------- dispatch


def _primes_of(m: int) -> np.ndarray:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return np.array(out, dtype=np.int64)


def spf_sieve(x: int) -> np.ndarray:
    """Smallest-prime-factor table ``spf[0..x]`` with ``spf[1] == 1``."""
    if _BACKEND == "numba":
        return _spf_numba(x)
    return _spf_numpy(x)


def profile_block(spf: np.ndarray, lo: int, hi: int):
    """Arithmetic columns for ``lo <= m < hi`` (``lo >= 1``).

    Returns ``(phi, lam, rad, phirad, delta, d, f)``; ``phirad`` is
    phi(rad(m)).  ``spf`` must cover ``hi - 1``.
    """
    if _BACKEND == "numba":
        return _profile_numba(spf, lo, hi)
    return _profile_numpy(spf, lo, hi)


def quotient_block(m: int, exponent: int, lo: int, hi: int) -> tuple[int, int, int]:
    """Scan ``lo <= a < hi`` coprime to ``m``; reduce ``(a**exponent - 1)/m mod m``.

    Returns ``(g, zeros, units)``: the gcd of the nonzero residues (0 when
    all are zero), how many residues are zero, and how many units were seen.
    """
    if m > MAX_QUOTIENT_MODULUS:
        raise ValueError(f"modulus {m} exceeds the int64 kernel limit {MAX_QUOTIENT_MODULUS}")
    if _BACKEND == "numba":
        g, zeros, units = _quotient_numba(m, _primes_of(m), exponent, lo, hi)
        return int(g), int(zeros), int(units)
    return _quotient_numpy(m, exponent, lo, hi)
