"""The image generators d(m), f(m), the gcd D(m), and the almost-everywhere predictor."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_arith import ArithProfile, Factorization, arith_profile, euler_phi, factorize
from .errors import IdentityViolation, RangeTooSmall


@dataclass(frozen=True)
class DfRecord:
    m: int
    profile: ArithProfile
    d: int
    f: int
    ratio: int

    @property
    def pair(self) -> tuple[int, int]:
        return self.f, self.d


def _d_from(m: int, p: ArithProfile, phirad: int) -> int:
    return math.gcd(m, p.delta * phirad)


def _f_from(m: int, p: ArithProfile, phirad: int) -> int:
    num = p.delta * p.lam * phirad
    q, r = divmod(num, p.phi)
    if r:
        raise IdentityViolation(f"phi({m}) does not divide delta*lambda*phi(rad) = {num}")
    return math.gcd(m, q)


def _phirad(f: Factorization) -> int:
    return math.prod(p - 1 for p in f.primes)


def d_of(m: int) -> int:
    """gcd(m, delta * phi(rad m)): generator of the Euler-quotient image."""
    f = factorize(m)
    return _d_from(m, arith_profile(m, f), _phirad(f))


def f_of(m: int) -> int:
    """gcd(m, delta * lambda(m) * phi(rad m) / phi(m)): generator of the Carmichael-quotient image."""
    f = factorize(m)
    return _f_from(m, arith_profile(m, f), _phirad(f))


def big_d(m: int) -> int:
    return math.gcd(m, euler_phi(m))


def df_record(m: int, factorization: Factorization | None = None) -> DfRecord:
    """Bundle d, f and the profile for ``m``, checking every identity that links them."""
    fac = factorization or factorize(m)
    prof = arith_profile(m, fac)
    phirad = _phirad(fac)
    d = _d_from(m, prof, phirad)
    f = _f_from(m, prof, phirad)
    if d % f or m % d:
        raise IdentityViolation(f"divisibility chain f | d | m fails at m={m}: f={f}, d={d}")
    ratio = d // f
    if ratio != math.gcd(m // f, prof.phi // prof.lam):
        raise IdentityViolation(f"ratio identity fails at m={m}")
    if math.gcd(m, prof.phi // prof.lam * f) != d:
        raise IdentityViolation(f"pullback identity fails at m={m}")
    return DfRecord(m=m, profile=prof, d=d, f=f, ratio=ratio)


def predictor_threshold(x: float, relaxed: bool = False) -> float:
    """Prime cutoff y/log y (or y when relaxed) with y = log log x."""
    if x <= math.e:
        raise RangeTooSmall(f"log log x is undefined for x = {x}")
    y = math.log(math.log(x))
    if y <= math.e:
        raise RangeTooSmall(f"y = log log x = {y:.6g} must exceed e")
    return y if relaxed else y / math.log(y)


def predicted_df(m: int, x: float, relaxed: bool = False) -> int:
    """Product of the prime powers p**r || m with p below the predictor threshold."""
    if m > x:
        raise ValueError(f"m = {m} exceeds x = {x}")
    thr = predictor_threshold(x, relaxed)
    return math.prod(p**r for p, r in factorize(m) if p < thr)
