"""Euler and Carmichael quotients and brute-force checks over (Z/m^2Z)*."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Union

from . import _kernels
from .core_arith import carmichael_lambda, euler_phi, factorize
from .errors import CapExceeded, NotCongruent, NotCoprime

DEFAULT_BRUTE_FORCE_CAP = 3000


class QuotientKind(str, enum.Enum):
    EULER = "euler"
    CARMICHAEL = "carmichael"


KindLike = Union[QuotientKind, str]


@dataclass(frozen=True)
class QuotientValue:
    m: int
    a: int
    kind: QuotientKind
    residue: int
    exact: Optional[int] = None


@dataclass(frozen=True)
class ImageReport:
    m: int
    kind: QuotientKind
    generator: int
    image_size: int


def _exponent(m: int, kind: KindLike) -> int:
    f = factorize(m)
    return euler_phi(f) if QuotientKind(kind) is QuotientKind.EULER else carmichael_lambda(f)


def _check_unit(m: int, a: int) -> None:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")


def _quotient_mod(m: int, a: int, exponent: int) -> int:
    mm = m * m
    return (pow(a % mm, exponent, mm) - 1) % mm // m


def euler_quotient_mod(m: int, a: int) -> int:
    """(a**phi(m) - 1)/m reduced mod m, via exponentiation mod m**2."""
    _check_unit(m, a)
    return _quotient_mod(m, a, euler_phi(m))


def carmichael_quotient_mod(m: int, a: int) -> int:
    _check_unit(m, a)
    return _quotient_mod(m, a, carmichael_lambda(m))


def quotient_mod(m: int, a: int, kind: KindLike) -> int:
    _check_unit(m, a)
    return _quotient_mod(m, a, _exponent(m, kind))


def quotient_exact(m: int, a: int, kind: KindLike) -> int:
    """The full integer quotient (a**E - 1)/m, E = phi(m) or lambda(m)."""
    if a < 1:
        raise ValueError(f"exact quotient needs a >= 1, got {a}")
    _check_unit(m, a)
    return (a ** _exponent(m, kind) - 1) // m


def quotient_value(m: int, a: int, kind: KindLike, exact: bool = False) -> QuotientValue:
    kind = QuotientKind(kind)
    residue = quotient_mod(m, a, kind)
    return QuotientValue(m, a, kind, residue, quotient_exact(m, a, kind) if exact else None)


def check_additivity(m: int, a: int, b: int) -> bool:
    """Both quotients turn products into sums mod m."""
    _check_unit(m, a)
    _check_unit(m, b)
    f = factorize(m)
    for e in (euler_phi(f), carmichael_lambda(f)):
        if _quotient_mod(m, a * b, e) != (_quotient_mod(m, a, e) + _quotient_mod(m, b, e)) % m:
            return False
    return True


def check_stability(m: int, a: int, b: int) -> bool:
    """Both quotients agree on a and b whenever a == b (mod m**2)."""
    _check_unit(m, a)
    if (a - b) % (m * m):
        raise NotCongruent(f"{a} and {b} differ mod {m}**2")
    f = factorize(m)
    return all(_quotient_mod(m, a, e) == _quotient_mod(m, b, e) for e in (euler_phi(f), carmichael_lambda(f)))


def _scan_units(m: int, exponent: int, cap: int, workers: int) -> tuple[int, int, int]:
    if m > cap:
        raise CapExceeded(f"m = {m} is above the brute-force cap {cap}")
    if m > _kernels.MAX_QUOTIENT_MODULUS:
        raise CapExceeded(f"m = {m} is above the kernel limit {_kernels.MAX_QUOTIENT_MODULUS}")
    mm = m * m
    nchunks = max(1, workers)
    bounds = [mm * i // nchunks for i in range(nchunks + 1)]
    spans = [(bounds[i], bounds[i + 1]) for i in range(nchunks) if bounds[i] < bounds[i + 1]]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda s: _kernels.quotient_block(m, exponent, *s), spans))
    else:
        parts = [_kernels.quotient_block(m, exponent, *s) for s in spans]
    g = reduce(math.gcd, (p[0] for p in parts), 0)
    return g, sum(p[1] for p in parts), sum(p[2] for p in parts)


def image_generator(m: int, kind: KindLike, cap: int = DEFAULT_BRUTE_FORCE_CAP, workers: int = 1) -> ImageReport:
    """Enumerate every unit mod m**2 and return the generator of the quotient image.

    The image is a subgroup of (Z/mZ, +), so it is generated by the gcd of
    m and all residues that occur.
    """
    kind = QuotientKind(kind)
    g, _, _ = _scan_units(m, _exponent(m, kind), cap, workers)
    gen = math.gcd(g, m)
    return ImageReport(m=m, kind=kind, generator=gen, image_size=m // gen)


def zero_set_count(m: int, cap: int = DEFAULT_BRUTE_FORCE_CAP, workers: int = 1) -> int:
    """Number of units a mod m**2 whose Carmichael quotient vanishes mod m."""
    _, zeros, _ = _scan_units(m, carmichael_lambda(m), cap, workers)
    return zeros
