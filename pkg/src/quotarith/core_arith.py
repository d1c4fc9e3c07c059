"""Exact integer primitives: factorization, totients, Carmichael's function.

Everything here works on Python integers.  Small inputs are factored from a
lazily grown smallest-prime-factor table; larger ones fall back to trial
division by primes below 10**6 and then Brent's variant of Pollard rho.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from . import _kernels
from .errors import NotCoprime

DEFAULT_SIEVE_BOUND = 10**7
TRIAL_DIVISION_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_sieve_bound = DEFAULT_SIEVE_BOUND
_spf: np.ndarray | None = None
_spf_lock = threading.Lock()
_small_primes: list[int] | None = None


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: ``(prime, exponent)`` pairs, primes ascending."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, r in self.pairs:
            if p <= last or r < 1:
                raise ValueError(f"not a canonical factorization: {self.pairs!r}")
            last = p

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def value(self) -> int:
        return math.prod(p**r for p, r in self.pairs)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def is_squarefree(self) -> bool:
        return all(r == 1 for _, r in self.pairs)


FactorLike = Union[int, Factorization]


@dataclass(frozen=True)
class ArithProfile:
    m: int
    phi: int
    lam: int
    rad: int
    delta: int


def set_sieve_bound(bound: int) -> None:
    """Set the largest n factored through the smallest-prime-factor table."""
    global _sieve_bound, _spf
    with _spf_lock:
        _sieve_bound = int(bound)
        if _spf is not None and len(_spf) - 1 > _sieve_bound:
            _spf = None


def _spf_covering(n: int) -> np.ndarray | None:
    global _spf
    if n > _sieve_bound:
        return None
    table = _spf
    if table is not None and len(table) > n:
        return table
    with _spf_lock:
        if _spf is None or len(_spf) <= n:
            size = min(max(1 << 16, 1 << n.bit_length()), _sieve_bound)
            _spf = _kernels.spf_sieve(size)
        return _spf


def _trial_primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        sieve = bytearray([1]) * (TRIAL_DIVISION_LIMIT + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(TRIAL_DIVISION_LIMIT) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytes(len(range(p * p, TRIAL_DIVISION_LIMIT + 1, p)))
        _small_primes = [i for i, b in enumerate(sieve) if b]
    return _small_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3 * 10**24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    g = _pollard_brent(n)
    _split_large(g, out)
    _split_large(n // g, out)


def factorize(n: int) -> Factorization:
    """Canonical factorization of ``n >= 1``; ``factorize(1)`` is empty."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    spf = _spf_covering(n)
    if spf is not None:
        pairs = []
        while n > 1:
            p = int(spf[n])
            r = 0
            while n % p == 0:
                n //= p
                r += 1
            pairs.append((p, r))
        return Factorization(tuple(pairs))

    out: dict[int, int] = {}
    if not is_prime(n):
        for p in _trial_primes():
            if p * p > n:
                break
            if n % p == 0:
                r = 0
                while n % p == 0:
                    n //= p
                    r += 1
                out[p] = r
                if is_prime(n):
                    break
    if n > 1:
        _split_large(n, out)
    return Factorization(tuple(sorted(out.items())))


def _as_factorization(f: FactorLike) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def euler_phi(f: FactorLike) -> int:
    f = _as_factorization(f)
    return math.prod(p ** (r - 1) * (p - 1) for p, r in f)


def lambda_prime_power(p: int, r: int) -> int:
    """Exponent of the unit group mod ``p**r``."""
    if p == 2 and r >= 3:
        return 2 ** (r - 2)
    return p ** (r - 1) * (p - 1)


def carmichael_lambda(f: FactorLike) -> int:
    f = _as_factorization(f)
    return math.lcm(1, *(lambda_prime_power(p, r) for p, r in f))


def radical(f: FactorLike) -> int:
    f = _as_factorization(f)
    return math.prod(f.primes)


def delta(m: int) -> int:
    return 2 if m % 4 == 0 else 1


def arith_profile(m: int, f: Factorization | None = None) -> ArithProfile:
    f = f or factorize(m)
    return ArithProfile(m=m, phi=euler_phi(f), lam=carmichael_lambda(f), rad=radical(f), delta=delta(m))


def multiplicative_order(a: int, m: int) -> int:
    """Least e >= 1 with a**e == 1 (mod m), by stepping through powers."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    if m == 1:
        return 1
    a %= m
    x, e = a, 1
    while x != 1:
        x = x * a % m
        e += 1
    return e


def phi_iterate(n: int, k: int) -> int:
    if n < 1 or k < 0:
        raise ValueError("phi_iterate needs n >= 1 and k >= 0")
    for _ in range(k):
        if n == 1:
            break
        n = euler_phi(n)
    return n


def iterated_totient_radical(n: int) -> int:
    """Product of primes dividing some phi-iterate of n (k >= 1) but not n itself."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    found: set[int] = set()
    v = n
    while v > 1:
        v = euler_phi(v)
        found.update(factorize(v).primes)
    return math.prod(p for p in found if n % p)
