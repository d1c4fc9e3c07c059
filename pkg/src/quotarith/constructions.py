"""Builders that realize prescribed values of (f(m), d(m)).

Each builder searches for the least prime in a residue class (bounded by a
cap instead of an unconditional size bound), forms m, and re-derives
(f(m), d(m)) through :func:`df_record` before reporting ``verified``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .core_arith import carmichael_lambda, factorize, is_prime, iterated_totient_radical, radical
from .df_functions import DfRecord, df_record
from .errors import CapExceeded, HypothesisViolated, NotCoprime, NotDivisible, PreconditionViolated


@dataclass(frozen=True)
class ConstructionResult:
    target: tuple
    m: int
    witness_primes: list[int]
    verified: bool
    record: DfRecord
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "target": list(self.target),
            "m": self.m,
            "witness_primes": list(self.witness_primes),
            "verified": self.verified,
            "f": self.record.f,
            "d": self.record.d,
            **self.notes,
        }


@dataclass(frozen=True)
class LambdaSplit:
    n: int
    lambda1: int
    lambda2: int


def default_cap(modulus: int) -> int:
    return max(10**8, 10**4 * modulus)


def smallest_prime_in_ap(a: int, d: int, cap: Optional[int] = None, odd: bool = False) -> int:
    """Least prime p == a (mod d) with p <= cap; ``odd`` skips p = 2."""
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    a %= d
    if math.gcd(a, d) != 1:
        raise NotCoprime(f"gcd({a}, {d}) != 1: the progression holds at most one prime")
    cap = default_cap(d) if cap is None else cap
    for q in range(a, cap + 1, d):
        if is_prime(q) and not (odd and q == 2):
            return q
    raise CapExceeded(f"no prime == {a} (mod {d}) up to {cap}")


def _verified(target: tuple, m: int, primes: list[int], check, **notes) -> ConstructionResult:
    rec = df_record(m)
    return ConstructionResult(target, m, primes, bool(check(rec)), rec, notes)


def construct_equal(n: int, cap: Optional[int] = None) -> ConstructionResult:
    """m = n*p with p the least odd prime == 1 (mod n**2); d(m) = f(m) = n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p = smallest_prime_in_ap(1, n * n, cap, odd=True)
    return _verified(("equal", n), n * p, [p], lambda r: r.d == r.f == n)


def lambda_split(n: int) -> LambdaSplit:
    """Split lambda(n) into a part coprime to n and the part supported on primes of n."""
    lam = carmichael_lambda(n)
    lam2 = 1
    for p, r in factorize(lam):
        if n % p == 0:
            lam2 *= p**r
    return LambdaSplit(n, lam // lam2, lam2)


def construct_ratio(n: int, cap: Optional[int] = None) -> ConstructionResult:
    """m = 4 n**2 lambda2 q with q == 1 + 8n**3 lambda2**2/rad(n) (mod n times that); d/f = n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lam2 = lambda_split(n).lambda2
    step = 8 * n**3 * lam2**2 // radical(n)
    q = smallest_prime_in_ap(1 + step, n * step, cap, odd=True)
    m = 4 * n * n * lam2 * q
    return _verified(("ratio", n), m, [q], lambda r: r.ratio == n, lambda2=lam2)


def construct_pair(a: int, b: int, cap: Optional[int] = None) -> ConstructionResult:
    """Find m with (f(m), d(m)) = (a, b), assuming gcd(b/a, a*phi(rad b)) = 1."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if b % a:
        raise NotDivisible(f"{a} does not divide {b}")
    c = b // a
    phirad = math.prod(p - 1 for p in factorize(b).primes)
    if math.gcd(c, a * phirad) != 1:
        raise HypothesisViolated(f"gcd({c}, {a}*phi(rad {b})) = {math.gcd(c, a * phirad)} != 1")
    target = ("pair", a, b)

    def check(r):
        return (r.f, r.d) == (a, b)

    if c % 2 == 0:
        # the hypothesis leaves only a = 1, b = 2**r
        r = b.bit_length() - 1
        if r == 1:
            return _verified(target, 8, [], check)
        p = smallest_prime_in_ap(1 + 2 ** (r - 1), 2**r, cap, odd=True)
        return _verified(target, 2 ** (r + 1) * p, [p], check)

    q = smallest_prime_in_ap(1 + a * a * c, a * a * c * c, cap, odd=True)
    return _verified(target, a * c * c * q, [q], check)


def construct_pq_pair(p: int, q: int, cap: Optional[int] = None) -> ConstructionResult:
    """m = p**2 q l with l == 1 + q (mod pq); gives (f, d) = (q, pq)."""
    if not (p > 2 and q > 2 and is_prime(p) and is_prime(q)):
        raise PreconditionViolated(f"p = {p} and q = {q} must be odd primes")
    if not (p < q and (q - 1) % p == 0 and (q - 1) % (p * p)):
        raise PreconditionViolated(f"need p < q, p | q - 1 and p**2 not dividing q - 1 (p={p}, q={q})")
    ell = smallest_prime_in_ap(1 + q, p * q, cap, odd=True)
    return _verified(("pq-pair", p, q), p * p * q * ell, [ell], lambda r: (r.f, r.d) == (q, p * q))


def lower_bound_witness(t: int) -> ConstructionResult:
    """m = t F(t), where F(t) collects primes of the phi-iterates of t that miss t."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    F = iterated_totient_radical(t)
    m = t * F
    rec = df_record(m)
    return ConstructionResult(
        ("witness", t), m, factorize(F).primes, rec.f % F == 0, rec,
        {"F": F, "f_over_m": rec.f / m},
    )

