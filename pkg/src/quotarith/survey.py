"""Range scans over every m <= x, backed by a smallest-prime-factor sieve.

The sieve fills fixed-size blocks independently (optionally on a thread
pool; the kernels release the GIL) and writes each block into its own slice,
so the table is identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .core_arith import factorize
from .df_functions import big_d, predictor_threshold
from .errors import ExcludedInput, MemoryBudgetExceeded, NotSquarefree, RangeTooSmall

BLOCK_SIZE = 1 << 20
DEFAULT_MEMORY_BUDGET = 2 * 1024**3
BYTES_PER_ROW = 8 * 7 + 1
EXCEPTION_CAP = 1000
BOUND_GUARD = 1e-9

_LOG2 = math.log(2.0)


@dataclass
class ProfileTable:
    """Columns indexed directly by m; row 0 is padding."""

    x: int
    phi: np.ndarray
    lam: np.ndarray
    rad: np.ndarray
    phirad: np.ndarray
    delta: np.ndarray
    d: np.ndarray
    f: np.ndarray

    @property
    def m(self) -> np.ndarray:
        return np.arange(self.x + 1, dtype=np.int64)

    def row(self, m: int) -> dict:
        return {
            "m": m,
            "phi": int(self.phi[m]),
            "lambda": int(self.lam[m]),
            "rad": int(self.rad[m]),
            "delta": int(self.delta[m]),
            "d": int(self.d[m]),
            "f": int(self.f[m]),
        }


@dataclass
class BoundCheck:
    m: int
    value: int
    bound: float
    ratio: float


@dataclass
class ScanSummary:
    range_end: int
    total: int
    equal_count: int = 0
    exception_count: int = 0
    predictor_match_count: Optional[int] = None
    max_d_ratio: Optional[float] = None
    max_d_argmax: Optional[int] = None
    max_gcd_ratio: Optional[float] = None
    max_gcd_argmax: Optional[int] = None
    bound_violations: int = 0
    gcd_bound_violations: int = 0
    exceptions: list[int] = field(default_factory=list)
    hits: list[tuple[int, int, int]] = field(default_factory=list)
    records: list[BoundCheck] = field(default_factory=list)
    notes: dict = field(default_factory=dict)


def sieve_profiles(x: int, workers: int = 1, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> ProfileTable:
    """phi, lambda, rad, phi(rad), delta, d and f for every m <= x."""
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    need = (x + 1) * BYTES_PER_ROW
    if need > memory_budget:
        raise MemoryBudgetExceeded(f"x = {x} needs about {need} bytes, budget is {memory_budget}")
    spf = _kernels.spf_sieve(x)
    cols = [np.zeros(x + 1, dtype=np.int64) for _ in range(4)]
    delta = np.zeros(x + 1, dtype=np.int8)
    d = np.zeros(x + 1, dtype=np.int64)
    f = np.zeros(x + 1, dtype=np.int64)
    targets = (*cols, delta, d, f)
    spans = [(lo, min(lo + BLOCK_SIZE, x + 1)) for lo in range(1, x + 1, BLOCK_SIZE)]

    def fill(span):
        lo, hi = span
        for dst, src in zip(targets, _kernels.profile_block(spf, lo, hi)):
            dst[lo:hi] = src

    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(fill, spans))
    else:
        for span in spans:
            fill(span)
    return ProfileTable(x, *targets)


def _table(x: int, table: Optional[ProfileTable], workers: int) -> ProfileTable:
    if table is not None and table.x >= x:
        return table
    return sieve_profiles(x, workers=workers)


def predictor_values(m: np.ndarray, x: float, relaxed: bool = False) -> np.ndarray:
    """Vectorized product of p**r || m over primes p below the predictor threshold."""
    thr = predictor_threshold(x, relaxed)
    out = np.ones_like(m)
    for p in range(2, math.ceil(thr)):
        if p < thr and all(p % q for q in range(2, math.isqrt(p) + 1)):
            pk = p
            while pk * p <= int(m.max(initial=1)):
                pk *= p
            out *= np.gcd(m, pk)
    return out


def density_scan(x: int, table: Optional[ProfileTable] = None, workers: int = 1) -> ScanSummary:
    """Count m <= x with d(m) = f(m), list the exceptions, and score the predictor."""
    t = _table(x, table, workers)
    d, f = t.d[1 : x + 1], t.f[1 : x + 1]
    m = np.arange(1, x + 1, dtype=np.int64)
    equal = d == f
    exc = m[~equal]
    s = ScanSummary(
        range_end=x,
        total=x,
        equal_count=int(equal.sum()),
        exception_count=int(exc.size),
        exceptions=exc[:EXCEPTION_CAP].tolist(),
    )
    try:
        pred = predictor_values(m, x)
    except RangeTooSmall as e:
        s.notes["predictor"] = str(e)
    else:
        s.predictor_match_count = int((equal & (d == pred)).sum())
    return s


def theorem11_bound(m):
    """sqrt(2) m exp(-sqrt(log 2 log m + (log 2)**2 / 4)); scalar or array."""
    lm = np.log(np.asarray(m, dtype=np.float64))
    out = math.sqrt(2.0) * np.asarray(m, dtype=np.float64) * np.exp(-np.sqrt(_LOG2 * lm + _LOG2**2 / 4))
    return float(out) if np.ndim(out) == 0 else out


def lemma21_bound(m):
    """m exp(-sqrt(log 2 log m)); scalar or array."""
    mf = np.asarray(m, dtype=np.float64)
    out = mf * np.exp(-np.sqrt(_LOG2 * np.log(mf)))
    return float(out) if np.ndim(out) == 0 else out


def lemma21_bound_check(m: int) -> BoundCheck:
    if m in (1, 6):
        raise ExcludedInput(f"m = {m} is excluded from the squarefree gcd bound")
    if m < 1 or not factorize(m).is_squarefree():
        raise NotSquarefree(f"m = {m} is not squarefree")
    value = big_d(m)
    bound = lemma21_bound(m)
    return BoundCheck(m, value, bound, value / bound)


def bound_scan(x: int, table: Optional[ProfileTable] = None, workers: int = 1) -> ScanSummary:
    """Check d(m) against the universal bound for all m <= x, and gcd(m, phi(m))
    against the squarefree bound for squarefree m outside {1, 6}.

    ``records`` holds m = 1 (where the bound is attained with equality) and
    then every m >= 2 whose d(m)/bound sets a new running maximum over [2, m].
    """
    if x < 2:
        raise ValueError(f"bound scan needs x >= 2, got {x}")
    t = _table(x, table, workers)
    m = np.arange(1, x + 1, dtype=np.int64)
    d = t.d[1 : x + 1]
    bound = theorem11_bound(m)
    ratio = d / bound
    s = ScanSummary(range_end=x, total=x)
    s.bound_violations = int((d > bound * (1 + BOUND_GUARD)).sum())
    k = int(np.argmax(ratio))
    s.max_d_ratio, s.max_d_argmax = float(ratio[k]), int(m[k])
    running = np.maximum.accumulate(ratio[1:])
    new_max = np.ones(x, dtype=bool)
    new_max[2:] = ratio[2:] > running[:-1]
    s.records = [BoundCheck(int(i), int(d[i - 1]), float(bound[i - 1]), float(ratio[i - 1])) for i in m[new_max]]

    sq = (t.rad[1 : x + 1] == m) & (m != 1) & (m != 6)
    ms = m[sq]
    D = np.gcd(ms, t.phi[1 : x + 1][sq])
    lb = lemma21_bound(ms)
    s.gcd_bound_violations = int((D > lb * (1 + BOUND_GUARD)).sum())
    if ms.size:
        lr = D / lb
        k = int(np.argmax(lr))
        s.max_gcd_ratio, s.max_gcd_argmax = float(lr[k]), int(ms[k])
    return s


def nonexistence_scan(x: int, table: Optional[ProfileTable] = None, workers: int = 1) -> ScanSummary:
    """All m <= x with f odd, f > 1 and d in {2f, 4f}; expected to be none."""
    t = _table(x, table, workers)
    m = np.arange(1, x + 1, dtype=np.int64)
    d, f = t.d[1 : x + 1], t.f[1 : x + 1]
    hit = (f % 2 == 1) & (f > 1) & ((d == 2 * f) | (d == 4 * f))
    hm = m[hit]
    return ScanSummary(
        range_end=x,
        total=x,
        exception_count=int(hm.size),
        hits=[(int(i), int(t.f[i]), int(t.d[i])) for i in hm[:EXCEPTION_CAP]],
    )


def pair_atlas(x: int, table: Optional[ProfileTable] = None, workers: int = 1) -> list[tuple[int, int, int]]:
    """Every realized (f, d) with its least witness m <= x, sorted by (f, d)."""
    t = _table(x, table, workers)
    d, f = t.d[1 : x + 1], t.f[1 : x + 1]
    keys = f * (x + 1) + d
    uniq, first = np.unique(keys, return_index=True)
    return [(int(k // (x + 1)), int(k % (x + 1)), int(i) + 1) for k, i in zip(uniq, first)]


def identity_failures(x: int, table: Optional[ProfileTable] = None, workers: int = 1) -> dict[str, np.ndarray]:
    """m <= x failing each exact identity linking d, f, phi and lambda."""
    t = _table(x, table, workers)
    sl = slice(1, x + 1)
    m = np.arange(1, x + 1, dtype=np.int64)
    phi, lam, phirad, d, f = t.phi[sl], t.lam[sl], t.phirad[sl], t.d[sl], t.f[sl]
    delta = t.delta[sl].astype(np.int64)
    idx = phi // lam
    checks = {
        "lambda_divides_phi": phi % lam == 0,
        "divisibility_chain": (d % f == 0) & (m % d == 0),
        "ratio_identity": d // f == np.gcd(m // f, idx),
        "pullback_identity": np.gcd(m, idx * f) == d,
        "integrality": (delta * lam * phirad) % phi == 0,
        "squarefree_equality": (t.rad[sl] != m) | (d == f),
    }
    return {name: m[~ok] for name, ok in checks.items()}
