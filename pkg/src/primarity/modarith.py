"""Primality, primitive roots, discrete-log tables, and split-prime streams.

Everything here works with plain Python ints except the log tables, which
are dense numpy arrays sized by the modulus: every Jacobi-sum accumulation
consumes all l-2 logs of a prime l, so a full table amortizes better than
any per-query method.  Tables refuse moduli above LOG_TABLE_CAP to keep the
memory footprint bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Largest modulus for which a dense log table may be built (int64 entries).
LOG_TABLE_CAP = 1 << 26

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, correct for all n below 2**64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[int]:
    """Prime factors of n with multiplicity, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(q: int) -> int:
    """Smallest positive primitive root modulo the prime q."""
    if q == 2:
        return 1
    cofactors = [(q - 1) // f for f in set(factorize(q - 1))]
    g = 2
    while True:
        if all(pow(g, e, q) != 1 for e in cofactors):
            return g
        g += 1


@dataclass(frozen=True)
class LogTable:
    """Discrete logarithms of F_l* to a primitive root g.

    powers[k] = g**k mod l for k in [0, l-2]; dlog[v] = k with g**k = v.
    Both arrays are immutable views that workers may share read-only.
    """

    modulus: int
    base: int
    powers: np.ndarray
    dlog: np.ndarray

    def log(self, value: int) -> int:
        """Exponent k with base**k = value (mod modulus)."""
        v = value % self.modulus
        if v == 0:
            raise ValueError("0 has no discrete logarithm")
        return int(self.dlog[v])

    def power(self, k: int) -> int:
        return int(self.powers[k % (self.modulus - 1)])


def build_log_table(l: int, g: int) -> LogTable:
    """Dense log table mod l in one O(l) pass of meet-in-the-middle powering."""
    if l > LOG_TABLE_CAP:
        raise ValueError(f"modulus {l} exceeds the log-table cap {LOG_TABLE_CAP}")
    m = max(1, int(l ** 0.5))
    small = np.ones(m, dtype=np.int64)
    for j in range(1, m):
        small[j] = small[j - 1] * g % l
    gm = pow(g, m, l)
    nblk = (l - 1 + m - 1) // m
    big = np.ones(nblk, dtype=np.int64)
    for t in range(1, nblk):
        big[t] = big[t - 1] * gm % l
    # outer product stays below 2**63: both factors are < l <= 2**26
    powers = (big[:, None] * small[None, :] % l).reshape(-1)[: l - 1]
    seen = np.zeros(l, dtype=bool)
    seen[powers] = True
    if int(seen.sum()) != l - 1:
        raise ValueError(f"{g} is not a primitive root mod {l}")
    dlog = np.zeros(l, dtype=np.int64)
    dlog[powers] = np.arange(l - 1, dtype=np.int64)
    powers.setflags(write=False)
    dlog.setflags(write=False)
    return LogTable(modulus=l, base=g, powers=powers, dlog=dlog)


def split_primes(p: int, bound: int | None = None, count: int | None = None):
    """Yield the primes l = 1 + 2ip ascending, optionally capped.

    bound caps the value of l, count caps how many primes are yielded;
    either may be None for an endless stream.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    emitted = 0
    i = 1
    while True:
        l = 1 + 2 * i * p
        if bound is not None and l > bound:
            return
        if is_prime(l):
            yield l
            emitted += 1
            if count is not None and emitted >= count:
                return
        i += 1


def multiplicative_order(a: int, q: int) -> int:
    """Order of a in F_q*."""
    o = q - 1
    for f in set(factorize(q - 1)):
        while o % f == 0 and pow(a, o // f, q) == 1:
            o //= f
    return o
