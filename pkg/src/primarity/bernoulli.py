"""Generalized Bernoulli numbers B_{1, omega^m} and irregular exponents.

The Teichmuller character omega is evaluated mod p**2, where it is simply
a -> a**p.  For odd m the first Bernoulli number of omega^m is

    B_{1, omega^m} = (1/p) * sum_{a=1}^{p-1} omega(a)**m * a  (mod p),

and the even n in [2, p-3] with B_{1, omega^(n-1)} = 0 mod p are exactly
the irregular exponents of p (Kummer: B_{1, omega^(n-1)} = B_n / n mod p).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .jacobi import ExponentSet
from .modarith import is_prime


def teichmuller(a: int, p: int) -> int:
    """omega(a) mod p**2, the (p-1)st root of unity lifting a."""
    if a % p == 0:
        raise ValueError(f"a={a} is divisible by p={p}")
    return pow(a, p, p * p)


def b1_omega(p: int, m: int) -> int:
    """B_{1, omega^m} mod p for odd m with 1 <= m <= p-4."""
    if m % 2 == 0 or not 1 <= m <= p - 4:
        raise ValueError(f"m={m} must be odd and within [1, {p - 4}]")
    p2 = p * p
    tot = 0
    for a in range(1, p):
        tot = (tot + pow(a, p * m, p2) * a) % p2
    if tot % p != 0:
        # the character sum is divisible by p for every odd m != -1 mod p-1
        raise ArithmeticError(f"character sum for p={p}, m={m} not divisible by p")
    return tot // p % p


@dataclass(frozen=True)
class IrregularityReport:
    """Irregular exponents of p together with the irregularity index."""

    p: int
    irregular_exponents: tuple[int, ...]
    index: int

    def exponent_set(self) -> ExponentSet:
        return ExponentSet(self.p, self.irregular_exponents)

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "irregular_exponents": list(self.irregular_exponents),
                "index": self.index,
            }
        )


def irregularity_report(p: int) -> IrregularityReport:
    """Scan all even n in [2, p-3] for vanishing B_{1, omega^(n-1)}."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"p={p} must be a prime >= 5")
    hits = tuple(n for n in range(2, p - 2, 2) if b1_omega(p, n - 1) == 0)
    return IrregularityReport(p=p, irregular_exponents=hits, index=len(hits))


def b_c_factor(p: int, c: int, n: int) -> int:
    """(c - omega^(p-n)(c)) * B_{1, omega^(n-1)} mod p."""
    if not 2 <= c <= p - 1:
        raise ValueError(f"c={c} out of range [2, {p - 1}]")
    if n % 2 != 0 or not 2 <= n <= p - 3:
        raise ValueError(f"n={n} must be even and within [2, {p - 3}]")
    omega_c = pow(teichmuller(c, p), p - n, p * p)
    return (c - omega_c) * b1_omega(p, n - 1) % p
