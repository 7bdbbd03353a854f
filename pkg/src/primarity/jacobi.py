"""Jacobi sums of prime order characters and their twisted components.

For a prime pair l = 1 + 2ip the character chi of order p on F_l* built
from a primitive root g gives Jacobi sums J_i = J(chi**i, chi).  The twist
J = J_1 * ... * J_(c-1) collapses the Gauss-sum ratio g(chi)**c / g(chi**c)
into ring arithmetic, and the components

    S_n = prod_{a=1}^{(p-1)/2} sigma_a(J**(a**(n-1) mod p))

decide p-primarity: n is recorded exactly when S_n = 1.  All of this lives
in F_p[x]/Phi_p(x) via cycring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycring import CycModP, reduce_mod_phi
from .modarith import LogTable, build_log_table, is_prime, multiplicative_order, primitive_root


@dataclass(frozen=True)
class ExponentSet:
    """Even exponents n in [2, p-3] singled out for a fixed prime pair."""

    p: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, n: int) -> bool:
        return n in self.members

    def is_empty(self) -> bool:
        return not self.members

    def intersection(self, other: "ExponentSet") -> "ExponentSet":
        if self.p != other.p:
            raise ValueError(f"mixed primes: {self.p} vs {other.p}")
        return ExponentSet(self.p, tuple(set(self.members) & set(other.members)))

    def render(self) -> str:
        """Comma-joined ascending members, empty string for the empty set."""
        return ",".join(str(n) for n in self.members)


@dataclass(frozen=True)
class TwistContext:
    """Everything fixed while one prime pair (p, l) is analyzed."""

    p: int
    l: int
    c: int
    g: int
    logs: LogTable

    @classmethod
    def build(cls, p: int, l: int, c: int | None = None, g: int | None = None) -> "TwistContext":
        """Validate the pair and precompute the dense log table mod l."""
        if not is_prime(p) or p < 3:
            raise ValueError(f"p={p} is not an odd prime")
        if not is_prime(l):
            raise ValueError(f"l={l} is not prime")
        if l % p != 1:
            raise ValueError(f"l={l} does not split: l % p = {l % p}")
        if c is None:
            c = primitive_root(p)
        # p=3 has no primitive root below p-1; its exponent range is empty anyway
        if not (2 <= c <= p - 2 or (p == 3 and c == 2)):
            raise ValueError(f"c={c} out of range for p={p}")
        if multiplicative_order(c, p) != p - 1:
            raise ValueError(f"c={c} is not a primitive root mod {p}")
        if g is None:
            g = primitive_root(l)
        return cls(p=p, l=l, c=c, g=g, logs=build_log_table(l, g))


def jacobi_sum(ctx: TwistContext, i: int) -> CycModP:
    """J_i = -sum_{k=1}^{l-2} x**(log(1 - g**k) + i*k mod p), reduced."""
    p, l = ctx.p, ctx.l
    if not 1 <= i <= p - 2:
        raise ValueError(f"i={i} out of range [1, {p - 2}]")
    k = np.arange(1, l - 1, dtype=np.int64)
    # i*k stays far below 2**63: i < p and k < l <= 2**26
    e = (ctx.logs.dlog[(1 - ctx.logs.powers[1:]) % l] + i * k) % p
    counts = np.bincount(e, minlength=p)
    return CycModP(p, reduce_mod_phi((-counts) % p, p))


def twist_product(ctx: TwistContext) -> CycModP:
    """J = J_1 * ... * J_(c-1), the twisted Jacobi-sum product."""
    J = CycModP.one(ctx.p)
    for i in range(1, ctx.c):
        J = J * jacobi_sum(ctx, i)
    return J


def _twist_powers(J: CycModP) -> list[CycModP]:
    """[None, J, J**2, ..., J**(p-1)] by repeated multiplication."""
    powers: list[CycModP] = [CycModP.one(J.p), J]
    for _ in range(J.p - 2):
        powers.append(powers[-1] * J)
    return powers


def _component_from_powers(p: int, powers: list[CycModP], n: int) -> CycModP:
    """S_n over the half range a = 1 .. (p-1)/2."""
    S = CycModP.one(p)
    for a in range(1, (p - 1) // 2 + 1):
        S = S * powers[pow(a, n - 1, p)].galois(a)
    return S


def _check_exponent(p: int, n: int) -> None:
    if n % 2 != 0 or not 2 <= n <= p - 3:
        raise ValueError(f"n={n} must be even and within [2, {p - 3}]")


def component(ctx: TwistContext, J: CycModP, n: int) -> CycModP:
    """S_n for one even exponent n in [2, p-3]."""
    _check_exponent(ctx.p, n)
    return _component_from_powers(ctx.p, _twist_powers(J), n)


def exponent_set(ctx: TwistContext) -> ExponentSet:
    """All even n in [2, p-3] with S_n = 1, sharing one power table for J."""
    powers = _twist_powers(twist_product(ctx))
    hits = [
        n
        for n in range(2, ctx.p - 2, 2)
        if _component_from_powers(ctx.p, powers, n).is_one()
    ]
    return ExponentSet(ctx.p, tuple(hits))


def exponent_set_for(p: int, l: int, c: int | None = None, g: int | None = None) -> ExponentSet:
    """Convenience wrapper building the context and discarding it."""
    return exponent_set(TwistContext.build(p, l, c=c, g=g))
