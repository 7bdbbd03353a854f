"""Exact twisted components over Z[x]/Phi_p(x) and their residue symbols.

The mod-p exponent sets only see whether S_n reduces to 1.  To decide
whether S_n is a local or global pth power the component is rebuilt with
exact integer coefficients over the full range a = 1 .. p-1, its l-content
split off, and the reduced element evaluated at a root of Phi_p mod l.
A coefficient blow-up guard caps the exact route at a configurable memory
budget (default 1 GiB) instead of thrashing.

The norm of the reduced component is a signed power of l; it is computed
as the resultant Res(Phi_p, S_n) by CRT over word-size primes q = 1 mod p,
where Phi_p splits and the resultant is a plain product of p-1 values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cycring import CycModP
from .jacobi import TwistContext, _check_exponent
from .modarith import is_prime

DEFAULT_MEMORY_LIMIT = 1 << 30  # bytes of coefficient storage


class CycBigInt:
    """Element of Z[x]/Phi_p(x) with exact integer coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs) -> None:
        coeffs = list(coeffs)
        if len(coeffs) == p:
            # fold away x**(p-1) = -(x**(p-2) + ... + 1)
            top = coeffs[p - 1]
            coeffs = [c - top for c in coeffs[: p - 1]]
        if len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = [int(c) for c in coeffs]

    @classmethod
    def one(cls, p: int) -> "CycBigInt":
        return cls(p, [1] + [0] * (p - 2))

    def mul(self, other: "CycBigInt", limit: int | None = None) -> "CycBigInt":
        """Product reduced mod Phi_p, with an optional memory guard."""
        if self.p != other.p:
            raise ValueError(f"mixed rings: p={self.p} vs p={other.p}")
        p = self.p
        folded = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        folded[(i + j) % p] += a * b
        out = CycBigInt(p, folded)
        if limit is not None and out.storage_bytes() > limit:
            raise MemoryError(
                f"coefficients exceed the {limit} byte budget for p={p}"
            )
        return out

    def __mul__(self, other: "CycBigInt") -> "CycBigInt":
        return self.mul(other)

    def galois(self, a: int) -> "CycBigInt":
        """Image under x -> x**a; a must be invertible mod p."""
        p = self.p
        a %= p
        if a == 0:
            raise ValueError("galois index must be nonzero mod p")
        out = [0] * p
        for k, c in enumerate(self.coeffs):
            out[k * a % p] += c
        return CycBigInt(p, out)

    def minus_one(self) -> "CycBigInt":
        c = list(self.coeffs)
        c[0] -= 1
        return CycBigInt(self.p, c)

    def storage_bytes(self) -> int:
        return sum(c.bit_length() for c in self.coeffs) // 8

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def to_mod_p(self) -> CycModP:
        """Reduction of every coefficient mod p."""
        return CycModP(self.p, np.array([c % self.p for c in self.coeffs], dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycBigInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"CycBigInt(p={self.p}, {self.coeffs})"


def exact_jacobi_sum(ctx: TwistContext, i: int) -> CycBigInt:
    """J_i with exact integer coefficients (counts, not residues)."""
    p, l = ctx.p, ctx.l
    if not 1 <= i <= p - 2:
        raise ValueError(f"i={i} out of range [1, {p - 2}]")
    k = np.arange(1, l - 1, dtype=np.int64)
    e = (ctx.logs.dlog[(1 - ctx.logs.powers[1:]) % l] + i * k) % p
    counts = np.bincount(e, minlength=p)
    return CycBigInt(p, [-int(v) for v in counts])


def exact_twist_product(ctx: TwistContext, limit: int | None = DEFAULT_MEMORY_LIMIT) -> CycBigInt:
    """J = J_1 * ... * J_(c-1) over Z[x]/Phi_p."""
    J = CycBigInt.one(ctx.p)
    for i in range(1, ctx.c):
        J = J.mul(exact_jacobi_sum(ctx, i), limit=limit)
    return J


def exact_twist_component(
    ctx: TwistContext, n: int, limit: int | None = DEFAULT_MEMORY_LIMIT
) -> CycBigInt:
    """S_n = prod_{a=1}^{p-1} sigma_a(J**(a**(n-1) mod p)), exactly.

    The full range a = 1 .. p-1 is deliberate: it makes S_n the square of
    the mod-p convention and keeps the norm a clean power of l.
    """
    p = ctx.p
    _check_exponent(p, n)
    J = exact_twist_product(ctx, limit=limit)
    powers = [CycBigInt.one(p), J]
    for _ in range(p - 2):
        powers.append(powers[-1].mul(J, limit=limit))
    S = CycBigInt.one(p)
    for a in range(1, p):
        S = S.mul(powers[pow(a, n - 1, p)].galois(a), limit=limit)
    return S


def min_p_valuation(u: CycBigInt, q: int) -> int | None:
    """Smallest q-adic valuation over the nonzero coefficients, None if u = 0."""
    best: int | None = None
    for c in u.coeffs:
        if c == 0:
            continue
        v = 0
        while c % q == 0:
            c //= q
            v += 1
        if best is None or v < best:
            best = v
            if best == 0:
                break
    return best


def l_content(u: CycBigInt, l: int) -> tuple[int, CycBigInt]:
    """Split u = l**v * reduced with reduced not divisible by l."""
    v = min_p_valuation(u, l)
    if v is None:
        raise ValueError("the zero element has no l-content")
    if v == 0:
        return 0, u
    d = l**v
    return v, CycBigInt(u.p, [c // d for c in u.coeffs])


def residue_symbol(reduced: CycBigInt, l: int, g: int) -> int:
    """u = R**((l-1)/p) mod l for the first nonvanishing root evaluation.

    Roots of Phi_p mod l are tried in the fixed order (g**M)**b, b = 1, 2,
    ..., p-1 with M = (l-1)/p, so reruns always pick the same root.
    """
    p = reduced.p
    M = (l - 1) // p
    w = pow(g, M, l)
    cods = [c % l for c in reduced.coeffs]
    for b in range(1, p):
        r = pow(w, b, l)
        acc = 0
        for c in reversed(cods):
            acc = (acc * r + c) % l
        if acc != 0:
            return pow(acc, M, l)
    raise ValueError(f"all root evaluations vanish mod {l}; element not reduced")


@dataclass(frozen=True)
class SymbolReport:
    """Local and global pth-power verdicts for one exact component.

    s is the minimal p-adic valuation of S_n - 1 (None when S_n = 1
    exactly), v the l-adic content, u the residue symbol of the reduced
    component.  classification keeps only the strongest statement; the
    booleans keep all of them.
    """

    p: int
    n: int
    l: int
    v: int
    s: int | None
    u: int
    local_at_p: bool
    local_at_l: bool
    classification: str

    def lines(self) -> list[str]:
        """The human-readable verdict lines, strongest last."""
        out = []
        if self.local_at_p:
            out.append("Sn local pth power at P")
        if self.local_at_l:
            out.append("Sn local pth power at L")
        else:
            out.append("Sn NON local pth power at L")
        if self.local_at_p and self.local_at_l:
            out.append("Sn GLOBAL pth power")
        return out

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "n": self.n, "l": self.l, "v": self.v,
             "s": self.s, "u": self.u, "classification": self.classification}
        )

    @classmethod
    def from_json(cls, line: str) -> "SymbolReport":
        d = json.loads(line)
        return build_report(p=d["p"], n=d["n"], l=d["l"],
                            v=d["v"], s=d["s"], u=d["u"])


def build_report(p: int, n: int, l: int, v: int, s: int | None, u: int) -> SymbolReport:
    """Derive the classification from the measured invariants."""
    local_at_p = s != 0  # includes S_n = 1 exactly (s is None)
    local_at_l = v % p == 0 and u == 1
    if local_at_p and local_at_l:
        cls = "global"
    elif local_at_p:
        cls = "local_at_p"
    elif local_at_l:
        cls = "local_at_l"
    else:
        cls = "non_local_at_l"
    return SymbolReport(
        p=p, n=n, l=l, v=v, s=s, u=u,
        local_at_p=local_at_p, local_at_l=local_at_l, classification=cls,
    )


def classify(ctx: TwistContext, n: int, limit: int | None = DEFAULT_MEMORY_LIMIT) -> SymbolReport:
    """Build the exact component and classify it as a pth power."""
    S = exact_twist_component(ctx, n, limit=limit)
    s = min_p_valuation(S.minus_one(), ctx.p)
    v, reduced = l_content(S, ctx.l)
    u = residue_symbol(reduced, ctx.l, ctx.g)
    return build_report(p=ctx.p, n=n, l=ctx.l, v=v, s=s, u=u)


def classify_for(
    p: int, l: int, n: int,
    c: int | None = None, g: int | None = None,
    limit: int | None = DEFAULT_MEMORY_LIMIT,
) -> SymbolReport:
    """Convenience wrapper building the context and discarding it."""
    return classify(TwistContext.build(p, l, c=c, g=g), n, limit=limit)


class SymbolCache:
    """Append-only JSON-lines store of symbol reports keyed by (p, n, l)."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._mem: dict[tuple[int, int, int], SymbolReport] = {}
        if self.path.exists():
            with open(self.path, encoding="ascii") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rep = SymbolReport.from_json(line)
                        self._mem[(rep.p, rep.n, rep.l)] = rep

    def __len__(self) -> int:
        return len(self._mem)

    def get(self, p: int, n: int, l: int) -> SymbolReport | None:
        return self._mem.get((p, n, l))

    def put(self, rep: SymbolReport) -> None:
        if (rep.p, rep.n, rep.l) in self._mem:
            return
        self._mem[(rep.p, rep.n, rep.l)] = rep
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(rep.to_json() + "\n")


def _crt_primes(p: int, need_bits: int):
    """Deterministic stream of ~62-bit primes q = 1 mod p, covering need_bits."""
    step = 2 * p
    q = (1 << 62) // step * step + 1
    got = 0
    while got < need_bits:
        q += step
        if is_prime(q):
            got += q.bit_length() - 1
            yield q


def norm_l_power(u: CycBigInt, l: int) -> tuple[int, int]:
    """Norm of u down to Q, returned as (sign, e) with norm = sign * l**e.

    The norm is Res(Phi_p, u), computed by CRT over primes q = 1 mod p:
    there Phi_p splits, so each residue is a product of p-1 evaluations
    at the pth roots of unity mod q.  Raises if the norm is not a signed
    power of l, which cannot happen for a reduced twisted component.
    """
    p = u.p
    height = sum(abs(c) for c in u.coeffs)
    if height == 0:
        raise ValueError("the zero element has no norm")
    # |u(zeta)| <= height on the unit circle, so |norm| <= height**(p-1)
    need_bits = (p - 1) * height.bit_length() + 2
    residues = []
    primes = []
    for q in _crt_primes(p, need_bits):
        cods = [c % q for c in u.coeffs]
        w = _root_of_unity(p, q)
        acc = 1
        r = 1
        for _ in range(p - 1):
            r = r * w % q
            val = 0
            for c in reversed(cods):
                val = (val * r + c) % q
            acc = acc * val % q
        residues.append(acc)
        primes.append(q)
    norm = _crt_signed(residues, primes)
    sign = -1 if norm < 0 else 1
    norm = abs(norm)
    e = 0
    while norm % l == 0:
        norm //= l
        e += 1
    if norm != 1:
        raise ValueError(f"norm is not a pure power of {l}")
    return sign, e


def _root_of_unity(p: int, q: int) -> int:
    """Some element of order p in F_q*, for q = 1 mod p."""
    e = (q - 1) // p
    for a in range(2, q):
        w = pow(a, e, q)
        if w != 1:
            return w
    raise ValueError(f"no pth root of unity mod {q}")


def _crt_signed(residues: list[int], primes: list[int]) -> int:
    """Combine residues and center the result in (-M/2, M/2)."""
    M = math.prod(primes)
    x = 0
    for r, q in zip(residues, primes):
        Mq = M // q
        x = (x + r * pow(Mq, -1, q) % q * Mq) % M
    return x - M if x > M // 2 else x
