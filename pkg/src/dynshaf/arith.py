"""Exact arithmetic: rationals, p-adic valuations, S-units, factorization, F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator

Rational = Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# deterministic Miller-Rabin with the bases above is exact below this
_MR_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 10_000


def as_rational(q) -> Fraction:
    """Coerce ints, Fractions and strings like "3/4" to a Fraction."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, str)):
        return Fraction(q)
    raise TypeError(f"cannot interpret {q!r} as an exact rational")


def rational_to_str(q) -> str:
    return str(as_rational(q))


# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------

def _miller_rabin(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 1, P % n, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Baillie-PSW above (no known counterexample)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _MR_LIMIT:
        return all(_miller_rabin(n, a) for a in _SMALL_PRIMES)
    return _miller_rabin(n, 2) and _strong_lucas(n)


def _primes_below(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = _primes_below(_TRIAL_LIMIT)


def _pollard_brent(n: int, c: int) -> int:
    """One Brent-variant rho run with x -> x^2 + c from the fixed start 2."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
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
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _split(n: int) -> int:
    """A nontrivial factor of the odd composite n (seeds tried in fixed order)."""
    r = isqrt(n)
    if r * r == n:
        return r
    c = 1
    while True:
        g = _pollard_brent(n, c)
        if 1 < g < n:
            return g
        c += 1


def factor_integer(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as ((p, e), ...) with p ascending.

    >>> factor_integer(12)
    ((2, 2), (3, 1))
    >>> factor_integer(-7)
    ((7, 1),)
    >>> factor_integer(1)
    ()
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        f = _split(m)
        stack.extend((f, m // f))
    return tuple(sorted(counts.items()))


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factor_integer(n))


# ---------------------------------------------------------------------------
# valuations, S-units
# ---------------------------------------------------------------------------

def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(q, p: int) -> int:
    """v_p(q) for nonzero rational q."""
    q = as_rational(q)
    if q == 0:
        raise ValueError("valuation of zero undefined")
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of rational primes; the archimedean place is implicit."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(tuple(primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse "2,3" (an empty string gives the empty set)."""
        text = text.strip().strip("{}[]")
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.split(",") if tok.strip()))

    def __contains__(self, p) -> bool:
        return p in self.primes

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def union(self, other: Iterable[int]) -> "PrimeSet":
        return PrimeSet(self.primes + tuple(other))

    def to_json(self) -> list[int]:
        return list(self.primes)

    def __repr__(self) -> str:
        return "PrimeSet{" + ",".join(map(str, self.primes)) + "}"


def strip_primes(n: int, S: Iterable[int]) -> int:
    """Remove from |n| every factor supported on S."""
    n = abs(n)
    for p in S:
        while n % p == 0:
            n //= p
    return n


def is_s_unit(q, S: Iterable[int]) -> bool:
    if type(q) is int:
        return q != 0 and strip_primes(q, S) == 1
    q = as_rational(q)
    if q == 0:
        return False
    S = tuple(S)
    return strip_primes(q.numerator, S) == 1 and strip_primes(q.denominator, S) == 1


def is_s_integer(q, S: Iterable[int]) -> bool:
    q = as_rational(q)
    return strip_primes(q.denominator, tuple(S)) == 1


def s_unit_exponents(q, S: PrimeSet) -> tuple[int, tuple[int, ...]] | None:
    """(sign, exponent vector over S) if q is an S-unit, else None."""
    q = as_rational(q)
    if not is_s_unit(q, S):
        return None
    return (1 if q > 0 else -1), tuple(valuation(q, p) for p in S)


def outside_primes(n: int, S: Iterable[int]) -> tuple[int, ...]:
    """Primes not in S that divide the nonzero integer n."""
    rest = strip_primes(n, tuple(S))
    return prime_divisors(rest) if rest > 1 else ()


# ---------------------------------------------------------------------------
# residue fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "ResidueElement") -> None:
        if other.p != self.p:
            raise ValueError("residues modulo different primes")

    def __add__(self, other):
        self._check(other)
        return ResidueElement(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return ResidueElement(self.value - other.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return ResidueElement(self.value * other.value, self.p)

    def __neg__(self):
        return ResidueElement(-self.value, self.p)

    def inverse(self) -> "ResidueElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return ResidueElement(pow(self.value, -1, self.p), self.p)


def reduce_mod_p(q, p: int) -> ResidueElement:
    q = as_rational(q)
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not {p}-integral")
    return ResidueElement(q.numerator * pow(q.denominator, -1, p), p)


def primitive_vector(values) -> tuple[int, ...]:
    """Scale rationals to coprime integers whose first nonzero entry is positive."""
    values = tuple(values)
    if all(type(v) is int for v in values):
        return _primitive_ints(values)
    qs = [as_rational(v) for v in values]
    den = 1
    for q in qs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [q.numerator * (den // q.denominator) for q in qs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("all coordinates are zero")
    first = next(a for a in ints if a)
    if first < 0:
        g = -g
    return tuple(a // g for a in ints)


def _primitive_ints(ints: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("all coordinates are zero")
    first = next(a for a in ints if a)
    if first < 0:
        g = -g
    if g == 1:
        return ints
    return tuple(a // g for a in ints)
