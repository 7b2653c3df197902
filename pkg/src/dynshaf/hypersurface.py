"""Homogeneous forms, evaluation matrices and hypersurface containment of point sets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import as_rational
from .linalg import nullspace, rank
from .projective import PointSet, ProjPoint, random_point


@lru_cache(maxsize=None)
def monomial_exponents(N: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree-d monomials in N+1 variables, lex-descending.

    For N=1, d=2 this is x0^2, x0*x1, x1^2.
    """
    def rec(n, deg):
        if n == 1:
            return [(deg,)]
        out = []
        for e in range(deg, -1, -1):
            out.extend((e,) + rest for rest in rec(n - 1, deg - e))
        return out
    return tuple(rec(N + 1, d))


@dataclass(frozen=True)
class MonomialBasis:
    N: int
    d: int

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return monomial_exponents(self.N, self.d)

    def __len__(self):
        return comb(self.N + self.d, self.d)

    def __iter__(self):
        return iter(self.exponents)

    def index(self, e) -> int:
        return _monomial_index(self.N, self.d)[tuple(e)]


@lru_cache(maxsize=None)
def _monomial_index(N: int, d: int) -> dict:
    return {e: i for i, e in enumerate(monomial_exponents(N, d))}


def monomial_value(e, x) -> int | Fraction:
    v = 1
    for a, k in zip(x, e):
        if k:
            v *= a ** k
    return v


class HomogeneousForm:
    """A homogeneous polynomial of degree d in x_0..x_N with rational coefficients.

    The zero form is allowed and reports is_zero; it still carries a degree.
    """

    __slots__ = ("N", "d", "terms", "_hash")

    def __init__(self, N: int, d: int, terms=None):
        self.N, self.d = N, d
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != N + 1 or sum(e) != d or min(e) < 0:
                raise ValueError(f"exponent {e} is not a degree-{d} monomial in {N + 1} variables")
            c = as_rational(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items(), reverse=True) if c}
        self._hash = None

    @classmethod
    def from_vector(cls, N: int, d: int, coeffs) -> "HomogeneousForm":
        return cls(N, d, dict(zip(monomial_exponents(N, d), coeffs)))

    @classmethod
    def monomial(cls, e, c=1) -> "HomogeneousForm":
        e = tuple(e)
        return cls(len(e) - 1, sum(e), {e: c})

    @classmethod
    def linear(cls, coeffs) -> "HomogeneousForm":
        n = len(coeffs)
        return cls(n - 1, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.terms.get(e, Fraction(0)) for e in monomial_exponents(self.N, self.d))

    def __call__(self, x):
        coords = x.coords if isinstance(x, ProjPoint) else x
        return sum((c * monomial_value(e, coords) for e, c in self.terms.items()), Fraction(0))

    def _same_space(self, other):
        if (self.N, self.d) != (other.N, other.d):
            raise ValueError("forms of different degree or dimension")

    def __add__(self, other):
        self._same_space(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return HomogeneousForm(self.N, self.d, t)

    def __neg__(self):
        return HomogeneousForm(self.N, self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousForm):
            c = as_rational(other)
            return HomogeneousForm(self.N, self.d, {e: c * v for e, v in self.terms.items()})
        if self.N != other.N:
            raise ValueError("forms in different numbers of variables")
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return HomogeneousForm(self.N, self.d + other.d, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = HomogeneousForm.monomial((0,) * (self.N + 1))
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, matrix) -> "HomogeneousForm":
        """F(A x): each x_i replaced by the linear form sum_j A[i][j] x_j."""
        lin = [HomogeneousForm.linear(row) for row in matrix]
        powers = [[HomogeneousForm.monomial((0,) * (self.N + 1))] for _ in lin]
        out = HomogeneousForm(self.N, self.d)
        for e, c in self.terms.items():
            term = HomogeneousForm.monomial((0,) * (self.N + 1), c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * lin[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def __eq__(self, other):
        return (isinstance(other, HomogeneousForm) and (self.N, self.d) == (other.N, other.d)
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.d, tuple(self.terms.items())))
        return self._hash

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "degree": self.d,
            "terms": [{"exponents": list(e), "coeff": str(c)} for e, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data, N: int | None = None) -> "HomogeneousForm":
        terms = {tuple(t["exponents"]): as_rational(t["coeff"]) for t in data["terms"]}
        if N is None:
            if not terms:
                raise ValueError("cannot infer the dimension of an empty form")
            N = len(next(iter(terms))) - 1
        return cls(N, int(data["degree"]), terms)


def eval_matrix(Y, d: int) -> list[list[int]]:
    """Row i holds every degree-d monomial evaluated at the i-th point of Y."""
    exps = monomial_exponents(Y[0].dimension, d) if len(Y) else ()
    return [[monomial_value(e, y.coords) for e in exps] for y in Y]


def contained_in_degree(Y, d: int) -> list[HomogeneousForm] | None:
    """Basis of the degree-d forms vanishing on Y, or None if there are none."""
    Y = Y if isinstance(Y, PointSet) else PointSet(Y)
    N = Y.dimension
    r = comb(N + d, d)
    if len(Y) == 0:
        kernel = nullspace([], r)
    else:
        kernel = nullspace(eval_matrix(Y, d))
    if not kernel:
        return None
    return [HomogeneousForm.from_vector(N, d, v) for v in kernel]


def min_containing_degree(Y, d_max: int) -> int | None:
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    for d in range(1, d_max + 1):
        if contained_in_degree(Y, d) is not None:
            return d
    return None


def sample_generic_set(N: int, d: int, m: int, seed: int,
                       height: int = 10) -> tuple[PointSet, int]:
    """random_generic_set plus the number of rejected draws it took."""
    r = comb(N + d, d)
    if m < r:
        raise ValueError(f"impossible: every set of {m} < {r} points lies on a degree-{d} hypersurface")
    rng = random.Random(seed)
    rejections = 0
    while True:
        pts: set[ProjPoint] = set()
        while len(pts) < m:
            pts.add(random_point(rng, N, height))
        Y = PointSet(pts, N)
        if rank(eval_matrix(Y, d)) == r:
            return Y, rejections
        rejections += 1
        if rejections % 5 == 0:
            height *= 2


def random_generic_set(N: int, d: int, m: int, seed: int) -> PointSet:
    """Seeded m-point set of P^N(Q) on no degree-d hypersurface (needs m >= C(N+d, d))."""
    return sample_generic_set(N, d, m, seed)[0]
