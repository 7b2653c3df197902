"""The two-term S-unit equation over Q, exceptional units, and the candidate set Pi."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import PrimeSet, is_s_unit, s_unit_exponents
from .projective import PointSet, ProjPoint, standard_frame


@dataclass(frozen=True)
class SUnitSolutionSet:
    solutions: tuple[tuple[Fraction, Fraction], ...]
    exponent_bound: int
    S: PrimeSet

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "complete_up_to_bound": self.exponent_bound,
            "count": len(self.solutions),
            "solutions": [[str(u), str(v)] for u, v in self.solutions],
        }


def s_units(S: PrimeSet, B: int):
    """All +-prod p^e_p with |e_p| <= B, in a fixed order."""
    primes = tuple(S)
    for exps in product(range(-B, B + 1), repeat=len(primes)):
        u = Fraction(1)
        for p, e in zip(primes, exps):
            u *= Fraction(p) ** e
        yield u
        yield -u


def _within_bound(q, S: PrimeSet, B: int) -> bool:
    ex = s_unit_exponents(q, S)
    return ex is not None and all(abs(e) <= B for e in ex[1])


def solve_unit_equation(S: PrimeSet, B: int) -> SUnitSolutionSet:
    """Brute-force every solution of u + v = 1 in S-units with exponents at most B."""
    if B < 0:
        raise ValueError("exponent bound must be nonnegative")
    sols = set()
    for u in s_units(S, B):
        v = 1 - u
        if v and _within_bound(v, S, B):
            sols.add((u, v))
    return SUnitSolutionSet(tuple(sorted(sols)), B, S)


def symmetry_closure_check(sols) -> bool:
    """Closure under (u,v)->(v,u), (1/u,-v/u), (-u/v,1/v).

    Those maps generate the S_3 acting on solutions; failure means the
    exponent bound cut an orbit in half.
    """
    pairs = set(sols.solutions if isinstance(sols, SUnitSolutionSet) else sols)
    for u, v in pairs:
        if (v, u) not in pairs:
            return False
        if (1 / u, -v / u) not in pairs or (-u / v, 1 / v) not in pairs:
            return False
    return True


def stable_bound(S: PrimeSet, B_max: int) -> int | None:
    """Smallest B with solve_unit_equation(S, B') identical for all B <= B' <= B_max."""
    ref = solve_unit_equation(S, B_max).solutions
    best = None
    for B in range(B_max, -1, -1):
        if solve_unit_equation(S, B).solutions != ref:
            break
        best = B
    return best


def pi_zero(S: PrimeSet, B: int) -> tuple[Fraction, ...]:
    """Exceptional S-units: t with t and 1 - t both S-units (exponents at most B)."""
    return tuple(sorted({u for u, _ in solve_unit_equation(S, B)}))


@dataclass(frozen=True)
class PiSet:
    points: PointSet
    S: PrimeSet
    dimension: int
    filtered: bool
    bound: int

    def __contains__(self, x):
        return x in self.points

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "S": self.S.to_json(),
            "filtered": self.filtered,
            "complete_up_to_bound": self.bound,
            "count": len(self.points),
            "points": self.points.to_json()["points"],
        }


def enumerate_pi(N: int, S: PrimeSet, B: int, filtered: bool = False) -> PiSet:
    """Frame points plus [1:t_1:...:t_N] with every t_i exceptional.

    filtered=True also demands t_i != t_j and t_i - t_j an S-unit, the pair
    conditions a good-reduction set through the frame must satisfy off the
    arrangement of coordinate and diagonal hyperplanes.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    ts = pi_zero(S, B)
    pts = set(standard_frame(N))
    for t in product(ts, repeat=N):
        if filtered and any(t[i] == t[j] or not is_s_unit(t[i] - t[j], S)
                            for i in range(N) for j in range(i + 1, N)):
            continue
        pts.add(ProjPoint((Fraction(1),) + t))
    return PiSet(PointSet(pts, N), S, N, filtered, B)


def hyperplane_arrangement_membership(x) -> bool:
    """Whether x lies on some z_i = 0 or z_i = z_j."""
    c = list(x.coords if isinstance(x, ProjPoint) else x)
    return any(a == 0 for a in c) or len(set(c)) < len(c)
