"""Points and hyperplanes of P^N over Q and F_p, and good reduction of point sets."""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .arith import PrimeSet, as_rational, outside_primes, primitive_vector
from .linalg import det, det_mod_p


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of P^N(Q), stored as its primitive integer representative.

    Any nonzero rational scaling of the input gives an equal point.
    """

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", primitive_vector(self.coords))

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[" + ":".join(map(str, self.coords)) + "]"

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coords]

    @classmethod
    def from_json(cls, data) -> "ProjPoint":
        return cls(tuple(as_rational(a) for a in data))


class Hyperplane(ProjPoint):
    """The hyperplane sum a_i z_i = 0, stored by its dual coordinates."""

    @property
    def dual_coords(self) -> tuple[int, ...]:
        return self.coords

    def contains(self, x) -> bool:
        return sum(a * as_rational(b) for a, b in zip(self.coords, x)) == 0

    def __repr__(self):
        return "H" + super().__repr__()


@dataclass(frozen=True, order=True)
class FpPoint:
    """A point of P^N(F_p), scaled so the first nonzero coordinate is 1."""

    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        p = self.p
        vals = [int(a) % p for a in self.coords]
        lead = next((a for a in vals if a), None)
        if lead is None:
            raise ValueError("all coordinates vanish mod p")
        inv = pow(lead, -1, p)
        object.__setattr__(self, "coords", tuple(a * inv % p for a in vals))

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[" + ":".join(map(str, self.coords)) + f"] mod {self.p}"


class FpHyperplane(FpPoint):
    def contains(self, x) -> bool:
        return sum(a * b for a, b in zip(self.coords, x)) % self.p == 0


class PointSet(Sequence):
    """Pairwise distinct points of a common P^N, kept in lexicographic order."""

    def __init__(self, points=(), dimension: int | None = None, dedupe: bool = False):
        pts = [p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in points]
        if dedupe:
            pts = list(set(pts))
        elif len(set(pts)) != len(pts):
            raise ValueError("point set has repeated points")
        dims = {p.dimension for p in pts}
        if len(dims) > 1:
            raise ValueError(f"points of mixed dimension {sorted(dims)}")
        if dims:
            d = dims.pop()
            if dimension is not None and dimension != d:
                raise ValueError(f"points live in P^{d}, not P^{dimension}")
            dimension = d
        if dimension is None:
            raise ValueError("empty point set needs an explicit dimension")
        self.dimension = dimension
        self._points = tuple(sorted(pts))
        self._members = frozenset(self._points)

    def __getitem__(self, i):
        return self._points[i]

    def __len__(self):
        return len(self._points)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        return isinstance(other, PointSet) and self._points == other._points

    def __hash__(self):
        return hash(self._points)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self._points)) + "}"

    def union(self, other) -> "PointSet":
        return PointSet(tuple(self) + tuple(other), self.dimension, dedupe=True)

    def issubset(self, other) -> bool:
        return all(x in other for x in self._points)

    def index(self, x, *args) -> int:
        return self._points.index(x, *args)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "points": [x.to_json() for x in self._points]}

    @classmethod
    def from_json(cls, data, dedupe: bool = False) -> "PointSet":
        if isinstance(data, list):
            data = {"points": data}
        pts = [ProjPoint.from_json(x) for x in data["points"]]
        return cls(pts, data.get("dimension"), dedupe=dedupe)


def standard_frame(N: int) -> list[ProjPoint]:
    """P_0, ..., P_N (coordinate points) followed by P_{N+1} = [1:...:1]."""
    pts = [ProjPoint(tuple(int(i == j) for j in range(N + 1))) for i in range(N + 1)]
    pts.append(ProjPoint((1,) * (N + 1)))
    return pts


def s_normalize(x, S: PrimeSet | None = None) -> ProjPoint:
    """S-normalized coordinates of x, in canonical form.

    Coordinates come back as coprime integers with positive leading entry.
    These are S-integers with min_i v_p(x_i) = 0 for every prime p, in
    particular for every p outside S; any two S-normalized forms differ by an
    S-unit, and dividing out the S-supported content and sign picks this one.
    """
    coords = x.coords if isinstance(x, ProjPoint) else tuple(x)
    return ProjPoint(primitive_vector(coords))


def reduce_point(x, p: int) -> FpPoint:
    x = x if isinstance(x, ProjPoint) else ProjPoint(tuple(x))
    # primitive integer coordinates are p-integral with a p-unit among them
    return FpPoint(x.coords, p)


def reduce_hyperplane(H, p: int) -> FpHyperplane:
    H = H if isinstance(H, ProjPoint) else Hyperplane(tuple(H))
    return FpHyperplane(H.coords, p)


def hyperplane_through(Y) -> Hyperplane:
    """The hyperplane spanned by N points of P^N (signed maximal minors)."""
    Y = list(Y)
    if not Y:
        raise ValueError("need N points")
    n = len(Y[0].coords)
    if len(Y) != n - 1:
        raise ValueError(f"need exactly {n - 1} points in P^{n - 1}, got {len(Y)}")
    rows = [list(y.coords) for y in Y]
    a = []
    for i in range(n):
        minor = [row[:i] + row[i + 1:] for row in rows]
        a.append((-1) ** i * det(minor))
    if not any(a):
        raise ValueError("degenerate point set, no unique hyperplane")
    return Hyperplane(tuple(a))


def _rows(X, p: int | None):
    if p is None:
        return [list(x.coords) for x in X]
    return [list(x.coords) if isinstance(x, FpPoint) else list(reduce_point(x, p).coords)
            for x in X]


def in_general_position(X, p: int | None = None) -> bool:
    """No N+1 of the points lie on a hyperplane, over Q (p=None) or over F_p.

    Over F_p the points are reduced one by one and kept as a list, so two
    points that collide mod p count as degenerate.
    """
    X = list(X)
    if not X:
        raise ValueError("empty point set")
    n = len(X[0].coords)
    if len(X) < n:
        raise ValueError(f"general position needs at least {n} points in P^{n - 1}")
    rows = _rows(X, p)
    for idx in combinations(range(len(rows)), n):
        sub = [rows[i] for i in idx]
        if (det(sub) if p is None else det_mod_p(sub, p)) == 0:
            return False
    return True


@dataclass(frozen=True)
class GoodReductionReport:
    """Outcome of a good-reduction check outside S.

    For point sets each witness is (prime, indices of an (N+1)-subset whose
    determinant the prime divides).  For morphisms witnesses are empty and
    `resultant` carries the certificate.
    """

    ok: bool
    bad_primes: tuple[int, ...]
    witnesses: tuple[tuple[int, tuple[int, ...]], ...] = ()
    degenerate: tuple[int, ...] | None = None
    criterion: str = "general-position"
    resultant: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {
            "ok": self.ok,
            "bad_primes": list(self.bad_primes),
            "witnesses": [{"prime": p, "indices": list(idx)} for p, idx in self.witnesses],
            "criterion": self.criterion,
        }
        if self.degenerate is not None:
            out["degenerate_subset"] = list(self.degenerate)
        if self.resultant is not None:
            out["resultant"] = str(self.resultant)
        out.update(self.extra)
        return out


def bad_primes_pointset(X, S: PrimeSet) -> GoodReductionReport:
    """Primes outside S at which the reduction of X leaves general position.

    Every (N+1)-subset determinant of the normalized coordinates is computed;
    a prime is bad iff it divides one of them.  A vanishing determinant means
    X is not in general position over Q at all; that is reported through
    `degenerate` and ok is False.
    """
    X = X if isinstance(X, PointSet) else PointSet(X)
    n = X.dimension + 1
    if len(X) < n:
        raise ValueError(f"need at least {n} points in P^{n - 1}")
    rows = [list(x.coords) for x in X]
    witnesses: dict[int, tuple[int, ...]] = {}
    degenerate = None
    for idx in combinations(range(len(rows)), n):
        D = det([rows[i] for i in idx])
        if D == 0:
            if degenerate is None:
                degenerate = idx
            continue
        for q in outside_primes(D, S):
            witnesses.setdefault(q, idx)
    bad = tuple(sorted(witnesses))
    return GoodReductionReport(
        ok=not bad and degenerate is None,
        bad_primes=bad,
        witnesses=tuple((q, witnesses[q]) for q in bad),
        degenerate=degenerate,
    )


def random_point(rng: random.Random, N: int, height: int) -> ProjPoint:
    while True:
        c = tuple(rng.randint(-height, height) for _ in range(N + 1))
        if any(c):
            return ProjPoint(c)
