"""PGL_{N+1}(Q), the subgroup PL_{N+1}(O_S), frame maps and orbit search on point sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .arith import PrimeSet, _primitive_ints, as_rational, is_s_unit, primitive_vector
from .linalg import adjugate, det, matmul, matvec
from .projective import PointSet, ProjPoint, in_general_position


@dataclass(frozen=True)
class ProjLinearMap:
    """An invertible matrix up to scalars, stored as its primitive integer representative."""

    matrix: tuple[tuple[int, ...], ...]
    _det: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = [tuple(r) for r in self.matrix]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        flat = primitive_vector([a for r in rows for a in r])
        M = tuple(flat[i * n:(i + 1) * n] for i in range(n))
        D = det([list(r) for r in M])
        if D == 0:
            raise ValueError("matrix is singular")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "_det", D)

    @classmethod
    def identity(cls, N: int) -> "ProjLinearMap":
        return cls(tuple(tuple(int(i == j) for j in range(N + 1)) for i in range(N + 1)))

    @property
    def dimension(self) -> int:
        return len(self.matrix) - 1

    @property
    def det(self) -> int:
        return self._det

    def __call__(self, x):
        if isinstance(x, PointSet):
            return PointSet([self(p) for p in x], x.dimension)
        c = x.coords
        if len(c) != len(self.matrix):
            raise ValueError("dimension mismatch")
        return ProjPoint(tuple(sum(a * b for a, b in zip(row, c)) for row in self.matrix))

    def image_coords(self, points) -> tuple[tuple[int, ...], ...]:
        """Sorted primitive coordinates of phi(points), without building ProjPoints."""
        out = []
        for x in points:
            v = tuple(sum(a * b for a, b in zip(row, x.coords)) for row in self.matrix)
            out.append(_primitive_ints(v))
        out.sort()
        return tuple(out)

    def __matmul__(self, other: "ProjLinearMap") -> "ProjLinearMap":
        return ProjLinearMap(tuple(map(tuple, matmul(self.matrix, other.matrix))))

    def inverse(self) -> "ProjLinearMap":
        return ProjLinearMap(tuple(map(tuple, adjugate([list(r) for r in self.matrix]))))

    def __repr__(self):
        return "PLM" + repr([list(r) for r in self.matrix])

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in row] for row in self.matrix]

    @classmethod
    def from_json(cls, data) -> "ProjLinearMap":
        if data and not isinstance(data[0], list):
            n = round(len(data) ** 0.5)
            if n * n != len(data):
                raise ValueError("flat matrix length is not a square")
            data = [data[i * n:(i + 1) * n] for i in range(n)]
        return cls(tuple(tuple(as_rational(a) for a in row) for row in data))


def is_in_pl_os(phi: ProjLinearMap, S: PrimeSet) -> bool:
    """Whether phi has a scalar multiple in GL_{N+1}(O_S).

    phi is stored primitive, so for p outside S the scalar must be a p-unit
    and the question reduces to det being an S-unit.
    """
    return is_s_unit(phi.det, S)


def apply(phi: ProjLinearMap, x):
    return phi(x)


def _dependent_subset(P: list[ProjPoint]):
    n = len(P[0].coords)
    for idx in combinations(range(len(P)), n):
        if det([list(P[i].coords) for i in idx]) == 0:
            return idx
    return None


def frame_map(P) -> ProjLinearMap:
    """The map sending P_0..P_N to the coordinate points and P_{N+1} to [1:...:1].

    Writes P_{N+1} = sum lambda_i P_i, takes M with columns lambda_i P_i
    (so M sends the standard frame to P) and returns M^{-1}.  Everything is
    kept integral by scaling lambda by det of the first N+1 points.
    """
    P = list(P)
    n = len(P[0].coords)
    if len(P) != n + 1:
        raise ValueError(f"a frame of P^{n - 1} has {n + 1} points, got {len(P)}")
    A = [list(r) for r in zip(*(p.coords for p in P[:n]))]
    lam = matvec(adjugate(A), P[n].coords) if det(A) else None
    if lam is None or not all(lam):
        raise ValueError(f"degenerate frame: points {_dependent_subset(P)} are dependent")
    M = [[lam[j] * A[i][j] for j in range(n)] for i in range(n)]
    return ProjLinearMap(tuple(map(tuple, adjugate(M))))


@lru_cache(maxsize=1024)
def _tuple_frames(X: PointSet) -> tuple:
    """(ordered index tuple, frame_map) for every ordered (N+2)-tuple of X."""
    k = X.dimension + 2
    out = []
    for idx in permutations(range(len(X)), k):
        try:
            out.append((idx, frame_map([X[i] for i in idx])))
        except ValueError:
            continue
    return tuple(out)


def orbit_maps(X1, X2, S: PrimeSet):
    """Yield every phi in PL_{N+1}(O_S) with phi(X1) = X2, in lexicographic frame order."""
    X1 = X1 if isinstance(X1, PointSet) else PointSet(X1)
    X2 = X2 if isinstance(X2, PointSet) else PointSet(X2)
    if len(X1) != len(X2) or X1.dimension != X2.dimension:
        return
    k = X1.dimension + 2
    if len(X1) < k:
        raise ValueError(f"need at least {k} points to pin down a projective map")
    for X in (X1, X2):
        if not in_general_position(X):
            raise ValueError("orbit search needs point sets in general position")
    base = frame_map(list(X1)[:k])
    for _, psi in _tuple_frames(X2):
        phi = psi.inverse() @ base
        if phi(X1) == X2 and is_in_pl_os(phi, S):
            yield phi


def orbit_equivalent(X1, X2, S: PrimeSet) -> ProjLinearMap | None:
    """First phi in PL_{N+1}(O_S) carrying X1 onto X2, or None."""
    return next(orbit_maps(X1, X2, S), None)


def random_pl_element(N: int, S: PrimeSet, rng: random.Random, steps: int = 6,
                      size: int = 3) -> ProjLinearMap:
    """Random element of PL_{N+1}(O_S): elementary moves times an S-unit diagonal."""
    n = N + 1
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-size, size)
        M = [[M[r][s] + (c * M[j][s] if r == i else 0) for s in range(n)] for r in range(n)]
    primes = list(S)
    diag = []
    for _ in range(n):
        # at most two primes per entry keeps heights sane when S is large
        u = rng.choice((1, -1))
        for p in rng.sample(primes, min(2, len(primes))):
            u *= p ** rng.randint(0, 2)
        diag.append(u)
    M = [[diag[r] * M[r][s] for s in range(n)] for r in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    M = [M[perm[r]] for r in range(n)]
    return ProjLinearMap(tuple(map(tuple, M)))
