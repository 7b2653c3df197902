"""Triples (f, X, Y): membership, conjugation, orbit classification and the f_c family."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, gcd
from typing import Any

from .arith import PrimeSet
from .hypersurface import contained_in_degree, min_containing_degree
from .morphism import Morphism, good_reduction_primes, parse_form
from .pgl import ProjLinearMap, _tuple_frames, frame_map, is_in_pl_os
from .projective import PointSet, ProjPoint, bad_primes_pointset, in_general_position


class MalformedInput(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    f: Morphism
    X: PointSet
    Y: PointSet

    @classmethod
    def from_map(cls, f: Morphism, Y) -> "Triple":
        Y = Y if isinstance(Y, PointSet) else PointSet(Y)
        return cls(f, Y.union(f(y) for y in Y), Y)

    @property
    def N(self) -> int:
        return self.f.N

    @property
    def d(self) -> int:
        return self.f.d

    @property
    def m(self) -> int:
        return len(self.Y)

    def to_json(self) -> dict:
        return {"map": self.f.to_json(), "X": self.X.to_json(), "Y": self.Y.to_json()}

    @classmethod
    def from_json(cls, data) -> "Triple":
        f = Morphism.from_json(data["map"])
        Y = PointSet.from_json(data["Y"])
        if "X" not in data:
            return cls.from_map(f, Y)
        return cls(f, PointSet.from_json(data["X"]), Y)


CONDITIONS = {
    1: "degree_d_morphism",
    2: "size_of_Y",
    3: "X_equals_Y_union_fY",
    4: "galois_invariant",
    5: "good_reduction_outside_S",
    6: "Y_off_degree_2d_hypersurfaces",
}


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    verdicts: dict[int, bool]
    witnesses: dict[int, Any] = field(default_factory=dict)
    ignored: tuple[int, ...] = ()

    @property
    def failed(self) -> tuple[int, ...]:
        return tuple(k for k, ok in sorted(self.verdicts.items()) if not ok)

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "failed": list(self.failed),
            "ignored": list(self.ignored),
            "paper_conditions": {
                f"{k}_{CONDITIONS[k]}": {"pass": self.verdicts[k], "detail": self.witnesses.get(k)}
                for k in sorted(self.verdicts)
            },
        }


def check_membership(t: Triple, S: PrimeSet, ignore=()) -> MembershipReport:
    """Test the six defining conditions of R_{d,N}[m](Q, S) for t.

    Galois invariance holds automatically for sets of rational points and is
    reported as passing without computation.
    """
    N, d = t.N, t.d
    if t.X.dimension != N or t.Y.dimension != N:
        raise MalformedInput(f"map on P^{N} but points in P^{t.X.dimension}, P^{t.Y.dimension}")
    v: dict[int, bool] = {}
    w: dict[int, Any] = {}

    v[1] = d >= 2 and t.f.resultant != 0
    w[1] = {"degree": d, "resultant": str(t.f.resultant)}

    need = ceil((N + 2) / 2)
    v[2] = t.m >= need
    w[2] = {"m": t.m, "required": need}

    image = t.Y.union(t.f(y) for y in t.Y)
    v[3] = image == t.X
    if not v[3]:
        w[3] = {"expected": image.to_json()["points"]}

    v[4] = True
    w[4] = "rational points: Galois-stable by construction, not computed"

    fr = good_reduction_primes(t.f, S)
    if len(t.X) >= N + 1:
        xr = bad_primes_pointset(t.X, S)
        w[5] = {"map": fr.to_json(), "points": xr.to_json()}
        v[5] = fr.ok and xr.ok
    else:
        w[5] = {"map": fr.to_json(), "points": f"|X| = {len(t.X)} < N+1"}
        v[5] = False

    v[6] = contained_in_degree(t.Y, 2 * d) is None
    if not v[6]:
        w[6] = {"min_degree": min_containing_degree(t.Y, 2 * d)}

    ignore = tuple(sorted(set(ignore)))
    member = all(ok for k, ok in v.items() if k not in ignore)
    return MembershipReport(member, v, w, ignore)


def conjugate_triple(t: Triple, phi: ProjLinearMap) -> Triple:
    """(phi^{-1} o f o phi, phi^{-1}(X), phi^{-1}(Y))."""
    inv = phi.inverse()
    return Triple(t.f.conjugate(phi), inv(t.X), inv(t.Y))


def _shape(t: Triple):
    return (t.d, t.N, t.m, len(t.X))


def _frame_points(t: Triple) -> PointSet:
    """Where to draw frames from: Y when it is big enough, else X.

    Conjugation carries Y onto Y, so frames from Y already reach every
    candidate map and there are far fewer of them.
    """
    return t.Y if len(t.Y) >= t.N + 2 else t.X


def triple_maps(t1: Triple, t2: Triple, S: PrimeSet):
    """Yield every phi in PL_{N+1}(O_S) with conjugate_triple(t1, phi) == t2."""
    if _shape(t1) != _shape(t2):
        return
    k = t1.N + 2
    if not (in_general_position(t1.X) and in_general_position(t2.X)):
        raise ValueError("orbit search needs X in general position")
    base = frame_map(list(_frame_points(t1))[:k])
    for _, psi in _tuple_frames(_frame_points(t2)):
        # psi sends a tuple of t2's points to the standard frame; chi sends t1's base there too
        chi = psi.inverse() @ base
        if chi(t1.Y) != t2.Y or chi(t1.X) != t2.X or not is_in_pl_os(chi, S):
            continue
        phi = chi.inverse()
        if t1.f.conjugate(phi) == t2.f:
            yield phi


def triples_equivalent(t1: Triple, t2: Triple, S: PrimeSet) -> ProjLinearMap | None:
    return next(triple_maps(t1, t2, S), None)


def classify_orbits(ts, S: PrimeSet) -> list[list[int]]:
    """Partition indices of ts into PL_{N+1}(O_S)-orbits, each led by its lowest index."""
    ts = list(ts)
    if not ts:
        return []
    shapes = {_shape(t) for t in ts}
    if len(shapes) > 1:
        raise ValueError(f"triples with different (d, N, m, |X|): {sorted(shapes)}")
    orbits: list[list[int]] = []
    for i, t in enumerate(ts):
        for orbit in orbits:
            if triples_equivalent(ts[orbit[0]], t, S) is not None:
                orbit.append(i)
                break
        else:
            orbits.append([i])
    return orbits


def orbit_key(t: Triple, S: PrimeSet):
    """A complete PL_{N+1}(O_S)-orbit invariant, or None when no frame map is S-integral.

    Every ordered frame tuple psi gives a normalized triple; the key is the
    least normalized (Y, X, f).  Conjugate triples have the same set of
    normalizations, so equal keys mean same orbit and conversely.
    """
    best_y, candidates = None, []
    for _, psi in _tuple_frames(_frame_points(t)):
        if not is_in_pl_os(psi, S):
            continue
        y = psi.image_coords(t.Y)
        if best_y is None or y < best_y:
            best_y, candidates = y, [psi]
        elif y == best_y:
            candidates.append(psi)
    if best_y is None:
        return None
    best_x = min(psi.image_coords(t.X) for psi in candidates)
    fkey = min(t.f.conjugate(psi.inverse()).coefficients
               for psi in candidates if psi.image_coords(t.X) == best_x)
    return (best_y, best_x, fkey)


# ---------------------------------------------------------------------------
# the f_c family
# ---------------------------------------------------------------------------

def build_fc(c: int) -> Morphism:
    """[x0^2 : c(x0^2+x1^2-x2^2) + x0^2 + x1^2 : x0^2+x1^2-x2^2]."""
    q = parse_form("x0^2 + x1^2 - x2^2", 2)
    return Morphism([parse_form("x0^2", 2), q * c + parse_form("x0^2 + x1^2", 2), q])


def pythagorean_points(count: int) -> PointSet:
    """[m^2-n^2 : 2mn : m^2+n^2] over coprime m > n of opposite parity, by (m, n)."""
    if count < 1:
        raise ValueError("count must be positive")
    pts = []
    m = 2
    while len(pts) < count:
        for n in range(1, m):
            if (m - n) % 2 == 1 and gcd(m, n) == 1:
                pts.append(ProjPoint((m * m - n * n, 2 * m * n, m * m + n * n)))
                if len(pts) == count:
                    break
        m += 1
    Y = PointSet(pts)
    if count >= 4 and not in_general_position(Y):
        raise RuntimeError("conic points not in general position")
    return Y


def fc_conic_points() -> PointSet:
    """The four conic points [+-3 : +-4 : 5].

    All four share the image [9:25:0] under every f_c, which keeps
    X = Y u f_c(Y) in general position.  Images of points from distinct
    Pythagorean triples all land on the line z_2 = 0, so three or more of
    those would make X degenerate.
    """
    return PointSet([(3, 4, 5), (3, -4, 5), (-3, 4, 5), (-3, -4, 5)])


def fc_family(cs, Y=None) -> tuple[list[Triple], PrimeSet]:
    """Triples (f_c, X, Y) for each c, and the smallest S giving X good reduction."""
    Y = fc_conic_points() if Y is None else Y
    ts = [Triple.from_map(build_fc(c), Y) for c in cs]
    S = PrimeSet()
    for t in ts:
        S = S.union(bad_primes_pointset(t.X, S).bad_primes)
    return ts, S
