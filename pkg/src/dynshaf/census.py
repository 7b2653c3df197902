"""Height-bounded census of R_{d,N}[m](Q, S) up to PL_{N+1}(O_S)-conjugacy.

Every member is conjugate to one whose X contains the standard frame, and
then X lies inside the candidate set Pi.  The census therefore walks all
maps of coefficient height <= H with good reduction outside S, keeps the
points of Pi whose image is again in Pi, and tries every m-subset of those as
Y.  Surviving triples are grouped by a canonical orbit key.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .arith import PrimeSet, is_s_unit
from .harness import Triple, check_membership, conjugate_triple, orbit_key
from .hypersurface import HomogeneousForm
from .linalg import det
from .morphism import Morphism, NotAMorphism
from .pgl import ProjLinearMap
from .projective import PointSet, standard_frame
from .sunit import enumerate_pi


@dataclass
class CensusResult:
    orbit_count: int
    representatives: list[Triple]
    triples_found: int
    complete: bool
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "orbit_count": self.orbit_count,
            "triples_found": self.triples_found,
            "complete": self.complete,
            "metadata": self.metadata,
            "representatives": [t.to_json() for t in self.representatives],
        }


def _maps_of_height(N: int, d: int, H: int):
    """Primitive coefficient vectors with entries in [-H, H] and positive leading entry."""
    r = comb(N + d, d)
    for flat in product(range(-H, H + 1), repeat=(N + 1) * r):
        lead = next((a for a in flat if a), 0)
        if lead <= 0:
            continue
        forms = [flat[i * r:(i + 1) * r] for i in range(N + 1)]
        if any(not any(F) for F in forms):
            continue
        g = 0
        for a in flat:
            g = _gcd(g, a)
        if g != 1:
            continue
        yield forms


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _good_set(X, S, n) -> bool:
    rows = [x.coords for x in X]
    return all(is_s_unit(det([list(rows[i]) for i in idx]), S)
               for idx in combinations(range(len(rows)), n))


def census(N: int, d: int, m: int, S: PrimeSet, height: int, bound: int,
           conjugator: ProjLinearMap | None = None,
           max_seconds: float | None = None) -> CensusResult:
    """Count orbits of height-bounded members of R_{d,N}[m](Q, S).

    `conjugator`, when given, is applied to every triple before classifying
    (the count must not change).  Running past `max_seconds` stops early and
    marks the result incomplete.
    """
    start = time.monotonic()
    pi = enumerate_pi(N, S, bound)
    frame = set(standard_frame(N))
    pts = list(pi.points)
    complete = True
    triples: list[Triple] = []
    maps_checked = maps_good = 0

    for forms in _maps_of_height(N, d, height):
        if max_seconds is not None and time.monotonic() - start > max_seconds:
            complete = False
            break
        maps_checked += 1
        try:
            f = Morphism([HomogeneousForm.from_vector(N, d, F) for F in forms])
        except NotAMorphism:
            continue
        if not is_s_unit(f.resultant, S):
            continue
        maps_good += 1
        image = {}
        for y in pts:
            fy = f(y)
            if fy in pi.points:
                image[y] = fy
        if len(image) < m:
            continue
        for Ys in combinations(sorted(image), m):
            X = set(Ys) | {image[y] for y in Ys}
            if not frame <= X or len(X) < N + 2:
                continue
            if not _good_set(X, S, N + 1):
                continue
            t = Triple(f, PointSet(X, N), PointSet(Ys, N))
            if check_membership(t, S).member:
                triples.append(t)

    if conjugator is not None:
        triples = [conjugate_triple(t, conjugator) for t in triples]
    reps: dict = {}
    for t in triples:
        key = orbit_key(t, S)
        if key is None:
            raise RuntimeError("member triple without an S-integral frame map")
        reps.setdefault(key, t)
    ordered = [reps[k] for k in sorted(reps)]
    meta = {
        "N": N, "d": d, "m": m, "S": S.to_json(), "height": height,
        "complete_up_to_bound": bound, "pi_size": len(pi),
        "maps_checked": maps_checked, "maps_with_good_reduction": maps_good,
        "conjugator": conjugator.to_json() if conjugator is not None else None,
    }
    return CensusResult(len(reps), ordered, len(triples), complete, meta)
