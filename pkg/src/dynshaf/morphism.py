"""Degree-d endomorphisms of P^N over Q: resultants, reduction, interpolation."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .arith import PrimeSet, as_rational, outside_primes, primitive_vector, valuation
from .hypersurface import HomogeneousForm, contained_in_degree, monomial_exponents, monomial_value
from .linalg import adjugate, det, nullspace
from .projective import GoodReductionReport, PointSet, ProjPoint


class NotAMorphism(ValueError):
    """Raised when N+1 forms share a common zero (vanishing resultant)."""

    def __init__(self, message: str, witness: ProjPoint | None = None):
        super().__init__(message)
        self.witness = witness


class NoSuchMap(ValueError):
    pass


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_form(text: str, N: int) -> HomogeneousForm:
    """Parse e.g. "x0^2 - 3/2*x1*x2" (every term must have the same degree)."""
    terms: dict[tuple[int, ...], Fraction] = {}
    degree = None
    for sign, body in _TERM.findall(text.replace(" ", "")):
        coeff, e = Fraction(1), [0] * (N + 1)
        for factor in body.split("*"):
            m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if m:
                i = int(m.group(1))
                if i > N:
                    raise ValueError(f"variable x{i} out of range for P^{N}")
                e[i] += int(m.group(2) or 1)
            else:
                coeff *= Fraction(factor)
        if sign == "-":
            coeff = -coeff
        if degree is None:
            degree = sum(e)
        elif sum(e) != degree:
            raise ValueError(f"form {text!r} is not homogeneous")
        terms[tuple(e)] = terms.get(tuple(e), 0) + coeff
    if degree is None:
        raise ValueError("empty form")
    return HomogeneousForm(N, degree, terms)


def _macaulay_ratio(forms) -> tuple[int | Fraction, int | Fraction]:
    N = forms[0].N
    degs = [F.d for F in forms]
    D = sum(d - 1 for d in degs) + 1
    mons = monomial_exponents(N, D)
    col = {e: k for k, e in enumerate(mons)}
    rows, nonreduced = [], []
    for k, a in enumerate(mons):
        big = [i for i in range(N + 1) if a[i] >= degs[i]]
        if len(big) > 1:
            nonreduced.append(k)
        i = big[0]
        shift = tuple(a[j] - (degs[i] if j == i else 0) for j in range(N + 1))
        row = [0] * len(mons)
        for e, c in forms[i].terms.items():
            row[col[tuple(x + y for x, y in zip(e, shift))]] = c
        rows.append(row)
    extraneous = [[rows[k][l] for l in nonreduced] for k in nonreduced]
    return det(rows), det(extraneous)


def _unimodular_schedule(n: int, attempt: int) -> list[list[int]]:
    rng = random.Random(1000 + attempt)
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n + attempt):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1)) * rng.randint(1, 1 + attempt)
        A = [[A[r][s] + (c * A[j][s] if r == i else 0) for s in range(n)] for r in range(n)]
    return A


def macaulay_resultant(forms, max_attempts: int = 32):
    """Res(F_0, ..., F_N) by Macaulay's quotient of determinants.

    Normalized so Res(x_0^d, ..., x_N^d) = 1.  When the extraneous minor
    vanishes the forms are pushed through a unimodular substitution first;
    since det = 1 that leaves the resultant unchanged.
    """
    forms = list(forms.forms if isinstance(forms, Morphism) else forms)
    N = forms[0].N
    if len(forms) != N + 1 or any(F.N != N for F in forms):
        raise ValueError(f"need {N + 1} forms in {N + 1} variables")
    if N == 0:
        return forms[0].terms.get((forms[0].d,), 0)
    current = forms
    for attempt in range(max_attempts):
        top, bottom = _macaulay_ratio(current)
        if bottom != 0:
            q = Fraction(top) / Fraction(bottom)
            return q.numerator if q.denominator == 1 else q
        A = _unimodular_schedule(N + 1, attempt)
        current = [F.substitute(A) for F in forms]
    raise RuntimeError("extraneous Macaulay factor stayed zero under every coordinate change")


def _common_zero(forms, height: int = 3) -> ProjPoint | None:
    N = forms[0].N
    for c in product(range(-height, height + 1), repeat=N + 1):
        if any(c) and all(F(c) == 0 for F in forms):
            return ProjPoint(c)
    return None


class Morphism:
    """f = [F_0 : ... : F_N] of degree d >= 2, coefficients primitive integers."""

    __slots__ = ("N", "d", "forms", "resultant", "_key")

    def __init__(self, forms):
        forms = list(forms)
        if not forms:
            raise ValueError("no forms given")
        N, d = forms[0].N, forms[0].d
        if len(forms) != N + 1:
            raise ValueError(f"a self-map of P^{N} needs {N + 1} forms, got {len(forms)}")
        if any((F.N, F.d) != (N, d) for F in forms):
            raise ValueError("forms must share dimension and degree")
        if d < 2:
            raise ValueError(f"degree {d} < 2: not a dynamical morphism")
        flat = primitive_vector([c for F in forms for c in F.vector()])
        r = comb(N + d, d)
        self.N, self.d = N, d
        self.forms = tuple(HomogeneousForm.from_vector(N, d, flat[i * r:(i + 1) * r])
                           for i in range(N + 1))
        self._key = flat
        res = macaulay_resultant(self.forms)
        if res == 0:
            raise NotAMorphism("not a morphism: the forms have a common zero",
                               _common_zero(self.forms))
        self.resultant = int(res)

    @classmethod
    def from_strings(cls, texts, N: int | None = None) -> "Morphism":
        texts = list(texts)
        return cls(parse_form(t, len(texts) - 1 if N is None else N) for t in texts)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._key

    def __call__(self, x) -> ProjPoint:
        return evaluate(self, x)

    def conjugate(self, phi) -> "Morphism":
        """phi^{-1} o f o phi."""
        A = [list(r) for r in phi.matrix]
        if len(A) != self.N + 1:
            raise ValueError("dimension mismatch")
        pulled = [F.substitute(A) for F in self.forms]
        adj = adjugate(A)
        out = []
        for row in adj:
            G = HomogeneousForm(self.N, self.d)
            for a, F in zip(row, pulled):
                if a:
                    G = G + F * a
            out.append(G)
        return Morphism(out)

    def __eq__(self, other):
        return isinstance(other, Morphism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "[" + " : ".join(map(repr, self.forms)) + "]"

    def to_json(self) -> dict:
        return {"dimension": self.N, "degree": self.d, "forms": [F.to_json() for F in self.forms]}

    @classmethod
    def from_json(cls, data) -> "Morphism":
        N = data.get("dimension")
        if N is None:
            N = len(data["forms"]) - 1
        forms = []
        for F in data["forms"]:
            forms.append(parse_form(F, N) if isinstance(F, str) else HomogeneousForm.from_json(F, N))
        return cls(forms)


def evaluate(f: Morphism, x) -> ProjPoint:
    if len(x.coords) != f.N + 1:
        raise ValueError("dimension mismatch")
    vals = [F(x.coords) for F in f.forms]
    if not any(vals):
        raise RuntimeError(f"invariant violated: every form of {f} vanishes at {x}")
    return ProjPoint(tuple(vals))


def good_reduction_primes(f: Morphism, S: PrimeSet) -> GoodReductionReport:
    """Primes outside S dividing the resultant of the primitive model.

    This is the stable-model criterion: outside the returned primes the
    coefficientwise reduction is still a morphism of degree d.  It is
    sufficient for good reduction, not necessary (a conjugate could do better).
    """
    bad = outside_primes(f.resultant, S)
    return GoodReductionReport(
        ok=not bad,
        bad_primes=bad,
        criterion="stable-model",
        resultant=f.resultant,
        extra={"valuations": {str(p): valuation(f.resultant, p) for p in bad}},
    )


@dataclass(frozen=True)
class InterpolationResult:
    basis: tuple[tuple[HomogeneousForm, ...], ...]
    morphisms: tuple[Morphism, ...]
    unique: bool

    @property
    def projective_dimension(self) -> int:
        return len(self.basis) - 1

    @property
    def map(self) -> Morphism | None:
        return self.morphisms[0] if self.unique else None


def interpolate(pairs, d: int) -> InterpolationResult:
    """Degree-d maps with f(P_k) = Q_k, via the linear 2x2-minor conditions.

    The linear solution space can be larger than the set of honest maps
    (members may vanish at some P_k or fail to be morphisms); `morphisms`
    holds the basis vectors that survive both checks.
    """
    values: dict[ProjPoint, ProjPoint] = {}
    for P, Q in pairs:
        if values.setdefault(P, Q) != Q:
            raise NoSuchMap(f"no such map of degree {d}: {P} sent to both {values[P]} and {Q}")
    if not values:
        raise ValueError("no interpolation data")
    N = next(iter(values)).dimension
    exps = monomial_exponents(N, d)
    r = len(exps)
    rows = []
    for P, Q in values.items():
        mon = [monomial_value(e, P.coords) for e in exps]
        for i, j in combinations(range(N + 1), 2):
            if not (Q[i] or Q[j]):
                continue
            row = [0] * ((N + 1) * r)
            for s, m in enumerate(mon):
                row[j * r + s] += Q[i] * m
                row[i * r + s] -= Q[j] * m
            rows.append(row)
    kernel = nullspace(rows, (N + 1) * r) if rows else nullspace([], (N + 1) * r)
    if not kernel:
        raise NoSuchMap(f"no such map of degree {d}")
    basis = tuple(tuple(HomogeneousForm.from_vector(N, d, v[i * r:(i + 1) * r]) for i in range(N + 1))
                  for v in kernel)
    good = []
    for forms in basis:
        try:
            g = Morphism(forms)
            if all(evaluate(g, P) == Q for P, Q in values.items()):
                good.append(g)
        except (ValueError, RuntimeError):
            continue
    return InterpolationResult(basis, tuple(good), len(basis) == 1 and len(good) == 1)


def _as_forms(f) -> tuple[HomogeneousForm, ...]:
    forms = tuple(f.forms if isinstance(f, Morphism) else f)
    if not forms or any((F.N, F.d) != (forms[0].N, forms[0].d) for F in forms):
        raise ValueError("forms must share dimension and degree")
    return forms


def equalizer_forms(f, g) -> list[HomogeneousForm]:
    """F_i G_j - F_j G_i for i < j: degree-2d forms cutting out {f = g}.

    f and g may be Morphisms or bare tuples of forms (so rational maps with
    base points are allowed).
    """
    F, G = _as_forms(f), _as_forms(g)
    if (len(F), F[0].N, F[0].d) != (len(G), G[0].N, G[0].d):
        raise ValueError("maps of different dimension or degree")
    return [F[i] * G[j] - F[j] * G[i] for i, j in combinations(range(len(F)), 2)]


def uniqueness_certificate(Y, f, g) -> bool:
    """True when Y certifies f = g: f and g agree on Y and Y lies on no degree-2d hypersurface.

    Containment in degree <= 2d is equivalent to containment in degree 2d
    (multiply by a power of x_0), so one kernel computation suffices.
    """
    Y = Y if isinstance(Y, PointSet) else PointSet(Y)
    F, G = _as_forms(f), _as_forms(g)
    if contained_in_degree(Y, 2 * F[0].d) is not None:
        return False
    if not all(E(y.coords) == 0 for E in equalizer_forms(F, G) for y in Y):
        return False
    flat = lambda H: primitive_vector([c for K in H for c in K.vector()])
    if flat(F) != flat(G):
        raise RuntimeError("certificate holds but the maps differ")
    return True


def random_morphism(N: int, d: int, rng: random.Random, height: int = 5) -> Morphism:
    r = comb(N + d, d)
    while True:
        forms = [HomogeneousForm.from_vector(N, d, [rng.randint(-height, height) for _ in range(r)])
                 for _ in range(N + 1)]
        if any(F.is_zero for F in forms):
            continue
        try:
            return Morphism(forms)
        except NotAMorphism:
            continue


def diagonal_form(N: int, d: int, i: int, c=1) -> HomogeneousForm:
    return HomogeneousForm.monomial(tuple(d if j == i else 0 for j in range(N + 1)), as_rational(c))
