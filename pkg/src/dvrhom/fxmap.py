"""Evaluation and certification of the nearest-vertex map.

Points of a realized simplex are carried to digraph vertices: a point goes
to its unique nearest vertex when one exists, and ties are broken toward the
vertex occurring last in the carrier simplex's witness ordering.  On the
standard simplex, squared distance to the i-th vertex is
sum(t_k^2) - 2 t_i + 1, so "nearest vertex" is exactly "largest barycentric
coordinate"; all comparisons here are exact rational arithmetic, never a
geometric tolerance.

Points on a proper face must be presented on that face's own simplex (with
the face's witness) to get the face-level value; evaluation is always
relative to the carrier given.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .digraph import InputError


@dataclass(frozen=True)
class RealizationPoint:
    """A point of one realized simplex, in barycentric coordinates.

    ``witness`` is the carrier simplex's witness ordering; ``coords[i]`` is
    the exact coordinate of ``witness[i]``.  Coordinates are nonnegative and
    sum to one.
    """

    witness: tuple
    coords: tuple

    def __post_init__(self):
        witness = tuple(self.witness)
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "coords", coords)
        if len(witness) != len(set(witness)):
            raise InputError("carrier witness repeats a vertex")
        if len(coords) != len(witness):
            raise InputError("coordinate count does not match the carrier")
        if not coords:
            raise InputError("a realization point needs a nonempty carrier")
        if any(c < 0 for c in coords):
            raise InputError("barycentric coordinates must be nonnegative")
        if sum(coords) != 1:
            raise InputError("barycentric coordinates must sum to 1")


def point_in(k, verts, coords):
    """Realization point on a simplex of ``k``, using its stored witness."""
    verts = tuple(sorted(verts))
    if verts not in k.index:
        raise InputError(f"{verts} is not a simplex of the complex")
    return RealizationPoint(k.witness[verts], coords)


def barycenter(k, verts):
    verts = tuple(sorted(verts))
    if verts not in k.index:
        raise InputError(f"{verts} is not a simplex of the complex")
    n = len(verts)
    return RealizationPoint(k.witness[verts], (Fraction(1, n),) * n)


def tie_set(p):
    """Vertices achieving the maximal coordinate, ascending; exact compare."""
    top = max(p.coords)
    return tuple(sorted(v for v, c in zip(p.witness, p.coords) if c == top))


def evaluate_fx(p):
    """Value of the nearest-vertex map at ``p``, relative to its carrier.

    The unique coordinate maximum wins outright; among tied vertices the one
    with the largest witness index wins.
    """
    top = max(p.coords)
    for i in range(len(p.coords) - 1, -1, -1):
        if p.coords[i] == top:
            return p.witness[i]
    raise AssertionError("unreachable: coords are nonempty")


def carrier_point(k, p):
    """Push a point with zero coordinates down to its minimal face carrier."""
    support = {v: c for v, c in zip(p.witness, p.coords) if c > 0}
    face = tuple(sorted(support))
    if face == tuple(sorted(p.witness)):
        return p
    if face not in k.index:
        raise InputError(f"face {face} is missing from the complex")
    w = k.witness[face]
    return RealizationPoint(w, tuple(support[v] for v in w))


@dataclass(frozen=True)
class CertificateReport:
    passed: bool
    simplices: int
    checks: int
    counterexample: tuple | None  # (simplex, tie subset, vertex, target)


def continuity_certificate(k, g):
    """Combinatorial continuity check of the nearest-vertex map.

    For every simplex and every nonempty subset tau of its support, the
    tie-broken image w (the tau-member last in the witness) must satisfy
    v -> w for all v in tau: nearby points map into the minimal neighborhood
    of w.  Holds for every correctly built complex; a failure indicates a
    corrupted witness.
    """
    checks = 0
    count = 0
    for s in k.simplices():
        count += 1
        w = k.witness[s]
        pos = {v: i for i, v in enumerate(w)}
        for size in range(1, len(s) + 1):
            for tau in combinations(s, size):
                checks += 1
                target = max(tau, key=pos.__getitem__)
                for v in tau:
                    if not g.has_edge(v, target):
                        return CertificateReport(
                            False, count, checks, (s, tau, v, target)
                        )
    return CertificateReport(True, count, checks, None)


@dataclass(frozen=True)
class SampleFailure:
    index: int
    carrier: tuple
    base_value: int
    perturbed_value: int
    pass_delta: Fraction | None  # first halved radius at which the check passes


@dataclass(frozen=True)
class SampleReport:
    samples: int
    delta: Fraction
    seed: int
    checked: int
    failures: tuple

    @property
    def failure_count(self):
        return len(self.failures)

    @property
    def failure_rate(self):
        if not self.checked:
            return Fraction(0)
        return Fraction(len(self.failures), self.checked)


def _transfer(coords, i, j, amount):
    new = list(coords)
    new[i] -= amount
    new[j] += amount
    return tuple(new)


def sampled_continuity_check(k, g, samples, delta, seed=0):
    """Randomized continuity probe of the nearest-vertex map.

    Draws interior points (integer weights 1..1000, normalized) on random
    simplices, perturbs each within its carrier by moving at most delta/2 of
    mass between two coordinates (an l1 move of at most delta, exactly
    simplex-preserving), pushes the perturbed point to its minimal face
    carrier, and checks that its image keeps an edge to the base image.

    Failures are possible when delta exceeds a point's coordinate gap on a
    one-way edge; each failure is retried at halved radii and the first
    passing radius is recorded, which must exist for interior points.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise InputError("perturbation radius must be positive")
    rng = random.Random(seed)
    all_simplices = list(k.simplices())
    if not all_simplices:
        return SampleReport(samples, delta, seed, 0, ())
    failures = []
    for idx in range(samples):
        s = all_simplices[rng.randrange(len(all_simplices))]
        w = k.witness[s]
        d = len(w)
        weights = [rng.randint(1, 1000) for _ in range(d)]
        total = sum(weights)
        coords = tuple(Fraction(wt, total) for wt in weights)
        base = RealizationPoint(w, coords)
        base_value = evaluate_fx(base)
        if d == 1:
            continue  # no room to move inside a vertex
        i, j = rng.sample(range(d), 2)
        amount = min(delta * rng.randint(0, 1000) / 2000, coords[i])

        def value_at(a):
            moved = carrier_point(k, RealizationPoint(w, _transfer(coords, i, j, a)))
            return evaluate_fx(moved)

        perturbed_value = value_at(amount)
        if g.has_edge(perturbed_value, base_value):
            continue
        pass_delta = None
        shrink = amount
        for _ in range(80):
            shrink /= 2
            if g.has_edge(value_at(shrink), base_value):
                pass_delta = 2 * shrink
                break
        failures.append(
            SampleFailure(idx, s, base_value, perturbed_value, pass_delta)
        )
    return SampleReport(samples, delta, seed, samples, tuple(failures))
