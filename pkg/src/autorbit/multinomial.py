"""Exact multinomial machinery: the pmf values r(M) attached to multisets of
same-type classes, the orbit-proportion product bound they assemble into, and
the two computer-checked verification sweeps (the Lagrange-point grid and the
pmf <= max success probability bound).

Everything is `fractions.Fraction`; no floats and no tolerances anywhere."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .stypes import ClassTypeTable
from .wreath import WreathElement, WreathGroup, profile


class BadComposition(ValueError):
    pass


@dataclass
class TypeDistribution:
    """Counts over the ordered classes of one type, with their exact
    per-coset proportions; sum(rho) must be exactly 1."""

    type_id: int
    class_ids: list[int]
    rho: list[Fraction]
    counts: list[int]

    def __post_init__(self):
        if len(self.class_ids) != len(self.rho) or len(self.rho) != len(self.counts):
            raise BadComposition("class/rho/count lengths differ")
        if any(c < 0 for c in self.counts):
            raise BadComposition("negative count")
        if sum(self.rho, Fraction(0)) != 1:
            raise BadComposition("rho does not sum to 1")

    @property
    def n(self) -> int:
        return sum(self.counts)


def multinomial_coefficient(counts: Sequence[int]) -> int:
    total, out = 0, 1
    for c in counts:
        total += c
        out *= comb(total, c)
    return out


def pmf(rho: Sequence[Fraction], counts: Sequence[int]) -> Fraction:
    """Multinomial pmf at `counts`; 0^0 = 1 so zero-probability classes with
    zero count are neutral."""
    value = Fraction(multinomial_coefficient(counts))
    for r, c in zip(rho, counts):
        value *= Fraction(r) ** c
    return value


def r_value(dist: TypeDistribution) -> Fraction:
    return pmf(dist.rho, dist.counts)


def orbit_upper_bound(wg: WreathGroup, w: WreathElement,
                      typing: ClassTypeTable) -> Fraction:
    """Product over cycle lengths l and types tau of r(M_l^tau(w)): an upper
    bound for the orbit proportion of w in any admissible overgroup of the
    socle power."""
    prof = profile(wg, w, typing=typing)
    bound = Fraction(1)
    for (_, tau), multiset in sorted(prof.by_length_and_type.items()):
        class_ids = typing.classes_of_type(tau)
        counts = [sum(1 for c in multiset if c == cid) for cid in class_ids]
        dist = TypeDistribution(tau, class_ids, [typing.rho[c] for c in class_ids], counts)
        bound *= r_value(dist)
    return bound


# -- the Lagrange-point grid ---------------------------------------------------

def lemma3_candidate_value(n: int, counts: Sequence[int]) -> Fraction:
    """Value of f(x) = multinomial(n; l) * x_1^(l_1 - 1) * x_2^l_2 ... x_k^l_k
    at the constrained maximum ((l_1-1)/(n-1), l_2/(n-1), ..., l_k/(n-1)),
    exact because the point is rational; 0^0 = 1 when l_1 = 1."""
    counts = list(counts)
    if not counts or any(c < 1 for c in counts) or sum(counts) != n:
        raise BadComposition(f"{counts} is not a composition of {n} into positive parts")
    if sorted(counts, reverse=True) != counts:
        raise BadComposition("counts must be non-increasing")
    if len(counts) == 1:
        return Fraction(1)
    if n < 2:
        raise BadComposition("need n >= 2 when k >= 2")
    value = Fraction(multinomial_coefficient(counts))
    value *= Fraction(counts[0] - 1, n - 1) ** (counts[0] - 1)
    for c in counts[1:]:
        value *= Fraction(c, n - 1) ** c
    return value


def _descending_compositions(n: int, k: int, cap: int | None = None):
    """Partitions of n into exactly k positive non-increasing parts."""
    if k == 0:
        if n == 0:
            yield ()
        return
    first_cap = n - (k - 1) if cap is None else min(cap, n - (k - 1))
    for first in range(first_cap, 0, -1):
        for rest in _descending_compositions(n - first, k - 1, cap=first):
            yield (first,) + rest


GRID_RANGES = (
    (4, tuple(range(1, 10))),                      # k=4, n in 1..9
    (3, tuple(x for x in range(1, 16) if x != 3)),  # k=3, n in 1..15 minus 3
    (2, tuple(range(10, 97))),                      # k=2, n in 10..96
)


def verify_lemma3_grids() -> dict:
    """Check f <= 1 at the Lagrange point for every composition in the three
    grid ranges.  Expected: zero violations."""
    checked = 0
    violations = []
    for k, ns in GRID_RANGES:
        for n in ns:
            for counts in _descending_compositions(n, k):
                checked += 1
                value = lemma3_candidate_value(n, counts)
                if value > 1:
                    violations.append({"n": n, "k": k, "counts": list(counts),
                                       "value": f"{value.numerator}/{value.denominator}"})
    return {"checked": checked, "violations": violations}


# -- pmf bounded by the max success probability --------------------------------

def _nonneg_compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _nonneg_compositions(n - first, k - 1):
            yield (first,) + rest


def pmf_bound_check(mode: str = "exhaustive", max_k: int = 4, max_denom: int = 6,
                    max_n: int = 8, samples: int = 0, seed: int = 0) -> dict:
    """Check pmf(rho, counts) <= max(rho).

    exhaustive: every rho vector with a common denominator <= max_denom
    (k <= max_k, zero entries allowed) against every count vector with
    1 <= n <= max_n (zeros allowed).  random: seeded random rational vectors
    with the same assertion."""
    checked = 0
    violations = []

    def run_case(rho, counts):
        nonlocal checked
        checked += 1
        value = pmf(rho, counts)
        if value > max(rho):
            violations.append({
                "rho": [f"{r.numerator}/{r.denominator}" for r in rho],
                "counts": list(counts),
                "value": f"{value.numerator}/{value.denominator}",
            })

    if mode == "exhaustive":
        for k in range(1, max_k + 1):
            count_vectors = [cv for n in range(1, max_n + 1)
                             for cv in _nonneg_compositions(n, k)]
            seen = set()
            for d in range(1, max_denom + 1):
                for numer in _nonneg_compositions(d, k):
                    rho = tuple(Fraction(a, d) for a in numer)
                    if rho in seen:
                        continue
                    seen.add(rho)
                    for counts in count_vectors:
                        run_case(rho, counts)
    elif mode == "random":
        rng = random.Random(seed)
        for _ in range(samples):
            k = rng.randint(1, max_k)
            d = rng.randint(1, 60)
            cuts = sorted(rng.randint(0, d) for _ in range(k - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
            rho = tuple(Fraction(a, d) for a in parts)
            n = rng.randint(1, 12)
            counts = random_composition(rng, n, k)
            run_case(rho, counts)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    result = {"checked": checked, "violations": violations}
    if mode == "random":
        result["seed"] = seed
    return result


def random_composition(rng: random.Random, n: int, k: int) -> tuple:
    counts = [0] * k
    for _ in range(n):
        counts[rng.randrange(k)] += 1
    return tuple(counts)
