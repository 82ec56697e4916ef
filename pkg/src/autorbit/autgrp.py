"""Automorphism groups of small groups by backtracking over generator images
on the Cayley table, with invariant-fingerprint pruning; Aut-orbit reports.

Automorphisms are permutations of element ids (degree = |G|), and the full
automorphism group is itself wrapped as a FiniteGroup acting on those ids, so
orbit, conjugacy-class and quotient machinery applies to it unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .permcore import (FiniteGroup, GroupError, Permutation, close_group,
                       conjugacy_classes, POINT_DTYPE)

MAX_AUT_CARRIER = 2000
DEFAULT_NODE_BUDGET = 2_000_000


class TooLarge(GroupError):
    pass


class BudgetExceeded(GroupError):
    pass


class ActionMismatch(GroupError):
    pass


@dataclass
class CayleyTable:
    """Multiplication table on element ids, with inverses and order profile."""

    order: int
    table: np.ndarray
    inverse: np.ndarray
    element_orders: np.ndarray

    @classmethod
    def from_group(cls, G: FiniteGroup) -> "CayleyTable":
        table = G.cayley()
        inverse = G.inverse_ids()
        orders = G.element_orders()
        t = cls(G.order, table, inverse, orders)
        t.validate()
        return t

    def validate(self):
        n = self.order
        ids = np.arange(n)
        if not (np.array_equal(self.table[0], ids) and np.array_equal(self.table[:, 0], ids)):
            raise GroupError("id 0 is not the identity of the Cayley table")
        if not np.all(np.sort(self.table, axis=1) == ids):
            raise GroupError("a Cayley row is not a permutation")
        if not np.all(np.sort(self.table, axis=0) == ids[:, None]):
            raise GroupError("a Cayley column is not a permutation")


@dataclass
class AutomorphismGroup:
    """Aut(G) represented on element ids of the carrier group."""

    carrier: FiniteGroup
    group: FiniteGroup  # permutation group of degree |carrier|

    @property
    def order(self) -> int:
        return self.group.order

    def generator_images(self) -> list[np.ndarray]:
        return [g.images for g in self.group.generators]


@dataclass
class OrbitReport:
    name: str
    order: int
    orbit_sizes: list[int]  # sorted descending
    maol_absolute: int      # MAOL: the largest orbit length
    maol: Fraction          # MAOL / |G|, in lowest terms

    def to_json(self) -> dict:
        return {
            "group": self.name,
            "order": self.order,
            "orbitSizes": self.orbit_sizes,
            "MAOL": self.maol_absolute,
            "maol": f"{self.maol.numerator}/{self.maol.denominator}",
        }


def _fingerprints(G: FiniteGroup, T: CayleyTable) -> list[tuple]:
    """Aut-invariant per element: (order, class size, multiset of class sizes
    along its power sequence)."""
    table = conjugacy_classes(G)
    csize = np.array(table.sizes)[table.class_of]
    fps = []
    for i in range(G.order):
        powers = []
        x = 0
        for _ in range(int(T.element_orders[i])):
            x = int(T.table[x, i])
            powers.append(int(csize[x]))
        fps.append((int(T.element_orders[i]), int(csize[i]), tuple(sorted(powers))))
    return fps


def _greedy_generating_set(G: FiniteGroup, T: CayleyTable) -> list[int]:
    """Generating ids chosen by descending element order (ties by id)."""
    by_order = sorted(range(G.order), key=lambda i: (-int(T.element_orders[i]), i))
    gens: list[int] = []
    closure = {0}
    for eid in by_order:
        if eid in closure:
            continue
        gens.append(eid)
        closure = set(G.subgroup_closure(gens).tolist())
        if len(closure) == G.order:
            return gens
    raise GroupError("generating-set search failed")  # unreachable


def _bfs_words(T: CayleyTable, gen_ids: Sequence[int]) -> tuple[list[int], np.ndarray, np.ndarray]:
    """BFS order over the Cayley graph (right multiplication by generators);
    every element is parent * gen."""
    n = T.order
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for k, g in enumerate(gen_ids):
            y = int(T.table[x, g])
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                via[y] = k
                order.append(y)
    if len(order) != n:
        raise GroupError("generators do not generate the group")
    return order, parent, via


_BATCH_CELLS = 16_000_000  # map-matrix cells per extension batch


def _subgroup_bfs(T: CayleyTable, gen_ids: Sequence[int]):
    """BFS closure of <gen_ids> from the identity by right multiplication.
    Returns the member ids in BFS order plus (parent, via-generator index)
    for every member except the identity."""
    members = [0]
    seen = {0}
    parent = {0: -1}
    via = {0: -1}
    head = 0
    while head < len(members):
        x = members[head]
        head += 1
        for k, g in enumerate(gen_ids):
            y = int(T.table[x, g])
            if y not in seen:
                seen.add(y)
                parent[y] = x
                via[y] = k
                members.append(y)
    return members, parent, via


def _extend_and_filter(T: CayleyTable, survivors: np.ndarray, cand: np.ndarray,
                       members: list[int], parent: dict, via: dict,
                       gen_ids: Sequence[int]) -> np.ndarray:
    """Extend each surviving partial map by each candidate image of the newest
    generator, rebuild along BFS words of the enlarged subgroup, and keep the
    maps that are injective homomorphisms on it.  Maps are stored as length-n
    arrays meaningful on `members` only."""
    n = T.order
    s, c = survivors.shape[0], cand.size
    batch = max(1, _BATCH_CELLS // n // max(c, 1))
    member_arr = np.array(members)
    kept = []
    newest_gen = gen_ids[-1]
    for lo in range(0, s, batch):
        part = survivors[lo:lo + batch]
        phi = np.repeat(part, c, axis=0)
        phi[:, newest_gen] = np.tile(cand, part.shape[0])
        for e in members:
            if via[e] >= 0 and e != newest_gen:
                phi[:, e] = T.table[phi[:, parent[e]], phi[:, gen_ids[via[e]]]]
        # rebuild may overwrite entries defined in earlier stages; since the
        # BFS words are identical on the old subgroup, values agree there
        sub_vals = np.sort(phi[:, member_arr], axis=1)
        ok = (sub_vals[:, 1:] != sub_vals[:, :-1]).all(axis=1)
        for g in gen_ids:
            rows = np.flatnonzero(ok)
            if rows.size == 0:
                break
            lhs = phi[np.ix_(rows, T.table[g, member_arr])]
            rhs = T.table[phi[rows, g][:, None], phi[np.ix_(rows, member_arr)]]
            ok[rows[~np.all(lhs == rhs, axis=1)]] = False
        kept.append(phi[ok])
    if not kept:
        return np.empty((0, n), dtype=np.int32)
    return np.concatenate(kept, axis=0)


def automorphism_group(G: FiniteGroup, budget: int = DEFAULT_NODE_BUDGET) -> AutomorphismGroup:
    """Complete Aut(G) by staged vectorized backtracking: candidate images of
    each generator (filtered by fingerprint) extend the surviving partial
    homomorphisms one generator at a time, so the search never materializes
    the full Cartesian candidate product."""
    if G.order > MAX_AUT_CARRIER:
        raise TooLarge(f"|G| = {G.order} exceeds the {MAX_AUT_CARRIER} carrier guard")
    n = G.order
    T = CayleyTable.from_group(G)
    fps = _fingerprints(G, T)
    gen_ids = _greedy_generating_set(G, T)

    survivors = np.zeros((1, n), dtype=np.int32)  # the empty partial map
    built = 0
    for j, g in enumerate(gen_ids):
        cand = np.array([x for x in range(n) if fps[x] == fps[g]], dtype=np.int32)
        built += survivors.shape[0] * cand.size
        if built > budget:
            raise BudgetExceeded(f"search built {built} maps, budget {budget}")
        members, parent, via = _subgroup_bfs(T, gen_ids[: j + 1])
        survivors = _extend_and_filter(T, survivors, cand, members, parent, via,
                                       gen_ids[: j + 1])
    auts = survivors.astype(POINT_DTYPE)

    aut_group = _group_from_permutation_rows(auts, n)
    result = AutomorphismGroup(G, aut_group)
    _validate_aut_group(G, T, result)
    return result


def _group_from_permutation_rows(rows: np.ndarray, degree: int) -> FiniteGroup:
    """Wrap a complete set of permutations as a FiniteGroup, picking a small
    generating subset greedily over the canonical order."""
    from .permcore import _encode_rows
    mat = rows[np.argsort(_encode_rows(rows))]
    gens: list[Permutation] = []
    G = close_group([], degree=degree)
    for row in mat:
        if not G.contains(Permutation(row)):
            gens.append(Permutation(row))
            G = close_group(gens, degree=degree)
            if G.order == mat.shape[0]:
                break
    if G.order != mat.shape[0]:
        raise GroupError("automorphism set is not closed under composition")
    return G


def _validate_aut_group(G: FiniteGroup, T: CayleyTable, A: AutomorphismGroup):
    """Inner automorphisms must all be present, and |Inn| = |G|/|Z(G)|."""
    n_inner = G.order // G.center_ids().size
    if A.order % n_inner != 0:
        raise GroupError("|Aut| not divisible by |Inn|")
    for g in G.generator_ids():
        inner = T.table[T.table[g, :], int(T.inverse[g])]
        if not A.group.contains(Permutation(inner.astype(POINT_DTYPE))):
            raise GroupError("inner automorphism missing from Aut search result")


def inner_automorphism_ids(A: AutomorphismGroup) -> np.ndarray:
    """Ids, inside A.group, of the inner automorphisms of the carrier; for a
    centerless carrier this is the canonical embedded copy of it."""
    G = A.carrier
    T = G.cayley()
    inv = G.inverse_ids()
    inner_rows = np.empty((G.order, G.order), dtype=POINT_DTYPE)
    for g in range(G.order):
        inner_rows[g] = T[T[g, :], int(inv[g])].astype(POINT_DTYPE)
    return np.unique(A.group.ids_of(inner_rows))


def orbit_of(x: int, gens: Iterable[np.ndarray]) -> set[int]:
    """Closure of {x} under the given id permutations."""
    gens = list(gens)
    seen = {int(x)}
    frontier = [int(x)]
    while frontier:
        fresh = []
        for y in frontier:
            for g in gens:
                z = int(g[y])
                if z not in seen:
                    seen.add(z)
                    fresh.append(z)
        frontier = fresh
    return seen


def orbit_partition(degree: int, gens: Sequence[np.ndarray]) -> list[np.ndarray]:
    """All orbits of the generated group on 0..degree-1, numbered by minimal
    element."""
    seen = np.full(degree, -1, dtype=np.int64)
    orbits = []
    for start in range(degree):
        if seen[start] >= 0:
            continue
        orbit = sorted(orbit_of(start, gens))
        seen[np.array(orbit)] = len(orbits)
        orbits.append(np.array(orbit, dtype=np.int64))
    return orbits


def maol(G: FiniteGroup, A: AutomorphismGroup) -> OrbitReport:
    """Orbit report of Aut(G) acting on G's element ids."""
    if A.group.degree != G.order:
        raise ActionMismatch("automorphism degree does not match carrier order")
    orbits = orbit_partition(G.order, A.generator_images())
    sizes = sorted((int(o.size) for o in orbits), reverse=True)
    biggest = sizes[0]
    return OrbitReport(
        name=G.name or "group",
        order=G.order,
        orbit_sizes=sizes,
        maol_absolute=biggest,
        maol=Fraction(biggest, G.order),
    )
