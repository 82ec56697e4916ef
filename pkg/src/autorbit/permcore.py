"""Permutation-group engine: exhaustive enumeration, conjugacy, quotients.

Conventions, fixed globally:

* points are 0-based;
* composition is right-to-left: ``compose(p, q)`` maps ``x`` to ``p(q(x))``;
* groups store their full element list, sorted lexicographically by image
  array, so element ids (and everything derived from them: class numbering,
  coset numbering, orbit output) are reproducible across runs;
* the identity is always element id 0 (it is the lexicographic minimum).

1-cycles of a permutation are kept in its cycle decomposition; cycle strings
at the I/O boundary use 1-based points, e.g. ``"(1 2)(3 4 5)"``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CLOSURE_LIMIT = 2_000_000

POINT_DTYPE = np.uint16  # permutation entries; degrees stay well below 2**16


class GroupError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatch(GroupError):
    pass


class ClosureLimitExceeded(GroupError):
    pass


class NotNormal(GroupError):
    pass


class InvalidAutomorphism(GroupError):
    pass


class Permutation:
    """Immutable bijection on {0, ..., degree-1}, stored as an image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray):
        arr = np.asarray(images, dtype=POINT_DTYPE)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("images must be a non-empty 1-d sequence")
        if not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError("images is not a bijection on {0,...,degree-1}")
        arr.setflags(write=False)
        self.images = arr
        self._hash = hash(arr.tobytes())

    @property
    def degree(self) -> int:
        return int(self.images.size)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(np.arange(degree, dtype=POINT_DTYPE))

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return self._hash

    def inverse(self) -> "Permutation":
        return Permutation(np.argsort(self.images))

    def order(self) -> int:
        return int(np.lcm.reduce([len(c) for c in cycle_decompose(self).cycles]))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def __repr__(self) -> str:
        return f"Permutation({cycle_string(self)!r})"


@dataclass(frozen=True)
class CycleSet:
    """Canonical disjoint-cycle form: fixed points kept as 1-cycles,
    each cycle rotated to start at its minimal point, cycles sorted by it."""

    degree: int
    cycles: tuple[tuple[int, ...], ...]

    def to_permutation(self) -> Permutation:
        images = np.arange(self.degree, dtype=POINT_DTYPE)
        for cyc in self.cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return Permutation(images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Right-to-left composition: (p*q)(x) = p(q(x))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degree {p.degree} != {q.degree}")
    return Permutation(p.images[q.images])


def cycle_decompose(p: Permutation) -> CycleSet:
    seen = np.zeros(p.degree, dtype=bool)
    cycles = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = int(p.images[start])
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = int(p.images[x])
        cycles.append(tuple(cyc))
    return CycleSet(p.degree, tuple(cycles))


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Multiset of cycle lengths (1-cycles included), sorted descending."""
    return tuple(sorted((len(c) for c in cycle_decompose(p).cycles), reverse=True))


def cycle_string(p: Permutation) -> str:
    """1-based cycle string, 1-cycles omitted; identity prints as '()'."""
    parts = [
        "(" + " ".join(str(x + 1) for x in cyc) + ")"
        for cyc in cycle_decompose(p).cycles
        if len(cyc) > 1
    ]
    return "".join(parts) if parts else "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a 1-based cycle string like "(1 2)(3 4 5)" into a Permutation."""
    images = np.arange(degree, dtype=POINT_DTYPE)
    body = text.strip()
    if body in ("", "()"):
        return Permutation(images)
    chunks = _CYCLE_RE.findall(body)
    if _CYCLE_RE.sub("", body).strip():
        raise ValueError(f"unparsed text in cycle string {text!r}")
    for chunk in chunks:
        pts = [int(tok) - 1 for tok in chunk.replace(",", " ").split()]
        if not pts:
            continue
        if any(x < 0 or x >= degree for x in pts):
            raise ValueError(f"point out of range 1..{degree} in {text!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle ({chunk}) of {text!r}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(images)


def _encode_rows(mat: np.ndarray) -> np.ndarray:
    """Rows as fixed-width byte strings whose byte order matches
    lexicographic order on the integer entries (big-endian cast)."""
    be = np.ascontiguousarray(mat.astype(">u2"))
    return be.view(f"S{2 * mat.shape[1]}").ravel()


class FiniteGroup:
    """Fully enumerated permutation group with canonical element ids."""

    def __init__(self, degree: int, generators: list[Permutation], elements: np.ndarray,
                 name: str | None = None):
        self.degree = degree
        self.generators = generators
        self.elements = elements  # (order, degree), lexicographically sorted
        self.name = name
        self._keys = _encode_rows(elements)
        self._inv_ids: np.ndarray | None = None
        self._classes: ConjClassTable | None = None
        self._cayley: np.ndarray | None = None
        self._orders: np.ndarray | None = None
        self._center: np.ndarray | None = None
        if self.id_of(Permutation.identity(degree)) != 0:
            raise GroupError("identity is not element id 0; enumeration broken")

    # -- basic queries ------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def __iter__(self):
        return (self.perm(i) for i in range(self.order))

    def ids_of(self, mat: np.ndarray) -> np.ndarray:
        """Vectorized element-id lookup; raises if a row is not in the group."""
        keys = _encode_rows(np.asarray(mat, dtype=POINT_DTYPE))
        pos = np.searchsorted(self._keys, keys)
        if np.any(pos >= self.order) or not np.array_equal(self._keys[pos], keys):
            raise GroupError("permutation not in group")
        return pos

    def id_of(self, p: Permutation | np.ndarray) -> int:
        images = p.images if isinstance(p, Permutation) else np.asarray(p)
        return int(self.ids_of(images[None, :])[0])

    def contains(self, p: Permutation) -> bool:
        try:
            self.id_of(p)
            return True
        except GroupError:
            return False

    def generator_ids(self) -> list[int]:
        return [self.id_of(g) for g in self.generators]

    # -- id-level arithmetic -------------------------------------------

    def inverse_ids(self) -> np.ndarray:
        if self._inv_ids is None:
            self._inv_ids = self.ids_of(np.argsort(self.elements, axis=1))
        return self._inv_ids

    def mul_ids(self, i: int, j: int) -> int:
        if self._cayley is not None:
            return int(self._cayley[i, j])
        return int(self.ids_of(self.elements[i][self.elements[j]][None, :])[0])

    def mul_rows(self, i: int, ids: np.ndarray) -> np.ndarray:
        """ids of elements[i] composed with each of elements[ids]."""
        return self.ids_of(self.elements[i][self.elements[ids]])

    def cayley(self) -> np.ndarray:
        """Full multiplication table on ids; built once, O(order^2) memory."""
        if self._cayley is None:
            n = self.order
            table = np.empty((n, n), dtype=np.int32)
            all_ids = np.arange(n)
            for i in range(n):
                table[i] = self.mul_rows(i, all_ids)
            self._cayley = table
        return self._cayley

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.array([_order_of_images(row) for row in self.elements])
        return self._orders

    # -- structure -----------------------------------------------------

    def center_ids(self) -> np.ndarray:
        if self._center is None:
            mask = np.ones(self.order, dtype=bool)
            for g in self.generators:
                gi = g.images
                mask &= np.all(self.elements[:, gi] == gi[self.elements], axis=1)
            self._center = np.flatnonzero(mask)
        return self._center

    def subgroup_closure(self, seed_ids: Iterable[int]) -> np.ndarray:
        """Ids of the subgroup generated by the given element ids."""
        seeds = np.array(sorted(set(int(s) for s in seed_ids) | {0}), dtype=np.int64)
        members = set(seeds.tolist())
        frontier = seeds.tolist()
        while frontier:
            prods = set()
            for x in frontier:  # right multiplication by seeds; finite, so closed
                prods.update(self.mul_rows(x, seeds).tolist())
            frontier = [p for p in prods if p not in members]
            members.update(frontier)
        return np.array(sorted(members), dtype=np.int64)

    def normal_closure(self, seed_ids: Iterable[int],
                       conjugator_ids: Sequence[int] | None = None) -> np.ndarray:
        """Smallest subgroup containing the seeds and invariant under
        conjugation by the given elements (default: the group generators)."""
        if conjugator_ids is None:
            conjugator_ids = self.generator_ids()
        inv = self.inverse_ids()
        gens = sorted(set(int(s) for s in seed_ids) - {0})
        while True:
            sub = self.subgroup_closure(gens)
            sub_set = set(sub.tolist())
            new = []
            for c in conjugator_ids:
                for s in gens:
                    t = self.mul_ids(self.mul_ids(int(c), s), int(inv[c]))
                    if t not in sub_set:
                        new.append(t)
            if not new:
                return sub
            gens.extend(new)

    def derived_subgroup_ids(self) -> np.ndarray:
        gen_ids = self.generator_ids()
        inv = self.inverse_ids()
        comms = []
        for a in gen_ids:
            for b in gen_ids:
                ab = self.mul_ids(a, b)
                comms.append(self.mul_ids(self.mul_ids(ab, int(inv[a])), int(inv[b])))
        return self.normal_closure(comms)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order}, degree={self.degree})"


def _order_of_images(images: np.ndarray) -> int:
    seen = np.zeros(images.size, dtype=bool)
    result = 1
    for start in range(images.size):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = int(images[x])
            length += 1
        result = lcm(result, length)
    return result


def close_group(generators: Sequence[Permutation], limit: int = DEFAULT_CLOSURE_LIMIT,
                degree: int | None = None, name: str | None = None) -> FiniteGroup:
    """Enumerate the group generated by `generators` (orbit closure under
    right multiplication), in deterministic canonical order."""
    if generators:
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            raise DegreeMismatch(f"mixed degrees {sorted(degrees)}")
        degree = degrees.pop()
    elif degree is None:
        raise ValueError("need a degree for the empty generating set")
    ident = np.arange(degree, dtype=POINT_DTYPE)
    gen_rows = [g.images for g in generators]
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident[None, :]
    while frontier.size:
        new_rows = []
        for g in gen_rows:
            for row in frontier[:, g]:  # right multiplication x -> x*g
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    new_rows.append(row)
        if len(seen) > limit:
            raise ClosureLimitExceeded(f"closure exceeded limit {limit}")
        frontier = np.array(new_rows, dtype=POINT_DTYPE) if new_rows else np.empty((0, degree), POINT_DTYPE)
        rows.extend(new_rows)
    mat = np.array(rows, dtype=POINT_DTYPE)
    mat = mat[np.argsort(_encode_rows(mat))]
    return FiniteGroup(degree, list(generators), mat, name=name)


@dataclass
class ConjClassTable:
    """Conjugacy classes by element id; class numbering follows the minimal
    representative id, so it is reproducible."""

    classes: list[np.ndarray]
    class_of: np.ndarray

    @property
    def sizes(self) -> list[int]:
        return [int(c.size) for c in self.classes]

    def representative(self, class_id: int) -> int:
        return int(self.classes[class_id][0])


def conjugacy_classes(G: FiniteGroup) -> ConjClassTable:
    """Orbit algorithm: conjugate each unvisited element by the generators."""
    if G._classes is not None:
        return G._classes
    n = G.order
    gen_pairs = [(g.images, g.inverse().images) for g in G.generators]
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[np.ndarray] = []
    for start in range(n):
        if class_of[start] >= 0:
            continue
        cid = len(classes)
        class_of[start] = cid
        members = [start]
        frontier = np.array([start])
        while frontier.size:
            fresh = []
            rows = G.elements[frontier]
            for gi, ginv in gen_pairs:
                conj = gi[rows[:, ginv]]  # g * x * g^-1
                for eid in G.ids_of(conj):
                    if class_of[eid] < 0:
                        class_of[eid] = cid
                        fresh.append(int(eid))
            members.extend(fresh)
            frontier = np.array(fresh, dtype=np.int64)
        classes.append(np.array(sorted(members), dtype=np.int64))
    G._classes = ConjClassTable(classes, class_of)
    return G._classes


def mcs(G: FiniteGroup) -> int:
    """Minimum element-centralizer size = |G| / (largest conjugacy class)."""
    table = conjugacy_classes(G)
    return G.order // max(table.sizes)


def derived_series(G: FiniteGroup) -> list[np.ndarray]:
    """Successive commutator subgroups (as id sets) until stabilization."""
    series = [np.arange(G.order, dtype=np.int64)]
    current_gens = G.generator_ids()
    inv = G.inverse_ids()
    while True:
        comms = []
        for a in current_gens:
            for b in current_gens:
                ab = G.mul_ids(a, b)
                comms.append(G.mul_ids(G.mul_ids(ab, int(inv[a])), int(inv[b])))
        nxt = G.normal_closure(comms, conjugator_ids=current_gens)
        if nxt.size == series[-1].size:
            break
        series.append(nxt)
        if nxt.size == 1:
            break
        current_gens = _generating_subset(G, nxt)
    return series


def _generating_subset(G: FiniteGroup, subgroup_ids: np.ndarray) -> list[int]:
    """Small generating set for a subgroup given as an id set (greedy)."""
    target = set(subgroup_ids.tolist())
    gens: list[int] = []
    closure = {0}
    for eid in subgroup_ids.tolist():
        if eid in closure:
            continue
        gens.append(int(eid))
        closure = set(G.subgroup_closure(gens).tolist())
        if closure == target:
            break
    return gens


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].size == 1


def is_normal(G: FiniteGroup, subgroup_ids: np.ndarray) -> bool:
    sub_ids = np.sort(np.asarray(subgroup_ids))
    rows = G.elements[sub_ids]
    for g in G.generators:
        gi, ginv = g.images, g.inverse().images
        conj_ids = G.ids_of(gi[rows[:, ginv]])
        if not np.array_equal(np.sort(conj_ids), sub_ids):
            return False
    return True


def coset_partition(G: FiniteGroup, subgroup_ids: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Right-coset labels: coset_of[x] for cosets N*g, numbered by minimal
    member id. Requires nothing beyond subgroup closure."""
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    sub_rows = G.elements[np.asarray(subgroup_ids)]
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        members = G.ids_of(sub_rows[:, G.elements[x]])  # rows n*x for n in N
        coset_of[members] = len(reps)
        reps.append(x)
    return coset_of, reps


def quotient_group(G: FiniteGroup, subgroup_ids: np.ndarray,
                   name: str | None = None) -> FiniteGroup:
    """G/N as a permutation group on the cosets, acting by right translation."""
    if not is_normal(G, np.asarray(subgroup_ids)):
        raise NotNormal("subgroup is not normal")
    coset_of, reps = coset_partition(G, np.asarray(subgroup_ids))
    qgens = []
    for g in G.generators:
        images = [int(coset_of[G.id_of(G.elements[r][g.images])]) for r in reps]
        qgens.append(Permutation(np.array(images, dtype=POINT_DTYPE)))
    Q = close_group(qgens, degree=len(reps), name=name)
    if Q.order * subgroup_ids.size != G.order:
        raise GroupError("quotient order mismatch; subgroup not closed?")
    return Q


def validate_automorphism(G: FiniteGroup, phi: np.ndarray) -> bool:
    """phi: id permutation of G. Checking phi(g*x) = phi(g)*phi(x) for all
    generators g and all x suffices for phi to be an automorphism."""
    phi = np.asarray(phi)
    if not np.array_equal(np.sort(phi), np.arange(G.order)):
        return False
    if phi[0] != 0:
        return False
    all_ids = np.arange(G.order)
    for g in G.generator_ids():
        lhs = phi[G.mul_rows(g, all_ids)]
        rhs = G.mul_rows(int(phi[g]), phi)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_characteristic(G: FiniteGroup, subgroup_ids: np.ndarray,
                      aut_gens: Sequence[np.ndarray]) -> bool:
    """True iff every given automorphism (validated) maps the subgroup onto
    itself."""
    sub = set(int(x) for x in np.asarray(subgroup_ids))
    for phi in aut_gens:
        if not validate_automorphism(G, phi):
            raise InvalidAutomorphism("map does not preserve the multiplication table")
        if set(np.asarray(phi)[np.asarray(subgroup_ids)].tolist()) != sub:
            return False
    return True


# -- group spec files ----------------------------------------------------

def group_from_spec(spec: dict) -> FiniteGroup:
    """Build a group from the JSON spec format:
    {"name": str, "degree": int, "generators": ["(1 2)(3 4)" | [images]]}."""
    degree = int(spec["degree"])
    gens = []
    for item in spec.get("generators", []):
        if isinstance(item, str):
            gens.append(parse_cycles(item, degree))
        else:
            gens.append(Permutation(item))
    return close_group(gens, degree=degree, name=spec.get("name"))


def load_group_file(path: str) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_spec(json.load(fh))
