"""Wreath products G wr T for T <= Sym_n: element arithmetic, backward cycle
product profiles, the combinatorial conjugacy test with its brute-force
oracle, and the large-orbit construction over Aut(S) with a p-cycle top.

Multiplication law, matching the composition convention of `permcore`:
(g, sigma)(h, upsilon) = ((g_i * h_{sigma^-1(i)})_i, sigma*upsilon); the
conjugate of `a` by `b` is b*a*b^-1.  Cycles of the top inherit their
orientation from it: within a listed cycle (i_1 ... i_l), sigma(i_j) =
i_{j+1}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .autgrp import AutomorphismGroup
from .permcore import (FiniteGroup, GroupError, Permutation, close_group,
                       conjugacy_classes, cycle_decompose, cycle_type,
                       POINT_DTYPE)

DEFAULT_WREATH_LIMIT = 2_000_000
DEFAULT_ORBIT_SPACE = 64_000_000  # visited-array cells for orbit sweeps


class ShapeMismatch(GroupError):
    pass


class NotACycleOfTop(GroupError):
    pass


class TooLarge(GroupError):
    pass


@dataclass(frozen=True)
class WreathElement:
    """(g_1,...,g_n)*sigma: base entries as element ids, top as a Permutation."""

    base: tuple[int, ...]
    top: Permutation

    def __post_init__(self):
        if len(self.base) != self.top.degree:
            raise ShapeMismatch("tuple part length != degree of permutation part")


@dataclass(frozen=True)
class BcpcProfile:
    """Multisets of backward-cycle-product classes, keyed by cycle length l
    (and by (l, type) when a typing is supplied).  Multisets are encoded as
    sorted tuples of class ids, so equality is plain equality."""

    by_length: dict
    by_length_and_type: dict | None = None

    def multiset(self, l: int) -> tuple:
        return self.by_length.get(l, ())


def _sym_generators(n: int) -> list[Permutation]:
    if n == 1:
        return []
    gens = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Permutation(list(range(1, n)) + [0]))
    return gens


class WreathGroup:
    """base wr top; `top` defaults to the full symmetric group of degree n.

    Carries the base Cayley table, so element arithmetic is table lookups."""

    def __init__(self, base: FiniteGroup, n: int,
                 top: FiniteGroup | Sequence[Permutation] | None = None,
                 name: str | None = None):
        self.base = base
        self.n = n
        if top is None:
            self.top = close_group(_sym_generators(n), degree=n)
        elif isinstance(top, FiniteGroup):
            self.top = top
        else:
            self.top = close_group(list(top), degree=n)
        if self.top.degree != n:
            raise ShapeMismatch("top group degree != n")
        self.name = name
        self.T = base.cayley()
        self.base_inv = base.inverse_ids()
        self._top_cycles = [cycle_decompose(self.top.perm(t)).cycles
                            for t in range(self.top.order)]
        self._enum_classes: np.ndarray | None = None

    # -- element helpers ------------------------------------------------

    @property
    def order(self) -> int:
        return self.base.order ** self.n * self.top.order

    def identity(self) -> WreathElement:
        return WreathElement((0,) * self.n, Permutation.identity(self.n))

    def element(self, base_ids: Sequence[int], top: Permutation) -> WreathElement:
        w = WreathElement(tuple(int(b) for b in base_ids), top)
        self._check(w)
        return w

    def _check(self, w: WreathElement):
        if len(w.base) != self.n:
            raise ShapeMismatch(f"expected {self.n} base entries")
        self.top.id_of(w.top)  # raises if top not in the top group

    def random_element(self, rng) -> WreathElement:
        base = tuple(int(rng.integers(self.base.order)) for _ in range(self.n))
        top = self.top.perm(int(rng.integers(self.top.order)))
        return WreathElement(base, top)

    # -- arithmetic ------------------------------------------------------

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        tinv = a.top.inverse().images
        base = tuple(int(self.T[a.base[i], b.base[tinv[i]]]) for i in range(self.n))
        return WreathElement(base, a.top * b.top)

    def inv(self, a: WreathElement) -> WreathElement:
        t = a.top.images
        base = tuple(int(self.base_inv[a.base[t[j]]]) for j in range(self.n))
        return WreathElement(base, a.top.inverse())

    def conj(self, a: WreathElement, b: WreathElement) -> WreathElement:
        """b * a * b^-1."""
        return self.mul(self.mul(b, a), self.inv(b))

    def power(self, a: WreathElement, k: int) -> WreathElement:
        if k < 0:
            return self.power(self.inv(a), -k)
        result = self.identity()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- packed enumeration ----------------------------------------------

    def pack(self, w: WreathElement) -> int:
        code = 0
        for b in w.base:
            code = code * self.base.order + int(b)
        return code * self.top.order + self.top.id_of(w.top)

    def unpack(self, code: int) -> WreathElement:
        code, t = divmod(code, self.top.order)
        base = []
        for _ in range(self.n):
            code, b = divmod(code, self.base.order)
            base.append(b)
        return WreathElement(tuple(reversed(base)), self.top.perm(t))

    def _pack_arrays(self, B: np.ndarray, t: np.ndarray) -> np.ndarray:
        code = np.zeros(B.shape[0], dtype=np.int64)
        for i in range(self.n):
            code = code * self.base.order + B[:, i]
        return code * self.top.order + t

    def _unpack_codes(self, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        codes = np.asarray(codes, dtype=np.int64)
        t = codes % self.top.order
        rest = codes // self.top.order
        B = np.empty((codes.size, self.n), dtype=np.int64)
        for i in range(self.n - 1, -1, -1):
            B[:, i] = rest % self.base.order
            rest = rest // self.base.order
        return B, t

    # -- vectorized conjugation sweeps ------------------------------------

    def _conjugation_maps(self, conjugators: Iterable[tuple[Sequence[int], Permutation]]):
        """Precompute, per conjugator (k, psi), the index maps used by
        conj(a) = (k,psi) a (k,psi)^-1 on packed arrays.  psi must normalize
        the top group but need not belong to it."""
        maps = []
        ntop = self.top.order
        for kbase, psi in conjugators:
            k = np.asarray(kbase, dtype=np.int64)
            psi_img = psi.images.astype(np.int64)
            psi_inv = psi.inverse().images.astype(np.int64)
            invk = self.base_inv[k]
            top_map = np.empty(ntop, dtype=np.int64)
            col2 = np.empty((ntop, self.n), dtype=np.int64)
            for s in range(ntop):
                sigma = self.top.perm(s)
                conj_top = Permutation(psi_img[sigma.images[psi_inv]].astype(POINT_DTYPE))
                top_map[s] = self.top.id_of(conj_top)
                sig_inv = sigma.inverse().images.astype(np.int64)
                col2[s] = psi_img[sig_inv[psi_inv]]
            maps.append((k, psi_inv, invk, top_map, col2))
        return maps

    def _conj_batch(self, B: np.ndarray, t: np.ndarray, cmap) -> tuple[np.ndarray, np.ndarray]:
        k, psi_inv, invk, top_map, col2 = cmap
        step1 = self.T[k[None, :], B[:, psi_inv]]
        right = invk[col2[t]]
        return self.T[step1, right], top_map[t]

    def conjugation_orbit(self, seeds: Sequence[WreathElement],
                          conjugators: Iterable[tuple[Sequence[int], Permutation]],
                          limit: int = DEFAULT_ORBIT_SPACE) -> np.ndarray:
        """Packed codes of the closure of `seeds` under conjugation.  The
        visited array is indexed by packed code, so the whole wreath group
        must fit in `limit` cells."""
        if self.order > limit:
            raise TooLarge(f"wreath group order {self.order} too large to sweep")
        maps = self._conjugation_maps(conjugators)
        visited = np.zeros(self.order, dtype=bool)
        start = np.array([self.pack(w) for w in seeds], dtype=np.int64)
        visited[start] = True
        frontier = start
        found = [start]
        while frontier.size:
            B, t = self._unpack_codes(frontier)
            fresh = []
            for cmap in maps:
                CB, ct = self._conj_batch(B, t, cmap)
                codes = self._pack_arrays(CB, ct)
                codes = np.unique(codes)
                new = codes[~visited[codes]]
                visited[new] = True
                fresh.append(new)
            frontier = np.unique(np.concatenate(fresh)) if fresh else np.empty(0, np.int64)
            if frontier.size:
                found.append(frontier)
        return np.sort(np.concatenate(found))

    def standard_conjugators(self) -> list[tuple[tuple, Permutation]]:
        """Generators of the wreath group itself, as (base tuple, top) pairs:
        base generators planted in every coordinate, plus the top generators."""
        out = []
        ident = Permutation.identity(self.n)
        for g in self.base.generator_ids():
            for i in range(self.n):
                base = [0] * self.n
                base[i] = g
                out.append((tuple(base), ident))
        for tp in self.top.generators:
            out.append(((0,) * self.n, tp))
        return out

    def class_codes(self, limit: int = DEFAULT_WREATH_LIMIT) -> np.ndarray:
        """class_codes[packed code] = conjugacy class id (brute-force orbit
        sweep over the full enumeration), numbered by minimal packed code."""
        if self._enum_classes is not None:
            return self._enum_classes
        if self.order > limit:
            raise TooLarge(f"wreath group order {self.order} exceeds limit {limit}")
        maps = self._conjugation_maps(self.standard_conjugators())
        class_of = np.full(self.order, -1, dtype=np.int64)
        n_classes = 0
        for code in range(self.order):
            if class_of[code] >= 0:
                continue
            cid = n_classes
            n_classes += 1
            class_of[code] = cid
            frontier = np.array([code], dtype=np.int64)
            while frontier.size:
                B, t = self._unpack_codes(frontier)
                fresh = []
                for cmap in maps:
                    CB, ct = self._conj_batch(B, t, cmap)
                    codes = np.unique(self._pack_arrays(CB, ct))
                    new = codes[class_of[codes] < 0]
                    class_of[new] = cid
                    fresh.append(new)
                frontier = np.unique(np.concatenate(fresh))
        self._enum_classes = class_of
        return class_of


# -- module-level operation wrappers ------------------------------------------

def w_mul(wg: WreathGroup, a: WreathElement, b: WreathElement) -> WreathElement:
    return wg.mul(a, b)


def w_inv(wg: WreathGroup, a: WreathElement) -> WreathElement:
    return wg.inv(a)


def w_conj(wg: WreathGroup, a: WreathElement, b: WreathElement) -> WreathElement:
    """Conjugate of a by b."""
    return wg.conj(a, b)


def _validate_cycle(w: WreathElement, zeta: Sequence[int]) -> tuple[int, ...]:
    zeta = tuple(int(z) for z in zeta)
    img = w.top.images
    for a, b in zip(zeta, zeta[1:] + zeta[:1]):
        if int(img[a]) != b:
            raise NotACycleOfTop(f"{zeta} is not a cycle of the permutation part")
    return zeta


def bcpc_element(wg: WreathGroup, w: WreathElement, zeta: Sequence[int]) -> int:
    """Element id of g_{i_l} * g_{i_{l-1}} * ... * g_{i_1} for the cycle
    zeta = (i_1, ..., i_l) of the top."""
    zeta = _validate_cycle(w, zeta)
    acc = w.base[zeta[0]]
    for i in zeta[1:]:
        acc = int(wg.T[w.base[i], acc])
    return acc


def bcpc(wg: WreathGroup, w: WreathElement, zeta: Sequence[int]) -> int:
    """Backward cycle product class: base-group class id of the backward
    product along zeta."""
    table = conjugacy_classes(wg.base)
    return int(table.class_of[bcpc_element(wg, w, zeta)])


def profile(wg: WreathGroup, w: WreathElement, typing=None) -> BcpcProfile:
    """M_l(w) for each cycle length l; with `typing` (a ClassTypeTable for the
    base) also the refined M_l^tau(w)."""
    by_length: dict[int, list] = {}
    refined: dict[tuple, list] = {}
    for zeta in cycle_decompose(w.top).cycles:
        cls = bcpc(wg, w, zeta)
        by_length.setdefault(len(zeta), []).append(cls)
        if typing is not None:
            tau = int(typing.type_of_class[cls])
            refined.setdefault((len(zeta), tau), []).append(cls)
    plain = {l: tuple(sorted(v)) for l, v in by_length.items()}
    if typing is None:
        return BcpcProfile(plain)
    return BcpcProfile(plain, {k: tuple(sorted(v)) for k, v in refined.items()})


def conj_test(wg: WreathGroup, v: WreathElement, w: WreathElement) -> bool:
    """Combinatorial conjugacy test: equal top cycle types and equal bcpc
    multisets M_l for every l."""
    if cycle_type(v.top) != cycle_type(w.top):
        return False
    return profile(wg, v).by_length == profile(wg, w).by_length


def brute_force_conj(wg: WreathGroup, v: WreathElement, w: WreathElement,
                     limit: int = DEFAULT_WREATH_LIMIT) -> bool:
    """Oracle: conjugacy decided on the full enumeration of the wreath group."""
    codes = wg.class_codes(limit=limit)
    return codes[wg.pack(v)] == codes[wg.pack(w)]


# -- the large-orbit construction over Aut(S) --------------------------------

@dataclass
class HpConstruction:
    group: WreathGroup
    alpha: WreathElement
    order: int
    predicted_orbit: int
    measured_orbit: int | None
    maol_lower_bound: Fraction  # (p-1)/p * maol(Aut(S))

    def to_json(self) -> dict:
        lb = self.maol_lower_bound
        return {
            "order": self.order,
            "predicted": self.predicted_orbit,
            "measured": self.measured_orbit,
            "maolLowerBound": f"{lb.numerator}/{lb.denominator}",
        }


def _primitive_root(p: int) -> int:
    for u in range(2, p):
        seen, x = set(), 1
        for _ in range(p - 1):
            x = x * u % p
            seen.add(x)
        if len(seen) == p - 1:
            return u
    raise GroupError(f"no primitive root mod {p}")


def build_hp(S: FiniteGroup, AutS: AutomorphismGroup, p: int,
             measure: bool = True, limit: int = DEFAULT_ORBIT_SPACE) -> HpConstruction:
    """Aut(S) wr <sigma> for a p-cycle sigma, with the distinguished element
    alpha = (alpha_1, 1, ..., 1) sigma, alpha_1 from a largest conjugacy class
    of Aut(S).  Aut(S) is complete for simple S, so its conjugacy classes are
    its automorphism orbits and the predicted orbit length of alpha is
    (p-1) * |alpha_1^Aut(S)| * |Aut(S)|^(p-1).

    The measured orbit closes alpha under Aut(S) wr N_{Sym_p}(<sigma>), the
    automorphism group of the construction; the normalizer is generated by
    sigma and the power map sigma -> sigma^u for a primitive root u mod p."""
    if AutS.carrier is not S and AutS.carrier.order != S.order:
        raise GroupError("AutS does not belong to S")
    A = AutS.group
    sigma = Permutation([(i + 1) % p for i in range(p)])
    wg = WreathGroup(A, p, top=[sigma], name=f"H_{p}")
    if wg.top.order != p:
        raise GroupError("top group is not the cyclic group of the p-cycle")

    table = conjugacy_classes(A)
    sizes = table.sizes
    best_class = max(range(len(sizes)), key=lambda c: (sizes[c], -c))
    alpha1 = table.representative(best_class)
    alpha = wg.element([alpha1] + [0] * (p - 1), sigma)
    predicted = (p - 1) * sizes[best_class] * A.order ** (p - 1)

    measured = None
    if measure:
        # base generators in coordinate 0 suffice: conjugation by the
        # transitive top spreads them to every coordinate
        conjugators = [(tuple([g] + [0] * (p - 1)), Permutation.identity(p))
                       for g in A.generator_ids()]
        conjugators.append(((0,) * p, sigma))
        if p > 2:
            u = _primitive_root(p)
            power_map = Permutation([(i * u) % p for i in range(p)])
            conjugators.append(((0,) * p, power_map))
        orbit = wg.conjugation_orbit([alpha], conjugators, limit=limit)
        measured = int(orbit.size)

    return HpConstruction(
        group=wg,
        alpha=alpha,
        order=wg.order,
        predicted_orbit=predicted,
        measured_orbit=measured,
        maol_lower_bound=Fraction(p - 1, p) * Fraction(max(sizes), A.order),
    )
