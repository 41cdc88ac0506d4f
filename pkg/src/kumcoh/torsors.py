"""Equivariant torsors over finite G-groups and their classes in nonabelian H^1.

Everything is table driven.  A G-group ``A`` is a multiplication table plus a
table ``action[g, a]``; a torsor is a set ``0..|T|-1`` with a right A-action
table and a left G-action table.  A basepoint ``t0`` gives the crossed
homomorphism ``g.t0 = t0 . a_g``, so ``a_{gh} = a_g * g(a_h)``; moving the
basepoint to ``t0 . b`` replaces ``a_g`` by ``b^-1 a_g g(b)``.  The class is the
orbit of the cocycle under that twisting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .cohomology import BudgetExceeded, Cocycle
from .gmodule import GModule
from .symgroup import SubgroupTable

__all__ = [
    "GGroup",
    "EquivariantTorsor",
    "TorsorClass",
    "GGroupHom",
    "crossed_homomorphisms",
    "nonabelian_h1",
    "torsor_from_cocycle",
    "trivial_torsor",
    "torsor_cocycle",
    "torsor_class",
    "class_of_cocycle",
    "cocycle_of",
    "has_fixed_point",
    "invariant_points",
    "invariants_form_pseudo_torsor",
    "pushforward_class",
    "contracted_product",
    "relabel",
    "random_module_torsor",
    "ENUMERATION_BUDGET",
]

ENUMERATION_BUDGET = 1_000_000


class TableError(ValueError):
    """Action or multiplication tables are inconsistent."""


@dataclass(eq=False)
class GGroup:
    group: SubgroupTable
    mul: np.ndarray
    identity: int
    action: np.ndarray
    module: GModule | None = None

    def __post_init__(self) -> None:
        self.mul = np.asarray(self.mul, dtype=np.int64)
        self.action = np.asarray(self.action, dtype=np.int64)

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    @cached_property
    def inv(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int64)
        for a in range(self.size):
            out[a] = int(np.flatnonzero(self.mul[a] == self.identity)[0])
        return out

    def validate(self) -> None:
        N = self.size
        idx = np.arange(N)
        if not (np.array_equal(self.mul[self.identity], idx) and np.array_equal(self.mul[:, self.identity], idx)):
            raise TableError("identity is not neutral")
        # associativity
        left = self.mul[self.mul[:, :, None], idx[None, None, :]]
        right = self.mul[idx[:, None, None], self.mul[None, :, :]]
        if not np.array_equal(left, right):
            raise TableError("multiplication is not associative")
        G = self.group
        T = G.mul_table
        for g in range(G.order):
            act = self.action[g]
            if sorted(act.tolist()) != list(range(N)):
                raise TableError("group element does not act bijectively")
            if not np.array_equal(act[self.mul], self.mul[act[:, None], act[None, :]]):
                raise TableError("action is not by automorphisms")
            for h in range(G.order):
                if not np.array_equal(self.action[T[g, h]], act[self.action[h]]):
                    raise TableError("action is not a group action")

    def fixed_elements(self) -> list[int]:
        return [a for a in range(self.size) if (self.action[:, a] == a).all()]

    @classmethod
    def from_module(cls, M: GModule) -> GGroup:
        """The finite G-module M as a G-group (elements indexed in base m)."""
        m, r = M.modulus, M.rank
        if m <= 0:
            raise ValueError("module must have finite coefficients")
        N = m**r
        if N > 4096:
            raise BudgetExceeded(f"|A| = {N} too large for tables")
        vecs = _all_vectors(m, r)
        weights = m ** np.arange(r, dtype=np.int64)
        add = ((vecs[:, None, :] + vecs[None, :, :]) % m) @ weights
        acts = np.einsum("gij,aj->gai", M.actions, vecs) % m @ weights
        return cls(M.group, add, 0, acts, module=M)

    def vector(self, a: int) -> np.ndarray:
        assert self.module is not None
        m, r = self.module.modulus, self.module.rank
        return np.array([(a // m**i) % m for i in range(r)], dtype=np.int64)

    def index(self, v: Sequence[int]) -> int:
        assert self.module is not None
        m = self.module.modulus
        return int(sum((int(x) % m) * m**i for i, x in enumerate(v)))


def _all_vectors(m: int, r: int) -> np.ndarray:
    N = m**r
    a = np.arange(N, dtype=np.int64)
    return np.stack([(a // m**i) % m for i in range(r)], axis=1) if r else np.zeros((1, 0), dtype=np.int64)


@dataclass(eq=False)
class EquivariantTorsor:
    A: GGroup
    right: np.ndarray
    left: np.ndarray

    def __post_init__(self) -> None:
        self.right = np.asarray(self.right, dtype=np.int64)
        self.left = np.asarray(self.left, dtype=np.int64)

    @property
    def size(self) -> int:
        return self.right.shape[0]

    def validate(self) -> None:
        A, G = self.A, self.A.group
        n = self.size
        if self.right.shape != (n, A.size) or self.left.shape != (G.order, n):
            raise TableError("table shapes do not match")
        if not np.array_equal(self.right[:, A.identity], np.arange(n)):
            raise TableError("identity of A does not act trivially")
        if not np.array_equal(self.right[self.right], self.right[:, A.mul].reshape(n, A.size, A.size)):
            raise TableError("right A-action is not an action")
        for t in range(n):
            if sorted(self.right[t].tolist()) != list(range(n)):
                raise TableError("A-action is not free and transitive")
        T = G.mul_table
        e = G.index(G.elements[0])
        if not np.array_equal(self.left[e], np.arange(n)):
            raise TableError("identity of G does not act trivially")
        for g in range(G.order):
            if sorted(self.left[g].tolist()) != list(range(n)):
                raise TableError("G does not act bijectively")
            for h in range(G.order):
                if not np.array_equal(self.left[T[g, h]], self.left[g][self.left[h]]):
                    raise TableError("left G-action is not an action")
            # g.(t.a) = (g.t).(g a)
            lhs = self.left[g][self.right]
            rhs = self.right[self.left[g][:, None], A.action[g][None, :]]
            if not np.array_equal(lhs, rhs):
                raise TableError("actions are not compatible")


@dataclass(frozen=True)
class TorsorClass:
    """Orbit of a crossed homomorphism under twisting; independent of basepoint."""

    orbit: frozenset[tuple[int, ...]]
    identity: int

    @property
    def canonical(self) -> tuple[int, ...]:
        return min(self.orbit)

    @property
    def is_trivial(self) -> bool:
        return tuple(self.identity for _ in self.canonical) in self.orbit

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TorsorClass) and self.orbit == other.orbit

    def __hash__(self) -> int:
        return hash(self.canonical)


def _is_crossed(A: GGroup, a: Sequence[int]) -> bool:
    T = A.group.mul_table
    av = np.asarray(a, dtype=np.int64)
    lhs = av[T]
    rhs = A.mul[av[:, None], A.action[:, av]]
    return bool(np.array_equal(lhs, rhs))


def class_of_cocycle(A: GGroup, a: Sequence[int]) -> TorsorClass:
    av = np.asarray(a, dtype=np.int64)
    if not _is_crossed(A, av):
        raise TableError("not a crossed homomorphism")
    G = A.group.order
    orbit = set()
    for b in range(A.size):
        tw = A.mul[A.mul[A.inv[b], av], A.action[np.arange(G), b]]
        orbit.add(tuple(int(x) for x in tw))
    return TorsorClass(frozenset(orbit), A.identity)


def torsor_cocycle(T: EquivariantTorsor, basepoint: int = 0) -> tuple[int, ...]:
    pos = np.empty(T.size, dtype=np.int64)
    pos[T.right[basepoint]] = np.arange(T.A.size)
    return tuple(int(pos[T.left[g, basepoint]]) for g in range(T.A.group.order))


def torsor_class(T: EquivariantTorsor, basepoint: int = 0) -> TorsorClass:
    return class_of_cocycle(T.A, torsor_cocycle(T, basepoint))


def invariant_points(T: EquivariantTorsor) -> list[int]:
    return [t for t in range(T.size) if (T.left[:, t] == t).all()]


def has_fixed_point(T: EquivariantTorsor) -> bool:
    return bool(invariant_points(T))


def invariants_form_pseudo_torsor(T: EquivariantTorsor) -> bool:
    """T^G is stable under A^G, and A^G acts simply transitively when T^G is nonempty."""
    TG = set(invariant_points(T))
    AG = T.A.fixed_elements()
    if any(int(T.right[t, a]) not in TG for t in TG for a in AG):
        return False
    if not TG:
        return True
    t0 = min(TG)
    return {int(T.right[t0, a]) for a in AG} == TG


def torsor_from_cocycle(A: GGroup, a: Sequence[int]) -> EquivariantTorsor:
    """T = A with g * t = a_g g(t) and right translation."""
    av = np.asarray(a, dtype=np.int64)
    left = A.mul[av[:, None], A.action]
    return EquivariantTorsor(A, A.mul.copy(), left)


def trivial_torsor(A: GGroup) -> EquivariantTorsor:
    return torsor_from_cocycle(A, [A.identity] * A.group.order)


def relabel(T: EquivariantTorsor, perm: Sequence[int]) -> EquivariantTorsor:
    """Rename point t as perm[t]."""
    p = np.asarray(perm, dtype=np.int64)
    pinv = np.argsort(p)
    right = p[T.right[pinv]]
    left = p[T.left[:, pinv]]
    return EquivariantTorsor(T.A, right, left)


def crossed_homomorphisms(A: GGroup, budget: int = ENUMERATION_BUDGET) -> list[tuple[int, ...]]:
    """All crossed homomorphisms, by choosing values on generators and extending."""
    G = A.group
    gens = G.generator_indices
    if A.size ** len(gens) > budget:
        raise BudgetExceeded(f"|A|^{len(gens)} = {A.size ** len(gens)} exceeds {budget}")
    T = G.mul_table
    e = G.index(G.elements[0])
    out = []
    for choice in np.ndindex(*([A.size] * len(gens))):
        vals = {e: A.identity}
        frontier = [e]
        while frontier:
            nxt = []
            for g in frontier:
                for s, v in zip(gens, choice):
                    # a_{gs} = a_g g(a_s)
                    gs = int(T[g, s])
                    if gs not in vals:
                        vals[gs] = int(A.mul[vals[g], A.action[g, v]])
                        nxt.append(gs)
            frontier = nxt
        a = tuple(vals[g] for g in range(G.order))
        if _is_crossed(A, a):
            out.append(a)
    return out


def nonabelian_h1(A: GGroup, budget: int = ENUMERATION_BUDGET) -> list[TorsorClass]:
    seen: dict[tuple[int, ...], TorsorClass] = {}
    for a in crossed_homomorphisms(A, budget):
        if a not in seen:
            c = class_of_cocycle(A, a)
            for x in c.orbit:
                seen[x] = c
    return sorted(set(seen.values()), key=lambda c: c.canonical)


@dataclass(eq=False)
class GGroupHom:
    source: GGroup
    target: GGroup
    table: np.ndarray

    def __post_init__(self) -> None:
        self.table = np.asarray(self.table, dtype=np.int64)

    def validate(self) -> None:
        f, S, T = self.table, self.source, self.target
        if not np.array_equal(f[S.mul], T.mul[f[:, None], f[None, :]]):
            raise TableError("map is not a homomorphism")
        if not np.array_equal(f[S.action], T.action[:, f]):
            raise TableError("map is not equivariant")

    @classmethod
    def reduction(cls, A: GGroup, B: GGroup) -> GGroupHom:
        """Coefficient reduction between module G-groups of the same rank."""
        assert A.module is not None and B.module is not None
        return cls(A, B, [B.index(A.vector(a)) for a in range(A.size)])

    @classmethod
    def scalar(cls, A: GGroup, k: int) -> GGroupHom:
        assert A.module is not None
        return cls(A, A, [A.index(k * A.vector(a)) for a in range(A.size)])


def pushforward_class(gamma: GGroupHom, T: EquivariantTorsor) -> TorsorClass:
    a = torsor_cocycle(T)
    return class_of_cocycle(gamma.target, [int(gamma.table[x]) for x in a])


def contracted_product(T: EquivariantTorsor, gamma: GGroupHom) -> EquivariantTorsor:
    """T x^A A' = (T x A') / ((t.a, a') ~ (t, gamma(a) a'))."""
    A, B = T.A, gamma.target
    nT, nB = T.size, B.size
    parent = list(range(nT * nB))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(nT):
        for a in range(A.size):
            ta = int(T.right[t, a])
            ga = int(gamma.table[a])
            for b in range(nB):
                x, y = find(ta * nB + b), find(t * nB + int(B.mul[ga, b]))
                if x != y:
                    parent[x] = y
    roots = sorted({find(x) for x in range(nT * nB)})
    label = {r: i for i, r in enumerate(roots)}
    cls_of = [label[find(x)] for x in range(nT * nB)]
    size = len(roots)
    rep = [0] * size
    for x in range(nT * nB - 1, -1, -1):
        rep[cls_of[x]] = x
    right = np.empty((size, nB), dtype=np.int64)
    left = np.empty((A.group.order, size), dtype=np.int64)
    for i, x in enumerate(rep):
        t, b = divmod(x, nB)
        for c in range(nB):
            right[i, c] = cls_of[t * nB + int(B.mul[b, c])]
        for g in range(A.group.order):
            left[g, i] = cls_of[int(T.left[g, t]) * nB + int(B.action[g, b])]
    out = EquivariantTorsor(B, right, left)
    out.validate()
    return out


def cocycle_of(A: GGroup, a: Sequence[int]) -> Cocycle:
    """Crossed homomorphism on a module G-group as a degree-1 cochain."""
    assert A.module is not None
    return Cocycle(A.module, 1, np.stack([A.vector(x) for x in a]))


def random_module_torsor(A: GGroup, rng: random.Random) -> tuple[EquivariantTorsor, tuple[int, ...]]:
    """A torsor built from a random crossed homomorphism, with shuffled labels."""
    a = rng.choice(crossed_homomorphisms(A))
    T = torsor_from_cocycle(A, a)
    perm = list(range(T.size))
    rng.shuffle(perm)
    return relabel(T, perm), a
