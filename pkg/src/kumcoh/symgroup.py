"""Symmetric groups of small degree and their subgroups.

Permutations are stored by their 1-based image arrays.  Products compose
right to left, ``(s * t)(i) = s(t(i))``, which makes ``s.e_i = e_{s(i)}``
a left action.  Every element list is sorted lexicographically by images,
so the identity always comes first and cochain indexing is stable.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .exactlin import factorize

__all__ = [
    "MAX_DEGREE",
    "Perm",
    "SubgroupTable",
    "enumerate_perms",
    "symmetric_group",
    "young_embedding",
    "sylow_subgroup",
    "cyclic_subgroup",
    "double_cosets",
    "eval_word",
    "verify_coxeter_relations",
    "coxeter_word_lengths",
    "parse_cycles",
    "format_cycles",
]

MAX_DEGREE = 7


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> Perm:
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Perm) -> Perm:
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def __str__(self) -> str:
        return format_cycles(self)


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as "(1 2)(3 4)"; "()" or "e" is the identity."""
    text = text.strip()
    img = list(range(1, n + 1))
    if text in ("", "e", "()", "id"):
        return Perm(tuple(img))
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", text):
        raise ValueError(f"bad cycle notation: {text!r}")
    seen: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        cyc = [int(x) for x in re.split(r"[\s,]+", body.strip())]
        if any(not 1 <= x <= n for x in cyc) or seen & set(cyc) or len(set(cyc)) != len(cyc):
            raise ValueError(f"bad cycle {cyc} for degree {n}")
        seen |= set(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return Perm(tuple(img))


def format_cycles(p: Perm) -> str:
    seen: set[int] = set()
    out = []
    for start in range(1, p.degree + 1):
        if start in seen or p(start) == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = p(i)
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def enumerate_perms(n: int) -> list[Perm]:
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} outside the supported range 1..{MAX_DEGREE}")
    return [Perm(t) for t in itertools.permutations(range(1, n + 1))]


@dataclass(frozen=True, eq=False)
class SubgroupTable:
    """A subgroup of S_n given by its sorted element list and generators."""

    n: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index.update({p: i for i, p in enumerate(self.elements)})

    @classmethod
    def generated_by(cls, gens: Sequence[Perm], n: int, name: str = "") -> SubgroupTable:
        gens = tuple(g for g in gens if not g.is_identity())
        return cls(n, tuple(sorted(closure(gens, n))), gens, name)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index_in_parent(self) -> int:
        return factorial(self.n) // self.order

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self._index

    def index(self, p: Perm) -> int:
        return self._index[p]

    def __repr__(self) -> str:
        return f"SubgroupTable({self.name or 'G'}, degree={self.n}, order={self.order})"

    @cached_property
    def images(self) -> np.ndarray:
        """(|G|, n) array of 0-based images."""
        return np.array([[i - 1 for i in p.images] for p in self.elements], dtype=np.int64)

    def _lookup(self, img: np.ndarray) -> np.ndarray:
        codes = img @ (self.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64))
        pos = np.searchsorted(self._codes, codes)
        pos = np.minimum(pos, len(self._codes) - 1)
        if not np.array_equal(self._codes[pos], codes):
            raise ValueError("product left the subgroup")
        return pos

    @cached_property
    def _codes(self) -> np.ndarray:
        return self.images @ (self.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64))

    def right_multiplication(self, h: Perm) -> np.ndarray:
        """idx -> index of elements[idx] * h."""
        himg = np.array([i - 1 for i in h.images])
        return self._lookup(self.images[:, himg])

    def left_multiplication(self, h: Perm) -> np.ndarray:
        himg = np.array([i - 1 for i in h.images])
        return self._lookup(himg[self.images])

    @cached_property
    def mul_table(self) -> np.ndarray:
        """mul_table[a, b] = index of elements[a] * elements[b]."""
        if self.order > 720:
            raise ValueError("multiplication tables are limited to groups of order <= 720")
        img = self.images
        prod = img[:, img]  # prod[a, b, i] = img[a][img[b][i]]
        return self._lookup(prod.reshape(-1, self.n)).reshape(self.order, self.order)

    @cached_property
    def inverse_table(self) -> np.ndarray:
        return np.array([self.index(p.inverse()) for p in self.elements], dtype=np.int64)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    def is_cyclic(self) -> bool:
        return any(p.order() == self.order for p in self.elements)

    def cyclic_generator(self) -> Perm:
        for p in self.elements:
            if p.order() == self.order:
                return p
        raise ValueError("group is not cyclic")

    def right_transversal(self) -> list[Perm]:
        """Lexicographically least representative of each right coset H g, identity first."""
        seen: set[Perm] = set()
        reps = []
        for g in enumerate_perms(self.n):
            if g in seen:
                continue
            reps.append(g)
            seen.update(h * g for h in self.elements)
        return reps

    def conjugate(self, g: Perm) -> SubgroupTable:
        gi = g.inverse()
        return SubgroupTable.generated_by([g * x * gi for x in self.generators], self.n, f"{self.name}^g")

    def intersection(self, other: SubgroupTable) -> SubgroupTable:
        els = tuple(p for p in self.elements if p in other)
        gens = _small_generating_set(els, self.n)
        return SubgroupTable(self.n, els, gens, f"{self.name}&{other.name}")


def closure(gens: Iterable[Perm], n: int) -> set[Perm]:
    gens = list(gens)
    e = Perm.identity(n)
    out = {e}
    frontier = deque([e])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = x * g
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


def _small_generating_set(elements: Sequence[Perm], n: int) -> tuple[Perm, ...]:
    """Greedy generating set, preferring elements of large order."""
    target = len(elements)
    cands = sorted((p for p in elements if not p.is_identity()), key=lambda p: (-p.order(), p))
    gens: list[Perm] = []
    span = {Perm.identity(n)}
    for p in cands:
        if len(span) == target:
            break
        if p not in span:
            gens.append(p)
            span = closure(gens, n)
    return tuple(gens)


_SN_CACHE: dict[int, SubgroupTable] = {}


def symmetric_group(n: int) -> SubgroupTable:
    """S_n with the two generators (1 2) and (1 2 ... n)."""
    if n not in _SN_CACHE:
        elements = tuple(enumerate_perms(n))
        if n == 1:
            gens: tuple[Perm, ...] = ()
        elif n == 2:
            gens = (Perm.transposition(1, 2, 2),)
        else:
            gens = (Perm.transposition(1, 2, n), Perm(tuple(range(2, n + 1)) + (1,)))
        _SN_CACHE[n] = SubgroupTable(n, elements, gens, f"S{n}")
    return _SN_CACHE[n]


def young_embedding(n: int) -> tuple[SubgroupTable, list[Perm]]:
    """S_{n-1} as the stabilizer of n, with right coset representatives."""
    if n < 2:
        raise ValueError("need n >= 2")
    els = tuple(p for p in enumerate_perms(n) if p(n) == n)
    gens = tuple(Perm(g.images + (n,)) for g in symmetric_group(n - 1).generators)
    H = SubgroupTable(n, els, gens, f"S{n - 1}")
    return H, H.right_transversal()


def sylow_subgroup(n: int, p: int) -> SubgroupTable:
    """Sylow p-subgroup of S_n built from iterated wreath products on base-p blocks."""
    if factorize(p) != {p: 1}:
        raise ValueError(f"{p} is not prime")
    if not p <= n <= MAX_DEGREE:
        raise ValueError(f"S_{n} has no {p}-torsion or is out of range")
    gens: list[Perm] = []
    start, digits, m = 1, [], n
    while m:
        digits.append(m % p)
        m //= p
    for level in range(len(digits) - 1, 0, -1):
        size = p**level
        for _ in range(digits[level]):
            gens += _wreath_generators(start, level, p, n)
            start += size
    G = SubgroupTable.generated_by(gens, n, f"Syl{p}(S{n})")
    expected = p ** factorize(factorial(n)).get(p, 0)
    if G.order != expected:
        raise AssertionError("Sylow construction produced the wrong order")
    return G


def _wreath_generators(start: int, level: int, p: int, n: int) -> list[Perm]:
    """Generators of the iterated wreath product C_p wr ... wr C_p on p^level letters."""
    gens = []
    for lv in range(1, level + 1):
        block = p ** (lv - 1)
        img = list(range(1, n + 1))
        # shift the p sub-blocks of size `block` cyclically
        for j in range(p):
            for t in range(block):
                src = start + j * block + t
                img[src - 1] = start + ((j + 1) % p) * block + t
        gens.append(Perm(tuple(img)))
    return gens


def cyclic_subgroup(g: Perm) -> SubgroupTable:
    return SubgroupTable.generated_by([g], g.degree, f"<{format_cycles(g)}>")


def double_cosets(H: SubgroupTable, K: SubgroupTable) -> list[Perm]:
    """Lexicographically least representative of each double coset H g K."""
    if H.n != K.n:
        raise ValueError("subgroups of different degree")
    seen: set[Perm] = set()
    reps = []
    for g in enumerate_perms(H.n):
        if g in seen:
            continue
        reps.append(g)
        seen.update(h * g * k for h in H.elements for k in K.elements)
    return reps


def eval_word(word: Sequence[int], n: int) -> Perm:
    """Evaluate s_{w1} s_{w2} ... with s_i = (i i+1)."""
    out = Perm.identity(n)
    for i in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for degree {n}")
        out = out * Perm.transposition(i, i + 1, n)
    return out


def coxeter_relations(n: int) -> list[tuple[str, list[int]]]:
    rels = []
    for i in range(1, n):
        rels.append((f"s{i}^2", [i, i]))
    for i in range(1, n - 1):
        rels.append((f"(s{i} s{i + 1})^3", [i, i + 1] * 3))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((f"(s{i} s{j})^2", [i, j] * 2))
    return rels


def verify_coxeter_relations(n: int) -> dict[str, bool]:
    """Check every Coxeter relator evaluates to the identity, and that the s_i generate S_n."""
    report = {name: eval_word(w, n).is_identity() for name, w in coxeter_relations(n)}
    lengths = coxeter_word_lengths(n)
    report["generates"] = len(lengths) == factorial(n)
    report["length-bound"] = max(lengths.values()) <= n * (n - 1) // 2
    return report


def coxeter_word_lengths(n: int) -> dict[Perm, int]:
    """Breadth-first word length of every element in the adjacent transpositions."""
    e = Perm.identity(n)
    dist = {e: 0}
    queue = deque([e])
    gens = [Perm.transposition(i, i + 1, n) for i in range(1, n)]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist
