"""Power-of-n bookkeeping, the n-torsion kernel model, and strict partitions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterator, Sequence

import numpy as np

from .exactlin import FinAbGroup, IntMatrix, kernel_mod, solve_mod
from .sympol import orlov_f

__all__ = [
    "SemihomLedger",
    "ledger",
    "TorsionModel",
    "KernelReport",
    "kernel_cardinality",
    "family_element",
    "random_invertible",
    "StrictPartition",
    "strict_partitions",
    "g_lambda_formula",
    "shifted_tableaux",
    "shifted_tableaux_count",
    "f_lambda",
    "ProjectiveDimsVerdict",
    "all_projective_dims_even",
]


@dataclass(frozen=True)
class SemihomLedger:
    n: int
    rank_F: int
    rank_E: int
    sigma_mu: int
    jh_length: int
    orbit_size: int
    endo_dim: int

    def identities(self) -> dict[str, bool]:
        n = self.n
        return {
            "rank_F": self.rank_F == n ** (8 * (n - 1)),
            "rank_E": self.rank_E == n ** (2 * n - 4),
            "sigma_mu": self.sigma_mu == n ** (4 * n - 8),
            "jh_length": self.jh_length == n ** (6 * n - 4),
            "orbit_size": self.orbit_size == n ** (4 * n),
            "endo_dim": self.endo_dim == self.rank_F,
            "rank_F = jh_length * rank_E": self.rank_F == self.jh_length * self.rank_E,
            "sigma_mu * orbit_size = rank_F": self.sigma_mu * self.orbit_size == self.rank_F,
            "jh_length / orbit_size = rank_E": self.jh_length == self.orbit_size * self.rank_E,
            "sigma_mu = rank_E^2": self.sigma_mu == self.rank_E**2,
        }

    def holds(self) -> bool:
        return all(self.identities().values())


def ledger(n: int) -> SemihomLedger:
    if n < 2:
        raise ValueError("need n >= 2")
    rank_F = n ** (8 * (n - 1))
    return SemihomLedger(
        n=n,
        rank_F=rank_F,
        rank_E=n ** (2 * n - 4),
        sigma_mu=n ** (4 * n - 8),
        jh_length=n ** (6 * n - 4),
        orbit_size=n ** (4 * n),
        endo_dim=rank_F,
    )


def _inverse_mod(M: np.ndarray, n: int) -> np.ndarray:
    A = IntMatrix.from_rows(M.tolist())
    cols = []
    for j in range(M.shape[0]):
        e = [1 if i == j else 0 for i in range(M.shape[0])]
        x = solve_mod(A, e, n)
        if x is None:
            raise ValueError("matrix is not invertible mod n")
        cols.append(x)
    inv = np.array(cols, dtype=np.int64).T % n
    if not np.array_equal(M @ inv % n, np.eye(M.shape[0], dtype=np.int64) % n):
        raise ValueError("matrix is not invertible mod n")
    return inv


def _gram_phi0(n: int) -> np.ndarray:
    return np.eye(n - 1, dtype=np.int64) + np.ones((n - 1, n - 1), dtype=np.int64)


@dataclass
class TorsionModel:
    """phi_Lambda = [[L, -I], [-I, n4 L^D]] (x) Gram(phi0) on (Z/n)^{8(n-1)}."""

    n: int
    e: int
    Lam: np.ndarray
    LamD: np.ndarray = field(init=False)
    n4: int = field(init=False)

    def __post_init__(self) -> None:
        if gcd(self.n, self.e) != 1:
            raise ValueError(f"gcd(n, e) = {gcd(self.n, self.e)} != 1")
        self.Lam = np.asarray(self.Lam, dtype=np.int64) % self.n
        if self.Lam.shape != (4, 4):
            raise ValueError("Lambda must be 4x4")
        self.LamD = self.e * _inverse_mod(self.Lam, self.n) % self.n
        self.n4 = orlov_f(self.n, self.e).n4

    @classmethod
    def default(cls, n: int, e: int) -> TorsionModel:
        return cls(n, e, e * np.eye(4, dtype=np.int64))

    def matrix(self) -> np.ndarray:
        n = self.n
        I4 = np.eye(4, dtype=np.int64)
        block = np.block([[self.Lam, -I4], [-I4, self.n4 * self.LamD]])
        return np.kron(block, _gram_phi0(n)) % n

    def delta_kernel(self) -> np.ndarray:
        """Kernel of Gram(phi0) mod n: the all-ones vector."""
        return np.ones(self.n - 1, dtype=np.int64)


@dataclass(frozen=True)
class KernelReport:
    n: int
    kernel: FinAbGroup
    cardinality: int
    expected: int
    image_cardinality: int

    @property
    def matches(self) -> bool:
        return self.cardinality == self.expected and self.image_cardinality == self.n ** (4 * self.n - 8)


def kernel_cardinality(model: TorsionModel) -> KernelReport:
    n = model.n
    M = model.matrix()
    _, K = kernel_mod(IntMatrix.from_rows(M.tolist()), n)
    size = K.order
    total = n ** (8 * (n - 1))
    return KernelReport(n, K, size, n ** (4 * n), total // size)


def family_element(model: TorsionModel, a: np.ndarray, alpha0: np.ndarray) -> np.ndarray:
    """(a, (L (x) 1) a + Delta(alpha0)) with a in (Z/n)^{4(n-1)}, alpha0 in (Z/n)^4."""
    n = model.n
    r = n - 1
    a = np.asarray(a, dtype=np.int64) % n
    b = np.kron(model.Lam, np.eye(r, dtype=np.int64)) @ a
    b = b + np.kron(np.asarray(alpha0, dtype=np.int64), model.delta_kernel())
    return np.concatenate([a, b % n])


def random_invertible(n: int, rng: random.Random, size: int = 4) -> np.ndarray:
    while True:
        M = np.array([[rng.randrange(n) for _ in range(size)] for _ in range(size)], dtype=np.int64)
        if gcd(IntMatrix.from_rows(M.tolist()).det(), n) == 1:
            return M


# strict partitions


@dataclass(frozen=True)
class StrictPartition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        p = tuple(int(x) for x in self.parts)
        if not p or p[-1] < 1 or any(p[i] <= p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"not a strict partition: {p}")
        object.__setattr__(self, "parts", p)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def strict_partitions(n: int) -> list[StrictPartition]:
    out: list[StrictPartition] = []

    def rec(rest: int, cap: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(StrictPartition(tuple(acc)))
            return
        for k in range(min(rest, cap), 0, -1):
            acc.append(k)
            rec(rest - k, k - 1, acc)
            acc.pop()

    if n >= 1:
        rec(n, n, [])
    return out


def _as_parts(lam: StrictPartition | Sequence[int]) -> tuple[int, ...]:
    return lam.parts if isinstance(lam, StrictPartition) else StrictPartition(tuple(lam)).parts


def g_lambda_formula(lam: StrictPartition | Sequence[int]) -> int:
    p = _as_parts(lam)
    val = Fraction(factorial(sum(p)))
    for x in p:
        val /= factorial(x)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            val *= Fraction(p[i] - p[j], p[i] + p[j])
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral count for {p}")
    return int(val)


def shifted_tableaux(lam: StrictPartition | Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every standard filling of the shifted diagram, row by row."""
    p = _as_parts(lam)
    total = sum(p)
    filled = [0] * len(p)
    rows: list[list[int]] = [[] for _ in p]

    def rec(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if k > total:
            yield tuple(tuple(r) for r in rows)
            return
        for i in range(len(p)):
            if filled[i] == p[i]:
                continue
            # next box of row i sits at column i + filled[i]; the box above must be filled
            if i > 0 and filled[i - 1] <= filled[i] + 1:
                continue
            filled[i] += 1
            rows[i].append(k)
            yield from rec(k + 1)
            rows[i].pop()
            filled[i] -= 1

    yield from rec(1)


@lru_cache(maxsize=None)
def _count_by_corners(p: tuple[int, ...]) -> int:
    if sum(p) <= 1:
        return 1
    total = 0
    for i, x in enumerate(p):
        nxt = p[i + 1] if i + 1 < len(p) else 0
        if x - 1 > nxt:
            total += _count_by_corners(p[:i] + (x - 1,) + p[i + 1 :])
        elif x == 1 and i == len(p) - 1:
            total += _count_by_corners(p[:i])
    return total


def shifted_tableaux_count(lam: StrictPartition | Sequence[int], enumerate_all: bool = True) -> int:
    """Count shifted standard tableaux; explicit enumeration unless told otherwise."""
    p = _as_parts(lam)
    if enumerate_all:
        return sum(1 for _ in shifted_tableaux(p))
    return _count_by_corners(p)


def f_lambda(lam: StrictPartition | Sequence[int]) -> int:
    p = _as_parts(lam)
    return 2 ** ((sum(p) - len(p)) // 2) * g_lambda_formula(p)


@dataclass(frozen=True)
class ProjectiveDimsVerdict:
    n: int
    all_even: bool
    vacuous: bool
    rows: tuple[tuple[StrictPartition, int, int], ...]


def all_projective_dims_even(n: int) -> ProjectiveDimsVerdict:
    """For n <= 3 the statement is vacuous; the rows are still reported."""
    rows = tuple((lam, g_lambda_formula(lam), f_lambda(lam)) for lam in strict_partitions(n))
    return ProjectiveDimsVerdict(n, all(f % 2 == 0 for _, _, f in rows), n <= 3, rows)
