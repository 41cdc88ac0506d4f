"""Modules over subgroups of S_n, given by explicit action matrices.

Basis conventions, fixed once here and used everywhere else:

* permutation module Z^n: ``s.e_i = e_{s(i)}``;
* standard module: basis ``f_i = e_i - e_n`` for i < n, so a vector
  ``(x_1, ..., x_n)`` with zero sum has coordinates ``(x_1, ..., x_{n-1})``;
* dual standard module Z^n / diagonal: basis the classes ``[e_1], ..., [e_{n-1}]``
  with ``[e_n] = -([e_1] + ... + [e_{n-1}])``.  This is the dual basis of
  ``f_1, ..., f_{n-1}`` under Hom(standard, Z).

In these bases the canonical map is the Gram matrix ``I + J`` and its dual
isogeny is ``n I - J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .exactlin import FinAbGroup, IntMatrix, integer_kernel, kernel_mod
from .symgroup import Perm, SubgroupTable, symmetric_group, young_embedding

__all__ = [
    "GModule",
    "ModuleMap",
    "ModuleSES",
    "InducedModule",
    "permutation_module",
    "standard_module",
    "dual_standard_module",
    "trivial_module",
    "direct_sum",
    "canonical_phi0",
    "dual_isogeny_phihat0",
    "diagonal_map",
    "summation_map",
    "hom_equivariant",
    "fixed_points",
    "induced_module",
    "induced_trivial_module",
    "brute_force_hom_count",
    "tensor_sequence_modules",
    "standard_inclusion_ses",
    "module_by_key",
    "MODULE_KEYS",
]

MatrixFn = Callable[[Perm], np.ndarray]


@dataclass(frozen=True, eq=False)
class GModule:
    group: SubgroupTable
    rank: int
    modulus: int
    matrix_fn: MatrixFn = field(repr=False)
    name: str = ""

    def action(self, g: Perm) -> np.ndarray:
        A = np.asarray(self.matrix_fn(g), dtype=np.int64)
        return A % self.modulus if self.modulus else A

    @cached_property
    def actions(self) -> np.ndarray:
        """(|G|, r, r) array of action matrices in element order."""
        if not self.group.elements:
            return np.zeros((0, self.rank, self.rank), dtype=np.int64)
        return np.stack([self.action(g) for g in self.group.elements])

    def generator_actions(self) -> list[np.ndarray]:
        return [self.action(g) for g in self.group.generators]

    def restrict(self, H: SubgroupTable) -> GModule:
        return GModule(H, self.rank, self.modulus, self.matrix_fn, f"{self.name}|{H.name}")

    def reduce(self, m: int) -> GModule:
        """Change coefficients to Z/m (requires m | modulus when the modulus is finite)."""
        if self.modulus and self.modulus % m:
            raise ValueError(f"cannot reduce modulus {self.modulus} to {m}")
        return GModule(self.group, self.rank, m, self.matrix_fn, self.name)

    def check_homomorphism(self, pairs: Sequence[tuple[Perm, Perm]] | None = None) -> bool:
        G = self.group
        if pairs is None:
            pairs = [(a, b) for a in G.elements for b in G.elements]
        ident = np.eye(self.rank, dtype=np.int64)
        if self.rank and not np.array_equal(self.action(Perm.identity(G.n)), self._red(ident)):
            return False
        return all(
            np.array_equal(self.action(a * b), self._red(self.action(a) @ self.action(b)))
            for a, b in pairs
        )

    def _red(self, A: np.ndarray) -> np.ndarray:
        return A % self.modulus if self.modulus else A


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: GModule
    target: GModule
    matrix: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        M = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        if self.target.modulus:
            M = M % self.target.modulus
        object.__setattr__(self, "matrix", M)

    def __call__(self, v: Sequence[int]) -> np.ndarray:
        out = self.matrix @ np.asarray(v, dtype=np.int64)
        return out % self.target.modulus if self.target.modulus else out

    def is_equivariant(self, elements: Sequence[Perm] | None = None) -> bool:
        m = self.target.modulus
        for g in elements if elements is not None else self.source.group.generators:
            lhs = self.matrix @ self.source.action(g)
            rhs = self.target.action(g) @ self.matrix
            if m:
                lhs, rhs = lhs % m, rhs % m
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def compose(self, first: ModuleMap) -> ModuleMap:
        """self o first."""
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix, f"{self.name}.{first.name}")


def _perm_matrix(g: Perm) -> np.ndarray:
    n = g.degree
    P = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        P[g.images[i] - 1, i] = 1
    return P


def _standard_matrix(g: Perm) -> np.ndarray:
    n = g.degree
    A = np.zeros((n - 1, n - 1), dtype=np.int64)
    last = g.images[n - 1]
    for i in range(n - 1):
        gi = g.images[i]
        if gi != n:
            A[gi - 1, i] += 1
        if last != n:
            A[last - 1, i] -= 1
    return A


def _dual_standard_matrix(g: Perm) -> np.ndarray:
    n = g.degree
    A = np.zeros((n - 1, n - 1), dtype=np.int64)
    for i in range(n - 1):
        gi = g.images[i]
        if gi != n:
            A[gi - 1, i] = 1
        else:
            A[:, i] = -1
    return A


def _group(n: int, group: SubgroupTable | None) -> SubgroupTable:
    G = group if group is not None else symmetric_group(n)
    if G.n != n:
        raise ValueError("group degree does not match")
    return G


def permutation_module(n: int, m: int = 0, group: SubgroupTable | None = None) -> GModule:
    return GModule(_group(n, group), n, m, _perm_matrix, f"Z^{n}" + (f"/{m}" if m else ""))


def standard_module(n: int, m: int = 0, group: SubgroupTable | None = None) -> GModule:
    if n < 2:
        raise ValueError("need n >= 2")
    return GModule(_group(n, group), n - 1, m, _standard_matrix, f"Gamma{n}" + (f"/{m}" if m else ""))


def dual_standard_module(n: int, m: int = 0, group: SubgroupTable | None = None) -> GModule:
    if n < 2:
        raise ValueError("need n >= 2")
    return GModule(_group(n, group), n - 1, m, _dual_standard_matrix, f"Gamma{n}^v" + (f"/{m}" if m else ""))


def trivial_module(group: SubgroupTable, m: int = 0, rank: int = 1) -> GModule:
    eye = np.eye(rank, dtype=np.int64)
    return GModule(group, rank, m, lambda g: eye, f"triv^{rank}" + (f"/{m}" if m else ""))


def direct_sum(*mods: GModule) -> GModule:
    G, m = mods[0].group, mods[0].modulus
    if any(M.group is not G and M.group.elements != G.elements for M in mods) or any(M.modulus != m for M in mods):
        raise ValueError("direct sum needs a common group and coefficient ring")
    ranks = [M.rank for M in mods]

    def fn(g: Perm) -> np.ndarray:
        out = np.zeros((sum(ranks), sum(ranks)), dtype=np.int64)
        s = 0
        for M, r in zip(mods, ranks):
            out[s:s + r, s:s + r] = M.matrix_fn(g)
            s += r
        return out

    return GModule(G, sum(ranks), m, fn, "+".join(M.name for M in mods))


def canonical_phi0(n: int, m: int = 0, group: SubgroupTable | None = None) -> ModuleMap:
    """Standard -> dual standard; Gram matrix 2 on the diagonal, 1 off it."""
    gram = np.eye(n - 1, dtype=np.int64) + 1
    return ModuleMap(standard_module(n, m, group), dual_standard_module(n, m, group), gram, "phi0")


def dual_isogeny_phihat0(n: int, m: int = 0, group: SubgroupTable | None = None) -> ModuleMap:
    """Dual standard -> standard, [e_i] -> n e_i - (1, ..., 1)."""
    mat = n * np.eye(n - 1, dtype=np.int64) - 1
    return ModuleMap(dual_standard_module(n, m, group), standard_module(n, m, group), mat, "phihat0")


def diagonal_map(n: int, m: int, group: SubgroupTable | None = None) -> ModuleMap:
    """Z/m -> standard/m, a -> (a, ..., a); equivariant and well defined when m | n."""
    if n % m:
        raise ValueError("the diagonal lands in the standard module only when m divides n")
    G = _group(n, group)
    return ModuleMap(trivial_module(G, m), standard_module(n, m, G), np.ones((n - 1, 1), dtype=np.int64), "Delta")


def summation_map(n: int, m: int, group: SubgroupTable | None = None) -> ModuleMap:
    """dual standard/m -> Z/m, [x] -> sum x_i; well defined when m | n."""
    if n % m:
        raise ValueError("summation is well defined on the dual standard module only when m divides n")
    G = _group(n, group)
    return ModuleMap(dual_standard_module(n, m, G), trivial_module(G, m), np.ones((1, n - 1), dtype=np.int64), "Sigma")


def _hom_system(M: GModule, N: GModule) -> IntMatrix:
    rM, rN = M.rank, N.rank
    rows = []
    for g in M.group.generators:
        A, B = M.action(g), N.action(g)
        for i in range(rN):
            for k in range(rM):
                row = [0] * (rN * rM)
                for j in range(rM):
                    row[i * rM + j] += int(A[j, k])
                for l in range(rN):
                    row[l * rM + k] -= int(B[i, l])
                rows.append(row)
    return IntMatrix.from_rows(rows, rN * rM)


def hom_equivariant(M: GModule, N: GModule) -> tuple[list[ModuleMap], FinAbGroup]:
    """Equivariant maps M -> N: a lattice basis over Z, or generators over Z/m."""
    if M.modulus != N.modulus:
        raise ValueError("modules over different coefficient rings")
    if M.group.elements != N.group.elements:
        raise ValueError("modules over different groups")
    system = _hom_system(M, N)
    if M.modulus == 0:
        basis = integer_kernel(system)
        group = FinAbGroup((), len(basis))
    else:
        basis, group = kernel_mod(system, M.modulus)
    maps = [ModuleMap(M, N, np.array(v, dtype=np.int64).reshape(N.rank, M.rank)) for v in basis]
    return maps, group


def fixed_points(M: GModule) -> tuple[FinAbGroup, list[tuple[int, ...]]]:
    rows: list[list[int]] = []
    eye = np.eye(M.rank, dtype=np.int64)
    for A in M.generator_actions():
        rows.extend((A - eye).tolist())
    system = IntMatrix.from_rows(rows, M.rank)
    if M.modulus == 0:
        basis = integer_kernel(system)
        return FinAbGroup((), len(basis)), basis
    gens, group = kernel_mod(system, M.modulus)
    return group, gens


def brute_force_hom_count(M: GModule, N: GModule) -> int:
    """Count equivariant matrices over Z/m by enumeration (small ranks only)."""
    m = M.modulus
    gens = [(M.action(g), N.action(g)) for g in M.group.generators]
    count = 0
    for entries in product(range(m), repeat=M.rank * N.rank):
        X = np.array(entries, dtype=np.int64).reshape(N.rank, M.rank)
        if all(np.array_equal((X @ A) % m, (B @ X) % m) for A, B in gens):
            count += 1
    return count


@dataclass(frozen=True, eq=False)
class InducedModule:
    """Ind_H^G(M) as functions phi: G -> M with phi(h x) = h.phi(x); (g.phi)(x) = phi(x g)."""

    module: GModule
    subgroup: SubgroupTable
    base: GModule
    transversal: tuple[Perm, ...]

    @property
    def pi(self) -> np.ndarray:
        """Evaluation at the identity coset: Ind(M) -> M (H-equivariant)."""
        r = self.base.rank
        out = np.zeros((r, r * len(self.transversal)), dtype=np.int64)
        out[:, :r] = np.eye(r, dtype=np.int64)
        return out

    def iota(self, N: GModule) -> np.ndarray:
        """N -> Ind(Res N), x -> (g -> g.x)."""
        return np.vstack([N.action(t) for t in self.transversal])

    def nu(self, N: GModule) -> np.ndarray:
        """Ind(Res N) -> N, phi -> sum over cosets of g.phi(g^-1)."""
        return np.hstack([N.action(t.inverse()) for t in self.transversal])


def _right_transversal(H: SubgroupTable, G: SubgroupTable) -> list[Perm]:
    seen: set[Perm] = set()
    reps = []
    for g in G.elements:
        if g not in seen:
            reps.append(g)
            seen.update(h * g for h in H.elements)
    return reps


def induced_module(H: SubgroupTable, M: GModule, G: SubgroupTable | None = None) -> InducedModule:
    G = G if G is not None else symmetric_group(H.n)
    T = _right_transversal(H, G)
    where: dict[Perm, tuple[Perm, int]] = {}
    for j, t in enumerate(T):
        for h in H.elements:
            where[h * t] = (h, j)
    r, k = M.rank, len(T)

    def fn(g: Perm) -> np.ndarray:
        out = np.zeros((r * k, r * k), dtype=np.int64)
        for i, t in enumerate(T):
            h, j = where[t * g]
            out[i * r:(i + 1) * r, j * r:(j + 1) * r] = M.matrix_fn(h)
        return out

    ind = GModule(G, r * k, M.modulus, fn, f"Ind({M.name})")
    return InducedModule(ind, H, M, tuple(T))


def induced_trivial_module(n: int, m: int) -> InducedModule:
    H, _ = young_embedding(n)
    return induced_module(H, trivial_module(H, m))


@dataclass(frozen=True, eq=False)
class ModuleSES:
    """0 -> sub --inc--> mid --proj--> quot -> 0."""

    inc: ModuleMap
    proj: ModuleMap

    @property
    def sub(self) -> GModule:
        return self.inc.source

    @property
    def mid(self) -> GModule:
        return self.inc.target

    @property
    def quot(self) -> GModule:
        return self.proj.target

    def validate(self, limit: int = 200_000) -> bool:
        """Equivariance plus exactness at all three spots, pointwise when small."""
        m = self.mid.modulus
        if not (self.inc.is_equivariant() and self.proj.is_equivariant()):
            return False
        if m == 0:
            raise ValueError("pointwise exactness needs finite coefficients")
        comp = (self.proj.matrix @ self.inc.matrix) % m
        if comp.any():
            return False
        if m ** self.mid.rank <= limit:
            return _exact_pointwise(self.inc.matrix, self.proj.matrix, m, self.sub.rank, self.mid.rank, self.quot.rank)
        _, ker_inc = kernel_mod(IntMatrix.from_rows(self.inc.matrix.tolist(), self.sub.rank), m)
        _, ker_proj = kernel_mod(IntMatrix.from_rows(self.proj.matrix.tolist(), self.mid.rank), m)
        image_inc = m ** self.sub.rank // ker_inc.order
        image_proj = m ** self.mid.rank // ker_proj.order
        return ker_inc.order == 1 and image_proj == m ** self.quot.rank and ker_proj.order == image_inc


def _exact_pointwise(f: np.ndarray, g: np.ndarray, m: int, r0: int, r1: int, r2: int) -> bool:
    """Exactness of 0 -> Z/m^r0 -f-> Z/m^r1 -g-> Z/m^r2 -> 0 by enumeration."""
    image_f = {tuple((f @ np.array(x)) % m) for x in product(range(m), repeat=r0)}
    if len(image_f) != m**r0:
        return False
    kernel_g = set()
    image_g = set()
    for y in product(range(m), repeat=r1):
        gy = tuple((g @ np.array(y)) % m)
        image_g.add(gy)
        if not any(gy):
            kernel_g.add(tuple(y))
    return kernel_g == image_f and len(image_g) == m**r2


def tensor_sequence_modules(n: int, m: int) -> dict:
    """The canonical-map sequences, with their exactness checked.

    ``integral``: 0 -> Gamma_n -phi0-> Gamma_n^v -Sigma-> Z/n -> 0.
    ``torsion``: 0 -> A[n] -Delta-> A[n]+Gamma_n -phi0-> A[n]+Gamma_n^v -Sigma-> A[n] -> 0
    for A = Z/m, where A[n] is cyclic of order g = gcd(n, m).
    """
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    G = symmetric_group(n)
    phi = canonical_phi0(n, 0, G)
    if abs(IntMatrix.from_rows(phi.matrix.tolist()).det()) != n:
        raise ArithmeticError("canonical map does not have index n")
    sig_n = np.ones((1, n - 1), dtype=np.int64)
    if ((sig_n @ phi.matrix) % n).any():
        raise ArithmeticError("Sigma o phi0 is not zero mod n")
    g = gcd(n, m)
    out: dict = {"integral": (phi, sig_n), "order": g}
    if g == 1:
        out["torsion"] = None
        return out
    delta = diagonal_map(n, g, G)
    phi_g = canonical_phi0(n, g, G)
    sigma = summation_map(n, g, G)
    for f in (delta, phi_g, sigma):
        if not f.is_equivariant(G.elements if G.order <= 120 else None):
            raise ArithmeticError(f"{f.name} is not equivariant")
    if not _exact_four_term(delta.matrix, phi_g.matrix, sigma.matrix, g, n - 1):
        raise ArithmeticError("four-term sequence is not exact")
    out["torsion"] = (delta, phi_g, sigma)
    return out


def _exact_four_term(d: np.ndarray, p: np.ndarray, s: np.ndarray, m: int, r: int) -> bool:
    vecs = [np.array(x, dtype=np.int64) for x in product(range(m), repeat=r)]
    im_d = {tuple((d @ np.array([a])) % m) for a in range(m)}
    if len(im_d) != m:
        return False
    ker_p = {tuple(v) for v in vecs if not ((p @ v) % m).any()}
    im_p = {tuple((p @ v) % m) for v in vecs}
    ker_s = {tuple(v) for v in vecs if not ((s @ v) % m).any()}
    im_s = {int(((s @ v) % m)[0]) for v in vecs}
    return im_d == ker_p and im_p == ker_s and len(im_s) == m


def standard_inclusion_ses(n: int, m: int, group: SubgroupTable | None = None) -> ModuleSES:
    """0 -> standard/m -> (Z/m)^n -Sigma-> Z/m -> 0."""
    G = _group(n, group)
    inc = np.zeros((n, n - 1), dtype=np.int64)
    for i in range(n - 1):
        inc[i, i] = 1
        inc[n - 1, i] = -1
    return ModuleSES(
        ModuleMap(standard_module(n, m, G), permutation_module(n, m, G), inc, "incl"),
        ModuleMap(permutation_module(n, m, G), trivial_module(G, m), np.ones((1, n), dtype=np.int64), "Sigma"),
    )


MODULE_KEYS = ("perm", "gamma", "gamma-dual", "ind-trivial", "trivial")


def module_by_key(key: str, n: int, m: int) -> GModule:
    if key == "perm":
        return permutation_module(n, m)
    if key == "gamma":
        return standard_module(n, m)
    if key == "gamma-dual":
        return dual_standard_module(n, m)
    if key == "ind-trivial":
        return induced_trivial_module(n, m).module
    if key == "trivial":
        return trivial_module(symmetric_group(n), m)
    raise ValueError(f"unknown module key {key!r}; choose from {', '.join(MODULE_KEYS)}")
