"""Cohomology of subgroups of S_n with coefficients in finite modules.

Cochains are normalized inhomogeneous cochains stored densely: a k-cochain is
an integer array of shape ``(|G|,) * k + (r,)`` indexed by positions in
``group.elements``; entries with an identity argument are zero.  The
differential is

    (df)(g_1..g_{k+1}) = g_1 f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                         + (-1)^{k+1} f(g_1..g_k),

so 1-cocycles satisfy ``c(gh) = g.c(h) + c(g)``.

The bar engine never materializes the full differential.  Fix a generating
set S and a breadth-first spanning tree of the Cayley graph.  A cocycle is
determined by its values on tuples whose last entry lies in S (call these the
parameters), because the cocycle identity at ``(g.., h, s)`` expresses
``f(g.., hs)`` through ``f(g.., h)`` and parameter values.  The extension map
E from parameters to cochains follows the tree; E(x) is a cocycle iff dE(x)
vanishes on tuples ``(.., h, s)`` whose last edge ``h -> hs`` is not a tree
edge.  Those rows are compressed over Z/p^a and the kernel is read off a
local Smith form; coboundaries are computed directly in parameter
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .exactlin import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    integer_kernel,
    smith_normal_form,
    crt_decompose,
    factorize,
    hom_kernel,
    homology_mod,
    solve_mod,
)
from .gmodule import GModule, ModuleMap, ModuleSES, trivial_module
from .kernels import howell_rows, local_snf
from .symgroup import (
    Perm,
    SubgroupTable,
    double_cosets,
    symmetric_group,
    sylow_subgroup,
)

__all__ = [
    "BudgetExceeded",
    "RelationViolation",
    "Cocycle",
    "CohomologyGroup",
    "InducedMap",
    "DEFAULT_BUDGET",
    "coboundary",
    "h_k_bar",
    "h_k_cyclic",
    "h_k",
    "restriction",
    "corestriction",
    "conjugate_cocycle",
    "stable_elements",
    "connecting_map",
    "extend_coxeter_cocycle",
    "is_coboundary",
    "induced_map_h",
    "schur_multiplier",
    "right_transversal",
    "order_formula_h1",
    "quotient_by_classes",
    "span_order",
    "h1_integral",
]

DEFAULT_BUDGET = 20_000_000
MAX_GROUP_ORDER = 720
MAX_DEGREE = 3


class BudgetExceeded(RuntimeError):
    """The requested computation is larger than the configured budget."""


class RelationViolation(ValueError):
    """A generator assignment violates a defining relation."""

    def __init__(self, failed: Sequence[str]):
        self.failed = tuple(failed)
        self.relation = self.failed[0]
        super().__init__("assignment violates " + ", ".join(self.failed))


def _reduce(x: np.ndarray, m: int) -> np.ndarray:
    return x % m if m else x


def coboundary(module: GModule, values: np.ndarray) -> np.ndarray:
    """d of a k-cochain (k = values.ndim - 1) as a (k+1)-cochain."""
    k = values.ndim - 1
    act = module.actions
    out = np.einsum("aij,...j->a...i", act, values)
    if k:
        mul = module.group.mul_table
        for i in range(1, k + 1):
            out = out + (-1) ** i * np.take(values, mul, axis=i - 1)
    last = np.broadcast_to(values[..., np.newaxis, :], values.shape[:-1] + (act.shape[0], values.shape[-1]))
    out = out + (-1) ** (k + 1) * last
    return _reduce(out, module.modulus)


@dataclass(frozen=True, eq=False)
class Cocycle:
    module: GModule
    degree: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.int64)
        want = (self.module.group.order,) * self.degree + (self.module.rank,)
        if v.shape != want:
            raise ValueError(f"cochain has shape {v.shape}, expected {want}")
        object.__setattr__(self, "values", _reduce(v, self.module.modulus))

    @classmethod
    def zero(cls, module: GModule, k: int) -> Cocycle:
        return cls(module, k, np.zeros((module.group.order,) * k + (module.rank,), dtype=np.int64))

    @property
    def group(self) -> SubgroupTable:
        return self.module.group

    def __call__(self, *gs: Perm) -> np.ndarray:
        return self.values[tuple(self.group.index(g) for g in gs)]

    def is_normalized(self) -> bool:
        return all(not np.take(self.values, 0, axis=i).any() for i in range(self.degree))

    def is_cocycle(self) -> bool:
        return self.is_normalized() and not coboundary(self.module, self.values).any()

    def __add__(self, other: Cocycle) -> Cocycle:
        return Cocycle(self.module, self.degree, self.values + other.values)

    def __sub__(self, other: Cocycle) -> Cocycle:
        return Cocycle(self.module, self.degree, self.values - other.values)

    def __rmul__(self, k: int) -> Cocycle:
        return Cocycle(self.module, self.degree, int(k) * self.values)

    def push(self, f: ModuleMap) -> Cocycle:
        """Apply a module map pointwise (the induced map on cochains)."""
        return Cocycle(f.target, self.degree, np.einsum("ij,...j->...i", f.matrix, self.values))


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    structure: FinAbGroup
    degree: int
    module: GModule
    representatives: tuple[Cocycle, ...]
    method: str
    _coords: Callable[[Cocycle], tuple[int, ...]] | None = field(default=None, repr=False)

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.structure.invariants

    @property
    def order(self) -> int:
        return self.structure.order

    def coordinates(self, c: Cocycle) -> tuple[int, ...]:
        """Coordinates of the class of c in terms of the representatives."""
        if self._coords is None:
            raise NotImplementedError(f"no class coordinates for method {self.method!r}")
        if c.degree != self.degree or c.group.elements != self.module.group.elements:
            raise ValueError("cocycle does not live on this group/degree")
        return self._coords(c)

    def is_zero_class(self, c: Cocycle) -> bool:
        return not any(self.coordinates(c))


# -- bar engine ---------------------------------------------------------------


def _spanning_tree(mul: np.ndarray, gens: Sequence[int]) -> tuple[list[int], np.ndarray, np.ndarray]:
    N = mul.shape[0]
    parent = np.full(N, -1, dtype=np.int64)
    via = np.full(N, -1, dtype=np.int64)
    parent[0] = 0
    order = [0]
    for si, s in enumerate(gens):
        parent[s], via[s] = 0, si
        order.append(s)
    head = 1
    while head < len(order):
        h = order[head]
        head += 1
        for si, s in enumerate(gens):
            x = int(mul[h, s])
            if parent[x] < 0:
                parent[x], via[x] = h, si
                order.append(x)
    if len(order) != N:
        raise ValueError("generators do not generate the group")
    return order, parent, via


class _BarSystem:
    """Parameters, extension and coboundaries for one group, module, degree and prime power."""

    def __init__(self, module: GModule, k: int, p: int, a: int):
        G = module.group
        self.module, self.k, self.p, self.a = module, k, p, a
        self.q = q = p**a
        self.N = N = G.order
        self.r = module.rank
        self.mul = G.mul_table if N > 1 else np.zeros((1, 1), dtype=np.int64)
        self.act = module.actions % q
        gens = sorted({int(i) for i in G.generator_indices if i != 0})
        self.S = gens
        self.order, self.parent, self.via = _spanning_tree(self.mul, gens)
        self.n_prefix = (N - 1) ** (k - 1) if k >= 1 else 1
        self.P = self.n_prefix * len(gens) * self.r if k >= 1 else self.r

    # tuples here are tuples of element indices
    def unit_offset(self, t: tuple[int, ...]) -> int | None:
        """Column offset of the parameter tuple t (last entry a generator index into S)."""
        *prefix, si = t
        idx = 0
        for x in prefix:
            if x == 0:
                return None
            idx = idx * (self.N - 1) + (x - 1)
        return (idx * len(self.S) + si) * self.r

    def _param(self, elems: tuple[int, ...], si: int) -> int | None:
        return self.unit_offset(elems + (si,))

    def extension_block(self, prefix: tuple[int, ...]) -> np.ndarray:
        """E restricted to tuples starting with `prefix` (length k-1): shape (N, r, P)."""
        k, r, q = self.k, self.r, self.q
        E = np.zeros((self.N, r, self.P), dtype=np.int64)
        eye = np.eye(r, dtype=np.int64)
        for si, s in enumerate(self.S):
            off = self._param(prefix, si)
            if off is not None:
                E[s, :, off:off + r] = eye
        sgn = (-1) ** (k + 1)
        for x in self.order[1 + len(self.S):]:
            h, si = int(self.parent[x]), int(self.via[x])
            row = E[h].copy()
            self._add_parameter_terms(row, prefix + (h,), si, sgn)
            E[x] = row % q
        return E

    def _add_parameter_terms(self, row: np.ndarray, elems: tuple[int, ...], si: int, sgn: int) -> None:
        """row += sgn * (first-term + merge terms) of d at (elems.., s), restricted to parameters.

        `elems` has length k; the full tuple is elems + (s,).  Merges are taken
        among the first k entries so that s stays last.
        """
        r = self.r
        off = self._param(elems[1:], si)
        if off is not None:
            row[:, off:off + r] += sgn * self.act[elems[0]]
        for i in range(1, len(elems)):
            merged = elems[:i - 1] + (int(self.mul[elems[i - 1], elems[i]]),) + elems[i + 1:]
            off = self._param(merged, si)
            if off is not None:
                row[:, off:off + r] += sgn * (-1) ** i * np.eye(r, dtype=np.int64)

    def is_tree_edge(self, h: int, si: int) -> bool:
        x = int(self.mul[h, self.S[si]])
        return x != 0 and self.parent[x] == h and self.via[x] == si

    def prefixes(self):
        return product(range(1, self.N), repeat=self.k - 1)

    def constraint_blocks(self):
        k, q = self.k, self.q
        if k == 0:
            rows = [self.act[s] - np.eye(self.r, dtype=np.int64) for s in self.S]
            if rows:
                yield np.vstack(rows) % q
            return
        for prefix in self.prefixes():
            E = self.extension_block(prefix)
            rows = []
            for x in range(1, self.N):
                for si, s in enumerate(self.S):
                    if self.is_tree_edge(x, si):
                        continue
                    row = np.zeros((self.r, self.P), dtype=np.int64)
                    self._add_parameter_terms(row, prefix + (x,), si, 1)
                    row += (-1) ** k * E[int(self.mul[x, s])] + (-1) ** (k + 1) * E[x]
                    rows.append(row % q)
            if rows:
                yield np.vstack(rows)

    def coboundary_matrix(self) -> np.ndarray:
        """Columns: d of the normalized (k-1)-cochain basis, in parameter coordinates."""
        k, r, N = self.k, self.r, self.N
        ncols = (N - 1) ** (k - 1) * r
        D = np.zeros((self.P, ncols), dtype=np.int64)

        def col(t: tuple[int, ...]) -> int | None:
            idx = 0
            for x in t:
                if x == 0:
                    return None
                idx = idx * (N - 1) + (x - 1)
            return idx * r

        eye = np.eye(r, dtype=np.int64)
        for prefix in self.prefixes():
            for si, s in enumerate(self.S):
                row = self._param(prefix, si)
                tau = prefix + (s,)
                c = col(tau[1:])
                if c is not None:
                    D[row:row + r, c:c + r] += self.act[tau[0]]
                for i in range(1, k):
                    merged = tau[:i - 1] + (int(self.mul[tau[i - 1], tau[i]]),) + tau[i + 1:]
                    c = col(merged)
                    if c is not None:
                        D[row:row + r, c:c + r] += (-1) ** i * eye
                c = col(tau[:-1])
                if c is not None:
                    D[row:row + r, c:c + r] += (-1) ** k * eye
        return D % self.q

    def parameters_of(self, values: np.ndarray) -> np.ndarray:
        """Restrict a cochain (reduced mod q) to the parameter coordinates."""
        if self.k == 0:
            return values % self.q
        nonid = np.arange(1, self.N)
        grids = np.ix_(*([nonid] * (self.k - 1) + [np.array(self.S, dtype=np.int64)]))
        return values[grids].reshape(-1) % self.q

    def extend(self, params: np.ndarray) -> np.ndarray:
        """Numeric extension of a parameter vector to a full normalized cochain."""
        k, r, N = self.k, self.r, self.N
        if k == 0:
            return params % self.q
        f = np.zeros((N,) * k + (r,), dtype=np.int64)
        nonid = np.arange(1, N)
        grids = np.ix_(*([nonid] * (k - 1) + [np.array(self.S, dtype=np.int64)] + [np.arange(r)]))
        f[grids] = params.reshape((N - 1,) * (k - 1) + (len(self.S), r))
        act, mul, q = self.act, self.mul, self.q
        sgn = (-1) ** (k + 1)
        for x in self.order[1 + len(self.S):]:
            h, s = int(self.parent[x]), self.S[int(self.via[x])]
            if k == 1:
                f[x] = (act[h] @ f[s] + f[h]) % q
                continue
            F_hs = f[(slice(None),) * (k - 2) + (h, s)]
            acc = np.einsum("aij,...j->a...i", act, F_hs)
            for i in range(1, k - 1):
                acc = acc + (-1) ** i * np.take(F_hs, mul, axis=i - 1)
            F_s = f[(slice(None),) * (k - 1) + (s,)]
            acc = acc + (-1) ** (k - 1) * np.take(F_s, mul[:, h], axis=k - 2)
            f[(slice(None),) * (k - 1) + (x,)] = (f[(slice(None),) * (k - 1) + (h,)] + sgn * acc) % q
        for i in range(k - 1):
            idx = [slice(None)] * (k + 1)
            idx[i] = 0
            f[tuple(idx)] = 0
        return f


def _compressed_rows(system: _BarSystem, chunk_rows: int) -> np.ndarray:
    basis = np.zeros((0, system.P), dtype=np.int64)
    pending: list[np.ndarray] = []
    count = 0
    for block in system.constraint_blocks():
        pending.append(block)
        count += block.shape[0]
        if count >= chunk_rows:
            basis = howell_rows(np.vstack([basis] + pending), system.p, system.a)
            pending, count = [], 0
    if pending:
        basis = howell_rows(np.vstack([basis] + pending), system.p, system.a)
    return basis


@dataclass
class _PrimaryPart:
    orders: list[int]
    reps: list[np.ndarray]  # full cochains mod q
    coords: Callable[[np.ndarray], list[int]]


def _bar_primary(module: GModule, k: int, p: int, a: int) -> _PrimaryPart:
    system = _BarSystem(module, k, p, a)
    q, P = system.q, system.P
    if k >= 1 and not system.S:
        return _PrimaryPart([], [], lambda v: [])
    if P * q * q >= 2**62:
        raise BudgetExceeded("modulus too large for 64-bit accumulation")
    H = _compressed_rows(system, chunk_rows=max(4 * P, 2048))
    if H.shape[0]:
        vals, _, _, V, Vi = local_snf(H, p, a, right=True)
    else:
        vals, V, Vi = [], np.eye(P, dtype=np.int64), np.eye(P, dtype=np.int64)
    vals = list(vals) + [a] * (P - len(vals))
    keep = [t for t in range(P) if vals[t] >= 1]
    kappa = [(p ** (a - vals[t]) * V[:, t]) % q for t in keep]
    shifts = np.array([p ** (a - vals[t]) for t in keep], dtype=np.int64)
    kmods = np.array([p ** vals[t] for t in keep], dtype=np.int64)
    drop = [t for t in range(P) if vals[t] == 0]

    def kernel_coords(x: np.ndarray) -> np.ndarray:
        y = (Vi @ (x % q)) % q
        if drop and y[drop].any():
            raise ValueError("not a cocycle")
        yk = y[keep]
        if (yk % shifts).any():
            raise ValueError("not a cocycle")
        return (yk // shifts) % kmods

    T = len(keep)
    if T == 0:
        return _PrimaryPart([], [], lambda v: [])
    if k >= 1:
        D = system.coboundary_matrix()
        Z = np.stack([kernel_coords(D[:, j]) for j in range(D.shape[1])], axis=1) if D.shape[1] else np.zeros((T, 0), dtype=np.int64)
    else:
        Z = np.zeros((T, 0), dtype=np.int64)
    rel = np.hstack([Z, np.diag(kmods)])
    fvals, U, Ui, _, _ = local_snf(rel, p, a, left=True)
    fvals = list(fvals) + [a] * (T - len(fvals))
    out_idx = [i for i in range(T) if fvals[i] >= 1]
    orders = [p ** fvals[i] for i in out_idx]
    K = np.stack(kappa, axis=1)
    reps = []
    for i in out_idx:
        eps = (K @ Ui[:, i]) % q
        reps.append(system.extend(eps))

    def coords(values: np.ndarray) -> list[int]:
        z = kernel_coords(system.parameters_of(values))
        w = (U @ z) % q
        return [int(w[i] % o) for i, o in zip(out_idx, orders)]

    return _PrimaryPart(orders, reps, coords)


def _check_budget(module: GModule, k: int, budget: int) -> None:
    N = module.group.order
    if k > MAX_DEGREE or k < 0:
        raise BudgetExceeded(f"degree {k} outside 0..{MAX_DEGREE}")
    if N > MAX_GROUP_ORDER:
        raise BudgetExceeded(f"group order {N} exceeds {MAX_GROUP_ORDER}")
    if N ** (k + 1) * module.rank > budget:
        raise BudgetExceeded(f"|G|^(k+1)*rank = {N ** (k + 1) * module.rank} exceeds budget {budget}")


def _assemble(module: GModule, k: int, parts: dict[int, tuple[int, _PrimaryPart]], method: str) -> CohomologyGroup:
    """Recombine prime-power parts via CRT."""
    m = module.modulus
    idem = {}
    for q in parts:
        other = m // q
        idem[q] = other * pow(other, -1, q) % m if other > 1 else 1
    per_prime = []
    for q, (p, part) in parts.items():
        ordered = sorted(range(len(part.orders)), key=lambda i: -part.orders[i])
        per_prime.append((q, part, ordered))
    length = max((len(o) for _, _, o in per_prime), default=0)
    invariants, reps = [], []
    for j in range(length):
        order, vals = 1, np.zeros((module.group.order,) * k + (module.rank,), dtype=np.int64)
        for q, part, ordered in per_prime:
            if j < len(ordered):
                i = ordered[j]
                order *= part.orders[i]
                vals = vals + idem[q] * part.reps[i]
        invariants.append(order)
        reps.append(Cocycle(module, k, vals % m))

    def coords(c: Cocycle) -> tuple[int, ...]:
        out = [0] * length
        for q, part, ordered in per_prime:
            local = part.coords(c.values % q)
            for j, i in enumerate(ordered):
                out[j] += idem[q] * local[i]
        return tuple(x % o for x, o in zip(out, invariants))

    # invariants are in decreasing divisibility order; FinAbGroup wants increasing
    perm = list(range(length))[::-1]
    inv = tuple(invariants[i] for i in perm)
    rep_t = tuple(reps[i] for i in perm)
    return CohomologyGroup(
        FinAbGroup(inv),
        k,
        module,
        rep_t,
        method,
        lambda c: tuple(coords(c)[i] for i in perm),
    )


def h_k_bar(module: GModule, k: int, budget: int = DEFAULT_BUDGET) -> CohomologyGroup:
    """H^k(G, M) for finite M via the normalized bar resolution."""
    m = module.modulus
    if m < 2:
        raise ValueError("bar engine needs finite coefficients (modulus >= 2)")
    _check_budget(module, k, budget)
    parts = {}
    for q in crt_decompose(m):
        (p, a), = factorize(q).items()
        parts[q] = (p, _bar_primary(module.reduce(q) if q != m else module, k, p, a))
    return _assemble(module, k, parts, "bar")


# -- cyclic groups -----------------------------------------------------------


def h_k_cyclic(module: GModule, k: int) -> CohomologyGroup:
    """H^k of a cyclic group from the 2-periodic resolution (independent of the bar engine)."""
    G, m, r = module.group, module.modulus, module.rank
    if m < 2:
        raise ValueError("finite coefficients required")
    gen = G.cyclic_generator()
    n = G.order
    powers = [Perm.identity(G.n)]
    for _ in range(n - 1):
        powers.append(powers[-1] * gen)
    t = module.action(gen)
    eye = np.eye(r, dtype=np.int64)
    norm = sum(module.action(x) for x in powers) % m
    tm1 = (t - eye) % m

    def im(A: np.ndarray) -> IntMatrix:
        return IntMatrix.from_rows(A.tolist(), r)

    if k == 0:
        lq = homology_mod(im(tm1), None, m)
    elif k % 2:
        lq = homology_mod(im(norm), im(tm1), m)
    else:
        lq = homology_mod(im(tm1), im(norm), m)
    exp = {G.index(x): i for i, x in enumerate(powers)}
    reps: list[Cocycle] = []
    coords = None
    if k == 0:
        reps = [Cocycle(module, 0, np.array(g)) for g in lq.generators]
        coords = lambda c: lq.coordinates([int(v) for v in c.values])  # noqa: E731
    elif k == 1:
        partial = [np.zeros((r, r), dtype=np.int64)]
        for i in range(1, n):
            partial.append(partial[-1] + module.action(powers[i - 1]))
        for g in lq.generators:
            vals = np.zeros((n, r), dtype=np.int64)
            for idx, i in exp.items():
                vals[idx] = partial[i] @ np.array(g)
            reps.append(Cocycle(module, 1, vals))
        gidx = G.index(gen)
        coords = lambda c: lq.coordinates([int(v) for v in c.values[gidx]])  # noqa: E731
    elif k == 2:
        for g in lq.generators:
            vals = np.zeros((n, n, r), dtype=np.int64)
            for ia, i in exp.items():
                for ib, j in exp.items():
                    if i + j >= n:
                        vals[ia, ib] = g
            reps.append(Cocycle(module, 2, vals))
        gidx = G.index(gen)

        def coords(c: Cocycle) -> tuple[int, ...]:
            x = sum(c.values[G.index(powers[i]), gidx] for i in range(n)) % m
            return lq.coordinates([int(v) for v in x])

    return CohomologyGroup(lq.group, k, module, tuple(reps), "cyclic", coords)


# -- restriction, corestriction, conjugation --------------------------------


def restriction(c: Cocycle, H: SubgroupTable) -> Cocycle:
    G = c.group
    idx = np.array([G.index(h) for h in H.elements], dtype=np.int64)
    vals = c.values[np.ix_(*([idx] * c.degree))] if c.degree else c.values
    return Cocycle(c.module.restrict(H), c.degree, vals)


def right_transversal(H: SubgroupTable, G: SubgroupTable) -> list[Perm]:
    """First-met representative of each right coset H x in G; the identity comes first."""
    seen: set[Perm] = set()
    reps = []
    for g in G.elements:
        if g not in seen:
            reps.append(g)
            seen.update(h * g for h in H.elements)
    return reps


def corestriction(c: Cocycle, G: SubgroupTable) -> Cocycle:
    """Transfer of a cocycle on H <= G (module restricted from G) to G.

    With x = rho(x) t(x), t(x) in the right transversal T:
    (cor f)(g_1..g_k) = sum_t t^-1 . f(y_1, y_1^-1 y_2, ..., y_{k-1}^-1 y_k),
    y_i = rho(t g_1 .. g_i).
    """
    H = c.group
    T = right_transversal(H, G)
    tset = set(T)
    M = GModule(G, c.module.rank, c.module.modulus, c.module.matrix_fn, c.module.name)
    rho: dict[Perm, Perm] = {}
    for t in T:
        for h in H.elements:
            rho[h * t] = h
    assert len(rho) == G.order and tset
    k = c.degree
    out = np.zeros((G.order,) * k + (M.rank,), dtype=np.int64)
    tinv = [(t, M.action(t.inverse())) for t in T]
    for gidx in product(range(G.order), repeat=k):
        gs = [G.elements[i] for i in gidx]
        total = np.zeros(M.rank, dtype=np.int64)
        for t, A in tinv:
            x = t
            ys = []
            for g in gs:
                x = x * g
                ys.append(rho[x])
            prev = Perm.identity(G.n)
            args = []
            for y in ys:
                args.append(H.index(prev.inverse() * y))
                prev = y
            total = total + A @ c.values[tuple(args)]
        out[gidx] = total
    return Cocycle(M, k, out)


def conjugate_cocycle(c: Cocycle, g: Perm, target: SubgroupTable) -> Cocycle:
    """(c_g f)(x_1..x_k) = g . f(g^-1 x_1 g, ...) on target = g H g^-1."""
    H = c.group
    gi = g.inverse()
    idx = np.array([H.index(gi * x * g) for x in target.elements], dtype=np.int64)
    vals = c.values[np.ix_(*([idx] * c.degree))] if c.degree else c.values
    A = c.module.matrix_fn(g)
    M = GModule(target, c.module.rank, c.module.modulus, c.module.matrix_fn, c.module.name)
    return Cocycle(M, c.degree, np.einsum("ij,...j->...i", A, vals))


# -- stable elements ---------------------------------------------------------


def _p_part_modulus(m: int, p: int) -> int:
    q = 1
    while m % (q * p) == 0:
        q *= p
    return q


def stable_elements(module: GModule, p: int, k: int, budget: int = DEFAULT_BUDGET) -> CohomologyGroup:
    """p-primary part of H^k(S_n, M) as the stable classes in H^k(Sylow_p, M).

    Representatives are cocycles on the Sylow subgroup.
    """
    G = module.group
    n = G.n
    if G.order != symmetric_group(n).order:
        raise ValueError("stable elements are implemented for the full symmetric group")
    q = _p_part_modulus(module.modulus, p)
    if q == 1:
        return CohomologyGroup(FinAbGroup(), k, module, (), "stable-elements")
    Mq = module.reduce(q)
    if k == 0:
        H0 = h_k_bar(Mq, 0, budget)
        return CohomologyGroup(H0.structure, 0, Mq, H0.representatives, "stable-elements", H0._coords)
    if G.order % p:
        return CohomologyGroup(FinAbGroup(), k, Mq, (), "stable-elements")
    P = sylow_subgroup(n, p)
    MP = Mq.restrict(P)
    HP = h_k_bar(MP, k, budget)
    if HP.order == 1:
        return CohomologyGroup(FinAbGroup(), k, MP, (), "stable-elements")
    columns: list[list[int]] = [[] for _ in HP.representatives]
    targets: list[int] = []
    for g in double_cosets(P, P):
        if g in P:
            continue
        Pg = P.conjugate(g)
        Q = P.intersection(Pg)
        if Q.order == 1:
            continue
        HQ = h_k_bar(Mq.restrict(Q), k, budget)
        if HQ.order == 1:
            continue
        targets.extend(HQ.invariants)
        for j, alpha in enumerate(HP.representatives):
            diff = restriction(alpha, Q) - restriction(conjugate_cocycle(alpha, g, Pg), Q)
            columns[j].extend(HQ.coordinates(diff))
    src = list(HP.invariants)
    matrix = [[columns[j][i] for j in range(len(src))] for i in range(len(targets))]
    lq = hom_kernel(matrix, src, targets)
    reps = []
    for gen in lq.generators:
        total = Cocycle.zero(MP, k)
        for coeff, alpha in zip(gen, HP.representatives):
            total = total + int(coeff) * alpha
        reps.append(total)
    return CohomologyGroup(lq.group, k, MP, tuple(reps), "stable-elements")


def h_k(module: GModule, k: int, method: str = "bar", budget: int = DEFAULT_BUDGET) -> CohomologyGroup:
    """Dispatch on method: 'bar', 'cyclic' or 'stable' (all primes assembled)."""
    if method == "bar":
        return h_k_bar(module, k, budget)
    if method == "cyclic":
        return h_k_cyclic(module, k)
    if method in ("stable", "stable-elements"):
        orders: list[int] = []
        for p in factorize(module.modulus):
            orders.extend(stable_elements(module, p, k, budget).structure.elementary_divisors())
        return CohomologyGroup(FinAbGroup.from_cyclic_orders(orders), k, module, (), "stable-elements")
    raise ValueError(f"unknown method {method!r}")


# -- coboundaries, connecting maps, induced maps -----------------------------


def _cochain_param_rows(module: GModule, k: int) -> tuple[np.ndarray, _BarSystem]:
    system = _BarSystem(module, k, module.modulus, 1)
    system.q = module.modulus
    system.act = module.actions % module.modulus
    return system.coboundary_matrix(), system


def is_coboundary(c: Cocycle) -> Cocycle | None:
    """A (k-1)-cochain b with db = c, or None.  Degree 0 classes are never coboundaries unless zero."""
    M, k = c.module, c.degree
    if k == 0:
        return Cocycle.zero(M, 0) if not c.values.any() else None
    D, system = _cochain_param_rows(M, k)
    target = system.parameters_of(c.values)
    x = solve_mod(IntMatrix.from_rows(D.tolist(), D.shape[1]), [int(v) for v in target], M.modulus)
    if x is None:
        return None
    N, r = M.group.order, M.rank
    b = np.zeros((N,) * (k - 1) + (r,), dtype=np.int64)
    if k == 1:
        b[:] = x
    else:
        nonid = np.arange(1, N)
        grids = np.ix_(*([nonid] * (k - 1) + [np.arange(r)]))
        b[grids] = np.array(x, dtype=np.int64).reshape((N - 1,) * (k - 1) + (r,))
    witness = Cocycle(M, k - 1, b)
    if not np.array_equal(coboundary(M, witness.values), c.values):
        return None
    return witness


def _least_preimages(proj: ModuleMap) -> Callable[[tuple[int, ...]], np.ndarray]:
    """Lexicographically least preimage under a surjective map of finite modules."""
    m = proj.target.modulus
    src = proj.source.rank
    table: dict[tuple[int, ...], np.ndarray] = {}
    if m**src > 2_000_000:
        raise BudgetExceeded("section table too large")
    for u in product(range(m), repeat=src):
        v = tuple(int(x) for x in proj(u))
        if v not in table:
            table[v] = np.array(u, dtype=np.int64)
    return lambda v: table[v]


def connecting_map(ses: ModuleSES, c: Cocycle) -> Cocycle:
    """Snake-lemma boundary H^k(G, quot) -> H^{k+1}(G, sub) at cochain level."""
    if c.module.rank != ses.quot.rank:
        raise ValueError("cocycle does not live in the quotient module")
    section = _least_preimages(ses.proj)
    k = c.degree
    flat = c.values.reshape(-1, c.module.rank)
    lifted = np.stack([section(tuple(int(x) for x in v)) for v in flat]).reshape(c.values.shape[:-1] + (ses.mid.rank,))
    db = coboundary(ses.mid, lifted)
    m = ses.sub.modulus
    inc = IntMatrix.from_rows(ses.inc.matrix.tolist(), ses.sub.rank)
    cache: dict[tuple[int, ...], tuple[int, ...]] = {}
    flat = db.reshape(-1, ses.mid.rank)
    out = np.zeros((flat.shape[0], ses.sub.rank), dtype=np.int64)
    for i, v in enumerate(flat):
        key = tuple(int(x) for x in v)
        if key not in cache:
            sol = solve_mod(inc, key, m)
            if sol is None:
                raise ArithmeticError("boundary does not land in the submodule")
            cache[key] = sol
        out[i] = cache[key]
    return Cocycle(ses.sub, k + 1, out.reshape(db.shape[:-1] + (ses.sub.rank,)))


@dataclass(frozen=True, eq=False)
class InducedMap:
    source: CohomologyGroup
    target: CohomologyGroup
    matrix: tuple[tuple[int, ...], ...]  # target coords x source generators

    def kernel(self) -> FinAbGroup:
        return hom_kernel(self.matrix, self.source.invariants, self.target.invariants).group

    def image_order(self) -> int:
        return self.source.order // self.kernel().order

    def is_zero(self) -> bool:
        return all(x % o == 0 for row, o in zip(self.matrix, self.target.invariants) for x in row)

    def is_injective(self) -> bool:
        return self.kernel().order == 1

    def is_surjective(self) -> bool:
        return self.image_order() == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def induced_map_h(f: ModuleMap, k: int, source: CohomologyGroup | None = None,
                  target: CohomologyGroup | None = None, budget: int = DEFAULT_BUDGET) -> InducedMap:
    if not f.is_equivariant():
        raise ValueError("map is not equivariant")
    src = source if source is not None else h_k_bar(f.source, k, budget)
    tgt = target if target is not None else h_k_bar(f.target, k, budget)
    cols = [tgt.coordinates(c.push(f)) for c in src.representatives]
    rows = tuple(tuple(col[i] for col in cols) for i in range(len(tgt.invariants)))
    return InducedMap(src, tgt, rows)


def quotient_by_classes(H: CohomologyGroup, classes: Sequence[Cocycle]) -> FinAbGroup:
    """H modulo the subgroup generated by the given classes."""
    rows = [[0] * (len(classes) + len(H.invariants)) for _ in H.invariants]
    for j, c in enumerate(classes):
        for i, x in enumerate(H.coordinates(c)):
            rows[i][j] = x
    for i, d in enumerate(H.invariants):
        rows[i][len(classes) + i] = d
    if not rows:
        return FinAbGroup()
    return cokernel_structure(IntMatrix.from_rows(rows, len(classes) + len(H.invariants)))


def span_order(H: CohomologyGroup, classes: Sequence[Cocycle]) -> int:
    return H.order // quotient_by_classes(H, classes).order


def h1_integral(module: GModule) -> FinAbGroup:
    """H^1(G, M) for a lattice M (modulus 0), by exact integer linear algebra."""
    if module.modulus:
        raise ValueError("use h_k_bar for finite coefficients")
    G, r = module.group, module.rank
    if G.order == 1:
        return FinAbGroup()
    mul = G.mul_table
    gens = sorted({int(i) for i in G.generator_indices if i != 0})
    order, parent, via = _spanning_tree(mul, gens)
    P = len(gens) * r
    act = module.actions
    E = np.zeros((G.order, r, P), dtype=object)
    for si, s in enumerate(gens):
        E[s, :, si * r:(si + 1) * r] = np.eye(r, dtype=np.int64)
    for x in order[1 + len(gens):]:
        h, si = int(parent[x]), int(via[x])
        E[x] = E[h].copy()
        E[x][:, si * r:(si + 1) * r] += act[h]
    rows: list[list[int]] = []
    for x in range(1, G.order):
        for si, s in enumerate(gens):
            y = int(mul[x, s])
            if y != 0 and parent[y] == x and via[y] == si:
                continue
            blk = -E[y] + E[x]
            blk[:, si * r:(si + 1) * r] += act[x]
            rows.extend([[int(v) for v in row] for row in blk])
    Z = integer_kernel(IntMatrix.from_rows(rows, P)) if rows else [tuple(int(i == j) for j in range(P)) for i in range(P)]
    if not Z:
        return FinAbGroup()
    K = IntMatrix.from_rows(list(zip(*Z)), len(Z))
    sf = smith_normal_form(K)
    d = sf.diagonal
    coords = []
    for j in range(r):
        # d of the basis vector e_j of C^0, in parameter coordinates
        b = []
        for s in gens:
            b.extend(int(v) for v in act[s][:, j] - (np.arange(r) == j))
        ub = sf.U.apply(b)
        coords.append(sf.V.apply([ub[i] // d[i] for i in range(len(Z))]))
    C = IntMatrix.from_rows(list(zip(*coords)), len(coords))
    return cokernel_structure(C)


# -- Coxeter extension -------------------------------------------------------


def _coxeter_moore(n: int) -> list[tuple[str, list[int], list[int]]]:
    """Relations as word equalities: involutions, braids, far commutations."""
    rels = [(f"s{i}^2", [i, i], []) for i in range(1, n)]
    rels += [(f"braid({i},{i + 1})", [i, i + 1, i], [i + 1, i, i + 1]) for i in range(1, n - 1)]
    rels += [(f"commute({i},{j})", [i, j], [j, i]) for i in range(1, n) for j in range(i + 2, n)]
    return rels


def extend_coxeter_cocycle(assignment: dict[int, Sequence[int]], module: GModule) -> Cocycle:
    """Extend values on s_i = (i i+1) to a 1-cocycle via c(g s) = c(g) + g.c(s).

    Every defining relation is checked first; RelationViolation lists the failures.
    """
    G = module.group
    n, m, r = G.n, module.modulus, module.rank
    vec = {i: _reduce(np.array(assignment.get(i, [0] * r), dtype=np.int64), m) for i in range(1, n)}

    def along(word: Sequence[int]) -> np.ndarray:
        g = Perm.identity(n)
        val = np.zeros(r, dtype=np.int64)
        for i in word:
            val = _reduce(val + module.action(g) @ vec[i], m)
            g = g * Perm.transposition(i, i + 1, n)
        return val

    failed = [name for name, lhs, rhs in _coxeter_moore(n) if not np.array_equal(along(lhs), along(rhs))]
    if failed:
        raise RelationViolation(failed)
    values = np.zeros((G.order, r), dtype=np.int64)
    seen = {0}
    frontier = [Perm.identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for i in range(1, n):
                h = g * Perm.transposition(i, i + 1, n)
                hi = G.index(h)
                if hi not in seen:
                    seen.add(hi)
                    values[hi] = values[G.index(g)] + module.action(g) @ vec[i]
                    nxt.append(h)
        frontier = nxt
    c = Cocycle(module, 1, values)
    if not c.is_cocycle():
        raise ArithmeticError("extension is not a cocycle although all relators hold")
    return c


# -- Schur multiplier --------------------------------------------------------


def schur_multiplier(n: int, budget: int = DEFAULT_BUDGET) -> FinAbGroup:
    """H_2(S_n, Z) from H^2 and H^1 with coefficients Z/p^a, a = v_p(n!).

    Universal coefficients give ED(H^2) = ED(H_2) + ED(H_1) at each prime once
    p^a kills both homology groups; bar for n <= 4, stable elements for n = 5.
    """
    if not 1 <= n <= 5:
        raise ValueError("Schur multiplier is available for 1 <= n <= 5")
    if n <= 2:
        return FinAbGroup()
    G = symmetric_group(n)
    orders: list[int] = []
    for p, a in factorize(G.order).items():
        M = trivial_module(G, p**a)
        if n <= 4:
            h2 = h_k_bar(M, 2, budget).structure
            h1 = h_k_bar(M, 1, budget).structure
        else:
            h2 = stable_elements(M, p, 2, budget).structure
            h1 = stable_elements(M, p, 1, budget).structure
        ed2 = sorted(h2.elementary_divisors())
        for d in h1.elementary_divisors():
            ed2.remove(d)
        orders.extend(ed2)
    return FinAbGroup.from_cyclic_orders(orders)


def order_formula_h1(n: int, m: int) -> int:
    """|Z/m / n| * |(Z/m)[2][n]|, the predicted order of H^1(S_n, Gamma_n (x) Z/m)."""
    return gcd(n, m) * gcd(gcd(2, m), n)
