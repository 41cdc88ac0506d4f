"""Exact linear algebra over the integers and over Z/m.

Everything here works on Python integers, so nothing can overflow.  The
Smith normal form is the single workhorse: kernels, cokernels, modular
solving and subquotients of lattices are all read off from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "FinAbGroup",
    "LatticeQuotient",
    "smith_normal_form",
    "cokernel_structure",
    "integer_kernel",
    "kernel_mod",
    "solve_mod",
    "crt_decompose",
    "factorize",
    "lattice_quotient",
    "homology_mod",
    "hom_kernel",
    "parse_matrix_text",
    "format_matrix_text",
]

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def column(cls, v: Sequence[int]) -> IntMatrix:
        return cls(len(v), 1, tuple(int(x) for x in v))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(list(zip(*self.to_rows())), self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, bt = self.to_rows(), other.transpose().to_rows()
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a], other.cols
        )

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self.to_rows())

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    """U·A·V = S with U, V unimodular; the inverses are kept for coordinate changes."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    source_shape: tuple[int, int]

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group: Z/d_1 + ... + Z/d_k + Z^free, d_i | d_{i+1}."""

    invariants: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        if any(d < 2 for d in self.invariants):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.invariants, self.invariants[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> FinAbGroup:
        """Normalize a direct sum of cyclic groups (orders 0 count as free, 1 is dropped)."""
        per_prime: dict[int, list[int]] = {}
        for d in orders:
            d = abs(int(d))
            if d == 0:
                free_rank += 1
                continue
            for p, e in factorize(d).items():
                per_prime.setdefault(p, []).append(p**e)
        length = max((len(v) for v in per_prime.values()), default=0)
        inv = [1] * length
        for powers in per_prime.values():
            powers.sort()
            for i, q in enumerate(powers):
                inv[length - len(powers) + i] *= q
        return cls(tuple(d for d in inv if d > 1), free_rank)

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @property
    def order(self) -> int | None:
        """Cardinality, or None when the group is infinite."""
        return None if self.free_rank else prod(self.invariants)

    @property
    def is_trivial(self) -> bool:
        return not self.invariants and not self.free_rank

    def elementary_divisors(self) -> list[int]:
        out: list[int] = []
        for d in self.invariants:
            out.extend(p**e for p, e in factorize(d).items())
        return sorted(out)

    def torsion_count(self, n: int) -> int:
        """Order of the n-torsion subgroup (requires a finite group)."""
        if self.free_rank:
            raise ValueError("infinite group")
        return prod(gcd(d, n) for d in self.invariants)

    def primary_part(self, p: int) -> FinAbGroup:
        return FinAbGroup.from_cyclic_orders(
            q for q in self.elementary_divisors() if q % p == 0
        )

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_cyclic_orders(
            [*self.invariants, *other.invariants], self.free_rank + other.free_rank
        )

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def factorize(m: int) -> dict[int, int]:
    m = abs(m)
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def crt_decompose(m: int) -> list[int]:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return [p**e for p, e in sorted(factorize(m).items())]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smith(rows: list[list[int]], nr: int, nc: int):
    """Core elimination.  Returns (S, U, U_inv, V, V_inv) as nested lists."""
    S = [list(r) for r in rows]
    U, Ui, V, Vi = _identity(nr), _identity(nr), _identity(nc), _identity(nc)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for r in S:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        if q:
            S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        if q:
            for r in S:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, nr):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, nc):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                # a remainder is now smaller than the pivot: move it into place
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, nr) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, nc) if S[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]
    return S, U, Ui, V, Vi


def smith_normal_form(A: IntMatrix) -> SmithForm:
    S, U, Ui, V, Vi = _smith(A.to_rows(), A.rows, A.cols)
    return SmithForm(
        U=IntMatrix.from_rows(U, A.rows),
        S=IntMatrix.from_rows(S, A.cols),
        V=IntMatrix.from_rows(V, A.cols),
        U_inv=IntMatrix.from_rows(Ui, A.rows),
        V_inv=IntMatrix.from_rows(Vi, A.cols),
        source_shape=(A.rows, A.cols),
    )


def cokernel_structure(A: IntMatrix) -> FinAbGroup:
    """Z^rows / image(A)."""
    sf = smith_normal_form(A)
    nonzero = [d for d in sf.diagonal if d]
    return FinAbGroup(tuple(d for d in nonzero if d > 1), A.rows - len(nonzero))


def integer_kernel(A: IntMatrix) -> list[Vector]:
    """A basis of the saturated lattice {x in Z^cols : A x = 0}."""
    sf = smith_normal_form(A)
    cols = sf.V.transpose().to_rows()
    return [tuple(c) for c in cols[sf.rank:]]


def kernel_mod(A: IntMatrix, m: int) -> tuple[list[Vector], FinAbGroup]:
    """Generators of {x : A x = 0 mod m}, one per cyclic summand, and the structure."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    sf = smith_normal_form(A)
    diag = sf.diagonal
    vcols = sf.V.transpose().to_rows()
    gens: list[Vector] = []
    orders: list[int] = []
    for i in range(A.cols):
        d = diag[i] if i < len(diag) else 0
        g = gcd(d, m)
        if g == 1:
            continue
        scale = m // g
        gens.append(tuple((scale * x) % m for x in vcols[i]))
        orders.append(g)
    return gens, FinAbGroup.from_cyclic_orders(orders)


def solve_mod(A: IntMatrix, b: Sequence[int], m: int) -> Vector | None:
    """One x with A x = b mod m, or None when the system is inconsistent."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    if m < 1:
        raise ValueError("modulus must be positive")
    sf = smith_normal_form(A)
    bp = [x % m for x in sf.U.apply(b)]
    diag = sf.diagonal
    y = [0] * A.cols
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        g = gcd(d, m)
        if bp[i] % g:
            return None
        if d % m == 0:
            continue
        mm = m // g
        y[i] = (bp[i] // g) * pow(d // g, -1, mm) % mm if mm > 1 else 0
    return tuple(x % m for x in sf.V.apply(y))


@dataclass(frozen=True)
class LatticeQuotient:
    """L / N for lattices N <= L in Z^s with N of full rank, with explicit generators."""

    group: FinAbGroup
    generators: tuple[Vector, ...]
    _basis_U: IntMatrix = field(repr=False)
    _basis_d: tuple[int, ...] = field(repr=False)
    _coord_U: IntMatrix = field(repr=False)
    _coord_mods: tuple[int, ...] = field(repr=False)
    _coord_keep: tuple[int, ...] = field(repr=False)

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of x in L with respect to `generators`, reduced mod the invariants."""
        ux = self._basis_U.apply(x)
        z = []
        for v, d in zip(ux, self._basis_d):
            if v % d:
                raise ValueError("vector is not in the lattice")
            z.append(v // d)
        w = self._coord_U.apply(z)
        return tuple(w[i] % self._coord_mods[i] for i in self._coord_keep)


def lattice_quotient(L_gens: Sequence[Sequence[int]], N_gens: Sequence[Sequence[int]], dim: int) -> LatticeQuotient:
    if not L_gens:
        raise ValueError("L must have full rank")
    Lm = IntMatrix.from_rows(list(zip(*L_gens)), len(L_gens))
    sf = smith_normal_form(Lm)
    d = sf.diagonal[:dim]
    if len(d) < dim or any(x == 0 for x in d):
        raise ValueError("L must have full rank")
    # basis of L: columns of U_inv scaled by d
    Ui_cols = sf.U_inv.transpose().to_rows()
    basis = [[c * di for c in col] for col, di in zip(Ui_cols, d)]
    coords = []
    for v in N_gens:
        uv = sf.U.apply(v)
        if any(a % di for a, di in zip(uv, d)):
            raise ValueError("N is not contained in L")
        coords.append([a // di for a, di in zip(uv, d)])
    C = IntMatrix.from_rows(list(zip(*coords)), len(coords)) if coords else IntMatrix.zeros(dim, 0)
    sf2 = smith_normal_form(C)
    d2 = sf2.diagonal + [0] * (dim - len(sf2.diagonal))
    if any(x == 0 for x in d2[:dim]):
        raise ValueError("N must have full rank")
    keep = tuple(i for i in range(dim) if d2[i] > 1)
    U2i_cols = sf2.U_inv.transpose().to_rows()
    gens = []
    for i in keep:
        col = U2i_cols[i]
        gens.append(tuple(sum(b[k] * col[j] for j, b in enumerate(basis)) for k in range(dim)))
    return LatticeQuotient(
        group=FinAbGroup(tuple(d2[i] for i in keep)),
        generators=tuple(gens),
        _basis_U=sf.U,
        _basis_d=tuple(d),
        _coord_U=sf2.U,
        _coord_mods=tuple(d2),
        _coord_keep=keep,
    )


def homology_mod(B: IntMatrix, A: IntMatrix | None, m: int) -> LatticeQuotient:
    """ker(B) / im(A) over Z/m, computed on the integer lift with m·I appended.

    Elements are integer vectors of length B.cols; generators are reduced mod m.
    """
    c = B.cols
    mI = [[m * int(i == j) for j in range(c)] for i in range(c)]
    lifted = IntMatrix.from_rows(
        [list(r) + [-m * int(i == j) for j in range(B.rows)] for i, r in enumerate(B.to_rows())],
        c + B.rows,
    )
    L = [v[:c] for v in integer_kernel(lifted)] + mI
    N = ([list(col) for col in A.transpose().to_rows()] if A is not None else []) + mI
    q = lattice_quotient(L, N, c)
    return LatticeQuotient(
        q.group,
        tuple(tuple(x % m for x in g) for g in q.generators),
        q._basis_U, q._basis_d, q._coord_U, q._coord_mods, q._coord_keep,
    )


def hom_kernel(matrix: Sequence[Sequence[int]], src: Sequence[int], tgt: Sequence[int]) -> LatticeQuotient:
    """Kernel of a homomorphism (+Z/src_i) -> (+Z/tgt_j) given by an integer matrix."""
    s, t = len(src), len(tgt)
    rows = [list(matrix[j]) + [-tgt[j] * int(i == j) for i in range(t)] for j in range(t)]
    if t == 0:
        L = [[int(i == j) for j in range(s)] for i in range(s)]
    else:
        L = [v[:s] for v in integer_kernel(IntMatrix.from_rows(rows, s + t))]
    N = [[src[i] * int(i == j) for j in range(s)] for i in range(s)]
    return lattice_quotient(L + N, N, s)


def parse_matrix_text(text: str) -> IntMatrix:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("first line must be 'rows cols'")
    r, c = int(lines[0][0]), int(lines[0][1])
    body = [[int(x) for x in ln] for ln in lines[1:]]
    if len(body) != r or any(len(row) != c for row in body):
        raise ValueError(f"expected {r} rows of {c} integers")
    return IntMatrix(r, c, tuple(x for row in body for x in row))


def format_matrix_text(A: IntMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines += [" ".join(str(x) for x in row) for row in A.to_rows()]
    return "\n".join(lines)
