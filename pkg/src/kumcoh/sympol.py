"""Polarization types and the scalar model of invariant symplectic isomorphisms.

An invariant symplectic map of ``A (x) Gamma_n`` is recorded by four integers
multiplying fixed basic blocks.  Three variants occur:

``auto``   A -> A:        [[a1 id,      a2 (lD (x) phihat)], [a3 (l (x) phi),  a4 id]]
``dual``   A -> A^v:      [[a1 (l (x) id), a2 (id (x) phihat)], [a3 (id (x) phi), a4 (lD (x) id)]]
``codual`` A^v -> A:      [[a1 (lD (x) id), a2 (id (x) phihat)], [a3 (id (x) phi), a4 (l (x) id)]]

where ``l`` is a symmetric isogeny with ``lD o l = l o lD = [e]`` and
``phihat o phi = phi o phihat = n``.  Composition multiplies out blocks with
those two rules.  For n = 2 the canonical map is twice a generator, so the
effective n in every formula is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Literal

__all__ = [
    "PolarizationType",
    "ScalarSp",
    "HeckeMatrix",
    "OrlovF",
    "dual_type",
    "to_hecke_matrix",
    "tilde",
    "compose",
    "identity_sp",
    "sp_witness",
    "orlov_f",
    "parse_hecke_matrix",
]

Variant = Literal["auto", "dual", "codual"]


@dataclass(frozen=True)
class PolarizationType:
    d: tuple[int, ...]

    def __post_init__(self) -> None:
        d = tuple(int(x) for x in self.d)
        if not d or any(x < 1 for x in d):
            raise ValueError("type entries must be positive")
        if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
            raise ValueError(f"divisibility chain violated in {d}")
        object.__setattr__(self, "d", d)

    @property
    def g(self) -> int:
        return len(self.d)

    @property
    def degree(self) -> int:
        return prod(self.d) ** 2

    @property
    def exponent(self) -> int:
        return self.d[-1]


def dual_type(t: PolarizationType) -> PolarizationType:
    """Type of the dual isogeny: (1, d_g/d_{g-1}, ..., d_g/d_1)."""
    top = t.d[-1]
    return PolarizationType(tuple(top // x for x in reversed(t.d)))


@dataclass(frozen=True)
class ScalarSp:
    a1: int
    a2: int
    a3: int
    a4: int
    n: int
    e: int
    variant: Variant = "dual"

    def __post_init__(self) -> None:
        if self.variant not in ("auto", "dual", "codual"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.n < 2 or self.e < 1:
            raise ValueError("need n >= 2 and e >= 1")

    @property
    def n_eff(self) -> int:
        return 1 if self.n == 2 else self.n

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4)

    def determinant(self) -> int:
        a1, a2, a3, a4 = self.coefficients
        if self.variant == "auto":
            return a1 * a4 - self.n_eff * self.e * a2 * a3
        return a1 * a4 * self.e - a2 * a3 * self.n_eff

    def is_symplectic(self) -> bool:
        return self.determinant() == 1


def identity_sp(n: int, e: int) -> ScalarSp:
    return ScalarSp(1, 0, 0, 1, n, e, "auto")


def tilde(f: ScalarSp) -> ScalarSp:
    """(a4, -a2, -a3, a1), swapping the source and target sides."""
    swap = {"auto": "auto", "dual": "codual", "codual": "dual"}
    return ScalarSp(f.a4, -f.a2, -f.a3, f.a1, f.n, f.e, swap[f.variant])  # type: ignore[arg-type]


def compose(g: ScalarSp, f: ScalarSp) -> ScalarSp:
    """g o f in the scalar model."""
    if (g.n, g.e) != (f.n, f.e):
        raise ValueError("maps built from different (n, e)")
    n, e = f.n_eff, f.e
    a1, a2, a3, a4 = g.coefficients
    b1, b2, b3, b4 = f.coefficients
    kinds = (g.variant, f.variant)
    if kinds == ("auto", "auto"):
        c = (a1 * b1 + n * e * a2 * b3, a1 * b2 + a2 * b4, a3 * b1 + a4 * b3, n * e * a3 * b2 + a4 * b4)
        out: Variant = "auto"
    elif kinds == ("dual", "auto"):
        c = (a1 * b1 + n * a2 * b3, e * a1 * b2 + a2 * b4, a3 * b1 + e * a4 * b3, n * a3 * b2 + a4 * b4)
        out = "dual"
    elif kinds == ("auto", "codual"):
        c = (a1 * b1 + n * a2 * b3, a1 * b2 + e * a2 * b4, e * a3 * b1 + a4 * b3, n * a3 * b2 + a4 * b4)
        out = "codual"
    elif kinds in (("codual", "dual"), ("dual", "codual")):
        # both land in an automorphism group with the same scalar model
        c = (e * a1 * b1 + n * a2 * b3, a1 * b2 + a2 * b4, a3 * b1 + a4 * b3, n * a3 * b2 + e * a4 * b4)
        out = "auto"
    else:
        raise ValueError(f"cannot compose {g.variant} after {f.variant}")
    return ScalarSp(*c, f.n, f.e, out)


@dataclass(frozen=True)
class HeckeMatrix:
    a: int
    b: int
    c: int
    d: int
    level: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_member(self) -> bool:
        return self.det == 1 and self.c % self.level == 0

    def __matmul__(self, other: HeckeMatrix) -> HeckeMatrix:
        return HeckeMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.level,
        )

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))


def to_hecke_matrix(f: ScalarSp) -> HeckeMatrix:
    """[[a1, a2], [n e a3, a4]] of level n e; rejects non-symplectic input."""
    if f.variant != "auto":
        raise ValueError("only automorphisms map to the Hecke congruence subgroup")
    level = f.n_eff * f.e
    M = HeckeMatrix(f.a1, f.a2, level * f.a3, f.a4, level)
    if not M.is_member():
        raise ValueError(f"not symplectic: determinant {M.det}")
    return M


def parse_hecke_matrix(text: str, level: int) -> HeckeMatrix:
    """Parse "a,b;c,d"."""
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("matrix must look like 'a,b;c,d'")
    (a, b), (c, d) = ((int(x) for x in r) for r in rows)
    return HeckeMatrix(a, b, c, d, level)


def sp_witness(n: int, e: int) -> ScalarSp | None:
    """A dual-variant symplectic map with a1 = a3 = 1, or None when none exists."""
    if n < 2 or e < 1:
        raise ValueError("need n >= 2 and e >= 1")
    ne = 1 if n == 2 else n
    if gcd(ne, e) != 1:
        return None
    a4 = pow(e, -1, ne) if ne > 1 else 0
    a2 = (a4 * e - 1) // ne
    f = ScalarSp(1, a2, 1, a4, n, e, "dual")
    assert f.is_symplectic()
    return f


@dataclass(frozen=True)
class OrlovF:
    """The matrix (1, 1, n3, n4) with n4 e - n3 n = 1 and derived slope data."""

    sp: ScalarSp
    n3: int
    n4: int
    slope_denominator: int
    g_numerator: tuple[tuple[int, int], tuple[int, int]]
    g_denominator: int


def orlov_f(n: int, e: int) -> OrlovF:
    if n < 2 or e < 1:
        raise ValueError("need n >= 2 and e >= 1")
    if gcd(n, e) != 1:
        raise ValueError(f"gcd(n, e) = {gcd(n, e)} != 1")
    n4 = pow(e, -1, n)
    n3 = (n4 * e - 1) // n
    return OrlovF(ScalarSp(1, 1, n3, n4, n, e, "dual"), n3, n4, n, ((1, -1), (-1, n4)), n)
