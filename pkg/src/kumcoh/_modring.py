"""Dense linear algebra over the chain ring Z/p^a (numpy, pure-Python control flow).

Pivots are always chosen with minimal p-adic valuation, which makes every
other entry of the pivot column divisible by the pivot.  This module is
the reference implementation; ``_ckernels`` accelerates the row
compression when the extension is built.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ring_tables", "howell_rows", "local_snf"]

_TABLES: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


def ring_tables(p: int, a: int) -> tuple[np.ndarray, np.ndarray]:
    """(valuation, inverse-of-unit-part) lookup tables for Z/p^a.  val[0] = a."""
    key = (p, a)
    if key not in _TABLES:
        q = p**a
        val = np.zeros(q, dtype=np.int64)
        uinv = np.zeros(q, dtype=np.int64)
        val[0] = a
        for x in range(1, q):
            v, u = 0, x
            while u % p == 0:
                u //= p
                v += 1
            val[x] = v
            uinv[x] = pow(u, -1, q)
        _TABLES[key] = (val, uinv)
    return _TABLES[key]


def _howell_dense(A: np.ndarray, p: int, a: int) -> np.ndarray:
    q = p**a
    val, uinv = ring_tables(p, a)
    pending = A[np.any(A, axis=1)]
    out = []
    ncols = A.shape[1]
    for j in range(ncols):
        if pending.shape[0] == 0:
            break
        col = pending[:, j]
        if not col.any():
            continue
        i = int(np.argmin(val[col]))
        v = int(val[col[i]])
        piv = pending[i] * uinv[col[i]] % q
        rest = np.delete(pending, i, axis=0)
        if rest.shape[0]:
            f = rest[:, j] // (p**v)
            rest = (rest - np.outer(f, piv)) % q
        out.append(piv)
        sat = piv * (p ** (a - v)) % q
        if sat.any():
            rest = np.vstack([rest, sat[None, :]])
        pending = rest[np.any(rest, axis=1)]
    if not out:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def howell_rows(rows: np.ndarray, p: int, a: int, block: int | None = None) -> np.ndarray:
    """Echelon generators of the row module of `rows` over Z/p^a, saturated.

    Each output row has a distinct leading column holding exactly p^v, and
    the row module has order prod p^(a - v).
    """
    q = p**a
    rows = np.asarray(rows, dtype=np.int64) % q
    ncols = rows.shape[1]
    block = block or max(64, 2 * ncols)
    basis = np.zeros((0, ncols), dtype=np.int64)
    for s in range(0, rows.shape[0], block):
        chunk = rows[s:s + block]
        chunk = chunk[np.any(chunk, axis=1)]
        if chunk.shape[0] == 0:
            continue
        basis = _howell_dense(np.vstack([basis, chunk]), p, a)
    return basis


def local_snf(M: np.ndarray, p: int, a: int, left: bool = False, right: bool = False):
    """Smith form over Z/p^a: U M V = diag(p^v_0, p^v_1, ...).

    Returns (vals, U, U_inv, V, V_inv); transforms are None unless requested.
    `vals` has length min(rows, cols) and uses a for zero diagonal entries.
    """
    q = p**a
    val, uinv = ring_tables(p, a)
    M = np.array(M, dtype=np.int64) % q
    R, C = M.shape
    U = np.eye(R, dtype=np.int64) if left else None
    Ui = np.eye(R, dtype=np.int64) if left else None
    V = np.eye(C, dtype=np.int64) if right else None
    Vi = np.eye(C, dtype=np.int64) if right else None
    vals = []
    for t in range(min(R, C)):
        sub = val[M[t:, t:]]
        k = int(np.argmin(sub))
        i, j = divmod(k, C - t)
        i += t
        j += t
        v = int(val[M[i, j]])
        if v >= a:
            vals.extend([a] * (min(R, C) - t))
            break
        if i != t:
            M[[t, i]] = M[[i, t]]
            if left:
                U[[t, i]] = U[[i, t]]
                Ui[:, [t, i]] = Ui[:, [i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            if right:
                V[:, [t, j]] = V[:, [j, t]]
                Vi[[t, j]] = Vi[[j, t]]
        u = int(uinv[M[t, t]])
        if u != 1:
            M[t] = M[t] * u % q
            if left:
                U[t] = U[t] * u % q
                Ui[:, t] = Ui[:, t] * (pow(u, -1, q)) % q
        pv = p**v
        f = M[t + 1:, t] // pv
        if f.any():
            M[t + 1:] = (M[t + 1:] - np.outer(f, M[t])) % q
            if left:
                U[t + 1:] = (U[t + 1:] - np.outer(f, U[t])) % q
                Ui[:, t] = (Ui[:, t] + Ui[:, t + 1:] @ f) % q
        g = M[t, t + 1:] // pv
        if g.any():
            M[t, t + 1:] = 0
            if right:
                V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], g)) % q
                Vi[t] = (Vi[t] + g @ Vi[t + 1:]) % q
        vals.append(v)
    return vals, U, Ui, V, Vi
