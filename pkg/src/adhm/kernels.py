"""Bit-packed GF(2) kernels for the large exhaustive W = 0 sweeps.

Vectors of F_2^n are ints (bit t = coordinate t); a matrix is the list of
its column masks. The second half batches Gaussian elimination in numpy
over prime fields and GF(2^k). Everything here is cross-checked against
the generic exact code in the test suite.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .exactla import GF, FiniteField, Mat
from .quiverrep import BlowupRep


def reduce_basis(vectors) -> list[int]:
    """Echelon basis (distinct leading bits) of the span."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def rank(vectors) -> int:
    return len(reduce_basis(vectors))


def span_mask(basis) -> int:
    """Bitmask over all 2^n vectors marking the elements of the span."""
    elems = [0]
    for b in basis:
        elems += [e ^ b for e in elems]
    m = 0
    for e in elems:
        m |= 1 << e
    return m


@lru_cache(maxsize=None)
def subspaces(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Every subspace of F_2^n as (basis, element mask), zero space first."""
    seen = {}
    for k in range(n + 1):
        for vecs in itertools.combinations(range(1, 1 << n), k):
            basis = reduce_basis(vecs)
            if len(basis) != k:
                continue
            mask = span_mask(basis)
            if mask not in seen:
                seen[mask] = tuple(basis)
    return tuple(sorted(((b, m) for m, b in seen.items()), key=lambda t: (len(t[0]), t[1])))


def columns(M: Mat) -> list[int]:
    out = []
    for c in range(M.ncols):
        v = 0
        for r in range(M.nrows):
            if M[r, c]:
                v |= 1 << r
        out.append(v)
    return out


def to_mat(cols: list[int], nrows: int) -> Mat:
    f = GF(2)
    rows = tuple(tuple((cols[c] >> r) & 1 for c in range(len(cols))) for r in range(nrows))
    return Mat._raw(f, rows, nrows, len(cols))


def apply(cols, v: int) -> int:
    out = 0
    c = 0
    while v:
        if v & 1:
            out ^= cols[c]
        v >>= 1
        c += 1
    return out


def w0_is_stable(B1, B2, d, n0: int, n1: int, zeta0, zeta1) -> bool:
    """Balanced W = 0 stability for zeta0 < 0.

    Assumes zeta0 n0 + zeta1 n1 = 0; only proper nonzero pairs are tested.

    For fixed S1 the largest value of zeta0 dim S0 + zeta1 dim S1 comes from
    the least admissible S0 = B1(S1) + B2(S1), so only S1 is enumerated.
    """
    for basis, mask in subspaces(n1)[1:]:
        gens = [apply(B1, v) for v in basis] + [apply(B2, v) for v in basis]
        L0 = reduce_basis(gens)
        if any(not (mask >> apply(d, u)) & 1 for u in L0):
            continue
        if len(L0) == n0 and len(basis) == n1:
            continue
        if zeta0 * len(L0) + zeta1 * len(basis) >= 0:
            return False
    return True


def flat_d_basis(B1, B2, n0: int, n1: int) -> list[list[int]]:
    """Basis of {d : B1 d B2 = B2 d B1}, each d as n0 column masks of length n1."""
    nunk = n1 * n0
    idx = lambda a, b: a * n0 + b       # d[a][b], a in V1, b in V0
    bit = lambda cols, r, c: (cols[c] >> r) & 1
    rows = []
    for r in range(n0):
        for c in range(n1):
            eq = 0
            for a in range(n1):
                for b in range(n0):
                    if (bit(B1, r, a) & bit(B2, b, c)) ^ (bit(B2, r, a) & bit(B1, b, c)):
                        eq |= 1 << idx(a, b)
            if eq:
                rows.append(eq)
    # reduced row echelon form on unknown bits
    pivots: list[tuple[int, int]] = []
    for eq in rows:
        for p, prow in pivots:
            if (eq >> p) & 1:
                eq ^= prow
        if eq:
            p = eq.bit_length() - 1
            pivots = [(q, prow ^ eq if (prow >> p) & 1 else prow) for q, prow in pivots]
            pivots.append((p, eq))
    pivset = {p for p, _ in pivots}
    out = []
    for free in range(nunk):
        if free in pivset:
            continue
        sol = 1 << free
        for p, prow in pivots:
            if (prow >> free) & 1:
                sol |= 1 << p
        cols = [0] * n0
        for a in range(n1):
            for b in range(n0):
                if (sol >> idx(a, b)) & 1:
                    cols[b] |= 1 << a
        out.append(cols)
    return out


def rank_normal_form(k: int, n0: int, n1: int) -> list[int]:
    """Columns of the n0 x n1 matrix with 1_k in the top-left corner."""
    return [1 << c if c < k else 0 for c in range(n1)]


def w0_slice_sweep(n0: int, n1: int, zeta0, zeta1, k: int):
    """Stable flat tuples with B1 in rank normal form k, over F_2.

    Every GL(V0) x GL(V1) orbit meets exactly one such slice. Two cheap
    destabilizing pairs are tested before solving for d:
    (Im B1 + Im B2, V1) and (0, Ker B1 & Ker B2).
    Returns (number of (B1, B2) pairs surviving, list of stable (B1, B2, d)).
    """
    B1 = rank_normal_form(k, n0, n1)
    survivors = 0
    stable = []
    for code in range(1 << (n0 * n1)):
        B2 = [(code >> (c * n0)) & ((1 << n0) - 1) for c in range(n1)]
        if n0 and rank(B1 + B2) < n0:
            continue
        if n0 and zeta1 >= 0:
            common = [v for v in range(1, 1 << n1) if apply(B1, v) == 0 and apply(B2, v) == 0]
            if common:
                continue
        survivors += 1
        basis = flat_d_basis(B1, B2, n0, n1)
        for coeffs in itertools.product((0, 1), repeat=len(basis)):
            d = [0] * n0
            for c, vec in zip(coeffs, basis):
                if c:
                    d = [x ^ y for x, y in zip(d, vec)]
            if w0_is_stable(B1, B2, d, n0, n1, zeta0, zeta1):
                stable.append((tuple(B1), tuple(B2), tuple(d)))
    return survivors, stable


def to_rep(B1, B2, d, n0: int, n1: int) -> BlowupRep:
    f = GF(2)
    return BlowupRep(f, n0, n1, 0, to_mat(list(B1), n0), to_mat(list(B2), n0), to_mat(list(d), n1),
                     Mat.zeros(f, n0, 0), Mat.zeros(f, 0, n1))


def from_rep(X: BlowupRep):
    return tuple(columns(X.B1)), tuple(columns(X.B2)), tuple(columns(X.d))


def rank_count(n0: int, n1: int, k: int, q: int = 2) -> int:
    """Number of n0 x n1 matrices of rank k over F_q."""
    out = 1
    for t in range(k):
        out *= (q ** n0 - q ** t) * (q ** n1 - q ** t)
        out //= q ** k - q ** t
    return out


def w0_sweep(n0: int, n1: int, zeta0, zeta1) -> dict:
    """Exhaustive stable count on dims (n0, n1) over F_2, one slice per rank of B1.

    The fibre over any B1 of rank k is conjugate to the slice, so the full
    count is the sum of slice counts weighted by rank_count.
    """
    slices = {}
    total = 0
    for k in range(min(n0, n1) + 1):
        survivors, stable = w0_slice_sweep(n0, n1, zeta0, zeta1, k)
        slices[k] = {"survivors": survivors, "stable": stable}
        total += rank_count(n0, n1, k) * len(stable)
    return {"slices": slices, "stable_tuples": total}


# --- batched elimination over small finite fields --------------------------------

class NumpyField:
    """Vectorized arithmetic on integer codes of GF(p) or GF(2^k)."""

    def __init__(self, field: FiniteField):
        if not supports_numpy(field):
            raise ValueError(f"no vectorized arithmetic for {field!r}")
        self.field = field
        self.p = field.p
        self.k = field.k
        q = field.q
        if self.k == 1:
            self.inv_table = np.array([0] + [field.inv(a) for a in range(1, q)], dtype=np.int64)
        else:
            self.exp = np.array(field._exp, dtype=np.int64)
            log = np.array(field._log, dtype=np.int64)
            self.log = log
            self.inv_table = np.array([0] + [field.inv(a) for a in range(1, q)], dtype=np.int64)

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return (a - b) % self.p

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)


def supports_numpy(field) -> bool:
    if not getattr(field, "is_finite", False):
        return False
    if field.k == 1:
        return field.p < 1 << 31
    return field.p == 2 and field._log is not None


def batched_rank(nf: NumpyField, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices of shape (P, R, C)."""
    A = np.array(mats, dtype=np.int64, copy=True)
    P, R, C = A.shape
    rank = np.zeros(P, dtype=np.int64)
    rows = np.arange(R)
    for c in range(C):
        mask = (A[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = mask[b].argmax(axis=1)
        r = rank[b]
        top = A[b, r].copy()
        A[b, r] = A[b, piv]
        A[b, piv] = top
        pivot_row = nf.mul(A[b, r], nf.inv_table[A[b, r, c]][:, None])
        A[b, r] = pivot_row
        factors = A[b, :, c].copy()
        factors[rows[None, :] <= r[:, None]] = 0
        A[b] = nf.sub(A[b], nf.mul(factors[:, :, None], pivot_row[:, None, :]))
        rank[b] += 1
    return rank
