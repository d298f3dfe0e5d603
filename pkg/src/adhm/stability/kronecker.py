"""Canonical form of a pencil (B1, B2) : V1 -> V0 under GL(V0) x GL(V1).

Blocks, with sizes in the (rows, cols) = (dim V0, dim V1) convention:
  a  (m+1) x m : B1 = [1; 0], B2 = [0; 1]
  b  m x (m+1) : B1 = [1 0],  B2 = [0 1]
  c  m x m     : B1 = 1, B2 = J
  d  m x m     : B1 = a + J, B2 = 1
  dgen         : B1 = companion(p), B2 = 1, for the part whose eigenvalues
                 are not in the field (p an invariant factor)
J is the nilpotent Jordan block with ones above the diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionMismatch, FieldMismatch
from ..exactla import Field, Mat, Subspace, solve_affine
from ..exactla import poly as P
from ..quiverrep import BlowupRep, cm_data, hom_space

KINDS = ("a", "b", "c", "d", "dgen")


@dataclass(frozen=True)
class KroneckerBlock:
    kind: str
    m: int
    eigen: object = None           # kind d
    poly: tuple | None = None      # kind dgen: monic coefficients, lowest first

    def shape(self) -> tuple[int, int]:
        if self.kind == "a":
            return (self.m + 1, self.m)
        if self.kind == "b":
            return (self.m, self.m + 1)
        return (self.m, self.m)

    def matrices(self, field: Field) -> tuple[Mat, Mat]:
        m = self.m
        o, z = field.one, field.zero
        rows, cols = self.shape()
        eye = lambda n: Mat.identity(field, n)
        jordan = Mat._raw(field, tuple(tuple(o if c == r + 1 else z for c in range(m)) for r in range(m)), m, m)
        if self.kind == "a":
            B1 = Mat._raw(field, tuple(tuple(o if c == r else z for c in range(m)) for r in range(m + 1)), rows, cols)
            B2 = Mat._raw(field, tuple(tuple(o if c == r - 1 else z for c in range(m)) for r in range(m + 1)), rows, cols)
            return B1, B2
        if self.kind == "b":
            B = cm_data(m, field)
            return B.B1, B.B2
        if self.kind == "c":
            return eye(m), jordan
        if self.kind == "d":
            return eye(m).scale(self.eigen) + jordan, eye(m)
        return companion(field, self.poly), eye(m)

    def sort_key(self, field: Field):
        e = field.format(self.eigen) if self.eigen is not None else ""
        p = tuple(field.format(c) for c in self.poly) if self.poly else ()
        return (KINDS.index(self.kind), self.m, e, p)

    def to_json(self, field: Field) -> dict:
        out = {"kind": self.kind, "m": self.m}
        if self.eigen is not None:
            out["eigen"] = field.format(self.eigen)
        if self.poly is not None:
            out["poly"] = [field.format(c) for c in self.poly]
        return out


def companion(field: Field, p: tuple) -> Mat:
    """Companion matrix of monic p on the basis v, Av, ..., A^(n-1) v."""
    n = len(p) - 1
    rows = [[field.zero] * n for _ in range(n)]
    for r in range(1, n):
        rows[r][r - 1] = field.one
    for r in range(n):
        rows[r][n - 1] = field.neg(p[r])
    return Mat(field, rows, n, n)


def block_multiset(blocks, field: Field) -> list:
    return sorted(blocks, key=lambda b: b.sort_key(field))


def assemble(field: Field, blocks) -> tuple[Mat, Mat]:
    pairs = [b.matrices(field) for b in blocks]
    if not pairs:
        return Mat.zeros(field, 0, 0), Mat.zeros(field, 0, 0)
    return (Mat.block_diag(field, *[p[0] for p in pairs]), Mat.block_diag(field, *[p[1] for p in pairs]))


# --- small linear algebra helpers ------------------------------------------------

def _cols(field: Field, vectors, n: int) -> Mat:
    return Mat.from_columns(field, [tuple(v) for v in vectors], n) if vectors else Mat.zeros(field, n, 0)


def _coords(basis: Mat, vectors) -> Mat:
    """Coefficients expressing each vector in the independent columns of basis."""
    f = basis.field
    out = []
    for v in vectors:
        x, _ = solve_affine(basis, v)
        if x is None:
            raise ArithmeticError("vector outside the span")
        out.append(x)
    return _cols(f, out, basis.ncols)


def _diag(field: Field, a: Mat, b: Mat) -> Mat:
    return Mat.block_diag(field, a, b)


def _extend_basis(field: Field, n: int, vectors) -> list:
    """Standard basis vectors completing ``vectors`` to a basis of F^n."""
    acc = Subspace.span(field, n, vectors)
    extra = []
    for c in range(n):
        e = tuple(field.one if t == c else field.zero for t in range(n))
        if not acc.contains(e):
            extra.append(e)
            acc = acc + Subspace.span(field, n, [e])
    return extra


# --- singular blocks ------------------------------------------------------------------

def _chain(B1: Mat, B2: Mat, m: int):
    """Nonzero (e_1..e_{m+1}) with B2 e1 = 0, B1 e_k = B2 e_{k+1}, B1 e_{m+1} = 0."""
    f = B1.field
    n0, n1 = B1.shape
    Z = Mat.zeros(f, n0, n1)
    # rows: r = 0 -> B2 e1; 1 <= r <= m -> B1 e_r - B2 e_{r+1}; r = m+1 -> B1 e_{m+1}
    grid = []
    for r in range(m + 2):
        row = [Z] * (m + 1)
        if r == 0:
            row[0] = B2
        elif r <= m:
            row[r - 1] = B1
            row[r] = -B2
        else:
            row[m] = B1
        grid.append(row)
    A = Mat.block(grid)
    ker = A.kernel_vectors()
    if not ker:
        return None
    v = ker[0]
    return [tuple(v[k * n1:(k + 1) * n1]) for k in range(m + 1)]


def _peel_b(B1: Mat, B2: Mat):
    """Split off a b-block of least size: (m, R0, Q1) or None.

    Columns of R0 / Q1 are the new bases of V0 / V1, block first.
    """
    f = B1.field
    n0, n1 = B1.shape
    if n1 == 0:
        return None
    for m in range(0, n0 + 1):
        if m + 1 > n1:
            break
        es = _chain(B1, B2, m)
        if es is None:
            continue
        fs = [B1.apply(e) for e in es[:m]]
        X = BlowupRep(f, n0, n1, 0, B1, B2, Mat.zeros(f, n1, n0), Mat.zeros(f, n0, 0), Mat.zeros(f, 0, n1))
        iota0, iota1 = _cols(f, fs, n0), _cols(f, es, n1)
        H = hom_space(X, cm_data(m, f))
        # solve sum c_t rho_t o iota = id
        comps = [((r0 @ iota0).entries + (r1 @ iota1).entries) for r0, r1, _ in H.basis]
        target = Mat.identity(f, m).entries + Mat.identity(f, m + 1).entries
        A = Mat.from_columns(f, comps, len(target)) if comps else Mat.zeros(f, len(target), 0)
        c, _ = solve_affine(A, target)
        if c is None:
            raise ArithmeticError("minimal b-block without a retraction")
        rho0 = Mat.zeros(f, m, n0)
        rho1 = Mat.zeros(f, m + 1, n1)
        for coef, (r0, r1, _) in zip(c, H.basis):
            if coef != f.zero:
                rho0 = rho0 + r0.scale(coef)
                rho1 = rho1 + r1.scale(coef)
        K0 = rho0.kernel_vectors()
        K1 = rho1.kernel_vectors()
        R0 = _cols(f, fs + K0, n0)
        Q1 = _cols(f, list(es) + K1, n1)
        return m, R0, Q1
    return None


# --- regular part -------------------------------------------------------------------

def _krylov(A: Mat, v):
    """(vectors v, Av, ..., monic minimal polynomial of v)."""
    f = A.field
    n = A.nrows
    vecs = []
    acc = Subspace.zero(f, n)
    w = tuple(v)
    while True:
        if acc.contains(w):
            coeffs = _coords(_cols(f, vecs, n), [w]).col(0) if vecs else ()
            p = tuple(f.neg(c) for c in coeffs) + (f.one,)
            return vecs, p
        vecs.append(w)
        acc = acc + Subspace.span(f, n, [w])
        w = A.apply(w)


def _maximal_vector(A: Mat):
    f = A.field
    n = A.nrows
    unit = lambda c: tuple(f.one if t == c else f.zero for t in range(n))
    v = unit(0)
    _, pv = _krylov(A, v)
    for c in range(1, n):
        w = unit(c)
        _, pw = _krylov(A, w)
        if P.divides(f, pw, pv):
            continue
        a, b = P.coprime_split(f, pv, pw)
        u1 = P.apply_to_vector(f, P.pexact_div(f, pv, a), A, v)
        u2 = P.apply_to_vector(f, P.pexact_div(f, pw, b), A, w)
        v = tuple(f.add(x, y) for x, y in zip(u1, u2))
        _, pv = _krylov(A, v)
    return v


def _restrict_square(A: Mat, basis: list) -> Mat:
    B = _cols(A.field, basis, A.nrows)
    return _coords(B, [A.apply(b) for b in basis])


def _frobenius(A: Mat):
    """Invariant-factor decomposition: list of (monic poly, cyclic basis)."""
    f = A.field
    n = A.nrows
    if n == 0:
        return []
    v = _maximal_vector(A)
    Z, p = _krylov(A, v)
    d = len(Z)
    if d == n:
        return [(p, Z)]
    extra = _extend_basis(f, n, Z)
    full = _cols(f, list(Z) + extra, n)
    e = [f.zero] * n
    e[d - 1] = f.one
    # functional phi with phi(A^t v) = delta_{t, d-1}, zero on the extra vectors
    phi, _ = solve_affine(full.T, e)
    rows, row = [], tuple(phi)
    for _ in range(d):
        rows.append(row)
        row = tuple(f.dot(row, A.col(c)) for c in range(n))
    comp = Mat(f, rows, d, n).kernel_vectors()
    sub = _frobenius(_restrict_square(A, comp))
    C = _cols(f, comp, n)
    return [(p, Z)] + [(q, [C.apply(x) for x in vecs]) for q, vecs in sub]


def _nilpotent_chains(N: Mat, K: Subspace) -> list[list]:
    """Jordan chains of N (nilpotent on K), longest first, each listed
    bottom-up as [N^(L-1) v, ..., N v, v]."""
    f = N.field
    n = N.nrows
    kernels = [Subspace.zero(f, n)]
    power = Mat.identity(f, n)
    while kernels[-1].dim < K.dim:
        power = power @ N
        kernels.append(power.kernel() & K)
    s = len(kernels) - 1
    tops: list[tuple[int, tuple]] = []
    for i in range(s, 0, -1):
        acc = kernels[i - 1]
        for L, v in tops:
            w = v
            for _ in range(L - i):
                w = N.apply(w)
            acc = acc + Subspace.span(f, n, [w])
        for u in kernels[i].rows:
            if not acc.contains(u):
                tops.append((i, u))
                acc = acc + Subspace.span(f, n, [u])
    chains = []
    for L, v in tops:
        seq = [v]
        for _ in range(L - 1):
            seq.append(N.apply(seq[-1]))
        chains.append(seq[::-1])
    return chains


def _similarity_form(M: Mat):
    """(blocks, S) with S^-1 M S block diagonal: Jordan blocks for eigenvalues
    in the field, then companion blocks of invariant factors for the rest."""
    f = M.field
    n = M.nrows
    if n == 0:
        return [], Mat.zeros(f, 0, 0)
    charp = (f.one,)
    for p, _ in _frobenius(M):
        charp = P.pmul(f, charp, p)
    blocks, cols = [], []
    rest = Mat.identity(f, n)
    full = Subspace.full(f, n)
    for a in P.roots(f, charp):
        N = M - Mat.identity(f, n).scale(a)
        Nn = Mat.identity(f, n)
        for _ in range(n):
            Nn = Nn @ N
        K = Nn.kernel()
        for chain in _nilpotent_chains(N, K):
            blocks.append(KroneckerBlock("d", len(chain), eigen=a))
            cols.extend(chain)
        rest = Nn @ rest
    R = rest.image() if rest.ncols else Subspace.zero(f, n)
    if R.dim:
        basis = list(R.rows)
        sub = _frobenius(_restrict_square(M, basis))
        C = _cols(f, basis, n)
        for p, vecs in sub:
            blocks.append(KroneckerBlock("dgen", len(p) - 1, poly=tuple(p)))
            cols.extend(C.apply(x) for x in vecs)
    S = _cols(f, cols, n)
    return blocks, S


def _regular(B1: Mat, B2: Mat):
    f = B1.field
    n = B1.nrows
    if B1.ncols != n:
        raise ArithmeticError("regular part is not square")
    V = Subspace.full(f, n)
    while True:
        Vn = V.image_under(B2).preimage_under(B1)
        if Vn == V:
            break
        V = Vn
    W = Subspace.zero(f, n)
    while True:
        Wn = W.image_under(B1).preimage_under(B2)
        if Wn == W:
            break
        W = Wn
    if V.dim + W.dim != n or not (V & W).is_zero():
        raise ArithmeticError("pencil is not regular")
    blocks = []
    q_cols, r_cols = [], []
    if V.dim:
        X = _cols(f, V.rows, n)
        Y = B2 @ X
        M = _coords(Y, (B1 @ X).columns())
        bl, S = _similarity_form(M)
        blocks += bl
        q_cols += (X @ S).columns()
        r_cols += (Y @ S).columns()
    if W.dim:
        X = _cols(f, W.rows, n)
        Y = B1 @ X
        N = _coords(Y, (B2 @ X).columns())
        chains = _nilpotent_chains(N, Subspace.full(f, N.nrows))
        S = _cols(f, [v for ch in chains for v in ch], N.nrows)
        blocks += [KroneckerBlock("c", len(ch)) for ch in chains]
        q_cols += (X @ S).columns()
        r_cols += (Y @ S).columns()
    return blocks, _cols(f, r_cols, n).inverse(), _cols(f, q_cols, n)


def _decompose(B1: Mat, B2: Mat):
    f = B1.field
    n0, n1 = B1.shape
    if n0 == 0 and n1 == 0:
        return [], Mat.zeros(f, 0, 0), Mat.zeros(f, 0, 0)
    split = _peel_b(B1, B2)
    if split is not None:
        m, R0, Q1 = split
        Pm = R0.inverse()
        C1, C2 = Pm @ B1 @ Q1, Pm @ B2 @ Q1
        rows, cols = list(range(m, n0)), list(range(m + 1, n1))
        blocks, Pr, Qr = _decompose(C1.submatrix(rows, cols), C2.submatrix(rows, cols))
        return ([KroneckerBlock("b", m)] + blocks, _diag(f, Mat.identity(f, m), Pr) @ Pm,
                Q1 @ _diag(f, Mat.identity(f, m + 1), Qr))
    split = _peel_b(B1.T, B2.T)
    if split is not None:
        m, R0, Q1 = split          # bases of V1* and V0* for the transposed pencil
        Pt = R0.inverse()
        Pm, Qm = Q1.T, Pt.T        # Q1^T B Pt^T is block diagonal with the a-block first
        C1, C2 = Pm @ B1 @ Qm, Pm @ B2 @ Qm
        rows, cols = list(range(m + 1, n0)), list(range(m, n1))
        blocks, Pr, Qr = _decompose(C1.submatrix(rows, cols), C2.submatrix(rows, cols))
        return ([KroneckerBlock("a", m)] + blocks, _diag(f, Mat.identity(f, m + 1), Pr) @ Pm,
                Qm @ _diag(f, Mat.identity(f, m), Qr))
    return _regular(B1, B2)


def kronecker_decompose(B1: Mat, B2: Mat) -> tuple[list[KroneckerBlock], Mat, Mat]:
    """(blocks, P, Q) with P B_alpha Q equal to the block diagonal assembly."""
    if B1.field != B2.field:
        raise FieldMismatch("pencil over two fields")
    if B1.shape != B2.shape:
        raise DimensionMismatch("pencil matrices of different shapes")
    blocks, Pm, Qm = _decompose(B1, B2)
    A1, A2 = assemble(B1.field, blocks)
    if Pm @ B1 @ Qm != A1 or Pm @ B2 @ Qm != A2:
        raise ArithmeticError("canonical form check failed")
    return blocks, Pm, Qm
