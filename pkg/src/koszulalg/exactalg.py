"""Exact fields (F_p and Q) and exact linear algebra.

Scalars are plain Python ints in [0, p) for prime fields and
fractions.Fraction for the rationals; a Field descriptor supplies the
arithmetic, so no rounding can ever occur.  Matrices are row-major
lists of scalars.  Over F_2 there is a bit-packed fast path (64
columns per numpy uint64 word) used for row reduction, kernels and
rank; it produces the same canonical answers as the generic path.

All values are immutable after construction and all operations are
pure, so everything here is safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_WORD = 64


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Descriptor of an exact coefficient field."""

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return self.div(self.from_int(num), self.from_int(den))


class PrimeField(Field):
    """F_p for a word-size prime p; scalars are ints in [0, p)."""

    def __init__(self, p):
        if not (2 <= p < 2 ** 31):
            raise ValueError("prime must satisfy 2 <= p < 2^31")
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p
        self.name = "F%d" % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self.name)
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


class RationalField(Field):
    """Q with arbitrary-precision Fraction scalars, always in lowest terms."""

    def __init__(self):
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.name = "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "Q"


GF2 = PrimeField(2)
QQ = RationalField()


def field_by_name(name):
    """Resolve "Q" or "F<p>" to a Field descriptor."""
    if name == "Q":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        p = int(name[1:])
        return GF2 if p == 2 else PrimeField(p)
    raise ValueError("unknown field %r (expected 'Q' or 'F<prime>')" % name)


class Matrix:
    """Dense exact matrix: row-major list of scalar lists over one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_columns(cls, field, cols, nrows):
        m = cls.zeros(field, nrows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ValueError("column length mismatch")
            for i, a in enumerate(c):
                m.rows[i][j] = a
        return m

    @classmethod
    def from_triplets(cls, field, nrows, ncols, entries):
        m = cls.zeros(field, nrows, ncols)
        for i, j, a in entries:
            m.rows[i][j] = field.add(m.rows[i][j], a)
        return m

    def column(self, j):
        return [r[j] for r in self.rows]

    def copy(self):
        return Matrix(self.field, self.rows, self.ncols)

    def transpose(self):
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def mul(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        out = Matrix.zeros(F, self.nrows, other.ncols)
        for i, row in enumerate(self.rows):
            orow = out.rows[i]
            for k, a in enumerate(row):
                if a == F.zero:
                    continue
                brow = other.rows[k]
                for j, b in enumerate(brow):
                    if b != F.zero:
                        orow[j] = F.add(orow[j], F.mul(a, b))
        return out

    def mul_vec(self, v):
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        F = self.field
        out = []
        for row in self.rows:
            s = F.zero
            for a, b in zip(row, v):
                if a != F.zero and b != F.zero:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return out

    def is_zero(self):
        z = self.field.zero
        return all(a == z for row in self.rows for a in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return "Matrix(%s, %dx%d)" % (self.field, self.nrows, self.ncols)


def _check_field(M):
    if not isinstance(M, Matrix):
        raise TypeError("expected Matrix, got %r" % type(M).__name__)


# ---------------------------------------------------------------- F2 packed

def _pack_rows(rows, ncols):
    """Pack 0/1 rows into a (nrows, nwords) uint64 array, little-endian bits."""
    nwords = (ncols + _WORD - 1) // _WORD
    a = np.zeros((len(rows), max(nwords, 1)), dtype=np.uint64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                a[i, j // _WORD] |= np.uint64(1) << np.uint64(j % _WORD)
    return a


def _unpack_row(word_row, ncols):
    out = []
    for j in range(ncols):
        out.append(int((int(word_row[j // _WORD]) >> (j % _WORD)) & 1))
    return out


def _gf2_eliminate(a, ncols, reduced=True, max_rank=None):
    """In-place row reduction of packed F2 rows; returns pivot column list."""
    m = a.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == m or (max_rank is not None and r == max_rank):
            break
        w, b = divmod(c, _WORD)
        bit = one << np.uint64(b)
        col = a[r:, w] & bit
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if reduced:
            hits = np.nonzero(a[:, w] & bit)[0]
            hits = hits[hits != r]
        else:
            hits = r + 1 + np.nonzero(a[r + 1:, w] & bit)[0]
        if hits.size:
            a[hits] ^= a[r]
        pivots.append(c)
        r += 1
    return pivots


def _use_packed(M):
    return (
        isinstance(M.field, PrimeField)
        and M.field.p == 2
        and M.nrows * M.ncols >= 4096
    )


# ------------------------------------------------------------------- public

def rref(M):
    """Reduced row echelon form.

    Returns (R, pivots) with R row-equivalent to M, pivots strictly
    increasing, rank = len(pivots).  Deterministic: first nonzero row
    below the cursor is the pivot.
    """
    _check_field(M)
    if _use_packed(M):
        a = _pack_rows(M.rows, M.ncols)
        pivots = _gf2_eliminate(a, M.ncols, reduced=True)
        rows = [_unpack_row(a[i], M.ncols) for i in range(M.nrows)]
        return Matrix(M.field, rows, M.ncols), pivots
    F = M.field
    rows = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if rows[i][c] != F.zero:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = F.inv(rows[r][c])
        if inv != F.one:
            rows[r] = [F.mul(inv, a) for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != F.zero:
                factor = rows[i][c]
                rows[i] = [F.sub(a, F.mul(factor, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(F, rows, n), pivots


def rank(M):
    """Rank of M; over big F2 matrices uses the packed non-reduced path."""
    _check_field(M)
    if _use_packed(M):
        a = _pack_rows(M.rows, M.ncols)
        return len(_gf2_eliminate(a, M.ncols, reduced=False))
    return len(rref(M)[1])


def kernel_basis(M):
    """Canonical basis of {v : Mv = 0}.

    Derived from rref: one vector per free column f (in increasing
    order), with v[f] = 1 and v[pivot_r] = -R[r][f].  Deterministic.
    """
    _check_field(M)
    R, pivots = rref(M)
    F = M.field
    pivot_set = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for r, p in enumerate(pivots):
            v[p] = F.neg(R.rows[r][f])
        basis.append(v)
    return basis


def coords_in_span(v, basis, field):
    """Coordinates of v in span(basis), or None if v is outside.

    Solves the column system exactly; free coordinates are set to zero
    so the answer is deterministic even for dependent spanning sets.
    """
    n = len(v)
    for b in basis:
        if len(b) != n:
            raise ValueError("dimension mismatch")
    if not basis:
        return [] if all(a == field.zero for a in v) else None
    aug = Matrix(
        field,
        [[basis[j][i] for j in range(len(basis))] + [v[i]] for i in range(n)],
        len(basis) + 1,
    )
    R, pivots = rref(aug)
    k = len(basis)
    if k in pivots:
        return None
    coords = [field.zero] * k
    for r, p in enumerate(pivots):
        coords[p] = R.rows[r][k]
    return coords


def in_span(v, basis, field):
    return coords_in_span(v, basis, field) is not None


def subspace_intersect(U, V, field, ambient=None):
    """Basis of span(U) ∩ span(V), canonical (rref rows of the result).

    Computed from the kernel of the stacked system [U^T | -V^T]: a
    kernel vector (a, b) witnesses sum a_i U_i = sum b_j V_j.
    """
    if ambient is None:
        if U:
            ambient = len(U[0])
        elif V:
            ambient = len(V[0])
        else:
            return []
    for w in list(U) + list(V):
        if len(w) != ambient:
            raise ValueError("dimension mismatch")
    if not U or not V:
        return []
    ku, kv = len(U), len(V)
    stacked = Matrix.zeros(field, ambient, ku + kv)
    for j in range(ku):
        for i in range(ambient):
            stacked.rows[i][j] = U[j][i]
    for j in range(kv):
        for i in range(ambient):
            stacked.rows[i][ku + j] = field.neg(V[j][i])
    vecs = []
    for kv_vec in kernel_basis(stacked):
        w = [field.zero] * ambient
        for j in range(ku):
            a = kv_vec[j]
            if a != field.zero:
                for i in range(ambient):
                    w[i] = field.add(w[i], field.mul(a, U[j][i]))
        vecs.append(w)
    if not vecs:
        return []
    R, pivots = rref(Matrix(field, vecs, ambient))
    return [R.rows[r] for r in range(len(pivots))]


def span_dim(vectors, field, ambient):
    if not vectors:
        return 0
    return rank(Matrix(field, vectors, ambient))


def span_contains(U, V, field, ambient):
    """True iff span(V) ⊆ span(U)."""
    if not V:
        return True
    base = rank(Matrix(field, U, ambient)) if U else 0
    both = rank(Matrix(field, list(U) + list(V), ambient))
    return both == base


# -------------------------------------------------------------- sparse rank

def sparse_rank(field, nrows, ncols, entries):
    """Rank of a sparse matrix given as (row, col, scalar) triplets.

    Peels singleton rows and columns first: a row (column) whose only
    nonzero entry sits at (i, j) contributes a pivot, and removing row
    i and column j is a pure deletion because the elimination step has
    nothing else to touch.  The surviving core keeps its original
    entries and goes through dense elimination (packed over F_2).
    """
    rows = {}
    cols = {}
    for i, j, a in entries:
        if a == field.zero:
            continue
        r = rows.setdefault(i, {})
        if j in r:
            a = field.add(r[j], a)
            if a == field.zero:
                del r[j]
                cols[j].discard(i)
                continue
        r[j] = a
        cols.setdefault(j, set()).add(i)
    rows = {i: r for i, r in rows.items() if r}
    cols = {j: c for j, c in cols.items() if c}

    rank_count = 0
    queue = [("r", i) for i in rows if len(rows[i]) == 1]
    queue += [("c", j) for j in cols if len(cols[j]) == 1]

    def delete(i, j):
        for jj in rows[i]:
            if jj != j:
                s = cols[jj]
                s.discard(i)
                if len(s) == 1:
                    queue.append(("c", jj))
                elif not s:
                    del cols[jj]
        for ii in cols[j]:
            if ii != i:
                r = rows[ii]
                del r[j]
                if len(r) == 1:
                    queue.append(("r", ii))
                elif not r:
                    del rows[ii]
        del rows[i]
        del cols[j]

    while queue:
        kind, idx = queue.pop()
        if kind == "r":
            if idx not in rows or len(rows[idx]) != 1:
                continue
            j = next(iter(rows[idx]))
            rank_count += 1
            delete(idx, j)
        else:
            if idx not in cols or len(cols[idx]) != 1:
                continue
            i = next(iter(cols[idx]))
            rank_count += 1
            delete(i, idx)

    if not rows:
        return rank_count
    col_index = {j: t for t, j in enumerate(sorted(cols))}
    if isinstance(field, PrimeField) and field.p == 2:
        nwords = (len(col_index) + _WORD - 1) // _WORD
        a = np.zeros((len(rows), max(nwords, 1)), dtype=np.uint64)
        for t, (i, r) in enumerate(sorted(rows.items())):
            for j in r:
                c = col_index[j]
                a[t, c // _WORD] |= np.uint64(1) << np.uint64(c % _WORD)
        return rank_count + len(_gf2_eliminate(a, len(col_index), reduced=False))
    core = Matrix.zeros(field, len(rows), len(col_index))
    for t, (i, r) in enumerate(sorted(rows.items())):
        for j, val in r.items():
            core.rows[t][col_index[j]] = val
    return rank_count + rank(core)
