"""The Koszul complex on the generators of m as a dg algebra.

K(f) is the exterior algebra over R on e_1..e_n with d(e_i) = x_i,
graded internally by (ring degree of the coefficient) + (sum of the
weights of the wedge factors).  The differential preserves internal
degree, so every computation happens strand by strand: the strand
(i, d) has one basis element per pair (subset S of size i, basis
element of R_{d - w(S)}).

Homology is computed per strand from exact kernels and column spans;
representatives complete the boundary space to the cycle space and
are deterministic.  Betti tables read off rank H_i(K)_{i+j}; a
rank-only path (sparse peeling plus packed F_2 elimination) serves
tables far beyond the sizes where kernel bases fit in memory.

Truncation: Artinian rings carry everything in internal degrees
d <= top_degree + sum(w_j).  For semigroup rings the strand in degree
d >= conductor + sum(g_j) is the Koszul complex on a sequence of
units of k (every R_{d-w(S)} is one-dimensional), hence exact; the
complex still asserts computed vanishing on that window instead of
trusting the argument blindly.
"""

from __future__ import annotations

import itertools
import threading

from koszulalg import exactalg
from koszulalg.exactalg import Matrix
from koszulalg.gring import ArtinianQuotient, RingElement, SemigroupRing


class TruncationError(RuntimeError):
    """A computation touched internal degrees beyond the truncation bound."""


class NotACycleError(ValueError):
    """class_of received an element with nonzero differential."""


class KoszulElement:
    """Map from index subsets S (sorted tuples) to nonzero RingElements."""

    __slots__ = ("complex", "data")

    def __init__(self, complex_, data):
        clean = {}
        for S, r in data.items():
            if not r.is_zero():
                clean[tuple(S)] = r
        self.complex = complex_
        self.data = clean

    def _check(self, other):
        if self.complex is not other.complex:
            raise ValueError("Koszul complex mismatch")

    def is_zero(self):
        return not self.data

    def homological_degree(self):
        """Common subset size, 0 for the zero element, None if mixed."""
        sizes = {len(S) for S in self.data}
        if not sizes:
            return 0
        if len(sizes) == 1:
            return sizes.pop()
        return None

    def internal_components(self):
        """Map internal degree -> homogeneous KoszulElement."""
        K = self.complex
        parts = {}
        for S, r in self.data.items():
            wS = K.subset_weight(S)
            for a, piece in r.homogeneous_components().items():
                bucket = parts.setdefault(a + wS, {})
                bucket[S] = bucket.get(S, K.ring.zero()) + piece
        return {d: KoszulElement(K, bucket) for d, bucket in sorted(parts.items())}

    def __add__(self, other):
        self._check(other)
        out = dict(self.data)
        for S, r in other.data.items():
            out[S] = out.get(S, self.complex.ring.zero()) + r
        return KoszulElement(self.complex, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.data)
        for S, r in other.data.items():
            out[S] = out.get(S, self.complex.ring.zero()) - r
        return KoszulElement(self.complex, out)

    def __neg__(self):
        return KoszulElement(self.complex, {S: -r for S, r in self.data.items()})

    def scale(self, c):
        return KoszulElement(
            self.complex, {S: r.scale(c) for S, r in self.data.items()})

    def coeff_mul(self, r):
        """Multiply by a ring element (degree-0 coefficient, no sign)."""
        return KoszulElement(
            self.complex, {S: r * v for S, v in self.data.items()})

    def __eq__(self, other):
        return (
            isinstance(other, KoszulElement)
            and self.complex is other.complex
            and self.data == other.data
        )

    def __str__(self):
        if not self.data:
            return "0"
        K = self.complex
        pieces = []
        for S in sorted(self.data, key=lambda S: (len(S), S)):
            r = self.data[S]
            wedge_str = "".join("e%d" % (j + 1) for j in S)
            if not S:
                pieces.append("(%s)" % r)
            else:
                pieces.append("(%s)*%s" % (r, wedge_str))
        return " + ".join(pieces)

    def __repr__(self):
        return "KoszulElement(%s)" % self


def _merge_sign(S, T):
    """Sign of sorting the concatenation S ++ T; 0 if they overlap."""
    inversions = 0
    for s in S:
        for t in T:
            if s == t:
                return 0
            if s > t:
                inversions += 1
    return -1 if inversions % 2 else 1


class _DegreeData:
    """Reduction data of one homology strand: boundaries and representatives."""

    __slots__ = ("boundary_rows", "rep_vectors", "class_indices")

    def __init__(self, boundary_rows, rep_vectors, class_indices):
        self.boundary_rows = boundary_rows
        self.rep_vectors = rep_vectors
        self.class_indices = class_indices


class HomologyClass:
    __slots__ = ("index", "degree", "vector", "element", "label")

    def __init__(self, index, degree, vector, element, label):
        self.index = index
        self.degree = degree
        self.vector = vector
        self.element = element
        self.label = label


class HomologyBasis:
    """Basis of H_i with per-degree reduction data for class_of."""

    def __init__(self, complex_, i, classes, degree_data):
        self.complex = complex_
        self.i = i
        self.classes = classes
        self.degree_data = degree_data
        self.dim = len(classes)

    def labels(self):
        return [c.label for c in self.classes]

    def degrees(self):
        return sorted({c.degree for c in self.classes})

    def dim_in_degree(self, d):
        return sum(1 for c in self.classes if c.degree == d)


class BettiTable:
    """Ranks of H_i(K)_{i+j} laid out column i, row j."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in entries.items() if v}
        self.pdim = max((i for i, _ in self.entries), default=0)
        self.regularity = max((j for _, j in self.entries), default=0)

    def rank(self, i, j):
        return self.entries.get((i, j), 0)

    def column_total(self, i):
        return sum(v for (c, _), v in self.entries.items() if c == i)

    def rows(self):
        out = {}
        for j in sorted({j for _, j in self.entries}):
            out[j] = [self.rank(i, j) for i in range(self.pdim + 1)]
        return out

    def to_json(self):
        return {
            "rows": {str(j): ranks for j, ranks in self.rows().items()},
            "pdim": self.pdim,
            "regularity": self.regularity,
        }

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __str__(self):
        cols = list(range(self.pdim + 1))
        header = [""] + [str(i) for i in cols]
        totals = ["total:"] + [str(self.column_total(i)) for i in cols]
        body = []
        for j, ranks in self.rows().items():
            body.append(
                ["%d:" % j] + [str(r) if r else "-" for r in ranks])
        table = [header, totals] + body
        widths = [max(len(row[c]) for row in table) for c in range(len(header))]
        lines = []
        for row in table:
            lines.append(" ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        return "\n".join(lines)


class KoszulComplex:
    """K(f) for the ring's minimal generators, truncated in internal degree."""

    def __init__(self, ring, sigma=0):
        self.ring = ring
        self.field = ring.field
        self.n = ring.ngens
        self.weights = list(ring.weights)
        self.sigma = sigma
        if isinstance(ring, SemigroupRing):
            self.exactness_floor = ring.conductor + sum(ring.weights)
            self.truncation = self.exactness_floor + sigma
        else:
            self.exactness_floor = None
            self.truncation = ring.top_degree + sum(ring.weights)
        self.subsets = [
            tuple(itertools.combinations(range(self.n), i))
            for i in range(self.n + 1)
        ]
        self.subset_index = [
            {S: t for t, S in enumerate(level)} for level in self.subsets
        ]
        self._diff_cache = {}
        self._diff_order = []
        self._diff_lock = threading.Lock()
        self._homology = {}
        self._extensions = {}
        self._degree_data = {}

    # ------------------------------------------------------------ structure

    def subset_weight(self, S):
        return sum(self.weights[j] for j in S)

    def strand_blocks(self, i, d):
        """Per-subset block dimensions of the strand (i, d)."""
        if i < 0 or i > self.n:
            return []
        return [self.ring.dim(d - self.subset_weight(S)) for S in self.subsets[i]]

    def strand_dim(self, i, d):
        return sum(self.strand_blocks(i, d))

    def strand_offsets(self, i, d):
        offsets = []
        total = 0
        for b in self.strand_blocks(i, d):
            offsets.append(total)
            total += b
        return offsets, total

    def diff_triplets(self, i, d):
        """Sparse triplets of d_{i,d}: strand (i, d) -> strand (i-1, d)."""
        key = (i, d)
        with self._diff_lock:
            if key in self._diff_cache:
                return self._diff_cache[key]
        src_offsets, _ = self.strand_offsets(i, d)
        dst_offsets, _ = self.strand_offsets(i - 1, d)
        out = []
        for s_pos, S in enumerate(self.subsets[i]):
            src_dim = self.ring.dim(d - self.subset_weight(S))
            if src_dim == 0:
                continue
            col0 = src_offsets[s_pos]
            for l, j in enumerate(S):
                T = tuple(x for x in S if x != j)
                row0 = dst_offsets[self.subset_index[i - 1][T]]
                sign = 1 if l % 2 == 0 else -1
                for r, c, coeff in self.ring.mult_triplets(j, d - self.subset_weight(S)):
                    if sign < 0:
                        coeff = self.field.neg(coeff)
                    out.append((row0 + r, col0 + c, coeff))
        with self._diff_lock:
            self._diff_cache[key] = out
            self._diff_order.append(key)
            while len(self._diff_order) > 8:
                self._diff_cache.pop(self._diff_order.pop(0), None)
        return out

    def diff_matrix(self, i, d):
        _, src = self.strand_offsets(i, d)
        _, dst = self.strand_offsets(i - 1, d)
        return Matrix.from_triplets(self.field, dst, src, self.diff_triplets(i, d))

    def element_to_vector(self, i, d, u):
        """Strand coordinates of the (i, d)-homogeneous part of u."""
        offsets, total = self.strand_offsets(i, d)
        vec = [self.field.zero] * total
        for s_pos, S in enumerate(self.subsets[i]):
            r = u.data.get(S)
            if r is None:
                continue
            coords = self.ring.element_coords(r, d - self.subset_weight(S))
            for t, c in enumerate(coords):
                if c != self.field.zero:
                    vec[offsets[s_pos] + t] = c
        return vec

    def vector_to_element(self, i, d, vec):
        offsets, total = self.strand_offsets(i, d)
        if len(vec) != total:
            raise ValueError("strand coordinate length mismatch")
        data = {}
        for s_pos, S in enumerate(self.subsets[i]):
            b = self.ring.dim(d - self.subset_weight(S))
            if b == 0:
                continue
            coords = vec[offsets[s_pos]:offsets[s_pos] + b]
            r = self.ring.element_from_coords(d - self.subset_weight(S), coords)
            if not r.is_zero():
                data[S] = r
        return KoszulElement(self, data)

    def strand_basis_elements(self, i, d):
        """All basis elements of the strand (i, d) as KoszulElements."""
        out = []
        for S in self.subsets[i]:
            for r in self.ring.basis_of_degree(d - self.subset_weight(S)):
                out.append(KoszulElement(self, {S: r}))
        return out

    def element(self, data):
        """Build an element from {subset: RingElement}."""
        return KoszulElement(self, data)

    def generator_element(self, j):
        return KoszulElement(self, {(j,): self.ring.one()})

    def zero_element(self):
        return KoszulElement(self, {})

    def extended(self, extra_sigma):
        """Same complex with a larger semigroup truncation window.

        Extensions are memoized and share one table, so repeated lifts
        with the same degree shift reuse cached homology.
        """
        if extra_sigma <= self.sigma or self.exactness_floor is None:
            return self
        cache = self._extensions
        if extra_sigma not in cache:
            bigger = KoszulComplex(self.ring, extra_sigma)
            bigger._extensions = cache
            cache[extra_sigma] = bigger
        return cache[extra_sigma]

    def adopt(self, u):
        """Rebind an element from a complex over the same ring."""
        if u.complex is self:
            return u
        if u.complex.ring is not self.ring:
            raise ValueError("cannot adopt an element over a different ring")
        return KoszulElement(self, dict(u.data))

    def __repr__(self):
        return "KoszulComplex(%r, D=%d)" % (self.ring, self.truncation)


# ------------------------------------------------------------- dg operations

def differential(u):
    """d(r e_S) = sum_l (-1)^(l-1) (r x_{j_l}) e_{S \\ j_l}, 1-based l."""
    K = u.complex
    out = {}
    for S, r in u.data.items():
        for l, j in enumerate(S):
            T = tuple(x for x in S if x != j)
            term = r * K.ring.generator(j)
            if l % 2 == 1:
                term = -term
            if T in out:
                out[T] = out[T] + term
            else:
                out[T] = term
    return KoszulElement(K, out)


def wedge(u, v):
    """Bilinear extension of e_S ∧ e_T = sign(S,T) e_{S∪T}."""
    u._check(v)
    K = u.complex
    out = {}
    for S, r in u.data.items():
        for T, s in v.data.items():
            sign = _merge_sign(S, T)
            if sign == 0:
                continue
            U = tuple(sorted(S + T))
            term = r * s
            if sign < 0:
                term = -term
            if U in out:
                out[U] = out[U] + term
            else:
                out[U] = term
    return KoszulElement(K, out)


# ------------------------------------------------------------------ homology

def _complete_to_cycles(field, boundary_rows, kernel_vectors, ambient):
    """Pick kernel vectors extending the boundary row space, deterministically."""
    state = [list(r) for r in boundary_rows]
    state_matrix, pivots = exactalg.rref(Matrix(field, state, ambient)) if state else (None, [])
    rows = [state_matrix.rows[t] for t in range(len(pivots))] if state else []
    pivot_cols = list(pivots)
    reps = []
    for v in kernel_vectors:
        w = list(v)
        # reduce against current rref rows
        for row, p in zip(rows, pivot_cols):
            if w[p] != field.zero:
                c = w[p]
                w = [field.sub(a, field.mul(c, b)) for a, b in zip(w, row)]
        lead = next((t for t, a in enumerate(w) if a != field.zero), None)
        if lead is None:
            continue
        inv = field.inv(w[lead])
        w = [field.mul(inv, a) for a in w]
        # keep rref shape: eliminate the new pivot from earlier rows
        for t in range(len(rows)):
            if rows[t][lead] != field.zero:
                c = rows[t][lead]
                rows[t] = [field.sub(a, field.mul(c, b)) for a, b in zip(rows[t], w)]
        insert_at = 0
        while insert_at < len(pivot_cols) and pivot_cols[insert_at] < lead:
            insert_at += 1
        rows.insert(insert_at, w)
        pivot_cols.insert(insert_at, lead)
        reps.append(list(v))
    return reps


def _boundary_rows(K, i, d):
    """Canonical basis (rref rows) of the boundary space B_{i,d}."""
    if i + 1 > K.n:
        return []
    _, src = K.strand_offsets(i + 1, d)
    _, dst = K.strand_offsets(i, d)
    if src == 0 or dst == 0:
        return []
    m = K.diff_matrix(i + 1, d)
    cols = [m.column(j) for j in range(m.ncols)]
    red, pivots = exactalg.rref(Matrix(K.field, cols, dst))
    return [red.rows[t] for t in range(len(pivots))]


def homology_basis(K, i):
    """Representatives and reduction data for H_i(K), all internal degrees."""
    if not (0 <= i <= K.n):
        raise ValueError("homological degree out of range")
    if i in K._homology:
        return K._homology[i]
    classes = []
    degree_data = {}
    for d in range(K.truncation + 1):
        _, total = K.strand_offsets(i, d)
        if total == 0:
            continue
        if i == 0:
            kernel = [
                [K.field.one if t == s else K.field.zero for t in range(total)]
                for s in range(total)
            ]
        else:
            kernel = exactalg.kernel_basis(K.diff_matrix(i, d))
        boundary = _boundary_rows(K, i, d)
        if not kernel:
            if boundary:
                degree_data[d] = _DegreeData(boundary, [], [])
            continue
        reps = _complete_to_cycles(K.field, boundary, kernel, total)
        indices = []
        for v in reps:
            idx = len(classes)
            label = "h%d.%d" % (i, idx + 1)
            classes.append(
                HomologyClass(idx, d, v, K.vector_to_element(i, d, v), label))
            indices.append(idx)
        degree_data[d] = _DegreeData(boundary, reps, indices)
        if (
            K.exactness_floor is not None
            and d >= K.exactness_floor
            and reps
        ):
            raise TruncationError(
                "nonzero H_%d in degree %d inside the vanishing window" % (i, d))
    basis = HomologyBasis(K, i, classes, degree_data)
    K._homology[i] = basis
    return basis


def class_of(K, i, z):
    """Coordinates of the cycle z in the basis of H_i; verifies d(z) = 0."""
    deg = z.homological_degree()
    if not z.is_zero() and deg != i:
        raise ValueError("element lies in homological degree %s, not %d" % (deg, i))
    if not differential(z).is_zero():
        raise NotACycleError("class_of received a non-cycle")
    basis = homology_basis(K, i)
    coords = [K.field.zero] * basis.dim
    for d, part in z.internal_components().items():
        if d > K.truncation:
            # strands past the exactness floor are Koszul complexes on
            # units, so cycles there bound and the class component is zero
            if K.exactness_floor is not None and d >= K.exactness_floor:
                continue
            raise TruncationError(
                "cycle component in degree %d exceeds truncation %d"
                % (d, K.truncation))
        vec = K.element_to_vector(i, d, part)
        data = basis.degree_data.get(d)
        if data is None:
            # no cycles recorded in this degree: the component must be zero
            if any(a != K.field.zero for a in vec):
                raise NotACycleError("unexpected cycle outside recorded strata")
            continue
        span = data.boundary_rows + data.rep_vectors
        sol = exactalg.coords_in_span(vec, span, K.field)
        if sol is None:
            raise NotACycleError("cycle does not reduce against its stratum")
        nb = len(data.boundary_rows)
        for t, idx in enumerate(data.class_indices):
            coords[idx] = K.field.add(coords[idx], sol[nb + t])
    return coords


def representative(K, i, coords):
    """The linear combination of basis representatives with given coordinates."""
    basis = homology_basis(K, i)
    if len(coords) != basis.dim:
        raise ValueError("coordinate length mismatch")
    out = K.zero_element()
    for c, cls in zip(coords, basis.classes):
        if c != K.field.zero:
            out = out + cls.element.scale(c)
    return out


def homology_product(K, i, a_coords, j, b_coords):
    """Coordinates in H_{i+j} of the product of two classes."""
    if i + j > K.n:
        return [K.field.zero] * homology_basis(K, i + j).dim
    za = representative(K, i, a_coords)
    zb = representative(K, j, b_coords)
    return class_of(K, i + j, wedge(za, zb))


def product_vanishing(K, i, j):
    """True iff every product of basis classes H_i x H_j is zero."""
    hi = homology_basis(K, i)
    hj = homology_basis(K, j)
    if i + j > K.n:
        return True
    zero = [K.field.zero] * homology_basis(K, i + j).dim
    for a in range(hi.dim):
        ea = [K.field.one if t == a else K.field.zero for t in range(hi.dim)]
        for b in range(hj.dim):
            eb = [K.field.one if t == b else K.field.zero for t in range(hj.dim)]
            if homology_product(K, i, ea, j, eb) != zero:
                return False
    return True


def betti_table(K, rank_only=False, threads=None):
    """Betti table: entry (i, j) is rank H_i(K)_{i+j}.

    rank_only computes strand ranks by sparse peeling plus packed
    elimination and never materializes kernels; required at the scale
    of the largest example, identical answers elsewhere.  threads
    bounds worker parallelism over strands; the result is merged in a
    fixed order and does not depend on it.
    """
    entries = {}
    if rank_only:
        top = K.truncation
        ranks = {}
        tasks = []
        for d in range(top + 1):
            for i in range(1, K.n + 1):
                _, src = K.strand_offsets(i, d)
                _, dst = K.strand_offsets(i - 1, d)
                if src == 0 or dst == 0:
                    ranks[(i, d)] = 0
                else:
                    tasks.append((i, d, dst, src))

        def strand_rank(task):
            i, d, dst, src = task
            return exactalg.sparse_rank(K.field, dst, src, K.diff_triplets(i, d))

        if threads and threads > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for task, r in zip(tasks, pool.map(strand_rank, tasks)):
                    ranks[(task[0], task[1])] = r
        else:
            for task in tasks:
                ranks[(task[0], task[1])] = strand_rank(task)
        for i in range(K.n + 1):
            for d in range(top + 1):
                _, total = K.strand_offsets(i, d)
                if total == 0:
                    continue
                r_in = ranks.get((i, d), 0)
                r_out = ranks.get((i + 1, d), 0)
                h = total - r_in - r_out
                if h:
                    entries[(i, d - i)] = h
    else:
        for i in range(K.n + 1):
            basis = homology_basis(K, i)
            for cls in basis.classes:
                key = (i, cls.degree - i)
                entries[key] = entries.get(key, 0) + 1
    return BettiTable(entries)


def h1_from_relations(K):
    """Cycles z_q = sum_j a_qj e_j from the ideal generators; basis check.

    Each minimal generator q = sum_j a_j x_j of I yields the cycle
    sum_j (image of a_j) e_j; the report verifies the cycle condition,
    linear independence in H_1, and that they span (their count equals
    dim H_1 exactly when the given generating set is minimal).
    """
    ring = K.ring
    if not isinstance(ring, ArtinianQuotient):
        raise ValueError("relations are explicit only for quotient rings")
    ctx = ring.ctx
    cycles = []
    for q in ring.ideal_gens:
        parts = [ctx.zero() for _ in range(K.n)]
        for mono, coeff in q.terms:
            j = next(t for t, e in enumerate(mono) if e > 0)
            lowered = tuple(e - 1 if t == j else e for t, e in enumerate(mono))
            parts[j] = parts[j] + ctx.monomial(lowered, coeff)
        data = {}
        for j, p in enumerate(parts):
            data[(j,)] = RingElement(ring, ring._nf(p))
        cycles.append(KoszulElement(K, data))
    basis = homology_basis(K, 1)
    all_cycles = all(differential(z).is_zero() for z in cycles)
    coords = [class_of(K, 1, z) for z in cycles]
    mat = Matrix(K.field, coords, basis.dim) if coords else None
    independent = (
        exactalg.rank(mat) == len(cycles) if coords else True)
    spans = len(cycles) == basis.dim
    return {
        "cycles": cycles,
        "coordinates": coords,
        "all_cycles": all_cycles,
        "independent": independent,
        "spans_h1": spans,
        "minimal": independent and spans,
        "dim_h1": basis.dim,
    }
