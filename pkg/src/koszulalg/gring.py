"""Graded rings behind one interface: Artinian quotients and semigroup rings.

An ArtinianQuotient is k[x_1..x_n]/I for a weighted-homogeneous ideal
I with Artinian quotient; its degree-d basis is the standard monomials
of a Groebner basis.  A SemigroupRing is k[t^{g_1},...,t^{g_n}] inside
k[t], graded by t-degree, with dim R_d <= 1 decided by a coin-problem
sieve.  Both expose per-degree bases, multiplication-by-generator
matrices in sparse triplet form, and degree slices of powers of the
maximal ideal.

Construction validates minimality of the chosen generators of the
maximal ideal (ker f inside mF): for quotients every variable must
survive into R, for semigroups no generator may be representable by
the others.  All caches are size-capped, insertion-order evicted and
lock-protected; ring handles are immutable and shareable.
"""

from __future__ import annotations

import math
import threading

from koszulalg import exactalg
from koszulalg.exactalg import Matrix
from koszulalg.polyring import (
    GroebnerBasis,
    PolyContext,
    Polynomial,
    buchberger,
    normal_form,
    parse_poly,
    standard_monomials,
)


class RingConstructionError(ValueError):
    """Rejected ring presentation (non-Artinian, non-minimal, ...)."""


class RingElement:
    """Element of a GradedRing, canonical per backend.

    Artinian payload: a normal-form Polynomial.  Semigroup payload: a
    dict {t-exponent: scalar} supported on semigroup members.
    """

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("ring mismatch")

    def is_zero(self):
        return self.ring._is_zero(self.data)

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring._add(self.data, other.data))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring._sub(self.data, other.data))

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.data))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring._mul(self.data, other.data))

    def scale(self, c):
        return RingElement(self.ring, self.ring._scale(self.data, c))

    def homogeneous_components(self):
        """Map weighted degree -> homogeneous RingElement, zero part omitted."""
        return {
            d: RingElement(self.ring, part)
            for d, part in self.ring._components(self.data).items()
        }

    def degree(self):
        """Weighted degree if homogeneous (0 for zero), else None."""
        comps = self.ring._components(self.data)
        if not comps:
            return 0
        if len(comps) == 1:
            return next(iter(comps))
        return None

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring is other.ring
            and self.ring._eq(self.data, other.data)
        )

    def __hash__(self):
        return hash((id(self.ring), self.ring._hash_data(self.data)))

    def __str__(self):
        return self.ring._str_data(self.data)

    def __repr__(self):
        return "RingElement(%s)" % self


class _Cache:
    """Insertion-order-evicting memo dict guarded by a lock."""

    def __init__(self, maxsize):
        self.maxsize = maxsize
        self.data = {}
        self.lock = threading.Lock()

    def get_or_compute(self, key, fn):
        with self.lock:
            if key in self.data:
                return self.data[key]
        value = fn()
        with self.lock:
            if key not in self.data:
                while len(self.data) >= self.maxsize:
                    self.data.pop(next(iter(self.data)))
                self.data[key] = value
            return self.data[key]


class GradedRing:
    """Common interface; see ArtinianQuotient and SemigroupRing."""

    # subclasses set: field, ngens, weights, gen_names, depth,
    # top_degree (int, or None meaning infinite)

    def dim(self, d):
        raise NotImplementedError

    def basis_of_degree(self, d):
        raise NotImplementedError

    def mult_triplets(self, i, d):
        """Multiplication by generator i as (row, col, coeff) triplets R_d -> R_{d+w_i}."""
        raise NotImplementedError

    def generator(self, i):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def element_coords(self, elem, d):
        """Coordinates of the degree-d component of elem in basis_of_degree(d)."""
        raise NotImplementedError

    def element_from_coords(self, d, coords):
        raise NotImplementedError

    def max_ideal_power_vectors(self, a, d):
        """Basis (coordinate vectors in basis_of_degree(d)) of the degree-d slice of m^a."""
        raise NotImplementedError

    def parse_element(self, text):
        raise NotImplementedError

    @property
    def codepth(self):
        """edim - depth: index of the top nonvanishing Koszul homology."""
        return self.ngens - self.depth


class ArtinianQuotient(GradedRing):
    """k[x_1..x_n]/I presented by a reduced Groebner basis."""

    def __init__(self, ctx, ideal_gens):
        for g in ideal_gens:
            if g.ctx != ctx:
                raise RingConstructionError("ideal generator not in the given context")
            if not g.is_homogeneous():
                raise RingConstructionError(
                    "ideal generator %s is not weighted-homogeneous" % g)
        self.ctx = ctx
        self.field = ctx.field
        self.ngens = ctx.nvars
        self.weights = list(ctx.weights)
        self.gen_names = list(ctx.variables)
        self.depth = 0
        if ideal_gens:
            self.gb = buchberger(ideal_gens)
        else:
            self.gb = GroebnerBasis(ctx, [])
        self.ideal_gens = tuple(ideal_gens)

        # Artinian iff every variable has a pure-power leading monomial.
        bounds = [None] * self.ngens
        for lm in self.gb.leading_monomials():
            support = [i for i, e in enumerate(lm) if e > 0]
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or lm[i] < bounds[i]:
                    bounds[i] = lm[i]
        missing = [self.gen_names[i] for i in range(self.ngens) if bounds[i] is None]
        if missing:
            raise RingConstructionError(
                "quotient is not Artinian: no pure power of %s in the initial ideal"
                % ", ".join(missing))

        # Minimality of x_1..x_n as generators of m: each x_i survives in R_{w_i}.
        for i in range(self.ngens):
            mono = tuple(1 if j == i else 0 for j in range(self.ngens))
            if mono not in standard_monomials(self.gb, self.weights[i]):
                raise RingConstructionError(
                    "generator %s is not minimal (reducible modulo the ideal)"
                    % self.gen_names[i])

        self._dims = {}
        self._basis_cache = _Cache(64)
        self._mult_cache = _Cache(48)
        self._mpower_cache = _Cache(4096)
        self._lock = threading.Lock()

        bound = sum((b - 1) * w for b, w in zip(bounds, self.weights))
        top = 0
        for d in range(bound + 1):
            if self.dim(d) > 0:
                top = d
        self.top_degree = top
        for d in range(top + 1, top + max(self.weights) + 1):
            if self.dim(d) != 0:
                raise RingConstructionError("Artinian verification failed")

    # ------------------------------------------------------------- queries

    def dim(self, d):
        if d < 0:
            return 0
        with self._lock:
            if d in self._dims:
                return self._dims[d]
        value = len(self._monomial_basis(d))
        with self._lock:
            self._dims[d] = value
        return value

    def _monomial_basis(self, d):
        return self._basis_cache.get_or_compute(
            d, lambda: tuple(standard_monomials(self.gb, d)))

    def basis_of_degree(self, d):
        if d < 0:
            return []
        return [
            RingElement(self, self.ctx.monomial(m)) for m in self._monomial_basis(d)
        ]

    def _basis_index(self, d):
        return {m: t for t, m in enumerate(self._monomial_basis(d))}

    def mult_triplets(self, i, d):
        def compute():
            src = self._monomial_basis(d)
            dst_index = self._basis_index(d + self.weights[i])
            var = tuple(1 if j == i else 0 for j in range(self.ngens))
            out = []
            for col, m in enumerate(src):
                prod = self.ctx.monomial(tuple(a + b for a, b in zip(m, var)))
                nf = normal_form(prod, self.gb)
                for mono, coeff in nf.terms:
                    out.append((dst_index[mono], col, coeff))
            return out

        if d < 0:
            return []
        return self._mult_cache.get_or_compute((i, d), compute)

    def generator(self, i):
        return RingElement(self, normal_form(self.ctx.var(i), self.gb))

    def zero(self):
        return RingElement(self, self.ctx.zero())

    def one(self):
        return RingElement(self, self.ctx.one())

    def element_coords(self, elem, d):
        index = self._basis_index(d)
        coords = [self.field.zero] * len(index)
        for mono, coeff in elem.data.terms:
            if self.ctx.wdeg(mono) == d:
                coords[index[mono]] = coeff
        return coords

    def element_from_coords(self, d, coords):
        basis = self._monomial_basis(d)
        if len(coords) != len(basis):
            raise ValueError("coordinate length mismatch")
        return RingElement(
            self, Polynomial(self.ctx, list(zip(basis, coords))))

    def max_ideal_power_vectors(self, a, d):
        if d < 0:
            return []
        if a <= 0:
            return [
                [self.field.one if t == s else self.field.zero for t in range(self.dim(d))]
                for s in range(self.dim(d))
            ]
        if all(w == 1 for w in self.weights):
            # Standard grading: every standard monomial of degree d >= a
            # is a product of a variables and a monomial, so (m^a)_d is
            # all of R_d (and zero below degree a).
            return self.max_ideal_power_vectors(0, d) if d >= a else []

        def compute():
            vectors = []
            for i in range(self.ngens):
                w = self.weights[i]
                lower = self.max_ideal_power_vectors(a - 1, d - w)
                if not lower:
                    continue
                trip = self.mult_triplets(i, d - w)
                for v in lower:
                    img = [self.field.zero] * self.dim(d)
                    for r, c, coeff in trip:
                        if v[c] != self.field.zero:
                            img[r] = self.field.add(img[r], self.field.mul(coeff, v[c]))
                    vectors.append(img)
            if not vectors:
                return []
            red, pivots = exactalg.rref(Matrix(self.field, vectors, self.dim(d)))
            return [red.rows[r] for r in range(len(pivots))]

        return self._mpower_cache.get_or_compute((a, d), compute)

    def parse_element(self, text):
        return RingElement(self, normal_form(self.ctx.parse(text), self.gb))

    # ----------------------------------------------------- payload arithmetic

    def _nf(self, p):
        return normal_form(p, self.gb)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return self._nf(a * b)

    def _scale(self, a, c):
        return a.scale(c)

    def _is_zero(self, a):
        return a.is_zero()

    def _eq(self, a, b):
        return a == b

    def _hash_data(self, a):
        return hash(a)

    def _components(self, a):
        return a.homogeneous_components()

    def _str_data(self, a):
        return str(a)

    def __repr__(self):
        return "ArtinianQuotient(%s[%s]/(%s))" % (
            self.field, ",".join(self.gen_names),
            ", ".join(str(g) for g in self.ideal_gens))


class SemigroupRing(GradedRing):
    """k[t^{g_1},...,t^{g_n}] graded by t-degree."""

    def __init__(self, field, generators):
        generators = list(generators)
        if not generators or any(g < 1 for g in generators):
            raise RingConstructionError("semigroup generators must be positive")
        if len(set(generators)) != len(generators):
            raise RingConstructionError("duplicate semigroup generator")
        if math.gcd(*generators) != 1 if len(generators) > 1 else generators[0] != 1:
            raise RingConstructionError(
                "gcd of semigroup generators must be 1 (finite conductor)")
        self.field = field
        self.generators = generators
        self.ngens = len(generators)
        self.weights = list(generators)
        self.gen_names = ["t^%d" % g for g in generators]
        self.depth = 1
        self.top_degree = None

        bound = max(generators) * min(generators) + max(generators) + 2
        member = self._sieve(generators, bound)
        for idx, g in enumerate(generators):
            others = [h for h in generators if h != g]
            if others and self._sieve(others, g + 1)[g]:
                raise RingConstructionError(
                    "generator %d is redundant (representable by the others)" % g)
        frobenius = -1
        for d in range(bound - 1, -1, -1):
            if not member[d]:
                frobenius = d
                break
        self.frobenius = frobenius
        self.conductor = frobenius + 1
        self._member = member
        self._member_bound = bound
        self._tctx = PolyContext(field, ["t"], [1])
        self._mpower_cache = _Cache(64)
        self._mpower_lock = threading.Lock()

    @staticmethod
    def _sieve(gens, bound):
        member = [False] * (bound + 1)
        member[0] = True
        for d in range(1, bound + 1):
            for g in gens:
                if d >= g and member[d - g]:
                    member[d] = True
                    break
        return member

    def is_member(self, d):
        if d < 0:
            return False
        if d >= self.conductor:
            return True
        return self._member[d]

    def dim(self, d):
        return 1 if d >= 0 and self.is_member(d) else 0

    def basis_of_degree(self, d):
        if self.dim(d) == 0:
            return []
        return [RingElement(self, {d: self.field.one})]

    def mult_triplets(self, i, d):
        if self.dim(d) == 0 or self.dim(d + self.generators[i]) == 0:
            return []
        return [(0, 0, self.field.one)]

    def generator(self, i):
        return RingElement(self, {self.generators[i]: self.field.one})

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return RingElement(self, {0: self.field.one})

    def element_coords(self, elem, d):
        if self.dim(d) == 0:
            return []
        c = elem.data.get(d, self.field.zero)
        return [c]

    def element_from_coords(self, d, coords):
        if len(coords) != self.dim(d):
            raise ValueError("coordinate length mismatch")
        if not coords or coords[0] == self.field.zero:
            return self.zero()
        return RingElement(self, {d: coords[0]})

    def _power_membership(self, a, bound):
        """Boolean array: degree d in m^a (sums of >= a generators plus a member)."""
        key = (a, bound)

        def compute():
            if a <= 0:
                return [self.is_member(d) for d in range(bound + 1)]
            prev = self._power_membership(a - 1, bound)
            cur = [False] * (bound + 1)
            for d in range(bound + 1):
                for g in self.generators:
                    if d >= g and prev[d - g]:
                        cur[d] = True
                        break
            return cur

        return self._mpower_cache.get_or_compute(key, compute)

    def max_ideal_power_vectors(self, a, d):
        if self.dim(d) == 0:
            return []
        if a <= 0:
            return [[self.field.one]]
        bound = max(d, self.conductor + a * max(self.generators))
        if self._power_membership(a, bound)[d]:
            return [[self.field.one]]
        return []

    def parse_element(self, text):
        poly = self._tctx.parse(text)
        data = {}
        for (e,), coeff in poly.terms:
            if not self.is_member(e):
                raise RingConstructionError(
                    "t^%d is not in the semigroup generated by %s"
                    % (e, self.generators))
            data[e] = coeff
        return RingElement(self, data)

    # ----------------------------------------------------- payload arithmetic

    def _add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            s = self.field.add(out.get(e, self.field.zero), c)
            if s == self.field.zero:
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _neg(self, a):
        return {e: self.field.neg(c) for e, c in a.items()}

    def _mul(self, a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = self.field.add(out.get(e, self.field.zero), self.field.mul(c1, c2))
                if s == self.field.zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def _scale(self, a, c):
        if c == self.field.zero:
            return {}
        return {e: self.field.mul(c, v) for e, v in a.items()}

    def _is_zero(self, a):
        return not a

    def _eq(self, a, b):
        return a == b

    def _hash_data(self, a):
        return hash(tuple(sorted(a.items())))

    def _components(self, a):
        return {e: {e: c} for e, c in sorted(a.items())}

    def _str_data(self, a):
        if not a:
            return "0"
        terms = [((e,), c) for e, c in a.items()]
        return str(Polynomial(self._tctx, terms))

    def __repr__(self):
        return "SemigroupRing(%s[%s])" % (
            self.field, ",".join("t^%d" % g for g in self.generators))


# ------------------------------------------------------------ contract names

def make_artinian_quotient(ctx, ideal_gens):
    gens = [parse_poly(g, ctx) if isinstance(g, str) else g for g in ideal_gens]
    return ArtinianQuotient(ctx, gens)


def make_semigroup_ring(field, generators):
    return SemigroupRing(field, generators)


def basis_of_degree(ring, d):
    return ring.basis_of_degree(d)


def ring_multiply(a, b):
    return a * b


def max_ideal_power_basis(ring, a, d):
    return ring.max_ideal_power_vectors(a, d)
