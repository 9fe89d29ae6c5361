"""Multivariate polynomials over an exact field with positive weights.

Monomials are plain exponent tuples.  The term order compares weighted
degree first and breaks ties by graded reverse lexicographic order on
the raw exponents (a "lex" tie-break variant exists so that order
independence of dimension counts can be tested).  Includes a parser
for the text grammar used everywhere (ring spec files, lift files,
printed cycles), Buchberger's algorithm with the coprime-pair
criterion and degree-ordered pair selection, normal forms, and
enumeration of standard monomials by weighted degree.

Only weighted-homogeneous ideals are supported; buchberger rejects
anything else, because homology is computed strand by strand and
non-homogeneous ideals would break the grading.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from koszulalg.exactalg import Field


class PolyParseError(ValueError):
    """Parse failure with the 0-based offset of the offending character."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class PolyContext:
    """Variable names, weights, coefficient field and term order."""

    def __init__(self, field, variables, weights=None, order="grevlex"):
        if not isinstance(field, Field):
            raise TypeError("field must be a Field descriptor")
        variables = list(variables)
        if not variables:
            raise ValueError("need at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if weights is None:
            weights = [1] * len(variables)
        weights = list(weights)
        if len(weights) != len(variables):
            raise ValueError("one weight per variable")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        if order not in ("grevlex", "lex"):
            raise ValueError("order must be 'grevlex' or 'lex'")
        self.field = field
        self.variables = variables
        self.weights = weights
        self.order = order
        self.nvars = len(variables)
        self.var_index = {v: i for i, v in enumerate(variables)}

    def wdeg(self, mono):
        return sum(w * e for w, e in zip(self.weights, mono))

    def key(self, mono):
        """Sort key: bigger key = bigger monomial in the term order."""
        if self.order == "grevlex":
            return (self.wdeg(mono), sum(mono), tuple(-e for e in reversed(mono)))
        return tuple(mono)

    def monomial(self, mono, coeff=None):
        if coeff is None:
            coeff = self.field.one
        return Polynomial(self, [(tuple(mono), coeff)])

    def var(self, i):
        mono = [0] * self.nvars
        mono[i] = 1
        return self.monomial(mono)

    def constant(self, c):
        return Polynomial(self, [((0,) * self.nvars, c)])

    def zero(self):
        return Polynomial(self, [])

    def one(self):
        return self.constant(self.field.one)

    def parse(self, text):
        return parse_poly(text, self)

    def __eq__(self, other):
        return (
            isinstance(other, PolyContext)
            and self.field == other.field
            and self.variables == other.variables
            and self.weights == other.weights
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, tuple(self.variables), tuple(self.weights), self.order))

    def __repr__(self):
        return "PolyContext(%s, vars=%s, weights=%s, %s)" % (
            self.field, self.variables, self.weights, self.order)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a, b):
    """True iff monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))

def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Polynomial:
    """Canonical polynomial: nonzero terms, strictly decreasing in the order."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        combined = {}
        zero = ctx.field.zero
        for mono, coeff in terms:
            if coeff == zero:
                continue
            mono = tuple(mono)
            if mono in combined:
                c = ctx.field.add(combined[mono], coeff)
                if c == zero:
                    del combined[mono]
                else:
                    combined[mono] = c
            else:
                combined[mono] = coeff
        self.ctx = ctx
        self.terms = tuple(
            sorted(combined.items(), key=lambda t: ctx.key(t[0]), reverse=True))

    def is_zero(self):
        return not self.terms

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    def leading_coeff(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def monic(self):
        if not self.terms:
            return self
        inv = self.ctx.field.inv(self.terms[0][1])
        if inv == self.ctx.field.one:
            return self
        return self.scale(inv)

    def scale(self, c):
        F = self.ctx.field
        return Polynomial(self.ctx, [(m, F.mul(c, a)) for m, a in self.terms])

    def weighted_degree(self):
        """Common weighted degree if homogeneous (0 for the zero poly), else None."""
        if not self.terms:
            return 0
        degs = {self.ctx.wdeg(m) for m, _ in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return self.weighted_degree() is not None

    def homogeneous_components(self):
        """Map weighted degree -> homogeneous part."""
        parts = {}
        for m, a in self.terms:
            parts.setdefault(self.ctx.wdeg(m), []).append((m, a))
        return {d: Polynomial(self.ctx, ts) for d, ts in sorted(parts.items())}

    def __add__(self, other):
        self._check(other)
        return Polynomial(self.ctx, self.terms + other.terms)

    def __sub__(self, other):
        self._check(other)
        F = self.ctx.field
        return Polynomial(
            self.ctx, self.terms + tuple((m, F.neg(a)) for m, a in other.terms))

    def __neg__(self):
        F = self.ctx.field
        return Polynomial(self.ctx, [(m, F.neg(a)) for m, a in self.terms])

    def __mul__(self, other):
        self._check(other)
        F = self.ctx.field
        out = []
        for m1, a1 in self.terms:
            for m2, a2 in other.terms:
                out.append((mono_mul(m1, m2), F.mul(a1, a2)))
        return Polynomial(self.ctx, out)

    def term_mul(self, mono, coeff):
        F = self.ctx.field
        return Polynomial(
            self.ctx, [(mono_mul(m, mono), F.mul(a, coeff)) for m, a in self.terms])

    def __pow__(self, k):
        result = self.ctx.one()
        for _ in range(k):
            result = result * self
        return result

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("polynomial context mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ctx.field
        pieces = []
        for t, (mono, coeff) in enumerate(self.terms):
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(self.ctx.variables[i])
                elif e > 1:
                    factors.append("%s^%d" % (self.ctx.variables[i], e))
            neg = False
            c = coeff
            if isinstance(c, Fraction) and c < 0:
                neg, c = True, -c
            body = _coeff_str(c)
            if factors and body == "1":
                body = "*".join(factors)
            elif factors:
                body = body + "*" + "*".join(factors)
            if t == 0:
                pieces.append("-" + body if neg else body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return "Poly(%s)" % self


def _coeff_str(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return "%d/%d" % (c.numerator, c.denominator)
    return str(c)


# --------------------------------------------------------------------- parse

def _split_word(word, ctx, pos):
    """Split a juxtaposed identifier chunk like "yz" into known variables.

    Longest-match with backtracking so names of different lengths
    coexist; returns the list of variable indices.
    """
    names = sorted(ctx.var_index, key=len, reverse=True)
    out = []

    def walk(s, off):
        if not s:
            return True
        for name in names:
            if s.startswith(name):
                out.append(ctx.var_index[name])
                if walk(s[len(name):], off + len(name)):
                    return True
                out.pop()
        return False

    if not walk(word, 0):
        raise PolyParseError("unknown variable in %r" % word, pos)
    return out


def parse_poly(text, ctx):
    """Parse the polynomial grammar: signed sums of terms.

    term = coefficient? ('*'? var ('^' nat)?)*, integer or a/b
    coefficients, whitespace ignored.  Juxtaposed variables ("yz")
    split by longest match.  Errors carry the character position.
    """
    F = ctx.field
    n = len(text)
    i = 0

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    def read_nat(i):
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            raise PolyParseError("expected a number", start)
        return int(text[start:i]), i

    def read_word(i):
        start = i
        while i < n and (text[i].isalnum() or text[i] == "_"):
            i += 1
        return text[start:i], i

    terms = []
    i = skip_ws(i)
    if i == n:
        raise PolyParseError("empty polynomial", 0)
    first = True
    while i < n:
        sign = 1
        i = skip_ws(i)
        if i < n and text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
        elif not first:
            raise PolyParseError("expected '+' or '-'", i)
        if i >= n:
            raise PolyParseError("dangling sign", i)
        first = False

        coeff = None
        if text[i].isdigit():
            num, i = read_nat(i)
            i2 = skip_ws(i)
            if i2 < n and text[i2] == "/":
                j = skip_ws(i2 + 1)
                if j >= n or not text[j].isdigit():
                    raise PolyParseError("expected denominator", j)
                den, i = read_nat(j)
                if den == 0:
                    raise PolyParseError("zero denominator", j)
                coeff = F.from_fraction(num, den)
            else:
                coeff = F.from_int(num)
        exponents = [0] * ctx.nvars
        saw_var = False
        while True:
            j = skip_ws(i)
            if j < n and text[j] == "*":
                j = skip_ws(j + 1)
                if j >= n:
                    raise PolyParseError("dangling '*'", j)
            elif j >= n or text[j] in "+-":
                i = j
                break
            if not (j < n and (text[j].isalpha() or text[j] == "_")):
                raise PolyParseError("expected a variable", j)
            word, j = read_word(j)
            indices = _split_word(word, ctx, j - len(word))
            k = skip_ws(j)
            if k < n and text[k] == "^":
                k = skip_ws(k + 1)
                if k >= n or not text[k].isdigit():
                    raise PolyParseError("malformed exponent", k)
                e, k = read_nat(k)
                exponents[indices[-1]] += e - 1
                for idx in indices:
                    exponents[idx] += 1
                i = k
            else:
                for idx in indices:
                    exponents[idx] += 1
                i = j
            saw_var = True
        if coeff is None:
            if not saw_var:
                raise PolyParseError("empty term", i)
            coeff = F.one
        if sign < 0:
            coeff = F.neg(coeff)
        terms.append((tuple(exponents), coeff))
    return Polynomial(ctx, terms)


# ----------------------------------------------------------------- division

def normal_form(p, gb):
    """Complete multivariate division remainder of p modulo gb.

    No term of the result is divisible by any leading monomial of the
    basis; the map is idempotent and k-linear.
    """
    if isinstance(gb, GroebnerBasis):
        if p.ctx != gb.ctx:
            raise ValueError("context mismatch")
        gens = gb.gens
    else:
        gens = list(gb)
    lms = [(g.leading_monomial(), g) for g in gens if not g.is_zero()]
    ctx = p.ctx
    F = ctx.field
    remainder = []
    work = p
    while not work.is_zero():
        mono, coeff = work.terms[0]
        hit = None
        for lm, g in lms:
            if mono_divides(lm, mono):
                hit = (lm, g)
                break
        if hit is None:
            remainder.append((mono, coeff))
            work = Polynomial(ctx, work.terms[1:])
        else:
            lm, g = hit
            factor = F.div(coeff, g.leading_coeff())
            work = work - g.term_mul(mono_div(mono, lm), factor)
    return Polynomial(ctx, remainder)


def s_polynomial(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    F = f.ctx.field
    a = f.term_mul(mono_div(lcm, lf), F.inv(f.leading_coeff()))
    b = g.term_mul(mono_div(lcm, lg), F.inv(g.leading_coeff()))
    return a - b


class GroebnerBasis:
    """Reduced Groebner basis: monic generators, mutually in normal form."""

    __slots__ = ("ctx", "gens")

    def __init__(self, ctx, gens):
        self.ctx = ctx
        self.gens = tuple(gens)

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.gens]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return "GroebnerBasis[%s]" % "; ".join(str(g) for g in self.gens)


def buchberger(gens):
    """Reduced Groebner basis of the ideal generated by gens.

    Weighted-homogeneous generators only.  S-pairs are processed in
    increasing weighted degree of their lcm (normal strategy) and
    pairs with coprime leading monomials are skipped.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("empty generator list requires a context; use GroebnerBasis(ctx, [])")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("context mismatch among generators")
        if not g.is_homogeneous():
            raise ValueError("non-homogeneous generator: %s" % g)

    basis = []
    pairs = []

    def push_pairs(t):
        lt = basis[t].leading_monomial()
        for s in range(t):
            ls = basis[s].leading_monomial()
            if mono_coprime(ls, lt):
                continue
            lcm = mono_lcm(ls, lt)
            heapq.heappush(pairs, (ctx.wdeg(lcm), s, t))

    for g in gens:
        basis.append(g.monic())
        push_pairs(len(basis) - 1)

    while pairs:
        _, s, t = heapq.heappop(pairs)
        rem = normal_form(s_polynomial(basis[s], basis[t]), basis)
        if rem.is_zero():
            continue
        basis.append(rem.monic())
        push_pairs(len(basis) - 1)

    # Minimalize: drop generators whose leading monomial another divides.
    keep = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lh = h.leading_monomial()
            if mono_divides(lh, lm) and (lh != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)

    # Inter-reduce to the unique reduced basis.
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1:]
            r = normal_form(keep[i], others).monic()
            if r != keep[i]:
                keep[i] = r
                changed = True
    keep.sort(key=lambda g: ctx.key(g.leading_monomial()))
    return GroebnerBasis(ctx, keep)


def monomials_of_weight(ctx, d):
    """All exponent tuples of weighted degree exactly d (unordered)."""
    out = []
    mono = [0] * ctx.nvars

    def walk(i, rem):
        if i == ctx.nvars - 1:
            w = ctx.weights[i]
            if rem % w == 0:
                mono[i] = rem // w
                out.append(tuple(mono))
                mono[i] = 0
            return
        w = ctx.weights[i]
        for e in range(rem // w + 1):
            mono[i] = e
            walk(i + 1, rem - e * w)
        mono[i] = 0

    if d >= 0:
        walk(0, d)
    return out


def standard_monomials(gb, d):
    """Monomials of weighted degree d outside LT(I), in decreasing term order.

    These are a k-basis of (P/I)_d.
    """
    ctx = gb.ctx
    lms = gb.leading_monomials()
    out = []
    for m in monomials_of_weight(ctx, d):
        if not any(mono_divides(lm, m) for lm in lms):
            out.append(m)
    out.sort(key=ctx.key, reverse=True)
    return out
