"""Decision procedures and theorem verifiers on a Koszul complex.

check_identity_all decides whether every dg-algebra automorphism of
K(f) induces the identity on homology by testing the finite reduced
set of elementary lifts e_i -> e_i + z over a basis of H_1: over F_p
this set generates the image of the lift action up to homotopy; over
Q it still suffices because induced maps are unipotent with respect
to the filtration by internal degree, the lift action is a group
homomorphism, and a torsion unipotent matrix in characteristic zero
is the identity (fuzz-tested rather than trusted).

The m-adic filtration F^l K_i = m^(l-i) K_i induces F^l H_i; levels,
graded quotients, products on gr, the ring order formula
ord(R) = sup{l : F^l H_1 = H_1}, and the Poincare pairing of a
Gorenstein ring are all computed exactly.  run_suite bundles every
in-scope check into one machine-readable report.
"""

from __future__ import annotations

import itertools
import math
import random

from koszulalg import exactalg
from koszulalg.exactalg import Matrix
from koszulalg.gring import ArtinianQuotient
from koszulalg.koszul import (
    betti_table,
    class_of,
    differential,
    h1_from_relations,
    homology_basis,
    homology_product,
    product_vanishing,
    representative,
)
from koszulalg.dgmap import (
    compose_induced,
    elementary_lift,
    identity_lift,
    induced_map,
    lift_from_delta,
)


class IdentityVerdict:
    """Outcome of the all-automorphisms identity decision."""

    def __init__(self, overall, per_degree, witnesses):
        self.overall = overall
        self.per_degree = per_degree
        self.witnesses = witnesses

    def to_json(self):
        return {
            "overall": self.overall,
            "per_degree": {str(i): v for i, v in sorted(self.per_degree.items())},
            "witnesses": [
                {
                    "generator": w["generator"] + 1,
                    "class_label": w["class_label"],
                    "degree": w["degree"],
                    "difference": [str(c) for c in w["difference"]],
                }
                for w in self.witnesses
            ],
        }

    def __repr__(self):
        return "IdentityVerdict(overall=%s)" % self.overall


def _is_standard_graded(K):
    return isinstance(K.ring, ArtinianQuotient) and all(w == 1 for w in K.weights)


def check_identity_all(K, degrees=None):
    """Decide H(phi) = id for all lifts via n * dim H_1 elementary checks."""
    c = K.ring.codepth
    if degrees is None:
        degrees = list(range(c + 1))
    h1 = homology_basis(K, 1)
    per_degree = {i: True for i in degrees}
    witnesses = []
    for gen in range(K.n):
        for cls in h1.classes:
            phi = elementary_lift(K, gen, cls.element)
            for i in degrees:
                m = induced_map(phi, i)
                if m.is_identity:
                    continue
                per_degree[i] = False
                basis = homology_basis(phi.complex, i)
                ident = Matrix.identity(K.field, basis.dim)
                for col in range(basis.dim):
                    diff = [
                        K.field.sub(m.matrix.rows[r][col], ident.rows[r][col])
                        for r in range(basis.dim)
                    ]
                    if any(a != K.field.zero for a in diff):
                        witnesses.append({
                            "generator": gen,
                            "class_label": cls.label,
                            "degree": i,
                            "image_of": basis.classes[col].label,
                            "difference": diff,
                        })
                        break
    overall = all(per_degree.values())
    return IdentityVerdict(overall, per_degree, witnesses)


# ---------------------------------------------------------------- filtration

def _strand_power_vectors(K, i, d, a):
    """Vectors spanning the degree-d strand slice of m^a K_i."""
    offsets, total = K.strand_offsets(i, d)
    vecs = []
    for pos, S in enumerate(K.subsets[i]):
        block = K.ring.max_ideal_power_vectors(a, d - K.subset_weight(S))
        for v in block:
            w = [K.field.zero] * total
            for t, val in enumerate(v):
                w[offsets[pos] + t] = val
            vecs.append(w)
    return vecs


def _degree_filtration_span(K, i, d, l):
    """Span of (Z_{i,d} ∩ F^l K_{i,d}) + B_{i,d} as row vectors."""
    basis = homology_basis(K, i)
    data = basis.degree_data.get(d)
    if data is None:
        return [], []
    cycles = data.boundary_rows + data.rep_vectors
    if l - i <= 0:
        return cycles, data.boundary_rows
    filt = _strand_power_vectors(K, i, d, l - i)
    _, total = K.strand_offsets(i, d)
    inter = exactalg.subspace_intersect(cycles, filt, K.field, total)
    return inter + data.boundary_rows, data.boundary_rows


def filtration_dim(K, i, l):
    """dim F^l H_i, summed over internal degrees."""
    basis = homology_basis(K, i)
    if _is_standard_graded(K):
        return sum(1 for cls in basis.classes if cls.degree >= l)
    total = 0
    for d in sorted(basis.degree_data):
        data = basis.degree_data[d]
        if not data.rep_vectors:
            continue
        span, boundary = _degree_filtration_span(K, i, d, l)
        nb = exactalg.span_dim(boundary, K.field, len(span[0]) if span else 0)
        ns = exactalg.span_dim(span, K.field, len(span[0]) if span else 0)
        total += ns - nb
    return total


def filtration_level(K, i, coords):
    """Largest l with the class in F^l H_i; math.inf for the zero class."""
    basis = homology_basis(K, i)
    if len(coords) != basis.dim:
        raise ValueError("coordinate length mismatch")
    if all(a == K.field.zero for a in coords):
        return math.inf
    if _is_standard_graded(K):
        return min(
            cls.degree for cls, a in zip(basis.classes, coords) if a != K.field.zero)
    z = representative(K, i, coords)
    level = i
    components = {
        d: K.element_to_vector(i, d, part)
        for d, part in z.internal_components().items()
    }
    while True:
        l = level + 1
        ok = True
        for d, vec in components.items():
            span, _ = _degree_filtration_span(K, i, d, l)
            if exactalg.coords_in_span(vec, span, K.field) is None:
                ok = False
                break
        if not ok:
            return level
        level = l
        if level > max(components) + 1:
            raise RuntimeError("filtration level failed to terminate")


def ring_order(K):
    """sup{l : F^l H_1 = H_1}; infinity when H_1 = 0 (regular ring)."""
    h1 = homology_basis(K, 1)
    if h1.dim == 0:
        return math.inf
    levels = []
    for cls in h1.classes:
        unit = [
            K.field.one if t == cls.index else K.field.zero for t in range(h1.dim)]
        levels.append(filtration_level(K, 1, unit))
    return min(levels)


class GrAlgebra:
    """Associated graded homology: dims per (i, level) and gr products."""

    def __init__(self, K):
        self.complex = K
        c = K.ring.codepth
        self.dims = {}
        self.basis = {}
        for i in range(c + 1):
            hb = homology_basis(K, i)
            adapted = self._adapted_basis(K, i, hb)
            self.basis[i] = adapted
            for level, _ in adapted:
                key = (i, level)
                self.dims[key] = self.dims.get(key, 0) + 1
            total = sum(v for (ii, _), v in self.dims.items() if ii == i)
            if total != hb.dim:
                raise RuntimeError("filtration of H_%d is not exhaustive" % i)

    @staticmethod
    def _adapted_basis(K, i, hb):
        """Pairs (level, coords) forming a filtration-adapted basis of H_i."""
        out = []
        for d in hb.degrees():
            members = [cls for cls in hb.classes if cls.degree == d]
            if not members:
                continue
            # inside one internal degree, levels are finite and bounded
            chain = {}
            lmax = d + 1
            for cls in members:
                unit = [
                    K.field.one if t == cls.index else K.field.zero
                    for t in range(hb.dim)]
                lev = filtration_level(K, i, unit)
                chain.setdefault(lev, []).append(unit)
            if _is_standard_graded(K):
                for lev, vecs in chain.items():
                    out.extend((lev, v) for v in vecs)
                continue
            # general case: build F^l chain on the degree-d homology slice
            idxs = [cls.index for cls in members]
            dim_d = len(idxs)
            picked = []
            picked_rows = []
            for l in range(lmax, i - 1, -1):
                slice_vectors = _gr_slice_vectors(K, i, d, l, idxs)
                for v in slice_vectors:
                    if exactalg.coords_in_span(v, picked_rows, K.field) is None:
                        full = [K.field.zero] * hb.dim
                        for t, idx in enumerate(idxs):
                            full[idx] = v[t]
                        picked.append((l, full))
                        picked_rows.append(v)
                if len(picked) == dim_d:
                    break
            out.extend(picked)
        out.sort(key=lambda p: p[0])
        return out

    def dim(self, i, l):
        return self.dims.get((i, l), 0)

    def levels(self, i):
        return sorted(l for (ii, l) in self.dims if ii == i)

    def gr_product(self, i, a_entry, j, b_entry):
        """Product of gr-classes: (level, coords) x (level, coords)."""
        K = self.complex
        la, va = a_entry
        lb, vb = b_entry
        prod = homology_product(K, i, va, j, vb)
        if all(c == K.field.zero for c in prod):
            return (la + lb, prod, True)
        lev = filtration_level(K, i + j, prod)
        if lev < la + lb:
            raise RuntimeError("filtration is not multiplicative on these classes")
        # the gr product is zero exactly when the product sits deeper
        return (la + lb, prod, lev > la + lb)

    def positive_products_vanish(self):
        """True iff all products of positive-homological-degree gr classes die in gr."""
        c = self.complex.ring.codepth
        for i in range(1, c + 1):
            for j in range(i, c + 1):
                if i + j > self.complex.n:
                    continue
                for a_entry in self.basis.get(i, []):
                    for b_entry in self.basis.get(j, []):
                        _, _, vanishes = self.gr_product(i, a_entry, j, b_entry)
                        if not vanishes:
                            return False
        return True

    def to_json(self):
        return {
            "dims": {
                "%d,%d" % (i, l): v for (i, l), v in sorted(self.dims.items())
            },
        }


def _gr_slice_vectors(K, i, d, l, idxs):
    """Coordinates (on the degree-d classes) spanning F^l of that slice."""
    basis = homology_basis(K, i)
    data = basis.degree_data[d]
    span, _ = _degree_filtration_span(K, i, d, l)
    out = []
    for v in span:
        sol = exactalg.coords_in_span(
            v, data.boundary_rows + data.rep_vectors, K.field)
        if sol is None:
            continue
        nb = len(data.boundary_rows)
        local = sol[nb:]
        if any(a != K.field.zero for a in local):
            out.append(local)
    if not out:
        return []
    red, pivots = exactalg.rref(Matrix(K.field, out, len(idxs)))
    return [red.rows[t] for t in range(len(pivots))]


def gr_homology(K):
    return GrAlgebra(K)


def gr_induced_identity(K, phi):
    """Check H(phi) - id strictly raises filtration level on every class."""
    KK = phi.complex
    c = KK.ring.codepth
    report = {"per_class": [], "min_shift": None, "order": ring_order(KK)}
    ok = True
    for i in range(c + 1):
        basis = homology_basis(KK, i)
        if basis.dim == 0:
            continue
        m = induced_map(phi, i)
        for cls in basis.classes:
            unit = [
                KK.field.one if t == cls.index else KK.field.zero
                for t in range(basis.dim)]
            level = filtration_level(KK, i, unit)
            img = [m.matrix.rows[r][cls.index] for r in range(basis.dim)]
            diff = [KK.field.sub(a, b) for a, b in zip(img, unit)]
            diff_level = filtration_level(KK, i, diff)
            shift = diff_level - level if diff_level != math.inf else math.inf
            report["per_class"].append({
                "degree": i,
                "label": cls.label,
                "level": level,
                "difference_level": diff_level,
                "shift": shift,
            })
            if shift != math.inf:
                if report["min_shift"] is None or shift < report["min_shift"]:
                    report["min_shift"] = shift
            if diff_level != math.inf and diff_level < level + 1:
                ok = False
    return ok, report


def poincare_pairing(K, i):
    """Pairing H_i x H_{c-i} -> H_c; perfect needs dim H_c = 1 and full rank."""
    c = K.ring.codepth
    top = homology_basis(K, c)
    hi = homology_basis(K, i)
    hj = homology_basis(K, c - i)
    if top.dim != 1:
        return {"matrix": None, "is_perfect": False, "dim_top": top.dim}
    rows = []
    for a in range(hi.dim):
        ea = [K.field.one if t == a else K.field.zero for t in range(hi.dim)]
        row = []
        for b in range(hj.dim):
            eb = [K.field.one if t == b else K.field.zero for t in range(hj.dim)]
            row.append(homology_product(K, i, ea, c - i, eb)[0])
        rows.append(row)
    if hi.dim == 0 or hj.dim == 0:
        perfect = hi.dim == hj.dim
        return {"matrix": Matrix(K.field, [], 0) if not rows else None,
                "is_perfect": perfect, "dim_top": 1}
    m = Matrix(K.field, rows, hj.dim)
    perfect = hi.dim == hj.dim and exactalg.rank(m) == hi.dim
    return {"matrix": m, "is_perfect": perfect, "dim_top": 1}


# -------------------------------------------------------------------- fuzzing

def random_h1_cycle(K, rng):
    """Random combination of H_1 representatives (possibly zero)."""
    h1 = homology_basis(K, 1)
    F = K.field
    z = K.zero_element()
    for cls in h1.classes:
        c = _random_scalar(F, rng)
        if c != F.zero:
            z = z + cls.element.scale(c)
    return z


def random_boundary(K, i, rng, max_tries=8):
    """d of a random element of K_{i+1} drawn from recorded strata."""
    basis = homology_basis(K, i + 1) if i + 1 <= K.n else None
    if basis is None:
        return K.zero_element()
    degrees = sorted(basis.degree_data)
    w = K.zero_element()
    for _ in range(max_tries):
        if not degrees:
            break
        d = rng.choice(degrees)
        elems = K.strand_basis_elements(i + 1, d)
        if not elems:
            continue
        u = rng.choice(elems)
        c = _random_scalar(K.field, rng)
        if c != K.field.zero:
            w = w + u.scale(c)
    return differential(w)


def _random_scalar(field, rng):
    if field.characteristic == 0:
        return field.from_int(rng.randint(-3, 3))
    return field.from_int(rng.randrange(field.characteristic))


def random_elementary_lift(K, rng, with_boundary=False):
    """Elementary lift at a random index by a random H_1 cycle."""
    i = rng.randrange(K.n)
    z = random_h1_cycle(K, rng)
    if with_boundary:
        z = z + random_boundary(K, 1, rng)
    return elementary_lift(K, i, z), i, z


def random_lift(K, rng, with_boundary=True):
    """General lift: identity plus random cycle perturbations of several columns."""
    delta = {}
    for i in range(K.n):
        if rng.random() < 0.6:
            z = random_h1_cycle(K, rng)
            if with_boundary and rng.random() < 0.5:
                z = z + random_boundary(K, 1, rng)
            if not z.is_zero():
                delta[i] = z
    return lift_from_delta(K, delta)


# ---------------------------------------------------------------------- suite

def _detect_complete_intersection(K):
    """H(f) exterior on H_1: binomial dims and surjective wedge powers."""
    c = K.ring.codepth
    h1 = homology_basis(K, 1)
    for i in range(c + 1):
        if homology_basis(K, i).dim != math.comb(h1.dim, i):
            return False
    for i in range(2, min(c, h1.dim) + 1):
        hi = homology_basis(K, i)
        vectors = []
        for combo in itertools.combinations(range(h1.dim), i):
            coords = None
            for t in combo:
                unit = [
                    K.field.one if s == t else K.field.zero for s in range(h1.dim)]
                if coords is None:
                    coords = (1, unit)
                else:
                    deg, cur = coords
                    coords = (deg + 1, homology_product(K, deg, cur, 1, unit))
            vectors.append(coords[1])
        if vectors and exactalg.span_dim(vectors, K.field, hi.dim) != hi.dim:
            return False
    return True


def run_suite(K, seed=0, samples=12):
    """Machine-readable report of every in-scope theorem check."""
    rng = random.Random(seed)
    F = K.field
    c = K.ring.codepth
    report = {}
    report["ring"] = repr(K.ring)
    report["betti"] = betti_table(K).to_json()

    products = {}
    for i in range(1, c + 1):
        for j in range(i, c + 1):
            if i + j <= K.n:
                products["(%d,%d)" % (i, j)] = product_vanishing(K, i, j)
    report["products"] = products

    report["complete_intersection"] = _detect_complete_intersection(K)

    verdict = check_identity_all(K)
    report["identity"] = verdict.to_json()

    # group law / abelian / exponent p on sampled elementary pairs
    group_law = True
    abelian = True
    exponent_p = True if F.characteristic > 0 else None
    h1 = homology_basis(K, 1)
    degrees = list(range(c + 1))
    sampled_maps = {i: [] for i in degrees}
    for _ in range(samples):
        phi1, i1, z1 = random_elementary_lift(K, rng)
        phi2, i2, z2 = random_elementary_lift(K, rng)
        if i1 == i2:
            sum_lift = lift_from_delta(K, {i1: z1 + z2})
        else:
            sum_lift = lift_from_delta(K, {i1: z1, i2: z2})
        for i in degrees:
            a = induced_map(phi1, i)
            b = induced_map(phi2, i)
            sm = induced_map(sum_lift, i)
            if compose_induced(a, b).matrix != sm.matrix:
                group_law = False
            if compose_induced(a, b).matrix != compose_induced(b, a).matrix:
                abelian = False
            sampled_maps[i].append(a)
            if F.characteristic > 0 and not a.is_identity:
                power = a
                for _ in range(F.characteristic - 1):
                    power = compose_induced(power, a)
                if not power.is_identity:
                    exponent_p = False
    report["group_law"] = group_law
    report["abelian"] = abelian
    report["exponent_p"] = exponent_p

    gr_ok = True
    for gen in range(K.n):
        for cls in h1.classes:
            phi = elementary_lift(K, gen, cls.element)
            ok, _ = gr_induced_identity(K, phi)
            if not ok:
                gr_ok = False
    report["gr_identity"] = gr_ok

    pairing_perfect = True
    top_dim = homology_basis(K, c).dim
    for i in range(c + 1):
        info = poincare_pairing(K, i)
        if not info["is_perfect"]:
            pairing_perfect = False
    report["gorenstein"] = {"is_pd_algebra": pairing_perfect and top_dim == 1}

    if report["gorenstein"]["is_pd_algebra"]:
        duality = True
        for _ in range(max(4, samples // 3)):
            phi = random_lift(K, rng)
            flags = {i: induced_map(phi, i).is_identity for i in degrees}
            for i in degrees:
                if flags[i] != flags[c - i]:
                    duality = False
        report["duality_propagation"] = duality
    else:
        report["duality_propagation"] = None

    order = ring_order(K)
    report["order"] = "infinity" if order == math.inf else order

    if isinstance(K.ring, ArtinianQuotient):
        rel = h1_from_relations(K)
        report["h1_relations_consistent"] = bool(
            rel["all_cycles"] and rel["minimal"])
    else:
        report["h1_relations_consistent"] = None
    return report


def slow_suite(K, threads=None):
    """Dims-only report for rings too large to materialize homology bases.

    Everything is read off strand ranks: for a standard graded ring the
    filtration of H_i by F^l is the filtration by internal degree, so
    F^l H_i = H_i iff no class lives below degree l, and F^l H_i = 0 iff
    none lives at degree l or above.  The identity conclusion per degree
    uses the level-shift bound: H(phi) - id raises filtration level by
    ord(R) - 1, so if min_degree + ord(R) - 1 > max_degree the difference
    lands in a vanishing filtration step and H_i(phi) = id for every lift.
    """
    if not _is_standard_graded(K):
        raise ValueError("the scaled suite requires a standard graded quotient ring")
    bt = betti_table(K, rank_only=True, threads=threads)
    report = {"ring": repr(K.ring), "betti": bt.to_json()}
    col_degrees = {}
    for (i, j), _ in bt.entries.items():
        col_degrees.setdefault(i, []).append(i + j)
    h1_degrees = sorted(col_degrees.get(1, []))
    order = h1_degrees[0] if h1_degrees else math.inf
    report["order"] = "infinity" if order == math.inf else order
    filtration = {}
    identity = {}
    for i in range(1, bt.pdim + 1):
        degs = col_degrees.get(i)
        if not degs:
            continue
        dmin, dmax = min(degs), max(degs)
        filtration[str(i)] = {
            "full_level": dmin,
            "vanishing_level": dmax + 1,
        }
        identity[str(i)] = bool(
            order != math.inf and dmin + order - 1 >= dmax + 1)
    report["filtration"] = filtration
    report["identity_by_filtration"] = identity
    return report
