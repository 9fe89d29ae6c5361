#!/usr/bin/env python
"""Levels, order, and the associated graded homology algebra."""

from koszulalg.exactalg import GF2
from koszulalg.polyring import PolyContext
from koszulalg.gring import make_artinian_quotient
from koszulalg.koszul import KoszulComplex, homology_basis
from koszulalg.analyze import (
    filtration_dim,
    filtration_level,
    gr_homology,
    ring_order,
    slow_suite,
)

# weighted variables deg x = 2, deg y = 3; relations x^3 + y^2 and y^3
ctx = PolyContext(GF2, ["x", "y"], [2, 3])
R = make_artinian_quotient(ctx, ["x^3 + y^2", "y^3"])
K = KoszulComplex(R)

print(R, " order =", ring_order(K))
b1 = homology_basis(K, 1)
for cls in b1.classes:
    unit = [K.field.one if t == cls.index else K.field.zero for t in range(b1.dim)]
    print("  %s = %s  level %d" % (cls.label, cls.element,
                                   filtration_level(K, 1, unit)))

# H_2 is one-dimensional and sits deep in the filtration
print("dim F^7 H_2 =", filtration_dim(K, 2, 7), " (= dim H_2)")
print("dim F^8 H_2 =", filtration_dim(K, 2, 8))

g = gr_homology(K)
print("gr dims:", g.to_json()["dims"])
print("products of positive gr classes vanish:", g.positive_products_vanish())
print()

# a standard graded ring where the filtration certifies rigidity of H_2:
# every class lives in level 4 and F^5 H_2 = 0, while ord(R) = 2, so any
# lift moves classes by at least one level, i.e. H_2(phi) = id always.
ctx2 = PolyContext(GF2, ["x", "y", "z", "w"])
R2 = make_artinian_quotient(ctx2, ["x^2", "y^2", "z^2", "w^2", "y*z - x*w"])
K2 = KoszulComplex(R2)
print(R2)
print("dim H_2 =", homology_basis(K2, 2).dim)
print("dim F^4 H_2 =", filtration_dim(K2, 2, 4))
print("dim F^5 H_2 =", filtration_dim(K2, 2, 5))

report = slow_suite(K2)
print("rank-only conclusions:", report["filtration"]["2"],
      "identity certified:", report["identity_by_filtration"]["2"])
