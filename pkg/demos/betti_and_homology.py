"""
Betti tables and homology classes of three small rings
=======================================================

"""

from koszulalg.exactalg import GF2, QQ
from koszulalg.polyring import PolyContext
from koszulalg.gring import make_artinian_quotient, make_semigroup_ring
from koszulalg.koszul import KoszulComplex, betti_table, homology_basis

# Q[x,y,z]/(x^2, xy, y^2, z^2): four quadrics, codepth 3
ctx = PolyContext(QQ, ["x", "y", "z"])
R = make_artinian_quotient(ctx, ["x^2", "x*y", "y^2", "z^2"])
K = KoszulComplex(R)
print(R)
print(betti_table(K))
print()

for i in range(K.n + 1):
    basis = homology_basis(K, i)
    print("H_%d: dim %d" % (i, basis.dim))
    for cls in basis.classes:
        print("   %s (degree %d):  %s" % (cls.label, cls.degree, cls.element))
print()

# the numerical semigroup ring F2[t^6, t^10, t^14, t^15]
S = make_semigroup_ring(GF2, [6, 10, 14, 15])
KS = KoszulComplex(S)
print(S, " conductor =", S.conductor)
print(betti_table(KS))
print()

# a complete intersection in weighted variables: deg x = 2, deg y = 3
ctxw = PolyContext(GF2, ["x", "y"], [2, 3])
W = make_artinian_quotient(ctxw, ["x^3 + y^2", "y^3"])
KW = KoszulComplex(W)
print(W)
for i in range(3):
    basis = homology_basis(KW, i)
    for cls in basis.classes:
        print("   H_%d %s (degree %d):  %s" % (i, cls.label, cls.degree, cls.element))
