#!/usr/bin/env python
# Deciding whether every lift of the identity acts trivially on homology.
#
# Two rings that differ by a single cubic generator give opposite
# verdicts, and over Q a one-parameter family of lifts generates a
# subgroup of infinite order.

from fractions import Fraction

from koszulalg.exactalg import GF2, QQ
from koszulalg.polyring import PolyContext
from koszulalg.gring import make_artinian_quotient
from koszulalg.koszul import KoszulComplex
from koszulalg.dgmap import elementary_lift, induced_map, compose_induced
from koszulalg.analyze import check_identity_all

ctx = PolyContext(GF2, ["x", "y", "z", "w"])

base = ["x^2", "y^2", "z^2", "w^3", "y*z - x*w"]
K1 = KoszulComplex(make_artinian_quotient(ctx, base))
v1 = check_identity_all(K1)
print("ideal", base)
print("  every lift acts as the identity:", v1.overall)

K2 = KoszulComplex(make_artinian_quotient(ctx, base + ["y*w^2"]))
v2 = check_identity_all(K2)
print("ideal", base + ["y*w^2"])
print("  every lift acts as the identity:", v2.overall)
for w in v2.to_json()["witnesses"][:2]:
    print("  witness: e%d perturbed by %s fails on H_%d"
          % (w["generator"], w["class_label"], w["degree"]))

# over Q the same phenomenon has infinite order: no power of the induced
# map returns to the identity
ctxq = PolyContext(QQ, ["x", "y", "z"])
KQ = KoszulComplex(make_artinian_quotient(ctxq, ["x^2", "x*y", "y^2", "z^2"]))
z4 = KQ.element({(2,): KQ.ring.generator(2)})   # z e3
phi = elementary_lift(KQ, 0, z4.scale(Fraction(1)))
a = induced_map(phi, 2)
power = a
orders = []
for m in range(1, 11):
    orders.append(power.is_identity)
    power = compose_induced(power, a)
print()
print("H_2(phi)^m = id for m = 1..10:", orders)
