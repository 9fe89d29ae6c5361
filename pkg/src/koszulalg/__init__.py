"""Koszul complexes of graded local rings as dg algebras.

Builds the Koszul complex on a minimal generating set of the maximal
ideal of an Artinian weighted-homogeneous quotient or a numerical
semigroup ring, computes the homology algebra exactly over F_p or Q,
and decides whether dg-algebra automorphisms act as the identity on
homology.
"""

from koszulalg.exactalg import GF2, QQ, PrimeField, RationalField, field_by_name

__all__ = [
    "GF2",
    "QQ",
    "PrimeField",
    "RationalField",
    "field_by_name",
]

__version__ = "0.1.0"
