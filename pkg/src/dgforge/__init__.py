"""dg-forge: exact computational algebra for differential graded rings.

Subpackages cover exact linear algebra over QQ/GF(p), finite-dimensional
dg-algebras and their homology, graded (Laurent) polynomial dg-rings,
dg-modules (socle, essentiality, uniform dimension), dg-ideal calculus
(radicals, annihilators, singular ideals), and Ore localisation with the
extended differential.
"""

__version__ = "0.1.0"
