"""Exact symbolic construction of infinitesimal Cherednik algebras and
related finite W-algebra data, with mechanical verification of their
defining identities at small rank.

Everything is computed over the rationals with exact arithmetic; all
verification checks are exact equalities, never numerical approximations.
"""

__version__ = "0.1.0"
