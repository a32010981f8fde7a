"""modsym: exact-arithmetic modular symbol algorithms.

Subpackages by topic:

- intlinalg: bigint/rational vectors and matrices, determinants, LLL,
  characteristic polynomials.
- symbols: SL_n modular symbols, the cocycle relation, reducing points and
  the recursive reduction to unimodular symbols.
- manin: unimodular symbols mod Gamma_0(N), the quotient presentation of
  the top cohomology, Hecke matrices and eigenvalue reports.
- symplectic: Sp_4 modular symbols, the isotropy pattern, the symplectic
  cocycle expansion and the recursive reduction with SL_2 base case.
- sharbly: the sharbly complex one degree below the top, Gamma-equivariant
  reducing points and the capped 1-sharbly reduction.
- cli: batch command line driver (`python -m modsym.cli`).
"""

from . import intlinalg, symbols, manin, symplectic, sharbly  # noqa: F401

__version__ = "0.1.0"
