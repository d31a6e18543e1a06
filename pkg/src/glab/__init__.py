"""Exact-arithmetic verification kernels.

Subpackages:
  f2sym     symplectic spaces over F_p, transvections, theta characteristics
  spmod     matrix groups over Z/p^n, BFS closure, saturation certificates
  padic     fixed-precision towers over Q_p, Hensel lifting, square classes
  honda     Honda-system algebra for rank-p^4 biconnected group schemes
  points    fields of points and abelian conductor exponents
  genus2    the x-T Kummer map for genus-2 Jacobians over 2-adic fields
  rational  discriminants, favorable quintics, stem-field counting
  cli       command line front end emitting machine-readable reports
"""

__version__ = "0.1.0"
