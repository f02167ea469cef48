"""Exact enumeration of regular maps through the spectral curve of the random matrix model.

Modules
-------
exact        rational polynomials, power series, rational functions, Sturm isolation
appell       Appell polynomial families and their identities
stringpoly   string polynomials phi_m, psi_m and the unwinding identities
curve        the spectral curve, turning points, conservation-law residual
genfun       generating functions e_g, f_g, h_g as exact series
discrete     finite-n orthogonal-polynomial recurrences from Hankel determinants
counts       map-count tables, residue extraction, dart-matching oracle
asymptotics  critical data, large-order laws, recurrence constants
cli          command-line front end
"""
__version__ = "0.1.0"
__all__ = ["__version__"]
