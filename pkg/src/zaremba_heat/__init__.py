"""Small-time heat-content asymptotics for mixed Dirichlet/Robin problems.

Modules
-------
specfun, numerics
    Special functions and quadrature/series/fitting utilities.
corner, identities
    The corner constant ``c(gamma)`` and a registry of verified identities.
wedge_kernel
    Half-plane heat content with a Dirichlet/Neumann junction.
invariants
    Closed-form coefficient predictions for planar domains.
model1d
    Half-line model problems of the boundary-layer construction.
heat_fd, fitting
    Finite-difference simulation, coefficient extraction and comparison.
cli
    The ``zhl`` command-line tool.
"""

__version__ = "0.1.0"
