"""skelcollar: exact-arithmetic toolkit relating torus-action skeleta of
cotangent bundles of projective space to line and rank-2 bundles on collars
of local surfaces.

Subpackages are organized by subject:

* :mod:`skelcollar.exact`     -- rationals, Laurent polynomials, exact linear algebra
* :mod:`skelcollar.toric`     -- lattice cones, quotient singularities, resolutions
* :mod:`skelcollar.skeleton`  -- chart atlas, torus action, stable manifolds
* :mod:`skelcollar.potential` -- Hamiltonian potential of the circle action
* :mod:`skelcollar.birmaps`   -- Segre-style birational maps between products
* :mod:`skelcollar.bundles`   -- line/rank-2 bundles on the local surface and its collar
* :mod:`skelcollar.deform`    -- extension classes and one-parameter deformations
* :mod:`skelcollar.duality`   -- the component-to-bundle correspondence and its checks
* :mod:`skelcollar.cli`       -- command line surface
"""

__version__ = "0.1.0"
