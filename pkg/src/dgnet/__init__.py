"""dgnet: exact computer algebra for nets of differential graded algebras.

Layers:

- ``scalar`` / ``linalg`` / ``complexes``: exact graded linear algebra over
  the Gaussian rationals (cochain complexes, cohomology, quasi-isomorphisms,
  tensor / internal hom / shift, the interval object).
- ``freealg``: presented differential graded algebras with canonical
  commutation relations and PBW normal-form rewriting.
- ``modules`` / ``nets``: left modules, change-of-monoid and change-of-net
  adjunctions, net representations, homotopy predicates, path objects.
- ``maxwell``: the 1-form gauge field and scalar field models on the flat
  Lorentz cylinder (mode-spline truncations, Green operators, Poisson
  structure, two-point function, quasi-free functional, GNS module, constant
  net representation) -- the numeric layer of the package.
- ``cli``: batch front-end (build, verify suites, export canonical JSON).
"""

__version__ = "0.1.0"
