"""Learning with errors over cyclic division algebras.

Modules:
  base_ring       arithmetic in O_K/q with coefficient and slot representations
  field_tower     degree-d extension L/K in the split slot model
  cyclic_algebra  the natural order Lambda_q, left-regular matrices, block multiplication
  sampler         seeded discrete Gaussian and uniform sampling
  clwe_core       LWE samples, normal form, invertibility statistics, difference sets
  pke             compact public-key encryption with exact residual accounting
  params_registry parameter packs, validation, modulus splitting searches
  bench           wall-time and operation-count comparison against ring/module baselines
  cli             command line interface and wire format
"""

__version__ = "0.1.0"
