"""Exact verification toolkit for tensor powers of spin representations.

Subpackage map:

- :mod:`spincheck.scalar`   -- the field Q(v) with q = v**4, q-integers,
  exact evaluation points and radical extensions.
- :mod:`spincheck.linalg`   -- sparse matrices and incremental row reduction
  over any exact coefficient field.
- :mod:`spincheck.clifford` -- Clifford algebras on bitmask monomials,
  slotwise embeddings, quadratic orthogonal-type elements, and the
  commuting family built from paired generators.
- :mod:`spincheck.weights`  -- type B/D root data, spin module labels,
  the tensor decomposition rule, branching diagrams, quantum dimensions
  and quantum traces.
- :mod:`spincheck.qspin`    -- quantum-group generator actions on spin
  modules and their tensor powers, plus the defining-relation checker.
- :mod:`spincheck.invariant` -- the explicit invariant operator on a twofold
  tensor product, its spectrum, coideal-type relations, and centralizer
  dimension comparisons.
- :mod:`spincheck.cli`      -- the ``spincheck`` command line front end.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
