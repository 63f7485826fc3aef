"""Exact engine for cyclic cochains of finite-dimensional cyclic algebras.

Submodules: ``signs`` (scalars, Koszul calculus), ``words`` (cyclic words
and cochain tensors), ``algebra`` (cyclic structures and bar differentials),
``linalg``/``homology`` (exact elimination and graded homology), ``dibl``
(boundary, product, coproduct, twisting), ``ribbon`` (graph pairings and
the pushforward twist element), ``green`` (homotopy-operator pipeline),
``models`` (built-in structures), ``fileio``/``cli`` (formats, front end).
"""

__version__ = "0.1.0"
