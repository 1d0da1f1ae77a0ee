"""Ordered forests, the shadow functor to surjections, and exact linear checks.

Submodules: ``forest`` (objects and axioms), ``morphism`` (grafting and
reduction), ``category`` (composition and hom-sets), ``shadow``
(surjections), ``linalg`` (exact rational algebra), ``normalization``
(semisimplicial modules), ``kan`` (pushforward along the shadow),
``checks`` (verification sweeps), ``records`` and ``cli``.
"""

__version__ = "0.1.0"
