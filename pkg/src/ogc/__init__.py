"""Exact GF(2) data on the mod-2 cohomology of oriented Grassmannians.

The characteristic subring ``C = W2 / (q_{n-k+1}, ..., q_n)``, the anomalous
module ``K`` (first Koszul homology), their presentations, ``Ext^1_C(K, C)``
and the explicit relation families among the q's.
"""

__version__ = "0.1.0"
ENGINE_VERSION = "1"
