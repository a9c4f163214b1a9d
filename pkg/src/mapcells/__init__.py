"""mapcells: exact map combinatorics on surfaces plus Voronoi-cell Monte Carlo.

Subpackages cover the quadratic recurrence for map-counting constants, exact
truncated-series and differential-algebra identity checks, brute-force map
enumeration oracles, the tree-to-quadrangulation bijections, and a large-scale
sampler measuring nearest-neighbour cell masses of random quadrangulations.
"""

__version__ = "0.1.0"
