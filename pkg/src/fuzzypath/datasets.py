"""Built-in instances.

The seven-node robust shortest-path network of Hasuike (2013): each edge's
reported ``(mean, variance)`` pair becomes ``(c, sigma**2)``.  Six height
sets are provided, keyed by regime name.
"""

from __future__ import annotations

import math

from .network import Network

__all__ = ["HASUIKE_EDGES", "HASUIKE_HEIGHTS", "HASUIKE_PATHS", "hasuike_network"]

# (source, target, core, variance)
HASUIKE_EDGES = (
    ("A", "B", 15.0, 5.0),
    ("A", "C", 18.0, 2.0),
    ("B", "D", 19.0, 8.0),
    ("B", "E", 33.0, 21.0),
    ("C", "D", 18.0, 2.0),
    ("C", "F", 35.0, 10.0),
    ("D", "E", 17.0, 3.0),
    ("D", "F", 10.0, 2.0),
    ("E", "G", 12.0, 4.0),
    ("F", "G", 18.0, 5.0),
)

# heights per edge, in HASUIKE_EDGES order
HASUIKE_HEIGHTS = {
    "high": (0.89, 0.97, 0.88, 0.66, 0.92, 0.94, 0.90, 0.79, 0.80, 0.85),
    "moderate": (0.51, 0.71, 0.89, 0.59, 0.34, 0.75, 0.77, 0.65, 0.61, 0.58),
    "low": (0.05, 0.09, 0.20, 0.26, 0.16, 0.44, 0.24, 0.20, 0.49, 0.09),
    "mixed": (0.33, 0.77, 0.97, 0.63, 0.85, 0.80, 0.25, 0.78, 0.76, 0.77),
    "mixed-a": (0.20, 0.98, 0.50, 0.20, 0.98, 0.50, 0.50, 0.98, 0.20, 0.98),
    "mixed-b": (0.98, 0.20, 0.98, 0.20, 0.20, 0.20, 0.20, 0.98, 0.20, 0.98),
}

HASUIKE_PATHS = (
    "ABEG",
    "ABDEG",
    "ABDFG",
    "ACDEG",
    "ACDFG",
    "ACFG",
)


def hasuike_network(heights: str = "high") -> Network:
    """Hasuike network with sigma = sqrt(variance) and the named height set."""
    hs = HASUIKE_HEIGHTS[heights]
    return Network.from_triples(
        (s, t, c, math.sqrt(var), h) for (s, t, c, var), h in zip(HASUIKE_EDGES, hs)
    )
