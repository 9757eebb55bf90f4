"""Exact constructions around the Cantor set: iterates and membership, the
Cantor-Lebesgue function, Lebesgue's space-filling curves, and Hausdorff's
map from the Cantor set onto compact box unions."""

__version__ = "0.1.0"
