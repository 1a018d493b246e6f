"""Two particles on a ring coupled through a distance-dependent gauge potential."""
__version__ = "0.1.0"
