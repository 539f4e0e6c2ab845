"""Extended formulations for independence polytopes and circuit dominants
of regular matroids, compiled to exact rational LPs and checked against
brute-force oracles."""

__version__ = "0.1.0"
