"""Convergence sweeps that take minutes rather than seconds."""
