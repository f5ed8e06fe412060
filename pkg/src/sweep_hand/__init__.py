"""sweep-hand: time-dependent Hamiltonian simulation schemes and benchmarks."""

try:
    from sweep_hand._version import __version__
except ImportError:
    __version__ = "0.0.0+unknown"
