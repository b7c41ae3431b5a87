"""verlkit: exact fusion algebras, representation rings, modular invariants,
and equivariant K-homology replays over the integers."""

__version__ = "0.1.0"
