"""Chord-tangent heaps of elliptic curves and the truss of their endomorphisms."""

__version__ = "0.1.0"
