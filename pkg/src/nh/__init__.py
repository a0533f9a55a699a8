"""Exact decision engine for uniform boundedness of multi-parameter Hilbert
transforms, driven by Newton-polyhedron face/cone geometry and parity of
exponent sets, plus a floating-point harness that sanity-checks the emitted
certificates on the oscillatory multipliers."""

__version__ = "0.1.0"
