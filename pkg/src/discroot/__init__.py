"""Series roots of cubics in the discriminant, and friends."""

__version__ = "0.1.0"
