"""Invariant varieties of periodic points for integrable rational maps."""
