"""Exact q-series arithmetic, coset dissections of theta products, and a
verifier for the identities that make certain signed partition counts vanish."""

__version__ = "0.1.0"
