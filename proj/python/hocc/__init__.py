"""Computability-closure termination checker for higher-order rewriting."""

from ._hocc import check, complete, normalize, parse, verify_certificate

__all__ = ["check", "complete", "normalize", "parse", "verify_certificate"]
