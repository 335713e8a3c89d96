"""Shared exception types.

DomainError flags arguments outside an operation's stated domain (bad ranks,
non-integral exponents, labels that fail dominance, ...).  PoleError flags an
exact evaluation hitting a vanishing denominator.  SizeGuardError flags a
request whose symbolic cost would be unreasonable; callers are expected to
rerun at a numeric evaluation point instead.
"""

from __future__ import annotations


class DomainError(ValueError):
    """A value violates an operation's precondition."""


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""


class SizeGuardError(RuntimeError):
    """The requested symbolic computation exceeds the configured size bound."""
