"""Symbolic verification of conservation laws for u_t = (d(u) u_x)_x + k(u) u_x."""

from ._core import (
    canonical,
    case_ids,
    heat_gaussian_error,
    sample,
    simulate,
    table1,
    transform,
    verify,
)

__all__ = [
    "canonical",
    "case_ids",
    "heat_gaussian_error",
    "sample",
    "simulate",
    "table1",
    "transform",
    "verify",
]
