"""Independent finite-difference oracles shared by the test modules.

These deliberately know nothing about jets: they only call scalar functions,
so agreement between a jet-derived quantity and one of these stencils is a
genuine cross-check of two different differentiation routes.
"""

from __future__ import annotations


def central_derivative(fn, x: float, k: int, h: float, richardson: bool = True) -> float:
    """k-th derivative of fn at x from central stencils of O(h^2) accuracy."""

    def stencil(hh: float) -> float:
        if k == 1:
            return (fn(x + hh) - fn(x - hh)) / (2.0 * hh)
        if k == 2:
            return (fn(x + hh) - 2.0 * fn(x) + fn(x - hh)) / hh**2
        if k == 3:
            return (fn(x + 2 * hh) - 2.0 * fn(x + hh) + 2.0 * fn(x - hh) - fn(x - 2 * hh)) / (
                2.0 * hh**3
            )
        if k == 4:
            return (
                fn(x + 2 * hh) - 4.0 * fn(x + hh) + 6.0 * fn(x) - 4.0 * fn(x - hh) + fn(x - 2 * hh)
            ) / hh**4
        raise ValueError(f"no stencil for k={k}")

    if not richardson:
        return stencil(h)
    return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0
