"""Manufactured solutions of the clamped plate problem.

Each problem bundles the exact solution (with gradient and Laplacian), the
source f = Delta^2 u, the boundary trace g = u and the boundary normal
derivative phi, the latter as a callable ``phi(x, y, nx, ny)`` evaluated
against a caller-supplied outward normal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .projection import ScalarField


@dataclass(frozen=True)
class Problem:
    name: str
    solution: ScalarField
    source: Callable
    trace: Callable
    normal_flux: Callable


def _zero(x, y):
    return np.zeros_like(np.asarray(x, dtype=float))


def example_1():
    """u = x^2 (1-x)^2 y^2 (1-y)^2, clamped homogeneous boundary data."""

    def p(s):
        return s ** 2 * (1.0 - s) ** 2

    def dp(s):
        return 2.0 * s - 6.0 * s ** 2 + 4.0 * s ** 3

    def ddp(s):
        return 2.0 - 12.0 * s + 12.0 * s ** 2

    def u(x, y):
        return p(x) * p(y)

    def grad(x, y):
        return dp(x) * p(y), p(x) * dp(y)

    def lap(x, y):
        return ddp(x) * p(y) + p(x) * ddp(y)

    def f(x, y):
        # ddddp = 24, dddp terms pair up through the mixed derivative
        return 24.0 * p(y) + 2.0 * ddp(x) * ddp(y) + 24.0 * p(x)

    return Problem("example1", ScalarField(u, grad, lap), f, _zero,
                   lambda x, y, nx, ny: _zero(x, y))


def example_2():
    """u = sin(pi x) sin(pi y); homogeneous trace, nonhomogeneous flux."""
    pi = np.pi

    def u(x, y):
        return np.sin(pi * x) * np.sin(pi * y)

    def grad(x, y):
        return (pi * np.cos(pi * x) * np.sin(pi * y),
                pi * np.sin(pi * x) * np.cos(pi * y))

    def lap(x, y):
        return -2.0 * pi ** 2 * u(x, y)

    def f(x, y):
        return 4.0 * pi ** 4 * u(x, y)

    def flux(x, y, nx, ny):
        gx, gy = grad(x, y)
        return gx * nx + gy * ny

    return Problem("example2", ScalarField(u, grad, lap), f, _zero, flux)


def _monomial_eval(terms, x, y):
    out = np.zeros_like(np.asarray(x, dtype=float))
    for c, a, b in terms:
        out = out + c * x ** a * y ** b
    return out


def _monomial_dx(terms):
    return [(c * a, a - 1, b) for c, a, b in terms if a > 0]


def _monomial_dy(terms):
    return [(c * b, a, b - 1) for c, a, b in terms if b > 0]


def _monomial_lap(terms):
    return _monomial_dx(_monomial_dx(terms)) + _monomial_dy(_monomial_dy(terms))


def polynomial_patch(degree):
    """u = sum of every monomial x^a y^b with a + b <= degree, unit
    coefficients.  Any scheme exact on P_degree must reproduce its
    projection to roundoff."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    terms = [(1.0, a, d - a) for d in range(degree + 1) for a in range(d + 1)]
    gx_t, gy_t = _monomial_dx(terms), _monomial_dy(terms)
    lap_t = _monomial_lap(terms)
    f_t = _monomial_lap(lap_t)

    def u(x, y):
        return _monomial_eval(terms, x, y)

    def grad(x, y):
        return _monomial_eval(gx_t, x, y), _monomial_eval(gy_t, x, y)

    def flux(x, y, nx, ny):
        gx, gy = grad(x, y)
        return gx * nx + gy * ny

    return Problem(f"patch-{degree}",
                   ScalarField(u, grad,
                               lambda x, y: _monomial_eval(lap_t, x, y)),
                   lambda x, y: _monomial_eval(f_t, x, y),
                   u, flux)


def get_problem(name):
    """Look up a problem by CLI id: example1, example2 or patch-<k>."""
    if name == "example1":
        return example_1()
    if name == "example2":
        return example_2()
    if name.startswith("patch-"):
        try:
            return polynomial_patch(int(name.split("-", 1)[1]))
        except ValueError:
            pass
    raise ValueError(
        f"unknown problem {name!r}; expected example1, example2 or patch-<k>")
