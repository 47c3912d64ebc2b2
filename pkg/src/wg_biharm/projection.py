"""L2 projections onto cell and edge polynomial spaces.

The discrete unknown of the method is a triple of coefficient blocks: an
interior polynomial of degree k per cell, and per edge a trace polynomial
and a normal-flux polynomial of degree k - 1, the flux taken against the
edge's global normal.  ``project_field`` maps a smooth scalar field onto
such a triple by L2 projection blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .basis_quadrature import (CellBasis, EdgeBasis, edge_points,
                               edge_quadrature, polygon_quadrature,
                               polynomial_space_dim)
from .mesh import cell_geometry, edge_geometry


@dataclass(frozen=True)
class ScalarField:
    """A scalar field with optional derivatives.

    ``value(x, y)`` must broadcast over numpy arrays; ``gradient(x, y)``
    returns a pair of arrays, ``laplacian(x, y)`` an array.
    """

    value: Callable
    gradient: Optional[Callable] = None
    laplacian: Optional[Callable] = None


def evaluate_at(fn, points):
    """Evaluate a broadcastable callable at (n, 2) points."""
    points = np.atleast_2d(points)
    x, y = points[:, 0], points[:, 1]
    out = np.asarray(fn(x, y), dtype=float)
    if out.shape != x.shape:
        out = np.broadcast_to(out, x.shape)
    return out


@dataclass
class WgField:
    """Coefficient blocks of one discrete weak function.

    interior: (n_cells, dim P_k) scaled monomial coefficients
    trace:    (n_edges, k) Legendre coefficients of the edge trace
    flux:     (n_edges, k) Legendre coefficients of the normal flux
              against the edge's global normal
    """

    degree: int
    interior: np.ndarray
    trace: np.ndarray
    flux: np.ndarray

    @classmethod
    def zeros(cls, mesh, degree):
        return cls(degree,
                   np.zeros((mesh.n_cells, polynomial_space_dim(degree))),
                   np.zeros((mesh.n_edges, degree)),
                   np.zeros((mesh.n_edges, degree)))

    def copy(self):
        return WgField(self.degree, self.interior.copy(),
                       self.trace.copy(), self.flux.copy())


def project_cell(mesh, cell, f, degree, exactness=None):
    """L2 projection of ``f`` onto P_degree of one cell.

    Returns scaled monomial coefficients.  The quadrature exactness
    defaults to 2*degree + 2; raise it when ``f`` is hard to resolve.
    """
    geom = cell_geometry(mesh, cell)
    basis = CellBasis.for_cell(geom, degree)
    if exactness is None:
        exactness = 2 * degree + 2
    rule = polygon_quadrature(mesh.cell_vertices(cell), exactness)
    vals, _, _ = basis.evaluate(rule.points)
    wv = vals * rule.weights[:, None]
    mass = wv.T @ vals
    rhs = wv.T @ evaluate_at(f, rule.points)
    return cho_solve(cho_factor(mass), rhs)


def project_edge(mesh, edge, f, degree, exactness=None):
    """L2 projection of ``f`` onto P_degree of one edge.

    Returns Legendre coefficients in the edge parameter; the Legendre
    orthogonality makes the mass matrix diagonal, so no solve is needed.
    """
    geom = edge_geometry(mesh, edge)
    basis = EdgeBasis(degree, geom.length)
    if exactness is None:
        exactness = 2 * degree + 3
    rule = edge_quadrature(exactness)
    pts = edge_points(geom, rule.points)
    vals = basis.evaluate(rule.points)
    fvals = evaluate_at(f, pts)
    j = np.arange(degree + 1)
    return (2.0 * j + 1.0) / 2.0 * (vals.T @ (rule.weights * fvals))


def project_field(mesh, degree, field, cell_exactness=None,
                  edge_exactness=None):
    """Blockwise L2 projection of a smooth field onto the discrete space.

    Needs ``field.gradient`` for the flux block.  Default quadrature
    exactness derives from the field degree (2k + 2 on cells, 2k + 3 on
    edges) so that error reports computed with the same defaults see this
    projection as exact.
    """
    if field.gradient is None:
        raise ValueError("project_field needs the field gradient")
    if cell_exactness is None:
        cell_exactness = 2 * degree + 2
    if edge_exactness is None:
        edge_exactness = 2 * degree + 3
    out = WgField.zeros(mesh, degree)
    for c in range(mesh.n_cells):
        out.interior[c] = project_cell(mesh, c, field.value, degree,
                                       cell_exactness)
    for e in range(mesh.n_edges):
        geom = edge_geometry(mesh, e)
        nx, ny = geom.normal

        def flux(x, y):
            gx, gy = field.gradient(x, y)
            return gx * nx + gy * ny

        out.trace[e] = project_edge(mesh, e, field.value, degree - 1,
                                    edge_exactness)
        out.flux[e] = project_edge(mesh, e, flux, degree - 1, edge_exactness)
    return out
