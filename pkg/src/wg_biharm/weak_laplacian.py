"""Local weak Laplacian and stabilizer operators.

For a discrete weak function v = {v_0, v_b, v_n n_e} on a cell T the weak
Laplacian is the polynomial Delta_w v in P_{k-2}(T) defined against every
test polynomial phi in P_{k-2}(T) by

    (Delta_w v, phi)_T = (v_0, Delta phi)_T - <v_b, grad phi . n>_dT
                         + <v_n n_e . n, phi>_dT

with n the outward normal of T, so the flux term carries the incidence
sign n_e . n = +-1.  For k = 2 the right side collapses to the flux term
alone and Delta_w v is the constant (sum_e sign * int_e v_n) / |T|.

The stabilizer penalizes the two inter-block mismatches on each cell
boundary,

    h_T^-1 <grad v_0 . n_e - v_n, grad w_0 . n_e - w_n>_dT
  + h_T^-3 <Q_b v_0 - v_b, Q_b w_0 - w_b>_dT

where Q_b is the edge L2 projection onto the trace degree.  Both mismatch
terms use the global edge normal, so the two cells sharing an edge penalize
against the same flux unknown.

Local degrees of freedom are ordered: interior coefficients, then the trace
block of each local edge, then the flux block of each local edge, edges in
the cell's boundary order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import legvander
from scipy.linalg import cho_factor, cho_solve

from .basis_quadrature import (CellBasis, edge_points, edge_quadrature,
                               polygon_quadrature, polynomial_space_dim)
from .mesh import cell_geometry, edge_geometry


@dataclass(frozen=True)
class LocalOperators:
    """Per-cell operator matrices in the local DOF order.

    weak_laplacian maps local DOFs to the scaled monomial coefficients of
    Delta_w v; stiffness is its Gram matrix (Delta_w u, Delta_w v)_T;
    stabilizer is the boundary penalty form; mass is the Gram matrix of the
    P_{k-2} basis used to represent Delta_w v.  global_dofs, when present,
    maps local DOF positions to rows of the assembled system.
    """

    cell: int
    weak_laplacian: np.ndarray
    stiffness: np.ndarray
    stabilizer: np.ndarray
    mass: np.ndarray
    global_dofs: Optional[np.ndarray] = None


def local_dof_count(mesh, cell, k):
    m = len(mesh.cell_edges[cell])
    return polynomial_space_dim(k) + 2 * m * k


def gather_local_dofs(field, mesh, cell):
    """Local DOF vector of a WgField on one cell, in the local order."""
    ce = mesh.cell_edges[cell]
    parts = [field.interior[cell]]
    parts += [field.trace[e] for e, _ in ce]
    parts += [field.flux[e] for e, _ in ce]
    return np.concatenate(parts)


def local_operators(mesh, cell, k, cell_exactness=None, edge_exactness=None,
                    layout=None):
    """Build the local weak Laplacian, stiffness and stabilizer matrices.

    Quadrature exactness defaults to 2k + 2 on the cell and 2k + 3 on the
    edges, enough for every polynomial integrand appearing here.
    """
    if k < 2:
        raise ValueError("the element requires k >= 2")
    geom = cell_geometry(mesh, cell)
    basis = CellBasis.for_cell(geom, k)
    n0 = basis.dimension
    n2 = polynomial_space_dim(k - 2)
    ce = mesh.cell_edges[cell]
    m = len(ce)
    nloc = n0 + 2 * m * k
    h_cell = geom.diameter

    if cell_exactness is None:
        cell_exactness = 2 * k + 2
    if edge_exactness is None:
        edge_exactness = 2 * k + 3

    rule = polygon_quadrature(mesh.cell_vertices(cell), cell_exactness)
    vals, _, laps = basis.evaluate(rule.points)
    w = rule.weights
    mass2 = (vals[:, :n2] * w[:, None]).T @ vals[:, :n2]

    B = np.zeros((n2, nloc))
    B[:, :n0] = (laps[:, :n2] * w[:, None]).T @ vals

    S = np.zeros((nloc, nloc))
    erule = edge_quadrature(edge_exactness)
    L = legvander(erule.points, k - 1)
    proj_scale = (2.0 * np.arange(k) + 1.0) / 2.0

    tr0, fl0 = n0, n0 + m * k
    for i, (e, sign) in enumerate(ce):
        eg = edge_geometry(mesh, e)
        pts = edge_points(eg, erule.points)
        evals, egrads, _ = basis.evaluate(pts)
        wphys = erule.weights * (0.5 * eg.length)
        n_out = sign * eg.normal
        tsl = slice(tr0 + i * k, tr0 + (i + 1) * k)
        fsl = slice(fl0 + i * k, fl0 + (i + 1) * k)
        wL = wphys[:, None] * L

        grad_n_out = egrads[:, :n2, 0] * n_out[0] + egrads[:, :n2, 1] * n_out[1]
        B[:, tsl] -= grad_n_out.T @ wL
        B[:, fsl] += sign * (evals[:, :n2].T @ wL)

        # flux mismatch grad v_0 . n_e - v_n, quadrature in physical arc
        G = np.zeros((len(wphys), nloc))
        G[:, :n0] = (egrads[:, :, 0] * eg.normal[0]
                     + egrads[:, :, 1] * eg.normal[1])
        G[:, fsl] = -L
        S += (G.T * wphys) @ G / h_cell

        # trace mismatch Q_b v_0 - v_b, exact in Legendre coefficients
        P = np.zeros((k, nloc))
        P[:, :n0] = proj_scale[:, None] * (L.T @ (erule.weights[:, None] * evals))
        P[:, tsl] = -np.eye(k)
        mass_diag = eg.length / (2.0 * np.arange(k) + 1.0)
        S += (P.T * mass_diag) @ P / h_cell ** 3

    D = cho_solve(cho_factor(mass2), B)
    A = B.T @ D
    A = 0.5 * (A + A.T)
    S = 0.5 * (S + S.T)

    gdofs = None
    if layout is not None:
        gdofs = layout.cell_dofs(mesh, cell)
    return LocalOperators(cell, D, A, S, mass2, gdofs)
