"""Discrete norms and the six-column error report.

The energy norm is the square root of

    sum_T ( ||Delta_w v||_T^2
            + h_T^-1 ||grad v_0 . n_e - v_n||_dT^2
            + h_T^-3 ||Q_b v_0 - v_b||_dT^2 ),

the natural norm of the scheme; on the homogeneous-boundary subspace it is
a genuine norm (the assembled reduced matrix is SPD, which the tests check
through a dense eigendecomposition).  It is evaluated here by direct
quadrature of each residual, not through the assembled matrices, so the
identity energy(v)^2 = v^T A v is a meaningful cross-check between two
routes.

Errors compare the discrete solution against the blockwise projection of
the exact one.  The flux columns compare u_n with the edge projection of
grad(u_exact) . n_e; this matches what the flux estimate actually bounds.
Edge L2 columns carry the h_e weight

    ||w||_E^2 = sum_e h_e ||w||_{L2(e)}^2

and the L-inf columns take the maximum over edge quadrature points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import legvander

from .basis_quadrature import (CellBasis, EdgeBasis, edge_points,
                               edge_quadrature, polygon_quadrature,
                               polynomial_space_dim)
from .mesh import cell_geometry, edge_geometry
from .projection import WgField, project_edge, project_field
from .weak_laplacian import gather_local_dofs, local_operators


@dataclass(frozen=True)
class ErrorReport:
    """The six error columns of a convergence study."""

    h2_energy: float
    l2_interior: float
    l2_edge_trace: float
    l2_edge_flux: float
    linf_edge_trace: float
    linf_edge_flux: float

    def as_dict(self):
        return {
            "h2_energy": self.h2_energy,
            "l2_interior": self.l2_interior,
            "l2_edge_trace": self.l2_edge_trace,
            "l2_edge_flux": self.l2_edge_flux,
            "linf_edge_trace": self.linf_edge_trace,
            "linf_edge_flux": self.linf_edge_flux,
        }


def energy_norm(mesh, degree, field, cell_exactness=None,
                edge_exactness=None):
    """Energy norm of a WgField, accumulated cell by cell by quadrature."""
    if cell_exactness is None:
        cell_exactness = 2 * degree + 2
    if edge_exactness is None:
        edge_exactness = 2 * degree + 3
    n2 = polynomial_space_dim(degree - 2)
    erule = edge_quadrature(edge_exactness)
    L = legvander(erule.points, degree - 1)

    total = 0.0
    for c in range(mesh.n_cells):
        geom = cell_geometry(mesh, c)
        basis = CellBasis.for_cell(geom, degree)
        vloc = gather_local_dofs(field, mesh, c)
        ops = local_operators(mesh, c, degree, cell_exactness,
                              edge_exactness)
        wcoef = ops.weak_laplacian @ vloc

        rule = polygon_quadrature(mesh.cell_vertices(c), cell_exactness)
        vals, _, _ = basis.evaluate(rule.points)
        wvals = vals[:, :n2] @ wcoef
        total += float(rule.weights @ wvals ** 2)

        h_cell = geom.diameter
        for e, _ in mesh.cell_edges[c]:
            eg = edge_geometry(mesh, e)
            pts = edge_points(eg, erule.points)
            evals, egrads, _ = basis.evaluate(pts)
            wphys = erule.weights * (0.5 * eg.length)

            grad_n = (egrads[:, :, 0] * eg.normal[0]
                      + egrads[:, :, 1] * eg.normal[1])
            flux_gap = grad_n @ field.interior[c] - L @ field.flux[e]
            total += float(wphys @ flux_gap ** 2) / h_cell

            coeffs = field.interior[c]

            def interior_trace(x, y, basis=basis, coeffs=coeffs):
                v, _, _ = basis.evaluate(np.column_stack([x, y]))
                return v @ coeffs

            qb = project_edge(mesh, e, interior_trace, degree - 1,
                              edge_exactness)
            trace_gap = L @ (qb - field.trace[e])
            total += float(wphys @ trace_gap ** 2) / h_cell ** 3
    return float(np.sqrt(total))


def compute_errors(mesh, degree, u_h, exact, cell_exactness=None,
                   edge_exactness=None):
    """Six-norm error report of ``u_h`` against a smooth exact field."""
    if cell_exactness is None:
        cell_exactness = 2 * degree + 2
    if edge_exactness is None:
        edge_exactness = 2 * degree + 3
    proj = project_field(mesh, degree, exact, cell_exactness, edge_exactness)
    diff = WgField(degree,
                   proj.interior - u_h.interior,
                   proj.trace - u_h.trace,
                   proj.flux - u_h.flux)

    h2 = energy_norm(mesh, degree, diff, cell_exactness, edge_exactness)

    l2sq = 0.0
    for c in range(mesh.n_cells):
        geom = cell_geometry(mesh, c)
        basis = CellBasis.for_cell(geom, degree)
        rule = polygon_quadrature(mesh.cell_vertices(c), cell_exactness)
        vals, _, _ = basis.evaluate(rule.points)
        e0 = vals @ diff.interior[c]
        l2sq += float(rule.weights @ e0 ** 2)

    erule = edge_quadrature(edge_exactness)
    L = legvander(erule.points, degree - 1)
    eb_sq = en_sq = 0.0
    eb_max = en_max = 0.0
    for e in range(mesh.n_edges):
        h_e = edge_geometry(mesh, e).length
        mass = EdgeBasis(degree - 1, h_e).mass_diagonal()
        eb_sq += h_e * float(mass @ diff.trace[e] ** 2)
        en_sq += h_e * float(mass @ diff.flux[e] ** 2)
        eb_max = max(eb_max, float(np.max(np.abs(L @ diff.trace[e]))))
        en_max = max(en_max, float(np.max(np.abs(L @ diff.flux[e]))))

    return ErrorReport(h2, float(np.sqrt(l2sq)), float(np.sqrt(eb_sq)),
                       float(np.sqrt(en_sq)), eb_max, en_max)
