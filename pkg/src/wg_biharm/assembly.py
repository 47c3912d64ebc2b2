"""Global system assembly and essential boundary conditions.

Global DOF order: all cell interior blocks (cell id order), then all edge
trace blocks (edge id order), then all edge flux blocks.  Assembly scatters
the local stiffness-plus-stabilizer matrices cell by cell; the scatter is
single threaded and runs in cell id order, so the assembled arrays are
bitwise reproducible.  Local operator construction may optionally run on a
thread pool (results are collected back into cell order before the
scatter, which keeps the output deterministic).

Boundary conditions are essential: trace and flux blocks of boundary edges
are set to edge projections of the prescribed data, eliminated from the
system, and their coupling moved to the right-hand side.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .basis_quadrature import CellBasis, polygon_quadrature, polynomial_space_dim
from .mesh import cell_geometry, edge_geometry
from .projection import WgField, evaluate_at, project_edge
from .weak_laplacian import local_operators


@dataclass(frozen=True)
class DofLayout:
    """Index bookkeeping between coefficient blocks and the flat vector."""

    degree: int
    n_cells: int
    n_edges: int

    @property
    def cell_block(self):
        return polynomial_space_dim(self.degree)

    @property
    def edge_block(self):
        return self.degree

    @property
    def trace_offset(self):
        return self.n_cells * self.cell_block

    @property
    def flux_offset(self):
        return self.trace_offset + self.n_edges * self.edge_block

    @property
    def total(self):
        return self.flux_offset + self.n_edges * self.edge_block

    def cell_span(self, cell):
        b = self.cell_block
        return cell * b, (cell + 1) * b

    def trace_span(self, edge):
        b = self.edge_block
        o = self.trace_offset
        return o + edge * b, o + (edge + 1) * b

    def flux_span(self, edge):
        b = self.edge_block
        o = self.flux_offset
        return o + edge * b, o + (edge + 1) * b

    def cell_dofs(self, mesh, cell):
        """Global indices of one cell's local DOFs, local canonical order
        (interior, then trace blocks, then flux blocks, edges in boundary
        order)."""
        ce = mesh.cell_edges[cell]
        parts = [np.arange(*self.cell_span(cell))]
        parts += [np.arange(*self.trace_span(e)) for e, _ in ce]
        parts += [np.arange(*self.flux_span(e)) for e, _ in ce]
        return np.concatenate(parts)

    def boundary_dofs(self, mesh):
        """Trace and flux DOFs of boundary edges, ascending."""
        out = []
        for e in np.flatnonzero(mesh.boundary_edges):
            out.append(np.arange(*self.trace_span(e)))
        for e in np.flatnonzero(mesh.boundary_edges):
            out.append(np.arange(*self.flux_span(e)))
        if not out:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(out)

    def field_to_vector(self, field):
        assert field.interior.shape == (self.n_cells, self.cell_block)
        assert field.trace.shape == (self.n_edges, self.edge_block)
        assert field.flux.shape == (self.n_edges, self.edge_block)
        return np.concatenate([field.interior.ravel(), field.trace.ravel(),
                               field.flux.ravel()])

    def vector_to_field(self, vec):
        assert vec.shape == (self.total,)
        interior = vec[:self.trace_offset].reshape(self.n_cells,
                                                   self.cell_block)
        trace = vec[self.trace_offset:self.flux_offset].reshape(
            self.n_edges, self.edge_block)
        flux = vec[self.flux_offset:].reshape(self.n_edges, self.edge_block)
        return WgField(self.degree, interior.copy(), trace.copy(),
                       flux.copy())


def build_dof_layout(mesh, degree):
    if degree < 2:
        raise ValueError("the element requires k >= 2")
    return DofLayout(degree, mesh.n_cells, mesh.n_edges)


@dataclass
class SparseSymmetricSystem:
    """Assembled operator (CSR), load vector and the layout behind them."""

    matrix: sp.csr_matrix
    load: np.ndarray
    layout: DofLayout
    mesh: object
    degree: int


@dataclass
class ReducedSystem:
    """System after boundary elimination, restricted to free DOFs."""

    matrix: sp.csr_matrix
    rhs: np.ndarray
    free_dofs: np.ndarray
    boundary_dofs: np.ndarray
    boundary_values: np.ndarray
    layout: DofLayout
    mesh: object
    degree: int

    def expand(self, x_free):
        full = np.zeros(self.layout.total)
        full[self.free_dofs] = x_free
        full[self.boundary_dofs] = self.boundary_values
        return full


def assemble_system(mesh, degree, source, cell_exactness=None,
                    edge_exactness=None, workers=1):
    """Assemble stiffness + stabilizer and the load (source, v_0).

    ``source`` is a broadcastable callable f(x, y).  ``workers`` > 1 moves
    local operator construction onto a thread pool; the scatter stays in
    cell order either way.
    """
    layout = build_dof_layout(mesh, degree)
    if cell_exactness is None:
        cell_exactness = 2 * degree + 2

    def local(cell):
        return local_operators(mesh, cell, degree, cell_exactness,
                               edge_exactness, layout=layout)

    cells = range(mesh.n_cells)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ops = list(pool.map(local, cells))
    else:
        ops = [local(c) for c in cells]

    nnz = sum(op.global_dofs.size ** 2 for op in ops)
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    data = np.empty(nnz)
    load = np.zeros(layout.total)
    at = 0
    for cell, op in enumerate(ops):
        g = op.global_dofs
        n = g.size
        block = op.stiffness + op.stabilizer
        rows[at:at + n * n] = np.repeat(g, n)
        cols[at:at + n * n] = np.tile(g, n)
        data[at:at + n * n] = block.ravel()
        at += n * n

        geom = cell_geometry(mesh, cell)
        basis = CellBasis.for_cell(geom, degree)
        rule = polygon_quadrature(mesh.cell_vertices(cell), cell_exactness)
        vals, _, _ = basis.evaluate(rule.points)
        fvals = evaluate_at(source, rule.points)
        lo, hi = layout.cell_span(cell)
        load[lo:hi] += vals.T @ (rule.weights * fvals)

    matrix = sp.coo_matrix((data, (rows, cols)),
                           shape=(layout.total, layout.total)).tocsr()
    return SparseSymmetricSystem(matrix, load, layout, mesh, degree)


def apply_boundary_conditions(system, trace, flux, edge_exactness=None):
    """Eliminate boundary trace/flux DOFs with prescribed data.

    ``trace`` is g(x, y); ``flux`` is the normal derivative datum
    phi(x, y, nx, ny), evaluated with the edge's global normal, which on
    boundary edges is the outward normal of the domain.  Returns the
    reduced system over free DOFs with the boundary coupling moved to the
    right-hand side.
    """
    mesh, layout = system.mesh, system.layout
    k = system.degree
    boundary = layout.boundary_dofs(mesh)
    values = np.zeros(boundary.size)

    pos = {d: i for i, d in enumerate(boundary)}
    for e in np.flatnonzero(mesh.boundary_edges):
        geom = edge_geometry(mesh, e)
        nx, ny = geom.normal
        tcoef = project_edge(mesh, e, trace, k - 1, edge_exactness)
        fcoef = project_edge(
            mesh, e, lambda x, y: flux(x, y, nx, ny), k - 1, edge_exactness)
        lo, hi = layout.trace_span(e)
        for i, d in enumerate(range(lo, hi)):
            values[pos[d]] = tcoef[i]
        lo, hi = layout.flux_span(e)
        for i, d in enumerate(range(lo, hi)):
            values[pos[d]] = fcoef[i]

    mask = np.ones(layout.total, dtype=bool)
    mask[boundary] = False
    free = np.flatnonzero(mask)

    lift = system.matrix[:, boundary] @ values
    rhs = (system.load - lift)[free]
    reduced = system.matrix[free][:, free].tocsr()
    return ReducedSystem(reduced, rhs, free, boundary, values, layout,
                         mesh, k)


def dump_matrix(matrix, path):
    """Write the lower triangle as ``i j value`` lines, 0-based indices,
    full precision, sorted by row then column."""
    coo = sp.tril(matrix.tocoo(), k=0, format="coo")
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w", encoding="ascii") as fh:
        for i, j, v in zip(coo.row[order], coo.col[order], coo.data[order]):
            fh.write(f"{i} {j} {v:.17g}\n")
    return path
