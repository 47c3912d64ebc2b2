"""Polynomial bases and quadrature rules.

Cell spaces use scaled monomials ((x - x_T)/h_T)^a ((y - y_T)/h_T)^b,
a + b <= degree, ordered by total degree; the basis of a lower degree is
therefore a prefix of the basis of a higher one.  Edge spaces use Legendre
polynomials in the arc parameter t in [-1, 1] of the edge's stored
orientation, so the edge mass matrix is diagonal with entries
h_e / (2j + 1).

Cell integration fan-triangulates the polygon from its centroid and applies
a Duffy-transformed tensor Gauss rule on each fan triangle.  Fan Jacobians
keep their sign, so simple non-convex polygons integrate correctly (some
weights are then negative).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss, legvander


def polynomial_space_dim(degree):
    """Dimension of P_degree in two variables; 0 for negative degree."""
    if degree < 0:
        return 0
    return (degree + 1) * (degree + 2) // 2


def monomial_exponents(degree):
    """(dim, 2) exponent pairs (a, b) ordered by total degree, then by
    descending a within a degree."""
    out = [(d - i, i) for d in range(degree + 1) for i in range(d + 1)]
    return np.array(out, dtype=np.int64).reshape(-1, 2)


@dataclass(frozen=True)
class QuadratureRule:
    """Points, weights and the guaranteed polynomial exactness degree."""

    points: np.ndarray
    weights: np.ndarray
    exactness: int

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def edge_quadrature(exactness):
    """Gauss-Legendre rule on [-1, 1] exact for the given degree."""
    if exactness < 0:
        raise ValueError("exactness must be >= 0")
    npts = (exactness + 2) // 2
    t, w = leggauss(max(npts, 1))
    return QuadratureRule(t, w, 2 * len(t) - 1)


def _duffy_rule(exactness):
    # Tensor Gauss on the unit square mapped onto the reference triangle
    # (0,0)-(1,0)-(0,1) by (s, t) -> (s(1-t), st); the Jacobian s raises the
    # s-degree by one, hence the point count below.
    m = (exactness + 3) // 2
    g, w = leggauss(m)
    g01 = 0.5 * (g + 1.0)
    w01 = 0.5 * w
    s, t = np.meshgrid(g01, g01, indexing="ij")
    ws, wt = np.meshgrid(w01, w01, indexing="ij")
    x = (s * (1.0 - t)).ravel()
    y = (s * t).ravel()
    w2 = (ws * wt * s).ravel()
    return np.column_stack([x, y]), w2


def triangle_quadrature(vertices, exactness):
    """Rule over one triangle in physical coordinates.

    The weight total equals the signed area doubled into the affine map, so
    a clockwise triangle yields negative weights.
    """
    vertices = np.asarray(vertices, dtype=float)
    ref_pts, ref_w = _duffy_rule(exactness)
    p0, p1, p2 = vertices
    pts = p0 + np.outer(ref_pts[:, 0], p1 - p0) + np.outer(ref_pts[:, 1], p2 - p0)
    det = ((p1[0] - p0[0]) * (p2[1] - p0[1])
           - (p1[1] - p0[1]) * (p2[0] - p0[0]))
    return QuadratureRule(pts, ref_w * det, exactness)


def polygon_quadrature(vertices, exactness):
    """Rule over a simple polygon by centroid fan triangulation."""
    vertices = np.asarray(vertices, dtype=float)
    if vertices.shape[0] < 3:
        raise ValueError("polygon needs at least 3 vertices")
    x, y = vertices[:, 0], vertices[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * np.sum(cross)
    centroid = np.array([np.sum((x + xn) * cross), np.sum((y + yn) * cross)])
    centroid /= 6.0 * area

    pts, wts = [], []
    m = vertices.shape[0]
    for i in range(m):
        tri = np.array([centroid, vertices[i], vertices[(i + 1) % m]])
        rule = triangle_quadrature(tri, exactness)
        pts.append(rule.points)
        wts.append(rule.weights)
    return QuadratureRule(np.vstack(pts), np.concatenate(wts), exactness)


@dataclass(frozen=True)
class CellBasis:
    """Scaled monomial basis of P_degree on one cell."""

    degree: int
    center: np.ndarray
    scale: float

    @property
    def dimension(self):
        return polynomial_space_dim(self.degree)

    def evaluate(self, points):
        """Values, gradients and Laplacians at the given (n, 2) points.

        Returns (values (n, dim), gradients (n, dim, 2), laplacians
        (n, dim)).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        X = (points[:, 0] - self.center[0]) / self.scale
        Y = (points[:, 1] - self.center[1]) / self.scale
        exps = monomial_exponents(self.degree)
        kmax = self.degree

        # Power tables with safe negative-exponent slots equal to zero.
        def powers(base):
            cols = [np.ones_like(base)]
            for _ in range(kmax):
                cols.append(cols[-1] * base)
            return np.column_stack(cols)

        PX, PY = powers(X), powers(Y)

        def term(a, b):
            return (PX[:, a] if a >= 0 else 0.0) * (PY[:, b] if b >= 0 else 0.0)

        n, dim = len(X), len(exps)
        vals = np.empty((n, dim))
        grads = np.empty((n, dim, 2))
        laps = np.empty((n, dim))
        h = self.scale
        for j, (a, b) in enumerate(exps):
            vals[:, j] = term(a, b)
            grads[:, j, 0] = (a / h) * term(a - 1, b) if a > 0 else 0.0
            grads[:, j, 1] = (b / h) * term(a, b - 1) if b > 0 else 0.0
            lap = np.zeros(n)
            if a > 1:
                lap += (a * (a - 1) / h ** 2) * term(a - 2, b)
            if b > 1:
                lap += (b * (b - 1) / h ** 2) * term(a, b - 2)
            laps[:, j] = lap
        return vals, grads, laps

    @classmethod
    def for_cell(cls, geom, degree):
        """Basis centered at the cell centroid, scaled by the diameter."""
        return cls(degree, geom.centroid, geom.diameter)


@dataclass(frozen=True)
class EdgeBasis:
    """Legendre basis of P_degree on one edge, in arc parameter t."""

    degree: int
    length: float

    @property
    def dimension(self):
        return self.degree + 1

    def evaluate(self, t):
        """Values at parameters t in [-1, 1], shape (n, degree + 1)."""
        return legvander(np.atleast_1d(np.asarray(t, dtype=float)),
                         self.degree)

    def mass_diagonal(self):
        j = np.arange(self.degree + 1)
        return self.length / (2.0 * j + 1.0)


def edge_points(mesh_edge_geom, t):
    """Physical points on an edge at parameters t in [-1, 1]."""
    g = mesh_edge_geom
    t = np.atleast_1d(np.asarray(t, dtype=float))
    half = 0.5 * g.length
    return g.midpoint + np.outer(t * half, g.tangent)
