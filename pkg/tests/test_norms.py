"""Energy norm and error report tests.

The energy norm is computed by direct quadrature of the three residuals,
independently of the assembled matrices, so energy(v)^2 = v^T A v is a
genuine dual-route consistency check.
"""

import numpy as np
import pytest

import wg_biharm as wg
from conftest import monomial_field, random_wg_field


def test_zero_field_has_zero_norms():
    mesh = wg.build_uniform_triangle_mesh(2)
    field = wg.WgField.zeros(mesh, 2)
    assert wg.energy_norm(mesh, 2, field) == 0.0
    report = wg.compute_errors(mesh, 2, field, monomial_field(0, 0))
    # u = 1 projected exactly: errors are the projection itself
    assert report.l2_interior == pytest.approx(1.0, rel=1e-13)


def test_energy_vanishes_on_projected_harmonic_polynomial():
    # u = x y is harmonic and of degree <= k, so Q_h u has zero weak
    # Laplacian and no inter-block mismatch
    for build, k in [(wg.build_uniform_triangle_mesh, 2),
                     (wg.build_uniform_quad_mesh, 3)]:
        mesh = build(2)
        field = wg.project_field(mesh, k, monomial_field(1, 1))
        assert wg.energy_norm(mesh, k, field) < 1e-11


def test_energy_squared_equals_quadratic_form():
    rng = np.random.default_rng(19)
    for build, k, n in [(wg.build_uniform_triangle_mesh, 2, 2),
                        (wg.build_uniform_quad_mesh, 2, 2),
                        (wg.build_uniform_triangle_mesh, 3, 2)]:
        mesh = build(n)
        system = wg.assemble_system(mesh, k, lambda x, y: np.zeros_like(x))
        for _ in range(5):
            field = random_wg_field(mesh, k, rng)
            vec = system.layout.field_to_vector(field)
            quad_form = float(vec @ (system.matrix @ vec))
            energy = wg.energy_norm(mesh, k, field)
            assert energy ** 2 == pytest.approx(quad_form, rel=1e-11)


def test_energy_norm_homogeneity():
    rng = np.random.default_rng(23)
    mesh = wg.build_uniform_triangle_mesh(2)
    field = random_wg_field(mesh, 2, rng)
    base = wg.energy_norm(mesh, 2, field)
    scaled = field.copy()
    scaled.interior *= -3.5
    scaled.trace *= -3.5
    scaled.flux *= -3.5
    assert wg.energy_norm(mesh, 2, scaled) == pytest.approx(3.5 * base,
                                                            rel=1e-12)


def test_errors_vanish_when_solution_is_the_projection():
    mesh = wg.build_uniform_triangle_mesh(2)
    problem = wg.get_problem("example1")
    proj = wg.project_field(mesh, 3, problem.solution)
    report = wg.compute_errors(mesh, 3, proj, problem.solution)
    for value in report.as_dict().values():
        assert value < 1e-12


def test_interior_l2_perturbation_scale():
    # adding c to one cell's constant mode adds exactly c * sqrt(area)
    mesh = wg.build_uniform_quad_mesh(2)
    problem = wg.get_problem("patch-2")
    proj = wg.project_field(mesh, 2, problem.solution)
    c = 0.37
    bumped = proj.copy()
    bumped.interior[1, 0] += c
    report = wg.compute_errors(mesh, 2, bumped, problem.solution)
    area = wg.cell_geometry(mesh, 1).area
    assert report.l2_interior == pytest.approx(c * np.sqrt(area), rel=1e-12)
    # edge blocks untouched: trace/flux errors stay at projection roundoff
    assert report.l2_edge_trace < 1e-12
    assert report.l2_edge_flux < 1e-12


def test_edge_error_columns_weighting():
    # a single Legendre mode of size c on one edge: the h_e-weighted L2
    # column is c * h_e / sqrt(2m + 1); the L-inf column samples the mode
    # at the edge quadrature points
    mesh = wg.build_uniform_triangle_mesh(2)
    k = 2
    zero = wg.WgField.zeros(mesh, k)
    exact = monomial_field(0, 0)  # u = 1

    proj = wg.project_field(mesh, k, exact)
    e = int(np.flatnonzero(~mesh.boundary_edges)[0])
    h_e = wg.edge_geometry(mesh, e).length
    rule = wg.edge_quadrature(2 * k + 3)

    for mode in (0, 1):
        c = 0.8
        bumped = proj.copy()
        bumped.flux[e, mode] += c
        report = wg.compute_errors(mesh, k, bumped, exact)
        expected_l2 = c * h_e / np.sqrt(2 * mode + 1)
        assert report.l2_edge_flux == pytest.approx(expected_l2, rel=1e-12)
        expected_inf = c * np.max(np.abs(rule.points ** mode))
        assert report.linf_edge_flux == pytest.approx(expected_inf, rel=1e-12)


def test_error_report_dict_keys():
    mesh = wg.build_uniform_triangle_mesh(1)
    report = wg.compute_errors(mesh, 2, wg.WgField.zeros(mesh, 2),
                               monomial_field(1, 0))
    assert list(report.as_dict()) == [
        "h2_energy", "l2_interior", "l2_edge_trace", "l2_edge_flux",
        "linf_edge_trace", "linf_edge_flux"]
    assert all(v >= 0.0 for v in report.as_dict().values())


def test_energy_controls_l2_on_homogeneous_subspace():
    # lambda_min of the reduced matrix gives a Poincare-type floor
    mesh = wg.build_uniform_triangle_mesh(2)
    system = wg.assemble_system(mesh, 2, lambda x, y: np.zeros_like(x))
    zero = lambda x, y: np.zeros_like(x)
    reduced = wg.apply_boundary_conditions(
        system, zero, lambda x, y, nx, ny: np.zeros_like(x))
    eig_min = np.linalg.eigvalsh(reduced.matrix.toarray())[0]
    assert eig_min > 0.0

    rng = np.random.default_rng(31)
    v_free = rng.uniform(-1.0, 1.0, reduced.free_dofs.size)
    field = system.layout.vector_to_field(reduced.expand(v_free))
    energy = wg.energy_norm(mesh, 2, field)
    assert energy ** 2 >= eig_min * float(v_free @ v_free) * (1.0 - 1e-9)
