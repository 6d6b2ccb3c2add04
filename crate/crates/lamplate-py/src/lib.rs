//! Python bindings: configuration-driven runs plus direct access to the
//! basis, material and recovery kernels.

use lamplate::config::parse_config;
use lamplate::materials::{bending_stiffness, homogenize, Layup};
use lamplate::pipeline;
use lamplate::recovery::ThicknessGrid;
use lamplate::reference::navier_solution;
use lamplate::splines::KnotVector;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<T>(r: lamplate::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Solve a case described by a key=value config string; returns the JSON report.
#[pyfunction]
fn run_case_json(config_text: &str) -> PyResult<String> {
    let cfg = err(parse_config(config_text))?;
    let report = err(pipeline::run_case(&cfg))?;
    Ok(report.json)
}

/// Run the S / control-point sweep; returns the long-form CSV.
#[pyfunction]
fn sweep_csv(config_text: &str) -> PyResult<String> {
    let cfg = err(parse_config(config_text))?;
    err(pipeline::run_sweep(&cfg))
}

/// Fixture-vs-computed comparison over every embedded table, as CSV.
#[pyfunction]
fn tables_csv(config_text: &str) -> PyResult<String> {
    let cfg = err(parse_config(config_text))?;
    err(pipeline::tables_csv(&cfg))
}

/// Greville abscissae of the open uniform knot vector.
#[pyfunction]
fn greville_points(degree: usize, elements: usize) -> PyResult<Vec<f64>> {
    let kv = err(KnotVector::open_uniform(degree, elements))?;
    Ok(kv.greville_points())
}

/// Values and derivatives (rows 0..=max_order) of the supported basis
/// functions at u; returns (first_index, rows).
#[pyfunction]
fn basis_functions(
    degree: usize,
    elements: usize,
    u: f64,
    max_order: usize,
) -> PyResult<(usize, Vec<Vec<f64>>)> {
    let kv = err(KnotVector::open_uniform(degree, elements))?;
    let row = err(kv.basis_functions(u, max_order))?;
    Ok((row.first, row.ders))
}

/// Homogenized in-plane constants (C11, C12, C22, C66) of the alternating
/// cross-ply benchmark stack.
#[pyfunction]
fn homogenized_constants(layers: usize, ply_thickness: f64) -> PyResult<(f64, f64, f64, f64)> {
    let layup = err(Layup::cross_ply(layers, ply_thickness))?;
    let h = err(homogenize(&layup))?;
    Ok((h.c11, h.c12, h.c22, h.c66))
}

/// Closed-form deflection amplitude of the simply supported benchmark plate.
#[pyfunction]
fn navier_amplitude(layers: usize, s: f64, sigma0: f64) -> PyResult<f64> {
    let layup = err(Layup::cross_ply(layers, 1.0))?;
    let h = err(homogenize(&layup))?;
    let t = layup.total_thickness();
    let d = bending_stiffness(&h, t);
    Ok(navier_solution(&d, s * t, sigma0).amplitude())
}

/// Solve a config case and recover the normalized profile at a sampling
/// point given as fractions of the edge length. Returns
/// (x3, layer, s11, s22, s12, s13, s23, s33) arrays.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn recover_profile(
    config_text: &str,
    x1_frac: f64,
    x2_frac: f64,
) -> PyResult<(
    Vec<f64>,
    Vec<usize>,
    Vec<f64>,
    Vec<f64>,
    Vec<f64>,
    Vec<f64>,
    Vec<f64>,
    Vec<f64>,
)> {
    let cfg = err(parse_config(config_text))?;
    let case = err(pipeline::solve_case(&cfg))?;
    let norm = err(case.normalized_profile_at((x1_frac, x2_frac)))?;
    let z: Vec<f64> = norm.grid.nodes().iter().map(|n| n.z).collect();
    let ply: Vec<usize> = norm.grid.nodes().iter().map(|n| n.ply).collect();
    Ok((z, ply, norm.s11, norm.s22, norm.s12, norm.s13, norm.s23, norm.s33))
}

/// Thickness-grid nodes of the benchmark stack.
#[pyfunction]
fn thickness_grid(layers: usize, nodes_per_ply: usize) -> PyResult<Vec<f64>> {
    let layup = err(Layup::cross_ply(layers, 1.0))?;
    let grid = err(ThicknessGrid::new(&layup, nodes_per_ply))?;
    Ok(grid.nodes().iter().map(|n| n.z).collect())
}

#[pymodule]
#[pyo3(name = "lamplate")]
fn pymodule_entry(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run_case_json, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    m.add_function(wrap_pyfunction!(tables_csv, m)?)?;
    m.add_function(wrap_pyfunction!(greville_points, m)?)?;
    m.add_function(wrap_pyfunction!(basis_functions, m)?)?;
    m.add_function(wrap_pyfunction!(homogenized_constants, m)?)?;
    m.add_function(wrap_pyfunction!(navier_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(recover_profile, m)?)?;
    m.add_function(wrap_pyfunction!(thickness_grid, m)?)?;
    Ok(())
}
