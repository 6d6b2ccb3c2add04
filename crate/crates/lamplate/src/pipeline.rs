//! Case orchestration: solve, recover, normalize, compare against the
//! embedded tables, emit deterministic CSV/JSON artifacts and parameter
//! sweeps.

use crate::collocation::{self, CollocationDiagnostics};
use crate::config::{CaseConfig, Solver};
use crate::error::Result;
use crate::fixtures::{fixture, FixturePoint, Method};
use crate::galerkin::{self, SinusoidalLoad, SolutionField};
use crate::materials::{bending_stiffness, homogenize, BendingStiffness, Layup};
use crate::recovery::{
    recover_profile, RecoveryOptions, StressProfile, ThicknessGrid,
};
use crate::reference::{l2_thickness_error, navier_solution, normalize, pointwise_diff, NavierField};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

/// Nine significant digits, the fixed float format of every artifact.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".into();
    }
    format!("{:.8e}", x)
}

#[derive(Debug, Clone)]
pub struct SolverDiagnostics {
    pub method: Solver,
    pub policy: Option<&'static str>,
    pub linear_residual: f64,
    pub condition_estimate: f64,
    pub collocation: Option<CollocationDiagnostics>,
}

/// Solved benchmark case, oriented so the recovered stresses carry the sign
/// convention of the reference tables. The tables take the transverse load
/// as a traction along +x3 on the top face, which enters the mid-plane
/// moment-equilibrium convention with a negative amplitude.
pub struct CaseSolution {
    pub config: CaseConfig,
    pub layup: Layup,
    pub d: BendingStiffness,
    pub length: f64,
    pub field: SolutionField,
    pub grid: ThicknessGrid,
    pub navier: NavierField,
    pub diagnostics: SolverDiagnostics,
}

impl CaseSolution {
    pub fn recovery_options(&self) -> RecoveryOptions {
        RecoveryOptions {
            mode: self.config.ply_matrix,
            membrane_correction: self.config.membrane_correction,
        }
    }

    /// Raw (unnormalized) profile at a sampling point given as fractions.
    pub fn profile_at(&self, frac: (f64, f64)) -> Result<StressProfile> {
        let point = (frac.0 * self.length, frac.1 * self.length);
        recover_profile(&self.field, &self.layup, &self.grid, point, &self.recovery_options())
    }

    /// Profile normalized by the dimensionless rule.
    pub fn normalized_profile_at(&self, frac: (f64, f64)) -> Result<StressProfile> {
        let raw = self.profile_at(frac)?;
        let sigma0 = if self.config.sigma0 != 0.0 { self.config.sigma0 } else { 1.0 };
        normalize(&raw, self.config.s, sigma0)
    }

    /// Out-of-plane components at a table point, in the tables' scale
    /// (shear columns are the dimensionless values times S).
    pub fn table_values_at(&self, point: FixturePoint) -> Result<[f64; 3]> {
        let frac = point.in_plane_fractions();
        let norm = self.normalized_profile_at(frac)?;
        let z = point.z(self.layup.total_thickness());
        let [s13, s23, s33] = norm.out_of_plane_at(z)?;
        Ok([s13 * self.config.s, s23 * self.config.s, s33])
    }
}

fn condition_estimate(m: &nalgebra::DMatrix<f64>) -> f64 {
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let min = svd.singular_values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Build the space, solve with the configured method and prepare the
/// recovery grid. This is the single entry point every subcommand uses.
pub fn solve_case(cfg: &CaseConfig) -> Result<CaseSolution> {
    solve_case_with(cfg, cfg.s, cfg.control_points)
}

fn solve_case_with(cfg: &CaseConfig, s: f64, control_points: usize) -> Result<CaseSolution> {
    let layup = Layup::cross_ply(cfg.layers, cfg.ply_thickness)?;
    let h = homogenize(&layup)?;
    let t = layup.total_thickness();
    let d = bending_stiffness(&h, t);
    let length = s * t;
    let space = crate::splines::DiscreteSpace::square(cfg.degree, control_points, length)?;

    // benchmark orientation: top-face traction +sigma0 enters the mid-plane
    // convention as a negative amplitude
    let load = SinusoidalLoad {
        amplitude: -cfg.sigma0,
    };
    let navier = navier_solution(&d, length, -cfg.sigma0);

    let (field, diagnostics) = match cfg.solver {
        Solver::Galerkin => {
            let system = galerkin::assemble(&space, &d, &load)?;
            let reduced = galerkin::impose_simply_supported(&system);
            let field = galerkin::solve(&space, &reduced)?;
            let w = nalgebra::DVector::from_iterator(
                reduced.free.len(),
                reduced
                    .free
                    .iter()
                    .map(|&i| field.coeffs[(i / reduced.dims.1, i % reduced.dims.1)]),
            );
            let res = (&reduced.stiffness * &w + &reduced.load).norm();
            let cond = condition_estimate(&reduced.stiffness);
            (
                field,
                SolverDiagnostics {
                    method: Solver::Galerkin,
                    policy: None,
                    linear_residual: res,
                    condition_estimate: cond,
                    collocation: None,
                },
            )
        }
        Solver::Collocation => {
            let system = collocation::assemble(
                &space,
                &d,
                &load,
                cfg.policy,
                cfg.omega,
                cfg.row_normalization,
            )?;
            let cond = condition_estimate(&system.matrix);
            let (field, diag) = collocation::solve(&space, &system)?;
            let res = (diag.pde_residual.powi(2) + diag.moment_residual.powi(2)).sqrt();
            (
                field,
                SolverDiagnostics {
                    method: Solver::Collocation,
                    policy: Some(cfg.policy.name()),
                    linear_residual: res,
                    condition_estimate: cond,
                    collocation: Some(diag),
                },
            )
        }
    };

    let grid = ThicknessGrid::new(&layup, cfg.nodes_per_ply)?;
    Ok(CaseSolution {
        config: cfg.clone(),
        layup,
        d,
        length,
        field,
        grid,
        navier,
        diagnostics,
    })
}

/// One fixture-vs-computed comparison row.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub layers: u32,
    pub s: f64,
    pub point: &'static str,
    pub method: String,
    pub values: [f64; 3],
    pub deltas: [f64; 3],
    pub starred: [bool; 3],
}

#[derive(Debug)]
pub struct RunReport {
    pub navier_amplitude: f64,
    pub center_deflection: f64,
    pub diagnostics: SolverDiagnostics,
    pub comparisons: Vec<Comparison>,
    pub csv_files: Vec<String>,
    pub json: String,
}

fn csv_for_profile(norm: &StressProfile) -> String {
    let mut out = String::from("x3,layer,s11,s22,s12,s13,s23,s33\n");
    for (i, node) in norm.grid.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt9(node.z),
            node.ply,
            fmt9(norm.s11[i]),
            fmt9(norm.s22[i]),
            fmt9(norm.s12[i]),
            fmt9(norm.s13[i]),
            fmt9(norm.s23[i]),
            fmt9(norm.s33[i]),
        );
    }
    out
}

fn atomic_write(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn json_bool(b: bool) -> &'static str {
    if b { "true" } else { "false" }
}

/// Compare the solved case against every embedded record matching its
/// layer count and ratio.
pub fn fixture_comparisons(case: &CaseSolution) -> Result<Vec<Comparison>> {
    let layers = case.config.layers as u32;
    let method = match case.config.solver {
        Solver::Galerkin => "computed-galerkin".to_string(),
        Solver::Collocation => format!("computed-collocation-{}", case.config.policy.name()),
    };
    let mut out = Vec::new();
    for point in FixturePoint::ALL {
        let Some(analytic) = fixture(layers, case.config.s, point, Method::Analytical) else {
            continue;
        };
        let values = case.table_values_at(point)?;
        let mut deltas = [0.0; 3];
        let mut starred = [false; 3];
        for c in 0..3 {
            let d = pointwise_diff(analytic.values[c], values[c], 1.0);
            deltas[c] = d.delta;
            starred[c] = d.starred;
        }
        out.push(Comparison {
            layers,
            s: case.config.s,
            point: point.label(),
            method: method.clone(),
            values,
            deltas,
            starred,
        });
    }
    Ok(out)
}

fn report_json(case: &CaseSolution, comparisons: &[Comparison], csv_files: &[String]) -> String {
    let cfg = &case.config;
    let mut j = String::new();
    j.push_str("{\n");
    let _ = writeln!(j, "  \"config\": {{");
    let _ = writeln!(j, "    \"layers\": {},", cfg.layers);
    let _ = writeln!(j, "    \"S\": {},", fmt9(cfg.s));
    let _ = writeln!(j, "    \"sigma0\": {},", fmt9(cfg.sigma0));
    let _ = writeln!(j, "    \"degree\": {},", cfg.degree);
    let _ = writeln!(j, "    \"control_points\": {},", cfg.control_points);
    let _ = writeln!(j, "    \"solver\": \"{}\",", cfg.solver.name());
    let _ = writeln!(j, "    \"policy\": \"{}\",", cfg.policy.name());
    let _ = writeln!(j, "    \"omega\": {},", fmt9(cfg.omega));
    let _ = writeln!(j, "    \"row_normalization\": {},", json_bool(cfg.row_normalization));
    let _ = writeln!(
        j,
        "    \"ply_matrix\": \"{}\",",
        match cfg.ply_matrix {
            crate::materials::PlyMatrixMode::Raw => "raw",
            crate::materials::PlyMatrixMode::Reduced => "reduced",
        }
    );
    let _ = writeln!(j, "    \"membrane_correction\": {},", json_bool(cfg.membrane_correction));
    let _ = writeln!(j, "    \"nodes_per_ply\": {},", cfg.nodes_per_ply);
    let _ = writeln!(j, "    \"ply_thickness\": {}", fmt9(cfg.ply_thickness));
    let _ = writeln!(j, "  }},");
    let _ = writeln!(j, "  \"solver\": {{");
    let _ = writeln!(j, "    \"method\": \"{}\",", case.diagnostics.method.name());
    if let Some(p) = case.diagnostics.policy {
        let _ = writeln!(j, "    \"policy\": \"{p}\",");
    }
    let _ = writeln!(j, "    \"linear_residual\": {},", fmt9(case.diagnostics.linear_residual));
    let _ = writeln!(
        j,
        "    \"condition_estimate\": {}",
        fmt9(case.diagnostics.condition_estimate)
    );
    if let Some(c) = &case.diagnostics.collocation {
        let _ = writeln!(j, "    ,\"pde_residual\": {},", fmt9(c.pde_residual));
        let _ = writeln!(j, "    \"moment_residual\": {}", fmt9(c.moment_residual));
    }
    let _ = writeln!(j, "  }},");
    let wc = case
        .field
        .eval(case.length / 2.0, case.length / 2.0, 0)
        .map(|t| t.value())
        .unwrap_or(f64::NAN);
    let _ = writeln!(j, "  \"navier_amplitude\": {},", fmt9(case.navier.amplitude()));
    let _ = writeln!(j, "  \"center_deflection\": {},", fmt9(wc));
    let _ = writeln!(j, "  \"profiles\": [");
    for (i, f) in csv_files.iter().enumerate() {
        let comma = if i + 1 < csv_files.len() { "," } else { "" };
        let _ = writeln!(j, "    \"{f}\"{comma}");
    }
    let _ = writeln!(j, "  ],");
    let _ = writeln!(j, "  \"comparisons\": [");
    for (i, c) in comparisons.iter().enumerate() {
        let comma = if i + 1 < comparisons.len() { "," } else { "" };
        let _ = writeln!(
            j,
            "    {{\"layers\": {}, \"S\": {}, \"point\": \"{}\", \"method\": \"{}\", \
             \"s13\": {}, \"s23\": {}, \"s33\": {}, \"d13\": {}, \"d23\": {}, \"d33\": {}, \
             \"starred\": [{}, {}, {}]}}{comma}",
            c.layers,
            fmt9(c.s),
            c.point,
            c.method,
            fmt9(c.values[0]),
            fmt9(c.values[1]),
            fmt9(c.values[2]),
            fmt9(c.deltas[0]),
            fmt9(c.deltas[1]),
            fmt9(c.deltas[2]),
            json_bool(c.starred[0]),
            json_bool(c.starred[1]),
            json_bool(c.starred[2]),
        );
    }
    let _ = writeln!(j, "  ]");
    j.push_str("}\n");
    j
}

/// Solve one case, write one CSV per sampling point plus report.json.
pub fn run_case(cfg: &CaseConfig) -> Result<RunReport> {
    let case = solve_case(cfg)?;
    let outdir = Path::new(&cfg.output_dir);
    std::fs::create_dir_all(outdir)?;

    let mut csv_files = Vec::new();
    for &frac in &cfg.points {
        let norm = case.normalized_profile_at(frac)?;
        let name = format!("profile_x1-{:.4}_x2-{:.4}.csv", frac.0, frac.1);
        atomic_write(&outdir.join(&name), &csv_for_profile(&norm))?;
        csv_files.push(name);
    }
    let comparisons = fixture_comparisons(&case)?;
    let json = report_json(&case, &comparisons, &csv_files);
    atomic_write(&outdir.join("report.json"), &json)?;

    let wc = case
        .field
        .eval(case.length / 2.0, case.length / 2.0, 0)?
        .value();
    Ok(RunReport {
        navier_amplitude: case.navier.amplitude(),
        center_deflection: wc,
        diagnostics: case.diagnostics,
        comparisons,
        csv_files,
        json,
    })
}

/// Long-form sweep: one row per (S, control points, point, component) with
/// the relative thickness-L2 error against the recovery of the exact
/// closed-form field.
pub fn run_sweep(cfg: &CaseConfig) -> Result<String> {
    let cases: Vec<(f64, usize)> = cfg
        .sweep_s
        .iter()
        .flat_map(|&s| cfg.sweep_cp.iter().map(move |&m| (s, m)))
        .collect();

    let blocks: Result<Vec<String>> = cases
        .par_iter()
        .map(|&(s, m)| -> Result<String> {
            let case = solve_case_with(cfg, s, m)?;
            let opts = case.recovery_options();
            let mut block = String::new();
            for &frac in &cfg.points {
                let point = (frac.0 * case.length, frac.1 * case.length);
                let recovered =
                    recover_profile(&case.field, &case.layup, &case.grid, point, &opts)?;
                let jet = case.navier.jet(point.0, point.1);
                let analytic = crate::recovery::recover_profile_from_jet(
                    &jet,
                    &case.layup,
                    &case.grid,
                    point,
                    &opts,
                )?;
                let errs = l2_thickness_error(&recovered, &analytic)?;
                for (c, name) in ["s13", "s23", "s33"].iter().enumerate() {
                    let val = match errs[c] {
                        Some(e) => fmt9(e),
                        None => "undefined".into(),
                    };
                    let _ = writeln!(
                        block,
                        "{},{},{:.4},{:.4},{},{}",
                        fmt9(s),
                        m,
                        frac.0,
                        frac.1,
                        name,
                        val
                    );
                }
            }
            Ok(block)
        })
        .collect();

    let mut out = String::from("S,control_points,x1_frac,x2_frac,component,l2_error_percent\n");
    for b in blocks? {
        out.push_str(&b);
    }
    Ok(out)
}

/// Full fixture-vs-computed comparison across every embedded table, using
/// the configured discretization for both methods.
pub fn tables_csv(cfg: &CaseConfig) -> Result<String> {
    let mut out = String::from(
        "layers,S,point,source,s13,s23,s33,d13,d23,d33,starred13,starred23,starred33\n",
    );
    for layers in [11usize, 34] {
        for s in [20.0, 30.0, 40.0, 50.0] {
            let mut g_cfg = cfg.clone();
            g_cfg.layers = layers;
            g_cfg.s = s;
            g_cfg.solver = Solver::Galerkin;
            let g_case = solve_case(&g_cfg)?;
            let mut c_cfg = g_cfg.clone();
            c_cfg.solver = Solver::Collocation;
            let c_case = solve_case(&c_cfg)?;

            for point in FixturePoint::ALL {
                let Some(analytic) = fixture(layers as u32, s, point, Method::Analytical) else {
                    continue;
                };
                push_fixture_row(&mut out, layers, s, point, analytic, "fixture-analytical");
                if let Some(rec) = fixture(layers as u32, s, point, Method::IgaG) {
                    push_fixture_row(&mut out, layers, s, point, rec, "fixture-iga-g");
                }
                push_computed_row(&mut out, layers, s, point, analytic, &g_case, "computed-galerkin")?;
                if let Some(rec) = fixture(layers as u32, s, point, Method::IgaC) {
                    push_fixture_row(&mut out, layers, s, point, rec, "fixture-iga-c");
                }
                push_computed_row(
                    &mut out,
                    layers,
                    s,
                    point,
                    analytic,
                    &c_case,
                    &format!("computed-collocation-{}", cfg.policy.name()),
                )?;
            }
        }
    }
    Ok(out)
}

fn push_fixture_row(
    out: &mut String,
    layers: usize,
    s: f64,
    point: FixturePoint,
    rec: &crate::fixtures::FixtureRecord,
    source: &str,
) {
    let d = rec.deltas.unwrap_or([0.0; 3]);
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        layers,
        fmt9(s),
        point.label(),
        source,
        fmt9(rec.values[0]),
        fmt9(rec.values[1]),
        fmt9(rec.values[2]),
        fmt9(d[0]),
        fmt9(d[1]),
        fmt9(d[2]),
        rec.starred[0],
        rec.starred[1],
        rec.starred[2],
    );
}

fn push_computed_row(
    out: &mut String,
    layers: usize,
    s: f64,
    point: FixturePoint,
    analytic: &crate::fixtures::FixtureRecord,
    case: &CaseSolution,
    source: &str,
) -> Result<()> {
    let values = case.table_values_at(point)?;
    let mut deltas = [0.0; 3];
    let mut starred = [false; 3];
    for c in 0..3 {
        let d = pointwise_diff(analytic.values[c], values[c], 1.0);
        deltas[c] = d.delta;
        starred[c] = d.starred;
    }
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        layers,
        fmt9(s),
        point.label(),
        source,
        fmt9(values[0]),
        fmt9(values[1]),
        fmt9(values[2]),
        fmt9(deltas[0]),
        fmt9(deltas[1]),
        fmt9(deltas[2]),
        starred[0],
        starred[1],
        starred[2],
    );
    Ok(())
}

/// Closed-form amplitude and homogenized bending stiffness of the case.
pub fn navier_text(cfg: &CaseConfig) -> Result<String> {
    let layup = Layup::cross_ply(cfg.layers, cfg.ply_thickness)?;
    let h = homogenize(&layup)?;
    let t = layup.total_thickness();
    let d = bending_stiffness(&h, t);
    let l = cfg.s * t;
    let nav = navier_solution(&d, l, cfg.sigma0);
    let mut out = String::new();
    let _ = writeln!(out, "layers = {}", cfg.layers);
    let _ = writeln!(out, "S = {}", fmt9(cfg.s));
    let _ = writeln!(out, "L = {}", fmt9(l));
    let _ = writeln!(out, "D11 = {}", fmt9(d.d11));
    let _ = writeln!(out, "D12 = {}", fmt9(d.d12));
    let _ = writeln!(out, "D22 = {}", fmt9(d.d22));
    let _ = writeln!(out, "D66 = {}", fmt9(d.d66));
    let _ = writeln!(out, "D_eff = {}", fmt9(d.effective()));
    let _ = writeln!(out, "W = {}", fmt9(nav.amplitude()));
    Ok(out)
}
