//! Flat key=value configuration with `#` comments. Every validation failure
//! is collected and reported at once.

use crate::collocation::Policy;
use crate::error::{Error, Result};
use crate::materials::PlyMatrixMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Galerkin,
    Collocation,
}

impl Solver {
    pub fn name(&self) -> &'static str {
        match self {
            Solver::Galerkin => "galerkin",
            Solver::Collocation => "collocation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseConfig {
    pub layers: usize,
    pub s: f64,
    pub sigma0: f64,
    pub degree: usize,
    pub control_points: usize,
    pub solver: Solver,
    pub policy: Policy,
    pub omega: f64,
    pub row_normalization: bool,
    pub ply_matrix: PlyMatrixMode,
    pub membrane_correction: bool,
    pub nodes_per_ply: usize,
    pub ply_thickness: f64,
    pub output_dir: String,
    /// Sampling points as fractions of the edge length.
    pub points: Vec<(f64, f64)>,
    pub sweep_s: Vec<f64>,
    pub sweep_cp: Vec<usize>,
}

/// Quarter-length sampling grid; includes the three in-plane table points.
fn default_points() -> Vec<(f64, f64)> {
    let fr = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut out = Vec::with_capacity(25);
    for &a in &fr {
        for &b in &fr {
            out.push((a, b));
        }
    }
    out
}

impl Default for CaseConfig {
    fn default() -> Self {
        Self {
            layers: 11,
            s: 20.0,
            sigma0: 1.0,
            degree: 6,
            control_points: 7,
            solver: Solver::Galerkin,
            policy: Policy::LsqMoment,
            omega: 1.0,
            row_normalization: true,
            ply_matrix: PlyMatrixMode::Reduced,
            membrane_correction: true,
            nodes_per_ply: 20,
            ply_thickness: 1.0,
            output_dir: "out".into(),
            points: default_points(),
            sweep_s: vec![20.0, 30.0, 40.0, 50.0],
            sweep_cp: vec![7, 14, 21],
        }
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "on" | "true" | "1" | "yes" => Some(true),
        "off" | "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

fn parse_points(v: &str) -> std::result::Result<Vec<(f64, f64)>, String> {
    let mut out = Vec::new();
    for part in v.split(';').filter(|p| !p.trim().is_empty()) {
        let mut it = part.split(',').map(str::trim);
        let (a, b) = (it.next(), it.next());
        match (a.and_then(|x| x.parse::<f64>().ok()), b.and_then(|x| x.parse::<f64>().ok())) {
            (Some(x), Some(y)) if it.next().is_none() => out.push((x, y)),
            _ => return Err(format!("bad point '{part}', expected x1,x2 fractions")),
        }
    }
    if out.is_empty() {
        return Err("points list is empty".into());
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(v: &str) -> std::result::Result<Vec<T>, String> {
    let items: std::result::Result<Vec<T>, _> =
        v.split(',').map(|p| p.trim().parse::<T>()).collect();
    items.map_err(|_| format!("bad list '{v}'"))
}

/// Parse and validate, reporting every failure at once.
pub fn parse_config(text: &str) -> Result<CaseConfig> {
    let mut cfg = CaseConfig::default();
    let mut errors: Vec<String> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(format!("line {}: expected key=value, got '{line}'", lineno + 1));
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        let mut bad = |what: &str| errors.push(format!("line {}: {what}", lineno + 1));
        match key {
            "layers" => match value.parse() {
                Ok(v) => cfg.layers = v,
                Err(_) => bad(&format!("layers must be a positive integer, got '{value}'")),
            },
            "S" | "s" => match value.parse() {
                Ok(v) => cfg.s = v,
                Err(_) => bad(&format!("S must be a number, got '{value}'")),
            },
            "sigma0" => match value.parse() {
                Ok(v) => cfg.sigma0 = v,
                Err(_) => bad(&format!("sigma0 must be a number, got '{value}'")),
            },
            "p" | "q" | "degree" => match value.parse() {
                Ok(v) => cfg.degree = v,
                Err(_) => bad(&format!("degree must be an integer, got '{value}'")),
            },
            "control_points" | "m" => match value.parse() {
                Ok(v) => cfg.control_points = v,
                Err(_) => bad(&format!("control_points must be an integer, got '{value}'")),
            },
            "solver" => match value {
                "galerkin" => cfg.solver = Solver::Galerkin,
                "collocation" => cfg.solver = Solver::Collocation,
                _ => bad(&format!("solver must be galerkin or collocation, got '{value}'")),
            },
            "policy" => match Policy::parse(value) {
                Some(p) => cfg.policy = p,
                None => bad(&format!(
                    "policy must be lsq-moment, pde-only or moment-replace, got '{value}'"
                )),
            },
            "omega" => match value.parse() {
                Ok(v) => cfg.omega = v,
                Err(_) => bad(&format!("omega must be a number, got '{value}'")),
            },
            "row_normalization" => match parse_bool(value) {
                Some(v) => cfg.row_normalization = v,
                None => bad(&format!("row_normalization must be on or off, got '{value}'")),
            },
            "ply_matrix" => match value {
                "raw" => cfg.ply_matrix = PlyMatrixMode::Raw,
                "reduced" => cfg.ply_matrix = PlyMatrixMode::Reduced,
                _ => bad(&format!("ply_matrix must be raw or reduced, got '{value}'")),
            },
            "membrane_correction" => match parse_bool(value) {
                Some(v) => cfg.membrane_correction = v,
                None => bad(&format!("membrane_correction must be on or off, got '{value}'")),
            },
            "nodes_per_ply" => match value.parse() {
                Ok(v) => cfg.nodes_per_ply = v,
                Err(_) => bad(&format!("nodes_per_ply must be an integer, got '{value}'")),
            },
            "ply_thickness" => match value.parse() {
                Ok(v) => cfg.ply_thickness = v,
                Err(_) => bad(&format!("ply_thickness must be a number, got '{value}'")),
            },
            "output_dir" => cfg.output_dir = value.to_string(),
            "points" => match parse_points(value) {
                Ok(v) => cfg.points = v,
                Err(e) => bad(&e),
            },
            "sweep_S" | "sweep_s" => match parse_list::<f64>(value) {
                Ok(v) => cfg.sweep_s = v,
                Err(e) => bad(&e),
            },
            "sweep_cp" => match parse_list::<usize>(value) {
                Ok(v) => cfg.sweep_cp = v,
                Err(e) => bad(&e),
            },
            _ => bad(&format!("unknown key '{key}'")),
        }
    }

    // cross-field validation; the pipeline always runs the recovery step
    if cfg.layers < 1 {
        errors.push("layers must be at least 1".into());
    }
    if cfg.s <= 0.0 {
        errors.push(format!("S must be positive, got {}", cfg.s));
    }
    if cfg.degree < 5 {
        errors.push(format!(
            "degree {} gives continuity {} but the recovery needs C^4; use degree >= 5",
            cfg.degree,
            cfg.degree.saturating_sub(1).min(cfg.degree)
        ));
    }
    if cfg.control_points < cfg.degree + 1 {
        errors.push(format!(
            "control_points {} must be at least degree + 1 = {}",
            cfg.control_points,
            cfg.degree + 1
        ));
    }
    if cfg.ply_thickness <= 0.0 {
        errors.push(format!("ply_thickness must be positive, got {}", cfg.ply_thickness));
    }
    if cfg.nodes_per_ply < 2 || cfg.nodes_per_ply % 2 != 0 {
        errors.push(format!(
            "nodes_per_ply must be an even number >= 2, got {}",
            cfg.nodes_per_ply
        ));
    }
    if cfg.omega <= 0.0 {
        errors.push(format!("omega must be positive, got {}", cfg.omega));
    }
    for &(a, b) in &cfg.points {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            errors.push(format!("sampling point ({a},{b}) outside the unit square"));
        }
    }
    if cfg.sweep_s.iter().any(|&s| s <= 0.0) {
        errors.push("sweep_S entries must be positive".into());
    }
    if cfg.sweep_cp.iter().any(|&m| m < cfg.degree + 1) {
        errors.push("sweep_cp entries must be at least degree + 1".into());
    }

    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Config(errors))
    }
}
