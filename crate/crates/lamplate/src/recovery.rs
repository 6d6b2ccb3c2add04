//! Equilibrium-based post-processing: layerwise in-plane stresses and their
//! in-plane derivatives from the deflection jet, then cumulative
//! through-thickness integration for the out-of-plane components. The
//! bottom face is the anchor: all three recovered components vanish there
//! exactly.

use crate::error::{Error, Result};
use crate::galerkin::SolutionField;
use crate::materials::{in_plane_ply_matrix, Layup, PlyMatrixMode};
use crate::splines::JetTable;
use nalgebra::{Matrix3, Vector3};

/// Through-thickness nodes with ply indices. Interface nodes appear twice,
/// once per adjacent ply, so discontinuous in-plane stresses keep both
/// one-sided values; the recovered out-of-plane components are single-valued
/// there by construction of the cumulative sums.
#[derive(Debug, Clone)]
pub struct ThicknessGrid {
    nodes: Vec<GridNode>,
    intervals_per_ply: usize,
    ply_count: usize,
    total_thickness: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct GridNode {
    pub z: f64,
    pub ply: usize,
}

impl ThicknessGrid {
    /// Uniform subdivision of every ply into `intervals_per_ply` spans
    /// (so `intervals_per_ply + 1` nodes per ply including both faces).
    pub fn new(layup: &Layup, intervals_per_ply: usize) -> Result<Self> {
        if intervals_per_ply < 1 {
            return Err(Error::GridMismatch(
                "at least one interval per ply is required".into(),
            ));
        }
        let ifaces = layup.interfaces();
        let mut nodes = Vec::new();
        for k in 0..layup.ply_count() {
            let (z0, z1) = (ifaces[k], ifaces[k + 1]);
            for i in 0..=intervals_per_ply {
                let z = z0 + (z1 - z0) * i as f64 / intervals_per_ply as f64;
                nodes.push(GridNode { z, ply: k });
            }
        }
        Ok(Self {
            nodes,
            intervals_per_ply,
            ply_count: layup.ply_count(),
            total_thickness: layup.total_thickness(),
        })
    }

    pub fn nodes(&self) -> &[GridNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn intervals_per_ply(&self) -> usize {
        self.intervals_per_ply
    }

    fn check(&self, layup: &Layup) -> Result<()> {
        if self.ply_count != layup.ply_count()
            || (self.total_thickness - layup.total_thickness()).abs()
                > 1e-12 * layup.total_thickness()
        {
            return Err(Error::GridMismatch(format!(
                "grid built for {} plies / t = {}, layup has {} / t = {}",
                self.ply_count,
                self.total_thickness,
                layup.ply_count(),
                layup.total_thickness()
            )));
        }
        Ok(())
    }

    /// Index of the node at `z`; sampling stations must coincide with grid
    /// nodes, anything else is rejected.
    pub fn node_at(&self, z: f64) -> Result<usize> {
        let (idx, node) = self
            .nodes
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1.z - z)
                    .abs()
                    .partial_cmp(&(b.1.z - z).abs())
                    .unwrap()
            })
            .unwrap();
        if (node.z - z).abs() > 1e-8 * self.total_thickness {
            return Err(Error::GridMismatch(format!(
                "x3 = {z} is not a grid node (closest {})",
                node.z
            )));
        }
        Ok(idx)
    }
}

/// All physical partial derivatives of the deflection at one in-plane point,
/// orders 0 through 4.
#[derive(Debug, Clone, Copy)]
pub struct DeflectionJet(pub JetTable);

impl DeflectionJet {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.0.get(a, b)
    }

    /// Curvature-style vectors (v11, v22, 2 v12) of the derivative of the
    /// curvature with respect to the listed in-plane directions.
    fn kappa(&self, d1: usize, d2: usize) -> Vector3<f64> {
        Vector3::new(
            self.get(2 + d1, d2),
            self.get(d1, 2 + d2),
            2.0 * self.get(1 + d1, 1 + d2),
        )
    }
}

/// Evaluate the order-4 jet of a solution field, enforcing the continuity
/// the fourth derivatives require.
pub fn deflection_jet(field: &SolutionField, point: (f64, f64)) -> Result<DeflectionJet> {
    let cont = field.space.min_continuity();
    if cont < 4 {
        return Err(Error::InsufficientContinuity { got: cont, want: 4 });
    }
    let jet = field.eval(point.0, point.1, 4)?;
    Ok(DeflectionJet(jet))
}

/// Body-force hooks of the through-thickness integrals. The benchmark has
/// none; implementors supply per-component values and the in-plane
/// divergence b1,1 + b2,2.
pub trait BodyForce {
    fn components(&self, x3: f64) -> [f64; 3];
    fn in_plane_divergence(&self, x3: f64) -> f64;
}

/// Options of the recovery step.
#[derive(Debug, Clone, Copy)]
pub struct RecoveryOptions {
    pub mode: PlyMatrixMode,
    /// Subtract the membrane strain that makes the in-plane force resultant
    /// vanish (N = A eps0 - B kappa = 0). Identity for symmetric stacks.
    pub membrane_correction: bool,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self {
            mode: PlyMatrixMode::default(),
            membrane_correction: true,
        }
    }
}

/// Through-thickness stress state at one in-plane sampling point.
#[derive(Debug, Clone)]
pub struct StressProfile {
    pub point: (f64, f64),
    pub grid: ThicknessGrid,
    pub s11: Vec<f64>,
    pub s22: Vec<f64>,
    pub s12: Vec<f64>,
    pub s13: Vec<f64>,
    pub s23: Vec<f64>,
    pub s33: Vec<f64>,
    pub normalized: bool,
}

impl StressProfile {
    pub fn component(&self, name: &str) -> &[f64] {
        match name {
            "s11" => &self.s11,
            "s22" => &self.s22,
            "s12" => &self.s12,
            "s13" => &self.s13,
            "s23" => &self.s23,
            "s33" => &self.s33,
            _ => panic!("unknown component {name}"),
        }
    }

    /// Out-of-plane components at the node closest to `z`.
    pub fn out_of_plane_at(&self, z: f64) -> Result<[f64; 3]> {
        let i = self.grid.node_at(z)?;
        Ok([self.s13[i], self.s23[i], self.s33[i]])
    }
}

struct PlyMatrices {
    per_ply: Vec<Matrix3<f64>>,
    /// eps0 = coupling * kappa when the membrane correction is active.
    coupling: Matrix3<f64>,
}

fn ply_matrices(layup: &Layup, opts: &RecoveryOptions) -> PlyMatrices {
    let per_ply: Vec<Matrix3<f64>> = (0..layup.ply_count())
        .map(|k| in_plane_ply_matrix(layup.ply_stiffness(k), opts.mode))
        .collect();
    let coupling = if opts.membrane_correction {
        let ifaces = layup.interfaces();
        let mut a = Matrix3::zeros();
        let mut b = Matrix3::zeros();
        for (k, q) in per_ply.iter().enumerate() {
            let (z0, z1) = (ifaces[k], ifaces[k + 1]);
            a += q * (z1 - z0);
            b += q * (z1 * z1 - z0 * z0) / 2.0;
        }
        a.try_inverse().map(|ai| ai * b).unwrap_or_else(Matrix3::zeros)
    } else {
        Matrix3::zeros()
    };
    PlyMatrices { per_ply, coupling }
}

/// Stress vector (s11, s22, s12) derivative at height z in ply k, driven by
/// the kappa-derivative vector.
fn stress_derivative(
    m: &PlyMatrices,
    k: usize,
    z: f64,
    kappa_d: &Vector3<f64>,
) -> Vector3<f64> {
    let eps0 = m.coupling * kappa_d;
    m.per_ply[k] * (eps0 - z * kappa_d)
}

/// Layerwise in-plane stresses at every grid node.
pub fn in_plane_profile(
    jet: &DeflectionJet,
    layup: &Layup,
    grid: &ThicknessGrid,
    opts: &RecoveryOptions,
) -> Result<[Vec<f64>; 3]> {
    grid.check(layup)?;
    let m = ply_matrices(layup, opts);
    let kappa = jet.kappa(0, 0);
    let mut s11 = Vec::with_capacity(grid.len());
    let mut s22 = Vec::with_capacity(grid.len());
    let mut s12 = Vec::with_capacity(grid.len());
    for node in grid.nodes() {
        let s = stress_derivative(&m, node.ply, node.z, &kappa);
        s11.push(s[0]);
        s22.push(s[1]);
        s12.push(s[2]);
    }
    Ok([s11, s22, s12])
}

/// First and second in-plane derivatives of the in-plane stresses at every
/// grid node: `d1[c]`, `d2[c]` hold the x1- and x2-derivatives of component
/// c, `d11`, `d22`, `d12` the second derivatives.
pub struct InPlaneDerivatives {
    pub d1: [Vec<f64>; 3],
    pub d2: [Vec<f64>; 3],
    pub d11: [Vec<f64>; 3],
    pub d22: [Vec<f64>; 3],
    pub d12: [Vec<f64>; 3],
}

pub fn in_plane_derivative_profiles(
    jet: &DeflectionJet,
    layup: &Layup,
    grid: &ThicknessGrid,
    opts: &RecoveryOptions,
) -> Result<InPlaneDerivatives> {
    grid.check(layup)?;
    let m = ply_matrices(layup, opts);
    let directions = [
        jet.kappa(1, 0),
        jet.kappa(0, 1),
        jet.kappa(2, 0),
        jet.kappa(0, 2),
        jet.kappa(1, 1),
    ];
    let mut out: Vec<[Vec<f64>; 3]> = (0..5)
        .map(|_| {
            [
                Vec::with_capacity(grid.len()),
                Vec::with_capacity(grid.len()),
                Vec::with_capacity(grid.len()),
            ]
        })
        .collect();
    for node in grid.nodes() {
        for (slot, kd) in directions.iter().enumerate() {
            let s = stress_derivative(&m, node.ply, node.z, kd);
            for c in 0..3 {
                out[slot][c].push(s[c]);
            }
        }
    }
    let mut it = out.into_iter();
    Ok(InPlaneDerivatives {
        d1: it.next().unwrap(),
        d2: it.next().unwrap(),
        d11: it.next().unwrap(),
        d22: it.next().unwrap(),
        d12: it.next().unwrap(),
    })
}

/// Cumulative trapezoid of `f` over the grid, starting at zero on the
/// bottom face. Interface duplicates contribute nothing (dz = 0), so the
/// result is single-valued across interfaces.
fn cumulative_trapezoid(grid: &ThicknessGrid, f: &[f64]) -> Vec<f64> {
    let nodes = grid.nodes();
    let mut out = Vec::with_capacity(nodes.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..nodes.len() {
        let dz = nodes[i].z - nodes[i - 1].z;
        acc += 0.5 * (f[i - 1] + f[i]) * dz;
        out.push(acc);
    }
    out
}

/// Out-of-plane stresses by through-thickness integration of the
/// equilibrium equations. The integration constants are taken on the
/// traction-free bottom face, so all three components vanish there exactly
/// and the derivative terms of the anchor drop out.
pub fn recover_out_of_plane(
    jet: &DeflectionJet,
    layup: &Layup,
    grid: &ThicknessGrid,
    opts: &RecoveryOptions,
    body_force: Option<&dyn BodyForce>,
) -> Result<[Vec<f64>; 3]> {
    grid.check(layup)?;
    let m = ply_matrices(layup, opts);

    let k1 = jet.kappa(1, 0);
    let k2 = jet.kappa(0, 1);
    let k11 = jet.kappa(2, 0);
    let k22 = jet.kappa(0, 2);
    let k12 = jet.kappa(1, 1);

    let n = grid.len();
    let mut g1 = Vec::with_capacity(n);
    let mut g2 = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    let mut b3 = Vec::with_capacity(n);
    for node in grid.nodes() {
        let d1 = stress_derivative(&m, node.ply, node.z, &k1);
        let d2 = stress_derivative(&m, node.ply, node.z, &k2);
        let d11 = stress_derivative(&m, node.ply, node.z, &k11);
        let d22 = stress_derivative(&m, node.ply, node.z, &k22);
        let d12 = stress_derivative(&m, node.ply, node.z, &k12);
        let (b, div_b) = match body_force {
            Some(bf) => (bf.components(node.z), bf.in_plane_divergence(node.z)),
            None => ([0.0; 3], 0.0),
        };
        g1.push(d1[0] + d2[2] + b[0]);
        g2.push(d1[2] + d2[1] + b[1]);
        h.push(d11[0] + d22[1] + 2.0 * d12[2] + div_b);
        b3.push(b[2]);
    }

    let s13: Vec<f64> = cumulative_trapezoid(grid, &g1).iter().map(|v| -v).collect();
    let s23: Vec<f64> = cumulative_trapezoid(grid, &g2).iter().map(|v| -v).collect();
    let inner = cumulative_trapezoid(grid, &h);
    let outer = cumulative_trapezoid(grid, &inner);
    let b3_int = cumulative_trapezoid(grid, &b3);
    let s33: Vec<f64> = outer.iter().zip(&b3_int).map(|(o, b)| o - b).collect();
    Ok([s13, s23, s33])
}

/// Full recovery at one in-plane point: jet, in-plane state and recovered
/// out-of-plane state on the grid.
pub fn recover_profile(
    field: &SolutionField,
    layup: &Layup,
    grid: &ThicknessGrid,
    point: (f64, f64),
    opts: &RecoveryOptions,
) -> Result<StressProfile> {
    let jet = deflection_jet(field, point)?;
    recover_profile_from_jet(&jet, layup, grid, point, opts)
}

pub fn recover_profile_from_jet(
    jet: &DeflectionJet,
    layup: &Layup,
    grid: &ThicknessGrid,
    point: (f64, f64),
    opts: &RecoveryOptions,
) -> Result<StressProfile> {
    let [s11, s22, s12] = in_plane_profile(jet, layup, grid, opts)?;
    let [s13, s23, s33] = recover_out_of_plane(jet, layup, grid, opts, None)?;
    Ok(StressProfile {
        point,
        grid: grid.clone(),
        s11,
        s22,
        s12,
        s13,
        s23,
        s33,
        normalized: false,
    })
}

/// Composite Simpson integral over the grid; exact for the piecewise
/// quadratic profiles the cumulative trapezoid produces when the interval
/// count per ply is even.
pub fn simpson_integral(grid: &ThicknessGrid, f: &[f64]) -> f64 {
    let nodes = grid.nodes();
    let mut acc = 0.0;
    let mut i = 0;
    while i + 1 < nodes.len() {
        let dz = nodes[i + 1].z - nodes[i].z;
        if dz == 0.0 {
            i += 1;
            continue;
        }
        if i + 2 < nodes.len() {
            let dz2 = nodes[i + 2].z - nodes[i + 1].z;
            if (dz2 - dz).abs() < 1e-12 * dz.abs() {
                acc += dz / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
                i += 2;
                continue;
            }
        }
        acc += 0.5 * (f[i] + f[i + 1]) * dz;
        i += 1;
    }
    acc
}
