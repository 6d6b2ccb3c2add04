//! Ply-level orthotropic stiffness, 90-degree rotation, Sun-style stack
//! homogenization and the homogenized bending stiffness matrix.

use crate::error::{Error, Result};
use nalgebra::{Matrix3, Matrix6};

/// Ply orientation; only cross-ply stacks are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Deg0,
    Deg90,
}

/// Orthotropic lamina described by engineering constants (stress units are
/// whatever the caller uses consistently; the benchmark material is MPa/mm).
#[derive(Debug, Clone, Copy)]
pub struct Lamina {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub g23: f64,
    pub g13: f64,
    pub g12: f64,
    pub nu23: f64,
    pub nu13: f64,
    pub nu12: f64,
    pub orientation: Orientation,
    pub thickness: f64,
}

impl Lamina {
    /// The benchmark material for a 0-degree ply of given thickness.
    pub fn benchmark(orientation: Orientation, thickness: f64) -> Self {
        Self {
            e1: 25_000.0,
            e2: 1_000.0,
            e3: 1_000.0,
            g23: 200.0,
            g13: 500.0,
            g12: 500.0,
            nu23: 0.25,
            nu13: 0.25,
            nu12: 0.25,
            orientation,
            thickness,
        }
    }

    fn validate(&self) -> Result<()> {
        let moduli = [self.e1, self.e2, self.e3, self.g23, self.g13, self.g12];
        if moduli.iter().any(|&m| m <= 0.0) {
            return Err(Error::InvalidLamina("all moduli must be positive".into()));
        }
        if self.thickness <= 0.0 {
            return Err(Error::InvalidLamina("thickness must be positive".into()));
        }
        Ok(())
    }
}

/// 6x6 orthotropic stiffness in Voigt order (11, 22, 33, 23, 13, 12).
#[derive(Debug, Clone, PartialEq)]
pub struct StiffnessTensor(pub Matrix6<f64>);

impl StiffnessTensor {
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }
}

/// Assemble the orthotropic compliance from engineering constants and invert
/// it. Fails with the offending eigenvalue if the constants are unphysical.
pub fn stiffness_from_engineering(lamina: &Lamina) -> Result<StiffnessTensor> {
    lamina.validate()?;
    let mut s = Matrix6::zeros();
    s[(0, 0)] = 1.0 / lamina.e1;
    s[(1, 1)] = 1.0 / lamina.e2;
    s[(2, 2)] = 1.0 / lamina.e3;
    s[(0, 1)] = -lamina.nu12 / lamina.e1;
    s[(0, 2)] = -lamina.nu13 / lamina.e1;
    s[(1, 2)] = -lamina.nu23 / lamina.e2;
    s[(1, 0)] = s[(0, 1)];
    s[(2, 0)] = s[(0, 2)];
    s[(2, 1)] = s[(1, 2)];
    s[(3, 3)] = 1.0 / lamina.g23;
    s[(4, 4)] = 1.0 / lamina.g13;
    s[(5, 5)] = 1.0 / lamina.g12;

    let eig = s.symmetric_eigenvalues();
    if let Some(bad) = eig.iter().find(|&&e| e <= 0.0) {
        return Err(Error::NotPositiveDefinite(*bad));
    }
    let mut c = s
        .try_inverse()
        .ok_or_else(|| Error::Factorization("compliance inversion failed".into()))?;
    c = (c + c.transpose()) / 2.0;
    let base = StiffnessTensor(c);
    match lamina.orientation {
        Orientation::Deg0 => Ok(base),
        Orientation::Deg90 => Ok(rotate90(&base)),
    }
}

/// In-plane 90-degree rotation of an orthotropic tensor: index swap 1 <-> 2.
pub fn rotate90(c: &StiffnessTensor) -> StiffnessTensor {
    let m = &c.0;
    let mut r = *m;
    r[(0, 0)] = m[(1, 1)];
    r[(1, 1)] = m[(0, 0)];
    r[(0, 2)] = m[(1, 2)];
    r[(2, 0)] = m[(1, 2)];
    r[(1, 2)] = m[(0, 2)];
    r[(2, 1)] = m[(0, 2)];
    r[(3, 3)] = m[(4, 4)];
    r[(4, 4)] = m[(3, 3)];
    StiffnessTensor(r)
}

/// Ordered stack of laminae, bottom to top.
#[derive(Debug, Clone)]
pub struct Layup {
    laminae: Vec<Lamina>,
    stiffness: Vec<StiffnessTensor>,
    interfaces: Vec<f64>,
    total_thickness: f64,
}

impl Layup {
    pub fn new(laminae: Vec<Lamina>) -> Result<Self> {
        if laminae.is_empty() {
            return Err(Error::EmptyLayup);
        }
        let stiffness = laminae
            .iter()
            .map(stiffness_from_engineering)
            .collect::<Result<Vec<_>>>()?;
        let total_thickness: f64 = laminae.iter().map(|l| l.thickness).sum();
        let mut interfaces = Vec::with_capacity(laminae.len() + 1);
        let mut z = -total_thickness / 2.0;
        interfaces.push(z);
        for l in &laminae {
            z += l.thickness;
            interfaces.push(z);
        }
        // pin the top face exactly
        *interfaces.last_mut().unwrap() = total_thickness / 2.0;
        Ok(Self {
            laminae,
            stiffness,
            interfaces,
            total_thickness,
        })
    }

    /// Cross-ply benchmark stack: 90/0 alternating from the bottom,
    /// `layers` plies of the benchmark material, `ply_thickness` each.
    pub fn cross_ply(layers: usize, ply_thickness: f64) -> Result<Self> {
        let laminae = (0..layers)
            .map(|k| {
                let o = if k % 2 == 0 { Orientation::Deg90 } else { Orientation::Deg0 };
                Lamina::benchmark(o, ply_thickness)
            })
            .collect();
        Self::new(laminae)
    }

    pub fn ply_count(&self) -> usize {
        self.laminae.len()
    }

    pub fn laminae(&self) -> &[Lamina] {
        &self.laminae
    }

    pub fn total_thickness(&self) -> f64 {
        self.total_thickness
    }

    /// Volume fraction of ply k.
    pub fn volume_fraction(&self, k: usize) -> f64 {
        self.laminae[k].thickness / self.total_thickness
    }

    /// Interface coordinates in [-t/2, t/2], ply k spans
    /// [interfaces[k], interfaces[k+1]].
    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    /// Rotated 3D stiffness of ply k.
    pub fn ply_stiffness(&self, k: usize) -> &StiffnessTensor {
        &self.stiffness[k]
    }

    /// True when the stacking sequence is mirror-symmetric about the
    /// mid-plane (ply thicknesses and orientations).
    pub fn is_symmetric(&self) -> bool {
        let n = self.laminae.len();
        (0..n / 2).all(|k| {
            let a = &self.laminae[k];
            let b = &self.laminae[n - 1 - k];
            a.orientation == b.orientation && (a.thickness - b.thickness).abs() < 1e-14
        })
    }
}

/// Homogenized equivalent-single-layer in-plane constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogenizedConstants {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub c66: f64,
    /// Auxiliary volume-averaged coupling constants.
    pub c13: f64,
    pub c23: f64,
}

/// Stack homogenization: volume averages with the interface correction term
/// for the in-plane block, plain volume average for the shear modulus. The
/// auxiliary averages C_a3 are volume averages.
pub fn homogenize(layup: &Layup) -> Result<HomogenizedConstants> {
    let n = layup.ply_count();
    if n == 0 {
        return Err(Error::EmptyLayup);
    }
    let c = |k: usize| layup.ply_stiffness(k).matrix();
    let tb = |k: usize| layup.volume_fraction(k);

    let cbar_a3: [f64; 2] = [
        (0..n).map(|k| tb(k) * c(k)[(0, 2)]).sum(),
        (0..n).map(|k| tb(k) * c(k)[(1, 2)]).sum(),
    ];
    let mut inplane = [[0.0f64; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let avg: f64 = (0..n).map(|k| tb(k) * c(k)[(a, b)]).sum();
            let corr: f64 = (1..n)
                .map(|k| {
                    (c(k)[(a, 2)] - cbar_a3[a]) * tb(k) * (c(0)[(b, 2)] - c(k)[(b, 2)])
                        / c(k)[(2, 2)]
                })
                .sum();
            inplane[a][b] = avg + corr;
        }
    }
    let c66: f64 = (0..n).map(|k| tb(k) * c(k)[(5, 5)]).sum();
    Ok(HomogenizedConstants {
        c11: inplane[0][0],
        c12: inplane[0][1],
        c22: inplane[1][1],
        c66,
        c13: cbar_a3[0],
        c23: cbar_a3[1],
    })
}

/// Homogenized bending stiffness, t^3/12 times the in-plane constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BendingStiffness {
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
    pub d66: f64,
}

impl BendingStiffness {
    pub fn as_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.d11, self.d12, 0.0, //
            self.d12, self.d22, 0.0, //
            0.0, 0.0, self.d66,
        )
    }

    /// Effective rigidity of the single-harmonic simply supported square
    /// plate: D11 + 2(D12 + 2 D66) + D22.
    pub fn effective(&self) -> f64 {
        self.d11 + 2.0 * (self.d12 + 2.0 * self.d66) + self.d22
    }
}

pub fn bending_stiffness(c: &HomogenizedConstants, total_thickness: f64) -> BendingStiffness {
    let f = total_thickness.powi(3) / 12.0;
    BendingStiffness {
        d11: f * c.c11,
        d12: f * c.c12,
        d22: f * c.c22,
        d66: f * c.c66,
    }
}

/// Which constitutive sub-matrix relates in-plane strains to in-plane
/// stresses in the recovery step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlyMatrixMode {
    /// The (1,2,6) sub-block of the rotated 3D tensor.
    Raw,
    /// Plane-stress reduction Q_ab = C_ab - C_a3 C_b3 / C_33.
    #[default]
    Reduced,
}

/// 3x3 matrix mapping (eps11, eps22, gamma12) to (sigma11, sigma22, sigma12)
/// for one ply; gamma12 is the engineering shear strain.
pub fn in_plane_ply_matrix(c: &StiffnessTensor, mode: PlyMatrixMode) -> Matrix3<f64> {
    let m = c.matrix();
    match mode {
        PlyMatrixMode::Raw => Matrix3::new(
            m[(0, 0)], m[(0, 1)], 0.0, //
            m[(0, 1)], m[(1, 1)], 0.0, //
            0.0, 0.0, m[(5, 5)],
        ),
        PlyMatrixMode::Reduced => {
            let c33 = m[(2, 2)];
            let q = |a: usize, b: usize| m[(a, b)] - m[(a, 2)] * m[(b, 2)] / c33;
            Matrix3::new(
                q(0, 0), q(0, 1), 0.0, //
                q(0, 1), q(1, 1), 0.0, //
                0.0, 0.0, m[(5, 5)],
            )
        }
    }
}
