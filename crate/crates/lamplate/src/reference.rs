//! Closed-form single-harmonic solution of the simply supported plate,
//! stress normalization, error metrics and the embedded benchmark tables.

use crate::error::{Error, Result};
use crate::materials::BendingStiffness;
use crate::recovery::{DeflectionJet, StressProfile};
use crate::splines::JetTable;

pub use crate::fixtures::{paper_fixtures, FixturePoint, FixtureRecord, Method};

/// w = W sin(pi x1 / L) sin(pi x2 / L) with every partial derivative a
/// product of shifted sines.
#[derive(Debug, Clone, Copy)]
pub struct NavierField {
    amplitude: f64,
    length: f64,
}

impl NavierField {
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// d^{a+b} w / dx1^a dx2^b at (x1, x2).
    pub fn eval(&self, a: usize, b: usize, x1: f64, x2: f64) -> f64 {
        let k = std::f64::consts::PI / self.length;
        let cyc = |n: usize, x: f64| -> f64 {
            let v = k * x;
            k.powi(n as i32)
                * match n % 4 {
                    0 => v.sin(),
                    1 => v.cos(),
                    2 => -v.sin(),
                    _ => -v.cos(),
                }
        };
        self.amplitude * cyc(a, x1) * cyc(b, x2)
    }

    /// Full order-4 jet at a point.
    pub fn jet(&self, x1: f64, x2: f64) -> DeflectionJet {
        let mut t = JetTable::default();
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                t.set(a, b, self.eval(a, b, x1, x2));
            }
        }
        DeflectionJet(t)
    }
}

/// Closed-form amplitude of the simply supported square plate under the
/// single-harmonic load: W = -sigma0 L^4 / (pi^4 D_eff).
pub fn navier_solution(d: &BendingStiffness, length: f64, sigma0: f64) -> NavierField {
    let w = -sigma0 * length.powi(4) / (std::f64::consts::PI.powi(4) * d.effective());
    NavierField {
        amplitude: w,
        length,
    }
}

/// Dimensionless stresses: in-plane over sigma0 S^2, transverse shear over
/// sigma0 S, normal over sigma0.
pub fn normalize(profile: &StressProfile, s: f64, sigma0: f64) -> Result<StressProfile> {
    if s <= 0.0 {
        return Err(Error::BadNormalization(s));
    }
    let div = |v: &[f64], by: f64| -> Vec<f64> { v.iter().map(|x| x / by).collect() };
    Ok(StressProfile {
        point: profile.point,
        grid: profile.grid.clone(),
        s11: div(&profile.s11, sigma0 * s * s),
        s22: div(&profile.s22, sigma0 * s * s),
        s12: div(&profile.s12, sigma0 * s * s),
        s13: div(&profile.s13, sigma0 * s),
        s23: div(&profile.s23, sigma0 * s),
        s33: div(&profile.s33, sigma0),
        normalized: true,
    })
}

/// Relative L2 error over the thickness, in percent, for the out-of-plane
/// components. `None` when the reference component is identically zero.
pub fn l2_thickness_error(
    recovered: &StressProfile,
    analytic: &StressProfile,
) -> Result<[Option<f64>; 3]> {
    let ga = analytic.grid.nodes();
    let gr = recovered.grid.nodes();
    if ga.len() != gr.len()
        || ga
            .iter()
            .zip(gr)
            .any(|(a, b)| (a.z - b.z).abs() > 1e-12 * (a.z.abs() + 1.0))
    {
        return Err(Error::GridMismatch(
            "profiles live on different thickness grids".into(),
        ));
    }
    let trapz = |f: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = 0.0;
        for i in 1..ga.len() {
            let dz = ga[i].z - ga[i - 1].z;
            acc += 0.5 * (f(i - 1) + f(i)) * dz;
        }
        acc
    };
    let pairs = [
        (&recovered.s13, &analytic.s13),
        (&recovered.s23, &analytic.s23),
        (&recovered.s33, &analytic.s33),
    ];
    let dens: Vec<f64> = pairs.iter().map(|(_, av)| trapz(&|i| av[i].powi(2))).collect();
    // a component whose reference carries only rounding noise relative to
    // the others is undefined, not zero
    let den_scale = dens.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut out = [None; 3];
    for (c, (rv, av)) in pairs.iter().enumerate() {
        let num = trapz(&|i| (rv[i] - av[i]).powi(2));
        out[c] = if dens[c] > 1e-24 * den_scale && dens[c] > 0.0 {
            Some(100.0 * (num / dens[c]).sqrt())
        } else {
            None
        };
    }
    Ok(out)
}

/// Pointwise difference between an analytic and a recovered value, in
/// percent. Relative when the analytic value is resolvable at the given
/// scale, otherwise the absolute difference (also expressed in percent)
/// with the starred flag set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseDiff {
    pub delta: f64,
    pub starred: bool,
}

pub fn pointwise_diff(analytic: f64, recovered: f64, scale: f64) -> PointwiseDiff {
    if analytic.abs() > 1e-12 * scale.abs() {
        PointwiseDiff {
            delta: 100.0 * (analytic - recovered).abs() / analytic.abs(),
            starred: false,
        }
    } else {
        PointwiseDiff {
            delta: 100.0 * (analytic - recovered).abs(),
            starred: true,
        }
    }
}
