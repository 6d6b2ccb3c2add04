//! Strong-form isogeometric collocation at Greville points: fourth-order
//! equilibrium rows in the interior, normal-moment rows on the edges,
//! boundary deflection fixed through ring elimination.

use crate::error::{Error, Result};
use crate::galerkin::{boundary_ring, SinusoidalLoad, SolutionField};
use crate::materials::BendingStiffness;
use crate::splines::DiscreteSpace;
use nalgebra::{DMatrix, DVector};

/// Axis-aligned edge of the rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X1Min,
    X1Max,
    X2Min,
    X2Max,
}

impl Side {
    /// Unit outward normal.
    pub fn normal(&self) -> (f64, f64) {
        match self {
            Side::X1Min => (-1.0, 0.0),
            Side::X1Max => (1.0, 0.0),
            Side::X2Min => (0.0, -1.0),
            Side::X2Max => (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    Edge(Side),
    Corner,
}

/// Tensor product of Greville abscissae mapped to physical coordinates.
#[derive(Debug, Clone)]
pub struct CollocationGrid {
    pub points: Vec<(f64, f64)>,
    pub classes: Vec<PointClass>,
    pub dims: (usize, usize),
}

pub fn build_grid(space: &DiscreteSpace) -> CollocationGrid {
    let (kv1, kv2) = space.knot_vectors();
    let (l1, l2) = space.lengths();
    let g1 = kv1.greville_points();
    let g2 = kv2.greville_points();
    let (m1, m2) = (g1.len(), g2.len());
    let mut points = Vec::with_capacity(m1 * m2);
    let mut classes = Vec::with_capacity(m1 * m2);
    for (i, &u) in g1.iter().enumerate() {
        for (j, &v) in g2.iter().enumerate() {
            points.push((u * l1, v * l2));
            let on1 = i == 0 || i == m1 - 1;
            let on2 = j == 0 || j == m2 - 1;
            classes.push(match (on1, on2) {
                (true, true) => PointClass::Corner,
                (true, false) => PointClass::Edge(if i == 0 { Side::X1Min } else { Side::X1Max }),
                (false, true) => PointClass::Edge(if j == 0 { Side::X2Min } else { Side::X2Max }),
                (false, false) => PointClass::Interior,
            });
        }
    }
    CollocationGrid {
        points,
        classes,
        dims: (m1, m2),
    }
}

/// How the simply supported conditions are turned into equations. The
/// boundary ring is always eliminated (w = 0 on the whole boundary, exact
/// for open knot vectors); the policies differ in what happens to the
/// normal-moment condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Moment rows at every edge non-corner point plus equilibrium rows at
    /// every interior point; rectangular least-squares solve.
    #[default]
    LsqMoment,
    /// Equilibrium rows at interior points only; the moment residual is a
    /// diagnostic, not a constraint.
    PdeOnly,
    /// Moment rows at every edge point, equilibrium rows only at interior
    /// points at least two index steps from the boundary; the edge
    /// conditions take over the role of the dropped near-boundary rows.
    MomentReplace,
}

impl Policy {
    pub fn parse(s: &str) -> Option<Policy> {
        match s {
            "lsq-moment" => Some(Policy::LsqMoment),
            "pde-only" => Some(Policy::PdeOnly),
            "moment-replace" => Some(Policy::MomentReplace),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Policy::LsqMoment => "lsq-moment",
            Policy::PdeOnly => "pde-only",
            Policy::MomentReplace => "moment-replace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Moment,
    Pde,
}

/// Assembled collocation equations over the free (non-ring) coefficients.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
    pub kinds: Vec<RowKind>,
    pub free: Vec<usize>,
    pub dims: (usize, usize),
    pub policy: Policy,
    pub omega: f64,
}

/// Diagnostics of a collocation solve: 2-norm residuals split by row kind.
#[derive(Debug, Clone, Copy, Default)]
pub struct CollocationDiagnostics {
    pub pde_residual: f64,
    pub moment_residual: f64,
}

/// Equilibrium row at an interior point: r.w = -(D11 w,1111
/// + 2(D12 + 2 D66) w,1122 + D22 w,2222), right-hand side q at the point.
pub fn pde_row(
    space: &DiscreteSpace,
    d: &BendingStiffness,
    point: (f64, f64),
) -> Result<DVector<f64>> {
    let (l1, l2) = space.lengths();
    if point.0 <= 0.0 || point.0 >= l1 || point.1 <= 0.0 || point.1 >= l2 {
        return Err(Error::BadRowLocation("boundary"));
    }
    pde_row_unchecked(space, d, point)
}

fn pde_row_unchecked(
    space: &DiscreteSpace,
    d: &BendingStiffness,
    point: (f64, f64),
) -> Result<DVector<f64>> {
    let (m1, m2) = space.basis_counts();
    let table = space.basis_table(point.0, point.1, 4)?;
    let mut row = DVector::zeros(m1 * m2);
    for (s, &gi) in table.indices.iter().enumerate() {
        row[gi] = -(d.d11 * table.values[4][0][s]
            + 2.0 * (d.d12 + 2.0 * d.d66) * table.values[2][2][s]
            + d.d22 * table.values[0][4][s]);
    }
    Ok(row)
}

/// Normal-moment row at an edge point with outward normal n:
/// r.w = -M_nn, right-hand side is the prescribed edge moment (zero here).
pub fn moment_row(
    space: &DiscreteSpace,
    d: &BendingStiffness,
    point: (f64, f64),
    normal: (f64, f64),
) -> Result<DVector<f64>> {
    let (l1, l2) = space.lengths();
    let on1 = point.0 == 0.0 || point.0 == l1;
    let on2 = point.1 == 0.0 || point.1 == l2;
    if on1 && on2 {
        return Err(Error::BadRowLocation("corner"));
    }
    if !on1 && !on2 {
        return Err(Error::BadRowLocation("interior"));
    }
    let (m1, m2) = space.basis_counts();
    let table = space.basis_table(point.0, point.1, 2)?;
    let (n1, n2) = normal;
    let mut row = DVector::zeros(m1 * m2);
    for (s, &gi) in table.indices.iter().enumerate() {
        let b11 = table.values[2][0][s];
        let b22 = table.values[0][2][s];
        let b12 = table.values[1][1][s];
        row[gi] = d.d11 * b11 * n1 * n1
            + d.d12 * (b22 * n1 * n1 + b11 * n2 * n2)
            + d.d22 * b22 * n2 * n2
            + 4.0 * d.d66 * b12 * n1 * n2;
    }
    Ok(row)
}

/// Assemble the chosen policy. Row order is deterministic: moment rows
/// first (grid order), then equilibrium rows (grid order).
pub fn assemble(
    space: &DiscreteSpace,
    d: &BendingStiffness,
    load: &SinusoidalLoad,
    policy: Policy,
    omega: f64,
    normalize_rows: bool,
) -> Result<CollocationSystem> {
    let grid = build_grid(space);
    let (m1, m2) = grid.dims;
    if matches!(policy, Policy::MomentReplace) && (m1 < 5 || m2 < 5) {
        return Err(Error::InvalidKnotVector(
            "moment-replace needs at least 5 basis functions per direction".into(),
        ));
    }
    let ring: std::collections::HashSet<usize> =
        boundary_ring((m1, m2)).into_iter().collect();
    let free: Vec<usize> = (0..m1 * m2).filter(|i| !ring.contains(i)).collect();

    let mut rows: Vec<DVector<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut kinds: Vec<RowKind> = Vec::new();

    if matches!(policy, Policy::LsqMoment | Policy::MomentReplace) {
        for (idx, class) in grid.classes.iter().enumerate() {
            if let PointClass::Edge(side) = class {
                let row = moment_row(space, d, grid.points[idx], side.normal())?;
                rows.push(omega * row);
                rhs.push(0.0);
                kinds.push(RowKind::Moment);
            }
        }
    }
    for (idx, class) in grid.classes.iter().enumerate() {
        if !matches!(class, PointClass::Interior) {
            continue;
        }
        if matches!(policy, Policy::MomentReplace) {
            // skip interior points adjacent to the boundary
            let (i, j) = (idx / m2, idx % m2);
            if i < 2 || i > m1 - 3 || j < 2 || j > m2 - 3 {
                continue;
            }
        }
        let row = pde_row_unchecked(space, d, grid.points[idx])?;
        rows.push(row);
        rhs.push(load.eval(space, grid.points[idx].0, grid.points[idx].1));
        kinds.push(RowKind::Pde);
    }

    let nr = rows.len();
    let nc = free.len();
    let mut matrix = DMatrix::zeros(nr, nc);
    let mut b = DVector::zeros(nr);
    for (r, row) in rows.iter().enumerate() {
        for (c, &i) in free.iter().enumerate() {
            matrix[(r, c)] = row[i];
        }
        b[r] = rhs[r];
    }
    if normalize_rows {
        for r in 0..nr {
            let s = matrix.row(r).amax();
            if s > 0.0 {
                for c in 0..nc {
                    matrix[(r, c)] /= s;
                }
                b[r] /= s;
            }
        }
    }
    Ok(CollocationSystem {
        matrix,
        rhs: b,
        kinds,
        free,
        dims: (m1, m2),
        policy,
        omega,
    })
}

/// Solve the assembled system: LU with partial pivoting when square,
/// othrwise an orthogonal least-squares solve. Residuals are reported per
/// row kind.
pub fn solve(
    space: &DiscreteSpace,
    system: &CollocationSystem,
) -> Result<(SolutionField, CollocationDiagnostics)> {
    let nr = system.matrix.nrows();
    let nc = system.matrix.ncols();
    let w = if nr == nc {
        let lu = system.matrix.clone().lu();
        lu.solve(&system.rhs)
            .ok_or_else(|| Error::Factorization("collocation LU solve failed".into()))?
    } else {
        let svd = system
            .matrix
            .clone()
            .svd(true, true);
        let min_sv = svd.singular_values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let max_sv = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
        if min_sv <= 1e-13 * max_sv {
            let col = svd
                .singular_values
                .iter()
                .position(|&s| s <= 1e-13 * max_sv)
                .unwrap_or(0);
            return Err(Error::RankDeficient(col));
        }
        svd.solve(&system.rhs, 0.0)
            .map_err(|e| Error::Factorization(e.to_string()))?
    };

    // residual check for square systems
    let res = &system.matrix * &w - &system.rhs;
    if nr == nc {
        let scale = system.rhs.norm();
        if scale > 0.0 && res.norm() > 1e-10 * scale {
            return Err(Error::Factorization(format!(
                "collocation residual {:.3e} exceeds 1e-10 * {:.3e}",
                res.norm(),
                scale
            )));
        }
    }
    let mut pde_sq = 0.0;
    let mut mom_sq = 0.0;
    for (r, kind) in system.kinds.iter().enumerate() {
        match kind {
            RowKind::Pde => pde_sq += res[r] * res[r],
            RowKind::Moment => mom_sq += res[r] * res[r],
        }
    }

    let (m1, m2) = system.dims;
    let mut coeffs = DMatrix::zeros(m1, m2);
    for (c, &i) in system.free.iter().enumerate() {
        coeffs[(i / m2, i % m2)] = w[c];
    }
    Ok((
        SolutionField {
            space: space.clone(),
            coeffs,
        },
        CollocationDiagnostics {
            pde_residual: pde_sq.sqrt(),
            moment_residual: mom_sq.sqrt(),
        },
    ))
}

/// Assemble and solve in one call with default row normalization.
pub fn solve_plate(
    space: &DiscreteSpace,
    d: &BendingStiffness,
    load: &SinusoidalLoad,
    policy: Policy,
    omega: f64,
) -> Result<(SolutionField, CollocationDiagnostics)> {
    let system = assemble(space, d, load, policy, omega, true)?;
    solve(space, &system)
}
