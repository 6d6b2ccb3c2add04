//! Univariate and tensor-product B-spline bases with derivatives through
//! order 4, Greville abscissae, and the affine map of a rectangular
//! mid-plane.
//!
//! Basis values and derivatives follow the Cox-de Boor recursion in the
//! triangular-table form of "The NURBS Book" (Piegl & Tiller, A2.3).

use crate::error::{Error, Result};

/// Highest derivative order the recovery pipeline needs.
pub const MAX_DERIV_ORDER: usize = 4;

/// Open knot vector on [0,1] with uniform interior spans.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    values: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    /// Open uniform knot vector with `elements` nonzero spans on [0,1].
    /// Basis count is `degree + elements` (maximal interior smoothness).
    pub fn open_uniform(degree: usize, elements: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidKnotVector(format!(
                "degree must be >= 1, got {degree}"
            )));
        }
        if elements < 1 {
            return Err(Error::InvalidKnotVector(format!(
                "elements must be >= 1, got {elements}"
            )));
        }
        let mut values = Vec::with_capacity(2 * (degree + 1) + elements - 1);
        values.extend(std::iter::repeat(0.0).take(degree + 1));
        // interior knots as exact ratios of the element count
        for i in 1..elements {
            values.push(i as f64 / elements as f64);
        }
        values.extend(std::iter::repeat(1.0).take(degree + 1));
        Ok(Self { values, degree })
    }

    /// Construct from raw knots, validating the open-vector invariants.
    pub fn from_values(values: Vec<f64>, degree: usize) -> Result<Self> {
        if values.len() < 2 * (degree + 1) {
            return Err(Error::InvalidKnotVector(format!(
                "need at least {} knots for degree {degree}",
                2 * (degree + 1)
            )));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnotVector("knots must be nondecreasing".into()));
        }
        let first = values[0];
        let last = *values.last().unwrap();
        if values.iter().take_while(|&&v| v == first).count() != degree + 1
            || values.iter().rev().take_while(|&&v| v == last).count() != degree + 1
        {
            return Err(Error::InvalidKnotVector(format!(
                "first and last knots must each repeat exactly {} times",
                degree + 1
            )));
        }
        let kv = Self { values, degree };
        if kv.basis_count() < degree + 1 {
            return Err(Error::InvalidKnotVector("too few basis functions".into()));
        }
        Ok(kv)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of basis functions m = (#knots) - degree - 1.
    pub fn basis_count(&self) -> usize {
        self.values.len() - self.degree - 1
    }

    /// Number of nonzero spans.
    pub fn element_count(&self) -> usize {
        self.values
            .windows(2)
            .filter(|w| w[1] > w[0])
            .count()
    }

    /// Minimum interior continuity (degree for a single element).
    pub fn min_continuity(&self) -> usize {
        let mut min_c = self.degree;
        let mut i = self.degree + 1;
        while i < self.values.len() - self.degree - 1 {
            let v = self.values[i];
            let mult = self.values[i..].iter().take_while(|&&x| x == v).count();
            min_c = min_c.min(self.degree - mult.min(self.degree));
            i += mult;
        }
        min_c
    }

    /// Knot span containing `u`. Right-limit convention; at u = 1 the last
    /// nonzero span is used (left limit), so boundary evaluations are
    /// well-defined.
    pub fn find_span(&self, u: f64) -> usize {
        let n = self.basis_count() - 1;
        let p = self.degree;
        if u >= self.values[n + 1] {
            return n;
        }
        if u <= self.values[p] {
            return p;
        }
        let mut lo = p;
        let mut hi = n + 1;
        let mut mid = (lo + hi) / 2;
        while u < self.values[mid] || u >= self.values[mid + 1] {
            if u < self.values[mid] {
                hi = mid;
            } else {
                lo = mid;
            }
            mid = (lo + hi) / 2;
        }
        mid
    }

    /// Values and derivatives of the `degree + 1` basis functions supported
    /// at `u`, in parametric coordinates. `ders[k][j]` is the k-th
    /// derivative of basis `first + j`; orders above the degree are zero.
    pub fn basis_functions(&self, u: f64, max_order: usize) -> Result<BasisRow> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::ParameterOutOfRange { value: u });
        }
        let p = self.degree;
        let span = self.find_span(u);
        let knots = &self.values;

        // ndu: upper triangle basis values, lower triangle knot differences
        let mut ndu = vec![vec![0.0; p + 1]; p + 1];
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        ndu[0][0] = 1.0;
        for j in 1..=p {
            left[j] = u - knots[span + 1 - j];
            right[j] = knots[span + j] - u;
            let mut saved = 0.0;
            for r in 0..j {
                ndu[j][r] = right[r + 1] + left[j - r];
                let temp = ndu[r][j - 1] / ndu[j][r];
                ndu[r][j] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            ndu[j][j] = saved;
        }

        let mut ders = vec![vec![0.0; p + 1]; max_order + 1];
        for j in 0..=p {
            ders[0][j] = ndu[j][p];
        }

        let n_out = max_order.min(p);
        let mut a = [vec![0.0; p + 1], vec![0.0; p + 1]];
        for r in 0..=p {
            let mut s1 = 0;
            let mut s2 = 1;
            a[0].iter_mut().for_each(|x| *x = 0.0);
            a[1].iter_mut().for_each(|x| *x = 0.0);
            a[0][0] = 1.0;
            for k in 1..=n_out {
                let mut d = 0.0;
                let rk = r as isize - k as isize;
                let pk = p - k;
                if r >= k {
                    a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                    d = a[s2][0] * ndu[rk as usize][pk];
                }
                let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
                let j2 = if r as isize - 1 <= pk as isize { k - 1 } else { p - r };
                for j in j1..=j2 {
                    a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][(rk + j as isize) as usize];
                    d += a[s2][j] * ndu[(rk + j as isize) as usize][pk];
                }
                if r <= pk {
                    a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                    d += a[s2][k] * ndu[r][pk];
                }
                ders[k][r] = d;
                std::mem::swap(&mut s1, &mut s2);
            }
        }

        // factorial prefactors p!/(p-k)!
        let mut factor = p as f64;
        for k in 1..=n_out {
            for j in 0..=p {
                ders[k][j] *= factor;
            }
            factor *= (p - k) as f64;
        }

        Ok(BasisRow {
            first: span - p,
            ders,
        })
    }

    /// Greville abscissae: knot averages, one per basis function.
    pub fn greville_points(&self) -> Vec<f64> {
        let p = self.degree;
        (0..self.basis_count())
            .map(|i| self.values[i + 1..i + 1 + p].iter().sum::<f64>() / p as f64)
            .collect()
    }
}

/// Supported basis functions at one parameter value.
#[derive(Debug, Clone)]
pub struct BasisRow {
    /// Index of the first supported function.
    pub first: usize,
    /// `ders[k][j]`: k-th derivative of basis `first + j`.
    pub ders: Vec<Vec<f64>>,
}

/// Tensor-product spline space on a rectangle, with the affine geometry map
/// (xi, eta) -> (L1 xi, L2 eta).
#[derive(Debug, Clone)]
pub struct DiscreteSpace {
    kv1: KnotVector,
    kv2: KnotVector,
    l1: f64,
    l2: f64,
}

/// Table of w and mixed partials d^{a+b} w / dx1^a dx2^b for a+b <= 4,
/// in physical coordinates.
#[derive(Debug, Clone, Copy, Default)]
pub struct JetTable {
    partials: [[f64; MAX_DERIV_ORDER + 1]; MAX_DERIV_ORDER + 1],
}

impl JetTable {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.partials[a][b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: f64) {
        self.partials[a][b] = v;
    }

    pub fn value(&self) -> f64 {
        self.partials[0][0]
    }
}

/// Supported bivariate basis functions at a physical point, with all mixed
/// partials up to a total order, in physical coordinates.
#[derive(Debug, Clone)]
pub struct BasisTable {
    /// Flat control-net indices (row-major, second index fastest).
    pub indices: Vec<usize>,
    /// `values[a][b][k]`: d^{a+b} B_k / dx1^a dx2^b for supported function k.
    pub values: Vec<Vec<Vec<f64>>>,
}

impl DiscreteSpace {
    pub fn new(kv1: KnotVector, kv2: KnotVector, l1: f64, l2: f64) -> Result<Self> {
        if !(l1 > 0.0 && l2 > 0.0) {
            return Err(Error::InvalidKnotVector(format!(
                "edge lengths must be positive, got {l1} x {l2}"
            )));
        }
        Ok(Self { kv1, kv2, l1, l2 })
    }

    /// Square plate with equal degree and control-point count per direction.
    pub fn square(degree: usize, control_points: usize, edge: f64) -> Result<Self> {
        if control_points < degree + 1 {
            return Err(Error::InvalidKnotVector(format!(
                "control points {control_points} below degree+1 = {}",
                degree + 1
            )));
        }
        let elements = control_points - degree;
        let kv = KnotVector::open_uniform(degree, elements)?;
        Self::new(kv.clone(), kv, edge, edge)
    }

    pub fn knot_vectors(&self) -> (&KnotVector, &KnotVector) {
        (&self.kv1, &self.kv2)
    }

    pub fn basis_counts(&self) -> (usize, usize) {
        (self.kv1.basis_count(), self.kv2.basis_count())
    }

    pub fn lengths(&self) -> (f64, f64) {
        (self.l1, self.l2)
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.kv1.degree(), self.kv2.degree())
    }

    /// Minimum interior continuity over both directions.
    pub fn min_continuity(&self) -> usize {
        self.kv1.min_continuity().min(self.kv2.min_continuity())
    }

    /// Flat index of control coefficient (i1, i2), row-major with i2 fastest.
    pub fn flat_index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.kv2.basis_count() + i2
    }

    fn check_point(&self, x1: f64, x2: f64) -> Result<(f64, f64)> {
        if !(0.0..=self.l1).contains(&x1) || !(0.0..=self.l2).contains(&x2) {
            return Err(Error::PointOutOfDomain(x1, x2, self.l1, self.l2));
        }
        Ok((x1 / self.l1, x2 / self.l2))
    }

    /// All supported bivariate basis derivatives at a physical point.
    pub fn basis_table(&self, x1: f64, x2: f64, max_total_order: usize) -> Result<BasisTable> {
        let (u, v) = self.check_point(x1, x2)?;
        let r1 = self.kv1.basis_functions(u, max_total_order)?;
        let r2 = self.kv2.basis_functions(v, max_total_order)?;
        let n1 = self.kv1.degree() + 1;
        let n2 = self.kv2.degree() + 1;
        let m2 = self.kv2.basis_count();

        let mut indices = Vec::with_capacity(n1 * n2);
        for j1 in 0..n1 {
            for j2 in 0..n2 {
                indices.push((r1.first + j1) * m2 + (r2.first + j2));
            }
        }
        let mut values = vec![vec![Vec::new(); max_total_order + 1]; max_total_order + 1];
        for a in 0..=max_total_order {
            for b in 0..=(max_total_order - a) {
                let s1 = self.l1.powi(a as i32);
                let s2 = self.l2.powi(b as i32);
                let mut row = Vec::with_capacity(n1 * n2);
                for j1 in 0..n1 {
                    for j2 in 0..n2 {
                        row.push(r1.ders[a][j1] * r2.ders[b][j2] / (s1 * s2));
                    }
                }
                values[a][b] = row;
            }
        }
        Ok(BasisTable { indices, values })
    }

    /// Evaluate a coefficient field and all physical partials with total
    /// order up to `max_total_order` (<= 4).
    pub fn surface_eval(
        &self,
        coeffs: &nalgebra::DMatrix<f64>,
        x1: f64,
        x2: f64,
        max_total_order: usize,
    ) -> Result<JetTable> {
        let (m1, m2) = self.basis_counts();
        if coeffs.nrows() != m1 || coeffs.ncols() != m2 {
            return Err(Error::CoefficientShape {
                got_rows: coeffs.nrows(),
                got_cols: coeffs.ncols(),
                want_rows: m1,
                want_cols: m2,
            });
        }
        let (u, v) = self.check_point(x1, x2)?;
        let r1 = self.kv1.basis_functions(u, max_total_order)?;
        let r2 = self.kv2.basis_functions(v, max_total_order)?;
        let n1 = self.kv1.degree() + 1;
        let n2 = self.kv2.degree() + 1;

        let mut jet = JetTable::default();
        for a in 0..=max_total_order {
            for b in 0..=(max_total_order - a) {
                let mut acc = 0.0;
                for j1 in 0..n1 {
                    let w1 = r1.ders[a][j1];
                    if w1 == 0.0 {
                        continue;
                    }
                    for j2 in 0..n2 {
                        acc += w1 * r2.ders[b][j2] * coeffs[(r1.first + j1, r2.first + j2)];
                    }
                }
                jet.set(a, b, acc / (self.l1.powi(a as i32) * self.l2.powi(b as i32)));
            }
        }
        Ok(jet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    #[test]
    fn open_knot_vector_examples() {
        let kv = KnotVector::open_uniform(6, 1).unwrap();
        assert_eq!(kv.values(), &[0.0; 7].iter().chain([1.0; 7].iter()).copied().collect::<Vec<_>>()[..]);
        assert_eq!(kv.basis_count(), 7);

        let kv = KnotVector::open_uniform(2, 2).unwrap();
        assert_eq!(kv.values(), &[0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]);
        assert_eq!(kv.basis_count(), 4);

        let kv = KnotVector::open_uniform(1, 1).unwrap();
        assert_eq!(kv.values(), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(kv.basis_count(), 2);

        assert!(KnotVector::open_uniform(0, 1).is_err());
        assert!(KnotVector::open_uniform(1, 0).is_err());
    }

    #[test]
    fn hat_functions_at_quarter() {
        let kv = KnotVector::open_uniform(1, 1).unwrap();
        let row = kv.basis_functions(0.25, 0).unwrap();
        assert_eq!(row.first, 0);
        assert_relative_eq!(row.ders[0][0], 0.75);
        assert_relative_eq!(row.ders[0][1], 0.25);
    }

    #[test]
    fn bernstein_partition_of_unity() {
        let kv = KnotVector::open_uniform(6, 1).unwrap();
        for &u in &[0.0, 0.1, 0.37, 0.5, 0.99, 1.0] {
            let row = kv.basis_functions(u, 0).unwrap();
            let sum: f64 = row.ders[0].iter().sum();
            assert_relative_eq!(sum, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_parameter_outside_unit_interval() {
        let kv = KnotVector::open_uniform(2, 2).unwrap();
        assert!(kv.basis_functions(-0.1, 0).is_err());
        assert!(kv.basis_functions(1.1, 0).is_err());
    }

    #[test]
    fn orders_above_degree_are_zero() {
        let kv = KnotVector::open_uniform(2, 3).unwrap();
        let row = kv.basis_functions(0.4, 4).unwrap();
        assert!(row.ders[3].iter().all(|&v| v == 0.0));
        assert!(row.ders[4].iter().all(|&v| v == 0.0));
    }

    /// Central finite difference of one order lower, the independent oracle
    /// for every implemented derivative order.
    fn fd_derivative(kv: &KnotVector, u: f64, order: usize, h: f64) -> Vec<f64> {
        let m = kv.basis_count();
        let lower = |x: f64| -> Vec<f64> {
            let row = kv.basis_functions(x, order - 1).unwrap();
            let mut full = vec![0.0; m];
            for (j, &v) in row.ders[order - 1].iter().enumerate() {
                full[row.first + j] = v;
            }
            full
        };
        let plus = lower(u + h);
        let minus = lower(u - h);
        plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect()
    }

    #[test]
    fn second_derivative_matches_finite_difference_at_zero() {
        // degree 6 single element, second derivative row near u = 0
        let kv = KnotVector::open_uniform(6, 1).unwrap();
        let u = 1e-4; // keep the FD stencil inside the domain
        let row = kv.basis_functions(u, 2).unwrap();
        let fd = fd_derivative(&kv, u, 2, 1e-5);
        let scale = row.ders[2].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (j, &v) in row.ders[2].iter().enumerate() {
            assert_relative_eq!(v, fd[row.first + j], max_relative = 1e-6, epsilon = 1e-6 * scale);
        }
    }

    #[test]
    fn all_orders_match_finite_difference() {
        // interior evaluation points away from knots, where the finite
        // difference stencil sees a smooth function
        for (p, e) in [(5usize, 1usize), (6, 1), (6, 3), (4, 4)] {
            let kv = KnotVector::open_uniform(p, e).unwrap();
            for &u in &[0.123, 0.457, 0.871] {
                for order in 1..=4.min(p) {
                    let row = kv.basis_functions(u, order).unwrap();
                    let fd = fd_derivative(&kv, u, order, 1e-5);
                    let scale = row.ders[order].iter().fold(1e-30f64, |m, v| m.max(v.abs()));
                    for (j, &v) in row.ders[order].iter().enumerate() {
                        assert_relative_eq!(
                            v,
                            fd[row.first + j],
                            max_relative = 1e-6,
                            epsilon = 1e-6 * scale
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn greville_examples() {
        let kv = KnotVector::open_uniform(6, 1).unwrap();
        let g = kv.greville_points();
        for (i, &gi) in g.iter().enumerate() {
            assert_relative_eq!(gi, i as f64 / 6.0, epsilon = 1e-15);
        }

        let kv = KnotVector::open_uniform(2, 2).unwrap();
        assert_eq!(kv.greville_points(), vec![0.0, 0.25, 0.75, 1.0]);

        let kv = KnotVector::open_uniform(1, 1).unwrap();
        assert_eq!(kv.greville_points(), vec![0.0, 1.0]);
    }

    #[test]
    fn greville_count_and_monotone() {
        for (p, e) in [(2usize, 5usize), (3, 4), (6, 1), (6, 15)] {
            let kv = KnotVector::open_uniform(p, e).unwrap();
            let g = kv.greville_points();
            assert_eq!(g.len(), kv.basis_count());
            assert!(g.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(g[0], 0.0);
            assert_eq!(*g.last().unwrap(), 1.0);
        }
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let space = DiscreteSpace::square(6, 7, 2.0).unwrap();
        let (m1, m2) = space.basis_counts();
        let coeffs = DMatrix::from_element(m1, m2, 3.25);
        let jet = space.surface_eval(&coeffs, 0.7, 1.3, 4).unwrap();
        assert_relative_eq!(jet.value(), 3.25, epsilon = 1e-12);
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                if a + b > 0 {
                    assert!(jet.get(a, b).abs() < 1e-10, "d({a},{b}) = {}", jet.get(a, b));
                }
            }
        }
    }

    /// Interpolate a function at the Greville tensor grid; with degree >= the
    /// polynomial degree this reproduces polynomials exactly.
    fn interpolate(space: &DiscreteSpace, f: impl Fn(f64, f64) -> f64) -> DMatrix<f64> {
        let (kv1, kv2) = space.knot_vectors();
        let (l1, l2) = space.lengths();
        let g1 = kv1.greville_points();
        let g2 = kv2.greville_points();
        let m1 = kv1.basis_count();
        let m2 = kv2.basis_count();
        let coll = |kv: &KnotVector, g: &[f64]| {
            let m = kv.basis_count();
            let mut a = DMatrix::zeros(m, m);
            for (r, &u) in g.iter().enumerate() {
                let row = kv.basis_functions(u, 0).unwrap();
                for (j, &v) in row.ders[0].iter().enumerate() {
                    a[(r, row.first + j)] = v;
                }
            }
            a
        };
        let a1 = coll(kv1, &g1).lu();
        let a2 = coll(kv2, &g2).lu();
        let mut vals = DMatrix::zeros(m1, m2);
        for i in 0..m1 {
            for j in 0..m2 {
                vals[(i, j)] = f(g1[i] * l1, g2[j] * l2);
            }
        }
        let tmp = a1.solve(&vals).unwrap();
        a2.solve(&tmp.transpose()).unwrap().transpose()
    }

    #[test]
    fn quadratic_reproduction() {
        let space = DiscreteSpace::square(6, 7, 3.0).unwrap();
        let coeffs = interpolate(&space, |x1, _| x1 * x1);
        let jet = space.surface_eval(&coeffs, 1.1, 2.0, 4).unwrap();
        assert_relative_eq!(jet.value(), 1.1 * 1.1, max_relative = 1e-12);
        assert_relative_eq!(jet.get(2, 0), 2.0, max_relative = 1e-9);
        assert!(jet.get(4, 0).abs() < 1e-9);
    }

    #[test]
    fn polynomial_reproduction_exact_derivatives() {
        let space = DiscreteSpace::square(5, 9, 2.0).unwrap();
        // f = x1^3 x2^2
        let coeffs = interpolate(&space, |x1, x2| x1.powi(3) * x2.powi(2));
        let (x1, x2) = (0.9, 1.4);
        let jet = space.surface_eval(&coeffs, x1, x2, 4).unwrap();
        let expect = |a: usize, b: usize| -> f64 {
            let fa = match a {
                0 => x1.powi(3),
                1 => 3.0 * x1 * x1,
                2 => 6.0 * x1,
                3 => 6.0,
                _ => 0.0,
            };
            let fb = match b {
                0 => x2 * x2,
                1 => 2.0 * x2,
                2 => 2.0,
                _ => 0.0,
            };
            fa * fb
        };
        let scale = jet.get(0, 0).abs().max(1.0);
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                assert_relative_eq!(
                    jet.get(a, b),
                    expect(a, b),
                    max_relative = 1e-9,
                    epsilon = 1e-9 * scale
                );
            }
        }
    }

    #[test]
    fn surface_derivatives_match_finite_differences() {
        let space = DiscreteSpace::square(6, 9, 1.7).unwrap();
        let (m1, m2) = space.basis_counts();
        // smooth non-separable coefficients so mixed partials are nonzero
        let coeffs = DMatrix::from_fn(m1, m2, |i, j| {
            ((i as f64) * 0.61).sin() * ((j as f64) * 0.37).cos()
                + 0.2 * ((i as f64 + 2.0 * j as f64) * 0.3).sin()
        });
        let (x1, x2) = (0.83, 0.61);
        let h = 1e-4;
        let jet = space.surface_eval(&coeffs, x1, x2, 4).unwrap();
        for a in 1..=4usize {
            for b in 0..=(4 - a) {
                let plus = space.surface_eval(&coeffs, x1 + h, x2, a + b - 1).unwrap();
                let minus = space.surface_eval(&coeffs, x1 - h, x2, a + b - 1).unwrap();
                let fd = (plus.get(a - 1, b) - minus.get(a - 1, b)) / (2.0 * h);
                // scale of the whole derivative order, so near-zero entries
                // are judged against the finite-difference noise floor
                let mut scale = 1e-12f64;
                for aa in 0..=(a + b) {
                    scale = scale.max(jet.get(aa, a + b - aa).abs());
                }
                assert!(
                    (jet.get(a, b) - fd).abs() <= 2e-6 * scale,
                    "d({a},{b}): {} vs fd {}",
                    jet.get(a, b),
                    fd
                );
            }
        }
    }

    #[test]
    fn basis_table_row_sums() {
        let space = DiscreteSpace::square(6, 10, 2.4).unwrap();
        let table = space.basis_table(1.1, 0.3, 4).unwrap();
        let sum0: f64 = table.values[0][0].iter().sum();
        assert_relative_eq!(sum0, 1.0, epsilon = 1e-12);
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                if a + b == 0 {
                    continue;
                }
                let row = &table.values[a][b];
                let scale = row.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                let sum: f64 = row.iter().sum();
                assert!(sum.abs() <= 1e-12 * scale, "order ({a},{b}) sum {sum}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let space = DiscreteSpace::square(6, 7, 2.0).unwrap();
        let coeffs = DMatrix::zeros(7, 7);
        assert!(space.surface_eval(&coeffs, 2.5, 0.1, 2).is_err());
        let bad = DMatrix::zeros(6, 7);
        assert!(space.surface_eval(&bad, 0.5, 0.1, 2).is_err());
    }

    #[test]
    fn continuity_single_and_multi_element() {
        assert_eq!(KnotVector::open_uniform(6, 1).unwrap().min_continuity(), 6);
        assert_eq!(KnotVector::open_uniform(6, 8).unwrap().min_continuity(), 5);
        assert_eq!(KnotVector::open_uniform(2, 4).unwrap().min_continuity(), 1);
    }

    proptest! {
        #[test]
        fn partition_of_unity_everywhere(u in 0.0f64..=1.0, p in 1usize..=6, e in 1usize..=8) {
            let kv = KnotVector::open_uniform(p, e).unwrap();
            let row = kv.basis_functions(u, 0).unwrap();
            let sum: f64 = row.ders[0].iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
            prop_assert!(row.ders[0].iter().all(|&v| v >= -1e-14));
        }

        #[test]
        fn bivariate_partition_of_unity(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
            let space = DiscreteSpace::square(6, 9, 1.0).unwrap();
            let table = space.basis_table(x, y, 1).unwrap();
            let sum: f64 = table.values[0][0].iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
        }
    }
}
