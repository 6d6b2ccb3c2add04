//! Acceptance suite: one test and one printed PASS/FAIL line per criterion.
//!
//! Criteria 1, 3 and 8 assert published-table tolerances that the honest
//! pipeline misses by fractions of their own width (the residual sits in
//! the reference implementation's unpublished recovery details and in the
//! tables' own print rounding); they run red by design rather than with
//! loosened bounds. The remaining criteria pass.

use lamplate::collocation::{self, Policy};
use lamplate::config::{parse_config, Solver};
use lamplate::galerkin::{self, SinusoidalLoad};
use lamplate::materials::{
    bending_stiffness, homogenize, in_plane_ply_matrix, rotate90, stiffness_from_engineering,
    Lamina, Layup, Orientation, PlyMatrixMode,
};
use lamplate::pipeline::{solve_case, CaseSolution};
use lamplate::recovery::{
    in_plane_derivative_profiles, recover_out_of_plane, simpson_integral, DeflectionJet,
    RecoveryOptions, ThicknessGrid,
};
use lamplate::reference::{
    navier_solution, paper_fixtures, pointwise_diff, FixturePoint, Method,
};
use lamplate::splines::{DiscreteSpace, JetTable, KnotVector};

struct Check {
    label: String,
    ok: bool,
}

fn check(list: &mut Vec<Check>, label: impl Into<String>, ok: bool) {
    list.push(Check {
        label: label.into(),
        ok,
    });
}

fn finish(criterion: &str, list: Vec<Check>) {
    let failed: Vec<&Check> = list.iter().filter(|c| !c.ok).collect();
    if failed.is_empty() {
        println!("{criterion}: PASS ({} checks)", list.len());
    } else {
        println!(
            "{criterion}: FAIL ({}/{} checks failed)",
            failed.len(),
            list.len()
        );
        for f in &failed {
            println!("  failed: {}", f.label);
        }
    }
    assert!(failed.is_empty(), "{criterion} failed");
}

fn benchmark_case(layers: usize, s: f64, solver: Solver) -> CaseSolution {
    let mut cfg = parse_config("").unwrap();
    cfg.layers = layers;
    cfg.s = s;
    cfg.solver = solver;
    solve_case(&cfg).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn criterion_1_galerkin_golden_numbers_11_layers() {
    let case = benchmark_case(11, 20.0, Solver::Galerkin);
    let mut checks = Vec::new();

    let v = case.table_values_at(FixturePoint::EdgeX1Z0).unwrap();
    check(
        &mut checks,
        format!("s13(0,L/2,0) = {:.4} vs 3.9290 within 0.5%", v[0]),
        rel(v[0], 3.9290) <= 0.005,
    );

    let v = case.table_values_at(FixturePoint::QuarterZ0).unwrap();
    for (c, want) in [(0usize, 1.9974), (1, 2.7240), (2, 0.2483)] {
        check(
            &mut checks,
            format!("component {c} at (L/4,L/4,0) = {:.4} vs {want} within 0.5%", v[c]),
            rel(v[c], want) <= 0.005,
        );
    }

    let v = case.table_values_at(FixturePoint::EdgeX2Z0).unwrap();
    check(
        &mut checks,
        format!("s23(L/2,0,0) = {:.4} vs 5.3558 within 0.5%", v[1]),
        rel(v[1], 5.3558) <= 0.005,
    );

    let v = case.table_values_at(FixturePoint::QuarterZq).unwrap();
    for (c, want) in [(0usize, 1.3415), (1, 2.2104), (2, 0.4213)] {
        check(
            &mut checks,
            format!("component {c} at (L/4,L/4,h/4) = {:.4} vs {want} within 0.5%", v[c]),
            rel(v[c], want) <= 0.005,
        );
    }

    finish("criterion 1 (Galerkin golden numbers, 11 layers)", checks);
}

#[test]
fn criterion_2_galerkin_golden_numbers_34_layers() {
    let case = benchmark_case(34, 20.0, Solver::Galerkin);
    let mut checks = Vec::new();

    let v = case.table_values_at(FixturePoint::QuarterZ0).unwrap();
    for (c, want) in [(0usize, 2.3606), (1, 2.3609), (2, 0.2494)] {
        check(
            &mut checks,
            format!("component {c} at (L/4,L/4,0) = {:.4} vs {want} within 0.5%", v[c]),
            rel(v[c], want) <= 0.005,
        );
    }
    let v = case.table_values_at(FixturePoint::EdgeX1Z0).unwrap();
    check(
        &mut checks,
        format!("s13(0,L/2,0) = {:.4} vs 4.6422 within 0.5%", v[0]),
        rel(v[0], 4.6422) <= 0.005,
    );

    finish("criterion 2 (Galerkin golden numbers, 34 layers)", checks);
}

#[test]
fn criterion_3_s_sweep_trend() {
    let wanted = [(20.0, 3.5295), (30.0, 2.7445), (40.0, 2.4395), (50.0, 2.2923)];
    let mut deltas = Vec::new();
    for &(s, _) in &wanted {
        let case = benchmark_case(11, s, Solver::Galerkin);
        let v = case.table_values_at(FixturePoint::EdgeX1Z0).unwrap();
        let analytic = lamplate::reference::paper_fixtures()
            .iter()
            .find(|r| {
                r.layers == 11
                    && r.s == s
                    && r.point == FixturePoint::EdgeX1Z0
                    && r.method == Method::Analytical
            })
            .unwrap();
        deltas.push(pointwise_diff(analytic.values[0], v[0], 1.0).delta);
    }

    let mut checks = Vec::new();
    check(
        &mut checks,
        format!(
            "delta(s13) decreases monotonically: {:.4} -> {:.4} -> {:.4} -> {:.4}",
            deltas[0], deltas[1], deltas[2], deltas[3]
        ),
        deltas.windows(2).all(|w| w[1] < w[0]),
    );
    for (i, &(s, want)) in wanted.iter().enumerate() {
        check(
            &mut checks,
            format!("S={s}: delta {:.4} vs {want} within 0.2 points", deltas[i]),
            (deltas[i] - want).abs() <= 0.2,
        );
    }
    finish("criterion 3 (S-sweep trend of delta(s13))", checks);
}

#[test]
fn criterion_4_collocation_vs_fixture_and_galerkin() {
    let coll = benchmark_case(11, 20.0, Solver::Collocation);
    let gal = benchmark_case(11, 20.0, Solver::Galerkin);
    let vc = coll.table_values_at(FixturePoint::EdgeX1Z0).unwrap();
    let vg = gal.table_values_at(FixturePoint::EdgeX1Z0).unwrap();
    let diag = coll.diagnostics.collocation.unwrap();
    println!(
        "  info: lsq-moment s13 = {:.4}, moment residual {:.3e}, pde residual {:.3e}",
        vc[0], diag.moment_residual, diag.pde_residual
    );

    let mut checks = Vec::new();
    check(
        &mut checks,
        format!(
            "default policy s13(0,L/2,0) = {:.4} vs IGA-C 3.7848 within 5%",
            vc[0]
        ),
        rel(vc[0], 3.7848) <= 0.05,
    );
    check(
        &mut checks,
        format!(
            "collocation {:.4} vs galerkin {:.4} within 10%",
            vc[0], vg[0]
        ),
        rel(vc[0], vg[0]) <= 0.10,
    );
    finish("criterion 4 (collocation vs IGA-C fixture)", checks);
}

#[test]
fn criterion_5_deflection_convergence() {
    let layup = Layup::cross_ply(11, 1.0).unwrap();
    let h = homogenize(&layup).unwrap();
    let t = layup.total_thickness();
    let d = bending_stiffness(&h, t);
    let l = 20.0 * t;
    let navier = navier_solution(&d, l, 1.0);
    let load = SinusoidalLoad { amplitude: 1.0 };

    let mut checks = Vec::new();
    let mut gal_errs = Vec::new();
    let mut col_errs = Vec::new();
    for m in [7usize, 14, 21] {
        let space = DiscreteSpace::square(6, m, l).unwrap();
        let sol = galerkin::solve_plate(&space, &d, &load).unwrap();
        let wc = sol.eval(l / 2.0, l / 2.0, 0).unwrap().value();
        gal_errs.push(rel(wc, navier.amplitude()));
        let (sol, _) = collocation::solve_plate(&space, &d, &load, Policy::LsqMoment, 1.0).unwrap();
        let wc = sol.eval(l / 2.0, l / 2.0, 0).unwrap().value();
        col_errs.push(rel(wc, navier.amplitude()));
    }
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|e| format!("{e:.3e}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!(
        "  info: galerkin errors [{}], collocation errors [{}]",
        fmt(&gal_errs),
        fmt(&col_errs)
    );
    check(
        &mut checks,
        "galerkin error decreases monotonically",
        gal_errs.windows(2).all(|w| w[1] < w[0]),
    );
    check(
        &mut checks,
        "collocation error decreases monotonically",
        col_errs.windows(2).all(|w| w[1] < w[0]),
    );
    check(
        &mut checks,
        format!("galerkin error at 7x7 = {:.2e} <= 0.5%", gal_errs[0]),
        gal_errs[0] <= 0.005,
    );
    check(
        &mut checks,
        format!("galerkin error at 21x21 = {:.2e} <= 0.2%", gal_errs[2]),
        gal_errs[2] <= 0.002,
    );
    check(
        &mut checks,
        format!("collocation error at 21x21 = {:.2e} <= 0.2%", col_errs[2]),
        col_errs[2] <= 0.002,
    );
    finish("criterion 5 (deflection convergence to the closed form)", checks);
}

#[test]
fn criterion_6_recovery_invariant_suite() {
    let mut checks = Vec::new();

    // traction-free bottom and interface continuity on the benchmark stack
    let layup = Layup::cross_ply(11, 1.0).unwrap();
    let h = homogenize(&layup).unwrap();
    let t = layup.total_thickness();
    let d = bending_stiffness(&h, t);
    let l = 20.0 * t;
    let sigma0 = 1.0;
    let navier = navier_solution(&d, l, sigma0);
    let grid = ThicknessGrid::new(&layup, 20).unwrap();
    let opts = RecoveryOptions::default();
    let jet = navier.jet(l / 4.0, l / 4.0);
    let [s13, s23, s33] = recover_out_of_plane(&jet, &layup, &grid, &opts, None).unwrap();

    check(
        &mut checks,
        "bottom face exactly traction-free",
        s13[0] == 0.0 && s23[0] == 0.0 && s33[0] == 0.0,
    );

    let q = sigma0 * (0.25f64 * std::f64::consts::PI).sin().powi(2);
    let top = *s33.last().unwrap();
    check(
        &mut checks,
        format!("top-face s33 = {top:.5} balances the load within 1% of sigma0"),
        (top - (-q)).abs() <= 0.01 * sigma0,
    );

    let mut continuous = true;
    for i in 1..grid.len() {
        if grid.nodes()[i].z == grid.nodes()[i - 1].z
            && (s13[i] != s13[i - 1] || s23[i] != s23[i - 1] || s33[i] != s33[i - 1])
        {
            continuous = false;
        }
    }
    check(&mut checks, "out-of-plane components continuous at interfaces", continuous);

    // symmetric-layup shear resultant equals the moment gradient
    let q_int = simpson_integral(&grid, &s13);
    let der = in_plane_derivative_profiles(&jet, &layup, &grid, &opts).unwrap();
    let zg: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(der.d1[0].iter().zip(&der.d2[2]))
        .map(|(n, (a, b))| n.z * (a + b))
        .collect();
    let m_grad = simpson_integral(&grid, &zg);
    check(
        &mut checks,
        format!("shear resultant {q_int:.6e} equals moment gradient {m_grad:.6e} within 1e-8"),
        rel(q_int, m_grad) <= 1e-8,
    );

    // single homogeneous ply: parabola vanishing at both faces
    let iso = {
        let (e, nu) = (10_000.0, 0.3);
        let g = e / (2.0 * (1.0 + nu));
        Layup::new(vec![Lamina {
            e1: e,
            e2: e,
            e3: e,
            g23: g,
            g13: g,
            g12: g,
            nu23: nu,
            nu13: nu,
            nu12: nu,
            orientation: Orientation::Deg0,
            thickness: 2.0,
        }])
        .unwrap()
    };
    let iso_grid = ThicknessGrid::new(&iso, 40).unwrap();
    let mut jt = JetTable::default();
    jt.set(3, 0, 0.7);
    let jet1 = DeflectionJet(jt);
    let [p13, _, _] = recover_out_of_plane(&jet1, &iso, &iso_grid, &opts, None).unwrap();
    let scale = p13.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    check(
        &mut checks,
        "single-ply parabolic shear vanishes at both faces to 1e-12",
        p13[0] == 0.0 && p13.last().unwrap().abs() <= 1e-12 * scale,
    );

    finish("criterion 6 (recovery invariant suite)", checks);
}

#[test]
fn criterion_7_kernel_suite() {
    let mut checks = Vec::new();

    // partition of unity at 100 deterministic pseudo-random points
    let kv = KnotVector::open_uniform(6, 3).unwrap();
    let mut state = 42u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut pu_ok = true;
    for _ in 0..100 {
        let row = kv.basis_functions(next(), 0).unwrap();
        if (row.ders[0].iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            pu_ok = false;
        }
    }
    check(&mut checks, "partition of unity at 100 points to 1e-12", pu_ok);

    // derivatives against central finite differences
    let mut fd_ok = true;
    for order in 1..=4usize {
        for &u in &[0.211, 0.547, 0.873] {
            let row = kv.basis_functions(u, order).unwrap();
            let h = 1e-5;
            let lower = |x: f64| {
                let r = kv.basis_functions(x, order - 1).unwrap();
                let mut full = vec![0.0; kv.basis_count()];
                for (j, &v) in r.ders[order - 1].iter().enumerate() {
                    full[r.first + j] = v;
                }
                full
            };
            let plus = lower(u + h);
            let minus = lower(u - h);
            let scale = row.ders[order].iter().fold(1e-30f64, |m, v| m.max(v.abs()));
            for (j, &v) in row.ders[order].iter().enumerate() {
                let fd = (plus[row.first + j] - minus[row.first + j]) / (2.0 * h);
                if (v - fd).abs() > 1e-6 * scale.max(v.abs()) {
                    fd_ok = false;
                }
            }
        }
    }
    check(&mut checks, "derivative rows match finite differences to 1e-6", fd_ok);

    // Greville points of the single sixth-degree element
    let kv6 = KnotVector::open_uniform(6, 1).unwrap();
    let g = kv6.greville_points();
    let greville_ok = g
        .iter()
        .enumerate()
        .all(|(i, &gi)| (gi - i as f64 / 6.0).abs() <= f64::EPSILON);
    check(&mut checks, "Greville abscissae of p=6 single element are i/6", greville_ok);

    // homogenization identity on a uniform stack
    let uniform = Layup::new(vec![Lamina::benchmark(Orientation::Deg0, 1.0); 5]).unwrap();
    let hom = homogenize(&uniform).unwrap();
    let c = stiffness_from_engineering(&Lamina::benchmark(Orientation::Deg0, 1.0)).unwrap();
    let hom_ok = (hom.c11 - c.matrix()[(0, 0)]).abs() <= 1e-10 * c.matrix()[(0, 0)]
        && (hom.c12 - c.matrix()[(0, 1)]).abs() <= 1e-10 * c.matrix()[(0, 1)].abs()
        && (hom.c22 - c.matrix()[(1, 1)]).abs() <= 1e-10 * c.matrix()[(1, 1)]
        && (hom.c66 - c.matrix()[(5, 5)]).abs() <= 1e-10 * c.matrix()[(5, 5)];
    check(&mut checks, "homogenization identity on uniform stacks", hom_ok);

    // rotate90 involution
    let r = rotate90(&rotate90(&c));
    check(&mut checks, "rotate90 is an involution (exact)", r == c);

    // plane-stress reduction is strictly softer in the normal entries
    let q_raw = in_plane_ply_matrix(&c, PlyMatrixMode::Raw);
    let q_red = in_plane_ply_matrix(&c, PlyMatrixMode::Reduced);
    check(
        &mut checks,
        "reduced ply matrix strictly below raw on the diagonal",
        q_red[(0, 0)] < q_raw[(0, 0)] && q_red[(1, 1)] < q_raw[(1, 1)],
    );

    finish("criterion 7 (kernel suite)", checks);
}

#[test]
fn criterion_8_metric_self_consistency() {
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    let mut over: Vec<String> = Vec::new();
    for rec in paper_fixtures() {
        let Some(deltas) = rec.deltas else { continue };
        let analytic = paper_fixtures()
            .iter()
            .find(|r| {
                r.layers == rec.layers
                    && r.s == rec.s
                    && r.point == rec.point
                    && r.method == Method::Analytical
            })
            .unwrap();
        for c in 0..3 {
            let d = pointwise_diff(analytic.values[c], rec.values[c], 1.0);
            let dev = (d.delta - deltas[c]).abs();
            worst = worst.max(dev);
            if dev > 0.01 {
                over.push(format!(
                    "{} {} S={} component {c}: recomputed {:.4} vs printed {:.4} (dev {:.4})",
                    rec.point.label(),
                    rec.method.label(),
                    rec.s,
                    d.delta,
                    deltas[c],
                    dev
                ));
            }
        }
    }
    for o in &over {
        println!("  over tolerance: {o}");
    }
    check(
        &mut checks,
        format!(
            "every printed delta reproduced from printed values within 0.01 points (worst {worst:.4})"
        ),
        over.is_empty(),
    );
    finish("criterion 8 (metric self-consistency)", checks);
}
