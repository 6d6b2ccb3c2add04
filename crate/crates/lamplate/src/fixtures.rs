//! Benchmark tables embedded as read-only records: normalized out-of-plane
//! stresses and their pointwise differences at six sampling points, for 11
//! and 34 layers and S in {20, 30, 40, 50}. The stress columns are in the
//! tables' scale (shear entries equal the dimensionless form times S).

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytical,
    IgaG,
    IgaC,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Analytical => "analytical",
            Method::IgaG => "iga-g",
            Method::IgaC => "iga-c",
        }
    }
}

/// Sampling points of the tables, as fractions of the edge length and a
/// through-thickness station (mid-plane or quarter thickness).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixturePoint {
    EdgeX1Z0,
    EdgeX1Zq,
    QuarterZ0,
    QuarterZq,
    EdgeX2Z0,
    EdgeX2Zq,
}

impl FixturePoint {
    pub const ALL: [FixturePoint; 6] = [
        FixturePoint::EdgeX1Z0,
        FixturePoint::EdgeX1Zq,
        FixturePoint::QuarterZ0,
        FixturePoint::QuarterZq,
        FixturePoint::EdgeX2Z0,
        FixturePoint::EdgeX2Zq,
    ];

    pub fn in_plane_fractions(&self) -> (f64, f64) {
        match self {
            FixturePoint::EdgeX1Z0 | FixturePoint::EdgeX1Zq => (0.0, 0.5),
            FixturePoint::QuarterZ0 | FixturePoint::QuarterZq => (0.25, 0.25),
            FixturePoint::EdgeX2Z0 | FixturePoint::EdgeX2Zq => (0.5, 0.0),
        }
    }

    /// Thickness station for total thickness t.
    pub fn z(&self, t: f64) -> f64 {
        match self {
            FixturePoint::EdgeX1Z0 | FixturePoint::QuarterZ0 | FixturePoint::EdgeX2Z0 => 0.0,
            _ => t / 4.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FixturePoint::EdgeX1Z0 => "(0,L/2,0)",
            FixturePoint::EdgeX1Zq => "(0,L/2,h/4)",
            FixturePoint::QuarterZ0 => "(L/4,L/4,0)",
            FixturePoint::QuarterZq => "(L/4,L/4,h/4)",
            FixturePoint::EdgeX2Z0 => "(L/2,0,0)",
            FixturePoint::EdgeX2Zq => "(L/2,0,h/4)",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FixtureRecord {
    pub layers: u32,
    pub s: f64,
    pub point: FixturePoint,
    pub method: Method,
    /// Table-scale normalized stresses (s13, s23, s33).
    pub values: [f64; 3],
    /// Printed difference columns in percent; absent on analytical rows.
    pub deltas: Option<[f64; 3]>,
    /// Starred entries: absolute differences (in percent) instead of
    /// relative ones.
    pub starred: [bool; 3],
}

type Row = (f64, [f64; 3], [f64; 3], [f64; 3], [f64; 3], [f64; 3]);

// (S, analytic, iga-g values, iga-g deltas, iga-c values, iga-c deltas)
const T11_EDGE_X1_Z0: [Row; 4] = [
    (20.0, [4.0728, 0.0, 0.0], [3.9290, 0.0000, 0.0001], [3.5295, 0.0000, 0.0055], [3.7848, 0.0000, 0.0001], [7.0706, 0.0000, 0.0100]),
    (30.0, [6.0598, 0.0, 0.0], [5.8935, 0.0000, 0.0001], [2.7445, 0.0000, 0.0055], [5.6772, 0.0000, 0.0001], [6.3145, 0.0000, 0.0100]),
    (40.0, [8.0545, 0.0, 0.0], [7.8580, 0.0000, 0.0001], [2.4395, 0.0000, 0.0055], [7.5696, 0.0000, 0.0001], [6.0206, 0.0000, 0.0100]),
    (50.0, [10.0530, 0.0, 0.0], [9.8225, 0.0000, -0.0001], [2.2923, 0.0000, 0.0055], [9.4620, 0.0000, 0.0001], [5.8789, 0.0000, 0.0100]),
];

const T11_EDGE_X1_ZQ: [Row; 4] = [
    (20.0, [2.7527, 0.0, 0.0], [2.6394, 0.0000, -0.0045], [4.1167, 0.0000, 0.4464], [2.5433, 0.0000, -0.0082], [7.6056, 0.0000, 0.8161]),
    (30.0, [4.0817, 0.0, 0.0], [3.9590, 0.0000, -0.0045], [3.0059, 0.0000, 0.4464], [3.8150, 0.0000, -0.0082], [6.5352, 0.0000, 0.8161]),
    (40.0, [5.4188, 0.0, 0.0], [5.2787, 0.0000, -0.0045], [2.5849, 0.0000, 0.4464], [5.0866, 0.0000, -0.0082], [6.1295, 0.0000, 0.8161]),
    (50.0, [6.7595, 0.0, 0.0], [6.5984, 0.0000, -0.0045], [2.3838, 0.0000, 0.4464], [6.3583, 0.0000, -0.0082], [5.9357, 0.0000, 0.8161]),
];

const T11_QUARTER_Z0: [Row; 4] = [
    (20.0, [2.0364, 2.7220, 0.2483], [1.9974, 2.7240, 0.2483], [1.9166, 0.0751, 0.0026], [1.9919, 2.7183, 0.2483], [2.1852, 0.1340, 0.0080]),
    (30.0, [3.0299, 4.1212, 0.2483], [2.9960, 4.0860, 0.2483], [1.1185, 0.8526, 0.0000], [2.9878, 4.0775, 0.2483], [1.3893, 1.0598, 0.0054]),
    (40.0, [4.0273, 5.5138, 0.2483], [3.9947, 5.4481, 0.2483], [0.8083, 1.1926, 0.0003], [3.9838, 5.4367, 0.2483], [1.0800, 1.3991, 0.0051]),
    (50.0, [5.0265, 6.9035, 0.2483], [4.9934, 6.8101, 0.2483], [0.6588, 1.3529, 0.0004], [4.9797, 6.7958, 0.2483], [0.9308, 1.5591, 0.0051]),
];

const T11_QUARTER_ZQ: [Row; 4] = [
    (20.0, [1.3763, 2.2187, 0.4209], [1.3415, 2.2104, 0.4213], [2.5348, 0.3720, 0.0931], [1.3375, 2.2060, 0.4202], [2.8209, 0.5713, 0.1711]),
    (30.0, [2.0409, 3.3489, 0.4211], [2.0122, 3.3156, 0.4213], [1.4056, 0.9939, 0.0485], [2.0063, 3.3090, 0.4202], [1.6951, 1.1921, 0.2156]),
    (40.0, [2.7094, 4.4758, 0.4212], [2.6829, 4.4208, 0.4213], [0.9777, 1.2278, 0.0334], [2.6750, 4.4120, 0.4202], [1.2684, 1.4255, 0.2306]),
    (50.0, [3.3798, 5.6010, 0.4212], [3.3536, 5.5260, 0.4213], [0.7733, 1.3392, 0.0265], [3.3438, 5.5150, 0.4202], [1.0646, 1.5366, 0.2375]),
];

const T11_EDGE_X2_Z0: [Row; 4] = [
    (20.0, [0.0, 5.4440, 0.0], [0.0000, 5.3558, 0.0001], [0.0000, 1.6191, 0.0057], [0.0000, 5.1533, 0.0001], [0.0000, 5.3394, 0.0106]),
    (30.0, [0.0, 8.2424, 0.0], [0.0000, 8.0337, 0.0001], [0.0000, 2.5310, 0.0057], [0.0000, 7.7299, 0.0001], [0.0000, 6.2169, 0.0106]),
    (40.0, [0.0, 11.0276, 0.0], [0.0000, 10.7117, 0.0001], [0.0000, 2.8653, 0.0057], [0.0000, 10.3066, 0.0001], [0.0000, 6.5386, 0.0106]),
    (50.0, [0.0, 13.8069, 0.0], [0.0000, 13.3896, 0.0001], [0.0000, 3.0229, 0.0057], [0.0000, 12.8832, 0.0001], [0.0000, 6.6902, 0.0106]),
];

const T11_EDGE_X2_ZQ: [Row; 4] = [
    (20.0, [0.0, 4.4373, 0.0], [0.0000, 4.3456, -0.0047], [0.0000, 2.0680, 0.4720], [0.0000, 4.1806, -0.0087], [0.0000, 5.7856, 0.8691]),
    (30.0, [0.0, 6.6978, 0.0], [0.0000, 6.5183, -0.0047], [0.0000, 2.6794, 0.4720], [0.0000, 6.2709, -0.0087], [0.0000, 6.3738, 0.8691]),
    (40.0, [0.0, 8.9516, 0.0], [0.0000, 8.6911, -0.0047], [0.0000, 2.9094, 0.4720], [0.0000, 8.3612, -0.0087], [0.0000, 6.5950, 0.8691]),
    (50.0, [0.0, 11.2021, 0.0], [0.0000, 10.8639, -0.0047], [0.0000, 3.0188, 0.4720], [0.0000, 10.4515, -0.0087], [0.0000, 6.7003, 0.8691]),
];

const T34_EDGE_X1_Z0: [Row; 4] = [
    (20.0, [4.7476, 0.0, 0.0], [4.6422, 0.0000, 0.0000], [2.2199, 0.0000, 0.0019], [4.4689, 0.0000, 0.0000], [5.8699, 0.0000, 0.0034]),
    (30.0, [7.1411, 0.0, 0.0], [6.9633, 0.0000, 0.0000], [2.4890, 0.0000, 0.0019], [6.7034, 0.0000, 0.0000], [6.1289, 0.0000, 0.0034]),
    (40.0, [9.5307, 0.0, 0.0], [9.2844, 0.0000, 0.0000], [2.5839, 0.0000, 0.0019], [8.9378, 0.0000, 0.0000], [6.2203, 0.0000, 0.0034]),
    (50.0, [11.9187, 0.0, 0.0], [11.6055, 0.0000, 0.0000], [2.6280, 0.0000, 0.0019], [11.1723, 0.0000, 0.0000], [6.2627, 0.0000, 0.0034]),
];

const T34_EDGE_X1_ZQ: [Row; 4] = [
    (20.0, [3.7058, 0.0, 0.0], [3.5969, 0.0000, -0.0046], [2.9384, 0.0000, 0.4610], [3.4624, 0.0000, -0.0085], [6.5684, 0.0000, 0.8461]),
    (30.0, [5.5563, 0.0, 0.0], [5.3954, 0.0000, -0.0046], [2.8963, 0.0000, 0.4610], [5.1936, 0.0000, -0.0085], [6.5279, 0.0000, 0.8461]),
    (40.0, [7.4073, 0.0, 0.0], [7.1938, 0.0000, -0.0046], [2.8821, 0.0000, 0.4610], [6.9248, 0.0000, -0.0085], [6.5143, 0.0000, 0.8461]),
    (50.0, [9.2585, 0.0, 0.0], [8.9923, 0.0000, -0.0046], [2.8757, 0.0000, 0.4610], [8.6560, 0.0000, -0.0085], [6.5081, 0.0000, 0.8461]),
];

const T34_QUARTER_Z0: [Row; 4] = [
    (20.0, [2.3738, 2.3746, 0.2494], [2.3606, 2.3609, 0.2494], [0.5570, 0.5767, 0.0029], [2.3550, 2.3553, 0.2495], [0.7930, 0.8127, 0.0046]),
    (30.0, [3.5705, 3.5713, 0.2494], [3.5409, 3.5413, 0.2494], [0.8307, 0.8404, 0.0001], [3.5325, 3.5329, 0.2495], [1.0660, 1.0757, 0.0019]),
    (40.0, [4.7653, 4.7663, 0.2494], [4.7212, 4.7218, 0.2494], [0.9272, 0.9332, 0.0002], [4.7099, 4.7106, 0.2495], [1.1623, 1.1683, 0.0015]),
    (50.0, [5.9594, 5.9604, 0.2494], [5.9014, 5.9022, 0.2494], [0.9720, 0.9763, 0.0003], [5.8874, 5.8882, 0.2495], [1.2071, 1.2113, 0.0014]),
];

const T34_QUARTER_ZQ: [Row; 4] = [
    (20.0, [1.8529, 1.7370, 0.4212], [1.8291, 1.7154, 0.4217], [1.2830, 1.2387, 0.1167], [1.8249, 1.7113, 0.4206], [1.5130, 1.4777, 0.1476]),
    (30.0, [2.7782, 2.6027, 0.4215], [2.7437, 2.5732, 0.4217], [1.2402, 1.1343, 0.0481], [2.7373, 2.5669, 0.4206], [1.4703, 1.3735, 0.2160]),
    (40.0, [3.7037, 3.4690, 0.4216], [3.6583, 3.4309, 0.4217], [1.2258, 1.0978, 0.0241], [3.6497, 3.4226, 0.4206], [1.4559, 1.3371, 0.2399]),
    (50.0, [4.6293, 4.3355, 0.4217], [4.5728, 4.2886, 0.4217], [1.2192, 1.0809, 0.0130], [4.5622, 4.2782, 0.4206], [1.4494, 1.3203, 0.2510]),
];

const T34_EDGE_X2_Z0: [Row; 4] = [
    (20.0, [0.0, 4.7492, 0.0], [0.0000, 4.6428, 0.0000], [0.0000, 2.2394, 0.0018], [0.0000, 4.4695, 0.0000], [0.0000, 5.8886, 0.0032]),
    (30.0, [0.0, 7.1427, 0.0], [0.0000, 6.9642, 0.0000], [0.0000, 2.4986, 0.0018], [0.0000, 6.7043, 0.0000], [0.0000, 6.1382, 0.0032]),
    (40.0, [0.0, 9.5325, 0.0], [0.0000, 9.2856, 0.0000], [0.0000, 2.5899, 0.0018], [0.0000, 8.9390, 0.0000], [0.0000, 6.2260, 0.0032]),
    (50.0, [0.0, 11.9208, 0.0], [0.0000, 11.6070, 0.0000], [0.0000, 2.6322, 0.0018], [0.0000, 11.1738, 0.0000], [0.0000, 6.2668, 0.0032]),
];

const T34_EDGE_X2_ZQ: [Row; 4] = [
    (20.0, [0.0, 3.4739, 0.0], [0.0000, 3.3737, -0.0046], [0.0000, 2.8853, 0.4583], [0.0000, 3.2480, -0.0084], [0.0000, 6.5031, 0.8413]),
    (30.0, [0.0, 5.2054, 0.0], [0.0000, 5.0605, -0.0046], [0.0000, 2.7826, 0.4583], [0.0000, 4.8720, -0.0084], [0.0000, 6.4042, 0.8413]),
    (40.0, [0.0, 6.9380, 0.0], [0.0000, 6.7474, -0.0046], [0.0000, 2.7468, 0.4583], [0.0000, 6.4960, -0.0084], [0.0000, 6.3697, 0.8413]),
    (50.0, [0.0, 8.6710, 0.0], [0.0000, 8.4342, -0.0046], [0.0000, 2.7302, 0.4583], [0.0000, 8.1200, -0.0084], [0.0000, 6.3537, 0.8413]),
];

fn starred_pattern(point: FixturePoint) -> [bool; 3] {
    match point {
        FixturePoint::EdgeX1Z0 | FixturePoint::EdgeX1Zq => [false, true, true],
        FixturePoint::QuarterZ0 | FixturePoint::QuarterZq => [false, false, false],
        FixturePoint::EdgeX2Z0 | FixturePoint::EdgeX2Zq => [true, false, true],
    }
}

fn expand(layers: u32, point: FixturePoint, rows: &[Row; 4], out: &mut Vec<FixtureRecord>) {
    let starred = starred_pattern(point);
    for &(s, analytic, g, gd, c, cd) in rows {
        out.push(FixtureRecord {
            layers,
            s,
            point,
            method: Method::Analytical,
            values: analytic,
            deltas: None,
            starred: [false; 3],
        });
        out.push(FixtureRecord {
            layers,
            s,
            point,
            method: Method::IgaG,
            values: g,
            deltas: Some(gd),
            starred,
        });
        out.push(FixtureRecord {
            layers,
            s,
            point,
            method: Method::IgaC,
            values: c,
            deltas: Some(cd),
            starred,
        });
    }
}

/// Every embedded record, in table order.
pub fn paper_fixtures() -> &'static [FixtureRecord] {
    static TABLE: OnceLock<Vec<FixtureRecord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(12 * 4 * 3);
        expand(11, FixturePoint::EdgeX1Z0, &T11_EDGE_X1_Z0, &mut out);
        expand(11, FixturePoint::EdgeX1Zq, &T11_EDGE_X1_ZQ, &mut out);
        expand(11, FixturePoint::QuarterZ0, &T11_QUARTER_Z0, &mut out);
        expand(11, FixturePoint::QuarterZq, &T11_QUARTER_ZQ, &mut out);
        expand(11, FixturePoint::EdgeX2Z0, &T11_EDGE_X2_Z0, &mut out);
        expand(11, FixturePoint::EdgeX2Zq, &T11_EDGE_X2_ZQ, &mut out);
        expand(34, FixturePoint::EdgeX1Z0, &T34_EDGE_X1_Z0, &mut out);
        expand(34, FixturePoint::EdgeX1Zq, &T34_EDGE_X1_ZQ, &mut out);
        expand(34, FixturePoint::QuarterZ0, &T34_QUARTER_Z0, &mut out);
        expand(34, FixturePoint::QuarterZq, &T34_QUARTER_ZQ, &mut out);
        expand(34, FixturePoint::EdgeX2Z0, &T34_EDGE_X2_Z0, &mut out);
        expand(34, FixturePoint::EdgeX2Zq, &T34_EDGE_X2_ZQ, &mut out);
        out
    })
}

/// Single-record lookup.
pub fn fixture(
    layers: u32,
    s: f64,
    point: FixturePoint,
    method: Method,
) -> Option<&'static FixtureRecord> {
    paper_fixtures()
        .iter()
        .find(|r| r.layers == layers && r.s == s && r.point == point && r.method == method)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::pointwise_diff;

    #[test]
    fn table_shape() {
        let all = paper_fixtures();
        assert_eq!(all.len(), 12 * 4 * 3);
        assert_eq!(all.iter().filter(|r| r.layers == 11).count(), 72);
        assert_eq!(
            all.iter().filter(|r| r.method == Method::Analytical).count(),
            48
        );
    }

    #[test]
    fn lookups() {
        let r = fixture(11, 20.0, FixturePoint::EdgeX1Z0, Method::Analytical).unwrap();
        assert_eq!(r.values[0], 4.0728);
        let r = fixture(11, 20.0, FixturePoint::QuarterZ0, Method::IgaG).unwrap();
        assert_eq!(r.values, [1.9974, 2.7240, 0.2483]);
        let r = fixture(34, 20.0, FixturePoint::QuarterZ0, Method::IgaG).unwrap();
        assert_eq!(r.values, [2.3606, 2.3609, 0.2494]);
        let r = fixture(11, 20.0, FixturePoint::EdgeX1Z0, Method::IgaC).unwrap();
        assert_eq!(r.values[0], 3.7848);
        assert!(fixture(12, 20.0, FixturePoint::EdgeX1Z0, Method::IgaG).is_none());
    }

    #[test]
    fn delta_columns_reproduce_from_value_columns() {
        // Every printed difference follows from the printed values once the
        // +-0.00005 rounding of the value columns is propagated through the
        // relative difference: tolerance 0.01 points plus 100 * 1e-4 / |a|
        // for unstarred entries. With the bare 0.01 bound all but five
        // records (the 0.2494-magnitude column) pass.
        let mut over_strict = 0usize;
        for rec in paper_fixtures() {
            let Some(deltas) = rec.deltas else { continue };
            let analytic = fixture(rec.layers, rec.s, rec.point, Method::Analytical).unwrap();
            for c in 0..3 {
                let d = pointwise_diff(analytic.values[c], rec.values[c], 1.0);
                assert_eq!(
                    d.starred, rec.starred[c],
                    "starred flag mismatch {:?} {:?} S={} c={c}",
                    rec.point, rec.method, rec.s
                );
                let rounding = if d.starred {
                    0.01
                } else {
                    100.0 * 1.0e-4 / analytic.values[c].abs()
                };
                assert!(
                    (d.delta - deltas[c]).abs() <= 0.01 + rounding,
                    "{:?} {:?} S={} c={c}: recomputed {:.4} vs printed {:.4}",
                    rec.point,
                    rec.method,
                    rec.s,
                    d.delta,
                    deltas[c]
                );
                if (d.delta - deltas[c]).abs() > 0.01 {
                    over_strict += 1;
                }
            }
        }
        assert_eq!(over_strict, 5);
    }
}
