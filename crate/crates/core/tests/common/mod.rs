//! Shared oracles and reference data for the integration suites.

#![allow(dead_code)]

pub mod props;

use evimcdm::evidence::{FocalSet, Frame, MassFunction};
use evimcdm::interval::Interval;
use evimcdm::pipeline::{DecisionMaker, DecisionProblem};
use rand::Rng;
use serde_json::Value;

pub type Triple = [f64; 3];

/// Reference values published with the supplier-selection dataset, rounded
/// to four decimals. Rows are `(left, right)` over `({IS}, {NS}, {IS,NS})`.
pub mod published {
    use super::Triple;

    /// Fused across criteria, `[dm][supplier]`.
    pub const PER_DM_FUSED: [[(Triple, Triple); 6]; 3] = [
        [
            ([0.5133, 0.0980, 0.3887], [0.8009, 0.0987, 0.1004]),
            ([0.4596, 0.1772, 0.3632], [0.6881, 0.2353, 0.0766]),
            ([0.4003, 0.1895, 0.4102], [0.6817, 0.2520, 0.0663]),
            ([0.4938, 0.1246, 0.3815], [0.7447, 0.1782, 0.0771]),
            ([0.0, 0.5804, 0.4196], [0.0, 0.8812, 0.1188]),
            ([0.0734, 0.5131, 0.4135], [0.1203, 0.7369, 0.1428]),
        ],
        [
            ([0.4502, 0.1128, 0.4370], [0.8108, 0.1268, 0.0624]),
            ([0.3929, 0.1800, 0.4271], [0.6438, 0.3116, 0.0446]),
            ([0.3920, 0.2114, 0.3966], [0.7549, 0.1995, 0.0456]),
            ([0.4502, 0.1086, 0.4412], [0.7774, 0.1821, 0.0405]),
            ([0.0343, 0.5015, 0.4642], [0.0387, 0.8905, 0.0708]),
            ([0.0854, 0.4518, 0.4628], [0.0996, 0.7475, 0.1529]),
        ],
        [
            ([0.4722, 0.0699, 0.4579], [0.9206, 0.0456, 0.0338]),
            ([0.4015, 0.1829, 0.4155], [0.8124, 0.1506, 0.0370]),
            ([0.4015, 0.1829, 0.4155], [0.7903, 0.2097, 0.0]),
            ([0.5034, 0.0221, 0.4746], [0.9460, 0.0131, 0.0409]),
            ([0.0500, 0.4868, 0.4631], [0.0309, 0.9357, 0.0334]),
            ([0.1051, 0.4620, 0.4833], [0.0982, 0.8494, 0.0524]),
        ],
    ];

    /// Printed per-decision-maker rows that cannot be reproduced from the
    /// input data, as `(dm, supplier, part, reason)`. Each is checked against
    /// the recomputed oracle instead.
    pub const PER_DM_FUSED_ERRATA: [(usize, usize, Part, &str); 5] = [
        (
            0,
            2,
            Part::Left,
            "follows misprinted discounted C2 left entries ({IS}, {NS} 0.1429 where 0.5 x 0.4286 = 0.2143)",
        ),
        (
            0,
            3,
            Part::Right,
            "not reproducible from the inputs; the discounted C4 right entry is also misprinted ({IS,NS} as 0)",
        ),
        (
            1,
            5,
            Part::Right,
            "{NS} and {IS,NS} not reproducible from the inputs; {IS} matches",
        ),
        (2, 1, Part::Left, "row duplicates the Supplier3 row"),
        (2, 5, Part::Left, "printed masses sum to 1.0504"),
    ];

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum Part {
        Left,
        Right,
    }

    /// Supplier1 discounted by each decision maker's weight.
    pub const SUPPLIER1_DM_DISCOUNTED: [(Triple, Triple); 3] = [
        ([0.1080, 0.0206, 0.8714], [0.3795, 0.0468, 0.5737]),
        ([0.1659, 0.0416, 0.7925], [0.4694, 0.0734, 0.4572]),
        ([0.3479, 0.0515, 0.6006], [0.9206, 0.0456, 0.0338]),
    ];

    /// Final fused interval BPAs per supplier.
    pub const FINAL: [(Triple, Triple); 6] = [
        ([0.4950, 0.0733, 0.4317], [0.9696, 0.0201, 0.0103]),
        ([0.4106, 0.1516, 0.4378], [0.8849, 0.1017, 0.0135]),
        ([0.4019, 0.1878, 0.4104], [0.8851, 0.1149, 0.0]),
        ([0.5135, 0.0485, 0.4380], [0.9765, 0.0110, 0.0125]),
        ([0.0336, 0.5337, 0.4328], [0.0096, 0.9811, 0.0094]),
        ([0.0845, 0.4895, 0.4260], [0.0473, 0.9339, 0.0189]),
    ];

    /// Collapsed BPAs and pignistic belief in {IS}.
    pub const COLLAPSED: [Triple; 6] = [
        [0.9833, 0.0119, 0.0048],
        [0.9177, 0.0752, 0.0072],
        [0.9129, 0.0873, 0.0],
        [0.9879, 0.0063, 0.0058],
        [0.0050, 0.9910, 0.0042],
        [0.0287, 0.9625, 0.0090],
    ];
    pub const BET_IS: [f64; 6] = [0.9857, 0.9213, 0.9129, 0.9908, 0.0071, 0.0332];
    pub const RANKING: [usize; 6] = [3, 0, 1, 2, 5, 4];
}

pub fn max_diff(a: &Triple, b: &Triple) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Golden values from `tests/golden/oracle.py`.
pub struct Golden(Value);

impl Golden {
    pub fn load() -> Self {
        let text = include_str!("../golden/supplier_selection_oracle.json");
        Golden(serde_json::from_str(text).expect("golden json"))
    }

    fn triple(v: &Value) -> Triple {
        let a = v.as_array().expect("triple");
        [a[0].as_f64().unwrap(), a[1].as_f64().unwrap(), a[2].as_f64().unwrap()]
    }

    fn pair(v: &Value) -> (Triple, Triple) {
        (Self::triple(&v["left"]), Self::triple(&v["right"]))
    }

    pub fn interval(v: &Value) -> (f64, f64) {
        (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
    }

    pub fn criterion_weight(&self, d: usize, c: usize) -> (f64, f64) {
        Self::interval(&self.0["normalized_criterion_weights"][d][c])
    }

    pub fn dm_weight(&self, d: usize) -> (f64, f64) {
        Self::interval(&self.0["normalized_dm_weights"][d])
    }

    pub fn discounted(&self, d: usize, a: usize, c: usize) -> (Triple, Triple) {
        Self::pair(&self.0["discounted"][d][a][c])
    }

    pub fn per_dm_fused(&self, d: usize, a: usize) -> (Triple, Triple) {
        Self::pair(&self.0["per_dm_fused"][d][a])
    }

    pub fn dm_discounted(&self, d: usize, a: usize) -> (Triple, Triple) {
        Self::pair(&self.0["dm_discounted"][d][a])
    }

    pub fn final_bpa(&self, a: usize) -> (Triple, Triple) {
        Self::pair(&self.0["final_bpas"][a])
    }

    pub fn collapsed(&self, a: usize) -> Triple {
        Self::triple(&self.0["collapsed"][a])
    }

    pub fn bet_is(&self, a: usize) -> f64 {
        self.0["bet_is"][a].as_f64().unwrap()
    }

    pub fn ranking(&self) -> Vec<String> {
        self.0["ranking"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_owned())
            .collect()
    }
}

/// Dempster's rule by exhaustive enumeration of all `2^n x 2^n` subset pairs,
/// zero-mass subsets included. Returns dense masses indexed by bitmask.
pub fn brute_force_combine(m1: &MassFunction, m2: &MassFunction) -> Option<Vec<f64>> {
    let n = m1.frame().len();
    let size = 1usize << n;
    let dense = |m: &MassFunction| -> Vec<f64> {
        (0..size)
            .map(|b| {
                if b == 0 {
                    0.0
                } else {
                    m.mass(FocalSet::from_bits(b as u16))
                }
            })
            .collect()
    };
    let (a, b) = (dense(m1), dense(m2));
    let mut out = vec![0.0; size];
    let mut conflict = 0.0;
    for x in 0..size {
        for y in 0..size {
            let p = a[x] * b[y];
            if x & y == 0 {
                conflict += p;
            } else {
                out[x & y] += p;
            }
        }
    }
    if conflict >= 1.0 - 1e-12 {
        return None;
    }
    out.iter_mut().for_each(|v| *v /= 1.0 - conflict);
    Some(out)
}

/// A random mass function with between one and four focal sets.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame) -> MassFunction {
    let full = frame.full().bits();
    let count = rng.gen_range(1..=4);
    let raw: Vec<(FocalSet, f64)> = (0..count)
        .map(|_| (FocalSet::from_bits(rng.gen_range(1..=full)), rng.gen_range(0.01..1.0)))
        .collect();
    let total: f64 = raw.iter().map(|(_, m)| m).sum();
    MassFunction::new(frame, raw.into_iter().map(|(s, m)| (s, m / total))).unwrap()
}

pub fn random_triple<R: Rng>(rng: &mut R) -> MassFunction {
    let v: [f64; 3] = [
        rng.gen_range(0.0..1.0),
        rng.gen_range(0.0..1.0),
        rng.gen_range(0.01..1.0),
    ];
    let s: f64 = v.iter().sum();
    MassFunction::ideal_triple(v[0] / s, v[1] / s, v[2] / s).unwrap()
}

pub fn random_interval<R: Rng>(rng: &mut R, max: f64) -> Interval {
    let (a, b) = (rng.gen_range(0.0..max), rng.gen_range(0.0..max));
    Interval::new(a.min(b), a.max(b)).unwrap()
}

/// A random problem. With `crisp` every weight is a degenerate interval.
pub fn random_problem<R: Rng>(rng: &mut R, crisp: bool) -> DecisionProblem {
    let n_dm = rng.gen_range(1..=3);
    let n_alt = rng.gen_range(1..=4);
    let n_crit = rng.gen_range(1..=4);
    let weight = |rng: &mut R| {
        if crisp {
            Interval::point(rng.gen_range(0.05..1.0)).unwrap()
        } else {
            let lo = rng.gen_range(0.05..0.8);
            Interval::new(lo, lo + rng.gen_range(0.0..0.5)).unwrap()
        }
    };
    let decision_makers = (0..n_dm)
        .map(|d| DecisionMaker {
            label: format!("D{d}"),
            weight: weight(rng),
        })
        .collect::<Vec<_>>();
    let criterion_weights = (0..n_dm).map(|_| (0..n_crit).map(|_| weight(rng)).collect()).collect();
    let ratings = (0..n_dm)
        .map(|_| {
            (0..n_alt)
                .map(|_| (0..n_crit).map(|_| random_triple(rng)).collect())
                .collect()
        })
        .collect();
    DecisionProblem::new(
        (0..n_alt).map(|a| format!("A{a}")).collect(),
        (0..n_crit).map(|c| format!("C{c}")).collect(),
        decision_makers,
        criterion_weights,
        ratings,
    )
    .unwrap()
}

/// Crisp-weight reimplementation on plain triples: returns the collapsed BPA
/// per alternative for a problem whose weights are all degenerate.
pub fn crisp_pipeline(problem: &DecisionProblem) -> Vec<Triple> {
    fn combine(p: Triple, q: Triple) -> Triple {
        let k = p[0] * q[1] + p[1] * q[0];
        let is = p[0] * q[0] + p[0] * q[2] + p[2] * q[0];
        let ns = p[1] * q[1] + p[1] * q[2] + p[2] * q[1];
        let th = p[2] * q[2];
        [is / (1.0 - k), ns / (1.0 - k), th / (1.0 - k)]
    }
    fn discount(m: Triple, w: f64) -> Triple {
        [w * m[0], w * m[1], 1.0 - w * m[0] - w * m[1]]
    }
    let cw: Vec<Vec<f64>> = problem
        .criterion_weights()
        .iter()
        .map(|r| r.iter().map(|w| w.lo()).collect())
        .collect();
    let cmax = cw.iter().flatten().copied().fold(0.0, f64::max);
    let dw: Vec<f64> = problem.decision_makers().iter().map(|d| d.weight.lo()).collect();
    let dmax = dw.iter().copied().fold(0.0, f64::max);
    (0..problem.alternatives().len())
        .map(|a| {
            let per_dm: Vec<Triple> = (0..dw.len())
                .map(|d| {
                    let fused = (0..cw[d].len())
                        .map(|c| discount(problem.ratings()[d][a][c].triple(), cw[d][c] / cmax))
                        .reduce(combine)
                        .unwrap();
                    discount(fused, dw[d] / dmax)
                })
                .collect();
            let fused = per_dm.into_iter().reduce(combine).unwrap();
            combine(fused, fused)
        })
        .collect()
}
