//! Strategies and property checks shared by the proptest suite and the
//! acceptance runner.

use evimcdm::evidence::{FocalSet, Frame, MassFunction, IS, IS_NS, NS};
use evimcdm::interval::Interval;
use evimcdm::pipeline::{
    discount, normalize_weight_group, rank_alternatives, rank_alternatives_with, CriterionNormalization, RankOptions,
    WeightGroup,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{brute_force_combine, crisp_pipeline, max_diff, random_problem};

pub type Check = Result<(), TestCaseError>;

fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

pub fn masses_on(n: usize) -> impl Strategy<Value = MassFunction> {
    let full = (1u16 << n) - 1;
    prop::collection::vec((1..=full, 0.01f64..1.0), 1..=5).prop_map(move |raw| {
        let total: f64 = raw.iter().map(|(_, m)| m).sum();
        MassFunction::new(
            &frame(n),
            raw.into_iter().map(|(b, m)| (FocalSet::from_bits(b), m / total)),
        )
        .unwrap()
    })
}

pub fn mass() -> impl Strategy<Value = MassFunction> {
    (1usize..=4).prop_flat_map(masses_on)
}

pub fn pair() -> impl Strategy<Value = (MassFunction, MassFunction)> {
    (1usize..=4).prop_flat_map(|n| (masses_on(n), masses_on(n)))
}

pub fn triple() -> impl Strategy<Value = (MassFunction, MassFunction, MassFunction)> {
    (1usize..=4).prop_flat_map(|n| (masses_on(n), masses_on(n), masses_on(n)))
}

pub fn ideal() -> impl Strategy<Value = MassFunction> {
    (0.0f64..1.0, 0.0f64..1.0, 0.01f64..1.0).prop_map(|(a, b, c)| {
        let s = a + b + c;
        MassFunction::ideal_triple(a / s, b / s, c / s).unwrap()
    })
}

pub fn interval(max: f64) -> impl Strategy<Value = Interval> {
    (0.0..max, 0.0..max).prop_map(|(a, b): (f64, f64)| Interval::new(a.min(b), a.max(b)).unwrap())
}

pub fn weight_group_and_factor() -> impl Strategy<Value = (Vec<Interval>, f64)> {
    // k in (0, 10]
    (
        prop::collection::vec(interval(5.0), 1..8),
        (1u32..=1_000_000).prop_map(|i| i as f64 * 1e-5),
    )
}

pub fn commutative((a, b): (MassFunction, MassFunction)) -> Check {
    match (a.combine(&b), b.combine(&a)) {
        (Ok(x), Ok(y)) => prop_assert!(x.max_abs_diff(&y) <= 1e-12),
        (Err(_), Err(_)) => {}
        (x, y) => prop_assert!(false, "asymmetric outcome {x:?} vs {y:?}"),
    }
    Ok(())
}

pub fn associative((a, b, c): (MassFunction, MassFunction, MassFunction)) -> Check {
    let left = a.combine(&b).and_then(|ab| ab.combine(&c));
    let right = b.combine(&c).and_then(|bc| a.combine(&bc));
    // total conflict can surface at different stages of the two groupings
    if let (Ok(x), Ok(y)) = (left, right) {
        prop_assert!(x.max_abs_diff(&y) <= 1e-9, "{x:?} vs {y:?}");
    }
    Ok(())
}

pub fn vacuous_neutral(m: MassFunction) -> Check {
    let v = MassFunction::vacuous(m.frame());
    prop_assert_eq!(&m.combine(&v).unwrap(), &m);
    prop_assert_eq!(&v.combine(&m).unwrap(), &m);
    Ok(())
}

pub fn matches_enumeration((a, b): (MassFunction, MassFunction)) -> Check {
    match (a.combine(&b), brute_force_combine(&a, &b)) {
        (Ok(m), Some(d)) => {
            for (bits, want) in d.iter().enumerate().skip(1) {
                let got = m.mass(FocalSet::from_bits(bits as u16));
                prop_assert!((got - want).abs() <= 1e-12, "subset {bits:b}: {got} vs {want}");
            }
        }
        (Err(_), None) => {}
        (x, y) => prop_assert!(false, "outcome mismatch {x:?} vs {y:?}"),
    }
    Ok(())
}

pub fn combined_sums_to_one((a, b): (MassFunction, MassFunction)) -> Check {
    if let Ok(m) = a.combine(&b) {
        let s: f64 = m.focal_elements().map(|(_, v)| v).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }
    Ok(())
}

pub fn pignistic_normalized(m: MassFunction) -> Check {
    let bet = m.pignistic();
    prop_assert!(bet.iter().all(|&p| p >= 0.0));
    prop_assert!((bet.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    Ok(())
}

pub fn discount_identities((m, w): (MassFunction, f64)) -> Check {
    prop_assert_eq!(&discount(&m, 1.0).unwrap(), &m);
    prop_assert!(discount(&m, 0.0).unwrap().is_vacuous());
    let d = discount(&m, w).unwrap();
    prop_assert!((d.mass(IS_NS) - (1.0 - d.mass(IS) - d.mass(NS))).abs() <= 1e-12);
    prop_assert!((d.mass(IS) - w * m.mass(IS)).abs() <= 1e-15);
    Ok(())
}

pub fn scale_invariant((ws, k): (Vec<Interval>, f64)) -> Check {
    if ws.iter().all(|w| w.hi() == 0.0) {
        return Ok(());
    }
    let scaled: Vec<Interval> = ws.iter().map(|w| w.try_scale(k).unwrap()).collect();
    let a = normalize_weight_group(&ws, WeightGroup::Criterion).unwrap();
    let b = normalize_weight_group(&scaled, WeightGroup::Criterion).unwrap();
    for (x, y) in a.iter().zip(&b) {
        prop_assert!(x.distance(y) <= 1e-12, "{x} vs {y}");
    }
    prop_assert!(a.iter().all(|w| w.hi() <= 1.0));
    prop_assert!(a.iter().any(|w| w.hi() == 1.0));
    Ok(())
}

pub fn crisp_equivalence(seed: u64) -> Check {
    let problem = random_problem(&mut ChaCha8Rng::seed_from_u64(seed), true);
    let report = rank_alternatives(&problem).unwrap();
    for (got, want) in report.collapsed.iter().zip(crisp_pipeline(&problem)) {
        prop_assert!(
            max_diff(&got.triple(), &want) <= 1e-9,
            "{:?} vs {:?}",
            got.triple(),
            want
        );
    }
    for ib in &report.final_bpas {
        prop_assert!(ib.left().max_abs_diff(ib.right()) <= 1e-12);
    }
    Ok(())
}

pub fn deterministic_and_complementary(seed: u64) -> Check {
    let problem = random_problem(&mut ChaCha8Rng::seed_from_u64(seed), false);
    for mode in [CriterionNormalization::Pooled, CriterionNormalization::PerDm] {
        let opts = RankOptions {
            criterion_normalization: mode,
        };
        let a = rank_alternatives_with(&problem, &opts).unwrap();
        let b = rank_alternatives_with(&problem, &opts).unwrap();
        prop_assert_eq!(&a.ranking, &b.ranking);
        for (x, y) in a.bet_is.iter().zip(&b.bet_is) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
        for m in &a.collapsed {
            let bet = m.pignistic();
            prop_assert!((bet[0] + bet[1] - 1.0).abs() <= 1e-12);
        }
        for w in a
            .normalized_criterion_weights
            .iter()
            .flatten()
            .chain(&a.normalized_dm_weights)
        {
            prop_assert!(w.lo() >= 0.0 && w.hi() <= 1.0);
        }
    }
    Ok(())
}
