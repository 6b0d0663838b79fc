//! Closed real intervals `[lo, hi]` and their endpoint arithmetic.
//!
//! Operands are restricted to non-negative intervals wherever a product or
//! quotient is involved; this is not a general interval-analysis library.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Endpoint ordering slack accepted by [`Interval::new`].
pub const ORDER_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval [{lo}, {hi}]: {reason}")]
    InvalidInterval { lo: f64, hi: f64, reason: &'static str },
    #[error("operand [{lo}, {hi}] has a negative lower bound")]
    NegativeOperand { lo: f64, hi: f64 },
    #[error("division by an interval with non-positive lower bound [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },
    #[error("endpoint-wise quotient is inverted: [{lo}, {hi}]")]
    InvertedResult { lo: f64, hi: f64 },
    #[error("negative scalar {0}")]
    NegativeScalar(f64),
}

/// A closed interval `[lo, hi]` with finite endpoints and `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds `[lo, hi]`. Endpoints inverted by no more than
    /// [`ORDER_TOLERANCE`] are collapsed onto `lo`.
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::InvalidInterval {
                lo,
                hi,
                reason: "non-finite endpoint",
            });
        }
        if lo > hi {
            if lo - hi > ORDER_TOLERANCE {
                return Err(IntervalError::InvalidInterval {
                    lo,
                    hi,
                    reason: "lower bound exceeds upper bound",
                });
            }
            return Ok(Self { lo, hi: lo });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self, IntervalError> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn require_non_negative(&self) -> Result<(), IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::NegativeOperand {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    /// `[a.lo * b.lo, a.hi * b.hi]`, defined for non-negative operands only.
    pub fn try_mul(self, other: Interval) -> Result<Interval, IntervalError> {
        self.require_non_negative()?;
        other.require_non_negative()?;
        Interval::new(self.lo * other.lo, self.hi * other.hi)
    }

    /// Endpoint-wise quotient `[a.lo / b.lo, a.hi / b.hi]`.
    ///
    /// This is not the inclusion quotient of interval analysis: for a
    /// non-degenerate divisor the endpoints may come out inverted, which is
    /// reported as [`IntervalError::InvertedResult`] rather than reordered.
    pub fn try_div(self, other: Interval) -> Result<Interval, IntervalError> {
        if other.lo <= 0.0 {
            return Err(IntervalError::DivisionByZero {
                lo: other.lo,
                hi: other.hi,
            });
        }
        let lo = self.lo / other.lo;
        let hi = self.hi / other.hi;
        if lo > hi + ORDER_TOLERANCE {
            return Err(IntervalError::InvertedResult { lo, hi });
        }
        Interval::new(lo, hi)
    }

    /// `[k * lo, k * hi]` for `k >= 0`.
    pub fn try_scale(self, k: f64) -> Result<Interval, IntervalError> {
        if k < 0.0 || !k.is_finite() {
            return Err(IntervalError::NegativeScalar(k));
        }
        Interval::new(k * self.lo, k * self.hi)
    }

    /// `[1 / hi, 1 / lo]`.
    pub fn try_recip(self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::DivisionByZero {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Interval::new(1.0 / self.hi, 1.0 / self.lo)
    }

    /// `|a.lo - b.lo| + |a.hi - b.hi|`.
    pub fn distance(&self, other: &Interval) -> f64 {
        (self.lo - other.lo).abs() + (self.hi - other.hi).abs()
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        // Sum of ordered pairs stays ordered; finiteness can only be lost on overflow.
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = IntervalError;

    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn close(a: Interval, lo: f64, hi: f64, tol: f64) -> bool {
        (a.lo() - lo).abs() <= tol && (a.hi() - hi).abs() <= tol
    }

    #[test]
    fn construction() {
        assert_eq!(iv(0.20, 0.35), Interval { lo: 0.20, hi: 0.35 });
        assert!(iv(0.5, 0.5).is_degenerate());
        assert!(matches!(
            Interval::new(0.9, 0.1),
            Err(IntervalError::InvalidInterval { .. })
        ));
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        // inversion within tolerance collapses
        let c = Interval::new(0.3 + 1e-13, 0.3).unwrap();
        assert!(c.is_degenerate());
    }

    #[test]
    fn addition() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 4.0), iv(4.0, 6.0));
        assert_eq!(iv(0.0, 0.0) + iv(0.3, 0.7), iv(0.3, 0.7));
        assert!(close(iv(0.2, 0.35) + iv(0.3, 0.55), 0.5, 0.9, TOL));
    }

    #[test]
    fn multiplication() {
        assert_eq!(iv(1.0, 1.0).try_mul(iv(0.3, 0.7)).unwrap(), iv(0.3, 0.7));
        assert!(close(iv(0.2, 0.5).try_mul(iv(0.6, 0.6)).unwrap(), 0.12, 0.30, TOL));
        assert!(close(iv(0.2857, 0.5).try_mul(iv(0.6, 0.6)).unwrap(), 0.1714, 0.3, 1e-4));
        assert!(matches!(
            iv(-0.1, 0.5).try_mul(iv(0.6, 0.6)),
            Err(IntervalError::NegativeOperand { .. })
        ));
    }

    #[test]
    fn division() {
        assert!(close(
            iv(0.20, 0.35).try_div(iv(0.70, 0.70)).unwrap(),
            0.2857,
            0.5,
            1e-4
        ));
        assert_eq!(iv(0.3, 0.7).try_div(iv(1.0, 1.0)).unwrap(), iv(0.3, 0.7));
        assert!(matches!(
            iv(2.0, 3.0).try_div(iv(1.0, 10.0)),
            Err(IntervalError::InvertedResult { .. })
        ));
        assert!(matches!(
            iv(2.0, 3.0).try_div(iv(0.0, 10.0)),
            Err(IntervalError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn scaling() {
        assert!(close(iv(0.1, 0.3).try_scale(2.0).unwrap(), 0.2, 0.6, TOL));
        assert_eq!(iv(0.1, 0.3).try_scale(0.0).unwrap(), iv(0.0, 0.0));
        assert!(close(iv(0.70, 0.95).try_scale(0.5).unwrap(), 0.35, 0.475, TOL));
        assert!(matches!(
            iv(0.1, 0.3).try_scale(-1.0),
            Err(IntervalError::NegativeScalar(_))
        ));
    }

    #[test]
    fn reciprocal() {
        assert_eq!(iv(1.0, 1.0).try_recip().unwrap(), iv(1.0, 1.0));
        assert_eq!(iv(0.5, 2.0).try_recip().unwrap(), iv(0.5, 2.0));
        assert!(close(iv(0.2, 0.4).try_recip().unwrap(), 2.5, 5.0, TOL));
        assert!(iv(0.0, 0.4).try_recip().is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(iv(0.1, 0.9).distance(&iv(0.1, 0.9)), 0.0);
        assert!((iv(0.1, 0.9).distance(&iv(0.4, 0.6)) - 0.6).abs() < TOL);
        assert!((iv(0.0, 0.0).distance(&iv(0.25, 0.50)) - 0.75).abs() < TOL);
    }

    #[test]
    fn serde_as_pair() {
        let s = serde_json::to_string(&iv(0.25, 0.5)).unwrap();
        assert_eq!(s, "[0.25,0.5]");
        let back: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, iv(0.25, 0.5));
        assert!(serde_json::from_str::<Interval>("[0.9,0.1]").is_err());
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (0.0f64..10.0, 0.0f64..10.0).prop_map(|(a, b)| iv(a.min(b), a.max(b)))
    }

    fn arb_positive() -> impl Strategy<Value = Interval> {
        (0.01f64..10.0, 0.01f64..10.0).prop_map(|(a, b)| iv(a.min(b), a.max(b)))
    }

    proptest! {
        #[test]
        fn add_commutes_and_associates(a in arb_interval(), b in arb_interval(), c in arb_interval()) {
            prop_assert_eq!(a + b, b + a);
            let l = (a + b) + c;
            let r = a + (b + c);
            prop_assert!(close(l, r.lo(), r.hi(), 1e-12));
        }

        #[test]
        fn mul_commutes_with_unit_identity(a in arb_interval(), b in arb_interval()) {
            prop_assert_eq!(a.try_mul(b).unwrap(), b.try_mul(a).unwrap());
            let one = iv(1.0, 1.0);
            prop_assert_eq!(a.try_mul(one).unwrap(), a);
            prop_assert_eq!(one.try_mul(a).unwrap(), a);
        }

        #[test]
        fn distance_is_a_metric(a in arb_interval(), b in arb_interval(), c in arb_interval()) {
            prop_assert_eq!(a.distance(&a), 0.0);
            prop_assert_eq!(a.distance(&b), b.distance(&a));
            prop_assert!(a.distance(&c) <= a.distance(&b) + b.distance(&c) + 1e-12);
            if a != b {
                prop_assert!(a.distance(&b) > 0.0);
            }
        }

        #[test]
        fn recip_is_involutive(a in arb_positive()) {
            let back = a.try_recip().unwrap().try_recip().unwrap();
            prop_assert!(close(back, a.lo(), a.hi(), 1e-9 * a.hi().max(1.0)));
        }

        #[test]
        fn div_by_point_is_scaling(a in arb_interval(), k in 0.01f64..10.0) {
            let d = a.try_div(iv(k, k)).unwrap();
            let s = a.try_scale(1.0 / k).unwrap();
            prop_assert!(close(d, s.lo(), s.hi(), 1e-9));
        }
    }
}
