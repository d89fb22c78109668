//! Scalar abstraction over the two precision modes.
//!
//! The decimation solver is written once against [`Real`] and instantiated
//! with `f64` (default) or [`crate::highprec::HighPrec`] (software fixed
//! point with 320 fractional bits) when the renormalized eigenvalue limit
//! has to be certified well past machine precision.

/// Precision mode selector used by the non-generic entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    High,
}

/// The operations the bracketed-Newton solver and the eigenvalue sequence
/// need. Everything is by-reference so the big fixed-point type avoids
/// copies.
pub trait Real: Clone + PartialOrd + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Unit roundoff scale: iteration deltas below ~10x this are noise.
    fn epsilon() -> Self;
    /// Residual acceptance scale for root finding.
    fn root_tol() -> Self;
}

impl Real for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_i64(v: i64) -> f64 {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn abs(&self) -> f64 {
        libm::fabs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
    fn root_tol() -> f64 {
        1e-14
    }
}

/// Square root by Newton iteration from an `f64` seed; exact enough for
/// branch endpoints at either precision. Requires `v >= 0`.
pub fn sqrt_newton<T: Real>(v: &T) -> T {
    let approx = libm::sqrt(v.to_f64());
    if approx == 0.0 {
        return T::zero();
    }
    // Seed with ~40 correct bits; each step doubles them.
    const SCALE: i64 = 1 << 40;
    let mut x = T::from_ratio((approx * SCALE as f64) as i64, SCALE);
    let half = T::from_ratio(1, 2);
    for _ in 0..6 {
        x = x.add(&v.div(&x)).mul(&half);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrips() {
        assert_eq!(f64::from_ratio(4, 3), 4.0 / 3.0);
        assert_eq!(2.0f64.add(&3.0), 5.0);
        assert_eq!((-2.5f64).abs(), 2.5);
    }

    #[test]
    fn sqrt_newton_matches_libm() {
        for v in [2.0f64, 17.0, 19.0, 0.25] {
            assert!((sqrt_newton(&v) - libm::sqrt(v)).abs() < 1e-15);
        }
        assert_eq!(sqrt_newton(&0.0f64), 0.0);
    }
}
