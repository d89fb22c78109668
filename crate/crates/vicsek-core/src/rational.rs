//! Exact rational arithmetic for vertex coordinates and spot values.
//!
//! Denominators stay tiny here (they divide `2 * 3^m` for level-`m`
//! coordinates), so a reduced `i64` fraction with `i128` intermediates is
//! exact with a huge safety margin.

use core::cmp::Ordering;
use core::fmt;

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den`, reducing to lowest terms. Panics on a zero
    /// denominator.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(v: i64) -> Rational {
        Rational { num: v, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn add(&self, o: &Rational) -> Rational {
        let num = (self.num as i128) * (o.den as i128) + (o.num as i128) * (self.den as i128);
        let den = (self.den as i128) * (o.den as i128);
        Self::from_i128(num, den)
    }

    pub fn sub(&self, o: &Rational) -> Rational {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rational) -> Rational {
        Self::from_i128(
            (self.num as i128) * (o.num as i128),
            (self.den as i128) * (o.den as i128),
        )
    }

    pub fn div(&self, o: &Rational) -> Rational {
        assert!(o.num != 0, "division by zero");
        Self::from_i128(
            (self.num as i128) * (o.den as i128),
            (self.den as i128) * (o.num as i128),
        )
    }

    pub fn neg(&self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        fn gcd128(mut a: i128, mut b: i128) -> i128 {
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            if a < 0 {
                -a
            } else {
                a
            }
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd128(num, den).max(1);
        let num = sign * num / g;
        let den = sign * den / g;
        assert!(
            num >= i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128,
            "rational overflow"
        );
        Rational {
            num: num as i64,
            den: den as i64,
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Rational) -> Ordering {
        ((self.num as i128) * (o.den as i128)).cmp(&((o.num as i128) * (self.den as i128)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
