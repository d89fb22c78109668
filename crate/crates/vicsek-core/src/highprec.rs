//! Fixed-point arithmetic with 320 fractional bits (~96 decimal digits).
//!
//! Every quantity in the high-precision eigenvalue computation lives in
//! `[0, 40)`, so a sign-magnitude fixed-point layout with one integer limb
//! and five fraction limbs covers the whole computation with room to spare.
//! Multiplication truncates toward zero at bit 320; with ~35 guard digits
//! over the certified 60, truncation bias is irrelevant.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::scalar::Real;

const LIMBS: usize = 6;
/// Fraction bits; exactly five limbs so the multiply shift is limb-aligned.
const FRAC_BITS: u32 = 320;
const FRAC_LIMBS: usize = 5;

/// Sign-magnitude fixed point: `value = sign * mag / 2^320`.
#[derive(Debug, Clone, Copy)]
pub struct HighPrec {
    neg: bool,
    mag: [u64; LIMBS],
}

fn mag_is_zero(m: &[u64; LIMBS]) -> bool {
    m.iter().all(|&l| l == 0)
}

fn mag_cmp(a: &[u64; LIMBS], b: &[u64; LIMBS]) -> Ordering {
    for i in (0..LIMBS).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

fn mag_add(a: &[u64; LIMBS], b: &[u64; LIMBS]) -> [u64; LIMBS] {
    let mut out = [0u64; LIMBS];
    let mut carry = 0u64;
    for i in 0..LIMBS {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry);
        out[i] = s2;
        carry = (c1 as u64) + (c2 as u64);
    }
    assert!(carry == 0, "fixed-point overflow in add");
    out
}

/// `a - b` for `a >= b`.
fn mag_sub(a: &[u64; LIMBS], b: &[u64; LIMBS]) -> [u64; LIMBS] {
    let mut out = [0u64; LIMBS];
    let mut borrow = 0u64;
    for i in 0..LIMBS {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow);
        out[i] = d2;
        borrow = (b1 as u64) + (b2 as u64);
    }
    assert!(borrow == 0, "magnitude subtraction underflow");
    out
}

/// Schoolbook 6x6 limb product, truncated at the fixed-point scale.
fn mag_mul(a: &[u64; LIMBS], b: &[u64; LIMBS]) -> [u64; LIMBS] {
    let mut prod = [0u64; 2 * LIMBS];
    for i in 0..LIMBS {
        let mut carry = 0u128;
        for j in 0..LIMBS {
            let cur = prod[i + j] as u128 + (a[i] as u128) * (b[j] as u128) + carry;
            prod[i + j] = cur as u64;
            carry = cur >> 64;
        }
        let mut k = i + LIMBS;
        while carry > 0 {
            let cur = prod[k] as u128 + carry;
            prod[k] = cur as u64;
            carry = cur >> 64;
            k += 1;
        }
    }
    assert!(prod[11] == 0, "fixed-point overflow in mul");
    let mut out = [0u64; LIMBS];
    out.copy_from_slice(&prod[FRAC_LIMBS..FRAC_LIMBS + LIMBS]);
    out
}

/// Bitwise restoring division of `(a << 320) / b`.
fn mag_div(a: &[u64; LIMBS], b: &[u64; LIMBS]) -> [u64; LIMBS] {
    assert!(!mag_is_zero(b), "division by zero");
    // Numerator is a shifted left by five limbs: limbs 5..=10.
    let mut num = [0u64; 12];
    num[FRAC_LIMBS..FRAC_LIMBS + LIMBS].copy_from_slice(a);
    let mut rem = [0u64; LIMBS + 1];
    let mut quot = [0u64; LIMBS];
    let total_bits = (FRAC_LIMBS + LIMBS) * 64;
    for bit in (0..total_bits).rev() {
        // rem = (rem << 1) | numerator bit
        let mut carry = (num[bit / 64] >> (bit % 64)) & 1;
        for limb in rem.iter_mut() {
            let next = *limb >> 63;
            *limb = (*limb << 1) | carry;
            carry = next;
        }
        // compare rem (7 limbs) with b (6 limbs)
        let ge = if rem[LIMBS] != 0 {
            true
        } else {
            let mut head = [0u64; LIMBS];
            head.copy_from_slice(&rem[..LIMBS]);
            mag_cmp(&head, b) != Ordering::Less
        };
        if ge {
            let mut borrow = 0u64;
            for i in 0..LIMBS {
                let (d1, b1) = rem[i].overflowing_sub(b[i]);
                let (d2, b2) = d1.overflowing_sub(borrow);
                rem[i] = d2;
                borrow = (b1 as u64) + (b2 as u64);
            }
            rem[LIMBS] -= borrow;
            assert!(bit < LIMBS * 64, "fixed-point overflow in div");
            quot[bit / 64] |= 1u64 << (bit % 64);
        }
    }
    quot
}

impl HighPrec {
    pub const ZERO: HighPrec = HighPrec {
        neg: false,
        mag: [0; LIMBS],
    };

    fn normalized(neg: bool, mag: [u64; LIMBS]) -> HighPrec {
        HighPrec {
            neg: neg && !mag_is_zero(&mag),
            mag,
        }
    }

    /// `2^-exp` for `exp <= 320`; used for tolerance constants.
    pub fn pow2_neg(exp: u32) -> HighPrec {
        assert!(exp <= FRAC_BITS);
        let bit = FRAC_BITS - exp;
        let mut mag = [0u64; LIMBS];
        mag[(bit / 64) as usize] = 1u64 << (bit % 64);
        HighPrec { neg: false, mag }
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    /// Decimal rendering with `frac_digits` truncated fraction digits.
    /// Truncation of a binary fixed-point value yields the exact leading
    /// digits of its decimal expansion.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        let mut s = String::new();
        if self.neg {
            s.push('-');
        }
        let int_part = self.mag[FRAC_LIMBS];
        s.push_str(itoa_u64(int_part).as_str());
        if frac_digits == 0 {
            return s;
        }
        s.push('.');
        let mut frac = [0u64; FRAC_LIMBS];
        frac.copy_from_slice(&self.mag[..FRAC_LIMBS]);
        for _ in 0..frac_digits {
            let mut carry = 0u128;
            for limb in frac.iter_mut() {
                let cur = (*limb as u128) * 10 + carry;
                *limb = cur as u64;
                carry = cur >> 64;
            }
            debug_assert!(carry < 10);
            s.push((b'0' + carry as u8) as char);
        }
        s
    }
}

fn itoa_u64(mut v: u64) -> String {
    if v == 0 {
        return String::from("0");
    }
    let mut digits = Vec::new();
    while v > 0 {
        digits.push(b'0' + (v % 10) as u8);
        v /= 10;
    }
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

impl PartialEq for HighPrec {
    fn eq(&self, o: &HighPrec) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for HighPrec {}

impl PartialOrd for HighPrec {
    fn partial_cmp(&self, o: &HighPrec) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for HighPrec {
    fn cmp(&self, o: &HighPrec) -> Ordering {
        match (self.neg, o.neg) {
            (false, false) => mag_cmp(&self.mag, &o.mag),
            (true, true) => mag_cmp(&o.mag, &self.mag),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
        }
    }
}

impl Real for HighPrec {
    fn zero() -> HighPrec {
        HighPrec::ZERO
    }

    fn one() -> HighPrec {
        HighPrec::from_i64(1)
    }

    fn from_i64(v: i64) -> HighPrec {
        let mut mag = [0u64; LIMBS];
        mag[FRAC_LIMBS] = v.unsigned_abs();
        HighPrec::normalized(v < 0, mag)
    }

    fn from_ratio(num: i64, den: i64) -> HighPrec {
        HighPrec::from_i64(num).div(&HighPrec::from_i64(den))
    }

    fn add(&self, o: &HighPrec) -> HighPrec {
        if self.neg == o.neg {
            HighPrec::normalized(self.neg, mag_add(&self.mag, &o.mag))
        } else {
            match mag_cmp(&self.mag, &o.mag) {
                Ordering::Equal => HighPrec::ZERO,
                Ordering::Greater => HighPrec::normalized(self.neg, mag_sub(&self.mag, &o.mag)),
                Ordering::Less => HighPrec::normalized(o.neg, mag_sub(&o.mag, &self.mag)),
            }
        }
    }

    fn sub(&self, o: &HighPrec) -> HighPrec {
        self.add(&o.neg())
    }

    fn mul(&self, o: &HighPrec) -> HighPrec {
        HighPrec::normalized(self.neg != o.neg, mag_mul(&self.mag, &o.mag))
    }

    fn div(&self, o: &HighPrec) -> HighPrec {
        HighPrec::normalized(self.neg != o.neg, mag_div(&self.mag, &o.mag))
    }

    fn neg(&self) -> HighPrec {
        HighPrec::normalized(!self.neg, self.mag)
    }

    fn abs(&self) -> HighPrec {
        HighPrec {
            neg: false,
            mag: self.mag,
        }
    }

    fn to_f64(&self) -> f64 {
        const LIMB: f64 = 18446744073709551616.0;
        let mut v = 0.0f64;
        for i in (0..LIMBS).rev() {
            v = v * LIMB + self.mag[i] as f64;
        }
        // Divide by 2^320 in limb-sized steps; tiny values stay normal.
        for _ in 0..FRAC_LIMBS {
            v /= LIMB;
        }
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// `2^-233 ~ 7.2e-71`: convergence deltas below ~10x this are treated
    /// as settled, leaving ~25 guard digits over the certified 60.
    fn epsilon() -> HighPrec {
        HighPrec::pow2_neg(233)
    }

    /// `2^-260 ~ 5.4e-79` residual acceptance scale.
    fn root_tol() -> HighPrec {
        HighPrec::pow2_neg(260)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hp(num: i64, den: i64) -> HighPrec {
        HighPrec::from_ratio(num, den)
    }

    #[test]
    fn integer_roundtrip() {
        assert_eq!(HighPrec::from_i64(42).to_f64(), 42.0);
        assert_eq!(HighPrec::from_i64(-7).to_f64(), -7.0);
        assert_eq!(HighPrec::from_i64(0), HighPrec::ZERO);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(hp(1, 3).to_decimal(10), "0.3333333333");
        assert_eq!(hp(-5, 4).to_decimal(4), "-1.2500");
        assert_eq!(hp(4, 3).to_decimal(6), "1.333333");
        assert_eq!(HighPrec::from_i64(12).to_decimal(0), "12");
    }

    #[test]
    fn field_identities() {
        let third = hp(1, 3);
        let one = HighPrec::one();
        let three = HighPrec::from_i64(3);
        // 1/3 * 3 is one ulp short of 1 after truncation
        let diff = one.sub(&third.mul(&three)).abs();
        assert!(diff < HighPrec::pow2_neg(318));
        assert_eq!(hp(1, 2).add(&hp(1, 2)), one);
        assert_eq!(hp(7, 2).sub(&hp(3, 2)), HighPrec::from_i64(2));
        assert_eq!(hp(-1, 2).mul(&hp(-1, 2)), hp(1, 4));
    }

    #[test]
    fn comparisons() {
        assert!(hp(1, 6) < hp(1, 5));
        assert!(hp(-1, 2) < HighPrec::ZERO);
        assert!(hp(-1, 2) < hp(1, 1000000));
        assert!(hp(-1, 3) > hp(-1, 2));
        assert!(HighPrec::ZERO == HighPrec::from_i64(0).neg());
    }

    #[test]
    fn tolerance_constants_are_tiny_but_positive() {
        let eps = <HighPrec as Real>::epsilon();
        assert!(eps > HighPrec::ZERO);
        let f = eps.to_f64();
        assert!(f > 1e-72 && f < 1e-69, "{f}");
        let rt = <HighPrec as Real>::root_tol().to_f64();
        assert!(rt > 1e-80 && rt < 1e-77, "{rt}");
    }

    proptest! {
        // Compare against exact i128 rational arithmetic on moderate inputs.
        #[test]
        fn matches_rational_oracle(
            an in -10_000i64..10_000, ad in 1i64..10_000,
            bn in -10_000i64..10_000, bd in 1i64..10_000,
        ) {
            let a = hp(an, ad);
            let b = hp(bn, bd);
            let ulp = HighPrec::pow2_neg(315);

            let sum = a.add(&b);
            let exact = (an as i128 * bd as i128 + bn as i128 * ad as i128, ad as i128 * bd as i128);
            let approx = exact.0 as f64 / exact.1 as f64;
            prop_assert!((sum.to_f64() - approx).abs() <= 1e-9);

            let prod = a.mul(&b);
            let exactp = (an as i128 * bn as i128) as f64 / (ad as i128 * bd as i128) as f64;
            prop_assert!((prod.to_f64() - exactp).abs() <= 1e-9);

            if bn != 0 {
                // (a/b)*b is within a few truncation ulps of a
                let back = a.div(&b).mul(&b);
                prop_assert!(back.sub(&a).abs() < ulp.mul(&HighPrec::from_i64(1 + bn.abs())));
            }
        }
    }
}
