//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every matrix entry the gradings need (Pauli matrices, involution matrices,
//! conjugators, character values `±1, ±i`) lives in `Q(i)`, so all subspace
//! comparisons downstream are decided without tolerance.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::Field;
use crate::Error;

/// A complex number `re + im·i` with arbitrary-precision rational parts.
///
/// Both parts are kept in lowest terms with positive denominators, so
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

/// The four field operations, for callers that dispatch on an operator value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(ratio(n, 1), BigRational::zero())
    }

    /// `n/d + 0i`. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(ratio(n, d), BigRational::zero())
    }

    /// `(re_n/re_d) + (im_n/im_d)i`.
    pub fn from_parts(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        Self::new(ratio(re_n, re_d), ratio(im_n, im_d))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        let inv = rhs.recip().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::new(self.re.recip(), BigRational::zero()));
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self, Error> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    /// Multiplicative order if `self` is one of `±1, ±i`.
    pub fn unit_order(&self) -> Option<u32> {
        (1..=4).find(|&k| Self::i_pow(k as i64) == *self).map(|k| match k {
            4 => 1,
            2 => 2,
            _ => 4,
        })
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        if !rhs.re.is_zero() {
            self.re += &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        if !rhs.re.is_zero() {
            self.re -= &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = self.mul_ref(rhs);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(mut self, rhs: GaussianRational) -> GaussianRational {
                self.$assign(&rhs);
                self
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(mut self, rhs: &GaussianRational) -> GaussianRational {
                self.$assign(rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);
forward_binop!(Mul, mul, mul_assign);

impl Div for GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] to
    /// get an error value instead.
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Field for GaussianRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => Self::new(&self.re * &rhs.re, BigRational::zero()),
            (true, false) => Self::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => Self::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => Self::new(
                &self.re * &rhs.re - &self.im * &rhs.im,
                &self.re * &rhs.im + &self.im * &rhs.re,
            ),
        }
    }

    fn inv(&self) -> Option<Self> {
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_integer(v)
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical string form: `a/b+c/di`. Integer parts drop the denominator, a
/// zero part is omitted (unless both are zero), and the imaginary coefficient
/// is always written out (`1i`, `-1/2i`).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.im.abs(), f)?;
        } else {
            fmt_rational(&self.im, f)?;
        }
        f.write_str("i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational, Error> {
    let bad = || Error::ParseScalar(whole.to_string());
    let s = s.strip_prefix('+').unwrap_or(s);
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::ParseScalar(s.to_string()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::from(parse_rational(t, s)?));
        };
        // the sign separating the two parts is the last one not at position 0
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k], s)?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other, s)?,
        };
        Ok(Self::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn arith_examples() {
        let one_plus_i = q("1+1i");
        let one_minus_i = q("1-1i");
        assert_eq!(
            one_plus_i.arith(&one_minus_i, ArithOp::Mul).unwrap(),
            GaussianRational::from_integer(2)
        );
        let half = GaussianRational::from_ratio(1, 2);
        assert_eq!(&half + &half, GaussianRational::one());
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = GaussianRational::from_integer(3);
        assert!(matches!(
            x.arith(&GaussianRational::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(
            x.checked_div(&GaussianRational::i()).unwrap(),
            q("-3i")
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(GaussianRational::i().conj(), -GaussianRational::i());
        assert_eq!(q("3/2").conj(), q("3/2"));
        assert_eq!(q("1+2i").conj(), q("1-2i"));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(GaussianRational::from_parts(1, 2, -3, 4).to_string(), "1/2-3/4i");
        assert_eq!(GaussianRational::from_parts(0, 1, 1, 1).to_string(), "1i");
        assert_eq!(GaussianRational::from_parts(-2, 4, 0, 1).to_string(), "-1/2");
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), -GaussianRational::i());
        assert_eq!(q("2/4+6/3i"), GaussianRational::from_parts(1, 2, 2, 1));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn unit_orders() {
        assert_eq!(GaussianRational::one().unit_order(), Some(1));
        assert_eq!((-GaussianRational::one()).unit_order(), Some(2));
        assert_eq!(GaussianRational::i().unit_order(), Some(4));
        assert_eq!(GaussianRational::from_integer(2).unit_order(), None);
    }

    fn arb() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                prop_assert_eq!(x.checked_div(&y).unwrap().mul_ref(&y), x.clone());
            }
        }

        #[test]
        fn string_round_trip(x in arb()) {
            let s = x.to_string();
            let back: GaussianRational = s.parse().unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, x);
        }

        #[test]
        fn canonical_form_is_idempotent(a in -50i64..50, b in 1i64..50) {
            let x = GaussianRational::from_ratio(a, b);
            let again = GaussianRational::new(x.re().clone(), x.im().clone());
            prop_assert_eq!(&again, &x);
            prop_assert!(x.re().denom() > &BigInt::zero());
        }
    }
}
