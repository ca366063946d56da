//! Exact arithmetic in the Eisenstein field `Q(ζ)`, `ζ` a primitive cube root of unity.
//!
//! Elements are stored as `a + b·ζ` over the basis `{1, ζ}` with `ζ² = -1 - ζ`,
//! so equality is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// An element `a + b·ζ` of `Q(ζ)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc3 {
    a: Rational,
    b: Rational,
}

impl Cyc3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Cyc3 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Cyc3 { a: Rational::from_integer(n.into()), b: Rational::zero() }
    }

    pub fn from_rational(a: Rational) -> Self {
        Cyc3 { a, b: Rational::zero() }
    }

    pub fn zeta() -> Self {
        Cyc3 { a: Rational::zero(), b: Rational::one() }
    }

    /// Coefficient of `1`.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `ζ`.
    pub fn zeta_part(&self) -> &Rational {
        &self.b
    }

    /// Galois conjugate, sending `ζ` to `ζ² = -1 - ζ`.
    pub fn conj(&self) -> Self {
        Cyc3 { a: &self.a - &self.b, b: -&self.b }
    }

    /// `a² - ab + b²`; vanishes only at zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Cyc3 { a: c.a / &n, b: c.b / n })
    }

    pub fn checked_div(&self, other: &Cyc3) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyc3 { a: &self.a * q, b: &self.b * q }
    }
}

/// `ζ^k` for any integer `k`.
pub fn zeta_pow(k: i64) -> Cyc3 {
    match k.rem_euclid(3) {
        0 => Cyc3::one(),
        1 => Cyc3::zeta(),
        _ => Cyc3::new(-Rational::one(), -Rational::one()),
    }
}

impl Zero for Cyc3 {
    fn zero() -> Self {
        Cyc3 { a: Rational::zero(), b: Rational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Cyc3 {
    fn one() -> Self {
        Cyc3 { a: Rational::one(), b: Rational::zero() }
    }
}

impl<'a> Add<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    fn add(self, rhs: &Cyc3) -> Cyc3 {
        Cyc3 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for Cyc3 {
    type Output = Cyc3;
    fn add(self, rhs: Cyc3) -> Cyc3 {
        Cyc3 { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl AddAssign<&Cyc3> for Cyc3 {
    fn add_assign(&mut self, rhs: &Cyc3) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl<'a> Sub<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    fn sub(self, rhs: &Cyc3) -> Cyc3 {
        Cyc3 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for Cyc3 {
    type Output = Cyc3;
    fn sub(self, rhs: Cyc3) -> Cyc3 {
        Cyc3 { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl SubAssign<&Cyc3> for Cyc3 {
    fn sub_assign(&mut self, rhs: &Cyc3) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl<'a> Mul<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    fn mul(self, rhs: &Cyc3) -> Cyc3 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Cyc3 { a: &self.a * &rhs.a, b: Rational::zero() };
        }
        // (a + bζ)(c + dζ) = (ac - bd) + (ad + bc - bd)ζ
        let bd = &self.b * &rhs.b;
        Cyc3 { a: &self.a * &rhs.a - &bd, b: &self.a * &rhs.b + &self.b * &rhs.a - bd }
    }
}

impl Mul for Cyc3 {
    type Output = Cyc3;
    fn mul(self, rhs: Cyc3) -> Cyc3 {
        &self * &rhs
    }
}

impl MulAssign<&Cyc3> for Cyc3 {
    fn mul_assign(&mut self, rhs: &Cyc3) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyc3 {
    type Output = Cyc3;
    fn neg(self) -> Cyc3 {
        Cyc3 { a: -self.a, b: -self.b }
    }
}

impl Neg for &Cyc3 {
    type Output = Cyc3;
    fn neg(self) -> Cyc3 {
        Cyc3 { a: -&self.a, b: -&self.b }
    }
}

impl From<i64> for Cyc3 {
    fn from(n: i64) -> Self {
        Cyc3::from_int(n)
    }
}

impl From<Rational> for Cyc3 {
    fn from(q: Rational) -> Self {
        Cyc3::from_rational(q)
    }
}

impl fmt::Display for Cyc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write_zeta_term(f, &self.b, true),
            (false, false) => {
                write!(f, "{}", format_rational(&self.a))?;
                write_zeta_term(f, &self.b, false)
            }
        }
    }
}

fn write_zeta_term(f: &mut fmt::Formatter<'_>, b: &Rational, leading: bool) -> fmt::Result {
    let sign = if b.is_negative() {
        "-"
    } else if leading {
        ""
    } else {
        "+"
    };
    let mag = b.abs();
    if mag.is_one() {
        write!(f, "{sign}ζ")
    } else {
        write!(f, "{sign}{}ζ", format_rational(&mag))
    }
}

impl fmt::Debug for Cyc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc3({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Cyc3Wire {
    a: String,
    b: String,
}

impl Serialize for Cyc3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Cyc3Wire { a: format_rational(&self.a), b: format_rational(&self.b) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyc3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = Cyc3Wire::deserialize(deserializer)?;
        let a = parse_rational(&wire.a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&wire.b).map_err(serde::de::Error::custom)?;
        Ok(Cyc3 { a, b })
    }
}
