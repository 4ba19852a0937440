//! Exact base-field arithmetic: arbitrary-precision rationals and prime fields.
//!
//! A [`Scalar`] is an element of a [`BaseField`], either the rationals Q
//! (backed by `num::BigRational`, always stored reduced with a positive
//! denominator) or a prime field F_p with `p < 2^31` (residues in `[0, p)`,
//! products computed in `u128` so they never overflow).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{OreError, Result};

/// Largest admitted prime modulus; keeps residue products inside `u128`
/// comfortably and matches the desk scale of the examples.
const MAX_MODULUS: u64 = 1 << 31;

/// A supported base field: Q or F_p with p prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    /// The rational numbers.
    Q,
    /// The prime field with the given number of elements.
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl BaseField {
    /// The field F_p. Fails unless `p` is a prime below 2^31.
    pub fn fp(p: u64) -> Result<BaseField> {
        if p >= MAX_MODULUS {
            return Err(OreError::InvalidConstruction(format!(
                "modulus {p} exceeds the supported bound 2^31"
            )));
        }
        if !is_prime(p) {
            return Err(OreError::NonPrimeModulus(p));
        }
        Ok(BaseField::Fp(p))
    }

    /// 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Q => 0,
            BaseField::Fp(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::Fp(_))
    }

    /// Number of elements for finite fields.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            BaseField::Q => None,
            BaseField::Fp(p) => Some(*p),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Q => write!(f, "Q"),
            BaseField::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact element of a [`BaseField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { p: u64, value: u64 },
}

impl Scalar {
    pub fn zero(field: &BaseField) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: &BaseField) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: &BaseField, n: i64) -> Scalar {
        match field {
            BaseField::Q => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            BaseField::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { p: *p, value: r }
            }
        }
    }

    pub fn from_bigint(field: &BaseField, n: &BigInt) -> Scalar {
        match field {
            BaseField::Q => Scalar::Rational(BigRational::from_integer(n.clone())),
            BaseField::Fp(p) => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.sign() == Sign::Minus {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                let value = digits.first().copied().unwrap_or(0);
                Scalar::Mod { p: *p, value }
            }
        }
    }

    /// Exact rational from numerator and denominator (Q only callers).
    pub fn from_ratio(field: &BaseField, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(OreError::InvalidConstruction("zero denominator".into()));
        }
        match field {
            BaseField::Q => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            BaseField::Fp(_) => {
                let d = Scalar::from_i64(field, den);
                let n = Scalar::from_i64(field, num);
                match d.inverse() {
                    Some(di) => Ok(&n * &di),
                    None => Err(OreError::InvalidConstruction(format!(
                        "{den} is zero in {field}"
                    ))),
                }
            }
        }
    }

    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rational(_) => BaseField::Q,
            Scalar::Mod { p, .. } => BaseField::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Mod { p, value } => Some(Scalar::Mod {
                p: *p,
                value: mod_pow(*value, *p - 2, *p),
            }),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = Scalar::one(&self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses "a" or "a/b" with optional sign, into the given field.
    pub fn parse(field: &BaseField, text: &str) -> Result<Scalar> {
        let bad = || OreError::InvalidConstruction(format!("cannot parse scalar {text:?}"));
        let parse_int = |s: &str| -> Result<BigInt> { s.trim().parse::<BigInt>().map_err(|_| bad()) };
        match text.split_once('/') {
            None => Ok(Scalar::from_bigint(field, &parse_int(text)?)),
            Some((n, d)) => {
                let num = Scalar::from_bigint(field, &parse_int(n)?);
                let den = Scalar::from_bigint(field, &parse_int(d)?);
                let di = den
                    .inverse()
                    .ok_or_else(|| OreError::InvalidConstruction(format!("zero denominator in {text:?}")))?;
                Ok(&num * &di)
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: (a + b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: (a + p - b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: ((*a as u128 * *b as u128) % (*p as u128)) as u64,
            },
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("scalar division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: (p - value) % p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the scalar is a negative rational (used by display code to
/// fold signs into `-` separators; residues are never negative).
pub(crate) fn is_display_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Mod { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_is_zero_for_q_and_p_for_fp() {
        assert_eq!(BaseField::Q.characteristic(), 0);
        assert_eq!(BaseField::fp(7).unwrap().characteristic(), 7);
        assert_eq!(BaseField::fp(2).unwrap().characteristic(), 2);
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        assert!(matches!(BaseField::fp(6), Err(OreError::NonPrimeModulus(6))));
        assert!(matches!(BaseField::fp(1), Err(OreError::NonPrimeModulus(1))));
        assert!(matches!(BaseField::fp(0), Err(OreError::NonPrimeModulus(0))));
        assert!(BaseField::fp(2).is_ok());
        assert!(BaseField::fp(104729).is_ok());
    }

    #[test]
    fn rational_arithmetic_stays_reduced() {
        let f = BaseField::Q;
        let a = Scalar::from_ratio(&f, 2, 4).unwrap();
        assert_eq!(a.to_string(), "1/2");
        let b = Scalar::from_ratio(&f, 1, 2).unwrap();
        assert_eq!((&a + &b).to_string(), "1");
        assert_eq!((&a - &b).to_string(), "0");
        assert_eq!(Scalar::from_ratio(&f, 1, -3).unwrap().to_string(), "-1/3");
    }

    #[test]
    fn fp_inverse_and_pow() {
        let f = BaseField::fp(7).unwrap();
        for v in 1..7 {
            let s = Scalar::from_i64(&f, v);
            let inv = s.inverse().unwrap();
            assert!((&s * &inv).is_one());
        }
        assert!(Scalar::zero(&f).inverse().is_none());
        let two = Scalar::from_i64(&f, 2);
        assert_eq!(two.pow(3).to_string(), "1");
    }

    #[test]
    fn parse_round_trips() {
        let q = BaseField::Q;
        for text in ["0", "5", "-3", "3/2", "-7/3"] {
            let s = Scalar::parse(&q, text).unwrap();
            assert_eq!(s.to_string(), text);
        }
        let f5 = BaseField::fp(5).unwrap();
        assert_eq!(Scalar::parse(&f5, "-1").unwrap().to_string(), "4");
        assert_eq!(Scalar::parse(&f5, "1/2").unwrap().to_string(), "3");
        assert!(Scalar::parse(&q, "x").is_err());
    }

    #[test]
    #[should_panic(expected = "distinct fields")]
    fn mixed_field_arithmetic_panics() {
        let a = Scalar::from_i64(&BaseField::Q, 1);
        let b = Scalar::from_i64(&BaseField::fp(3).unwrap(), 1);
        let _ = &a + &b;
    }
}
