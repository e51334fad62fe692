//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Three families are
//! provided: the rationals ([`Rational`]), the Gaussian rationals
//! ([`GaussianRational`]) and prime fields ([`Fp`]). Finite fields report their
//! element list through [`Field::elements`], which is what the exhaustive
//! enumerations in the moduli and deformation modules key off.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("cannot parse scalar from {0}")]
    Malformed(String),
    #[error("denominator vanishes in characteristic {0}")]
    ZeroDenominator(u64),
}

pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Characteristic of the field; 0 for the rationals.
    fn characteristic() -> u64;
    /// Short name used in reports ("Q", "Q(i)", "F2", ...).
    fn name() -> String;
    /// All elements, for finite fields. `None` for infinite fields.
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ScalarParseError>;
    /// A random element with numerator and denominator bounded by `bound`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        Self::from_i64(den).inv().map(|d| Self::from_i64(num) * d)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }
}

/// Fields carrying an absolute value with rational square.
pub trait NormedField: Field {
    fn abs_squared(&self) -> Rational;
}

fn rational_from_str(s: &str) -> Result<Rational, ScalarParseError> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| ScalarParseError::Malformed(s.to_string()))
}

fn rational_from_json(v: &Value) -> Result<Rational, ScalarParseError> {
    match v {
        Value::String(s) => rational_from_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(BigInt::from(k)))
            .ok_or_else(|| ScalarParseError::Malformed(n.to_string())),
        other => Err(ScalarParseError::Malformed(other.to_string())),
    }
}

fn sample_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let b = bound.max(1);
    let num = rng.gen_range(-b..=b);
    let den = rng.gen_range(1..=b);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn characteristic() -> u64 {
        0
    }
    fn name() -> String {
        "Q".into()
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        rational_from_json(v)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        sample_rational(rng, bound)
    }
}

impl NormedField for Rational {
    fn abs_squared(&self) -> Rational {
        self.clone() * self
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.re.clone() * r, self.im.clone() * r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}
impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        Self::new(self.re + &o.re, self.im + &o.im)
    }
}
impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}
impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        Self::new(self.re - &o.re, self.im - &o.im)
    }
}
impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re * &o.im + self.im * &o.re;
        Self::new(re, im)
    }
}
impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}
impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}
impl<'a> AddAssign<&'a GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &'a Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl<'a> SubAssign<&'a GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &'a Self) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl<'a> MulAssign<&'a GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &'a Self) {
        *self = self.clone() * o;
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.re.clone() * &self.re + self.im.clone() * &self.im;
        if Zero::is_zero(&n) {
            return None;
        }
        let r = n.recip();
        Some(self.conj().scale(&r))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn characteristic() -> u64 {
        0
    }
    fn name() -> String {
        "Q(i)".into()
    }
    fn to_json(&self) -> Value {
        serde_json::json!({ "re": self.re.to_string(), "im": self.im.to_string() })
    }
    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        match v {
            Value::Object(map) => {
                let re = map.get("re").map(rational_from_json).transpose()?;
                let im = map.get("im").map(rational_from_json).transpose()?;
                Ok(Self::new(
                    re.unwrap_or_else(Zero::zero),
                    im.unwrap_or_else(Zero::zero),
                ))
            }
            other => Ok(Self::new(rational_from_json(other)?, Zero::zero())),
        }
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self::new(sample_rational(rng, bound), sample_rational(rng, bound))
    }
}

impl NormedField for GaussianRational {
    fn abs_squared(&self) -> Rational {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }
}

/// Element of the prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

pub const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(is_prime(P), "Fp requires a prime modulus");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}
impl<'a, const P: u64> Add<&'a Fp<P>> for Fp<P> {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        self + *o
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}
impl<'a, const P: u64> Sub<&'a Fp<P>> for Fp<P> {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        self - *o
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
}
impl<'a, const P: u64> Mul<&'a Fp<P>> for Fp<P> {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        self * *o
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}
impl<'a, const P: u64> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, o: &'a Self) {
        *self = *self + *o;
    }
}
impl<'a, const P: u64> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, o: &'a Self) {
        *self = *self - *o;
    }
}
impl<'a, const P: u64> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, o: &'a Self) {
        *self = *self * *o;
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2)
        let mut acc = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Some(Fp(acc))
    }
    fn from_i64(n: i64) -> Self {
        Self::new(n)
    }
    fn characteristic() -> u64 {
        P
    }
    fn name() -> String {
        format!("F{P}")
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
    fn to_json(&self) -> Value {
        Value::String(self.0.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        let r = rational_from_json(v)?;
        let p = BigInt::from(P);
        let num = ((r.numer() % &p + &p) % &p).to_string().parse::<i64>().unwrap_or(0);
        let den = ((r.denom() % &p + &p) % &p).to_string().parse::<i64>().unwrap_or(0);
        let d = Self::new(den).inv().ok_or(ScalarParseError::ZeroDenominator(P))?;
        Ok(Self::new(num) * d)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, _bound: i64) -> Self {
        Fp(rng.gen_range(0..P))
    }
}
