//! Exact arithmetic in `Q_p`, modeled by rationals carrying the `p`-adic valuation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest accepted prime. Residue arithmetic runs in `u64` and needs `p^2 < 2^64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Fixes the prime `p`, and with it the valuation ring `Z_(p)`, the residue
/// field `F_p` and the uniformizer `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicContext {
    p: u64,
}

impl PAdicContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Cardinality of the residue field.
    pub fn q(&self) -> u64 {
        self.p
    }

    /// `p^e` as a scalar; `e` may be negative.
    pub fn power(&self, e: i64) -> Scalar {
        let base = BigInt::from(self.p).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Scalar::from_integer(base)
        } else {
            Scalar(BigRational::new_raw(BigInt::one(), base))
        }
    }

    pub fn val(&self, x: &Scalar) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let num = int_valuation(x.0.numer().magnitude(), self.p) as i64;
        let den = int_valuation(x.0.denom().magnitude(), self.p) as i64;
        Valuation::Finite(num - den)
    }

    /// `x / p^val(x)`; zero maps to zero.
    pub fn unit_part(&self, x: &Scalar) -> Scalar {
        match self.val(x) {
            Valuation::Infinite => Scalar::zero(),
            Valuation::Finite(v) => x * &self.power(-v),
        }
    }

    pub fn is_integral(&self, x: &Scalar) -> bool {
        self.val(x) >= Valuation::Finite(0)
    }

    pub fn is_unit(&self, x: &Scalar) -> bool {
        self.val(x) == Valuation::Finite(0)
    }

    /// Image of `x` in `F_p`.
    pub fn residue(&self, x: &Scalar) -> Result<u64> {
        let r = self.residue_mod_power(x, 1)?;
        Ok(r.to_u64().expect("residue below p"))
    }

    /// The representative of `x` in `[0, p^e)` modulo `p^e`.
    pub fn residue_mod_power(&self, x: &Scalar, e: u32) -> Result<BigUint> {
        if !self.is_integral(x) {
            return Err(Error::NegativeValuation);
        }
        let modulus = BigInt::from(self.p).pow(e);
        if e == 0 || x.is_zero() {
            return Ok(BigUint::zero());
        }
        let num = x.0.numer().mod_floor(&modulus);
        let den = x.0.denom().mod_floor(&modulus);
        let inv = mod_inverse(&den, &modulus).expect("denominator is a p-adic unit");
        let r = (num * inv).mod_floor(&modulus);
        Ok(r.to_biguint().expect("non-negative residue"))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn int_valuation(n: &BigUint, p: u64) -> u32 {
    let mut v = 0;
    let mut m = n.clone();
    let p = BigUint::from(p);
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// `p`-adic valuation. `Infinite` is the valuation of zero and compares
/// greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// An element of `K`, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Scalar {
        Scalar(self.0.recip())
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.numer().sign() == Sign::Minus
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_integer(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad()),
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                Scalar::new(a, b).map_err(|_| bad())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Literal {
            Int(i64),
            Text(String),
        }
        match Literal::deserialize(deserializer)? {
            Literal::Int(n) => Ok(Scalar::from(n)),
            Literal::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

/// Minimal valuation over `xs`; `+inf` for an empty or all-zero list.
pub(crate) fn min_valuation<'a>(
    ctx: &PAdicContext,
    xs: impl IntoIterator<Item = &'a Scalar>,
) -> Valuation {
    xs.into_iter()
        .map(|x| ctx.val(x))
        .min_by(Ord::cmp)
        .unwrap_or(Valuation::Infinite)
}
