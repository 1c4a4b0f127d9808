//! Exact coefficient rings.
//!
//! Every complex in this crate is generic over a [`Ring`]: `Gf2`, `BigInt`
//! (the integers), `BigRational`, or [`LaurentPoly`](crate::laurent::LaurentPoly)
//! over one of those. The trait carries just enough Euclidean structure for
//! Smith normal form; rings without a division algorithm report `None` from
//! [`Ring::div_rem`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Zmod2,
    Z,
    Q,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Zmod2 => write!(f, "Z2"),
            BaseRing::Z => write!(f, "Z"),
            BaseRing::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z2" | "Z/2" | "F2" | "GF2" => Ok(BaseRing::Zmod2),
            "Z" => Ok(BaseRing::Z),
            "Q" => Ok(BaseRing::Q),
            other => Err(format!("unknown ring `{other}` (expected Z2, Z or Q)")),
        }
    }
}

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub base: BaseRing,
    pub laurent: bool,
}

impl RingSpec {
    pub const fn new(base: BaseRing, laurent: bool) -> Self {
        RingSpec { base, laurent }
    }

    pub fn is_field(&self) -> bool {
        !self.laurent && self.base != BaseRing::Z
    }

    /// ℤ, a field, or F[t,t⁻¹] over a field. ℤ[t,t⁻¹] is not a PID.
    pub fn admits_snf(&self) -> bool {
        !(self.laurent && self.base == BaseRing::Z)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.laurent {
            write!(f, "{}[t,t^-1]", self.base)
        } else {
            write!(f, "{}", self.base)
        }
    }
}

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn spec() -> RingSpec;

    fn from_i64(n: i64) -> Self;

    /// Euclidean size: zero maps to 0, units to 1.
    fn euclid_size(&self) -> BigUint;

    /// `self = q * d + r` with `size(r) < size(d)`, for nonzero `d`.
    /// `None` if the ring has no effective division algorithm.
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)>;

    /// Returns `(a, u)` with `u` a unit and `a = u * self` the canonical associate.
    fn normalize(&self) -> (Self, Self);

    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Parses a scalar coefficient as written in complex files.
    fn parse_coeff(s: &str) -> Option<Self>;

    fn divides(&self, other: &Self) -> Option<bool> {
        if self.is_zero() {
            return Some(other.is_zero());
        }
        other.div_rem(self).map(|(_, r)| r.is_zero())
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2(pub bool);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, o: Gf2) -> Gf2 {
        Gf2(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, o: Gf2) -> Gf2 {
        Gf2(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, o: Gf2) -> Gf2 {
        Gf2(self.0 & o.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2(true)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Ring for Gf2 {
    fn spec() -> RingSpec {
        RingSpec::new(BaseRing::Zmod2, false)
    }

    fn from_i64(n: i64) -> Self {
        Gf2(n.rem_euclid(2) == 1)
    }

    fn euclid_size(&self) -> BigUint {
        BigUint::from(u8::from(self.0))
    }

    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        debug_assert!(d.0, "division by zero");
        Some((*self, Gf2(false)))
    }

    fn normalize(&self) -> (Self, Self) {
        (*self, Gf2(true))
    }

    fn inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let n = BigInt::from_str(s).ok()?;
        Some(Gf2(n.is_odd()))
    }
}

impl Ring for BigInt {
    fn spec() -> RingSpec {
        RingSpec::new(BaseRing::Z, false)
    }

    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn euclid_size(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        debug_assert!(!d.is_zero(), "division by zero");
        Some(self.div_mod_floor(d))
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self.clone(), -BigInt::one())
        } else {
            (self.clone(), BigInt::one())
        }
    }

    fn inverse(&self) -> Option<Self> {
        (self.magnitude().is_one()).then(|| self.clone())
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        BigInt::from_str(s).ok()
    }
}

impl Ring for BigRational {
    fn spec() -> RingSpec {
        RingSpec::new(BaseRing::Q, false)
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn euclid_size(&self) -> BigUint {
        if self.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        }
    }

    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        debug_assert!(!d.is_zero(), "division by zero");
        Some((self / d, BigRational::zero()))
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_zero() {
            (self.clone(), BigRational::one())
        } else {
            (BigRational::one(), self.recip())
        }
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        BigRational::from_str(s).ok()
    }
}
