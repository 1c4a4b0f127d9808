//! Laurent polynomials `R[t, t⁻¹]` with finite support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ring::{Ring, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<R> {
    // exponent -> nonzero coefficient
    terms: BTreeMap<i64, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn monomial(coeff: R, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn constant(coeff: R) -> Self {
        Self::monomial(coeff, 0)
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(R::one(), exp)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exp) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn leading(&self) -> Option<(i64, &R)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    // Long division in F[t] for polynomials with nonnegative exponents.
    fn poly_div_rem(a: &Self, d: &Self) -> Option<(Self, Self)> {
        let (dd, dc) = d.leading()?;
        let inv = dc.inverse()?;
        let mut q = Self::zero();
        let mut r = a.clone();
        while let Some((rd, rc)) = r.leading() {
            if rd < dd {
                break;
            }
            let c = rc.clone() * inv.clone();
            let term = Self::monomial(c, rd - dd);
            r = r - term.clone() * d.clone();
            q = q + term;
        }
        Some((q, r))
    }
}

impl<R: Ring> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for LaurentPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Add for LaurentPoly<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring> Sub for LaurentPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for LaurentPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring> Mul for LaurentPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut p = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                p.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            if *e == 0 {
                write!(f, "{cs}")?;
                continue;
            }
            match cs.as_str() {
                "1" => {}
                "-1" => write!(f, "-")?,
                _ => write!(f, "{cs}")?,
            }
            if *e == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for LaurentPoly<R> {
    fn spec() -> RingSpec {
        RingSpec::new(R::spec().base, true)
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }

    fn euclid_size(&self) -> BigUint {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => BigUint::from((hi - lo) as u64 + 1),
            _ => BigUint::zero(),
        }
    }

    /// t is a unit, so divide in F[t] after clearing t-powers from both sides.
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        if !R::spec().is_field() {
            return None;
        }
        let dm = d.min_exp()?;
        let Some(am) = self.min_exp() else {
            return Some((Self::zero(), Self::zero()));
        };
        let (q, r) = Self::poly_div_rem(&self.shift(-am), &d.shift(-dm))?;
        Some((q.shift(am - dm), r.shift(am)))
    }

    /// Canonical form: nonzero constant term, lowest exponent 0, leading coefficient normalized.
    fn normalize(&self) -> (Self, Self) {
        let Some((_, lc)) = self.leading() else {
            return (Self::zero(), Self::one());
        };
        let lo = self.min_exp().unwrap_or(0);
        let (_, u) = lc.normalize();
        let unit = Self::monomial(u, -lo);
        (self.clone() * unit.clone(), unit)
    }

    fn inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inverse()?, -e))
    }

    fn parse_coeff(_s: &str) -> Option<Self> {
        None
    }
}
