//! Exact sparse multivariate polynomials over Q and cyclotomic fields.

mod cyclotomic;
mod det;
mod multipoly;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use det::{det_poly_matrix, discriminant_univariate, sylvester_matrix};
pub use multipoly::{LaurentPoly, Monomial, MultiPoly, PolyJson, TermJson};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division is not exact, remainder {0}")]
    NotExact(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("polynomial is not monic in {0}")]
    NotMonic(String),
    #[error("zero polynomial has no valuation")]
    Zero,
    #[error("cannot invert {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A commutative Q-algebra with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }

    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// A field of characteristic zero.
pub trait Field: Ring + Eq {
    fn inv(&self) -> Option<Self>;
    /// The element as a rational number, when it is one.
    fn to_rational(&self) -> Option<BigRational>;
    /// Exact string form used in JSON.
    fn to_repr(&self) -> String;
    fn from_repr(s: &str) -> Result<Self, PolyError>;

    fn div_ref(&self, o: &Self) -> Result<Self, PolyError> {
        Ok(self.mul_ref(&o.inv().ok_or(PolyError::DivisionByZero)?))
    }

    /// `self^e` for any integer `e`.
    fn pow_i(&self, e: i64) -> Result<Self, PolyError> {
        let p = self.pow_u(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv().ok_or(PolyError::DivisionByZero)
        } else {
            Ok(p)
        }
    }
}

pub type Q = BigRational;

/// Rational from machine integers.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/4"`, `"2/6"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q, PolyError> {
    let t = s.trim().replace('−', "-");
    let r = match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| PolyError::Parse(s.to_string()))?;
            let b: BigInt = b.trim().parse().map_err(|_| PolyError::Parse(s.to_string()))?;
            if b.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| PolyError::Parse(s.to_string()))?),
    };
    Ok(r)
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn to_repr(&self) -> String {
        self.to_string()
    }
    fn from_repr(s: &str) -> Result<Self, PolyError> {
        parse_rational(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/6").unwrap(), q(1, 3));
        assert_eq!(parse_rational(" -1/4").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_powers() {
        assert_eq!(q(2, 3).pow_i(-2).unwrap(), q(9, 4));
        assert_eq!(q(-1, 2).pow_u(3), q(-1, 8));
        assert!(q(0, 1).pow_i(-1).is_err());
    }
}
