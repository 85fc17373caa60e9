//! Exact coefficient fields: the rationals and `GF(p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Field {
    #[default]
    Rationals,
    /// `GF(p)`; scalars are kept as integers in `[0, p)`.
    Prime(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected rationals or gf:<p>, got {0:?}")]
    Syntax(String),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Maps an arbitrary rational into the field's canonical representative.
    pub fn normalize(&self, v: Scalar) -> Scalar {
        match self {
            Field::Rationals => v,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = v.numer().mod_floor(&p);
                let den = v.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = den.modpow(&(&p - 2), &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(BigRational::from_integer(v.into()))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(_) => Some(self.normalize(a.recip())),
        }
    }

    /// Renders a scalar, writing `GF(p)` elements in `[0, p)`.
    pub fn render(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        a.is_one()
    }

    pub fn is_negative(&self, a: &Scalar) -> bool {
        matches!(self, Field::Rationals) && a.is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("rationals"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rationals" | "q" | "Q" => Ok(Field::Rationals),
            other => {
                let p = other
                    .strip_prefix("gf:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| FieldError::Syntax(other.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

impl TryFrom<String> for Field {
    type Error = FieldError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Field> for String {
    fn from(f: Field) -> Self {
        f.to_string()
    }
}
