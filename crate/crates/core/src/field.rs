//! Exact base fields: the rationals and prime fields.
//!
//! Every coefficient in the crate is a [`BigRational`]. Over `F_p` the value is
//! kept reduced to an integer representative in `[0, p)`, so equality of
//! reduced coefficients is equality in the field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Field element type shared by all characteristics.
pub type Coeff = BigRational;

/// Exact rational numbers used for orders, slopes and H-function values.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("division by zero in {0}")]
    DivisionByZero(Field),
}

/// A perfect base field: `Q` (characteristic 0) or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    characteristic: u64,
}

impl Field {
    pub const RATIONALS: Field = Field { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Field { characteristic })
        } else {
            Err(FieldError::NotPrime(characteristic))
        }
    }

    /// Prime field `F_p`. Panics when `p` is not prime; use [`Field::new`] for
    /// untrusted input.
    pub fn prime(p: u64) -> Self {
        Field::new(p).expect("prime characteristic")
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// Reduce a rational into the field. Fails over `F_p` when the denominator
    /// is divisible by `p`.
    pub fn reduce(&self, c: &BigRational) -> Result<Coeff, FieldError> {
        if self.characteristic == 0 {
            return Ok(c.clone());
        }
        let p = BigInt::from(self.characteristic);
        let num = c.numer().mod_floor(&p);
        let den = c.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(FieldError::DivisionByZero(*self));
        }
        let inv = mod_inverse(&den, &p);
        Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
    }

    /// Reduce an integer into the field (never fails).
    pub fn from_int(&self, n: &BigInt) -> Coeff {
        if self.characteristic == 0 {
            BigRational::from_integer(n.clone())
        } else {
            BigRational::from_integer(n.mod_floor(&BigInt::from(self.characteristic)))
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_int(&BigInt::from(n))
    }

    pub fn zero(&self) -> Coeff {
        BigRational::zero()
    }

    pub fn one(&self) -> Coeff {
        BigRational::one()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_trusted(raw_add(a, b))
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_trusted(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_trusted(raw_mul(a, b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce_trusted(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero(*self));
        }
        if self.characteristic == 0 {
            return Ok(a.recip());
        }
        let p = BigInt::from(self.characteristic);
        Ok(BigRational::from_integer(mod_inverse(a.numer(), &p)))
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `p^e`-th root of an element. Over `F_p` Frobenius is the identity, so
    /// every element is its own root; over `Q` only `e = 0` is meaningful.
    pub fn frobenius_root(&self, a: &Coeff, power: u64) -> Option<Coeff> {
        if power == 1 {
            return Some(a.clone());
        }
        if self.characteristic == 0 {
            return None;
        }
        Some(a.clone())
    }

    /// Binomial coefficient computed over `Z`, then reduced into the field.
    pub fn binomial(&self, n: u64, k: u64) -> Coeff {
        self.from_int(&binomial(n, k))
    }

    // Sums and products of reduced values only ever have integer
    // representatives over F_p, so this never fails.
    pub(crate) fn reduce_trusted(&self, c: BigRational) -> Coeff {
        if self.characteristic == 0 {
            c
        } else if c.is_integer() {
            let p = BigInt::from(self.characteristic);
            let n = c.numer();
            if !n.is_negative() && n < &p {
                c
            } else {
                BigRational::from_integer(n.mod_floor(&p))
            }
        } else {
            self.reduce(&c).expect("integral representative")
        }
    }

    /// Elements of `F_p` as small integers in `[0, p)`.
    pub fn elements(&self) -> Option<Vec<Coeff>> {
        if self.characteristic == 0 {
            return None;
        }
        Some((0..self.characteristic).map(|i| self.from_i64(i as i64)).collect())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F_{}", self.characteristic)
        }
    }
}

// Integer fast paths: `BigRational` arithmetic normalizes through a gcd even
// when both operands are integers, which dominates polynomial products.
pub(crate) fn raw_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

pub(crate) fn raw_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

/// `p`-adic valuation of `n` (`n > 0`).
pub fn p_valuation(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut m = n;
    while m > 0 && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Render a rational as `num/den` (always with a denominator).
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse the `num/den` (or bare integer) form produced by [`rational_string`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Floor of a rational as `i64` (values here are always small).
pub fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("small rational")
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}
