//! Values extended by a top element, used for orders (`ν(0) = ∞`), slopes of
//! `z^n` and the order of the zero algebra.

use std::fmt;

use crate::field::{rational_string, Rational};

/// `Finite(v)` or `Infinite`; `Infinite` compares above every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

pub type Order = Extended<u32>;
pub type ExtRational = Extended<Rational>;

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::Finite(v) => Extended::Finite(f(v)),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl<T: Ord + Clone> Extended<T> {
    pub fn min_with(self, other: Extended<T>) -> Extended<T> {
        std::cmp::min(self, other)
    }
}

impl Order {
    pub fn add(&self, other: &Order) -> Order {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl ExtRational {
    /// Canonical text: `num/den` or `inf`.
    pub fn to_canonical(&self) -> String {
        match self {
            Extended::Finite(q) => rational_string(q),
            Extended::Infinite => "inf".to_string(),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

/// Minimum of an iterator of extended values; `Infinite` when empty.
pub fn ext_min<T: Ord + Clone>(values: impl IntoIterator<Item = Extended<T>>) -> Extended<T> {
    values.into_iter().fold(Extended::Infinite, |acc, v| acc.min_with(v))
}
