//! Exact construction of Gelfand-Tsetlin orthogonal Appell bases for
//! spherical harmonics, Clifford-valued spherical monogenics and
//! spinor-valued spherical monogenics in any dimension `m >= 3`, together
//! with generalized Taylor expansion and reconstruction.
//!
//! All arithmetic is over ℚ[i]; every identity is checked with zero
//! tolerance.

pub mod analysis;
pub mod bases;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod factors;
pub mod linalg;
pub mod poly;
pub mod scalars;
pub mod wire;

use std::fmt;

pub use error::{Error, Result};

/// A ± sign: label signs, chiralities and the `∂_±` operators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("invalid sign {s:?}"))),
        }
    }
}
