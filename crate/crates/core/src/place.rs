use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A place of the rationals: a finite prime, or the archimedean place which
/// we write as `-1` following the genus-symbol convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Place {
    /// The prime at infinity.
    Real,
    /// A finite rational prime.
    Finite(BigInt),
}

impl Place {
    pub fn finite<T: Into<BigInt>>(p: T) -> Self {
        Place::Finite(p.into())
    }

    /// Interpret an integer as a place: `-1` is the real place, anything
    /// `>= 2` a finite prime. Primality is not verified here; operations that
    /// require it check it themselves.
    pub fn from_integer(n: &BigInt) -> Result<Self> {
        if *n == BigInt::from(-1) {
            Ok(Place::Real)
        } else if *n >= BigInt::from(2) {
            Ok(Place::Finite(n.clone()))
        } else {
            Err(Error::InvalidArgument(format!(
                "{n} is neither -1 nor a finite prime"
            )))
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }

    pub fn is_two(&self) -> bool {
        matches!(self, Place::Finite(p) if *p == BigInt::from(2))
    }

    /// The conventional integer encoding: `-1` for the real place.
    pub fn to_bigint(&self) -> BigInt {
        match self {
            Place::Real => BigInt::from(-1),
            Place::Finite(p) => p.clone(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "-1"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_integer_accepts_minus_one_and_primes() {
        assert_eq!(Place::from_integer(&BigInt::from(-1)).unwrap(), Place::Real);
        assert_eq!(
            Place::from_integer(&BigInt::from(7)).unwrap(),
            Place::finite(7)
        );
        assert!(Place::from_integer(&BigInt::from(0)).is_err());
        assert!(Place::from_integer(&BigInt::from(-3)).is_err());
    }

    #[test]
    fn display_matches_convention() {
        assert_eq!(Place::Real.to_string(), "-1");
        assert_eq!(Place::finite(691).to_string(), "691");
    }

    #[test]
    fn is_two() {
        assert!(Place::finite(2).is_two());
        assert!(!Place::finite(3).is_two());
        assert!(!Place::Real.is_two());
    }
}
