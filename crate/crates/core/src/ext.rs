//! Natural numbers extended by a single countably infinite value `ω`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

/// A value in `ℕ ∪ {ω}`.
///
/// Used for edge multiplicities, arc multiplicities, connectivities and flow
/// values. Arithmetic saturates at `ω`; every finite value compares below `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Omega,
}

pub use ExtNat::{Fin, Omega};

impl ExtNat {
    pub const ZERO: ExtNat = Fin(0);
    pub const ONE: ExtNat = Fin(1);

    pub fn is_omega(self) -> bool {
        matches!(self, Omega)
    }

    pub fn is_finite(self) -> bool {
        !self.is_omega()
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    pub fn is_positive(self) -> bool {
        !self.is_zero()
    }

    /// The finite value, or `None` for `ω`.
    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            Omega => None,
        }
    }

    /// `⌊n/2⌋` for finite `n`, and `ω` for `ω`.
    pub fn floor_half(self) -> ExtNat {
        match self {
            Fin(n) => Fin(n / 2),
            Omega => Omega,
        }
    }

    /// Subtraction defined only on finite operands with `self ≥ rhs`.
    pub fn checked_sub(self, rhs: ExtNat) -> Option<ExtNat> {
        match (self, rhs) {
            (Fin(a), Fin(b)) => a.checked_sub(b).map(Fin),
            _ => None,
        }
    }
}

/// `⌊n/2⌋` with `⌊ω/2⌋ = ω`.
pub fn ext_floor_half(n: ExtNat) -> ExtNat {
    n.floor_half()
}

impl Default for ExtNat {
    fn default() -> Self {
        Fin(0)
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.saturating_add(b)),
            _ => Omega,
        }
    }
}

impl AddAssign for ExtNat {
    fn add_assign(&mut self, rhs: ExtNat) {
        *self = *self + rhs;
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(0), _) | (_, Fin(0)) => Fin(0),
            (Fin(a), Fin(b)) => Fin(a.saturating_mul(b)),
            _ => Omega,
        }
    }
}

impl Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(Fin(0), Add::add)
    }
}

impl<'a> Sum<&'a ExtNat> for ExtNat {
    fn sum<I: Iterator<Item = &'a ExtNat>>(iter: I) -> ExtNat {
        iter.copied().sum()
    }
}

impl PartialEq<u64> for ExtNat {
    fn eq(&self, other: &u64) -> bool {
        *self == Fin(*other)
    }
}

impl PartialOrd<u64> for ExtNat {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Fin(*other)))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a natural number or `omega`, found `{0}`")]
pub struct ParseExtNatError(pub String);

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "omega" {
            return Ok(Omega);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseExtNatError(s.to_string()));
        }
        s.parse::<u64>()
            .map(Fin)
            .map_err(|_| ParseExtNatError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn floor_half_examples() {
        assert_eq!(ext_floor_half(Fin(5)), Fin(2));
        assert_eq!(ext_floor_half(Fin(0)), Fin(0));
        assert_eq!(ext_floor_half(Omega), Omega);
    }

    #[test]
    fn saturating_arithmetic() {
        assert_eq!(Omega + Fin(3), Omega);
        assert_eq!(Fin(3) + Omega, Omega);
        assert_eq!(Omega * Fin(2), Omega);
        assert_eq!(Omega * Fin(0), Fin(0));
        assert_eq!(Omega.min(Fin(7)), Fin(7));
        assert!(Fin(u64::MAX) < Omega);
        assert_eq!(Omega.checked_sub(Fin(1)), None);
        assert_eq!(Fin(4).checked_sub(Fin(1)), Some(Fin(3)));
        assert_eq!(Fin(1).checked_sub(Fin(4)), None);
    }

    #[test]
    fn parse_rejects_junk() {
        assert_eq!("omega".parse::<ExtNat>(), Ok(Omega));
        assert_eq!("12".parse::<ExtNat>(), Ok(Fin(12)));
        assert!("-1".parse::<ExtNat>().is_err());
        assert!("ω".parse::<ExtNat>().is_err());
        assert!("".parse::<ExtNat>().is_err());
        assert!("+3".parse::<ExtNat>().is_err());
    }

    fn ext() -> impl Strategy<Value = ExtNat> {
        prop_oneof![4 => (0u64..1000).prop_map(Fin), 1 => Just(Omega)]
    }

    proptest! {
        #[test]
        fn display_parses_back(n in ext()) {
            prop_assert_eq!(n.to_string().parse::<ExtNat>().unwrap(), n);
        }

        #[test]
        fn addition_is_monotone_and_commutative(a in ext(), b in ext()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert!(a + b >= a.max(b));
        }
    }
}
