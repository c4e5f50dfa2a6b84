use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::exact::{self, Q};

/// A `U(1)` value `exp(2 pi i x)`, stored as `x` reduced into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent(Q);

impl PhaseExponent {
    pub fn new(x: Q) -> Self {
        PhaseExponent(exact::frac(&x))
    }

    pub fn zero() -> Self {
        PhaseExponent(Q::zero())
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplicative order of the phase.
    pub fn order(&self) -> num_bigint::BigInt {
        self.0.denom().clone()
    }
}

impl From<Q> for PhaseExponent {
    fn from(x: Q) -> Self {
        PhaseExponent::new(x)
    }
}

impl Add for PhaseExponent {
    type Output = PhaseExponent;
    fn add(self, o: PhaseExponent) -> PhaseExponent {
        PhaseExponent::new(self.0 + o.0)
    }
}

impl Sub for PhaseExponent {
    type Output = PhaseExponent;
    fn sub(self, o: PhaseExponent) -> PhaseExponent {
        PhaseExponent::new(self.0 - o.0)
    }
}

impl Neg for PhaseExponent {
    type Output = PhaseExponent;
    fn neg(self) -> PhaseExponent {
        PhaseExponent::new(-self.0)
    }
}

impl fmt::Debug for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exact::q_to_string(&self.0))
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exact::q_to_string(&self.0))
    }
}

impl Serialize for PhaseExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&exact::q_to_string(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    #[test]
    fn reduction_mod_one() {
        assert_eq!(PhaseExponent::new(qf(7, 2)), PhaseExponent::new(qf(1, 2)));
        assert_eq!(PhaseExponent::new(qf(-1, 3)).value(), &qf(2, 3));
        assert!((PhaseExponent::new(qf(1, 2)) + PhaseExponent::new(qf(1, 2))).is_zero());
        assert_eq!(PhaseExponent::new(qf(3, 4)).order(), 4.into());
    }
}
