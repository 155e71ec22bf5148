use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::arith::{jacobi, prime_divisors, valuation, FactorBudget};
use crate::error::{Error, Result};

/// A place of `Q`: a prime or the real place. Primes sort first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Self {
        Place::Prime(BigUint::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The integer `num·den`, in the same square class as `r`.
pub(crate) fn integral_rep(r: &BigRational) -> BigInt {
    r.numer() * r.denom()
}

fn mod8(x: &BigInt) -> u32 {
    x.mod_floor(&BigInt::from(8)).to_u32().expect("residue")
}

/// The Hilbert symbol `(a, b)_v ∈ {1, -1}`.
///
/// # Panics
///
/// If `a` or `b` is zero.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => hilbert_int(&integral_rep(a), &integral_rep(b), p),
    }
}

fn hilbert_int(a: &BigInt, b: &BigInt, p: &BigUint) -> i8 {
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if *p == BigUint::from(2u32) {
        let eps = |x: &BigInt| (mod8(x) % 4 == 3) as u32;
        let omega = |x: &BigInt| matches!(mod8(x), 3 | 5) as u32;
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 { 1 } else { -1 }
    } else {
        let mut s = 1i8;
        let half = (p - BigUint::one()) >> 1u32;
        if (alpha * beta) % 2 == 1 && half.is_odd() {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= jacobi(&u, p);
        }
        if alpha % 2 == 1 {
            s *= jacobi(&v, p);
        }
        s
    }
}

/// `{2, ∞}` together with every prime dividing a numerator or denominator.
/// Outside this set all symbols built from `entries` are trivial.
pub fn relevant_places(entries: &[BigRational], budget: &mut FactorBudget) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::from([Place::prime(2), Place::Infinity]);
    for a in entries {
        if a.is_zero() {
            return Err(Error::InvalidArgument("zero entry".into()));
        }
        for part in [a.numer(), a.denom()] {
            let m = part.magnitude();
            if !m.is_one() {
                for p in prime_divisors(m, budget)? {
                    out.insert(Place::Prime(p));
                }
            }
        }
    }
    Ok(out)
}

/// An element of `Br₂(Q)`, stored as its (even) set of ramified places.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct BrauerClass2 {
    ramified: BTreeSet<Place>,
}

impl BrauerClass2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Fails unless the set has even size.
    pub fn from_places(ramified: BTreeSet<Place>) -> Result<Self> {
        if ramified.len() % 2 == 1 {
            return Err(Error::Inconsistency(format!(
                "odd number of ramified places: {}",
                ramified.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(BrauerClass2 { ramified })
    }

    /// The quaternion class `(a, b)`.
    pub fn symbol(a: &BigRational, b: &BigRational) -> Result<Self> {
        let mut budget = FactorBudget::default();
        let places = relevant_places(&[a.clone(), b.clone()], &mut budget)?;
        Self::from_places(places.into_iter().filter(|v| hilbert_symbol(a, b, v) == -1).collect())
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_zero(&self) -> bool {
        self.ramified.is_empty()
    }

    /// The group law: symmetric difference of ramification sets.
    pub fn add(&self, other: &Self) -> Self {
        BrauerClass2 {
            ramified: self.ramified.symmetric_difference(&other.ramified).cloned().collect(),
        }
    }

    pub fn ramified_strings(&self) -> Vec<String> {
        self.ramified.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for BrauerClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.ramified_strings().join(", "))
    }
}

/// Index of a class over `Q`: 1 for the zero class, otherwise 2.
pub fn brauer_index(c: &BrauerClass2) -> u32 {
    if c.is_zero() { 1 } else { 2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn classical_values() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::Infinity), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::prime(2)), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::prime(3)), 1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), &Place::prime(3)), -1);
        assert_eq!(hilbert_symbol(&q(3), &q(3), &Place::prime(3)), -1);
        assert_eq!(hilbert_symbol(&q(5), &q(7), &Place::prime(5)), -1);
        let c = BrauerClass2::symbol(&q(-1), &q(-1)).unwrap();
        assert_eq!(c.to_string(), "{2, inf}");
        assert_eq!(brauer_index(&c), 2);
        assert_eq!(brauer_index(&BrauerClass2::zero()), 1);
    }

    #[test]
    fn odd_sets_rejected() {
        assert!(BrauerClass2::from_places(BTreeSet::from([Place::Infinity])).is_err());
    }
}
