use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::DyadicRing;
use crate::error::{Error, Result};

/// Rank and common generator square of a Clifford algebra `C(±(x₁² + … + xₙ²))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CliffordSignature {
    n: usize,
    sign: i8,
}

impl CliffordSignature {
    /// Generators are stored as bits of a `u64`, so `n` is limited to 63.
    pub fn new(n: usize, sign: i8) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidArgument(format!("Clifford rank {n} not in 1..=63")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument(format!("generator square {sign} not ±1")));
        }
        Ok(CliffordSignature { n, sign })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }
}

/// Sign and resulting monomial of `e_A · e_B` for generator bitmasks `A`, `B`.
///
/// The sign counts the transpositions needed to sort the concatenated word,
/// times `sign` for every generator squared.
#[inline]
pub fn monomial_product(a: u64, b: u64, sign: i8) -> (bool, u64) {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    let mut negative = swaps & 1 == 1;
    if sign < 0 && (a & b).count_ones() & 1 == 1 {
        negative = !negative;
    }
    (negative, a ^ b)
}

/// A sparse multivector with [`DyadicRing`] coefficients.
///
/// Keys are generator bitmasks, bit `i - 1` standing for `e_i`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CliffordElem {
    sig: CliffordSignature,
    terms: BTreeMap<u64, DyadicRing>,
}

impl CliffordElem {
    pub fn zero(sig: CliffordSignature) -> Self {
        CliffordElem { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: CliffordSignature, c: DyadicRing) -> Self {
        Self::monomial(sig, 0, c)
    }

    pub fn one(sig: CliffordSignature) -> Self {
        Self::scalar(sig, DyadicRing::ONE)
    }

    /// The generator `e_i`, with `i` counted from 1.
    pub fn generator(sig: CliffordSignature, i: usize) -> Result<Self> {
        if i == 0 || i > sig.n {
            return Err(Error::IndexOutOfRange(format!("generator e_{i} with n = {}", sig.n)));
        }
        Ok(Self::monomial(sig, 1 << (i - 1), DyadicRing::ONE))
    }

    fn monomial(sig: CliffordSignature, mask: u64, c: DyadicRing) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        CliffordElem { sig, terms }
    }

    /// Builds an element from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        sig: CliffordSignature,
        terms: impl IntoIterator<Item = (u64, DyadicRing)>,
    ) -> Result<Self> {
        let mut x = Self::zero(sig);
        for (mask, c) in terms {
            if mask >> sig.n != 0 {
                return Err(Error::IndexOutOfRange(format!("monomial {mask:#b} with n = {}", sig.n)));
            }
            x.add_term(mask, c);
        }
        Ok(x)
    }

    fn add_term(&mut self, mask: u64, c: DyadicRing) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(DyadicRing::ZERO);
        *entry = *entry + c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn signature(&self) -> CliffordSignature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, DyadicRing)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mask: u64) -> DyadicRing {
        self.terms.get(&mask).copied().unwrap_or(DyadicRing::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value, if the element has no non-scalar terms.
    pub fn as_scalar(&self) -> Option<DyadicRing> {
        match self.terms.len() {
            0 => Some(DyadicRing::ZERO),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left_n: self.sig.n,
                left_sign: self.sig.sign,
                right_n: other.sig.n,
                right_sign: other.sig.sign,
            });
        }
        Ok(())
    }

    /// The Clifford product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                let (neg, m) = monomial_product(ma, mb, self.sig.sign);
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: DyadicRing) -> Self {
        let mut out = Self::zero(self.sig);
        for (&m, &x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    fn map_by_degree(&self, f: impl Fn(u32) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&m, &c)| (m, if f(m.count_ones()) { -c } else { c }))
            .collect();
        CliffordElem { sig: self.sig, terms }
    }

    /// Reversal of every basis monomial: a degree-`k` monomial picks up
    /// `(-1)^(k(k-1)/2)`.
    pub fn transpose(&self) -> Self {
        self.map_by_degree(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    /// The automorphism acting by `-1` on generators.
    pub fn grade_involution(&self) -> Self {
        self.map_by_degree(|k| k % 2 == 1)
    }

    /// `x·xᵀ` for the plus variant, `x·γ(xᵀ)` for the minus variant.
    pub fn spinor_norm(&self, variant: SpinorVariant) -> Self {
        let t = self.transpose();
        let rhs = match variant {
            SpinorVariant::Plus => t,
            SpinorVariant::Minus => t.grade_involution(),
        };
        self * &rhs
    }

    /// The inverse of a versor `x` with `x·xᵀ = ±1`.
    pub fn versor_inverse(&self) -> Option<Self> {
        let t = self.transpose();
        let n = (self * &t).as_scalar()?;
        if n == DyadicRing::ONE {
            Some(t)
        } else if n == -DyadicRing::ONE {
            Some(-t)
        } else {
            None
        }
    }

    /// Twisted conjugation `γ(u)·v·u⁻¹`; on degree-1 elements this is the
    /// orthogonal transformation covered by the versor `u`.
    pub fn twisted_conjugate(&self, v: &Self) -> Option<Self> {
        let inv = self.versor_inverse()?;
        Some(&(&self.grade_involution() * v) * &inv)
    }
}

/// Which spinor norm to use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpinorVariant {
    Plus,
    Minus,
}

/// The lift `(e_i - e_j)/√2` of the transposition `(i j)`, `1 ≤ i < j ≤ n`.
///
/// With the twisted conjugation [`CliffordElem::twisted_conjugate`] this
/// element swaps `e_i` and `e_j` and fixes the other generators; ordinary
/// conjugation gives the negative of that reflection.
pub fn lift_transposition(i: usize, j: usize, sig: CliffordSignature) -> Result<CliffordElem> {
    if !(1 <= i && i < j && j <= sig.n) {
        return Err(Error::IndexOutOfRange(format!(
            "transposition ({i} {j}) with n = {}",
            sig.n
        )));
    }
    CliffordElem::from_terms(
        sig,
        [
            (1u64 << (i - 1), DyadicRing::INV_SQRT2),
            (1u64 << (j - 1), -DyadicRing::INV_SQRT2),
        ],
    )
}

/// Panics on signature mismatch; use [`CliffordElem::try_mul`] to get an error instead.
impl Mul for &CliffordElem {
    type Output = CliffordElem;
    fn mul(self, rhs: &CliffordElem) -> CliffordElem {
        self.try_mul(rhs).expect("Clifford product of mismatched signatures")
    }
}

/// Panics on signature mismatch.
impl Add for &CliffordElem {
    type Output = CliffordElem;
    fn add(self, rhs: &CliffordElem) -> CliffordElem {
        self.try_add(rhs).expect("Clifford sum of mismatched signatures")
    }
}

/// Panics on signature mismatch.
impl Sub for &CliffordElem {
    type Output = CliffordElem;
    fn sub(self, rhs: &CliffordElem) -> CliffordElem {
        self + &(-rhs.clone())
    }
}

impl Neg for CliffordElem {
    type Output = CliffordElem;
    fn neg(mut self) -> CliffordElem {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for i in 0..64 {
                if m >> i & 1 == 1 {
                    write!(f, "·e{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, s: i8) -> CliffordSignature {
        CliffordSignature::new(n, s).unwrap()
    }

    #[test]
    fn generator_relations() {
        for s in [1, -1] {
            let g = sig(3, s);
            let e1 = CliffordElem::generator(g, 1).unwrap();
            let e2 = CliffordElem::generator(g, 2).unwrap();
            assert_eq!((&e1 * &e1).as_scalar(), Some(DyadicRing::from_int(s as i128)));
            assert_eq!(&e1 * &e2, -(&e2 * &e1));
        }
    }

    #[test]
    fn mismatched_signatures() {
        let a = CliffordElem::one(sig(2, 1));
        let b = CliffordElem::one(sig(2, -1));
        assert!(matches!(a.try_mul(&b), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn lift_bounds() {
        assert!(lift_transposition(2, 2, sig(3, 1)).is_err());
        assert!(lift_transposition(1, 4, sig(3, 1)).is_err());
        assert!(CliffordElem::generator(sig(3, 1), 0).is_err());
    }

    #[test]
    fn grade_involution_examples() {
        let g = sig(2, 1);
        let e1 = CliffordElem::generator(g, 1).unwrap();
        let e2 = CliffordElem::generator(g, 2).unwrap();
        assert_eq!(e1.grade_involution(), -e1.clone());
        let e12 = &e1 * &e2;
        assert_eq!(e12.grade_involution(), e12);
        let x = &CliffordElem::one(g) + &e1;
        assert_eq!(x.grade_involution(), &CliffordElem::one(g) - &e1);
    }
}
