use rustc_hash::FxHashMap;

use super::algebra::monomial_product;
use super::{CliffordElem, CliffordSignature, DyadicRing};
use crate::error::Result;

/// A product of `len` transposition lifts `(e_i - e_j)/√2`, stored as integer
/// coefficients with an implicit factor `√2^(-len)`.
///
/// This is the representation used in the cocycle hot path. It only ever
/// needs integer arithmetic; [`ScaledVersor::to_clifford`] converts back.
#[derive(Clone, Debug)]
pub struct ScaledVersor {
    sign: i8,
    len: u32,
    terms: FxHashMap<u64, i64>,
}

impl ScaledVersor {
    pub fn identity(sign: i8) -> Self {
        let mut terms = FxHashMap::default();
        terms.insert(0, 1);
        ScaledVersor { sign, len: 0, terms }
    }

    /// Number of lift factors, i.e. the exponent of the implicit `1/√2`.
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u64) -> i64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    /// Right multiplication by the lift of `(i j)`, generators counted from 1.
    pub fn mul_lift(&mut self, i: usize, j: usize) {
        let (bi, bj) = (1u64 << (i - 1), 1u64 << (j - 1));
        let mut out: FxHashMap<u64, i64> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (&m, &c) in &self.terms {
            let (ni, mi) = monomial_product(m, bi, self.sign);
            *out.entry(mi).or_insert(0) += if ni { -c } else { c };
            let (nj, mj) = monomial_product(m, bj, self.sign);
            *out.entry(mj).or_insert(0) -= if nj { -c } else { c };
        }
        out.retain(|_, c| *c != 0);
        self.terms = out;
        self.len += 1;
    }

    /// The integer coefficient at `mask` of `self · other`, at scale
    /// `√2^(-(self.len + other.len))`.
    pub fn product_coefficient(&self, other: &ScaledVersor, mask: u64) -> i128 {
        let (small, large, small_left) = if self.terms.len() <= other.terms.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = 0i128;
        for (&a, &ca) in &small.terms {
            let b = a ^ mask;
            if let Some(&cb) = large.terms.get(&b) {
                let (neg, _) = if small_left {
                    monomial_product(a, b, self.sign)
                } else {
                    monomial_product(b, a, self.sign)
                };
                let v = ca as i128 * cb as i128;
                acc += if neg { -v } else { v };
            }
        }
        acc
    }

    /// The smallest monomial present, with its coefficient.
    pub fn leading(&self) -> (u64, i64) {
        self.terms
            .iter()
            .min_by_key(|(&m, _)| m)
            .map(|(&m, &c)| (m, c))
            .expect("a versor is never zero")
    }

    pub fn to_clifford(&self, sig: CliffordSignature) -> Result<CliffordElem> {
        let len = self.len;
        let coeff = |c: i64| {
            if len.is_multiple_of(2) {
                DyadicRing::new(c as i128, 0, len / 2)
            } else {
                DyadicRing::new(0, c as i128, len.div_ceil(2))
            }
        };
        CliffordElem::from_terms(sig, self.terms.iter().map(|(&m, &c)| (m, coeff(c))))
    }
}
