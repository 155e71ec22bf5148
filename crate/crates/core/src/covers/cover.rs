use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::clifford::{CliffordElem, CliffordSignature, ScaledVersor};
use crate::error::{Error, Result};

/// Which of the two double covers of `Sₙ`: `s_i² = 1` (plus) or `t_i² = z` (minus).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum CoverVariant {
    Plus,
    Minus,
}

impl CoverVariant {
    /// Common square of the Clifford generators.
    pub fn sign(self) -> i8 {
        match self {
            CoverVariant::Plus => 1,
            CoverVariant::Minus => -1,
        }
    }

    pub fn other(self) -> Self {
        match self {
            CoverVariant::Plus => CoverVariant::Minus,
            CoverVariant::Minus => CoverVariant::Plus,
        }
    }
}

impl fmt::Display for CoverVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverVariant::Plus => "plus",
            CoverVariant::Minus => "minus",
        })
    }
}

impl FromStr for CoverVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(CoverVariant::Plus),
            "minus" | "-" => Ok(CoverVariant::Minus),
            _ => Err(Error::Parse(format!("unknown cover variant {s:?}"))),
        }
    }
}

/// Largest supported degree; coefficient growth in the lift arithmetic
/// stays inside 128 bits up to here.
pub const MAX_COVER_DEGREE: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoverSpec {
    pub n: usize,
    pub variant: CoverVariant,
}

impl CoverSpec {
    pub fn new(n: usize, variant: CoverVariant) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("cover degree must be at least 4, got {n}")));
        }
        if n > MAX_COVER_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "cover degree {n} above supported maximum {MAX_COVER_DEGREE}"
            )));
        }
        Ok(CoverSpec { n, variant })
    }

    pub fn signature(&self) -> CliffordSignature {
        CliffordSignature::new(self.n, self.variant.sign()).expect("n checked at construction")
    }
}

/// `z^eps · lift(perm)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CoverElem {
    pub eps: bool,
    pub perm: Permutation,
}

impl CoverElem {
    pub fn new(eps: bool, perm: Permutation) -> Self {
        CoverElem { eps, perm }
    }

    pub fn is_even(&self) -> bool {
        self.perm.is_even()
    }
}

impl fmt::Display for CoverElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.eps, self.perm.is_identity()) {
            (false, _) => write!(f, "{}", self.perm),
            (true, true) => f.write_str("z"),
            (true, false) => write!(f, "z{}", self.perm),
        }
    }
}

// Evict cached lifts once this many monomials are held in total.
const LIFT_CACHE_TERMS: usize = 1 << 24;

#[derive(Default)]
struct LiftCache {
    map: FxHashMap<u64, Arc<ScaledVersor>>,
    terms: usize,
}

/// The double cover `S̃ₙ^±`, with multiplication twisted by the cocycle of
/// the canonical Clifford lifts.
///
/// `lift(σ)` is the product of `(e_i - e_{i+1})/√2` over
/// [`Permutation::canonical_word`]. `c(σ,τ)` is 1 exactly when
/// `lift(σ)·lift(τ) = -lift(στ)`. Lifts and cocycle values are memoized;
/// the caches sit behind mutexes, so a `CoverGroup` can be shared between
/// threads.
pub struct CoverGroup {
    spec: CoverSpec,
    lifts: Mutex<LiftCache>,
    cocycles: Mutex<FxHashMap<(u64, u64), bool>>,
    fault: Option<(Permutation, Permutation)>,
    strict: bool,
}

impl fmt::Debug for CoverGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoverGroup")
            .field("spec", &self.spec)
            .field("fault", &self.fault)
            .field("strict", &self.strict)
            .finish()
    }
}

impl CoverGroup {
    pub fn new(spec: CoverSpec) -> Self {
        CoverGroup {
            spec,
            lifts: Mutex::new(LiftCache::default()),
            cocycles: Mutex::new(FxHashMap::default()),
            fault: None,
            strict: false,
        }
    }

    /// Flips `c(σ, τ)` for one pair. Used as a negative control: the
    /// resulting multiplication no longer satisfies the presentation.
    pub fn with_fault(mut self, sigma: Permutation, tau: Permutation) -> Self {
        self.fault = Some((sigma, tau));
        self
    }

    /// Compare the full product `lift(σ)·lift(τ)` against `±lift(στ)`
    /// instead of a single coefficient.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn spec(&self) -> CoverSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.n() != self.spec.n {
            return Err(Error::InvalidArgument(format!(
                "permutation on {} points in a cover of degree {}",
                p.n(),
                self.spec.n
            )));
        }
        Ok(())
    }

    /// The canonical lift as an integer-scaled versor.
    pub fn lift_versor(&self, sigma: &Permutation) -> Arc<ScaledVersor> {
        let key = sigma.rank();
        if let Some(v) = self.lifts.lock().expect("lift cache poisoned").map.get(&key) {
            return Arc::clone(v);
        }
        let mut v = ScaledVersor::identity(self.spec.variant.sign());
        for i in sigma.canonical_word() {
            v.mul_lift(i, i + 1);
        }
        let v = Arc::new(v);
        let mut cache = self.lifts.lock().expect("lift cache poisoned");
        if cache.terms + v.num_terms() > LIFT_CACHE_TERMS {
            cache.map.clear();
            cache.terms = 0;
        }
        cache.terms += v.num_terms();
        cache.map.insert(key, Arc::clone(&v));
        v
    }

    /// The canonical lift as a Clifford element.
    pub fn lift(&self, sigma: &Permutation) -> Result<CliffordElem> {
        self.check_degree(sigma)?;
        self.lift_versor(sigma).to_clifford(self.spec.signature())
    }

    /// `c(σ, τ) ∈ {0, 1}` returned as a bool.
    ///
    /// Only the coefficient of `lift(στ)` at its smallest monomial is compared
    /// unless the group is [`CoverGroup::strict`]. A mismatch in magnitude is
    /// an [`Error::Inconsistency`].
    pub fn cocycle(&self, sigma: &Permutation, tau: &Permutation) -> Result<bool> {
        self.check_degree(sigma)?;
        self.check_degree(tau)?;
        let flip = self
            .fault
            .as_ref()
            .is_some_and(|(a, b)| a == sigma && b == tau);
        if sigma.is_identity() || tau.is_identity() {
            return Ok(flip);
        }
        let key = (sigma.rank(), tau.rank());
        if let Some(&c) = self.cocycles.lock().expect("cocycle cache poisoned").get(&key) {
            return Ok(c ^ flip);
        }
        let c = self.compute_cocycle(sigma, tau)?;
        self.cocycles.lock().expect("cocycle cache poisoned").insert(key, c);
        Ok(c ^ flip)
    }

    fn compute_cocycle(&self, sigma: &Permutation, tau: &Permutation) -> Result<bool> {
        let prod = sigma.compose(tau);
        let (ls, lt, lp) = (self.lift_versor(sigma), self.lift_versor(tau), self.lift_versor(&prod));
        let excess = ls.len() + lt.len() - lp.len();
        if excess % 2 == 1 {
            return Err(Error::Inconsistency("lift lengths of mismatched parity".into()));
        }
        let (mask, c) = lp.leading();
        let target = c as i128 * (1i128 << (excess / 2));
        let got = ls.product_coefficient(&lt, mask);
        let negative = if got == target {
            false
        } else if got == -target {
            true
        } else {
            return Err(Error::Inconsistency(format!(
                "lift({sigma})·lift({tau}) is not ±lift({prod})"
            )));
        };
        if self.strict {
            let sig = self.spec.signature();
            let lhs = &ls.to_clifford(sig)? * &lt.to_clifford(sig)?;
            let rhs = lp.to_clifford(sig)?;
            let expected = if negative { -rhs } else { rhs };
            if lhs != expected {
                return Err(Error::Inconsistency(format!(
                    "full product lift({sigma})·lift({tau}) disagrees with the sampled coefficient"
                )));
            }
        }
        Ok(negative)
    }

    pub fn identity(&self) -> CoverElem {
        CoverElem::new(false, Permutation::identity(self.spec.n))
    }

    /// The central element `z`.
    pub fn z(&self) -> CoverElem {
        CoverElem::new(true, Permutation::identity(self.spec.n))
    }

    /// `s_i` (plus) or `t_i` (minus), one-based.
    pub fn generator(&self, i: usize) -> Result<CoverElem> {
        if i == 0 || i >= self.spec.n {
            return Err(Error::IndexOutOfRange(format!(
                "generator {i} in a cover of degree {}",
                self.spec.n
            )));
        }
        Ok(CoverElem::new(false, Permutation::adjacent(self.spec.n, i)?))
    }

    pub fn generators(&self) -> Vec<CoverElem> {
        (1..self.spec.n).map(|i| self.generator(i).expect("in range")).collect()
    }

    /// # Panics
    ///
    /// On an internal inconsistency in the lift arithmetic, which indicates
    /// a bug rather than bad input.
    pub fn mul(&self, g: &CoverElem, h: &CoverElem) -> CoverElem {
        let c = self
            .cocycle(&g.perm, &h.perm)
            .unwrap_or_else(|e| panic!("cover multiplication failed: {e}"));
        CoverElem::new(g.eps ^ h.eps ^ c, g.perm.compose(&h.perm))
    }

    pub fn inv(&self, g: &CoverElem) -> CoverElem {
        let pinv = g.perm.inverse();
        let c = self
            .cocycle(&g.perm, &pinv)
            .unwrap_or_else(|e| panic!("cover inversion failed: {e}"));
        CoverElem::new(g.eps ^ c, pinv)
    }

    /// Product of generators `s_{w₁}⋯s_{w_k}`.
    pub fn word(&self, word: &[usize]) -> Result<CoverElem> {
        let mut acc = self.identity();
        for &i in word {
            acc = self.mul(&acc, &self.generator(i)?);
        }
        Ok(acc)
    }

    pub fn pow(&self, g: &CoverElem, k: u32) -> CoverElem {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_squares() {
        let plus = CoverGroup::new(CoverSpec::new(5, CoverVariant::Plus).unwrap());
        let minus = CoverGroup::new(CoverSpec::new(5, CoverVariant::Minus).unwrap());
        for i in 1..5 {
            let s = plus.generator(i).unwrap();
            assert_eq!(plus.mul(&s, &s), plus.identity());
            let t = minus.generator(i).unwrap();
            assert_eq!(minus.mul(&t, &t), minus.z());
        }
    }

    #[test]
    fn spec_bounds() {
        assert!(CoverSpec::new(3, CoverVariant::Plus).is_err());
        assert!(CoverSpec::new(17, CoverVariant::Plus).is_err());
    }

    #[test]
    fn strict_agrees() {
        let g = CoverGroup::new(CoverSpec::new(5, CoverVariant::Minus).unwrap()).strict(true);
        let a = Permutation::from_cycles(5, &[&[1, 4, 2], &[3, 5]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[1, 5, 2, 3]]).unwrap();
        g.cocycle(&a, &b).unwrap();
        g.cocycle(&b, &a).unwrap();
    }
}
