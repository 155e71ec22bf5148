use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::arith::{is_rational_square, jacobi, square_decomposition, valuation, FactorBudget};
use super::hilbert::{hilbert_symbol, integral_rep, relevant_places, BrauerClass2, Place};
use crate::error::{Error, Result};

/// A squarefree integer standing for a class in `Q*/Q*²`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SquareClass {
    rep: BigInt,
}

impl SquareClass {
    pub fn of(r: &BigRational) -> Result<Self> {
        Ok(SquareClass { rep: square_decomposition(r)?.0 })
    }

    pub fn representative(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.rep.to_string())
    }
}

/// Whether two nonzero rationals have the same square class. Exact, with
/// no factoring.
pub fn same_square_class(a: &BigRational, b: &BigRational) -> bool {
    is_rational_square(&(a / b))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A nondegenerate diagonal form `⟨a₁, …, aₙ⟩` over `Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadFormQ {
    diag: Vec<BigRational>,
}

impl QuadFormQ {
    pub fn new(diag: Vec<BigRational>) -> Result<Self> {
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("diagonal forms must have nonzero entries".into()));
        }
        Ok(QuadFormQ { diag })
    }

    pub fn from_ints(diag: &[i64]) -> Result<Self> {
        Self::new(diag.iter().map(|&a| q(a)).collect())
    }

    /// `m⟨a⟩`.
    pub fn repeated(a: BigRational, m: usize) -> Result<Self> {
        Self::new(vec![a; m])
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let mut diag = self.diag.clone();
        diag.extend(other.diag.iter().cloned());
        QuadFormQ { diag }
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        Self::new(self.diag.iter().map(|a| a * c).collect())
    }

    /// The product of the entries; its square class is the discriminant.
    pub fn determinant(&self) -> BigRational {
        self.diag.iter().fold(BigRational::one(), |acc, a| acc * a)
    }

    /// Squarefree part of the product of the entries.
    ///
    /// Needs a factorization of the determinant; fails only when that
    /// exceeds the factoring budget.
    pub fn discriminant(&self) -> Result<SquareClass> {
        SquareClass::of(&self.determinant())
    }

    /// `(number of positive entries, number of negative entries)`.
    pub fn signature(&self) -> (usize, usize) {
        let p = self.diag.iter().filter(|a| a.is_positive()).count();
        (p, self.dim() - p)
    }

    fn places(&self) -> Result<BTreeSet<Place>> {
        relevant_places(&self.diag, &mut FactorBudget::default())
    }

    fn hasse_at(&self, v: &Place) -> i8 {
        let mut s = 1i8;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                s *= hilbert_symbol(&self.diag[i], &self.diag[j], v);
            }
        }
        s
    }

    /// `w₂(q) = Σ_{i<j} (aᵢ, aⱼ)` as a set of ramified places.
    pub fn hasse_invariant(&self) -> Result<BrauerClass2> {
        let places = self.places()?;
        BrauerClass2::from_places(places.into_iter().filter(|v| self.hasse_at(v) == -1).collect())
    }

    /// Isometry over `Q` by dimension, discriminant, Hasse invariant and signature.
    pub fn is_isometric(&self, other: &Self) -> Result<bool> {
        Ok(self.dim() == other.dim()
            && self.signature() == other.signature()
            && same_square_class(&self.determinant(), &other.determinant())
            && self.hasse_invariant()? == other.hasse_invariant()?)
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        self.witt_index_at_least(1)
    }

    pub fn witt_index(&self) -> Result<usize> {
        let mut state = Residual::new(self);
        let mut k = 0;
        while state.isotropic()? {
            state.split();
            k += 1;
        }
        Ok(k)
    }

    /// Whether at least `m` hyperbolic planes split off. Stops as soon as
    /// the answer is known; local data is only computed once the residual
    /// dimension drops to 4.
    pub fn witt_index_at_least(&self, m: usize) -> Result<bool> {
        let mut state = Residual::new(self);
        for _ in 0..m {
            if !state.isotropic()? {
                return Ok(false);
            }
            state.split();
        }
        Ok(true)
    }

    /// Whether `s⟨1⟩` is a subform, i.e. `q ⊥ s⟨-1⟩` has Witt index `≥ s`.
    pub fn contains_ones(&self, s: usize) -> Result<bool> {
        if s > self.dim() {
            return Err(Error::Precondition(format!("s = {s} exceeds dimension {}", self.dim())));
        }
        self.contains_subform(&QuadFormQ::repeated(q(1), s)?)
    }

    /// Whether `r` is a subform, i.e. `q ⊥ -r` has Witt index `≥ dim r`.
    pub fn contains_subform(&self, r: &QuadFormQ) -> Result<bool> {
        if r.dim() > self.dim() {
            return Err(Error::Precondition(format!(
                "subform dimension {} exceeds dimension {}",
                r.dim(),
                self.dim()
            )));
        }
        self.orthogonal_sum(&r.scale(&q(-1))?).witt_index_at_least(r.dim())
    }
}

/// `q` with `k` hyperbolic planes removed, tracked by invariants only.
struct Residual<'a> {
    form: &'a QuadFormQ,
    k: usize,
    local: Option<(BTreeSet<Place>, BTreeMap<Place, i8>)>,
}

impl<'a> Residual<'a> {
    fn new(form: &'a QuadFormQ) -> Self {
        Residual { form, k: 0, local: None }
    }

    fn dim(&self) -> usize {
        self.form.dim() - 2 * self.k
    }

    fn split(&mut self) {
        self.k += 1;
    }

    fn det(&self) -> BigRational {
        let d = self.form.determinant();
        if self.k % 2 == 1 { -d } else { d }
    }

    fn local_data(&mut self) -> Result<&(BTreeSet<Place>, BTreeMap<Place, i8>)> {
        if self.local.is_none() {
            let places = self.form.places()?;
            let eps = places.iter().map(|v| (v.clone(), self.form.hasse_at(v))).collect();
            self.local = Some((places, eps));
        }
        Ok(self.local.as_ref().expect("just set"))
    }

    /// `ε_v` of the residual from `ε(q) = ε(kH)·ε(q')·((-1)^k, d')`.
    fn residual_hasse(&self, v: &Place, eps_q: i8) -> i8 {
        let k = self.k;
        let minus_one = q(-1);
        let kh = if (k * k.saturating_sub(1) / 2) % 2 == 1 {
            hilbert_symbol(&minus_one, &minus_one, v)
        } else {
            1
        };
        let sign = if k % 2 == 1 { q(-1) } else { q(1) };
        eps_q * kh * hilbert_symbol(&sign, &self.det(), v)
    }

    fn isotropic(&mut self) -> Result<bool> {
        let r = self.dim();
        let (p, m) = self.form.signature();
        let (p, m) = (p - self.k, m - self.k);
        match r {
            0 | 1 => Ok(false),
            2 => Ok(is_rational_square(&-self.det())),
            3 | 4 => {
                let d = self.det();
                let (places, eps) = self.local_data()?.clone();
                let minus_one = q(-1);
                for v in &places {
                    let e = self.residual_hasse(v, eps[v]);
                    let ok = if r == 3 {
                        e == hilbert_symbol(&minus_one, &-&d, v)
                    } else {
                        !is_local_square(&d, v) || e == hilbert_symbol(&minus_one, &minus_one, v)
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(p > 0 && m > 0),
        }
    }
}

/// Whether `d` is a square in the completion `Q_v`.
pub fn is_local_square(d: &BigRational, v: &Place) -> bool {
    match v {
        Place::Infinity => d.is_positive(),
        Place::Prime(p) => {
            let (e, u) = valuation(&integral_rep(d), p);
            if e % 2 == 1 {
                return false;
            }
            if *p == num_bigint::BigUint::from(2u32) {
                num_integer::Integer::mod_floor(&u, &BigInt::from(8)).is_one()
            } else {
                jacobi(&u, p) == 1
            }
        }
    }
}

impl FromStr for QuadFormQ {
    type Err = Error;

    /// Comma-separated rationals, e.g. `"1,-1,2/3"`.
    fn from_str(s: &str) -> Result<Self> {
        let diag = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                BigRational::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if diag.is_empty() {
            return Err(Error::Parse("empty form".into()));
        }
        Self::new(diag)
    }
}

impl fmt::Display for QuadFormQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diag.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Invariants of a form in serializable shape.
#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub dim: usize,
    pub disc: SquareClass,
    pub signature: (usize, usize),
    pub hasse_ramified: Vec<String>,
    pub witt_index: usize,
}

impl QuadFormQ {
    pub fn summary(&self) -> Result<FormSummary> {
        Ok(FormSummary {
            dim: self.dim(),
            disc: self.discriminant()?,
            signature: self.signature(),
            hasse_ramified: self.hasse_invariant()?.ramified_strings(),
            witt_index: self.witt_index()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(d: &[i64]) -> QuadFormQ {
        QuadFormQ::from_ints(d).unwrap()
    }

    #[test]
    fn examples() {
        assert!(form(&[2, 2]).discriminant().unwrap().is_trivial());
        assert_eq!(form(&[1, -3]).discriminant().unwrap().to_string(), "-3");
        assert_eq!(form(&[1, -1]).witt_index().unwrap(), 1);
        assert!(!form(&[1, 1, 1, 1]).is_isotropic().unwrap());
        assert!(!form(&[1, 1, 1, -7]).is_isotropic().unwrap());
        assert!(form(&[1, 1, 1, -3]).is_isotropic().unwrap());
        assert!(form(&[1, 1]).contains_ones(2).unwrap());
        assert!(!form(&[-1, -1]).contains_ones(1).unwrap());
        assert_eq!(form(&[-1, -1]).hasse_invariant().unwrap().to_string(), "{2, inf}");
        assert!(form(&[1, 1, 1]).hasse_invariant().unwrap().is_zero());
    }

    #[test]
    fn parse() {
        let f: QuadFormQ = "1, -1, 2/3".parse().unwrap();
        assert_eq!(f.dim(), 3);
        assert!("1,0".parse::<QuadFormQ>().is_err());
        assert!("1,x".parse::<QuadFormQ>().is_err());
    }

    #[test]
    fn witt_indices() {
        assert_eq!(form(&[1, -1, 1, -1, 1]).witt_index().unwrap(), 2);
        assert_eq!(form(&[1, 1, 1, 1, 1]).witt_index().unwrap(), 0);
        // <1,1,-1,-1,-1,-1>: 2 planes split immediately, residual <-1,-1> anisotropic
        assert_eq!(form(&[1, 1, -1, -1, -1, -1]).witt_index().unwrap(), 2);
        // <1,1,1,-7>: real place indefinite but anisotropic at 2
        assert_eq!(form(&[1, 1, 1, -7, 7]).witt_index().unwrap(), 1);
    }
}
