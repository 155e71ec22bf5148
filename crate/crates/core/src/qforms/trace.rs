use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::form::{QuadFormQ, SquareClass};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`EtaleAlgebraQ::trace_form`].
pub const TRACE_FORM_MAX_DIM: usize = 24;

/// `Q[x]/(f₁) × … × Q[x]/(f_r)` for monic, squarefree, pairwise coprime `fᵢ`.
///
/// The factors need not be irreducible; the trace form and discriminant
/// only depend on the product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaleAlgebraQ {
    factors: Vec<Poly>,
}

impl EtaleAlgebraQ {
    /// `Q[x]/(f)`; `f` is made monic.
    pub fn from_polynomial(f: &Poly) -> Result<Self> {
        Self::from_factors(vec![f.clone()])
    }

    pub fn from_factors(factors: Vec<Poly>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("an étale algebra needs at least one factor".into()));
        }
        let mut monic = Vec::with_capacity(factors.len());
        for f in factors {
            if f.degree() == 0 {
                return Err(Error::InvalidArgument(format!("constant factor {f}")));
            }
            if !f.is_squarefree() {
                return Err(Error::NotSquarefree);
            }
            monic.push(f.monic());
        }
        for i in 0..monic.len() {
            for j in i + 1..monic.len() {
                if monic[i].gcd(&monic[j]).degree() > 0 {
                    return Err(Error::NotSquarefree);
                }
            }
        }
        Ok(EtaleAlgebraQ { factors: monic })
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(Poly::degree).sum()
    }

    pub fn defining_polynomial(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(BigRational::one()), |acc, f| acc.mul(f))
    }

    /// Block-diagonal Gram matrix of `(x, y) ↦ Tr(xy)` in the power bases:
    /// entry `(i, j)` of a block is the power sum `p_{i+j}`.
    pub fn trace_gram(&self) -> Vec<Vec<BigRational>> {
        let n = self.dimension();
        let mut g = vec![vec![BigRational::zero(); n]; n];
        let mut off = 0;
        for f in &self.factors {
            let d = f.degree();
            let p = f.power_sums(2 * d - 1);
            for i in 0..d {
                for j in 0..d {
                    g[off + i][off + j] = p[i + j].clone();
                }
            }
            off += d;
        }
        g
    }

    /// The trace form, diagonalized.
    pub fn trace_form(&self) -> Result<QuadFormQ> {
        if self.dimension() > TRACE_FORM_MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "trace forms limited to dimension {TRACE_FORM_MAX_DIM}"
            )));
        }
        QuadFormQ::new(diagonalize(self.trace_gram())?)
    }

    /// Discriminant of the defining polynomial (exact rational value).
    pub fn discriminant_value(&self) -> BigRational {
        self.defining_polynomial().discriminant()
    }

    /// Square class of the polynomial discriminant.
    pub fn discriminant(&self) -> Result<SquareClass> {
        SquareClass::of(&self.discriminant_value())
    }

    /// A random algebra of dimension `n`: split `n` into one to three parts,
    /// draw monic polynomials with coefficients in `[-20, 20]`, and redraw
    /// until the product is squarefree.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1, "dimension must be positive");
        loop {
            let parts = rng.gen_range(1..=3.min(n));
            let mut degrees = vec![1usize; parts];
            for _ in 0..n - parts {
                let k = rng.gen_range(0..parts);
                degrees[k] += 1;
            }
            let factors: Vec<Poly> = degrees
                .iter()
                .map(|&d| {
                    let mut c: Vec<BigRational> = (0..d)
                        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-20i64..=20))))
                        .collect();
                    c.push(BigRational::one());
                    Poly::new(c)
                })
                .collect();
            if let Ok(e) = EtaleAlgebraQ::from_factors(factors) {
                return e;
            }
        }
    }
}

/// `⟨2^{a₁}, …, 2^{a_s}⟩` for `n = 2^{a₁} + … + 2^{a_s}`.
pub fn dyadic_form(n: usize) -> Result<QuadFormQ> {
    let entries = (0..usize::BITS)
        .rev()
        .filter(|&a| n >> a & 1 == 1)
        .map(|a| BigRational::from_integer(BigInt::one() << a))
        .collect();
    QuadFormQ::new(entries)
}

fn bits(x: &BigRational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Diagonal entries of a congruent diagonal form, by symmetric elimination.
///
/// The pivot is the nonzero diagonal entry with the fewest bits. If the
/// remaining diagonal is zero, `e_i + e_j` for some `g_ij ≠ 0` creates a
/// nonzero one.
pub fn diagonalize(mut g: Vec<Vec<BigRational>>) -> Result<Vec<BigRational>> {
    let n = g.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !g[i][i].is_zero())
            .min_by_key(|&i| (bits(&g[i][i]), i));
        let i = match pivot {
            Some(i) => i,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !g[i][j].is_zero());
                let Some((i, j)) = pair else {
                    return Err(Error::Inconsistency("degenerate bilinear form".into()));
                };
                // replace basis vector e_i by e_i + e_j
                for k in 0..n {
                    let v = g[j][k].clone();
                    g[i][k] += v;
                }
                for k in 0..n {
                    let v = g[k][j].clone();
                    g[k][i] += v;
                }
                continue;
            }
        };
        let a = g[i][i].clone();
        active.retain(|&k| k != i);
        let row: Vec<BigRational> = g[i].clone();
        for &j in &active {
            if row[j].is_zero() {
                continue;
            }
            let f = &row[j] / &a;
            for &k in &active {
                let v = &f * &row[k];
                g[j][k] -= v;
            }
        }
        out.push(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_trace_forms() {
        let e = EtaleAlgebraQ::from_polynomial(&Poly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(e.trace_form().unwrap().entries(), &[q(2), q(2)]);
        let e = EtaleAlgebraQ::from_polynomial(&Poly::from_ints(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(e.trace_gram()[1][2], q(6));
        let t = e.trace_form().unwrap();
        assert!(super::super::form::same_square_class(&t.determinant(), &e.discriminant_value()));
        assert_eq!(e.discriminant().unwrap().to_string(), "-3");
    }

    #[test]
    fn dyadic_forms() {
        assert_eq!(dyadic_form(12).unwrap().to_string(), "<8, 4>");
        assert_eq!(dyadic_form(7).unwrap().dim(), 3);
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(EtaleAlgebraQ::from_polynomial(&f), Err(Error::NotSquarefree));
        let g = Poly::from_ints(&[-1, 1]);
        assert_eq!(EtaleAlgebraQ::from_factors(vec![g.clone(), g]), Err(Error::NotSquarefree));
    }

    #[test]
    fn zero_diagonal_pivot() {
        let g = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        let d = diagonalize(g).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(&d[0] * &d[1], q(-1));
    }
}
