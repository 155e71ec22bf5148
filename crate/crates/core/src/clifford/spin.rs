use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::cyclotomic::{Cyclotomic8, FieldElem, QuadExt};
use crate::error::{Error, Result};

/// A dense matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldElem> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Mat { rows, cols, data }
    }

    /// The identity, taking the field from `like`.
    pub fn identity(n: usize, like: &T) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { like.one_like() } else { like.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.map(T::neg))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let zero = self.data[0].zero_like();
        let mut data = vec![zero; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        data[i * o.cols + j] = data[i * o.cols + j].add(&a.mul(b));
                    }
                }
            }
        }
        Mat { rows: self.rows, cols: o.cols, data }
    }

    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).mul(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { *x == x.one_like() } else { x.is_zero() }
                })
            })
    }

    /// `Some(c)` if the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<T> {
        let c = self.get(0, 0).clone();
        (self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { *x == c } else { x.is_zero() }
                })
            }))
        .then_some(c)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Reduced row echelon form; returns the nonzero rows and pivot columns.
    pub fn rref(&self) -> (Vec<Vec<T>>, Vec<usize>) {
        let mut rows: Vec<Vec<T>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            rows[r] = rows[r].iter().map(|x| x.mul(&inv)).collect();
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    let pivot_row = rows[r].clone();
                    for (d, s) in rows[i].iter_mut().zip(&pivot_row) {
                        *d = d.sub(&s.mul(&f));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }
}

fn pauli(which: char) -> Mat<Cyclotomic8> {
    let z = Cyclotomic8::zero();
    let one = Cyclotomic8::one();
    let i = Cyclotomic8::i();
    let e = |a: &Cyclotomic8, b: &Cyclotomic8, c: &Cyclotomic8, d: &Cyclotomic8| Mat {
        rows: 2,
        cols: 2,
        data: vec![a.clone(), b.clone(), c.clone(), d.clone()],
    };
    match which {
        'I' => e(&one, &z, &z, &one),
        'X' => e(&z, &one, &one, &z),
        'Y' => e(&z, &i.neg(), &i, &z),
        'Z' => e(&one, &z, &z, &one.neg()),
        _ => unreachable!(),
    }
}

fn tensor(factors: &[char]) -> Mat<Cyclotomic8> {
    factors
        .iter()
        .fold(Mat::identity(1, &Cyclotomic8::one()), |acc, &c| acc.kron(&pauli(c)))
}

/// `m` pairwise anticommuting matrices squaring to `sign·I`, of size `2^⌊m/2⌋`.
///
/// Built from Pauli tensor products; for `sign = -1` every matrix is
/// multiplied by `ζ² = i`.
pub fn clifford_gammas(m: usize, sign: i8) -> Vec<Mat<Cyclotomic8>> {
    let k = m / 2;
    let mut out = Vec::with_capacity(m);
    for j in 0..k {
        for p in ['X', 'Y'] {
            let word: Vec<char> = (0..k)
                .map(|t| if t < j { 'Z' } else if t == j { p } else { 'I' })
                .collect();
            out.push(tensor(&word));
        }
    }
    if m % 2 == 1 {
        out.push(tensor(&vec!['Z'; k]));
    }
    if sign < 0 {
        let i = Cyclotomic8::i();
        out = out.into_iter().map(|g| g.scale(&i)).collect();
    }
    out
}

/// Images of the Clifford generators `e₁, …, e_{n-1}` in the basic spin
/// representation, matrices of size `2^⌊(n-1)/2⌋` with squares `sign·I`.
pub fn basic_spin_matrices(n: usize, sign: i8) -> Result<Vec<Mat<Cyclotomic8>>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("basic spin matrices need n ≥ 2, got {n}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign {sign} not ±1")));
    }
    Ok(clifford_gammas(n - 1, sign))
}

/// A matrix representation of a double cover of `Sₙ` by the lifts
/// `(γ_j - γ_{j+1})/√2` of the adjacent transpositions.
///
/// For odd `n` the `n` gamma matrices already have size `2^((n-1)/2)`. For
/// even `n` the representation of size `2^(n/2)` splits in two under the
/// element `P = (Σγ_j)(γ₁⋯γₙ)`, which commutes with every lift and squares to
/// a rational `c`; we keep the `+√c` eigenspace. When `√c ∉ Q(ζ₈)` the
/// entries live in `Q(ζ₈, √c)`, recorded in [`SpinRepresentation::radicand`].
#[derive(Clone, Debug)]
pub struct SpinRepresentation {
    n: usize,
    sign: i8,
    radicand: i64,
    generators: Vec<Mat<QuadExt>>,
}

impl SpinRepresentation {
    pub fn new(n: usize, sign: i8) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("spin representation needs n ≥ 2, got {n}")));
        }
        let gammas = clifford_gammas(n, sign);
        let inv_sqrt2 = Cyclotomic8::sqrt2().scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let lifts: Vec<Mat<Cyclotomic8>> =
            (0..n - 1).map(|j| gammas[j].sub(&gammas[j + 1]).scale(&inv_sqrt2)).collect();
        if n % 2 == 1 {
            let generators = lifts.iter().map(|m| m.map(|x| QuadExt::embed(x.clone(), 1))).collect();
            return Ok(SpinRepresentation { n, sign, radicand: 1, generators });
        }

        let one = Cyclotomic8::one();
        let dim = gammas[0].rows();
        let sum = gammas.iter().skip(1).fold(gammas[0].clone(), |acc, g| acc.add(g));
        let prod = gammas.iter().fold(Mat::identity(dim, &one), |acc, g| acc.mul(g));
        let p = sum.mul(&prod);
        let c = p
            .mul(&p)
            .as_scalar()
            .and_then(|x| x.as_rational().cloned())
            .ok_or_else(|| Error::Inconsistency("P² is not a rational scalar".into()))?;

        let (radicand, sqrt_c) = match Cyclotomic8::sqrt_rational(&c) {
            Some(r) => (1, QuadExt::embed(r, 1)),
            None => {
                let (core, root) = crate::qforms::arith::square_decomposition(&c)?;
                let d: i64 = core
                    .try_into()
                    .map_err(|_| Error::Inconsistency("radicand overflow".into()))?;
                let r = QuadExt { a: Cyclotomic8::zero(), b: Cyclotomic8::rational(root), d };
                (d, r)
            }
        };
        let lift = |m: &Mat<Cyclotomic8>| m.map(|x| QuadExt::embed(x.clone(), radicand));
        let p = lift(&p);
        let half = QuadExt::embed(
            Cyclotomic8::rational(BigRational::new(BigInt::one(), BigInt::from(2))),
            radicand,
        );
        let sqrt_inv = sqrt_c.inv().expect("c is nonzero");
        let id = Mat::identity(dim, &half);
        let proj = id.add(&p.scale(&sqrt_inv)).scale(&half);

        // Column space of the projector, in reduced form: basis vectors b_l
        // with b_l[pivot_l'] = δ.
        let (basis, pivots) = proj.transpose().rref();
        if basis.len() * 2 != dim {
            return Err(Error::Inconsistency(format!(
                "eigenspace of dimension {} in a space of dimension {dim}",
                basis.len()
            )));
        }
        let k = basis.len();
        let bmat = Mat::from_fn(dim, k, |i, l| basis[l][i].clone());
        let generators = lifts
            .iter()
            .map(|u| {
                let image = lift(u).mul(&bmat);
                Mat::from_fn(k, k, |l2, l| image.get(pivots[l2], l).clone())
            })
            .collect();
        Ok(SpinRepresentation { n, sign, radicand, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.generators[0].rows()
    }

    /// `1` when all entries lie in `Q(ζ₈)`, otherwise the adjoined square.
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    /// Image of the `i`-th adjacent transposition lift, `i` from 1.
    pub fn generator(&self, i: usize) -> &Mat<QuadExt> {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[Mat<QuadExt>] {
        &self.generators
    }

    pub fn identity(&self) -> Mat<QuadExt> {
        Mat::identity(self.dim(), self.generators[0].get(0, 0))
    }

    /// Image of a word in the generators.
    pub fn word_image(&self, word: &[usize]) -> Mat<QuadExt> {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(self.generator(i)))
    }
}

/// Whether `c` is the rational number `r` as an element of `Q(ζ₈, √d)`.
pub fn is_rational_scalar(c: &QuadExt, r: i64) -> bool {
    c.b.is_zero() && c.a.as_rational().is_some_and(|x| *x == BigRational::from_integer(r.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gammas_anticommute() {
        for m in 1..=6 {
            for sign in [1i8, -1] {
                let g = clifford_gammas(m, sign);
                assert_eq!(g.len(), m);
                let s = Cyclotomic8::from_ints([sign as i64, 0, 0, 0]);
                for a in 0..m {
                    for b in 0..m {
                        let ac = g[a].mul(&g[b]).add(&g[b].mul(&g[a]));
                        let expected = if a == b {
                            Mat::identity(g[a].rows(), &s).scale(&s).scale(&Cyclotomic8::from_ints([2, 0, 0, 0]))
                        } else {
                            Mat::from_fn(g[a].rows(), g[a].rows(), |_, _| Cyclotomic8::zero())
                        };
                        assert_eq!(ac, expected, "m={m} sign={sign} a={a} b={b}");
                    }
                }
            }
        }
    }
}
