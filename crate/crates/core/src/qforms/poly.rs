use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A univariate polynomial over `Q`, coefficients from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    /// From integer coefficients, constant term first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: BigRational) -> Self {
        Self::new(vec![a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        let lc = self.leading();
        Poly { c: self.c.iter().map(|x| x / &lc).collect() }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dl = d.leading();
        let dd = d.degree();
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut qc = vec![BigRational::zero(); self.c.len() - d.c.len() + 1];
        for k in (0..qc.len()).rev() {
            let f = &r[k + dd] / &dl;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &f * dj;
            }
            qc[k] = f;
        }
        (Self::new(qc), Self::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() { a } else { a.monic() }
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    /// `Res(self, o)`, by the Euclidean recursion.
    pub fn resultant(&self, o: &Self) -> BigRational {
        if self.is_zero() || o.is_zero() {
            return BigRational::zero();
        }
        let (m, n) = (self.degree(), o.degree());
        if n == 0 {
            return num_traits::pow(o.leading(), m);
        }
        let r = self.divrem(o).1;
        if r.is_zero() {
            return BigRational::zero();
        }
        let sign = if (m * n) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        sign * num_traits::pow(o.leading(), m - r.degree()) * o.resultant(&r)
    }

    /// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigRational {
        let n = self.degree();
        let sign = if (n * n.saturating_sub(1) / 2) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        sign * self.resultant(&self.derivative()) / self.leading()
    }

    /// Power sums `p_0, …, p_{count-1}` of the roots of a monic polynomial,
    /// by Newton's identities.
    pub fn power_sums(&self, count: usize) -> Vec<BigRational> {
        assert!(self.is_monic(), "power sums need a monic polynomial");
        let n = self.degree();
        let mut p: Vec<BigRational> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                p.push(BigRational::from_integer(BigInt::from(n)));
                continue;
            }
            // p_k + c_{n-1} p_{k-1} + … + c_{n-k+1} p_1 + k c_{n-k} = 0 (k ≤ n)
            // p_k + c_{n-1} p_{k-1} + … + c_0 p_{k-n} = 0 (k > n)
            let mut s = BigRational::zero();
            for i in 1..=k.min(n) {
                let coef = &self.c[n - i];
                if i < k {
                    s += coef * &p[k - i];
                } else {
                    s += coef * BigRational::from_integer(BigInt::from(k));
                }
            }
            p.push(-s);
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let m = a.abs();
            let show_coef = i == 0 || !m.is_one();
            if show_coef {
                write!(f, "{m}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
}

impl FromStr for Poly {
    type Err = Error;

    /// Either an expression in `x` such as `"x^3 - 2x + 1/2"`, or a
    /// comma-separated coefficient list from the leading coefficient down,
    /// such as `"1, 0, -2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if !s.contains('x') {
            let mut c = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            c.reverse();
            return Ok(Poly::new(c));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        let mut c: Vec<BigRational> = Vec::new();
        for t in terms {
            let (coef, deg) = match t.find('x') {
                None => (parse_rational(&t)?, 0usize),
                Some(pos) => {
                    let head = t[..pos].trim_end_matches('*');
                    let coef = match head {
                        "" | "+" => BigRational::one(),
                        "-" => -BigRational::one(),
                        h => parse_rational(h)?,
                    };
                    let tail = &t[pos + 1..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad term {t:?}")))?
                    };
                    (coef, deg)
                }
            };
            if c.len() <= deg {
                c.resize(deg + 1, BigRational::zero());
            }
            c[deg] += coef;
        }
        Ok(Poly::new(c))
    }
}
