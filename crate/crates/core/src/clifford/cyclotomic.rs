use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field operations needed by the matrix code in [`super::spin`].
///
/// Constants are produced from an existing element because some fields
/// (see [`QuadExt`]) carry their defining data in every value.
pub trait FieldElem: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `c0 + c1·ζ + c2·ζ² + c3·ζ³` with `ζ⁴ = -1`, a primitive 8th root of unity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic8 {
    c: [BigRational; 4],
}

impl Cyclotomic8 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Cyclotomic8 { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclotomic8 { c: c.map(q) }
    }

    pub fn rational(r: BigRational) -> Self {
        Cyclotomic8 { c: [r, q(0), q(0), q(0)] }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// `ζ²`.
    pub fn i() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    /// `ζ - ζ³ = ζ + ζ⁻¹`.
    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1])
    }

    /// `ζ + ζ³`.
    pub fn sqrt_minus2() -> Self {
        Self::from_ints([0, 1, 0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic8 { c: std::array::from_fn(|i| &self.c[i] * r) }
    }

    /// The Galois automorphism `ζ ↦ ζ^k` for odd `k`.
    pub fn galois(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (i, ci) in self.c.iter().enumerate() {
            let e = (i * k) % 8;
            if e < 4 {
                out.c[e] += ci;
            } else {
                out.c[e - 4] -= ci;
            }
        }
        out
    }

    /// A square root in `Q(ζ₈)` of the rational `r`, when one exists
    /// there (`r` a rational square times 1, -1, 2 or -2).
    pub fn sqrt_rational(r: &BigRational) -> Option<Self> {
        let (core, root) = crate::qforms::arith::square_decomposition(r).ok()?;
        let base = match core.to_string().as_str() {
            "1" => Self::one(),
            "-1" => Self::i(),
            "2" => Self::sqrt2(),
            "-2" => Self::sqrt_minus2(),
            _ => return None,
        };
        Some(base.scale(&root))
    }
}

impl FieldElem for Cyclotomic8 {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        Cyclotomic8 { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    fn sub(&self, o: &Self) -> Self {
        Cyclotomic8 { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let p = a * b;
                if i + j < 4 {
                    out.c[i + j] += p;
                } else {
                    out.c[i + j - 4] -= p;
                }
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Cyclotomic8 { c: std::array::from_fn(|i| -&self.c[i]) }
    }

    fn inv(&self) -> Option<Self> {
        if FieldElem::is_zero(self) {
            return None;
        }
        let conj = self.galois(3).mul(&self.galois(5)).mul(&self.galois(7));
        let norm = self.mul(&conj);
        let n = norm.as_rational().expect("field norm is rational").clone();
        Some(conj.scale(&n.recip()))
    }
}

impl fmt::Display for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        for (c, name) in self.c.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            if name.is_empty() || !a.is_one() {
                write!(f, "{a}")?;
            }
            f.write_str(name)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `a + b·√d` with `a, b ∈ Q(ζ₈)` and `d` a fixed integer that is not a
/// square in `Q(ζ₈)`.
///
/// Every value carries `d`; values with different `d` must not be mixed.
/// `d = 1` is used for elements that never leave `Q(ζ₈)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub a: Cyclotomic8,
    pub b: Cyclotomic8,
    pub d: i64,
}

impl QuadExt {
    pub fn embed(a: Cyclotomic8, d: i64) -> Self {
        QuadExt { a, b: Cyclotomic8::zero(), d }
    }

    /// `√d` itself.
    pub fn radical(d: i64) -> Self {
        QuadExt { a: Cyclotomic8::zero(), b: Cyclotomic8::one(), d }
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.d, o.d, "mixed quadratic extensions");
    }
}

impl FieldElem for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::embed(Cyclotomic8::zero(), self.d)
    }

    fn one_like(&self) -> Self {
        QuadExt::embed(Cyclotomic8::one(), self.d)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadExt { a: self.a.add(&o.a), b: self.b.add(&o.b), d: self.d }
    }

    fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadExt { a: self.a.sub(&o.a), b: self.b.sub(&o.b), d: self.d }
    }

    fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = Cyclotomic8::rational(q(self.d));
        QuadExt {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&d)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
            d: self.d,
        }
    }

    fn neg(&self) -> Self {
        QuadExt { a: self.a.neg(), b: self.b.neg(), d: self.d }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = Cyclotomic8::rational(q(self.d));
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&d));
        let ni = norm.inv()?;
        Some(QuadExt { a: self.a.mul(&ni), b: self.b.neg().mul(&ni), d: self.d })
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})·√{}", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        let z = Cyclotomic8::zeta();
        let z4 = z.mul(&z).mul(&z).mul(&z);
        assert_eq!(z4, Cyclotomic8::from_ints([-1, 0, 0, 0]));
        assert_eq!(Cyclotomic8::sqrt2().mul(&Cyclotomic8::sqrt2()), Cyclotomic8::from_ints([2, 0, 0, 0]));
        assert_eq!(
            Cyclotomic8::sqrt_minus2().mul(&Cyclotomic8::sqrt_minus2()),
            Cyclotomic8::from_ints([-2, 0, 0, 0])
        );
        assert_eq!(Cyclotomic8::i().mul(&Cyclotomic8::i()), Cyclotomic8::from_ints([-1, 0, 0, 0]));
    }

    #[test]
    fn inverses() {
        let x = Cyclotomic8::from_ints([3, -1, 2, 5]);
        assert_eq!(x.mul(&x.inv().unwrap()), Cyclotomic8::one());
        let y = QuadExt { a: x.clone(), b: Cyclotomic8::from_ints([1, 1, 0, 0]), d: 3 };
        assert_eq!(y.mul(&y.inv().unwrap()), y.one_like());
        assert!(Cyclotomic8::zero().inv().is_none());
    }
}
