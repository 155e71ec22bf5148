use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `(a + b·√2) / 2^k` of `Z[1/2, √2]`, kept in canonical form.
///
/// The form is canonical when `k` is minimal, so two values are equal
/// exactly when their fields are equal.
///
/// Arithmetic uses 128-bit numerators and panics on overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct DyadicRing {
    a: i128,
    b: i128,
    k: u32,
}

impl DyadicRing {
    pub const ZERO: DyadicRing = DyadicRing { a: 0, b: 0, k: 0 };
    pub const ONE: DyadicRing = DyadicRing { a: 1, b: 0, k: 0 };
    /// `1/√2 = √2/2`.
    pub const INV_SQRT2: DyadicRing = DyadicRing { a: 0, b: 1, k: 1 };

    pub fn new(a: i128, b: i128, k: u32) -> Self {
        let mut d = DyadicRing { a, b, k };
        d.normalize();
        d
    }

    pub fn from_int(a: i128) -> Self {
        DyadicRing { a, b: 0, k: 0 }
    }

    pub fn sqrt2() -> Self {
        DyadicRing { a: 0, b: 1, k: 0 }
    }

    pub fn parts(&self) -> (i128, i128, u32) {
        (self.a, self.b, self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The integer value if the element is rational and integral.
    pub fn as_integer(&self) -> Option<i128> {
        (self.b == 0 && self.k == 0).then_some(self.a)
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2) / 2f64.powi(self.k as i32)
    }

    fn normalize(&mut self) {
        if self.a == 0 && self.b == 0 {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.a % 2 == 0 && self.b % 2 == 0 {
            self.a /= 2;
            self.b /= 2;
            self.k -= 1;
        }
    }

    fn scaled(&self, k: u32) -> (i128, i128) {
        let shift = k - self.k;
        let f = 1i128
            .checked_shl(shift)
            .filter(|_| shift < 127)
            .expect("dyadic exponent overflow");
        (
            self.a.checked_mul(f).expect("dyadic overflow"),
            self.b.checked_mul(f).expect("dyadic overflow"),
        )
    }
}

impl Add for DyadicRing {
    type Output = DyadicRing;
    fn add(self, rhs: DyadicRing) -> DyadicRing {
        let k = self.k.max(rhs.k);
        let (a1, b1) = self.scaled(k);
        let (a2, b2) = rhs.scaled(k);
        DyadicRing::new(
            a1.checked_add(a2).expect("dyadic overflow"),
            b1.checked_add(b2).expect("dyadic overflow"),
            k,
        )
    }
}

impl Neg for DyadicRing {
    type Output = DyadicRing;
    fn neg(self) -> DyadicRing {
        DyadicRing { a: -self.a, b: -self.b, k: self.k }
    }
}

impl Sub for DyadicRing {
    type Output = DyadicRing;
    fn sub(self, rhs: DyadicRing) -> DyadicRing {
        self + (-rhs)
    }
}

impl Mul for DyadicRing {
    type Output = DyadicRing;
    fn mul(self, rhs: DyadicRing) -> DyadicRing {
        let m = |x: i128, y: i128| x.checked_mul(y).expect("dyadic overflow");
        let a = m(self.a, rhs.a)
            .checked_add(m(2, m(self.b, rhs.b)))
            .expect("dyadic overflow");
        let b = m(self.a, rhs.b)
            .checked_add(m(self.b, rhs.a))
            .expect("dyadic overflow");
        DyadicRing::new(a, b, self.k + rhs.k)
    }
}

impl fmt::Display for DyadicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a, self.b) {
            (a, 0) => format!("{a}"),
            (0, b) => format!("{b}√2"),
            (a, b) if b < 0 => format!("({a} - {}√2)", -b),
            (a, b) => format!("({a} + {b}√2)"),
        };
        if self.k == 0 {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{}", 1u128 << self.k)
        }
    }
}
