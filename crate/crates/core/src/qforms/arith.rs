//! Integer arithmetic for the form engine: primality, factoring, square
//! classes and Legendre symbols.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

const SMALL_PRIMES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Deterministic Miller–Rabin for 64-bit integers (the first twelve prime
/// bases suffice below `3.3·10^24`).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'bases: for &a in &SMALL_PRIMES[..12] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary integers: exact below `2^64`; above that, Miller–Rabin
/// with the first twenty prime bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Work limit for Pollard rho, counted in modular multiplications.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    pub remaining: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { remaining: 4_000_000 }
    }
}

fn rho_u64(n: u64, budget: &mut FactorBudget) -> Option<u64> {
    // Brent's variant with batched gcds
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut r = 1u64;
        let mut g = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                if budget.remaining < m {
                    return None;
                }
                budget.remaining -= m;
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: &mut FactorBudget) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1..32u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            if budget.remaining < 3 {
                return None;
            }
            budget.remaining -= 3;
            x = f(&x);
            y = f(&f(&y));
            let d = if x > y { &x - &y } else { &y - &x };
            let g = d.gcd(n);
            if g == *n {
                break;
            }
            if g != one {
                return Some(g);
            }
        }
    }
    None
}

fn factor_into(n: BigUint, budget: &mut FactorBudget, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        factor_into(r.clone(), budget, out)?;
        return factor_into(r, budget, out);
    }
    let d = match n.to_u64() {
        Some(small) => rho_u64(small, budget).map(BigUint::from),
        None => rho_big(&n, budget),
    }
    .ok_or_else(|| Error::FactorBudget(n.to_string()))?;
    let e = &n / &d;
    factor_into(d, budget, out)?;
    factor_into(e, budget, out)
}

/// Prime factorization with multiplicities, primes ascending.
pub fn factor(n: &BigUint, budget: &mut FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("factoring zero".into()));
    }
    let mut rest = n.clone();
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_into(rest, budget, &mut primes)?;
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Distinct primes dividing `n`.
pub fn prime_divisors(n: &BigUint, budget: &mut FactorBudget) -> Result<Vec<BigUint>> {
    Ok(factor(n, budget)?.into_iter().map(|(p, _)| p).collect())
}

/// `r = core · root²` with `core` a squarefree integer carrying the sign of `r`.
pub fn square_decomposition(r: &BigRational) -> Result<(BigInt, BigRational)> {
    if r.is_zero() {
        return Err(Error::InvalidArgument("square class of zero".into()));
    }
    // r = num/den = num·den / den²
    let m = (r.numer() * r.denom()).abs().to_biguint().expect("nonnegative");
    let mut budget = FactorBudget::default();
    let mut core = BigUint::one();
    let mut root = BigUint::one();
    for (p, e) in factor(&m, &mut budget)? {
        if e % 2 == 1 {
            core *= &p;
        }
        root *= p.pow(e / 2);
    }
    let sign = if r.is_negative() { Sign::Minus } else { Sign::Plus };
    let core = BigInt::from_biguint(sign, core);
    let root = BigRational::new(BigInt::from(root), r.denom().clone());
    Ok((core, root))
}

/// Whether `r` is the square of a rational number. No factoring needed.
pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let sq = |x: &BigInt| {
        let s = x.sqrt();
        &s * &s == *x
    };
    sq(r.numer()) && sq(r.denom())
}

/// `v_p(n)` and `n / p^{v_p(n)}`.
pub fn valuation(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "Jacobi symbol needs an odd modulus");
    let n_big = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_big).to_biguint().expect("reduced residue");
    let mut n = n.clone();
    let mut t = 1i8;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let eight = BigUint::from(8u32);
    let four = BigUint::from(4u32);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() { t } else { 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes.len(), 46);
        assert!(is_prime_u64(2_305_843_009_213_693_951));
        assert!(!is_prime_u64(3_215_031_751));
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * BigUint::from(3u32))));
    }

    #[test]
    fn factoring() {
        let n = BigUint::from(2u64 * 2 * 3 * 1_000_003 * 1_000_033);
        let f = factor(&n, &mut FactorBudget::default()).unwrap();
        let flat: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(flat, vec![(2, 2), (3, 1), (1_000_003, 1), (1_000_033, 1)]);
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * BigUint::from(4_294_967_311u64);
        let f = factor(&big, &mut FactorBudget::default()).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn squares() {
        assert_eq!(square_decomposition(&q(-108, 1)).unwrap().0, BigInt::from(-3));
        assert_eq!(square_decomposition(&q(8, 27)).unwrap().0, BigInt::from(6));
        let (c, r) = square_decomposition(&q(50, 3)).unwrap();
        assert_eq!(BigRational::from_integer(c) * &r * &r, q(50, 3));
        assert!(is_rational_square(&q(9, 4)));
        assert!(!is_rational_square(&q(-9, 4)));
        assert!(!is_rational_square(&q(2, 1)));
    }

    #[test]
    fn jacobi_small() {
        // quadratic residues mod 7: 1, 2, 4
        let res: Vec<i8> = (1..7).map(|a| jacobi(&BigInt::from(a), &BigUint::from(7u32))).collect();
        assert_eq!(res, vec![1, 1, -1, 1, -1, -1]);
    }
}
