use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored by its images.
///
/// Products follow function composition: `σ·τ = σ ∘ τ`, so `τ` acts first.
/// The derived order is lexicographic on images, which is Lehmer-code order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 255, "permutations are limited to 255 points");
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition of the one-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::IndexOutOfRange(format!("transposition ({i} {j}) on {n} points")));
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// The adjacent transposition `s_i = (i, i+1)`, one-based.
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        Self::transposition(n, i, i + 1)
    }

    /// Builds from one-based cycles, e.g. `&[&[1, 3], &[2, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cyc:?} on {n} points")));
                }
                seen[x - 1] = true;
                images[x - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of the zero-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    pub fn is_even(&self) -> bool {
        // parity from the cycle count avoids the quadratic inversion scan
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for i in 0..n {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.images[j] as usize;
                }
            }
        }
        (n - cycles).is_multiple_of(2)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j + 1);
                j = self.images[j] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Rank in Lehmer-code order, `0 ≤ rank < n!`. Requires `n ≤ 20`.
    pub fn rank(&self) -> u64 {
        let n = self.n();
        assert!(n <= 20, "rank of a permutation on more than 20 points");
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank = rank * (n - i) as u64 + smaller as u64;
        }
        rank
    }

    /// The smallest `i` (one-based) with `images[i-1] > images[i]`.
    pub fn first_descent(&self) -> Option<usize> {
        self.images.windows(2).position(|w| w[0] > w[1]).map(|i| i + 1)
    }

    /// A reduced word `[i₁, …, i_L]` with `self = s_{i₁}⋯s_{i_L}`.
    ///
    /// Bubble sort: repeatedly swap the positions of the first descent,
    /// which right-multiplies by that `s_i`; the word is the reversed list
    /// of swaps. Its length is the inversion count.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut p = self.images.clone();
        let mut word = Vec::new();
        while let Some(i) = p.windows(2).position(|w| w[0] > w[1]) {
            p.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// The `2`-adic valuation of `n!` (Legendre).
pub fn factorial_two_valuation(n: usize) -> u32 {
    (n - n.count_ones() as usize) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word_product(n: usize, word: &[usize]) -> Permutation {
        word.iter().fold(Permutation::identity(n), |acc, &i| {
            acc.compose(&Permutation::adjacent(n, i).unwrap())
        })
    }

    #[test]
    fn word_examples() {
        assert!(Permutation::identity(4).canonical_word().is_empty());
        assert_eq!(Permutation::transposition(4, 1, 2).unwrap().canonical_word(), vec![1]);
        let t13 = Permutation::transposition(4, 1, 3).unwrap();
        let w = t13.canonical_word();
        assert_eq!(w.len(), 3);
        assert_eq!(word_product(4, &w), t13);
    }

    #[test]
    fn composition_order() {
        // (1 2)∘(2 3) sends 3 ↦ 2 ↦ 1
        let a = Permutation::transposition(3, 1, 2).unwrap();
        let b = Permutation::transposition(3, 2, 3).unwrap();
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    fn all_lex(prefix: &mut Vec<u8>, rest: &[u8], out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::from_images(prefix.clone()).unwrap());
        }
        for (k, &x) in rest.iter().enumerate() {
            let mut r = rest.to_vec();
            r.remove(k);
            prefix.push(x);
            all_lex(prefix, &r, out);
            prefix.pop();
        }
    }

    #[test]
    fn rank_is_lex_order() {
        let mut all = vec![];
        all_lex(&mut vec![], &[0, 1, 2, 3], &mut all);
        assert_eq!(all.len(), 24);
        for (r, p) in all.iter().enumerate() {
            assert_eq!(p.rank(), r as u64);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cycles_roundtrip() {
        let p = Permutation::from_cycles(5, &[&[1, 3, 5], &[2, 4]]).unwrap();
        assert_eq!(p.to_string(), "(1 3 5)(2 4)");
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }
}
