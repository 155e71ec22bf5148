use std::fmt;
use std::hash::Hash;

use super::FiniteGroupTable;
use crate::error::{Error, Result};

/// Size limit for [`iso_small`].
pub const ISO_SMALL_BOUND: usize = 64;

/// Isomorphism test for groups of order at most 64.
pub fn iso_small<E, F>(a: &FiniteGroupTable<E>, b: &FiniteGroupTable<F>) -> Result<bool>
where
    E: Clone + Eq + Hash + Ord,
    F: Clone + Eq + Hash + Ord,
{
    isomorphic(a, b, ISO_SMALL_BOUND)
}

fn order_profile<E: Clone + Eq + Hash + Ord>(g: &FiniteGroupTable<E>) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

/// Isomorphism test by backtracking over images of a small generating set of
/// `a`, pruned by element orders.
///
/// A candidate assignment is extended along the shortest-word tree of `a`
/// and accepted only if it respects every edge of the Cayley graph and is
/// bijective, which makes it an isomorphism. Refuses groups above `bound`.
pub fn isomorphic<E, F>(a: &FiniteGroupTable<E>, b: &FiniteGroupTable<F>, bound: usize) -> Result<bool>
where
    E: Clone + Eq + Hash + Ord,
    F: Clone + Eq + Hash + Ord,
{
    if a.order() > bound || b.order() > bound {
        return Err(Error::SizeBound { bound });
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    let orders_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    let mut sorted_b = orders_b.clone();
    sorted_b.sort_unstable();
    if order_profile(a) != sorted_b {
        return Ok(false);
    }
    let all: Vec<usize> = (0..a.order()).collect();
    let gens = a.small_generating_set(&all);
    // `a` re-expressed over the small generating set so words and the
    // Cayley table refer to `gens`
    let a2 = a.subgroup(&gens)?;
    let gens2 = a2.generators();
    let candidates: Vec<Vec<usize>> = gens2
        .iter()
        .map(|&g| {
            let o = a2.element_order(g);
            (0..b.order()).filter(|&y| orders_b[y] == o).collect()
        })
        .collect();
    let mut images = vec![0usize; gens2.len()];
    Ok(search(&a2, b, &candidates, &mut images, 0))
}

fn search<E, F>(
    a: &FiniteGroupTable<E>,
    b: &FiniteGroupTable<F>,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> bool
where
    E: Clone + Eq + Hash + Ord,
    F: Clone + Eq + Hash + Ord,
{
    if depth == candidates.len() {
        return extends_to_isomorphism(a, b, images);
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if search(a, b, candidates, images, depth + 1) {
            return true;
        }
    }
    false
}

fn extends_to_isomorphism<E, F>(a: &FiniteGroupTable<E>, b: &FiniteGroupTable<F>, images: &[usize]) -> bool
where
    E: Clone + Eq + Hash + Ord,
    F: Clone + Eq + Hash + Ord,
{
    let n = a.order();
    let phi: Vec<usize> = (0..n)
        .map(|g| {
            a.word(g)
                .iter()
                .fold(b.identity(), |acc, &j| b.mul_idx(acc, images[j as usize]))
        })
        .collect();
    let mut hit = vec![false; b.order()];
    for &y in &phi {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..n).all(|g| {
        (0..images.len()).all(|j| phi[a.mul_gen(g, j)] == b.mul_idx(phi[g], images[j]))
    })
}

/// The cyclic group `Z/m`.
pub fn cyclic_group(m: u32) -> FiniteGroupTable<u32> {
    FiniteGroupTable::generate(&[1 % m], 0, |a, b| (a + b) % m, m as usize)
        .expect("bound equals the order")
}

/// `x^a y^b` in a generalized quaternion group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QuatElem {
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => f.write_str("1"),
            (0, _) => f.write_str("y"),
            (a, 0) => write!(f, "x^{a}"),
            (a, _) => write!(f, "x^{a}y"),
        }
    }
}

/// The generalized quaternion group `Q_{2^m}` (`m ≥ 3`) in the normal form
/// `x^a y^b`, `0 ≤ a < 2^{m-1}`, `b ∈ {0,1}`, with `y x y⁻¹ = x⁻¹` and
/// `y² = x^{2^{m-2}}`.
pub fn quaternion_group(m: u32) -> FiniteGroupTable<QuatElem> {
    assert!(m >= 3, "generalized quaternion groups start at order 8");
    let half = 1u32 << (m - 1);
    let quarter = half / 2;
    let mul = |g: &QuatElem, h: &QuatElem| {
        let c = if g.b == 1 { (half - h.a) % half } else { h.a };
        let extra = if g.b == 1 && h.b == 1 { quarter } else { 0 };
        QuatElem { a: (g.a + c + extra) % half, b: g.b ^ h.b }
    };
    let gens = [QuatElem { a: 1, b: 0 }, QuatElem { a: 0, b: 1 }];
    FiniteGroupTable::generate(&gens, QuatElem { a: 0, b: 0 }, mul, 1 << m).expect("bound equals the order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_basics() {
        let q8 = quaternion_group(3);
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.center().order(), 2);
        assert_eq!(q8.conjugacy_classes().len(), 5);
        let q16 = quaternion_group(4);
        assert_eq!(q16.order(), 16);
        assert_eq!(q16.conjugacy_classes().len(), 7);
        assert!(!iso_small(&q8, &cyclic_group(8)).unwrap());
        assert!(iso_small(&q16, &q16).unwrap());
    }

    #[test]
    fn dihedral_is_not_quaternion() {
        // D8 as a permutation group: same order, different order profile
        let d8 = FiniteGroupTable::generate(&[1u8, 8], 0, |&a, &b| {
            let (ra, fa) = (a % 8, a / 8);
            let (rb, fb) = (b % 8, b / 8);
            let r = if fa == 1 { (ra + 4 - rb) % 4 } else { (ra + rb) % 4 };
            r + 8 * (fa ^ fb)
        }, 100)
        .unwrap();
        assert_eq!(d8.order(), 8);
        assert!(!iso_small(&d8, &quaternion_group(3)).unwrap());
    }
}
