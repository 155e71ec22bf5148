use serde::Serialize;

use super::{CoverElem, CoverGroup, FiniteGroupTable, Permutation};
use crate::error::{Error, Result};

/// The binary expansion `n = 2^{a₁} + … + 2^{a_s}` with `a₁ > … > a_s`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DyadicProfile {
    pub n: usize,
    pub exponents: Vec<u32>,
}

impl DyadicProfile {
    pub fn new(n: usize) -> Self {
        let exponents = (0..usize::BITS).rev().filter(|&a| n >> a & 1 == 1).collect();
        DyadicProfile { n, exponents }
    }

    /// `s`, the number of binary digits equal to one.
    pub fn s(&self) -> usize {
        self.exponents.len()
    }
}

/// Generators of a Sylow 2-subgroup of `Sₙ`.
///
/// Points are split into consecutive blocks of sizes `2^{a₁}, …, 2^{a_s}`.
/// On a block of size `2^a` starting at `o`, level `l < a` contributes the
/// involution swapping `o + x` and `o + x + 2^l` for `0 ≤ x < 2^l`; these
/// generate the iterated wreath product of `C₂`. The whole group has order
/// `2^{n-s}`.
pub fn sylow2_sym_generators(n: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for a in DyadicProfile::new(n).exponents {
        for l in 0..a {
            let half = 1usize << l;
            let mut images: Vec<u8> = (0..n as u8).collect();
            for x in offset..offset + half {
                images.swap(x, x + half);
            }
            gens.push(Permutation::from_images(images).expect("an involution"));
        }
        offset += 1 << a;
    }
    gens
}

/// The closure of `{(0, g) : g ∈ gens} ∪ {z}` in the cover.
pub fn preimage_subgroup(
    group: &CoverGroup,
    gens: &[Permutation],
    bound: usize,
) -> Result<FiniteGroupTable<CoverElem>> {
    let mut lifted = vec![group.z()];
    for g in gens {
        if g.n() != group.n() {
            return Err(Error::InvalidArgument(format!(
                "generator on {} points in a cover of degree {}",
                g.n(),
                group.n()
            )));
        }
        lifted.push(CoverElem::new(false, g.clone()));
    }
    FiniteGroupTable::generate(&lifted, group.identity(), |a, b| group.mul(a, b), bound)
}

/// The whole cover `S̃ₙ^±`, closed from the generators `s_i` alone.
pub fn full_cover(group: &CoverGroup, bound: usize) -> Result<FiniteGroupTable<CoverElem>> {
    FiniteGroupTable::generate(&group.generators(), group.identity(), |a, b| group.mul(a, b), bound)
}

/// `Ãₙ`, closed from the products `s_i s_{i+1}`, which lift 3-cycles.
pub fn alt_cover_subgroup(group: &CoverGroup, bound: usize) -> Result<FiniteGroupTable<CoverElem>> {
    let gens: Vec<CoverElem> = (1..group.n() - 1)
        .map(|i| {
            group.mul(
                &group.generator(i).expect("in range"),
                &group.generator(i + 1).expect("in range"),
            )
        })
        .collect();
    FiniteGroupTable::generate(&gens, group.identity(), |a, b| group.mul(a, b), bound)
}

/// Membership in `Ãₙ`: the permutation part is even.
pub fn in_alt_cover(g: &CoverElem) -> bool {
    g.is_even()
}

/// `P̃ₙ`, the preimage of the Sylow 2-subgroup from [`sylow2_sym_generators`].
pub fn sylow2_cover(group: &CoverGroup, bound: usize) -> Result<FiniteGroupTable<CoverElem>> {
    preimage_subgroup(group, &sylow2_sym_generators(group.n()), bound)
}

/// `H̃ₙ = P̃ₙ ∩ Ãₙ`, a Sylow 2-subgroup of `Ãₙ`.
pub fn sylow2_alt_cover(group: &CoverGroup, bound: usize) -> Result<FiniteGroupTable<CoverElem>> {
    let p = sylow2_cover(group, bound)?;
    let even: Vec<usize> = (0..p.order()).filter(|&g| in_alt_cover(p.element(g))).collect();
    p.subgroup_from_members(&even)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::factorial_two_valuation;

    fn closure_order(n: usize, gens: &[Permutation]) -> usize {
        FiniteGroupTable::generate(gens, Permutation::identity(n), |a, b| a.compose(b), 1 << 20)
            .unwrap()
            .order()
    }

    #[test]
    fn sylow_orders() {
        assert!(sylow2_sym_generators(1).is_empty());
        for n in 1..=12 {
            let gens = sylow2_sym_generators(n);
            assert_eq!(closure_order(n, &gens), 1 << factorial_two_valuation(n), "n = {n}");
        }
    }

    #[test]
    fn profile() {
        let p = DyadicProfile::new(13);
        assert_eq!(p.exponents, vec![3, 2, 0]);
        assert_eq!(p.s(), 3);
    }
}
