use std::collections::VecDeque;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Default cap on the number of elements produced by a closure.
pub const DEFAULT_SIZE_BOUND: usize = 1 << 18;

/// A finite group given by its elements, a generating set and the right
/// Cayley table of the generators.
///
/// Elements are sorted by `E`'s order. Every element also stores a
/// shortest word in the generators, so a general product `a·b` is a walk of
/// the Cayley graph from `a` along the word of `b`.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable<E> {
    elements: Vec<E>,
    index: FxHashMap<E, u32>,
    generators: Vec<u32>,
    right: Vec<u32>,
    words: Vec<Box<[u8]>>,
    identity: u32,
    inverses: Vec<u32>,
}

impl<E: Clone + Eq + Hash + Ord> FiniteGroupTable<E> {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn generate(
        gens: &[E],
        identity: E,
        mul: impl Fn(&E, &E) -> E,
        bound: usize,
    ) -> Result<Self> {
        assert!(gens.len() < 256, "at most 255 generators");
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: FxHashMap<E, u32> = FxHashMap::default();
        index.insert(identity, 0);
        let mut parent: Vec<(u32, u8)> = vec![(u32::MAX, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(g) = queue.pop_front() {
            for (j, x) in gens.iter().enumerate() {
                let h = mul(&elems[g as usize], x);
                let idx = match index.get(&h) {
                    Some(&i) => i,
                    None => {
                        if elems.len() >= bound {
                            return Err(Error::SizeBound { bound });
                        }
                        let i = elems.len() as u32;
                        index.insert(h.clone(), i);
                        elems.push(h);
                        parent.push((g, j as u8));
                        queue.push_back(i);
                        i
                    }
                };
                right.push(idx);
            }
            debug_assert_eq!(right.len(), (g as usize + 1) * k);
        }

        let mut words: Vec<Box<[u8]>> = Vec::with_capacity(elems.len());
        for i in 0..elems.len() {
            let w = match parent[i] {
                (u32::MAX, _) => Box::default(),
                (p, j) => {
                    let mut w = words[p as usize].to_vec();
                    w.push(j);
                    w.into_boxed_slice()
                }
            };
            words.push(w);
        }

        // relabel in canonical order
        let mut order: Vec<u32> = (0..elems.len() as u32).collect();
        order.sort_by(|&a, &b| elems[a as usize].cmp(&elems[b as usize]));
        let mut new_of = vec![0u32; elems.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        let elements: Vec<E> = order.iter().map(|&o| elems[o as usize].clone()).collect();
        let mut new_right = vec![0u32; right.len()];
        for old in 0..elems.len() {
            for j in 0..k {
                new_right[new_of[old] as usize * k + j] = new_of[right[old * k + j] as usize];
            }
        }
        let new_words = order.iter().map(|&o| words[o as usize].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let generators = gens.iter().map(|_| 0).collect::<Vec<_>>();
        let mut t = FiniteGroupTable {
            elements,
            index,
            generators,
            right: new_right,
            words: new_words,
            identity: new_of[0],
            inverses: Vec::new(),
        };
        t.generators = gens.iter().map(|g| t.index[g]).collect();
        t.inverses = t.compute_inverses();
        Ok(t)
    }

    fn compute_inverses(&self) -> Vec<u32> {
        let gen_inv: Vec<u32> = self
            .generators
            .iter()
            .map(|&g| {
                let mut prev = self.identity;
                let mut x = g;
                while x != self.identity {
                    prev = x;
                    x = self.mul(x, g);
                }
                prev
            })
            .collect();
        (0..self.order())
            .map(|g| {
                self.words[g]
                    .iter()
                    .rev()
                    .fold(self.identity, |acc, &j| self.mul(acc, gen_inv[j as usize]))
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    /// Indices of the generators, in the order they were given.
    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }

    /// A shortest word for element `g` in the generators (indices into
    /// [`FiniteGroupTable::generators`]).
    pub fn word(&self, g: usize) -> &[u8] {
        &self.words[g]
    }

    /// `g · generator_j`.
    pub fn mul_gen(&self, g: usize, j: usize) -> usize {
        self.right[g * self.generators.len() + j] as usize
    }

    /// `a · b` by index.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let k = self.generators.len();
        self.words[b as usize]
            .iter()
            .fold(a, |x, &j| self.right[x as usize * k + j as usize])
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul(a as u32, b as u32) as usize
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g] as usize
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g as u32;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g as u32);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn commutes_with_generators(&self, g: usize) -> bool {
        let g = g as u32;
        (0..self.generators.len()).all(|j| {
            self.right[g as usize * self.generators.len() + j] == self.mul(self.generators[j], g)
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&g| self.commutes_with_generators(g as usize))
    }

    /// Indices of central elements.
    pub fn center_indices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.commutes_with_generators(g)).collect()
    }

    /// The center as a group in its own right.
    pub fn center(&self) -> FiniteGroupTable<E> {
        let members = self.center_indices();
        self.subgroup_from_members(&members)
            .expect("the center is no larger than the group")
    }

    /// Indices of the subgroup generated by the given elements.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity()] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for &x in gens {
                let h = self.mul(g, x as u32);
                if !member[h as usize] {
                    member[h as usize] = true;
                    queue.push_back(h);
                }
            }
        }
        (0..self.order()).filter(|&g| member[g]).collect()
    }

    /// A small generating set for the subgroup whose elements are `members`
    /// (which must be closed under multiplication), chosen greedily with
    /// elements of larger order first.
    pub fn small_generating_set(&self, members: &[usize]) -> Vec<usize> {
        let mut candidates: Vec<(usize, usize)> =
            members.iter().map(|&g| (self.element_order(g), g)).collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut have = vec![false; self.order()];
        have[self.identity()] = true;
        let mut count = 1;
        for (_, g) in candidates {
            if count == members.len() {
                break;
            }
            if !have[g] {
                gens.push(g);
                let span = self.generated_by(&gens);
                count = span.len();
                for h in span {
                    have[h] = true;
                }
            }
        }
        gens
    }

    /// The subgroup on `members`, generated by a greedy small generating set.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<FiniteGroupTable<E>> {
        let gens = self.small_generating_set(members);
        self.subgroup(&gens)
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Result<FiniteGroupTable<E>> {
        let gen_elems: Vec<E> = gens.iter().map(|&g| self.elements[g].clone()).collect();
        FiniteGroupTable::generate(
            &gen_elems,
            self.elements[self.identity()].clone(),
            |a, b| {
                let (ia, ib) = (self.index[a], self.index[b]);
                self.elements[self.mul(ia, ib) as usize].clone()
            },
            self.order(),
        )
    }

    /// `x⁻¹ g x`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        let gx = self.mul(g as u32, x as u32);
        self.mul(self.inverses[x], gx) as usize
    }

    /// Conjugacy classes as sorted index lists; the identity class comes
    /// first, the rest are ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![u32::MAX; self.order()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut starts: Vec<usize> = vec![self.identity()];
        starts.extend((0..self.order()).filter(|&g| g != self.identity()));
        for g in starts {
            if class_of[g] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![g];
            class_of[g] = id;
            let mut queue = VecDeque::from([g]);
            while let Some(h) = queue.pop_front() {
                for &x in &self.generators {
                    let c = self.conjugate(h, x as usize);
                    if class_of[c] == u32::MAX {
                        class_of[c] = id;
                        members.push(c);
                        queue.push_back(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Relabels elements through `f`, which must be injective.
    pub fn map_elements<F: Clone + Eq + Hash + Ord>(
        &self,
        f: impl Fn(&E) -> F,
    ) -> Result<FiniteGroupTable<F>> {
        let mapped: Vec<F> = self.elements.iter().map(&f).collect();
        let index: FxHashMap<F, u32> =
            mapped.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        if index.len() != mapped.len() {
            return Err(Error::InvalidArgument("relabeling is not injective".into()));
        }
        let gens: Vec<F> = self.generators.iter().map(|&g| mapped[g as usize].clone()).collect();
        FiniteGroupTable::generate(
            &gens,
            mapped[self.identity()].clone(),
            |a, b| mapped[self.mul(index[a], index[b]) as usize].clone(),
            self.order(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: u32) -> FiniteGroupTable<u32> {
        FiniteGroupTable::generate(&[1], 0, |a, b| (a + b) % m, 1000).unwrap()
    }

    #[test]
    fn cyclic_group_basics() {
        let g = cyclic(12);
        assert_eq!(g.order(), 12);
        assert_eq!(g.exponent(), 12);
        assert!(g.is_abelian());
        assert_eq!(g.center().order(), 12);
        assert_eq!(g.conjugacy_classes().len(), 12);
        for a in 0..12 {
            assert_eq!(g.mul_idx(a, g.inv(a)), g.identity());
        }
        assert_eq!(g.generated_by(&[g.index_of(&4).unwrap()]).len(), 3);
    }

    #[test]
    fn size_bound() {
        let r = FiniteGroupTable::generate(&[1u32], 0, |a, b| (a + b) % 100, 10);
        assert!(matches!(r, Err(Error::SizeBound { bound: 10 })));
    }
}
