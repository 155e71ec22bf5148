use serde::Serialize;

use super::{full_cover, CoverElem, CoverGroup, CoverVariant, Permutation};
use crate::clifford::{is_rational_scalar, FieldElem, Mat, QuadExt, SpinRepresentation};
use crate::error::{Error, Result};

/// Anything that can evaluate words in the generators and the central `z`.
pub trait GroupModel {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    fn central(&self) -> Self::Elem;
    /// The `i`-th generator, one-based.
    fn generator(&self, i: usize) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl GroupModel for CoverGroup {
    type Elem = CoverElem;
    fn identity(&self) -> CoverElem {
        CoverGroup::identity(self)
    }
    fn central(&self) -> CoverElem {
        self.z()
    }
    fn generator(&self, i: usize) -> CoverElem {
        CoverGroup::generator(self, i).expect("relation indices are in range")
    }
    fn mul(&self, a: &CoverElem, b: &CoverElem) -> CoverElem {
        CoverGroup::mul(self, a, b)
    }
}

impl GroupModel for SpinRepresentation {
    type Elem = Mat<QuadExt>;
    fn identity(&self) -> Mat<QuadExt> {
        SpinRepresentation::identity(self)
    }
    fn central(&self) -> Mat<QuadExt> {
        SpinRepresentation::identity(self).map(|x| x.neg())
    }
    fn generator(&self, i: usize) -> Mat<QuadExt> {
        SpinRepresentation::generator(self, i).clone()
    }
    fn mul(&self, a: &Mat<QuadExt>, b: &Mat<QuadExt>) -> Mat<QuadExt> {
        a.mul(b)
    }
}

/// A letter of a relator: a generator (one-based) or the central element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Letter {
    Gen(usize),
    Z,
}

/// `lhs = rhs` as words.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub id: String,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

fn rel(id: String, lhs: Vec<Letter>, rhs: Vec<Letter>) -> Relation {
    Relation { id, lhs, rhs }
}

/// Every defining relation of the chosen presentation of `S̃ₙ^±`, plus
/// centrality of `z` for the minus cover (implied there, checked anyway).
pub fn relations(n: usize, variant: CoverVariant) -> Vec<Relation> {
    use Letter::{Gen, Z};
    let g = match variant {
        CoverVariant::Plus => "s",
        CoverVariant::Minus => "t",
    };
    let zero_or_z = |is_z: bool| if is_z { vec![Z] } else { vec![] };
    let minus = variant == CoverVariant::Minus;
    let mut out = vec![rel("z^2=1".into(), vec![Z, Z], vec![])];
    for i in 1..n {
        out.push(rel(format!("{g}{i}^2={}", if minus { "z" } else { "1" }), vec![Gen(i), Gen(i)], zero_or_z(minus)));
    }
    for i in 1..n {
        out.push(rel(format!("[z,{g}{i}]=1"), vec![Z, Gen(i)], vec![Gen(i), Z]));
    }
    for i in 1..n {
        for j in i + 2..n {
            out.push(rel(
                format!("({g}{i}{g}{j})^2=z"),
                vec![Gen(i), Gen(j), Gen(i), Gen(j)],
                vec![Z],
            ));
        }
    }
    for i in 1..n - 1 {
        out.push(rel(
            format!("({g}{i}{g}{})^3={}", i + 1, if minus { "z" } else { "1" }),
            [Gen(i), Gen(i + 1)].repeat(3),
            zero_or_z(minus),
        ));
    }
    out
}

fn eval<M: GroupModel>(model: &M, word: &[Letter]) -> M::Elem {
    word.iter().fold(model.identity(), |acc, l| {
        let x = match *l {
            Letter::Gen(i) => model.generator(i),
            Letter::Z => model.central(),
        };
        model.mul(&acc, &x)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub id: String,
    pub passed: bool,
}

/// Evaluates both sides of every relation in `model`, and checks `z ≠ 1`.
pub fn check_relations<M: GroupModel>(model: &M, n: usize, variant: CoverVariant) -> Vec<RelationCheck> {
    let mut out: Vec<RelationCheck> = relations(n, variant)
        .into_iter()
        .map(|r| {
            let passed = eval(model, &r.lhs) == eval(model, &r.rhs);
            RelationCheck { id: r.id, passed }
        })
        .collect();
    out.push(RelationCheck { id: "z!=1".into(), passed: model.central() != model.identity() });
    out
}

/// How the group order was established.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderMethod {
    /// Full breadth-first closure of the generators.
    Closure,
    /// Coset transversals `s_j⋯s_{k-1}` of `S_{k-1}` in `S_k`, plus `z`
    /// lying in the generated group.
    Transversal,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub variant: CoverVariant,
    pub relations: Vec<RelationCheck>,
    pub order: u128,
    pub expected_order: u128,
    pub order_method: OrderMethod,
    pub passed: bool,
}

impl RelationReport {
    pub fn failures(&self) -> Vec<&str> {
        self.relations.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect()
    }
}

/// Largest degree for which the order is established by full closure.
pub const CLOSURE_MAX_N: usize = 8;

/// Default largest degree accepted by [`verify_presentation`].
pub const PRESENTATION_MAX_N: usize = 12;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Checks every relation in the cocycle model and the group order `2·n!`.
///
/// For `n ≤ 8` the order comes from closing the generators. Above that the
/// words `s_j s_{j+1}⋯s_{k-1}` (`1 ≤ j ≤ k ≤ n`) are evaluated in the cover
/// and checked to send `k` to `j` (the rightmost letter acts first). So the image of `⟨s_i⟩` in `Sₙ` has order
/// `n!`. Since `z` is a product of generators by the relations, the
/// generated group has order `2·n!`.
pub fn verify_presentation(group: &CoverGroup, max_n: usize, bound: usize) -> Result<RelationReport> {
    let spec = group.spec();
    let n = spec.n;
    if n > max_n {
        return Err(Error::Precondition(format!("presentation check limited to n ≤ {max_n}, got {n}")));
    }
    let relations = check_relations(group, n, spec.variant);
    let expected_order = 2 * factorial(n);
    let (order, order_method) = if n <= CLOSURE_MAX_N {
        (full_cover(group, bound)?.order() as u128, OrderMethod::Closure)
    } else {
        (transversal_order(group)?, OrderMethod::Transversal)
    };
    let passed = relations.iter().all(|r| r.passed) && order == expected_order;
    Ok(RelationReport { n, variant: spec.variant, relations, order, expected_order, order_method, passed })
}

fn transversal_order(group: &CoverGroup) -> Result<u128> {
    let n = group.n();
    let mut order = 1u128;
    for k in 2..=n {
        let mut images = Vec::with_capacity(k);
        for j in 1..=k {
            let word: Vec<usize> = (j..k).collect();
            let g = group.word(&word)?;
            images.push(g.perm.apply(k - 1) + 1);
        }
        images.sort_unstable();
        images.dedup();
        // every j is hit, so the orbit of k under ⟨s_1..s_{k-1}⟩ is {1..k}
        if images.len() != k || images.iter().enumerate().any(|(i, &x)| x != i + 1) {
            return Ok(order);
        }
        order *= k as u128;
    }
    // z = (s1 s3)^2 (plus) or s1^2 (minus) lies in the generated group
    let witness = match group.spec().variant {
        CoverVariant::Plus => group.word(&[1, 3, 1, 3])?,
        CoverVariant::Minus => group.word(&[1, 1])?,
    };
    if witness == group.z() {
        order *= 2;
    }
    Ok(order)
}

/// Whether `perm` is the image of a cover element under the projection.
pub fn projects_to(g: &CoverElem, perm: &Permutation) -> bool {
    g.perm == *perm
}

/// Relation check for the spin matrices, with `ρ(z) = -I` checked explicitly.
pub fn verify_spin_representation(rep: &SpinRepresentation) -> Vec<RelationCheck> {
    let variant = if rep.sign() > 0 { CoverVariant::Plus } else { CoverVariant::Minus };
    let mut checks = check_relations(rep, rep.n(), variant);
    let z = match variant {
        CoverVariant::Plus => rep.word_image(&[1, 3, 1, 3]),
        CoverVariant::Minus => rep.word_image(&[1, 1]),
    };
    let minus_identity = z.as_scalar().is_some_and(|c| is_rational_scalar(&c, -1));
    checks.push(RelationCheck { id: "rho(z)=-I".into(), passed: minus_identity });
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::CoverSpec;

    #[test]
    fn relation_counts() {
        // z², n-1 squares, n-1 centralities, C(n-2, 2) commuting pairs, n-2 braids
        let r = relations(6, CoverVariant::Plus);
        assert_eq!(r.len(), 1 + 5 + 5 + 6 + 4);
    }

    #[test]
    fn small_presentations() {
        for variant in [CoverVariant::Plus, CoverVariant::Minus] {
            let g = CoverGroup::new(CoverSpec::new(4, variant).unwrap());
            let rep = verify_presentation(&g, 12, 1 << 18).unwrap();
            assert!(rep.passed, "{:?}", rep.failures());
            assert_eq!(rep.order, 48);
        }
    }

    #[test]
    fn fault_is_detected() {
        let spec = CoverSpec::new(4, CoverVariant::Plus).unwrap();
        let s1 = Permutation::adjacent(4, 1).unwrap();
        let g = CoverGroup::new(spec).with_fault(s1.clone(), s1);
        let rep = verify_presentation(&g, 12, 1 << 18).unwrap();
        assert!(!rep.passed);
        assert!(rep.failures().contains(&"s1^2=1"));
    }
}
