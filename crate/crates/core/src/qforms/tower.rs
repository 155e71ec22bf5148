use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::arith::is_rational_square;
use super::form::QuadFormQ;
use super::hilbert::BrauerClass2;
use crate::error::{Error, Result};

/// One quadratic step of a splitting tower for the pair `⟨a, b⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct TowerStep {
    pub a: String,
    pub b: String,
    /// `t = -a/b`; the step adjoins `√t`.
    pub adjoined: String,
    /// `t` is already a square, or minus a square (trivial once `√-1` is present).
    pub trivial: bool,
    /// `a·1² + b·(√t)² = 0` checked exactly.
    pub witness_ok: bool,
    /// Rewriting `⟨a, b⟩ → ⟨a, -a⟩ → ⟨1, -1⟩ → ⟨1, 1⟩`.
    pub derivation: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub dim: usize,
    pub steps: Vec<TowerStep>,
    /// Number of nontrivial quadratic steps, as a power of two.
    pub degree: u64,
    /// `2^⌊n/2⌋`.
    pub degree_bound: u64,
    /// Last entry for odd dimension; the split form is `2m⟨1⟩ ⊕ ⟨aₙ⟩`.
    pub residual: Option<String>,
    /// The last rewriting step uses `⟨1, -1⟩ ≅ ⟨1, 1⟩`, valid only over a
    /// field containing `√-1`, which `Q` does not.
    pub assumes_sqrt_minus_one: bool,
    /// `w₂(2m⟨1⟩ ⊕ ⟨aₙ⟩) = 0` recomputed over `Q`.
    pub residual_w2_zero: bool,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.witness_ok)
            && self.residual_w2_zero
            && self.degree <= self.degree_bound
    }
}

fn step(a: &BigRational, b: &BigRational) -> TowerStep {
    let t = -(a / b);
    let trivial = is_rational_square(&t) || is_rational_square(&-&t);
    let witness_ok = (a + b * &t).is_zero();
    let derivation = vec![
        format!("<{a}, {b}>"),
        format!("<{a}, {}>  since {b} = -{a}/({t})", -a),
        "<1, -1>".to_string(),
        "<1, 1>  using sqrt(-1)".to_string(),
    ];
    TowerStep {
        a: a.to_string(),
        b: b.to_string(),
        adjoined: t.to_string(),
        trivial,
        witness_ok,
        derivation,
    }
}

/// Pairs the entries `⟨a₁, a₂⟩, ⟨a₃, a₄⟩, …` and adjoins `√(-a_{2i-1}/a_{2i})`
/// for each, so that over the top of the tower (with `√-1`) the form becomes
/// `n⟨1⟩` or `2m⟨1⟩ ⊕ ⟨aₙ⟩`.
pub fn splitting_tower(q: &QuadFormQ) -> Result<TowerReport> {
    let e = q.entries();
    let steps: Vec<TowerStep> = e.chunks_exact(2).map(|p| step(&p[0], &p[1])).collect();
    let nontrivial = steps.iter().filter(|s| !s.trivial).count() as u32;
    let residual = if e.len() % 2 == 1 { e.last().cloned() } else { None };
    let mut split = vec![BigRational::one(); 2 * steps.len()];
    split.extend(residual.iter().cloned());
    let residual_w2_zero = QuadFormQ::new(split)?.hasse_invariant()?.is_zero();
    Ok(TowerReport {
        dim: e.len(),
        steps,
        degree: 1u64 << nontrivial,
        degree_bound: 1u64 << (e.len() / 2),
        residual: residual.map(|r| r.to_string()),
        assumes_sqrt_minus_one: true,
        residual_w2_zero,
    })
}

/// For `q = ⟨a₁, …, aₙ⟩` of trivial discriminant, checks
/// `w₂(q) = w₂(⟨a₂, …, aₙ⟩) + (a₁, -1)`.
///
/// The last term comes from `(a₁, a₂⋯aₙ) = (a₁, a₁) = (a₁, -1)`. It
/// vanishes over fields containing `√-1` but not over `Q`.
pub fn lemma51b_identity(q: &QuadFormQ) -> Result<bool> {
    if q.dim() == 0 || !is_rational_square(&q.determinant()) {
        return Err(Error::Precondition("form must have trivial discriminant".into()));
    }
    let e = q.entries();
    let rest = QuadFormQ::new(e[1..].to_vec())?;
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let rhs = rest.hasse_invariant()?.add(&BrauerClass2::symbol(&e[0], &minus_one)?);
    Ok(q.hasse_invariant()? == rhs)
}
