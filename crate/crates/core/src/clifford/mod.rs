//! Clifford algebras of `±(x₁² + … + xₙ²)` with coefficients in `Z[1/2, √2]`,
//! lifts of transpositions, and the basic spin representation.

mod algebra;
mod cyclotomic;
mod dyadic;
mod spin;
mod versor;

pub use algebra::{
    lift_transposition, monomial_product, CliffordElem, CliffordSignature, SpinorVariant,
};
pub use cyclotomic::{Cyclotomic8, FieldElem, QuadExt};
pub use dyadic::DyadicRing;
pub use spin::{basic_spin_matrices, clifford_gammas, is_rational_scalar, Mat, SpinRepresentation};
pub use versor::ScaledVersor;
