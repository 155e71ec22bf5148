//! Diagonal quadratic forms over `Q`: Hilbert symbols, Hasse invariants as
//! ramification sets, isotropy from local invariants, and trace forms of
//! étale algebras.

pub mod arith;
mod form;
mod hilbert;
mod poly;
mod tower;
mod trace;

pub use form::{is_local_square, same_square_class, FormSummary, QuadFormQ, SquareClass};
pub use hilbert::{brauer_index, hilbert_symbol, relevant_places, BrauerClass2, Place};
pub use poly::Poly;
pub use tower::{lemma51b_identity, splitting_tower, TowerReport, TowerStep};
pub use trace::{diagonalize, dyadic_form, EtaleAlgebraQ, TRACE_FORM_MAX_DIM};
