//! Character degrees and central signs by the Dixon–Schneider method over a
//! prime field.
//!
//! Degrees and the signs `χ(z)/χ(1)` are exact. Full character values are
//! only known mod `p`; the field over which a representation is defined is
//! not determined here.

mod dixon;
pub mod modp;

pub use dixon::{
    count_min_faithful, dixon_character_table, min_faithful_irrep, min_faithful_irrep_dim,
    CharTable, DixonOptions, DixonPrime, DEFAULT_PRIME_BOUND,
};
