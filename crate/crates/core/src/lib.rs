//! Exact computations for the Schur double covers `S̃ₙ^±` and `Ãₙ`.
//!
//! - [`clifford`]: Clifford algebras over `Z[1/2, √2]`, lifts of
//!   transpositions, the basic spin representation.
//! - [`covers`]: the covers as cocycle-twisted permutation groups, their
//!   Sylow 2-subgroups and presentation checks.
//! - [`chartab`]: character degrees and central signs (Dixon–Schneider).
//! - [`edcalc`]: essential dimension at 2 and the interval bounds.
//! - [`qforms`]: quadratic forms over `Q`, Hasse invariants, trace forms.
//! - [`cli`]: the `schur-ed` command line.
//!
//! ```
//! use schur_ed::covers::{CoverGroup, CoverSpec, CoverVariant};
//!
//! let g = CoverGroup::new(CoverSpec::new(5, CoverVariant::Minus).unwrap());
//! let s1 = g.generator(1).unwrap();
//! assert_eq!(g.mul(&s1, &s1), g.z());
//! ```

pub mod chartab;
pub mod cli;
pub mod clifford;
pub mod covers;
pub mod edcalc;
pub mod error;
pub mod qforms;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    pub mod clifford {}
    #[doc = include_str!("../../../book/src/covers.md")]
    pub mod covers {}
    #[doc = include_str!("../../../book/src/characters.md")]
    pub mod characters {}
    #[doc = include_str!("../../../book/src/essential-dimension.md")]
    pub mod essential_dimension {}
    #[doc = include_str!("../../../book/src/quadratic-forms.md")]
    pub mod quadratic_forms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
