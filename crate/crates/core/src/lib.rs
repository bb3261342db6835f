//! Craig interpolation for the logic of here-and-there (Gödel's G3).
//!
//! Given HT formulas `a |= b`, [`craig_interpolant`] searches a proof of the
//! split-sequent `a^L => b^R`, reads an interpolant in nh-NNF off the proof
//! and strengthens it into an HT formula `c` with `a |= c`, `c |= b` and
//! `voc(c) ⊆ voc(a) ∩ voc(b)`. When `a` does not entail `b` the failed
//! search yields a countermodel instead.
//!
//! ```
//! use htcraig::{craig_interpolant, parse, Status};
//!
//! let r = craig_interpolant(&parse("p & q").unwrap(), &parse("p | r").unwrap()).unwrap();
//! assert_eq!(r.status, Status::Entails);
//! assert_eq!(r.interpolant.unwrap().to_string(), "p");
//! ```

pub mod calculus;
pub mod cli;
pub mod formula;
pub mod interpolation;
pub mod normalize;
pub mod parser;
pub mod semantics;

pub use formula::{Formula, FormulaClass, Provenance};
pub use interpolation::{
    craig_interpolant, craig_interpolant_with, stage1, strengthen, verify_interpolant,
    verify_pipeline, InterpolationError, InterpolationResult, Stage1, Status, VerificationReport,
};
pub use parser::{parse, ParseError};
pub use semantics::{entails, equivalent, eval, valid, Assignment, TruthValue};
