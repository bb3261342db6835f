//! Correctness conditions on decorated split-sequents.
//!
//! [`relative_interpolant_conditions`] checks I1 to I3 for a sequent and a
//! candidate relative interpolant with the semantic oracle.
//! [`check_search_invariants`] checks the syntactic shape every sequent
//! reachable from an interpolation root keeps during search.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{Side, SplitSequent};
use crate::formula::{Formula, Provenance};
use crate::semantics::entails;

/// Outcome of checking I1 to I3 for one decorated sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolantConditions {
    /// `⋀Γ^L |= H ∨ ⋁Δ^L`
    pub i1: bool,
    /// `⋀Γ^R ∧ H |= ⋁Δ^R`
    pub i2: bool,
    /// `voc(H)` lies in the shared vocabulary of the two provenances.
    pub i3: bool,
}

impl InterpolantConditions {
    pub fn all(&self) -> bool {
        self.i1 && self.i2 && self.i3
    }
}

impl fmt::Display for InterpolantConditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I1={} I2={} I3={}", self.i1, self.i2, self.i3)
    }
}

pub fn relative_interpolant_conditions(s: &SplitSequent, h: &Formula) -> InterpolantConditions {
    use Provenance::{L, R};
    use Side::{Antecedent, Succedent};
    let conj = |side, p| Formula::conj(s.members(side, p).cloned());
    let disj = |side, p| Formula::disj(s.members(side, p).cloned());

    let i1 = entails(
        &conj(Antecedent, L),
        &Formula::or(h.clone(), disj(Succedent, L)),
    )
    .holds;
    let i2 = entails(
        &Formula::and(conj(Antecedent, R), h.clone()),
        &disj(Succedent, R),
    )
    .holds;
    let left = s.voc_of(L);
    let right = s.voc_of(R);
    let i3 = h
        .voc()
        .iter()
        .all(|a| left.contains(a) && right.contains(a));
    InterpolantConditions { i1, i2, i3 }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("{0} contains nh but has provenance L")]
    NhWithProvenanceL(String),
    #[error("antecedent member {0} contains nh")]
    NhInAntecedent(String),
    #[error("succedent member {0} has nh below a negation or implication")]
    NhUnderNegation(String),
    #[error("nh argument in {0} contains an implication or nested nh")]
    NhArgument(String),
    #[error("antecedent member {0} with provenance R has an unnegated atom")]
    UnguardedAtom(String),
    #[error("interpolant {0} is not an nh-NNF formula")]
    InterpolantShape(String),
    #[error("premise {premise} does not weigh less than {conclusion}")]
    WeightIncrease { conclusion: String, premise: String },
}

/// True if every `nh` in `f` sits below `&` and `|` only.
fn nh_only_under_junctions(f: &Formula) -> bool {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            nh_only_under_junctions(a) && nh_only_under_junctions(b)
        }
        Formula::Nh(_) => true,
        other => !other.contains_nh(),
    }
}

fn nh_arguments_plain(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => true,
        Formula::Nh(a) => !a.contains_imp() && !a.contains_nh(),
        Formula::Not(a) => nh_arguments_plain(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            nh_arguments_plain(a) && nh_arguments_plain(b)
        }
    }
}

fn atoms_guarded(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => false,
        Formula::Falsum | Formula::Verum | Formula::Not(_) => true,
        Formula::Nh(a) => atoms_guarded(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            atoms_guarded(a) && atoms_guarded(b)
        }
    }
}

/// Checks the shape invariants on the members of one sequent.
pub fn check_search_invariants(s: &SplitSequent) -> Result<(), InvariantViolation> {
    for m in s.antecedent() {
        let shown = || m.to_string();
        if m.formula.contains_nh() {
            return Err(if m.provenance == Provenance::L {
                InvariantViolation::NhWithProvenanceL(shown())
            } else {
                InvariantViolation::NhInAntecedent(shown())
            });
        }
        if m.provenance == Provenance::R && !atoms_guarded(&m.formula) {
            return Err(InvariantViolation::UnguardedAtom(shown()));
        }
    }
    for m in s.succedent() {
        if !m.formula.contains_nh() {
            continue;
        }
        let shown = || m.to_string();
        if m.provenance == Provenance::L {
            return Err(InvariantViolation::NhWithProvenanceL(shown()));
        }
        if !nh_only_under_junctions(&m.formula) {
            return Err(InvariantViolation::NhUnderNegation(shown()));
        }
        if !nh_arguments_plain(&m.formula) {
            return Err(InvariantViolation::NhArgument(shown()));
        }
    }
    Ok(())
}
