//! End-to-end interpolation: proof search yields an nh-NNF interpolant,
//! which is then strengthened into an HT interpolant and checked against
//! the semantic oracle.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::calculus::{
    prove_with, CalculusError, Failure, ProofNode, SearchConfig, SearchOutcome, SplitSequent,
};
use crate::formula::Formula;
use crate::normalize::{
    body_normalize, simplify, simplify_constants, to_cnf, to_nh_nnf, NormalizeError,
};
use crate::semantics::{entails, eval, Assignment, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error("the {which} argument is not an HT formula: {formula}")]
    NotHt {
        which: &'static str,
        formula: Formula,
    },
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("proof search and the semantic oracle disagree: {0}")]
    OracleDisagreement(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Entails,
    NotEntails,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Entails => "entails",
            Status::NotEntails => "does not entail",
        })
    }
}

/// Oracle checks of a candidate interpolant `c` for `a |= b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub a_entails_c: bool,
    pub c_entails_b: bool,
    /// Whether `c` entails the stage-1 interpolant; true when there is none.
    pub c_entails_cprime: bool,
    pub voc_ok: bool,
    /// Refutes the first failing entailment, if any.
    pub countermodel: Option<Assignment>,
}

impl VerificationReport {
    pub fn all(&self) -> bool {
        self.a_entails_c && self.c_entails_b && self.c_entails_cprime && self.voc_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolationResult {
    pub status: Status,
    /// The HT interpolant `C`.
    pub interpolant: Option<Formula>,
    /// The nh-NNF interpolant `C'` read off the proof.
    pub stage1: Option<Formula>,
    pub countermodel: Option<Assignment>,
    pub verification: Option<VerificationReport>,
    pub proof: Option<ProofNode>,
    /// The body-normalized right argument the proof was searched for.
    pub normalized_b: Formula,
}

/// Result of proof search on `a^L => b'^R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage1 {
    Proved {
        cprime: Formula,
        proof: ProofNode,
        normalized_b: Formula,
    },
    Refuted {
        failure: Failure,
        normalized_b: Formula,
    },
}

fn require_ht(which: &'static str, f: &Formula) -> Result<(), InterpolationError> {
    if f.is_ht() {
        Ok(())
    } else {
        Err(InterpolationError::NotHt {
            which,
            formula: f.clone(),
        })
    }
}

pub fn stage1(a: &Formula, b: &Formula) -> Result<Stage1, InterpolationError> {
    stage1_with(a, b, &SearchConfig::default())
}

/// Searches `a^L => body_normalize(b)^R` and reads an nh-NNF interpolant off
/// the proof, or returns the failed leaf.
pub fn stage1_with(
    a: &Formula,
    b: &Formula,
    config: &SearchConfig,
) -> Result<Stage1, InterpolationError> {
    require_ht("left", a)?;
    require_ht("right", b)?;
    let normalized_b = body_normalize(b)?;
    let root = SplitSequent::root(a.clone(), normalized_b.clone());
    Ok(match prove_with(&root, config)? {
        SearchOutcome::Proof(proof) => Stage1::Proved {
            cprime: to_nh_nnf(&simplify_constants(&proof.interpolant))?,
            proof,
            normalized_b,
        },
        SearchOutcome::Failure(failure) => Stage1::Refuted {
            failure,
            normalized_b,
        },
    })
}

/// Turns an nh-NNF formula `C'` into an HT formula `C` with `C |= C'`.
///
/// Each clause `nh(E1) | ... | nh(Em) | F` of `C'` becomes
/// `E1 & ... & Em -> F`. Whenever an HT formula entails `C'` it also
/// entails `C`.
pub fn strengthen(cprime: &Formula) -> Result<Formula, NormalizeError> {
    let clauses = to_cnf(cprime)?;
    Ok(Formula::conj(clauses.into_iter().map(|clause| {
        let consequent = Formula::disj(clause.rest);
        if clause.nh_atoms.is_empty() {
            consequent
        } else {
            let premise = Formula::conj(clause.nh_atoms.iter().map(|a| Formula::atom(a)));
            Formula::imp(premise, consequent)
        }
    })))
}

pub fn craig_interpolant(
    a: &Formula,
    b: &Formula,
) -> Result<InterpolationResult, InterpolationError> {
    craig_interpolant_with(a, b, &SearchConfig::default())
}

/// Computes a Craig interpolant of `a |= b`, or a countermodel when `a`
/// does not entail `b`. Both outcomes are cross-checked with the oracle.
pub fn craig_interpolant_with(
    a: &Formula,
    b: &Formula,
    config: &SearchConfig,
) -> Result<InterpolationResult, InterpolationError> {
    match stage1_with(a, b, config)? {
        Stage1::Proved {
            cprime,
            proof,
            normalized_b,
        } => {
            let c = simplify(&strengthen(&cprime)?);
            let report = verify_pipeline(a, &c, b, &cprime);
            Ok(InterpolationResult {
                status: Status::Entails,
                interpolant: Some(c),
                stage1: Some(cprime),
                countermodel: None,
                verification: Some(report),
                proof: Some(proof),
                normalized_b,
            })
        }
        Stage1::Refuted {
            failure,
            normalized_b,
        } => {
            let mut v = failure.countermodel;
            for atom in b.voc() {
                if v.get(&atom).is_err() {
                    v.set(atom, TruthValue::F);
                }
            }
            let refutes = eval(a, &v).ok() > eval(b, &v).ok();
            if !refutes {
                let oracle = entails(a, b);
                return Err(InterpolationError::OracleDisagreement(
                    match oracle.countermodel {
                        Some(w) => {
                            format!("search countermodel {v} is wrong; the oracle found {w}")
                        }
                        None => format!("search failed but {a} entails {b}"),
                    },
                ));
            }
            Ok(InterpolationResult {
                status: Status::NotEntails,
                interpolant: None,
                stage1: None,
                countermodel: Some(v),
                verification: None,
                proof: None,
                normalized_b,
            })
        }
    }
}

/// Checks `a |= c`, `c |= b` and `voc(c) ⊆ voc(a) ∩ voc(b)`.
pub fn verify_interpolant(a: &Formula, c: &Formula, b: &Formula) -> VerificationReport {
    verify(a, c, b, None)
}

/// As [`verify_interpolant`], additionally checking `c |= cprime`.
pub fn verify_pipeline(
    a: &Formula,
    c: &Formula,
    b: &Formula,
    cprime: &Formula,
) -> VerificationReport {
    verify(a, c, b, Some(cprime))
}

fn verify(a: &Formula, c: &Formula, b: &Formula, cprime: Option<&Formula>) -> VerificationReport {
    let left = entails(a, c);
    let right = entails(c, b);
    let strong = cprime.map(|cp| entails(c, cp));
    let va = a.voc();
    let vb = b.voc();
    let voc_ok = c.voc().iter().all(|x| va.contains(x) && vb.contains(x));
    let countermodel = left
        .countermodel
        .clone()
        .or_else(|| right.countermodel.clone())
        .or_else(|| strong.as_ref().and_then(|s| s.countermodel.clone()));
    VerificationReport {
        a_entails_c: left.holds,
        c_entails_b: right.holds,
        c_entails_cprime: strong.is_none_or(|s| s.holds),
        voc_ok,
        countermodel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::semantics::equivalent;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn stage1_examples() {
        let Stage1::Proved { cprime, .. } = stage1(&f("q"), &f("p -> q")).unwrap() else {
            panic!("q entails p -> q");
        };
        assert_eq!(cprime, f("q & q"));

        let Stage1::Proved { cprime, .. } = stage1(&f("p -> q"), &f("p -> q")).unwrap() else {
            panic!("identity");
        };
        assert!(cprime.is_nh_nnf());
        let expected = f("(~p | nh(p) | q) & (~p | ~~q | q)");
        assert!(equivalent(&cprime, &expected).holds, "{cprime}");

        let Stage1::Proved { cprime, .. } = stage1(&f("q & ~q"), &f("r")).unwrap() else {
            panic!("contradiction entails anything");
        };
        assert_eq!(cprime, Formula::Falsum);
    }

    #[test]
    fn strengthen_examples() {
        assert_eq!(strengthen(&f("nh(e) | f")).unwrap(), f("e -> f"));
        assert_eq!(strengthen(&f("f")).unwrap(), f("f"));
        assert_eq!(strengthen(&f("nh(a)")).unwrap(), f("a -> false"));
        assert_eq!(strengthen(&f("true")).unwrap(), f("true"));
        assert!(strengthen(&f("p -> q")).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let r = craig_interpolant(&f("p & q"), &f("p | r")).unwrap();
        assert_eq!(r.status, Status::Entails);
        let c = r.interpolant.unwrap();
        assert!(r.verification.unwrap().all());
        assert!(equivalent(&c, &f("p")).holds, "{c}");

        let r = craig_interpolant(&f("~~p"), &f("p")).unwrap();
        assert_eq!(r.status, Status::NotEntails);
        assert_eq!(r.countermodel, Some(Assignment::parse("p=NF").unwrap()));

        let r = craig_interpolant(&f("p"), &f("p")).unwrap();
        assert_eq!(r.interpolant, Some(f("p")));

        let r = craig_interpolant(&f("q & ~q"), &f("r")).unwrap();
        assert_eq!(r.interpolant, Some(Formula::Falsum));
        assert!(r.verification.unwrap().all());

        assert!(matches!(
            craig_interpolant(&f("nh(p)"), &f("p")),
            Err(InterpolationError::NotHt { .. })
        ));
    }

    #[test]
    fn non_normalized_right_argument() {
        let b = f("((p -> q) -> r)");
        let r = craig_interpolant(&f("r"), &b).unwrap();
        assert_eq!(r.status, Status::Entails);
        assert_ne!(r.normalized_b, b);
        assert!(r.verification.unwrap().all());
    }

    #[test]
    fn verification_examples() {
        assert!(verify_interpolant(&f("p & q"), &f("p"), &f("p | r")).all());
        let rep = verify_interpolant(&f("p"), &f("q"), &f("q | p"));
        assert!(!rep.a_entails_c);
        assert!(!rep.voc_ok);
        assert!(rep.countermodel.is_some());
        let rep = verify_interpolant(&f("p -> q"), &f("p -> q"), &f("p -> q"));
        assert!(rep.all());
    }
}
