//! Split-sequent calculus for HT with `nh`, decorated with relative
//! interpolants in the style of Maehara.
//!
//! A split-sequent `Γ^L, Γ^R => Δ^L, Δ^R` labels every member with the
//! interpolation argument it descends from. Members are kept duplicate-free;
//! order is insertion order and decides tie-breaks during search.

pub mod conditions;
pub mod rules;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, Provenance};
use crate::parser::{parse, ParseError};

pub use conditions::{
    check_search_invariants, relative_interpolant_conditions, InterpolantConditions,
    InvariantViolation,
};
pub use rules::{
    axiom_instances, axiom_match, axiom_match_with, expand, member_status, Ax2Variant, Axiom,
    Combiner, Connective, Expansion, MemberStatus, Rule, RuleId,
};
pub use search::{
    leaf_countermodel, prove, prove_with, Failure, ProofNode, SearchConfig, SearchOutcome,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("{formula} in the {side} is not reducible")]
    NotReducible { formula: Formula, side: Side },
    #[error("no rule applies to {formula}^{provenance} in the {side}")]
    NoRule {
        formula: Formula,
        provenance: Provenance,
        side: Side,
    },
    #[error("position {0:?} is out of range")]
    BadPosition(Position),
    #[error("root sequent rejected: {0}")]
    Precondition(String),
    #[error("search invariant violated: {0}")]
    Invariant(#[from] InvariantViolation),
    #[error("sequent {0} still has reducible members")]
    LeafReducible(String),
    #[error("sequent {0} is an axiom instance")]
    LeafIsAxiom(String),
}

/// A sequent member with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledFormula {
    #[serde(rename = "f")]
    pub formula: Formula,
    #[serde(rename = "prov")]
    pub provenance: Provenance,
}

impl LabeledFormula {
    pub fn new(formula: Formula, provenance: Provenance) -> Self {
        LabeledFormula {
            formula,
            provenance,
        }
    }

    pub fn left(formula: Formula) -> Self {
        LabeledFormula::new(formula, Provenance::L)
    }

    pub fn right(formula: Formula) -> Self {
        LabeledFormula::new(formula, Provenance::R)
    }
}

impl fmt::Display for LabeledFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.formula {
            Formula::Or(..) | Formula::And(..) | Formula::Imp(..) => {
                write!(f, "({})^{}", self.formula, self.provenance)
            }
            other => write!(f, "{other}^{}", self.provenance),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    #[serde(rename = "ant")]
    Antecedent,
    #[serde(rename = "suc")]
    Succedent,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Antecedent => "antecedent",
            Side::Succedent => "succedent",
        })
    }
}

/// Index of a member within one side of a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Position {
    pub side: Side,
    pub index: usize,
}

impl Position {
    pub fn ant(index: usize) -> Self {
        Position {
            side: Side::Antecedent,
            index,
        }
    }

    pub fn suc(index: usize) -> Self {
        Position {
            side: Side::Succedent,
            index,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SplitSequent {
    #[serde(rename = "ant")]
    antecedent: Vec<LabeledFormula>,
    #[serde(rename = "suc")]
    succedent: Vec<LabeledFormula>,
}

impl SplitSequent {
    pub fn new() -> Self {
        SplitSequent::default()
    }

    /// The interpolation root `a^L => b^R`.
    pub fn root(a: Formula, b: Formula) -> Self {
        SplitSequent::new()
            .with_antecedent(LabeledFormula::left(a))
            .with_succedent(LabeledFormula::right(b))
    }

    pub fn antecedent(&self) -> &[LabeledFormula] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &[LabeledFormula] {
        &self.succedent
    }

    pub fn side(&self, side: Side) -> &[LabeledFormula] {
        match side {
            Side::Antecedent => &self.antecedent,
            Side::Succedent => &self.succedent,
        }
    }

    pub fn get(&self, pos: Position) -> Option<&LabeledFormula> {
        self.side(pos.side).get(pos.index)
    }

    /// Adds a member unless an identical one is already present.
    pub fn push(&mut self, side: Side, member: LabeledFormula) {
        let list = match side {
            Side::Antecedent => &mut self.antecedent,
            Side::Succedent => &mut self.succedent,
        };
        if !list.contains(&member) {
            list.push(member);
        }
    }

    pub fn with_antecedent(mut self, member: LabeledFormula) -> Self {
        self.push(Side::Antecedent, member);
        self
    }

    pub fn with_succedent(mut self, member: LabeledFormula) -> Self {
        self.push(Side::Succedent, member);
        self
    }

    pub(crate) fn with(mut self, side: Side, formula: Formula, provenance: Provenance) -> Self {
        self.push(side, LabeledFormula::new(formula, provenance));
        self
    }

    /// The sequent with the member at `pos` removed.
    pub fn without(&self, pos: Position) -> SplitSequent {
        let mut out = self.clone();
        match pos.side {
            Side::Antecedent => out.antecedent.remove(pos.index),
            Side::Succedent => out.succedent.remove(pos.index),
        };
        out
    }

    pub fn contains(&self, side: Side, formula: &Formula, provenance: Provenance) -> bool {
        self.side(side)
            .iter()
            .any(|m| m.provenance == provenance && &m.formula == formula)
    }

    /// Members of one side with the given provenance.
    pub fn members(&self, side: Side, provenance: Provenance) -> impl Iterator<Item = &Formula> {
        self.side(side)
            .iter()
            .filter(move |m| m.provenance == provenance)
            .map(|m| &m.formula)
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.antecedent.len())
            .map(Position::ant)
            .chain((0..self.succedent.len()).map(Position::suc))
    }

    pub fn weight(&self) -> u64 {
        self.antecedent
            .iter()
            .chain(&self.succedent)
            .map(|m| m.formula.weight())
            .sum()
    }

    pub fn voc(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.antecedent.iter().chain(&self.succedent) {
            m.formula.collect_atoms(&mut out);
        }
        out
    }

    /// Vocabulary of the members with one provenance, on both sides.
    pub fn voc_of(&self, provenance: Provenance) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.antecedent.iter().chain(&self.succedent) {
            if m.provenance == provenance {
                m.formula.collect_atoms(&mut out);
            }
        }
        out
    }

    /// Formula reading `⋀Γ -> ⋁Δ` of the whole sequent.
    pub fn to_formula(&self) -> Formula {
        Formula::imp(
            Formula::conj(self.antecedent.iter().map(|m| m.formula.clone())),
            Formula::disj(self.succedent.iter().map(|m| m.formula.clone())),
        )
    }

    /// Parses `p^L, ~q^R => (r | s)^R`. Members without a suffix default to `L`
    /// in the antecedent and `R` in the succedent.
    pub fn parse(text: &str) -> Result<SplitSequent, ParseError> {
        let (ant, suc) = text.split_once("=>").ok_or_else(|| ParseError {
            position: 0,
            message: "expected '=>'".into(),
        })?;
        let mut out = SplitSequent::new();
        let offset = ant.len() + 2;
        for (side, part, base, default) in [
            (Side::Antecedent, ant, 0, Provenance::L),
            (Side::Succedent, suc, offset, Provenance::R),
        ] {
            let mut start = base;
            for item in part.split(',') {
                let here = start;
                start += item.len() + 1;
                if item.trim().is_empty() {
                    continue;
                }
                let (text, prov) = match item.rfind('^') {
                    Some(i) => {
                        let prov = match item[i + 1..].trim() {
                            "L" => Provenance::L,
                            "R" => Provenance::R,
                            other => {
                                return Err(ParseError {
                                    position: here + i + 1,
                                    message: format!("unknown provenance {other:?}"),
                                })
                            }
                        };
                        (&item[..i], prov)
                    }
                    None => (item, default),
                };
                let formula = parse(text).map_err(|e| ParseError {
                    position: here + e.position,
                    message: e.message,
                })?;
                out.push(side, LabeledFormula::new(formula, prov));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SplitSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ms: &[LabeledFormula]| {
            ms.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        let ant = join(&self.antecedent);
        let suc = join(&self.succedent);
        match (ant.is_empty(), suc.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {suc}"),
            (false, true) => write!(f, "{ant} =>"),
            (false, false) => write!(f, "{ant} => {suc}"),
        }
    }
}
