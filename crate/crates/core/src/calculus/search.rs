//! Deterministic backward proof search.
//!
//! At each sequent the search closes with the first matching axiom, else
//! applies a constant rule to the leftmost constant member, else decomposes
//! the heaviest reducible member (leftmost on ties). Every retained rule is
//! invertible, so there is no backtracking: the first unprovable premise
//! makes the whole sequent unprovable.

use std::fmt::Write as _;

use serde::Serialize;

use super::conditions::{check_search_invariants, InvariantViolation};
use super::rules::{axiom_match_with, expand, member_status, Ax2Variant, MemberStatus, RuleId};
use super::{CalculusError, Position, SplitSequent};
use crate::formula::{Formula, Provenance};
use crate::normalize::is_body_normalized;
use crate::semantics::{Assignment, TruthValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub ax2: Ax2Variant,
    /// Check the shape invariants, weight decrease and interpolant class at
    /// every node. On by default in debug builds.
    pub check_invariants: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            ax2: Ax2Variant::default(),
            check_invariants: cfg!(debug_assertions),
        }
    }
}

/// A node of a decorated proof: a conclusion, the rule closing or
/// decomposing it, and its relative interpolant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofNode {
    pub rule: RuleId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal: Option<Position>,
    #[serde(rename = "sequent")]
    pub conclusion: SplitSequent,
    pub interpolant: Formula,
    pub premises: Vec<ProofNode>,
}

impl ProofNode {
    /// Number of nodes in the proof.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::size).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&ProofNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.premises.iter().rev());
        }
        out
    }

    pub fn is_axiom(&self) -> bool {
        matches!(self.rule, RuleId::Axiom(_))
    }

    /// One line per node, premises indented under their conclusion.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let _ = writeln!(
            out,
            "{:indent$}{}    [{}]  H = {}",
            "",
            self.conclusion,
            self.rule,
            self.interpolant,
            indent = 2 * depth
        );
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }
}

/// An unprovable leaf and an assignment refuting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub leaf: SplitSequent,
    pub countermodel: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proof(ProofNode),
    Failure(Failure),
}

impl SearchOutcome {
    pub fn proof(&self) -> Option<&ProofNode> {
        match self {
            SearchOutcome::Proof(p) => Some(p),
            SearchOutcome::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            SearchOutcome::Proof(_) => None,
            SearchOutcome::Failure(f) => Some(f),
        }
    }

    pub fn is_proof(&self) -> bool {
        matches!(self, SearchOutcome::Proof(_))
    }
}

pub fn prove(root: &SplitSequent) -> Result<SearchOutcome, CalculusError> {
    prove_with(root, &SearchConfig::default())
}

/// Searches for a proof of `root`.
///
/// The root must satisfy the search invariants and every member with
/// provenance `R` must be body-normalized. A failure countermodel covers the
/// whole vocabulary of the root; atoms absent from the failed leaf are `F`.
pub fn prove_with(
    root: &SplitSequent,
    config: &SearchConfig,
) -> Result<SearchOutcome, CalculusError> {
    check_search_invariants(root).map_err(|e| CalculusError::Precondition(e.to_string()))?;
    for m in root.antecedent().iter().chain(root.succedent()) {
        if m.provenance == Provenance::R && !is_body_normalized(&m.formula) {
            return Err(CalculusError::Precondition(format!(
                "{m} is not body-normalized"
            )));
        }
    }
    match search(root, config)? {
        Ok(proof) => Ok(SearchOutcome::Proof(proof)),
        Err(Failure { leaf, countermodel }) => {
            let mut full = countermodel;
            for atom in root.voc() {
                if full.get(&atom).is_err() {
                    full.set(atom, TruthValue::F);
                }
            }
            Ok(SearchOutcome::Failure(Failure {
                leaf,
                countermodel: full,
            }))
        }
    }
}

/// The member the search decomposes next, if any is reducible.
fn choose_principal(s: &SplitSequent) -> Result<Option<Position>, CalculusError> {
    let mut heaviest: Option<(Position, u64)> = None;
    let mut stuck = None;
    for pos in s.positions() {
        let m = s.get(pos).expect("position from positions()");
        match member_status(&m.formula, m.provenance, pos.side) {
            MemberStatus::Reducible(c) if c.is_constant_rule() => return Ok(Some(pos)),
            MemberStatus::Reducible(_) => {
                let w = m.formula.weight();
                if heaviest.is_none_or(|(_, best)| w > best) {
                    heaviest = Some((pos, w));
                }
            }
            MemberStatus::Stuck => {
                stuck.get_or_insert(pos);
            }
            MemberStatus::Irreducible => {}
        }
    }
    match (heaviest, stuck) {
        (Some((pos, _)), _) => Ok(Some(pos)),
        (None, Some(pos)) => {
            let m = s.get(pos).expect("position from positions()");
            Err(CalculusError::NoRule {
                formula: m.formula.clone(),
                provenance: m.provenance,
                side: pos.side,
            })
        }
        (None, None) => Ok(None),
    }
}

type Searched = Result<ProofNode, Failure>;

fn search(s: &SplitSequent, config: &SearchConfig) -> Result<Searched, CalculusError> {
    if config.check_invariants {
        check_search_invariants(s)?;
    }
    if let Some((axiom, h)) = axiom_match_with(s, config.ax2) {
        return Ok(Ok(ProofNode {
            rule: RuleId::Axiom(axiom),
            principal: None,
            conclusion: s.clone(),
            interpolant: h,
            premises: Vec::new(),
        }));
    }
    let Some(principal) = choose_principal(s)? else {
        let countermodel = leaf_countermodel(s)?;
        return Ok(Err(Failure {
            leaf: s.clone(),
            countermodel,
        }));
    };
    let expansion = expand(s, principal)?;
    if config.check_invariants {
        let w = s.weight();
        if let Some(heavy) = expansion.premises.iter().find(|p| p.weight() >= w) {
            return Err(InvariantViolation::WeightIncrease {
                conclusion: s.to_string(),
                premise: heavy.to_string(),
            }
            .into());
        }
    }
    let mut premises = Vec::with_capacity(expansion.premises.len());
    for premise in &expansion.premises {
        match search(premise, config)? {
            Ok(node) => premises.push(node),
            Err(failure) => return Ok(Err(failure)),
        }
    }
    let interpolant = expansion
        .combiner
        .combine(premises.iter().map(|p| p.interpolant.clone()).collect());
    if config.check_invariants && !interpolant.is_nh_nnf() {
        return Err(InvariantViolation::InterpolantShape(interpolant.to_string()).into());
    }
    Ok(Ok(ProofNode {
        rule: RuleId::Rule(expansion.rule),
        principal: Some(principal),
        conclusion: s.clone(),
        interpolant,
        premises,
    }))
}

/// Refutes an irreducible sequent that matches no axiom.
///
/// Per atom `a` of the sequent: `T` if `a` is in the antecedent or `nh(a)` in
/// the succedent, else `NF` if `~a` is in the succedent, else `F`.
pub fn leaf_countermodel(s: &SplitSequent) -> Result<Assignment, CalculusError> {
    for pos in s.positions() {
        let m = s.get(pos).expect("position from positions()");
        if member_status(&m.formula, m.provenance, pos.side) != MemberStatus::Irreducible {
            return Err(CalculusError::LeafReducible(s.to_string()));
        }
    }
    if let Some((axiom, _)) = axiom_match_with(s, Ax2Variant::Atom) {
        return Err(CalculusError::LeafIsAxiom(format!("{s} ({axiom})")));
    }
    let in_ant = |f: &Formula| s.antecedent().iter().any(|m| &m.formula == f);
    let in_suc = |f: &Formula| s.succedent().iter().any(|m| &m.formula == f);
    let mut v = Assignment::new();
    for atom in s.voc() {
        let a = Formula::atom(&atom);
        let value = if in_ant(&a) || in_suc(&Formula::nh(a.clone())) {
            TruthValue::T
        } else if in_suc(&Formula::not(a)) {
            TruthValue::NF
        } else {
            TruthValue::F
        };
        v.set(atom, value);
    }
    Ok(v)
}
