//! Equivalence-preserving rewrites: negation and `nh` pushing, nh-NNF,
//! body-normalization, clause form over nh-NNF and constant absorption.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("nh occurs with negative polarity in {0}")]
    NegativeNh(Formula),
    #[error("implication inside the argument of nh in {0}")]
    ImpInNh(Formula),
    #[error("nested nh in {0}")]
    NestedNh(Formula),
    #[error("implication not allowed here: {0}")]
    ContainsImp(Formula),
    #[error("expected an HT formula (no nh): {0}")]
    NotHt(Formula),
    #[error("expected an nh-NNF formula: {0}")]
    NotNhNnf(Formula),
}

type Result<T> = std::result::Result<T, NormalizeError>;

/// Pushes negations down to atoms.
///
/// Afterwards `~` is applied only to atoms and to negated atoms. Implications
/// outside any negation are kept; implications under a negation disappear.
pub fn push_negations(f: &Formula) -> Result<Formula> {
    Negations { nh_inward: false }.pos(f)
}

/// Converts an nh-formula into an equivalent nh-NNF-formula.
pub fn to_nh_nnf(f: &Formula) -> Result<Formula> {
    if f.contains_imp() {
        return Err(NormalizeError::ContainsImp(f.clone()));
    }
    Negations { nh_inward: true }.pos(f)
}

/// One recursive pass with a mode per context: plain, under `~`, under `~~`
/// and (when `nh_inward` is set) under `nh`.
struct Negations {
    nh_inward: bool,
}

impl Negations {
    fn pos(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => f.clone(),
            Formula::Not(a) => self.neg(a)?,
            Formula::Nh(a) => self.nh(a)?,
            Formula::And(a, b) => Formula::and(self.pos(a)?, self.pos(b)?),
            Formula::Or(a, b) => Formula::or(self.pos(a)?, self.pos(b)?),
            Formula::Imp(a, b) => Formula::imp(self.pos(a)?, self.pos(b)?),
        })
    }

    /// Normal form of `~f`.
    fn neg(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Atom(_) => Formula::not(f.clone()),
            Formula::Verum => Formula::Falsum,
            Formula::Falsum => Formula::Verum,
            Formula::Not(a) => self.negneg(a)?,
            Formula::Nh(_) => return Err(NormalizeError::NegativeNh(f.clone())),
            Formula::And(a, b) => Formula::or(self.neg(a)?, self.neg(b)?),
            Formula::Or(a, b) => Formula::and(self.neg(a)?, self.neg(b)?),
            Formula::Imp(a, b) => Formula::and(self.negneg(a)?, self.neg(b)?),
        })
    }

    /// Normal form of `~~f`.
    fn negneg(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Atom(_) => Formula::not(Formula::not(f.clone())),
            Formula::Verum | Formula::Falsum => f.clone(),
            Formula::Not(a) => self.neg(a)?,
            // nh is two-valued, so ~~nh(a) = nh(a)
            Formula::Nh(a) => self.nh(a)?,
            Formula::And(a, b) => Formula::and(self.negneg(a)?, self.negneg(b)?),
            Formula::Or(a, b) => Formula::or(self.negneg(a)?, self.negneg(b)?),
            Formula::Imp(a, b) => Formula::or(self.neg(a)?, self.negneg(b)?),
        })
    }

    /// Normal form of `nh(f)`.
    fn nh(&self, f: &Formula) -> Result<Formula> {
        if !self.nh_inward {
            return Ok(Formula::nh(self.pos(f)?));
        }
        Ok(match f {
            Formula::Atom(_) => Formula::nh(f.clone()),
            Formula::Verum => Formula::Falsum,
            Formula::Falsum => Formula::Verum,
            Formula::Not(a) => self.negneg(a)?,
            Formula::And(a, b) => Formula::or(self.nh(a)?, self.nh(b)?),
            Formula::Or(a, b) => Formula::and(self.nh(a)?, self.nh(b)?),
            Formula::Nh(_) => return Err(NormalizeError::NegativeNh(f.clone())),
            Formula::Imp(..) => return Err(NormalizeError::ContainsImp(f.clone())),
        })
    }
}

/// Moves `nh` inward until it applies to atoms only.
///
/// Every `nh` argument must be free of implications and of `nh`.
pub fn push_nh(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => f.clone(),
        Formula::Not(a) => Formula::not(push_nh(a)?),
        Formula::Nh(a) => {
            if a.contains_imp() {
                return Err(NormalizeError::ImpInNh(f.clone()));
            }
            if a.contains_nh() {
                return Err(NormalizeError::NestedNh(f.clone()));
            }
            nh_inward(a)
        }
        Formula::And(a, b) => Formula::and(push_nh(a)?, push_nh(b)?),
        Formula::Or(a, b) => Formula::or(push_nh(a)?, push_nh(b)?),
        Formula::Imp(a, b) => Formula::imp(push_nh(a)?, push_nh(b)?),
    })
}

fn nh_inward(a: &Formula) -> Formula {
    match a {
        Formula::Verum => Formula::Falsum,
        Formula::Falsum => Formula::Verum,
        Formula::Not(b) => Formula::not(Formula::not((**b).clone())),
        Formula::And(b, c) => Formula::or(nh_inward(b), nh_inward(c)),
        Formula::Or(b, c) => Formula::and(nh_inward(b), nh_inward(c)),
        // atoms; Imp and Nh are excluded by the caller
        _ => Formula::nh(a.clone()),
    }
}

/// True if no implication occurs inside the antecedent of another implication.
pub fn is_body_normalized(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => true,
        Formula::Not(a) | Formula::Nh(a) => is_body_normalized(a),
        Formula::And(a, b) | Formula::Or(a, b) => is_body_normalized(a) && is_body_normalized(b),
        Formula::Imp(a, b) => !a.contains_imp() && is_body_normalized(b),
    }
}

/// Rewrites an HT-formula so that no implication occurs in the antecedent of
/// another implication.
///
/// Uses `(A & B) -> C = A -> (B -> C)`, `(A | B) -> C = (A -> C) & (B -> C)`,
/// `(A -> B) -> C = (~A -> C) & (B -> C) & (C | A | ~B)`, and pushes
/// negations through negated implications. No atoms are introduced.
pub fn body_normalize(f: &Formula) -> Result<Formula> {
    if !f.is_ht() {
        return Err(NormalizeError::NotHt(f.clone()));
    }
    Ok(body_norm(f))
}

fn body_norm(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => f.clone(),
        Formula::Not(a) => Formula::not(body_norm(a)),
        Formula::Nh(a) => Formula::nh(body_norm(a)),
        Formula::And(a, b) => Formula::and(body_norm(a), body_norm(b)),
        Formula::Or(a, b) => Formula::or(body_norm(a), body_norm(b)),
        Formula::Imp(a, c) => imp_with_antecedent(a, body_norm(c)),
    }
}

/// Body-normalized equivalent of `x -> c`, where `c` is already body-normalized.
fn imp_with_antecedent(x: &Formula, c: Formula) -> Formula {
    if !x.contains_imp() {
        return Formula::imp(x.clone(), c);
    }
    match x {
        Formula::And(a, b) => {
            let inner = imp_with_antecedent(b, c);
            imp_with_antecedent(a, inner)
        }
        Formula::Or(a, b) => {
            Formula::and(imp_with_antecedent(a, c.clone()), imp_with_antecedent(b, c))
        }
        Formula::Imp(a, b) => {
            let not_a = Formula::not((**a).clone());
            let left = imp_with_antecedent(&not_a, c.clone());
            let right = imp_with_antecedent(b, c.clone());
            let side = Formula::or(Formula::or(c, body_norm(a)), Formula::not(body_norm(b)));
            Formula::and(Formula::and(left, right), side)
        }
        Formula::Not(_) => {
            // a negated formula loses all its implications when pushed
            let pushed = push_negations(x).expect("HT formulas have no nh");
            debug_assert!(!pushed.contains_imp());
            Formula::imp(pushed, c)
        }
        _ => unreachable!("implication-free shapes handled above"),
    }
}

/// A clause `nh(E1) | ... | nh(Em) | F` of an nh-NNF formula in clause form.
///
/// `rest` holds the `nh`-free literals (atom, `~atom`, `~~atom`, `true`);
/// an empty `rest` stands for `false`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NhClause {
    pub nh_atoms: Vec<String>,
    pub rest: Vec<Formula>,
}

impl NhClause {
    pub fn to_formula(&self) -> Formula {
        Formula::disj(
            self.nh_atoms
                .iter()
                .map(|a| Formula::nh(Formula::atom(a)))
                .chain(self.rest.iter().cloned()),
        )
    }

    fn from_literals(lits: Vec<Formula>) -> NhClause {
        let mut nh_atoms = Vec::new();
        let mut rest = Vec::new();
        for lit in lits {
            match lit.nh_atom() {
                Some(a) => nh_atoms.push(a.to_string()),
                None => rest.push(lit),
            }
        }
        NhClause { nh_atoms, rest }
    }
}

impl fmt::Display for NhClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Converts an nh-NNF formula into clause form by distributing `|` over `&`.
///
/// Literals are opaque; no atoms are introduced. Repeated literals, `false`
/// literals, subsumed clauses and HT-valid clauses (those containing `true`
/// or one of the pairs `p, nh(p)`, `~p, ~~p`, `nh(p), ~~p`) are dropped, so
/// the empty list means `true`.
pub fn to_cnf(f: &Formula) -> Result<Vec<NhClause>> {
    if !f.is_nh_nnf() {
        return Err(NormalizeError::NotNhNnf(f.clone()));
    }
    Ok(clauses(f)
        .into_iter()
        .map(NhClause::from_literals)
        .collect())
}

fn clauses(f: &Formula) -> Vec<Vec<Formula>> {
    match f {
        Formula::And(a, b) => {
            let mut out = clauses(a);
            for c in clauses(b) {
                add_clause(&mut out, c);
            }
            out
        }
        Formula::Or(a, b) => {
            let left = clauses(a);
            let right = clauses(b);
            let mut out = Vec::new();
            for l in &left {
                for r in &right {
                    let mut c = l.clone();
                    for lit in r {
                        if !c.contains(lit) {
                            c.push(lit.clone());
                        }
                    }
                    add_clause(&mut out, c);
                }
            }
            out
        }
        Formula::Verum => Vec::new(),
        Formula::Falsum => vec![Vec::new()],
        lit => vec![vec![lit.clone()]],
    }
}

fn add_clause(out: &mut Vec<Vec<Formula>>, clause: Vec<Formula>) {
    if is_valid_clause(&clause) {
        return;
    }
    if out.iter().any(|c| c.iter().all(|l| clause.contains(l))) {
        return;
    }
    out.retain(|c| !clause.iter().all(|l| c.contains(l)));
    out.push(clause);
}

fn is_valid_clause(clause: &[Formula]) -> bool {
    let has = |g: &Formula| clause.contains(g);
    clause.iter().any(|lit| match lit {
        Formula::Verum => true,
        Formula::Nh(a) => has(a) || has(&Formula::not(Formula::not((**a).clone()))),
        Formula::Not(a) if a.is_atom() => has(&Formula::not(lit.clone())),
        _ => false,
    })
}

/// Absorbs `true` and `false` wherever a connective allows it.
pub fn simplify_constants(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Atom(_) | Falsum | Verum => f.clone(),
        Not(a) => match simplify_constants(a) {
            Verum => Falsum,
            Falsum => Verum,
            a => Formula::not(a),
        },
        Nh(a) => match simplify_constants(a) {
            Verum => Falsum,
            Falsum => Verum,
            a => Formula::nh(a),
        },
        And(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Falsum, _) | (_, Falsum) => Falsum,
            (Verum, x) | (x, Verum) => x,
            (x, y) => Formula::and(x, y),
        },
        Or(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Verum, _) | (_, Verum) => Verum,
            (Falsum, x) | (x, Falsum) => x,
            (x, y) => Formula::or(x, y),
        },
        Imp(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Verum, x) => x,
            (Falsum, _) | (_, Verum) => Verum,
            (x, Falsum) => Formula::not(x),
            (x, y) => Formula::imp(x, y),
        },
    }
}

/// Output simplifier: constant absorption, then idempotence and absorption
/// on flattened `&` / `|` chains.
pub fn simplify(f: &Formula) -> Formula {
    let mut current = simplify_constants(f);
    loop {
        let next = simplify_constants(&flatten_pass(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Chain {
    And,
    Or,
}

fn chain_operands(f: &Formula, kind: Chain, out: &mut Vec<Formula>) {
    match (f, kind) {
        (Formula::And(a, b), Chain::And) | (Formula::Or(a, b), Chain::Or) => {
            chain_operands(a, kind, out);
            chain_operands(b, kind, out);
        }
        _ => out.push(f.clone()),
    }
}

fn flatten_pass(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => f.clone(),
        Formula::Not(a) => Formula::not(flatten_pass(a)),
        Formula::Nh(a) => Formula::nh(flatten_pass(a)),
        Formula::Imp(a, b) => Formula::imp(flatten_pass(a), flatten_pass(b)),
        Formula::And(..) => rebuild_chain(f, Chain::And),
        Formula::Or(..) => rebuild_chain(f, Chain::Or),
    }
}

fn rebuild_chain(f: &Formula, kind: Chain) -> Formula {
    let dual = match kind {
        Chain::And => Chain::Or,
        Chain::Or => Chain::And,
    };
    let mut raw = Vec::new();
    chain_operands(f, kind, &mut raw);
    let mut ops: Vec<Formula> = Vec::new();
    for op in raw.iter().map(flatten_pass) {
        if !ops.contains(&op) {
            ops.push(op);
        }
    }
    // x & (x | y) = x and x | (x & y) = x
    let keep: Vec<bool> = ops
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let mut parts = Vec::new();
            chain_operands(op, dual, &mut parts);
            parts.len() < 2
                || !ops
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && parts.contains(other))
        })
        .collect();
    let kept = ops
        .into_iter()
        .zip(keep)
        .filter_map(|(op, k)| k.then_some(op));
    match kind {
        Chain::And => Formula::conj(kept),
        Chain::Or => Formula::disj(kept),
    }
}
