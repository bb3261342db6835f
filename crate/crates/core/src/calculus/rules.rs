//! Axioms and rules of the interpolating calculus.
//!
//! Each rule is read bottom-up: [`expand`] turns a conclusion and the
//! position of its principal member into premises, and the returned
//! [`Combiner`] builds the conclusion's relative interpolant from the
//! premises' interpolants. Branching rules join with `|` when the principal
//! member has provenance `L` and with `&` when it has provenance `R`.

use std::fmt;

use serde::Serialize;

use super::{CalculusError, Position, Side, SplitSequent};
use crate::formula::{Formula, Provenance};

use Provenance::{L, R};
use Side::{Antecedent as Ant, Succedent as Suc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Ax1LL,
    Ax1LR,
    Ax1RL,
    Ax1RR,
    Ax2LL,
    Ax2LR,
    Ax2LRPrime,
    AxNh1LR,
    AxNh1RR,
    AxNh2LR,
    AxNh2RR,
    /// `false^L` in the antecedent.
    FalsumL,
    /// `false^R` in the antecedent.
    FalsumR,
    /// `true^L` in the succedent.
    VerumL,
    /// `true^R` in the succedent.
    VerumR,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Ax1LL => "Ax-1-LL",
            Axiom::Ax1LR => "Ax-1-LR",
            Axiom::Ax1RL => "Ax-1-RL",
            Axiom::Ax1RR => "Ax-1-RR",
            Axiom::Ax2LL => "Ax-2-LL",
            Axiom::Ax2LR => "Ax-2-LR",
            Axiom::Ax2LRPrime => "Ax-2-LR'",
            Axiom::AxNh1LR => "Ax-nh-1-LR",
            Axiom::AxNh1RR => "Ax-nh-1-RR",
            Axiom::AxNh2LR => "Ax-nh-2-LR",
            Axiom::AxNh2RR => "Ax-nh-2-RR",
            Axiom::FalsumL => "Ax-false-L",
            Axiom::FalsumR => "Ax-false-R",
            Axiom::VerumL => "Ax-true-L",
            Axiom::VerumR => "Ax-true-R",
        })
    }
}

/// Interpolant used when `p^L` and `(~p)^R` meet in the antecedent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Ax2Variant {
    /// `Ax-2-LR` with interpolant `p`.
    #[default]
    Atom,
    /// `Ax-2-LR'` with interpolant `~~p`.
    DoubleNegation,
}

/// The connective a rule decomposes, or the rewrite it performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
    /// Mints' implication rules (provenance `L`).
    Imp,
    /// `=>->*`, for succedent implications with provenance `R`.
    ImpStar,
    DoubleNeg,
    NegAnd,
    NegOr,
    NegImp,
    NegVerum,
    NegFalsum,
    NhNot,
    NhAnd,
    NhOr,
    NhVerum,
    NhFalsum,
    /// Drops `true` from the antecedent.
    DropVerum,
    /// Drops `false` from the succedent.
    DropFalsum,
}

impl Connective {
    fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
            Connective::ImpStar => "->*",
            Connective::DoubleNeg => "~~",
            Connective::NegAnd => "~&",
            Connective::NegOr => "~|",
            Connective::NegImp => "~->",
            Connective::NegVerum => "~true",
            Connective::NegFalsum => "~false",
            Connective::NhNot => "nh~",
            Connective::NhAnd => "nh&",
            Connective::NhOr => "nh|",
            Connective::NhVerum => "nh-true",
            Connective::NhFalsum => "nh-false",
            Connective::DropVerum => "true",
            Connective::DropFalsum => "false",
        }
    }

    /// Rules that only remove or rewrite truth constants.
    pub fn is_constant_rule(self) -> bool {
        matches!(
            self,
            Connective::NegVerum
                | Connective::NegFalsum
                | Connective::NhVerum
                | Connective::NhFalsum
                | Connective::DropVerum
                | Connective::DropFalsum
        )
    }
}

/// A rule instance: connective, side of the principal member and its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub connective: Connective,
    pub side: Side,
    pub provenance: Provenance,
}

/// Renders as `&=>L` for antecedent rules and `=>&L` for succedent rules.
impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.connective.symbol();
        match self.side {
            Side::Antecedent => write!(f, "{sym}=>{}", self.provenance),
            Side::Succedent => write!(f, "=>{sym}{}", self.provenance),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    Axiom(Axiom),
    Rule(Rule),
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Axiom(a) => a.fmt(f),
            RuleId::Rule(r) => r.fmt(f),
        }
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// How premise interpolants combine into the conclusion's interpolant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combiner {
    PassThrough,
    Disjunction,
    Conjunction,
}

impl Combiner {
    fn branching(provenance: Provenance) -> Combiner {
        match provenance {
            L => Combiner::Disjunction,
            R => Combiner::Conjunction,
        }
    }

    /// Panics if the number of interpolants does not fit the combiner.
    pub fn combine(self, interpolants: Vec<Formula>) -> Formula {
        match self {
            Combiner::PassThrough => {
                assert_eq!(interpolants.len(), 1, "pass-through takes one premise");
                interpolants.into_iter().next().unwrap()
            }
            Combiner::Disjunction => Formula::disj(interpolants),
            Combiner::Conjunction => Formula::conj(interpolants),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub rule: Rule,
    pub premises: Vec<SplitSequent>,
    pub combiner: Combiner,
}

/// Every axiom the sequent instantiates, in priority order, with its interpolant.
pub fn axiom_instances(s: &SplitSequent, ax2: Ax2Variant) -> Vec<(Axiom, Formula)> {
    let mut out = Vec::new();
    let ant = s.antecedent();
    let suc = s.succedent();
    let has = |side: Side, f: &Formula, p: Provenance| s.contains(side, f, p);

    // Ax-1: the same literal on both sides
    let ax1 = [
        (Axiom::Ax1LL, L, L),
        (Axiom::Ax1LR, L, R),
        (Axiom::Ax1RL, R, L),
        (Axiom::Ax1RR, R, R),
    ];
    for (axiom, pa, ps) in ax1 {
        let negative_only = pa == R;
        for m in ant.iter().filter(|m| m.provenance == pa) {
            let lit = &m.formula;
            let ok = if negative_only {
                lit.negated_atom().is_some()
            } else {
                lit.is_literal()
            };
            if ok && has(Suc, lit, ps) {
                let h = match axiom {
                    Axiom::Ax1LL => Formula::Falsum,
                    Axiom::Ax1LR => lit.clone(),
                    Axiom::Ax1RL => Formula::not(lit.clone()),
                    _ => Formula::Verum,
                };
                out.push((axiom, h));
                break;
            }
        }
    }

    // Ax-2: p and ~p in the antecedent
    for (pn, axiom) in [(L, Axiom::Ax2LL), (R, Axiom::Ax2LR)] {
        let hit = ant.iter().find(|m| {
            m.provenance == L
                && m.formula.is_atom()
                && has(Ant, &Formula::not(m.formula.clone()), pn)
        });
        if let Some(m) = hit {
            let entry = match (axiom, ax2) {
                (Axiom::Ax2LL, _) => (Axiom::Ax2LL, Formula::Falsum),
                (_, Ax2Variant::Atom) => (Axiom::Ax2LR, m.formula.clone()),
                (_, Ax2Variant::DoubleNegation) => (
                    Axiom::Ax2LRPrime,
                    Formula::not(Formula::not(m.formula.clone())),
                ),
            };
            out.push(entry);
        }
    }

    // Ax-nh-1: p and nh(p) in the succedent
    for (pa, axiom) in [(L, Axiom::AxNh1LR), (R, Axiom::AxNh1RR)] {
        let hit = suc.iter().find(|m| {
            m.provenance == R && m.formula.nh_atom().is_some() && {
                let Formula::Nh(atom) = &m.formula else {
                    unreachable!()
                };
                has(Suc, atom, pa)
            }
        });
        if let Some(m) = hit {
            let h = match axiom {
                Axiom::AxNh1LR => m.formula.clone(),
                _ => Formula::Verum,
            };
            out.push((axiom, h));
        }
    }

    // Ax-nh-2: ~p in the antecedent, nh(p) in the succedent
    for (pa, axiom) in [(L, Axiom::AxNh2LR), (R, Axiom::AxNh2RR)] {
        let hit = suc.iter().find_map(|m| {
            let Formula::Nh(atom) = &m.formula else {
                return None;
            };
            if m.provenance != R || !atom.is_atom() {
                return None;
            }
            let neg = Formula::not((**atom).clone());
            has(Ant, &neg, pa).then_some(neg)
        });
        if let Some(neg) = hit {
            let h = match axiom {
                Axiom::AxNh2LR => neg,
                _ => Formula::Verum,
            };
            out.push((axiom, h));
        }
    }

    if has(Ant, &Formula::Falsum, L) {
        out.push((Axiom::FalsumL, Formula::Falsum));
    }
    if has(Ant, &Formula::Falsum, R) {
        out.push((Axiom::FalsumR, Formula::Verum));
    }
    if has(Suc, &Formula::Verum, L) {
        out.push((Axiom::VerumL, Formula::Falsum));
    }
    if has(Suc, &Formula::Verum, R) {
        out.push((Axiom::VerumR, Formula::Verum));
    }
    out
}

/// The highest-priority axiom the sequent instantiates, using `Ax-2-LR`.
pub fn axiom_match(s: &SplitSequent) -> Option<(Axiom, Formula)> {
    axiom_match_with(s, Ax2Variant::Atom)
}

pub fn axiom_match_with(s: &SplitSequent, ax2: Ax2Variant) -> Option<(Axiom, Formula)> {
    axiom_instances(s, ax2).into_iter().next()
}

/// What proof search may do with a sequent member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberStatus {
    /// A literal or `nh(atom)` that only an axiom can close.
    Irreducible,
    Reducible(Connective),
    /// No rule exists for this shape and provenance.
    Stuck,
}

/// Classifies a member by the rule that would decompose it.
pub fn member_status(formula: &Formula, provenance: Provenance, side: Side) -> MemberStatus {
    use Connective as C;
    use MemberStatus::{Irreducible, Reducible, Stuck};
    match (side, formula) {
        (_, Formula::Atom(_)) => Irreducible,
        (Ant, Formula::Falsum) | (Suc, Formula::Verum) => Irreducible,
        (Ant, Formula::Verum) => Reducible(C::DropVerum),
        (Suc, Formula::Falsum) => Reducible(C::DropFalsum),
        (_, Formula::And(..)) => Reducible(C::And),
        (_, Formula::Or(..)) => Reducible(C::Or),
        (Ant, Formula::Imp(..)) => match provenance {
            L => Reducible(C::Imp),
            R => Stuck,
        },
        (Suc, Formula::Imp(..)) => match provenance {
            L => Reducible(C::Imp),
            R => Reducible(C::ImpStar),
        },
        (Ant, Formula::Nh(_)) => Stuck,
        (Suc, Formula::Nh(arg)) => match (provenance, &**arg) {
            (L, _) => Stuck,
            (R, Formula::Atom(_)) => Irreducible,
            (R, Formula::Verum) => Reducible(C::NhVerum),
            (R, Formula::Falsum) => Reducible(C::NhFalsum),
            (R, Formula::Not(_)) => Reducible(C::NhNot),
            (R, Formula::And(..)) => Reducible(C::NhAnd),
            (R, Formula::Or(..)) => Reducible(C::NhOr),
            (R, Formula::Nh(_) | Formula::Imp(..)) => Stuck,
        },
        (_, Formula::Not(arg)) => match &**arg {
            Formula::Atom(_) => Irreducible,
            Formula::Verum => Reducible(C::NegVerum),
            Formula::Falsum => Reducible(C::NegFalsum),
            Formula::Not(_) => Reducible(C::DoubleNeg),
            Formula::And(..) => Reducible(C::NegAnd),
            Formula::Or(..) => Reducible(C::NegOr),
            Formula::Imp(..) => Reducible(C::NegImp),
            Formula::Nh(_) => Stuck,
        },
    }
}

fn neg(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

/// Applies the rule for the member at `principal`, bottom-up.
pub fn expand(s: &SplitSequent, principal: Position) -> Result<Expansion, CalculusError> {
    use Connective as C;
    let member = s
        .get(principal)
        .ok_or(CalculusError::BadPosition(principal))?;
    let side = principal.side;
    let p = member.provenance;
    let connective = match member_status(&member.formula, p, side) {
        MemberStatus::Reducible(c) => c,
        MemberStatus::Irreducible => {
            return Err(CalculusError::NotReducible {
                formula: member.formula.clone(),
                side,
            })
        }
        MemberStatus::Stuck => {
            return Err(CalculusError::NoRule {
                formula: member.formula.clone(),
                provenance: p,
                side,
            })
        }
    };
    let ctx = s.without(principal);
    let single = |f: Formula| vec![ctx.clone().with(side, f, p)];

    let (premises, combiner) = match (&member.formula, connective) {
        (_, C::DropVerum | C::DropFalsum) => (vec![ctx.clone()], Combiner::PassThrough),
        (_, C::NegVerum) => (single(Formula::Falsum), Combiner::PassThrough),
        (_, C::NegFalsum) => (single(Formula::Verum), Combiner::PassThrough),

        (Formula::And(a, b), C::And) => match side {
            Ant => (
                vec![ctx
                    .clone()
                    .with(Ant, (**a).clone(), p)
                    .with(Ant, (**b).clone(), p)],
                Combiner::PassThrough,
            ),
            Suc => (
                vec![
                    ctx.clone().with(Suc, (**a).clone(), p),
                    ctx.clone().with(Suc, (**b).clone(), p),
                ],
                Combiner::branching(p),
            ),
        },
        (Formula::Or(a, b), C::Or) => match side {
            Ant => (
                vec![
                    ctx.clone().with(Ant, (**a).clone(), p),
                    ctx.clone().with(Ant, (**b).clone(), p),
                ],
                Combiner::branching(p),
            ),
            Suc => (
                vec![ctx
                    .clone()
                    .with(Suc, (**a).clone(), p)
                    .with(Suc, (**b).clone(), p)],
                Combiner::PassThrough,
            ),
        },
        (Formula::Imp(a, b), C::Imp) => match side {
            // ->=>L: ~A, Γ => Δ | Γ => Δ, A, ~B | B, Γ => Δ
            Ant => (
                vec![
                    ctx.clone().with(Ant, neg(a), L),
                    ctx.clone().with(Suc, (**a).clone(), L).with(Suc, neg(b), L),
                    ctx.clone().with(Ant, (**b).clone(), L),
                ],
                Combiner::Disjunction,
            ),
            // =>->L: A, Γ => Δ, B | ~B, Γ => Δ, ~A
            Suc => (
                vec![
                    ctx.clone()
                        .with(Ant, (**a).clone(), L)
                        .with(Suc, (**b).clone(), L),
                    ctx.clone().with(Ant, neg(b), L).with(Suc, neg(a), L),
                ],
                Combiner::Disjunction,
            ),
        },
        // =>->*R: Γ => Δ, nh(A), B | ~B, Γ => Δ, ~A
        (Formula::Imp(a, b), C::ImpStar) => (
            vec![
                ctx.clone()
                    .with(Suc, Formula::nh((**a).clone()), R)
                    .with(Suc, (**b).clone(), R),
                ctx.clone().with(Ant, neg(b), R).with(Suc, neg(a), R),
            ],
            Combiner::Conjunction,
        ),
        // ~~A moves to the other side as ~A
        (Formula::Not(inner), C::DoubleNeg) => {
            let Formula::Not(a) = &**inner else {
                unreachable!()
            };
            let other = match side {
                Ant => Suc,
                Suc => Ant,
            };
            (
                vec![ctx.clone().with(other, neg(a), p)],
                Combiner::PassThrough,
            )
        }
        (Formula::Not(inner), C::NegAnd) => {
            let Formula::And(a, b) = &**inner else {
                unreachable!()
            };
            (single(Formula::or(neg(a), neg(b))), Combiner::PassThrough)
        }
        (Formula::Not(inner), C::NegOr) => {
            let Formula::Or(a, b) = &**inner else {
                unreachable!()
            };
            (single(Formula::and(neg(a), neg(b))), Combiner::PassThrough)
        }
        (Formula::Not(inner), C::NegImp) => {
            let Formula::Imp(a, b) = &**inner else {
                unreachable!()
            };
            (
                single(Formula::and(neg(&neg(a)), neg(b))),
                Combiner::PassThrough,
            )
        }
        (Formula::Nh(_), C::NhVerum) => (single(Formula::Falsum), Combiner::PassThrough),
        (Formula::Nh(_), C::NhFalsum) => (single(Formula::Verum), Combiner::PassThrough),
        (Formula::Nh(inner), C::NhNot) => {
            let Formula::Not(a) = &**inner else {
                unreachable!()
            };
            (single(neg(&neg(a))), Combiner::PassThrough)
        }
        (Formula::Nh(inner), C::NhAnd) => {
            let Formula::And(a, b) = &**inner else {
                unreachable!()
            };
            (
                single(Formula::or(
                    Formula::nh((**a).clone()),
                    Formula::nh((**b).clone()),
                )),
                Combiner::PassThrough,
            )
        }
        (Formula::Nh(inner), C::NhOr) => {
            let Formula::Or(a, b) = &**inner else {
                unreachable!()
            };
            (
                single(Formula::and(
                    Formula::nh((**a).clone()),
                    Formula::nh((**b).clone()),
                )),
                Combiner::PassThrough,
            )
        }
        _ => unreachable!("member_status and expand disagree on {}", member.formula),
    };

    Ok(Expansion {
        rule: Rule {
            connective,
            side,
            provenance: p,
        },
        premises,
        combiner,
    })
}
