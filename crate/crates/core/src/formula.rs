//! Formula trees over the eight connectives of HT extended with `nh`.
//!
//! Children are reference counted so that proof search can copy sequents
//! without deep-cloning the formulas they contain.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A formula of HT, possibly containing the `nh` ("not here") operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Falsum,
    Verum,
    Not(Arc<Formula>),
    Nh(Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

/// Syntactic classes of formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaClass {
    /// No `nh` anywhere.
    Ht,
    /// No implication, every `nh` positive.
    Nh,
    /// Negation normal form over atom, `~atom`, `~~atom`, `nh(atom)` and constants.
    NhNnf,
    /// Implications and positive `nh` both allowed.
    HtNh,
}

/// Which interpolation argument a sequent member descends from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    L,
    R,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::L => f.write_str("L"),
            Provenance::R => f.write_str("R"),
        }
    }
}

const KEYWORDS: [&str; 3] = ["true", "false", "nh"];

/// Whether `name` is a legal atom name: `[a-z][a-zA-Z0-9_]*`, excluding keywords.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

impl Formula {
    /// Builds an atom.
    ///
    /// Panics if `name` is not a legal atom name; use [`Formula::try_atom`]
    /// for untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::try_atom(name).unwrap_or_else(|| panic!("invalid atom name {name:?}"))
    }

    pub fn try_atom(name: &str) -> Option<Formula> {
        is_valid_atom_name(name).then(|| Formula::Atom(Arc::from(name)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn nh(f: Formula) -> Formula {
        Formula::Nh(Arc::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Verum)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Falsum)
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self {
            Formula::Atom(name) => Some(name),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::Verum | Formula::Falsum)
    }

    /// An atom or a negated atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(inner) => inner.is_atom(),
            _ => false,
        }
    }

    /// The atom under a negated atom `~p`.
    pub fn negated_atom(&self) -> Option<&str> {
        match self {
            Formula::Not(inner) => inner.atom_name(),
            _ => None,
        }
    }

    /// The atom under `nh(p)`.
    pub fn nh_atom(&self) -> Option<&str> {
        match self {
            Formula::Nh(inner) => inner.atom_name(),
            _ => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => 1,
            Formula::Not(a) | Formula::Nh(a) => 1 + a.size(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => 0,
            Formula::Not(a) | Formula::Nh(a) => 1 + a.depth(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Termination measure for proof search.
    ///
    /// Every calculus rule strictly decreases the summed weight of each
    /// premise relative to its conclusion.
    pub fn weight(&self) -> u64 {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => 1,
            Formula::And(a, b) | Formula::Or(a, b) => a.weight() + b.weight() + 1,
            Formula::Not(a) => 3 * a.weight(),
            Formula::Nh(a) => 3 * a.weight() + 1,
            Formula::Imp(a, b) => 3 * a.weight() + 3 * b.weight() + 2,
        }
    }

    /// The set of atom names occurring in the formula.
    pub fn voc(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&**name) {
                    out.insert(name.to_string());
                }
            }
            Formula::Falsum | Formula::Verum => {}
            Formula::Not(a) | Formula::Nh(a) => a.collect_atoms(out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn contains_imp(&self) -> bool {
        match self {
            Formula::Imp(..) => true,
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => false,
            Formula::Not(a) | Formula::Nh(a) => a.contains_imp(),
            Formula::Or(a, b) | Formula::And(a, b) => a.contains_imp() || b.contains_imp(),
        }
    }

    pub fn contains_nh(&self) -> bool {
        match self {
            Formula::Nh(_) => true,
            Formula::Atom(_) | Formula::Falsum | Formula::Verum => false,
            Formula::Not(a) => a.contains_nh(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.contains_nh() || b.contains_nh()
            }
        }
    }

    /// Every class whose grammar the formula satisfies.
    pub fn classify(&self) -> BTreeSet<FormulaClass> {
        let mut out = BTreeSet::new();
        let has_imp = self.contains_imp();
        let has_nh = self.contains_nh();
        let nh_positive = nh_positive(self, false);
        if !has_nh {
            out.insert(FormulaClass::Ht);
        }
        if !has_imp && nh_positive {
            out.insert(FormulaClass::Nh);
            if is_nh_nnf(self) {
                out.insert(FormulaClass::NhNnf);
            }
        }
        if nh_positive {
            out.insert(FormulaClass::HtNh);
        }
        out
    }

    pub fn is_ht(&self) -> bool {
        !self.contains_nh()
    }

    pub fn is_nh_formula(&self) -> bool {
        !self.contains_imp() && nh_positive(self, false)
    }

    pub fn is_nh_nnf(&self) -> bool {
        is_nh_nnf(self)
    }
}

/// Polarity flips under `~`, under `nh` and in implication antecedents.
fn nh_positive(f: &Formula, negative: bool) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => true,
        Formula::Nh(a) => !negative && nh_positive(a, !negative),
        Formula::Not(a) => nh_positive(a, !negative),
        Formula::Or(a, b) | Formula::And(a, b) => {
            nh_positive(a, negative) && nh_positive(b, negative)
        }
        Formula::Imp(a, b) => nh_positive(a, !negative) && nh_positive(b, negative),
    }
}

fn is_nh_nnf(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum | Formula::Verum => true,
        Formula::Not(a) => match &**a {
            Formula::Atom(_) => true,
            Formula::Not(b) => b.is_atom(),
            _ => false,
        },
        Formula::Nh(a) => a.is_atom(),
        Formula::Or(a, b) | Formula::And(a, b) => is_nh_nnf(a) && is_nh_nnf(b),
        Formula::Imp(..) => false,
    }
}

// Binding strength used by the printer; larger binds tighter.
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

impl Formula {
    fn write_prec(&self, out: &mut String, ctx: u8) {
        let (prec, wrap) = match self {
            Formula::Imp(..) => (PREC_IMP, ctx > PREC_IMP),
            Formula::Or(..) => (PREC_OR, ctx > PREC_OR),
            Formula::And(..) => (PREC_AND, ctx > PREC_AND),
            _ => (PREC_UNARY, false),
        };
        if wrap {
            out.push('(');
        }
        match self {
            Formula::Atom(name) => out.push_str(name),
            Formula::Falsum => out.push_str("false"),
            Formula::Verum => out.push_str("true"),
            Formula::Not(a) => {
                out.push('~');
                a.write_prec(out, PREC_UNARY);
            }
            Formula::Nh(a) => {
                out.push_str("nh(");
                a.write_prec(out, 0);
                out.push(')');
            }
            Formula::Imp(a, b) => {
                a.write_prec(out, prec + 1);
                out.push_str(" -> ");
                b.write_prec(out, prec);
            }
            Formula::Or(a, b) => {
                a.write_prec(out, prec);
                out.push_str(" | ");
                b.write_prec(out, prec + 1);
            }
            Formula::And(a, b) => {
                a.write_prec(out, prec);
                out.push_str(" & ");
                b.write_prec(out, prec + 1);
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

/// Minimally parenthesized rendering in the concrete syntax accepted by
/// [`crate::parser::parse`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_prec(&mut out, 0);
        f.write_str(&out)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn prints_minimal_parentheses() {
        let r = Formula::atom("r");
        assert_eq!(
            Formula::imp(p(), Formula::or(q(), r.clone())).to_string(),
            "p -> q | r"
        );
        assert_eq!(Formula::nh(p()).to_string(), "nh(p)");
        assert_eq!(
            Formula::and(Formula::or(p(), q()), r.clone()).to_string(),
            "(p | q) & r"
        );
        assert_eq!(
            Formula::imp(Formula::imp(p(), q()), r.clone()).to_string(),
            "(p -> q) -> r"
        );
        assert_eq!(
            Formula::or(p(), Formula::or(q(), r)).to_string(),
            "p | (q | r)"
        );
        assert_eq!(Formula::not(Formula::and(p(), q())).to_string(), "~(p & q)");
    }

    #[test]
    fn voc_ignores_constants() {
        let f = Formula::and(p(), Formula::not(q()));
        assert_eq!(f.voc().into_iter().collect::<Vec<_>>(), vec!["p", "q"]);
        assert!(Formula::Verum.voc().is_empty());
        assert_eq!(Formula::nh(p()).voc().len(), 1);
    }

    #[test]
    fn classify_examples() {
        use FormulaClass::*;
        assert_eq!(
            Formula::imp(p(), q()).classify(),
            BTreeSet::from([Ht, HtNh])
        );
        assert_eq!(
            Formula::or(Formula::nh(p()), Formula::not(Formula::not(q()))).classify(),
            BTreeSet::from([Nh, NhNnf, HtNh])
        );
        assert!(Formula::not(Formula::nh(p())).classify().is_empty());
        assert_eq!(p().classify(), BTreeSet::from([Ht, Nh, NhNnf, HtNh]));
        // nh under an implication antecedent is negative
        assert!(!Formula::imp(Formula::nh(p()), q())
            .classify()
            .contains(&HtNh));
        assert!(Formula::not(Formula::not(Formula::nh(p())))
            .classify()
            .contains(&Nh));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p().weight(), 1);
        assert_eq!(Formula::not(Formula::not(p())).weight(), 9);
        assert_eq!(Formula::imp(p(), q()).weight(), 8);
        assert_eq!(Formula::nh(p()).weight(), 4);
    }

    #[test]
    fn atom_names() {
        assert!(is_valid_atom_name("p"));
        assert!(is_valid_atom_name("x_1Y"));
        assert!(is_valid_atom_name("nhx"));
        assert!(!is_valid_atom_name(""));
        assert!(!is_valid_atom_name("P"));
        assert!(!is_valid_atom_name("1p"));
        assert!(!is_valid_atom_name("nh"));
        assert!(!is_valid_atom_name("true"));
        assert!(Formula::try_atom("a-b").is_none());
    }
}
