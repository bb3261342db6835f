//! Three-valued matrix semantics and the exhaustive entailment oracle.
//!
//! Truth values are ordered `F < NF < T`. Conjunction and disjunction are
//! minimum and maximum under that order; the remaining connectives follow
//! their truth tables. Entailment `A |= B` means that `A -> B` evaluates to
//! `T` under every assignment, which is the same as `eval(A) <= eval(B)`
//! pointwise.
//!
//! Assignments are enumerated lexicographically: atoms sorted by name, the
//! first atom most significant, values in the order `F`, `NF`, `T`. Any
//! countermodel reported is the first one in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

/// Default bound on the number of atoms `truth_table` will enumerate.
pub const DEFAULT_ATOM_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TruthValue {
    F,
    NF,
    T,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::F, TruthValue::NF, TruthValue::T];

    pub fn and(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> TruthValue {
        if self == TruthValue::F {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    pub fn nh(self) -> TruthValue {
        if self == TruthValue::T {
            TruthValue::F
        } else {
            TruthValue::T
        }
    }

    pub fn imp(self, other: TruthValue) -> TruthValue {
        if self <= other {
            TruthValue::T
        } else {
            other
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::F => "F",
            TruthValue::NF => "NF",
            TruthValue::T => "T",
        })
    }
}

impl FromStr for TruthValue {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" => Ok(TruthValue::F),
            "NF" => Ok(TruthValue::NF),
            "T" => Ok(TruthValue::T),
            _ => Err(SemanticsError::BadAssignment(format!(
                "unknown truth value {s:?} (expected F, NF or T)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom '{0}' is not declared in the assignment")]
    UndeclaredAtom(String),
    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    TooManyAtoms { atoms: usize, cap: usize },
    #[error("malformed assignment: {0}")]
    BadAssignment(String),
}

/// A total map from a declared set of atoms to truth values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<String, TruthValue>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: TruthValue) {
        self.0.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: TruthValue) -> Self {
        self.set(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Result<TruthValue, SemanticsError> {
        self.0
            .get(atom)
            .copied()
            .ok_or_else(|| SemanticsError::UndeclaredAtom(atom.to_string()))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TruthValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"p=T,q=NF"`; whitespace around items is ignored.
    pub fn parse(text: &str) -> Result<Assignment, SemanticsError> {
        let mut out = Assignment::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (atom, value) = item.split_once('=').ok_or_else(|| {
                SemanticsError::BadAssignment(format!("expected atom=value, got {item:?}"))
            })?;
            let atom = atom.trim();
            if !crate::formula::is_valid_atom_name(atom) {
                return Err(SemanticsError::BadAssignment(format!(
                    "invalid atom name {atom:?}"
                )));
            }
            out.set(atom, value.trim().parse()?);
        }
        Ok(out)
    }
}

/// Renders as `p=T,q=NF`, the same syntax [`Assignment::parse`] accepts.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{atom}={value}")?;
        }
        Ok(())
    }
}

impl FromIterator<(String, TruthValue)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (String, TruthValue)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// Outcome of an entailment or equivalence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub countermodel: Option<Assignment>,
}

/// Evaluates `f` under `v`.
pub fn eval(f: &Formula, v: &Assignment) -> Result<TruthValue, SemanticsError> {
    Ok(match f {
        Formula::Atom(name) => v.get(name)?,
        Formula::Falsum => TruthValue::F,
        Formula::Verum => TruthValue::T,
        Formula::Not(a) => eval(a, v)?.not(),
        Formula::Nh(a) => eval(a, v)?.nh(),
        Formula::Or(a, b) => eval(a, v)?.or(eval(b, v)?),
        Formula::And(a, b) => eval(a, v)?.and(eval(b, v)?),
        Formula::Imp(a, b) => eval(a, v)?.imp(eval(b, v)?),
    })
}

/// Dense valuation over a sorted atom universe, used during enumeration.
pub(crate) struct Valuation<'a> {
    atoms: &'a [String],
    values: Vec<TruthValue>,
}

impl<'a> Valuation<'a> {
    pub(crate) fn new(atoms: &'a [String]) -> Self {
        Valuation {
            atoms,
            values: vec![TruthValue::F; atoms.len()],
        }
    }

    fn lookup(&self, name: &str) -> TruthValue {
        let i = self
            .atoms
            .binary_search_by(|a| a.as_str().cmp(name))
            .unwrap_or_else(|_| panic!("atom {name} outside the enumerated universe"));
        self.values[i]
    }

    pub(crate) fn eval(&self, f: &Formula) -> TruthValue {
        match f {
            Formula::Atom(name) => self.lookup(name),
            Formula::Falsum => TruthValue::F,
            Formula::Verum => TruthValue::T,
            Formula::Not(a) => self.eval(a).not(),
            Formula::Nh(a) => self.eval(a).nh(),
            Formula::Or(a, b) => self.eval(a).or(self.eval(b)),
            Formula::And(a, b) => self.eval(a).and(self.eval(b)),
            Formula::Imp(a, b) => self.eval(a).imp(self.eval(b)),
        }
    }

    /// Advances to the next assignment in lexicographic order; false once exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        for slot in self.values.iter_mut().rev() {
            match *slot {
                TruthValue::F => {
                    *slot = TruthValue::NF;
                    return true;
                }
                TruthValue::NF => {
                    *slot = TruthValue::T;
                    return true;
                }
                TruthValue::T => *slot = TruthValue::F,
            }
        }
        false
    }

    pub(crate) fn to_assignment(&self) -> Assignment {
        self.atoms
            .iter()
            .cloned()
            .zip(self.values.iter().copied())
            .collect()
    }
}

fn joint_voc<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Vec<String> {
    let mut set = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut set);
    }
    set.into_iter().collect()
}

/// Returns the first assignment (in enumeration order) satisfying `pred`.
fn find_assignment<F>(atoms: &[String], mut pred: F) -> Option<Assignment>
where
    F: FnMut(&Valuation<'_>) -> bool,
{
    let mut val = Valuation::new(atoms);
    loop {
        if pred(&val) {
            return Some(val.to_assignment());
        }
        if !val.advance() {
            return None;
        }
    }
}

fn verdict(countermodel: Option<Assignment>) -> EntailmentVerdict {
    EntailmentVerdict {
        holds: countermodel.is_none(),
        countermodel,
    }
}

/// Decides `a |= b` by enumerating all assignments over `voc(a) ∪ voc(b)`.
pub fn entails(a: &Formula, b: &Formula) -> EntailmentVerdict {
    let atoms = joint_voc([a, b]);
    verdict(find_assignment(&atoms, |v| v.eval(a) > v.eval(b)))
}

/// Decides whether `a` and `b` take the same value under every assignment.
pub fn equivalent(a: &Formula, b: &Formula) -> EntailmentVerdict {
    let atoms = joint_voc([a, b]);
    verdict(find_assignment(&atoms, |v| v.eval(a) != v.eval(b)))
}

/// Whether `f` evaluates to `T` under every assignment.
pub fn valid(f: &Formula) -> EntailmentVerdict {
    entails(&Formula::Verum, f)
}

/// Evaluates `f` under every assignment over its vocabulary.
pub fn truth_table(f: &Formula) -> Result<Vec<(Assignment, TruthValue)>, SemanticsError> {
    truth_table_with_cap(f, DEFAULT_ATOM_CAP)
}

pub fn truth_table_with_cap(
    f: &Formula,
    cap: usize,
) -> Result<Vec<(Assignment, TruthValue)>, SemanticsError> {
    let atoms: Vec<String> = f.voc().into_iter().collect();
    if atoms.len() > cap {
        return Err(SemanticsError::TooManyAtoms {
            atoms: atoms.len(),
            cap,
        });
    }
    let mut rows = Vec::with_capacity(3usize.pow(atoms.len() as u32));
    let mut val = Valuation::new(&atoms);
    loop {
        rows.push((val.to_assignment(), val.eval(f)));
        if !val.advance() {
            break;
        }
    }
    Ok(rows)
}

/// Plain-text table: a header of sorted atoms and the formula, then one row
/// per assignment.
pub fn render_truth_table(f: &Formula, rows: &[(Assignment, TruthValue)]) -> String {
    let atoms: Vec<String> = f.voc().into_iter().collect();
    let widths: Vec<usize> = atoms.iter().map(|a| a.len().max(2)).collect();
    let mut out = String::new();
    for (atom, w) in atoms.iter().zip(&widths) {
        out.push_str(&format!("{atom:<w$} "));
    }
    out.push_str(&format!("| {f}\n"));
    for (assignment, value) in rows {
        for (atom, w) in atoms.iter().zip(&widths) {
            let v = assignment
                .get(atom)
                .map(|v| v.to_string())
                .unwrap_or_default();
            out.push_str(&format!("{v:<w$} "));
        }
        out.push_str(&format!("| {value}\n"));
    }
    out
}

#[derive(Serialize)]
struct TruthTableRow<'a> {
    assignment: &'a Assignment,
    value: TruthValue,
}

/// JSON array of `{"assignment": {...}, "value": ...}` objects.
pub fn truth_table_json(rows: &[(Assignment, TruthValue)]) -> serde_json::Value {
    let rows: Vec<TruthTableRow<'_>> = rows
        .iter()
        .map(|(assignment, value)| TruthTableRow {
            assignment,
            value: *value,
        })
        .collect();
    serde_json::to_value(rows).expect("truth table rows serialize")
}
