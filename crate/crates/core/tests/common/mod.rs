//! Formula corpora shared by the integration tests.

#![allow(dead_code)]

use htcraig::Formula;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 4] = ["p", "q", "r", "s"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every HT formula of tree size at most `max_size` over `atoms`, `true` and
/// `false`, grouped by size in ascending order.
pub fn exhaustive_ht(atoms: &[&str], max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    by_size[1] = atoms
        .iter()
        .map(|a| Formula::atom(a))
        .chain([Formula::Verum, Formula::Falsum])
        .collect();
    for size in 2..=max_size {
        let mut level: Vec<Formula> = by_size[size - 1]
            .iter()
            .cloned()
            .map(Formula::not)
            .collect();
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                    level.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size[size] = level;
    }
    by_size.into_iter().flatten().collect()
}

fn leaf<R: Rng>(rng: &mut R, atoms: &[&str]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::Verum,
        1 => Formula::Falsum,
        _ => Formula::atom(atoms.choose(rng).unwrap()),
    }
}

/// A random HT formula of depth at most `depth`.
pub fn random_ht<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, atoms);
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 | 1 => Formula::not(random_ht(rng, atoms, d)),
        2 | 3 => Formula::imp(random_ht(rng, atoms, d), random_ht(rng, atoms, d)),
        4 => Formula::and(random_ht(rng, atoms, d), random_ht(rng, atoms, d)),
        _ => Formula::or(random_ht(rng, atoms, d), random_ht(rng, atoms, d)),
    }
}

/// A random implication-free HT formula of depth at most `depth`.
pub fn random_imp_free<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, atoms);
    }
    let d = depth - 1;
    match rng.gen_range(0..3) {
        0 => Formula::not(random_imp_free(rng, atoms, d)),
        1 => Formula::and(
            random_imp_free(rng, atoms, d),
            random_imp_free(rng, atoms, d),
        ),
        _ => Formula::or(
            random_imp_free(rng, atoms, d),
            random_imp_free(rng, atoms, d),
        ),
    }
}

/// A random nh-formula: no implication, `nh` only at positive polarity and
/// never nested.
pub fn random_nh<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    nh_formula(rng, atoms, depth, true)
}

fn nh_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize, positive: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng, atoms);
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 | 1 => Formula::not(nh_formula(rng, atoms, d, !positive)),
        2 if positive => Formula::nh(random_imp_free(rng, atoms, d)),
        2..=4 => Formula::and(
            nh_formula(rng, atoms, d, positive),
            nh_formula(rng, atoms, d, positive),
        ),
        _ => Formula::or(
            nh_formula(rng, atoms, d, positive),
            nh_formula(rng, atoms, d, positive),
        ),
    }
}

/// A random nh-NNF literal or constant.
pub fn random_nnf_literal<R: Rng>(rng: &mut R, atoms: &[&str]) -> Formula {
    let a = Formula::atom(atoms.choose(rng).unwrap());
    match rng.gen_range(0..10) {
        0 => Formula::Verum,
        1 => Formula::Falsum,
        2 | 3 => a,
        4 | 5 => Formula::not(a),
        6 | 7 => Formula::not(Formula::not(a)),
        _ => Formula::nh(a),
    }
}

/// A random nh-NNF formula of depth at most `depth`.
pub fn random_nh_nnf<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_nnf_literal(rng, atoms);
    }
    let d = depth - 1;
    if rng.gen_bool(0.5) {
        Formula::and(random_nh_nnf(rng, atoms, d), random_nh_nnf(rng, atoms, d))
    } else {
        Formula::or(random_nh_nnf(rng, atoms, d), random_nh_nnf(rng, atoms, d))
    }
}

/// Between one and four atoms, as a prefix of [`ATOMS`].
pub fn random_atoms<R: Rng>(rng: &mut R) -> &'static [&'static str] {
    &ATOMS[..rng.gen_range(1..=4)]
}

/// `count` random HT pairs with at most four atoms and depth at most five.
pub fn random_pairs(seed: u64, count: usize) -> Vec<(Formula, Formula)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let atoms = random_atoms(&mut rng);
            let a = random_ht(&mut rng, atoms, 5);
            let b = random_ht(&mut rng, atoms, 5);
            (a, b)
        })
        .collect()
}

/// Random pairs biased toward entailment: `b` is `a` weakened by a
/// disjunction or `a` is strengthened by a conjunction.
pub fn entailing_biased_pairs(seed: u64, count: usize) -> Vec<(Formula, Formula)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let atoms = random_atoms(&mut rng);
            let core = random_ht(&mut rng, atoms, 3);
            let extra_a = random_ht(&mut rng, atoms, 2);
            let extra_b = random_ht(&mut rng, atoms, 2);
            let a = Formula::and(core.clone(), extra_a);
            let b = if rng.gen_bool(0.5) {
                Formula::or(extra_b, core)
            } else {
                Formula::imp(extra_b, core)
            };
            (a, b)
        })
        .collect()
}

/// All assignments over `atoms`, in the oracle's enumeration order.
pub fn all_assignments(atoms: &[String]) -> Vec<htcraig::Assignment> {
    let mut rows = vec![htcraig::Assignment::new()];
    for atom in atoms {
        rows = rows
            .into_iter()
            .flat_map(|row| {
                htcraig::TruthValue::ALL
                    .iter()
                    .map(move |&v| row.clone().with(atom.clone(), v))
            })
            .collect();
    }
    rows
}
