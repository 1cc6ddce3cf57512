//! Shared helpers for the property suites: seeded program generation and
//! an independent brute-force oracle for classical answer sets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pasp::{Atom, CertaintyScale, PossRule, Program, Rule, Valuation, Weight};

pub fn atom(s: &str) -> Atom {
    Atom::new(s).unwrap()
}

pub fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

pub fn val(pairs: &[(&str, &str)]) -> Valuation {
    pairs.iter().map(|(a, v)| (atom(a), w(v))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small closed scale with at most five degrees: the complement closure
/// of one random decimal plus 1/2.
pub fn random_scale(rng: &mut ChaCha8Rng) -> CertaintyScale {
    let tenths = rng.gen_range(1..=9);
    CertaintyScale::closure([
        Weight::new(tenths, 10).unwrap(),
        Weight::new(1, 2).unwrap(),
    ])
}

/// A random program over at most `pool.len()` atoms with up to
/// `max_rules` rules, weights drawn from the positive part of `scale`
/// (all 1 when `classical`). Body parts have at most two atoms each.
pub fn random_program(
    rng: &mut ChaCha8Rng,
    pool: &[Atom],
    scale: &CertaintyScale,
    max_rules: usize,
    classical: bool,
) -> Program {
    let positive: Vec<Weight> = scale.iter().filter(|w| !w.is_zero()).collect();
    let n_rules = rng.gen_range(1..=max_rules);
    let mut rules = Vec::with_capacity(n_rules);
    for _ in 0..n_rules {
        let head = pool.choose(rng).unwrap().clone();
        let mut shuffled: Vec<Atom> = pool.to_vec();
        shuffled.shuffle(rng);
        let n_pos = rng.gen_range(0..=2.min(shuffled.len()));
        let pos_body: Vec<Atom> = shuffled[..n_pos].to_vec();
        shuffled.shuffle(rng);
        let n_naf = rng.gen_range(0..=2.min(shuffled.len()));
        let naf_body: Vec<Atom> = shuffled[..n_naf].to_vec();
        let weight = if classical {
            Weight::one()
        } else {
            *positive.choose(rng).unwrap()
        };
        rules.push(PossRule::new(Rule::new(head, pos_body, naf_body), weight).unwrap());
    }
    Program::new(rules)
}

pub fn small_pool() -> Vec<Atom> {
    ["a", "b", "c", "d"].map(atom).to_vec()
}

pub fn pool_of(n: usize) -> Vec<Atom> {
    assert!(n <= 12);
    (0..n)
        .map(|i| atom(&format!("{}", (b'a' + i as u8) as char)))
        .collect()
}

/// Brute-force classical answer sets, written from scratch against the
/// textbook definitions: try every interpretation, reduce, saturate, and
/// compare. Kept independent of the solver code on purpose.
pub fn naive_answer_sets(program: &Program) -> Vec<BTreeSet<Atom>> {
    let base: Vec<Atom> = program.herbrand_base().into_iter().collect();
    assert!(base.len() <= 16, "oracle is exponential in the base: {base:?}");
    let mut found = Vec::new();
    for mask in 0u32..(1 << base.len()) {
        let candidate: BTreeSet<Atom> = base
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        if naive_is_answer_set(program, &candidate) {
            found.push(candidate);
        }
    }
    found.sort();
    found
}

fn naive_is_answer_set(program: &Program, candidate: &BTreeSet<Atom>) -> bool {
    // Reduct: drop rules with a naf atom in the candidate, strip naf.
    let reduct: Vec<(&Atom, &[Atom])> = program
        .rules()
        .iter()
        .filter(|p| p.rule.naf_body.iter().all(|a| !candidate.contains(a)))
        .map(|p| (&p.rule.head, p.rule.pos_body.as_slice()))
        .collect();
    // Saturate from nothing.
    let mut derived: BTreeSet<Atom> = BTreeSet::new();
    loop {
        let before = derived.len();
        for (head, body) in &reduct {
            if body.iter().all(|a| derived.contains(a)) {
                derived.insert((*head).clone());
            }
        }
        if derived.len() == before {
            break;
        }
    }
    derived == *candidate
}

/// All valuations assigning grid degrees to the given atoms.
pub fn all_grid_valuations(atoms: &[Atom], grid: &CertaintyScale) -> Vec<Valuation> {
    let degrees = grid.degrees();
    let mut out = Vec::new();
    let total = degrees.len().pow(atoms.len() as u32);
    for mut index in 0..total {
        let mut v = Valuation::new();
        for atom in atoms {
            let digit = index % degrees.len();
            index /= degrees.len();
            v.set(atom.clone(), degrees[digit]);
        }
        out.push(v);
    }
    out
}
