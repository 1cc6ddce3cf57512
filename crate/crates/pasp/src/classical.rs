//! Classical answer set semantics for propositional normal programs.
//!
//! Reduct, least-model fixpoint, answer set checking and enumeration. The
//! operations here read programs classically: weights are ignored (use
//! [`strip_weights`] to make that projection explicit). This core targets
//! desk-scale correctness, not competitive performance.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::Error;
use crate::search::SearchOptions;
use crate::syntax::{Atom, PossRule, Program, Rule};
use crate::weight::Weight;

/// Guard default for [`enumerate_answer_sets`]: the maximum number of naf
/// atoms to guess over (a space of `2^n` candidates).
pub const DEFAULT_NAF_GUARD: u128 = 20;

/// A classical possible world: a set of atoms. `I` satisfies an atom `a`
/// iff `a` is in `I`; the truth atom is implicit and always satisfied.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Interpretation(BTreeSet::new())
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        Interpretation(atoms.into_iter().collect())
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn satisfies_all<'a, I: IntoIterator<Item = &'a Atom>>(&self, atoms: I) -> bool {
        atoms.into_iter().all(|a| self.contains(a))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    /// True when `self` is a model of the (classically read) program.
    pub fn is_model_of(&self, program: &Program) -> bool {
        program.rules().iter().all(|p| {
            let body_holds = self.satisfies_all(&p.rule.pos_body)
                && p.rule.naf_body.iter().all(|a| !self.contains(a));
            !body_holds || self.contains(&p.rule.head)
        })
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, atom) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, "}}")
    }
}

/// The classical projection: the same rules with every weight set to 1.
pub fn strip_weights(program: &Program) -> Program {
    Program::new(
        program
            .rules()
            .iter()
            .map(|p| PossRule::classical(p.rule.clone()))
            .collect(),
    )
}

/// The Gelfond-Lifschitz reduct of `program` with respect to `interp`:
/// keeps `head :- pos_body` exactly when no naf atom of the rule is in
/// `interp`. The result is definite; weights are carried over unchanged,
/// so the reduct of a definite program is that program.
pub fn gl_reduct(program: &Program, interp: &Interpretation) -> Program {
    Program::new(
        program
            .rules()
            .iter()
            .filter(|p| p.rule.naf_body.iter().all(|a| !interp.contains(a)))
            .map(|p| PossRule {
                rule: Rule::new(p.rule.head.clone(), p.rule.pos_body.clone(), Vec::new()),
                weight: p.weight,
            })
            .collect(),
    )
}

/// The least model of a definite program: the fixpoint of the immediate
/// consequence operator `T_P(I) = I ∪ {head | body satisfied}` starting
/// from the empty interpretation. Reached in at most `|herbrand base|`
/// rounds because each round either adds an atom or stops.
pub fn least_model(program: &Program) -> Result<Interpretation, Error> {
    if let Some(index) = program
        .rules()
        .iter()
        .position(|p| !p.rule.is_definite())
    {
        return Err(Error::NotDefinite { rule_index: index });
    }
    Ok(least_model_definite(program))
}

fn least_model_definite(program: &Program) -> Interpretation {
    let mut interp = Interpretation::new();
    loop {
        let mut changed = false;
        for p in program.rules() {
            if !interp.contains(&p.rule.head) && interp.satisfies_all(&p.rule.pos_body) {
                interp.insert(p.rule.head.clone());
                changed = true;
            }
        }
        if !changed {
            return interp;
        }
    }
}

/// True iff `interp` equals the least model of the program's reduct with
/// respect to `interp`.
pub fn is_answer_set(program: &Program, interp: &Interpretation) -> bool {
    least_model_definite(&gl_reduct(program, interp)) == *interp
}

/// All answer sets, in ascending order.
///
/// The search guesses which naf atoms end up in the candidate: the reduct
/// depends on the candidate only through those atoms, so guessing over
/// `2^|naf|` subsets instead of `2^|base|` interpretations is lossless. A
/// guess `S` is accepted when the least model of the corresponding reduct
/// intersects the naf atoms in exactly `S`.
///
/// Refuses with [`Error::GuardExceeded`] instead of silently truncating
/// when there are more naf atoms than the guard allows.
pub fn enumerate_answer_sets(
    program: &Program,
    options: &SearchOptions,
) -> Result<Vec<Interpretation>, Error> {
    let naf: Vec<Atom> = program.naf_atoms().into_iter().collect();
    let limit = options.limit_or(DEFAULT_NAF_GUARD);
    if naf.len() as u128 > limit || naf.len() >= 64 {
        return Err(Error::GuardExceeded {
            needed: naf.len() as u128,
            limit: limit.min(63),
        });
    }
    let base: Vec<Atom> = program.herbrand_base().into_iter().collect();
    let found = if base.len() <= 64 {
        enumerate_packed(program, &base, &naf, options)
    } else {
        enumerate_general(program, &naf, options)
    };
    Ok(found.into_iter().collect())
}

/// Bit-packed search: interpretations as masks over the base, one rule
/// scan per saturation round. Only the few accepted models are converted
/// back into interpretations.
fn enumerate_packed(
    program: &Program,
    base: &[Atom],
    naf: &[Atom],
    options: &SearchOptions,
) -> BTreeSet<Interpretation> {
    let bit_of = |atom: &Atom| -> u64 {
        1u64 << base.binary_search(atom).expect("atom is in the base")
    };
    // Per rule: head bit, positive-body mask over the base, naf mask over
    // guess positions.
    let rules: Vec<(u64, u64, u64)> = program
        .rules()
        .iter()
        .map(|p| {
            let head = bit_of(&p.rule.head);
            let pos = p.rule.pos_body.iter().map(&bit_of).fold(0, |m, b| m | b);
            let blockers = p
                .rule
                .naf_body
                .iter()
                .map(|a| 1u64 << naf.binary_search(a).expect("atom is a naf atom"))
                .fold(0, |m, b| m | b);
            (head, pos, blockers)
        })
        .collect();
    let naf_bits: Vec<u64> = naf.iter().map(&bit_of).collect();

    let check = |guess: u64| -> Option<u64> {
        let mut model = 0u64;
        loop {
            let mut changed = false;
            for (head, pos, blockers) in &rules {
                if blockers & guess == 0 && model & pos == *pos && model & head == 0 {
                    model |= head;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let consistent = naf_bits
            .iter()
            .enumerate()
            .all(|(i, bit)| (model & bit != 0) == (guess & (1 << i) != 0));
        consistent.then_some(model)
    };

    let total = 1u64 << naf.len();
    let accepted: Vec<u64> = if options.parallel {
        (0..total).into_par_iter().filter_map(check).collect()
    } else {
        (0..total).filter_map(check).collect()
    };
    accepted
        .into_iter()
        .map(|model| {
            base.iter()
                .enumerate()
                .filter(|(i, _)| model & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect()
}

/// Fallback for bases too wide to pack into a machine word.
fn enumerate_general(
    program: &Program,
    naf: &[Atom],
    options: &SearchOptions,
) -> BTreeSet<Interpretation> {
    let check = |mask: u64| -> Option<Interpretation> {
        let guess: Interpretation = naf
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        let model = least_model_definite(&gl_reduct(program, &guess));
        let hit = naf
            .iter()
            .all(|a| model.contains(a) == guess.contains(a));
        hit.then_some(model)
    };
    let total = 1u64 << naf.len();
    if options.parallel {
        (0..total).into_par_iter().filter_map(check).collect()
    } else {
        (0..total).filter_map(check).collect()
    }
}

/// Weights appearing in a classical program must all be 1.
pub fn require_classical(program: &Program) -> Result<(), Error> {
    match program
        .rules()
        .iter()
        .enumerate()
        .find(|(_, p)| p.weight != Weight::one())
    {
        Some((index, p)) => Err(Error::NotClassical {
            rule_index: index,
            weight: p.weight,
        }),
        None => Ok(()),
    }
}
