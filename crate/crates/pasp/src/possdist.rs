//! Semantic layer: possibility distributions over the full interpretation
//! lattice, the necessity constraints induced by rules, least specific
//! models and the guess-consistency answer-set search.
//!
//! The distribution is stored explicitly, one degree per interpretation
//! (all `2^|base|` of them). That is deliberate: this module is the
//! ground-truth oracle the syntactic solvers are validated against, so it
//! favours transparency over scale.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::classical::{require_classical, Interpretation};
use crate::error::Error;
use crate::preduct::{decode_guess, require_on_scale, Valuation};
use crate::search::SearchOptions;
use crate::syntax::{Atom, Program};
use crate::weight::{CertaintyScale, Weight};

/// Guard default for [`semantic_answer_sets`]: the maximum value of
/// `2^|base| * |grid|^|naf|`, i.e. distribution cells times guesses.
pub const DEFAULT_CELL_GUARD: u128 = 1_000_000;

/// A possibility distribution over all interpretations of a finite base.
///
/// Interpretations are indexed by bitmask: bit `i` set means the `i`-th
/// base atom (in ascending order) is in the world. The possibility and
/// necessity measures are always derived from the stored degrees, never
/// kept separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilityDistribution {
    base: Vec<Atom>,
    values: Vec<Weight>,
}

impl PossibilityDistribution {
    /// The distribution of total ignorance: every world fully possible.
    pub fn uniform<I: IntoIterator<Item = Atom>>(base: I) -> Self {
        let base: Vec<Atom> = {
            let set: BTreeSet<Atom> = base.into_iter().collect();
            set.into_iter().collect()
        };
        assert!(base.len() < 28, "distribution base too large to enumerate");
        let values = vec![Weight::one(); 1 << base.len()];
        PossibilityDistribution { base, values }
    }

    /// Builds a distribution from explicit degrees, one per world, indexed
    /// by bitmask over the ascending base.
    pub fn from_degrees<I: IntoIterator<Item = Atom>>(base: I, values: Vec<Weight>) -> Self {
        let base: Vec<Atom> = {
            let set: BTreeSet<Atom> = base.into_iter().collect();
            set.into_iter().collect()
        };
        assert_eq!(values.len(), 1 << base.len(), "one degree per world");
        PossibilityDistribution { base, values }
    }

    pub fn base(&self) -> &[Atom] {
        &self.base
    }

    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    fn index_of(&self, atom: &Atom) -> Result<usize, Error> {
        self.base
            .binary_search(atom)
            .map_err(|_| Error::UnknownAtom(atom.clone()))
    }

    /// The world encoded by a cell index.
    pub fn world(&self, mask: usize) -> Interpretation {
        self.base
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }

    pub fn degree_at(&self, mask: usize) -> Weight {
        self.values[mask]
    }

    /// The possibility degree of a world given as an interpretation.
    pub fn degree(&self, world: &Interpretation) -> Result<Weight, Error> {
        let mut mask = 0usize;
        for atom in world.iter() {
            mask |= 1 << self.index_of(atom)?;
        }
        Ok(self.values[mask])
    }

    /// `Π(¬a)`: the highest possibility among worlds excluding `a`.
    pub fn possibility_not(&self, atom: &Atom) -> Result<Weight, Error> {
        let bit = 1usize << self.index_of(atom)?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask & bit == 0)
            .map(|(_, w)| *w)
            .max()
            .unwrap_or(Weight::zero()))
    }
}

/// `N(a) = 1 - Π(¬a)`: the extent to which `a` is entailed by the beliefs
/// encoded in `pi`.
pub fn necessity(pi: &PossibilityDistribution, atom: &Atom) -> Result<Weight, Error> {
    Ok(pi.possibility_not(atom)?.complement())
}

/// A hypothesised value of `Π(¬a)` for each naf atom: the certainty with
/// which it is consistent to assume the atom is not true. Validated after
/// the fact by [`guess_consistent`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Guess(BTreeMap<Atom, Weight>);

impl Guess {
    pub fn new() -> Self {
        Guess::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Atom, Weight)>>(pairs: I) -> Self {
        Guess(pairs.into_iter().collect())
    }

    pub fn get(&self, atom: &Atom) -> Option<Weight> {
        self.0.get(atom).copied()
    }

    pub fn set(&mut self, atom: Atom, weight: Weight) {
        self.0.insert(atom, weight);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, Weight)> {
        self.0.iter().map(|(a, w)| (a, *w))
    }
}

/// The constraint a weighted rule induces on possibility distributions:
/// `N(head) >= min(N(body atoms), naf bounds, rule weight)`. A classical
/// rule is the special case `rule_weight = 1`; a definite rule the special
/// case of no naf bounds; a fact bounds the head by the rule weight alone
/// since the necessity of the empty conjunction is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessityConstraint {
    pub head: Atom,
    pub body_atoms: Vec<Atom>,
    pub naf_bounds: Vec<Weight>,
    pub rule_weight: Weight,
}

impl NecessityConstraint {
    /// The current right-hand side of the constraint under `pi`.
    fn bound(&self, pi: &PossibilityDistribution) -> Weight {
        let mut bound = self.rule_weight;
        for b in &self.naf_bounds {
            bound = bound.min(*b);
        }
        for atom in &self.body_atoms {
            let n = necessity(pi, atom).expect("constraint atom must be in the base");
            bound = bound.min(n);
        }
        bound
    }

    /// Whether `pi` satisfies the constraint.
    pub fn holds(&self, pi: &PossibilityDistribution) -> bool {
        let head = necessity(pi, &self.head).expect("constraint head must be in the base");
        head >= self.bound(pi)
    }
}

/// One constraint per rule, with the guess supplying the bound for every
/// naf atom. Fails when the guess is missing a naf atom of the program.
pub fn constraints_of(program: &Program, guess: &Guess) -> Result<Vec<NecessityConstraint>, Error> {
    program
        .rules()
        .iter()
        .map(|p| {
            let naf_bounds = p
                .rule
                .naf_body
                .iter()
                .map(|a| guess.get(a).ok_or_else(|| Error::MissingGuess(a.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(NecessityConstraint {
                head: p.rule.head.clone(),
                body_atoms: p.rule.pos_body.clone(),
                naf_bounds,
                rule_weight: p.weight,
            })
        })
        .collect()
}

/// The unique least specific (pointwise maximal) distribution satisfying
/// all constraints.
///
/// Starts from total ignorance and contracts: each sweep recomputes every
/// constraint's bound `b` from the current necessity values, then clamps
/// every world excluding the head to at most `1 - b`. Degrees only ever
/// decrease and live in the finite lattice generated by the input weights
/// under complement and `min`, so the iteration terminates; because the
/// sweep operator is monotone, its order never affects the result.
pub fn least_specific(
    base: &BTreeSet<Atom>,
    constraints: &[NecessityConstraint],
) -> PossibilityDistribution {
    let mut pi = PossibilityDistribution::uniform(base.iter().cloned());
    loop {
        let bounds: Vec<Weight> = constraints.iter().map(|c| c.bound(&pi)).collect();
        let mut changed = false;
        for (constraint, bound) in constraints.iter().zip(&bounds) {
            let head_bit = 1usize
                << pi
                    .index_of(&constraint.head)
                    .expect("constraint head must be in the base");
            let cap = bound.complement();
            for mask in 0..pi.values.len() {
                if mask & head_bit == 0 && pi.values[mask] > cap {
                    pi.values[mask] = cap;
                    changed = true;
                }
            }
        }
        if !changed {
            return pi;
        }
    }
}

/// Whether the guess matches the distribution exactly: `g(a) = Π(¬a)` (as
/// rationals, no tolerance) for every atom in `atoms`.
pub fn guess_consistent<'a, I>(
    pi: &PossibilityDistribution,
    guess: &Guess,
    atoms: I,
) -> Result<bool, Error>
where
    I: IntoIterator<Item = &'a Atom>,
{
    for atom in atoms {
        let hypothesised = guess
            .get(atom)
            .ok_or_else(|| Error::MissingGuess(atom.clone()))?;
        if hypothesised != pi.possibility_not(atom)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All grid-valued possibilistic answer sets, derived semantically.
///
/// For every assignment of grid values to the naf atoms: build the
/// constraints, compute the least specific model, extend the guess to the
/// remaining atoms by `g(a) := Π(¬a)` (the model is independent of those
/// values, so this is lossless), and accept the valuation
/// `a -> N(a)` when the extended guess is consistent on the whole base.
pub fn semantic_answer_sets(
    program: &Program,
    grid: &CertaintyScale,
    options: &SearchOptions,
) -> Result<Vec<Valuation>, Error> {
    require_on_scale(program, grid)?;
    let base = program.herbrand_base();
    let naf: Vec<Atom> = program.naf_atoms().into_iter().collect();
    let guesses = (grid.len() as u128)
        .checked_pow(naf.len() as u32)
        .unwrap_or(u128::MAX);
    let cells = 1u128.checked_shl(base.len() as u32).unwrap_or(u128::MAX);
    let needed = cells.saturating_mul(guesses);
    let limit = options.limit_or(DEFAULT_CELL_GUARD);
    if needed > limit {
        return Err(Error::GuardExceeded { needed, limit });
    }

    let check = |index: u64| -> Option<Valuation> {
        let guess_valuation = decode_guess(index, &naf, grid);
        let mut guess = Guess::new();
        for atom in &naf {
            guess.set(atom.clone(), guess_valuation.value(atom));
        }
        let constraints = constraints_of(program, &guess).expect("guess covers all naf atoms");
        let pi = least_specific(&base, &constraints);
        for atom in &base {
            if !naf.contains(atom) {
                let poss = pi.possibility_not(atom).expect("atom is in the base");
                guess.set(atom.clone(), poss);
            }
        }
        let consistent =
            guess_consistent(&pi, &guess, &base).expect("guess now covers the whole base");
        if !consistent {
            return None;
        }
        let valuation = base
            .iter()
            .map(|a| {
                let n = necessity(&pi, a).expect("atom is in the base");
                (a.clone(), n)
            })
            .collect();
        Some(valuation)
    };

    let total = guesses as u64;
    let found: BTreeSet<Valuation> = if options.parallel {
        (0..total).into_par_iter().filter_map(check).collect()
    } else {
        (0..total).filter_map(check).collect()
    };
    Ok(found.into_iter().collect())
}

/// Classical answer sets recovered semantically: the answer-set search
/// restricted to results where every necessity degree is 0 or 1, each
/// projected to its set of fully certain atoms.
pub fn semantic_classical_answer_sets(
    program: &Program,
    grid: &CertaintyScale,
    options: &SearchOptions,
) -> Result<Vec<Interpretation>, Error> {
    require_classical(program)?;
    let sets = semantic_answer_sets(program, grid, options)?;
    let mut found = BTreeSet::new();
    for valuation in sets {
        // Stored degrees are the non-zero ones, so "all in {0,1}" means
        // every stored degree is exactly 1.
        if valuation.iter().all(|(_, w)| w.is_one()) {
            found.insert(valuation.support());
        }
    }
    Ok(found.into_iter().collect())
}
