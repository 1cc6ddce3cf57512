//! Syntactic possibilistic semantics: valuations and cuts, the weighted
//! immediate-consequence fixpoint, the weight-attenuating reduct with its
//! answer-set check and enumeration, and the prior (baseline) semantics
//! that attaches certainties to classical answer sets after the fact.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::classical::{enumerate_answer_sets, strip_weights, Interpretation};
use crate::error::Error;
use crate::search::SearchOptions;
use crate::syntax::{Atom, PossRule, Program, Rule};
use crate::weight::{CertaintyScale, Weight};

/// Guard default for [`enumerate_poss_answer_sets`]: the maximum number of
/// guess candidates `|grid|^|naf|`.
pub const DEFAULT_CANDIDATE_GUARD: u128 = 1_000_000;

/// A mapping from atoms to certainty degrees. Atoms not listed map to 0;
/// only non-zero entries are stored, so two valuations are equal exactly
/// when they agree on every atom of any base.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(std::collections::BTreeMap<Atom, Weight>);

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Atom, Weight)>>(pairs: I) -> Self {
        let mut v = Valuation::new();
        for (atom, weight) in pairs {
            v.set(atom, weight);
        }
        v
    }

    pub fn value(&self, atom: &Atom) -> Weight {
        self.0.get(atom).copied().unwrap_or(Weight::zero())
    }

    /// Assigns a degree; assigning 0 removes the entry.
    pub fn set(&mut self, atom: Atom, weight: Weight) {
        if weight.is_zero() {
            self.0.remove(&atom);
        } else {
            self.0.insert(atom, weight);
        }
    }

    /// The atoms with a strictly positive degree.
    pub fn support(&self) -> Interpretation {
        self.0.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, Weight)> {
        self.0.iter().map(|(a, w)| (a, *w))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The cut of the valuation over `atoms`: the atoms whose degree is at
    /// least (`strict = false`) or strictly above (`strict = true`) the
    /// threshold. The base must be passed explicitly because atoms outside
    /// the stored support implicitly have degree 0 — the non-strict cut at
    /// 0 is all of `atoms`.
    pub fn cut<'a, I>(&self, atoms: I, threshold: Weight, strict: bool) -> Interpretation
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        atoms
            .into_iter()
            .filter(|a| {
                let v = self.value(a);
                if strict {
                    v > threshold
                } else {
                    v >= threshold
                }
            })
            .cloned()
            .collect()
    }
}

impl FromIterator<(Atom, Weight)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (Atom, Weight)>>(iter: I) -> Self {
        Valuation::from_pairs(iter)
    }
}

impl fmt::Display for Valuation {
    /// Set notation listing only non-zero atoms, e.g. `{can=0.2, cb=1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (atom, weight)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{atom}={weight}")?;
        }
        write!(f, "}}")
    }
}

/// The subprogram of rules whose certainty is at least `c`.
pub fn c_cut(program: &Program, c: Weight) -> Program {
    Program::new(
        program
            .rules()
            .iter()
            .filter(|p| p.weight >= c)
            .cloned()
            .collect(),
    )
}

/// One application of the weighted immediate-consequence operator to a
/// definite program: the new degree of a head is the maximum, over its
/// rules, of `min(rule weight, min over body atoms of their degree)`,
/// never below the previous degree. The minimum over an empty body is 1,
/// so a fact contributes its own weight.
pub fn poss_step(program: &Program, valuation: &Valuation) -> Result<Valuation, Error> {
    require_definite(program)?;
    Ok(poss_step_definite(program, valuation))
}

fn poss_step_definite(program: &Program, valuation: &Valuation) -> Valuation {
    let mut next = valuation.clone();
    for p in program.rules() {
        let mut contribution = p.weight;
        for atom in &p.rule.pos_body {
            contribution = contribution.min(valuation.value(atom));
        }
        if contribution > next.value(&p.rule.head) {
            next.set(p.rule.head.clone(), contribution);
        }
    }
    next
}

/// The least fixpoint of [`poss_step`] starting from the all-zero
/// valuation. The operator is inflationary and every degree comes from
/// the finite lattice generated by the rule weights under `min`, so the
/// iteration terminates within `|base| * |distinct weights|` sweeps.
pub fn poss_least_fixpoint(program: &Program) -> Result<Valuation, Error> {
    require_definite(program)?;
    Ok(poss_least_fixpoint_definite(program))
}

fn poss_least_fixpoint_definite(program: &Program) -> Valuation {
    let mut current = Valuation::new();
    loop {
        let next = poss_step_definite(program, &current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn require_definite(program: &Program) -> Result<(), Error> {
    match program
        .rules()
        .iter()
        .position(|p| !p.rule.is_definite())
    {
        Some(rule_index) => Err(Error::NotDefinite { rule_index }),
        None => Ok(()),
    }
}

/// The weight-attenuating reduct of `program` with respect to `valuation`.
///
/// Each rule of weight `c1` survives with weight `min(c1, c2)` where
/// `c2 = 1 - max over its naf atoms of their degree` (1 for an empty naf
/// part): the highest `c` for which no naf atom exceeds certainty `1 - c`.
/// Rules whose attenuated weight is 0 are dropped, so the result is a
/// definite program with strictly positive weights.
pub fn poss_reduct(program: &Program, valuation: &Valuation) -> Program {
    let mut rules = Vec::new();
    for p in program.rules() {
        let blocked = p
            .rule
            .naf_body
            .iter()
            .map(|a| valuation.value(a))
            .max()
            .unwrap_or(Weight::zero());
        let effective = p.weight.min(blocked.complement());
        if !effective.is_zero() {
            rules.push(PossRule {
                rule: Rule::new(p.rule.head.clone(), p.rule.pos_body.clone(), Vec::new()),
                weight: effective,
            });
        }
    }
    Program::new(rules)
}

/// True iff the least fixpoint of the reduct with respect to `valuation`
/// reproduces `valuation` exactly (rational equality on every atom).
pub fn is_poss_answer_set(program: &Program, valuation: &Valuation) -> bool {
    poss_least_fixpoint_definite(&poss_reduct(program, valuation)) == *valuation
}

/// The default search grid for a program: its rule weights together with
/// 0, 1/2 and 1, closed under complement. The complement closure is forced
/// by the reduct's attenuation; 1/2 captures self-blocking fixpoints.
pub fn default_grid(program: &Program) -> CertaintyScale {
    CertaintyScale::closure(
        program
            .weights()
            .into_iter()
            .chain([Weight::new(1, 2).expect("1/2 is in range")]),
    )
}

/// All grid-valued possibilistic answer sets, in ascending order.
///
/// The reduct depends on a valuation only through its naf atoms, so the
/// search assigns grid values to exactly those, computes the fixpoint of
/// the induced reduct and accepts it when it reproduces the guess. Every
/// accepted valuation satisfies [`is_poss_answer_set`], and every answer
/// set whose degrees all lie on the grid is found.
pub fn enumerate_poss_answer_sets(
    program: &Program,
    grid: &CertaintyScale,
    options: &SearchOptions,
) -> Result<Vec<Valuation>, Error> {
    require_on_scale(program, grid)?;
    let naf: Vec<Atom> = program.naf_atoms().into_iter().collect();
    let total = (grid.len() as u128)
        .checked_pow(naf.len() as u32)
        .unwrap_or(u128::MAX);
    let limit = options.limit_or(DEFAULT_CANDIDATE_GUARD);
    if total > limit {
        return Err(Error::GuardExceeded {
            needed: total,
            limit,
        });
    }
    let check = |index: u64| -> Option<Valuation> {
        let guess = decode_guess(index, &naf, grid);
        let found = poss_least_fixpoint_definite(&poss_reduct(program, &guess));
        let hit = naf.iter().all(|a| found.value(a) == guess.value(a));
        hit.then_some(found)
    };
    let total = total as u64;
    let found: BTreeSet<Valuation> = if options.parallel {
        (0..total).into_par_iter().filter_map(check).collect()
    } else {
        (0..total).filter_map(check).collect()
    };
    Ok(found.into_iter().collect())
}

/// Decodes a guess index into a valuation on the naf atoms, mixed-radix
/// over the grid.
pub(crate) fn decode_guess(index: u64, naf: &[Atom], grid: &CertaintyScale) -> Valuation {
    let mut rest = index;
    let radix = grid.len() as u64;
    let mut v = Valuation::new();
    for atom in naf {
        let digit = (rest % radix) as usize;
        rest /= radix;
        v.set(atom.clone(), grid.degrees()[digit]);
    }
    v
}

pub(crate) fn require_on_scale(program: &Program, scale: &CertaintyScale) -> Result<(), Error> {
    for p in program.rules() {
        if !scale.contains(p.weight) {
            return Err(Error::OffScaleWeight { weight: p.weight });
        }
    }
    Ok(())
}

/// The prior semantics' reduct: a rule survives, with its weight
/// unchanged, exactly when none of its naf atoms is in `atoms`. Unlike
/// [`poss_reduct`] the certainty of the blocking atoms plays no role.
pub fn baseline_reduct(program: &Program, atoms: &Interpretation) -> Program {
    Program::new(
        program
            .rules()
            .iter()
            .filter(|p| p.rule.naf_body.iter().all(|a| !atoms.contains(a)))
            .map(|p| PossRule {
                rule: Rule::new(p.rule.head.clone(), p.rule.pos_body.clone(), Vec::new()),
                weight: p.weight,
            })
            .collect(),
    )
}

/// The prior semantics: determine the classical answer sets ignoring the
/// weights, then re-derive certainties through the weight-preserving
/// reduct. A candidate is kept when the fixpoint's support reproduces the
/// classical answer set.
pub fn baseline_answer_sets(
    program: &Program,
    options: &SearchOptions,
) -> Result<Vec<Valuation>, Error> {
    let classical = enumerate_answer_sets(&strip_weights(program), options)?;
    let mut found = BTreeSet::new();
    for model in classical {
        let valuation = poss_least_fixpoint_definite(&baseline_reduct(program, &model));
        if valuation.support() == model {
            found.insert(valuation);
        }
    }
    Ok(found.into_iter().collect())
}
