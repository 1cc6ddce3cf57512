//! Abstract syntax for weighted normal logic programs.
//!
//! A program is an ordered list of weighted rules
//! `w: head :- b1, ..., bm, not c1, ..., not cn.` where the truth atom is
//! implicit: a fact is simply a rule with an empty body. All values are
//! immutable after construction and safe to share across threads.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::weight::Weight;

/// A propositional atom. Names start with a lowercase letter and contain
/// only letters, digits and underscores.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    /// Validates and wraps an atom name. `not` is reserved by the grammar.
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || name == "not" {
            return Err(Error::InvalidAtomName(name));
        }
        Ok(Atom(name))
    }

    /// Wraps a name that is already known to be valid (e.g. generated names).
    pub(crate) fn from_valid(name: String) -> Self {
        debug_assert!(Atom::new(name.clone()).is_ok(), "invalid atom `{name}`");
        Atom(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A normal rule `head :- pos_body, not naf_body`.
///
/// Both body parts are duplicate-free and keep their source order. An atom
/// may occur both positively and under naf in the same body; the semantics
/// copes with that, so the syntax does not forbid it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Atom,
    pub pos_body: Vec<Atom>,
    pub naf_body: Vec<Atom>,
}

impl Rule {
    pub fn new(head: Atom, pos_body: Vec<Atom>, naf_body: Vec<Atom>) -> Self {
        debug_assert!(no_duplicates(&pos_body) && no_duplicates(&naf_body));
        Rule {
            head,
            pos_body,
            naf_body,
        }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::new(head, Vec::new(), Vec::new())
    }

    pub fn is_fact(&self) -> bool {
        self.pos_body.is_empty() && self.naf_body.is_empty()
    }

    pub fn is_definite(&self) -> bool {
        self.naf_body.is_empty()
    }
}

fn no_duplicates(atoms: &[Atom]) -> bool {
    let set: BTreeSet<&Atom> = atoms.iter().collect();
    set.len() == atoms.len()
}

/// A rule with a certainty degree attached. Validation rejects weight 0:
/// such a rule can never contribute to any conclusion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PossRule {
    pub rule: Rule,
    pub weight: Weight,
}

impl PossRule {
    pub fn new(rule: Rule, weight: Weight) -> Result<Self, Error> {
        if weight.is_zero() {
            return Err(Error::WeightOutOfRange {
                literal: format!("0 (rule `{}` could never contribute)", render_rule_body(&rule)),
            });
        }
        Ok(PossRule { rule, weight })
    }

    /// A classical rule: the omitted weight defaults to 1.
    pub fn classical(rule: Rule) -> Self {
        PossRule {
            rule,
            weight: Weight::one(),
        }
    }
}

/// Whether a program uses negation as failure anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    Definite,
    Normal,
}

/// An ordered list of weighted rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<PossRule>,
}

impl Program {
    pub fn new(rules: Vec<PossRule>) -> Self {
        Program { rules }
    }

    pub fn rules(&self) -> &[PossRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    /// Derived from the rules, so it can never fall out of sync with them.
    pub fn kind(&self) -> ProgramKind {
        if self.rules.iter().all(|p| p.rule.is_definite()) {
            ProgramKind::Definite
        } else {
            ProgramKind::Normal
        }
    }

    pub fn is_definite(&self) -> bool {
        self.kind() == ProgramKind::Definite
    }

    /// True when every rule has weight 1.
    pub fn is_classical(&self) -> bool {
        self.rules.iter().all(|p| p.weight.is_one())
    }

    /// All atoms occurring anywhere in the program: heads, positive bodies
    /// and naf bodies, nothing else.
    pub fn herbrand_base(&self) -> BTreeSet<Atom> {
        let mut base = BTreeSet::new();
        for p in &self.rules {
            base.insert(p.rule.head.clone());
            base.extend(p.rule.pos_body.iter().cloned());
            base.extend(p.rule.naf_body.iter().cloned());
        }
        base
    }

    /// Exactly the atoms occurring in some naf body. This is the guess
    /// space of every solver: the reduct of a program depends on a
    /// candidate only through these atoms.
    pub fn naf_atoms(&self) -> BTreeSet<Atom> {
        let mut atoms = BTreeSet::new();
        for p in &self.rules {
            atoms.extend(p.rule.naf_body.iter().cloned());
        }
        atoms
    }

    /// The distinct rule weights, in ascending order.
    pub fn weights(&self) -> BTreeSet<Weight> {
        self.rules.iter().map(|p| p.weight).collect()
    }
}

fn render_rule_body(rule: &Rule) -> String {
    let mut parts: Vec<String> = rule.pos_body.iter().map(|a| a.to_string()).collect();
    parts.extend(rule.naf_body.iter().map(|a| format!("not {a}")));
    if parts.is_empty() {
        rule.head.to_string()
    } else {
        format!("{} :- {}", rule.head, parts.join(", "))
    }
}

impl fmt::Display for PossRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}.", self.weight, render_rule_body(&self.rule))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Canonical textual form with explicit weights, one statement per line.
/// The round trip `parse_program(render_program(p)) == p` holds for every
/// valid program.
pub fn render_program(program: &Program) -> String {
    program.to_string()
}

/// See [`Program::naf_atoms`].
pub fn naf_atoms(program: &Program) -> BTreeSet<Atom> {
    program.naf_atoms()
}
