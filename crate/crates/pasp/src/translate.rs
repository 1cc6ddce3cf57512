//! Compilation of weighted programs into classical programs over
//! level-indexed fresh atoms, and the lift back from classical answer sets
//! to valuations.
//!
//! A scaled atom `a__i` asserts "the certainty of `a` is at least the
//! `i`-th scale degree". Each rule of weight `c` is expanded into one
//! classical rule per positive level `c' <= c`; a naf atom is tested at
//! the least level strictly above `1 - c'`, i.e. the weakest certainty
//! that would attenuate the rule below `c'`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::classical::{enumerate_answer_sets, Interpretation};
use crate::error::Error;
use crate::preduct::{is_poss_answer_set, Valuation};
use crate::search::SearchOptions;
use crate::syntax::{Atom, PossRule, Program, Rule};
use crate::weight::{CertaintyScale, Weight};

/// A fresh atom standing for "`base` holds with certainty at least
/// `level`".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScaledAtom {
    pub base: Atom,
    pub level: Weight,
}

impl fmt::Display for ScaledAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>={}", self.base, self.level)
    }
}

/// Bookkeeping for one translation: the scale and a bijection between
/// (base atom, positive level) pairs and the generated atom names.
#[derive(Debug, Clone)]
pub struct SimulationMap {
    scale: CertaintyScale,
    bases: BTreeSet<Atom>,
    forward: BTreeMap<(Atom, Weight), Atom>,
    reverse: BTreeMap<Atom, ScaledAtom>,
}

impl SimulationMap {
    fn build(bases: BTreeSet<Atom>, scale: CertaintyScale) -> Self {
        let mut forward = BTreeMap::new();
        let mut reverse = BTreeMap::new();
        for base in &bases {
            for level in scale.iter().filter(|w| !w.is_zero()) {
                let index = scale.index_of(level).expect("level is on the scale");
                let name = Atom::from_valid(format!("{}__{}", base.name(), index));
                forward.insert((base.clone(), level), name.clone());
                reverse.insert(
                    name,
                    ScaledAtom {
                        base: base.clone(),
                        level,
                    },
                );
            }
        }
        SimulationMap {
            scale,
            bases,
            forward,
            reverse,
        }
    }

    pub fn scale(&self) -> &CertaintyScale {
        &self.scale
    }

    pub fn base_atoms(&self) -> &BTreeSet<Atom> {
        &self.bases
    }

    /// The generated name for `base` at `level` (must be positive and on
    /// the scale).
    pub fn scaled(&self, base: &Atom, level: Weight) -> Option<&Atom> {
        self.forward.get(&(base.clone(), level))
    }

    /// The (base, level) pair a generated name stands for.
    pub fn unscaled(&self, name: &Atom) -> Option<&ScaledAtom> {
        self.reverse.get(name)
    }

    /// All `(base, level) -> name` entries, ascending by base then level.
    pub fn entries(&self) -> impl Iterator<Item = (&Atom, Weight, &Atom)> {
        self.forward.iter().map(|((base, level), name)| (base, *level, name))
    }
}

/// The smallest certainty scale for a program: its rule weights, 0, 1 and
/// any extra degrees, closed under complement.
pub fn certainty_scale<I: IntoIterator<Item = Weight>>(
    program: &Program,
    extra: I,
) -> CertaintyScale {
    CertaintyScale::closure(program.weights().into_iter().chain(extra))
}

fn collides_with_scaled_names(atom: &Atom) -> bool {
    match atom.name().rfind("__") {
        Some(i) => {
            let suffix = &atom.name()[i + 2..];
            !suffix.is_empty() && suffix.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

/// Translates a weighted program into a weight-free classical program over
/// scaled atoms.
///
/// Fails when the scale misses a rule weight, or when a source atom ends
/// in `__<digits>` and could therefore collide with a generated name.
pub fn translate(
    program: &Program,
    scale: &CertaintyScale,
) -> Result<(Program, SimulationMap), Error> {
    for p in program.rules() {
        if !scale.contains(p.weight) {
            return Err(Error::OffScaleWeight { weight: p.weight });
        }
    }
    let bases = program.herbrand_base();
    if let Some(atom) = bases.iter().find(|a| collides_with_scaled_names(a)) {
        return Err(Error::ScaledNameCollision(atom.clone()));
    }
    let map = SimulationMap::build(bases, scale.clone());

    let mut rules = Vec::new();
    for p in program.rules() {
        for level in scale.iter().rev().filter(|c| !c.is_zero() && *c <= p.weight) {
            let head = map
                .scaled(&p.rule.head, level)
                .expect("head level is mapped")
                .clone();
            let pos_body = p
                .rule
                .pos_body
                .iter()
                .map(|a| map.scaled(a, level).expect("body level is mapped").clone())
                .collect();
            // The blocking level: the weakest certainty of the naf atom
            // that already attenuates this rule below `level`.
            let blocking = scale
                .next_above(level.complement())
                .expect("1 is on the scale and level > 0");
            let naf_body = p
                .rule
                .naf_body
                .iter()
                .map(|a| map.scaled(a, blocking).expect("naf level is mapped").clone())
                .collect();
            rules.push(PossRule::classical(Rule::new(head, pos_body, naf_body)));
        }
    }
    Ok((Program::new(rules), map))
}

/// Reads a classical model of a translated program back into a valuation:
/// each base atom gets the highest level present, 0 when none is.
pub fn lift_back(model: &Interpretation, map: &SimulationMap) -> Result<Valuation, Error> {
    let mut valuation = Valuation::new();
    for name in model.iter() {
        let scaled = map
            .unscaled(name)
            .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
        if scaled.level > valuation.value(&scaled.base) {
            valuation.set(scaled.base.clone(), scaled.level);
        }
    }
    Ok(valuation)
}

/// The scaled image of a valuation: its downward closure on positive
/// scale levels. Only valuations whose degrees all lie on the scale have
/// an image; anything else is reported as an off-scale value.
pub fn project(valuation: &Valuation, map: &SimulationMap) -> Result<Interpretation, Error> {
    let mut model = Interpretation::new();
    for (atom, value) in valuation.iter() {
        if !map.base_atoms().contains(atom) {
            return Err(Error::UnknownAtom(atom.clone()));
        }
        if !map.scale().contains(value) {
            return Err(Error::OffScaleValue {
                atom: atom.clone(),
                value,
            });
        }
        for level in map.scale().iter().filter(|c| !c.is_zero() && *c <= value) {
            model.insert(map.scaled(atom, level).expect("level is mapped").clone());
        }
    }
    Ok(model)
}

/// Renders a classical program with the weights omitted: plain `.pasp`
/// statements that common ASP systems accept as-is. Parsing the text back
/// yields the program with every weight defaulted to 1.
pub fn render_classical(program: &Program) -> String {
    let mut out = String::new();
    for p in program.rules() {
        let mut parts: Vec<String> = p.rule.pos_body.iter().map(|a| a.to_string()).collect();
        parts.extend(p.rule.naf_body.iter().map(|a| format!("not {a}")));
        if parts.is_empty() {
            out.push_str(&format!("{}.\n", p.rule.head));
        } else {
            out.push_str(&format!("{} :- {}.\n", p.rule.head, parts.join(", ")));
        }
    }
    out
}

/// Renders the sidecar mapping, one `scaled-name TAB base-name TAB level`
/// line per scaled atom, so external solver output can be lifted back
/// offline.
pub fn render_map(map: &SimulationMap) -> String {
    let mut out = String::new();
    for (base, level, name) in map.entries() {
        out.push_str(&format!("{name}\t{base}\t{level}\n"));
    }
    out
}

/// Solves by compilation: translate, enumerate the classical answer sets
/// of the image, lift each back and keep those that check out as answer
/// sets of the source program.
///
/// The final check is not redundant: the image can have classical answer
/// sets that are not downward closed (an atom present at a high level but
/// absent at a lower one), and those do not encode any valuation. They
/// arise from even loops among the scaled atoms, e.g. `1: a :- not a.`
/// over the scale `{0, 0.5, 1}`.
pub fn solve_via_translation(
    program: &Program,
    scale: &CertaintyScale,
    options: &SearchOptions,
) -> Result<Vec<Valuation>, Error> {
    let (image, map) = translate(program, scale)?;
    let models = enumerate_answer_sets(&image, options)?;
    let mut found = BTreeSet::new();
    for model in models {
        let valuation = lift_back(&model, &map).expect("model atoms come from the map");
        if is_poss_answer_set(program, &valuation) {
            found.insert(valuation);
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn atom(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn val(pairs: &[(&str, &str)]) -> Valuation {
        pairs.iter().map(|(a, v)| (atom(a), w(v))).collect()
    }

    fn motivating() -> Program {
        parse_program("1: cb. 1: ld :- cb, not can. 0.2: can.").unwrap()
    }

    fn six_point_scale() -> CertaintyScale {
        CertaintyScale::closure([w("0.2"), w("0.4")])
    }

    #[test]
    fn scale_construction_closes_under_complement() {
        let p = motivating();
        assert_eq!(
            certainty_scale(&p, []).degrees(),
            &[w("0"), w("0.2"), w("0.8"), w("1")]
        );
        assert_eq!(
            certainty_scale(&p, [w("0.4"), w("0.6")]).degrees(),
            &[w("0"), w("0.2"), w("0.4"), w("0.6"), w("0.8"), w("1")]
        );
        let classical = parse_program("a. b :- a.").unwrap();
        assert_eq!(certainty_scale(&classical, []).degrees(), &[w("0"), w("1")]);
    }

    #[test]
    fn translation_of_the_motivating_program_has_eleven_rules() {
        let (image, map) = translate(&motivating(), &six_point_scale()).unwrap();
        assert_eq!(image.len(), 11);
        assert!(image.is_classical());
        assert!(image
            .rules()
            .iter()
            .all(|p| p.rule.naf_body.len() <= 1 && p.rule.pos_body.len() <= 1));

        // 5 facts for the weight-1 fact, 1 for the weight-0.2 fact.
        let facts = image.rules().iter().filter(|p| p.rule.is_fact()).count();
        assert_eq!(facts, 6);

        // The 0.8-level copy pairs the 0.8 body level with the 0.4
        // blocking level.
        let ld8 = map.scaled(&atom("ld"), w("0.8")).unwrap();
        let cb8 = map.scaled(&atom("cb"), w("0.8")).unwrap();
        let can4 = map.scaled(&atom("can"), w("0.4")).unwrap();
        assert!(image.rules().iter().any(|p| {
            p.rule.head == *ld8
                && p.rule.pos_body == vec![cb8.clone()]
                && p.rule.naf_body == vec![can4.clone()]
        }));

        // Scaled names use the position in the ascending scale.
        assert_eq!(map.scaled(&atom("can"), w("0.2")).unwrap().name(), "can__1");
        assert_eq!(map.scaled(&atom("cb"), w("1")).unwrap().name(), "cb__5");
    }

    #[test]
    fn translation_size_is_the_sum_of_admissible_levels() {
        let p = motivating();
        for scale in [six_point_scale(), certainty_scale(&p, [])] {
            let (image, _) = translate(&p, &scale).unwrap();
            let expected: usize = p
                .rules()
                .iter()
                .map(|r| scale.iter().filter(|c| !c.is_zero() && *c <= r.weight).count())
                .sum();
            assert_eq!(image.len(), expected);
        }
    }

    #[test]
    fn single_fact_translates_to_single_fact() {
        let p = parse_program("1: a.").unwrap();
        let scale = certainty_scale(&p, []);
        let (image, map) = translate(&p, &scale).unwrap();
        assert_eq!(image.len(), 1);
        assert_eq!(image.rules()[0].rule.head, *map.scaled(&atom("a"), w("1")).unwrap());
        assert!(image.rules()[0].rule.is_fact());
    }

    #[test]
    fn self_blocking_rule_translates_to_an_even_loop() {
        let p = parse_program("1: a :- not a.").unwrap();
        let scale = CertaintyScale::closure([w("0.5")]);
        let (image, map) = translate(&p, &scale).unwrap();
        let a1 = map.scaled(&atom("a"), w("1")).unwrap().clone();
        let a5 = map.scaled(&atom("a"), w("0.5")).unwrap().clone();
        let expected = Program::new(vec![
            PossRule::classical(Rule::new(a1.clone(), vec![], vec![a5.clone()])),
            PossRule::classical(Rule::new(a5, vec![], vec![a1])),
        ]);
        assert_eq!(image, expected);
    }

    #[test]
    fn translation_validates_scale_and_names() {
        let p = motivating();
        let narrow = CertaintyScale::closure([]);
        assert!(matches!(
            translate(&p, &narrow),
            Err(Error::OffScaleWeight { weight }) if weight == w("0.2")
        ));
        let clash = parse_program("a__1 :- b.").unwrap();
        assert!(matches!(
            translate(&clash, &CertaintyScale::closure([])),
            Err(Error::ScaledNameCollision(a)) if a == atom("a__1")
        ));
        // Underscores that do not end in digits are fine.
        let ok = parse_program("a__b. c_1.").unwrap();
        assert!(translate(&ok, &CertaintyScale::closure([])).is_ok());
    }

    #[test]
    fn lift_back_takes_the_highest_level() {
        let p = motivating();
        let (image, map) = translate(&p, &six_point_scale()).unwrap();
        let models = enumerate_answer_sets(&image, &SearchOptions::default()).unwrap();
        assert_eq!(models.len(), 1);
        assert_eq!(models[0].len(), 10);
        let lifted = lift_back(&models[0], &map).unwrap();
        assert_eq!(lifted, val(&[("cb", "1"), ("ld", "0.8"), ("can", "0.2")]));

        assert_eq!(
            lift_back(&Interpretation::new(), &map).unwrap(),
            Valuation::new()
        );
        let a05 = map.scaled(&atom("can"), w("0.4")).unwrap().clone();
        let a02 = map.scaled(&atom("can"), w("0.2")).unwrap().clone();
        assert_eq!(
            lift_back(&Interpretation::from_atoms([a05, a02]), &map).unwrap(),
            val(&[("can", "0.4")])
        );
        let foreign = Interpretation::from_atoms([atom("zz")]);
        assert!(lift_back(&foreign, &map).is_err());
    }

    #[test]
    fn project_is_the_downward_closure() {
        let p = motivating();
        let (image, map) = translate(&p, &six_point_scale()).unwrap();
        let answer = val(&[("cb", "1"), ("ld", "0.8"), ("can", "0.2")]);
        let projected = project(&answer, &map).unwrap();
        let models = enumerate_answer_sets(&image, &SearchOptions::default()).unwrap();
        assert_eq!(projected, models[0]);
        assert_eq!(project(&Valuation::new(), &map).unwrap(), Interpretation::new());

        let off_scale = val(&[("can", "0.3")]);
        assert!(matches!(
            project(&off_scale, &map),
            Err(Error::OffScaleValue { .. })
        ));
    }

    #[test]
    fn solving_by_translation_matches_the_expected_answer_sets() {
        let p = motivating();
        let sets = solve_via_translation(&p, &six_point_scale(), &SearchOptions::default())
            .unwrap();
        assert_eq!(sets, vec![val(&[("cb", "1"), ("ld", "0.8"), ("can", "0.2")])]);

        let empty = Program::default();
        let sets = solve_via_translation(
            &empty,
            &CertaintyScale::closure([]),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(sets, vec![Valuation::new()]);
    }

    #[test]
    fn classical_rendering_is_weight_free_and_reparses() {
        let p = motivating();
        let (image, map) = translate(&p, &six_point_scale()).unwrap();
        let text = render_classical(&image);
        assert!(!text.contains(": "), "no weight prefixes in {text}");
        let reparsed = parse_program(&text).unwrap();
        assert_eq!(reparsed, image);
        assert_eq!(render_classical(&Program::default()), "");

        let sidecar = render_map(&map);
        assert_eq!(sidecar.lines().count(), 3 * 5);
        assert!(sidecar.contains("can__1\tcan\t0.2"));
        assert!(sidecar.contains("cb__5\tcb\t1"));
    }

    #[test]
    fn spurious_image_models_are_rejected_by_the_answer_set_check() {
        let p = parse_program("1: a :- not a.").unwrap();
        let scale = CertaintyScale::closure([w("0.5")]);
        let (image, map) = translate(&p, &scale).unwrap();
        // The image is an even loop with two classical answer sets; only
        // one of them is downward closed and encodes a valuation.
        let models = enumerate_answer_sets(&image, &SearchOptions::default()).unwrap();
        assert_eq!(models.len(), 2);
        let lifted: Vec<Valuation> = models
            .iter()
            .map(|m| lift_back(m, &map).unwrap())
            .collect();
        assert!(lifted.contains(&val(&[("a", "1")])));
        assert!(lifted.contains(&val(&[("a", "0.5")])));
        assert!(!is_poss_answer_set(&p, &val(&[("a", "1")])));

        let sets = solve_via_translation(&p, &scale, &SearchOptions::default()).unwrap();
        assert_eq!(sets, vec![val(&[("a", "0.5")])]);
    }
}
