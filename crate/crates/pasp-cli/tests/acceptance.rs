//! Acceptance suite: one test per criterion, each printing a PASS line
//! once its checks hold. Run with
//! `cargo test -p pasp-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pasp::classical::enumerate_answer_sets;
use pasp::possdist::{
    constraints_of, least_specific, semantic_answer_sets, semantic_classical_answer_sets, Guess,
    NecessityConstraint, PossibilityDistribution,
};
use pasp::preduct::{
    baseline_answer_sets, enumerate_poss_answer_sets, is_poss_answer_set, poss_reduct,
};
use pasp::translate::{lift_back, solve_via_translation, translate};
use pasp::{
    parse_program, Atom, CertaintyScale, Interpretation, PossRule, Program, Rule, SearchOptions,
    Valuation, Weight,
};

fn atom(s: &str) -> Atom {
    Atom::new(s).unwrap()
}

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn val(pairs: &[(&str, &str)]) -> Valuation {
    pairs.iter().map(|(a, v)| (atom(a), w(v))).collect()
}

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn pasp_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pasp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn motivating() -> Program {
    parse_program(&std::fs::read_to_string(corpus("p1.pasp")).unwrap()).unwrap()
}

fn motivating_answer() -> Valuation {
    val(&[("cb", "1"), ("ld", "0.8"), ("can", "0.2")])
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn criterion_1_motivating_example_direct_vs_baseline() {
    let program = motivating();
    let grid = pasp::preduct::default_grid(&program);
    let direct = enumerate_poss_answer_sets(&program, &grid, &opts()).unwrap();
    assert_eq!(direct, vec![motivating_answer()]);
    let baseline = baseline_answer_sets(&program, &opts()).unwrap();
    assert_eq!(baseline, vec![val(&[("cb", "1"), ("can", "0.2")])]);

    // The same through the command line.
    for (method, expected) in [
        ("direct", r#"{"atom":"ld","weight":"0.8"}"#),
        ("baseline", r#"{"atom":"cb","weight":"1"}"#),
    ] {
        let out = pasp_bin(&[
            "solve",
            &corpus("p1.pasp"),
            "--method",
            method,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let compact: String = String::from_utf8(out.stdout)
            .unwrap()
            .split_whitespace()
            .collect();
        assert!(compact.contains(expected), "method {method}");
    }
    let direct_ld = direct[0].value(&atom("ld"));
    let baseline_ld = baseline[0].value(&atom("ld"));
    assert_eq!(direct_ld, w("0.8"));
    assert_eq!(baseline_ld, w("0"));
    println!(
        "criterion 1 PASS: direct keeps the attenuated conclusion (ld=0.8), baseline drops it"
    );
}

#[test]
fn criterion_2_classical_example_through_the_semantic_path() {
    let program = parse_program("a. b :- b. c :- a, not b.").unwrap();
    let grid = CertaintyScale::closure([]);
    let semantic = semantic_classical_answer_sets(&program, &grid, &opts()).unwrap();
    let expected = vec![Interpretation::from_atoms([atom("a"), atom("c")])];
    assert_eq!(semantic, expected);
    assert_eq!(
        enumerate_answer_sets(&program, &opts()).unwrap(),
        expected
    );

    // The intermediate least specific distribution under the consistent
    // guess g(b) = 1: possibility 1 exactly on {a,b,c} and {a,c}.
    let guess = Guess::from_pairs([(atom("b"), Weight::one())]);
    let constraints = constraints_of(&program, &guess).unwrap();
    let pi = least_specific(&program.herbrand_base(), &constraints);
    for (world, expected) in [
        (vec!["a", "b", "c"], "1"),
        (vec!["a", "c"], "1"),
        (vec!["a", "b"], "0"),
        (vec!["a"], "0"),
        (vec!["b", "c"], "0"),
        (vec!["b"], "0"),
        (vec!["c"], "0"),
        (vec![], "0"),
    ] {
        let interp: Interpretation = world.iter().map(|s| atom(s)).collect();
        assert_eq!(pi.degree(&interp).unwrap(), w(expected), "world {world:?}");
    }
    println!("criterion 2 PASS: semantic path reproduces the classical answer set and table");
}

#[test]
fn criterion_3_fractional_fixpoints() {
    let selfloop = parse_program("1: a :- not a.").unwrap();
    let expected = vec![val(&[("a", "0.5")])];
    for grid in [
        CertaintyScale::closure([w("0.5")]),
        CertaintyScale::closure([w("0.2"), w("0.5")]),
        CertaintyScale::closure([w("0.25"), w("0.5")]),
    ] {
        assert_eq!(
            enumerate_poss_answer_sets(&selfloop, &grid, &opts()).unwrap(),
            expected,
            "direct on {:?}",
            grid.degrees()
        );
        assert_eq!(
            solve_via_translation(&selfloop, &grid, &opts()).unwrap(),
            expected,
            "translate on {:?}",
            grid.degrees()
        );
        assert_eq!(
            semantic_answer_sets(&selfloop, &grid, &opts()).unwrap(),
            expected,
            "semantic on {:?}",
            grid.degrees()
        );
    }
    assert_eq!(enumerate_answer_sets(&selfloop, &opts()).unwrap(), vec![]);

    let evenloop = parse_program("1: a :- not b. 1: b :- not a.").unwrap();
    let grid = CertaintyScale::closure([w("0.5")]);
    let family = vec![
        val(&[("a", "0.5"), ("b", "0.5")]),
        val(&[("a", "1")]),
        val(&[("b", "1")]),
    ];
    assert_eq!(
        enumerate_poss_answer_sets(&evenloop, &grid, &opts()).unwrap(),
        family
    );
    assert_eq!(solve_via_translation(&evenloop, &grid, &opts()).unwrap(), family);
    assert_eq!(semantic_answer_sets(&evenloop, &grid, &opts()).unwrap(), family);
    println!("criterion 3 PASS: half-degree fixpoints and the grid family agree across methods");
}

#[test]
fn criterion_4_reduct_and_answer_set_check() {
    let program = motivating();
    let reduct = poss_reduct(&program, &motivating_answer());
    let expected = Program::new(vec![
        PossRule::new(Rule::fact(atom("cb")), w("1")).unwrap(),
        PossRule::new(Rule::new(atom("ld"), vec![atom("cb")], vec![]), w("0.8")).unwrap(),
        PossRule::new(Rule::fact(atom("can")), w("0.2")).unwrap(),
    ]);
    assert_eq!(reduct, expected);
    assert!(is_poss_answer_set(&program, &motivating_answer()));
    assert!(!is_poss_answer_set(&program, &val(&[("cb", "1"), ("can", "0.2")])));
    println!("criterion 4 PASS: the attenuating reduct accepts the answer set and rejects the baseline one");
}

#[test]
fn criterion_5_translation_matches_the_eleven_rule_listing() {
    let program = motivating();
    let scale = CertaintyScale::closure([w("0.2"), w("0.4")]);
    assert_eq!(scale.degrees().len(), 6);
    let (image, map) = translate(&program, &scale).unwrap();
    assert_eq!(image.len(), 11);

    // The listing, written level by level in (atom, level) space.
    let fact = |a: &str, l: &str| (format!("{a}@{l}"), vec![], vec![]);
    let rule = |a: &str, l: &str, b: &str, bl: &str, n: &str, nl: &str| {
        (
            format!("{a}@{l}"),
            vec![format!("{b}@{bl}")],
            vec![format!("{n}@{nl}")],
        )
    };
    let expected: BTreeSet<_> = [
        fact("cb", "1"),
        fact("cb", "0.8"),
        fact("cb", "0.6"),
        fact("cb", "0.4"),
        fact("cb", "0.2"),
        fact("can", "0.2"),
        rule("ld", "1", "cb", "1", "can", "0.2"),
        rule("ld", "0.8", "cb", "0.8", "can", "0.4"),
        rule("ld", "0.6", "cb", "0.6", "can", "0.6"),
        rule("ld", "0.4", "cb", "0.4", "can", "0.8"),
        rule("ld", "0.2", "cb", "0.2", "can", "1"),
    ]
    .into_iter()
    .collect();
    let label = |a: &Atom| {
        let scaled = map.unscaled(a).expect("image atom");
        format!("{}@{}", scaled.base, scaled.level)
    };
    let got: BTreeSet<_> = image
        .rules()
        .iter()
        .map(|p| {
            (
                label(&p.rule.head),
                p.rule.pos_body.iter().map(&label).collect::<Vec<_>>(),
                p.rule.naf_body.iter().map(&label).collect::<Vec<_>>(),
            )
        })
        .collect();
    assert_eq!(got, expected);

    // Its unique classical answer set lifts back to the answer set.
    let models = enumerate_answer_sets(&image, &opts()).unwrap();
    assert_eq!(models.len(), 1);
    assert_eq!(models[0].len(), 10);
    assert_eq!(lift_back(&models[0], &map).unwrap(), motivating_answer());
    assert_eq!(
        solve_via_translation(&program, &scale, &opts()).unwrap(),
        vec![motivating_answer()]
    );
    println!("criterion 5 PASS: the six-degree translation is the eleven-rule image and lifts back");
}

/// Random generator shared by criteria 6: at most four atoms, five rules,
/// two body atoms per part, weights from a closed scale of at most five
/// degrees.
fn random_scale(rng: &mut ChaCha8Rng) -> CertaintyScale {
    let tenths = rng.gen_range(1..=9);
    CertaintyScale::closure([Weight::new(tenths, 10).unwrap(), Weight::new(1, 2).unwrap()])
}

fn random_program(
    rng: &mut ChaCha8Rng,
    pool: &[Atom],
    scale: &CertaintyScale,
    classical: bool,
) -> Program {
    let positive: Vec<Weight> = scale.iter().filter(|d| !d.is_zero()).collect();
    let n_rules = rng.gen_range(1..=5);
    let mut rules = Vec::with_capacity(n_rules);
    for _ in 0..n_rules {
        let head = pool.choose(rng).unwrap().clone();
        let mut shuffled = pool.to_vec();
        shuffled.shuffle(rng);
        let pos_body = shuffled[..rng.gen_range(0..=2)].to_vec();
        shuffled.shuffle(rng);
        let naf_body = shuffled[..rng.gen_range(0..=2)].to_vec();
        let weight = if classical {
            Weight::one()
        } else {
            *positive.choose(rng).unwrap()
        };
        rules.push(PossRule::new(Rule::new(head, pos_body, naf_body), weight).unwrap());
    }
    Program::new(rules)
}

#[test]
fn criterion_6_cross_method_equivalence_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE6);
    let pool = ["a", "b", "c", "d"].map(atom).to_vec();
    let mut classical_cases = 0;
    for case in 0..500 {
        let classical = case % 3 == 0;
        let scale = if classical {
            CertaintyScale::closure([])
        } else {
            random_scale(&mut rng)
        };
        assert!(scale.degrees().len() <= 5);
        let program = random_program(&mut rng, &pool, &scale, classical);

        let direct = enumerate_poss_answer_sets(&program, &scale, &opts()).unwrap();
        let translated = solve_via_translation(&program, &scale, &opts()).unwrap();
        let semantic = semantic_answer_sets(&program, &scale, &opts()).unwrap();
        assert_eq!(direct, translated, "case {case}: {program}");
        assert_eq!(direct, semantic, "case {case}: {program}");

        if classical {
            classical_cases += 1;
            // Crisp answer sets correspond to classical ones by support.
            let crisp_supports: Vec<Interpretation> = direct
                .iter()
                .filter(|v| v.iter().all(|(_, d)| d.is_one()))
                .map(|v| v.support())
                .collect();
            let classical_sets = enumerate_answer_sets(&program, &opts()).unwrap();
            assert_eq!(crisp_supports, classical_sets, "case {case}: {program}");
        }
    }
    assert!(classical_cases >= 150);
    println!(
        "criterion 6 PASS: direct, translate and semantic agree on 500 random programs \
         ({classical_cases} classical cases in support-bijection)"
    );
}

#[test]
fn criterion_7_least_specific_models_are_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE7);
    let grid = CertaintyScale::closure([w("0.5")]);
    let pool = ["a", "b", "c"].map(atom).to_vec();
    for case in 0..200 {
        let base: Vec<Atom> = pool[..rng.gen_range(2..=3)].to_vec();
        let base_set: BTreeSet<Atom> = base.iter().cloned().collect();
        let n = rng.gen_range(1..=4);
        let constraints: Vec<NecessityConstraint> = (0..n)
            .map(|_| {
                let head = base.choose(&mut rng).unwrap().clone();
                let mut body = base.clone();
                body.shuffle(&mut rng);
                body.truncate(rng.gen_range(0..=2));
                let naf_bounds = (0..rng.gen_range(0..=2))
                    .map(|_| *grid.degrees().choose(&mut rng).unwrap())
                    .collect();
                let positive: Vec<Weight> = grid.iter().filter(|d| !d.is_zero()).collect();
                NecessityConstraint {
                    head,
                    body_atoms: body,
                    naf_bounds,
                    rule_weight: *positive.choose(&mut rng).unwrap(),
                }
            })
            .collect();

        let pi = least_specific(&base_set, &constraints);
        assert!(
            constraints.iter().all(|c| c.holds(&pi)),
            "case {case}: result violates a constraint"
        );

        // Raising any single degree to the next grid value breaks
        // something.
        let cells = pi.cell_count();
        for mask in 0..cells {
            let Some(next) = grid.next_above(pi.degree_at(mask)) else {
                continue;
            };
            let mut raised: Vec<Weight> = (0..cells).map(|m| pi.degree_at(m)).collect();
            raised[mask] = next;
            let raised = PossibilityDistribution::from_degrees(base.iter().cloned(), raised);
            assert!(
                constraints.iter().any(|c| !c.holds(&raised)),
                "case {case}: raising world {mask} stayed satisfying"
            );
        }

        // Exhaustive: the result is the pointwise maximum of every
        // grid-valued satisfying distribution.
        let degrees = grid.degrees();
        let mut best = vec![Weight::zero(); cells];
        let total = degrees.len().pow(cells as u32);
        for mut index in 0..total {
            let values: Vec<Weight> = (0..cells)
                .map(|_| {
                    let d = degrees[index % degrees.len()];
                    index /= degrees.len();
                    d
                })
                .collect();
            let candidate =
                PossibilityDistribution::from_degrees(base.iter().cloned(), values.clone());
            if constraints.iter().all(|c| c.holds(&candidate)) {
                for (slot, value) in best.iter_mut().zip(&values) {
                    *slot = (*slot).max(*value);
                }
            }
        }
        let got: Vec<Weight> = (0..cells).map(|m| pi.degree_at(m)).collect();
        assert_eq!(got, best, "case {case}");
    }
    println!("criterion 7 PASS: 200 random constraint sets confirm least-specific maximality");
}

#[test]
fn criterion_8_machine_output_is_deterministic_across_the_corpus() {
    let files = [
        "p1.pasp",
        "example1.pasp",
        "selfloop.pasp",
        "evenloop.pasp",
        "definite.pasp",
        "mixed.pasp",
    ];
    let mut runs = 0;
    for file in files {
        let path = corpus(file);
        let mut commands: Vec<Vec<String>> = Vec::new();
        for method in ["direct", "translate", "semantic", "baseline"] {
            commands.push(
                ["solve", &path, "--method", method, "--format", "json"]
                    .map(str::to_string)
                    .to_vec(),
            );
        }
        commands.push(["compile", &path, "--format", "json"].map(str::to_string).to_vec());
        commands.push(["compare", &path, "--format", "json"].map(str::to_string).to_vec());

        // Check against the first answer set the direct method reports.
        let solved = pasp_bin(&["solve", &path, "--method", "direct", "--format", "json"]);
        let json: serde_json::Value =
            serde_json::from_slice(&solved.stdout).expect("valid json");
        let literal = json["answer_sets"]
            .as_array()
            .and_then(|sets| sets.first())
            .map(|set| {
                set.as_array()
                    .unwrap()
                    .iter()
                    .map(|e| {
                        format!(
                            "{}={}",
                            e["atom"].as_str().unwrap(),
                            e["weight"].as_str().unwrap()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_default();
        commands.push(
            ["check", &path, &literal, "--format", "json"]
                .map(str::to_string)
                .to_vec(),
        );

        for command in commands {
            let args: Vec<&str> = command.iter().map(String::as_str).collect();
            let first = pasp_bin(&args);
            let second = pasp_bin(&args);
            assert_eq!(first.stdout, second.stdout, "unstable output for {args:?}");
            assert_eq!(first.status.code(), second.status.code());
            let code = first.status.code().unwrap();
            match args[0] {
                "compare" => assert_eq!(code, 0, "compare must agree on {file}"),
                "compile" => assert_eq!(code, 0),
                _ => assert!(code == 0 || code == 1, "unexpected exit {code} for {args:?}"),
            }
            runs += 1;
        }
    }
    assert_eq!(runs, 7 * files.len());
    println!("criterion 8 PASS: {runs} command invocations byte-stable across repeated runs");
}
