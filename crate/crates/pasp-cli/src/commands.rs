//! Implementations of the CLI commands.

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pasp::{
    possdist, preduct, translate, Atom, CertaintyScale, Program, SearchOptions, Valuation, Weight,
};

use crate::grid::{resolve_grid, resolve_scale};
use crate::report::{
    grid_entries, to_json, valuation_entries, AtomWeight, CheckReport, CompareReport,
    CompileReport, MethodDiff, MethodOutcome, SolveReport,
};
use crate::{Format, Method};

fn load_program(path: &str) -> Result<Program> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))?;
    let program =
        pasp::parse_program(&text).with_context(|| format!("cannot parse `{path}`"))?;
    Ok(program)
}

fn search_options(guard_limit: Option<u128>, parallel: bool) -> SearchOptions {
    SearchOptions {
        limit: guard_limit,
        parallel,
    }
}

fn run_method(
    program: &Program,
    method: Method,
    grid: &CertaintyScale,
    options: &SearchOptions,
) -> Result<Vec<Valuation>, pasp::Error> {
    match method {
        Method::Direct => preduct::enumerate_poss_answer_sets(program, grid, options),
        Method::Translate => translate::solve_via_translation(program, grid, options),
        Method::Semantic => possdist::semantic_answer_sets(program, grid, options),
        Method::Baseline => preduct::baseline_answer_sets(program, options),
    }
}

pub fn solve(
    path: &str,
    method: Method,
    grid_spec: &str,
    max_models: usize,
    format: Format,
    guard_limit: Option<u128>,
    parallel: bool,
) -> Result<ExitCode> {
    let program = load_program(path)?;
    let grid = resolve_grid(grid_spec, &program)?;
    let options = search_options(guard_limit, parallel);
    let started = Instant::now();
    let sets = run_method(&program, method, &grid, &options)?;
    let elapsed = started.elapsed();

    let count = sets.len();
    let truncated = max_models > 0 && count > max_models;
    let shown: Vec<Vec<AtomWeight>> = sets
        .iter()
        .take(if max_models > 0 { max_models } else { count })
        .map(valuation_entries)
        .collect();
    let report = SolveReport {
        command: "solve",
        method: method.name(),
        grid: grid_entries(&grid),
        answer_sets: shown,
        count,
        truncated,
        notices: Vec::new(),
        elapsed,
    };
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", to_json(&report)),
    }
    Ok(if count > 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn compile(
    path: &str,
    scale_spec: &str,
    output: Option<&str>,
    map_output: Option<&str>,
    format: Format,
) -> Result<ExitCode> {
    let program = load_program(path)?;
    let scale = resolve_scale(scale_spec, &program)?;
    let (image, map) = translate::translate(&program, &scale)?;
    let program_text = translate::render_classical(&image);
    let map_text = translate::render_map(&map);

    let map_path = map_output
        .map(str::to_string)
        .or_else(|| output.map(|o| format!("{o}.map")));
    if let Some(out) = output {
        std::fs::write(out, &program_text).with_context(|| format!("cannot write `{out}`"))?;
    }
    if let (Some(map_path), true) = (&map_path, output.is_some() || map_output.is_some()) {
        std::fs::write(map_path, &map_text)
            .with_context(|| format!("cannot write `{map_path}`"))?;
    }

    let report = CompileReport {
        command: "compile",
        scale: grid_entries(&scale),
        rules: image.len(),
        scaled_atoms: map.entries().count(),
        program: program_text.lines().map(str::to_string).collect(),
        map: map_text.lines().map(str::to_string).collect(),
        output_path: output.map(str::to_string),
        map_path: if output.is_some() || map_output.is_some() {
            map_path
        } else {
            None
        },
    };
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", to_json(&report)),
    }
    Ok(ExitCode::SUCCESS)
}

/// Parses `atom=degree,atom=degree,...`; the empty string is the all-zero
/// valuation.
fn parse_valuation(literal: &str, program: &Program) -> Result<Valuation> {
    let base = program.herbrand_base();
    let mut valuation = Valuation::new();
    let mut seen = std::collections::BTreeSet::new();
    for item in literal.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .with_context(|| format!("malformed valuation entry `{item}` (expected atom=degree)"))?;
        let atom = Atom::new(name.trim())
            .map_err(|_| anyhow::anyhow!("invalid atom name `{}`", name.trim()))?;
        if !base.contains(&atom) {
            bail!("unknown atom `{atom}`: not in the program's Herbrand base");
        }
        if !seen.insert(atom.clone()) {
            bail!("atom `{atom}` listed twice in the valuation");
        }
        let weight: Weight = value
            .trim()
            .parse()
            .with_context(|| format!("invalid degree `{}` for `{atom}`", value.trim()))?;
        valuation.set(atom, weight);
    }
    Ok(valuation)
}

pub fn check(path: &str, literal: &str, format: Format) -> Result<ExitCode> {
    let program = load_program(path)?;
    let valuation = parse_valuation(literal, &program)?;
    let reduct = preduct::poss_reduct(&program, &valuation);
    let fixpoint =
        preduct::poss_least_fixpoint(&reduct).expect("the reduct is always definite");
    let verdict = fixpoint == valuation;

    let report = CheckReport {
        command: "check",
        valuation: valuation_entries(&valuation),
        reduct: reduct.rules().iter().map(|r| r.to_string()).collect(),
        fixpoint: valuation_entries(&fixpoint),
        is_answer_set: verdict,
    };
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", to_json(&report)),
    }
    Ok(if verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn compare(
    path: &str,
    grid_spec: &str,
    format: Format,
    guard_limit: Option<u128>,
    parallel: bool,
) -> Result<ExitCode> {
    let program = load_program(path)?;
    let grid = resolve_grid(grid_spec, &program)?;
    let options = search_options(guard_limit, parallel);

    let direct = run_method(&program, Method::Direct, &grid, &options)?;
    let translated = run_method(&program, Method::Translate, &grid, &options)?;
    // The semantic oracle is exponential in the base size; a tripped guard
    // only skips it, it does not fail the comparison.
    let semantic = match run_method(&program, Method::Semantic, &grid, &options) {
        Ok(sets) => Ok(sets),
        Err(err @ pasp::Error::GuardExceeded { .. }) => Err(err.to_string()),
        Err(err) => return Err(err.into()),
    };
    let baseline = run_method(&program, Method::Baseline, &grid, &options)?;

    let methods_agree = direct == translated
        && semantic.as_ref().map_or(true, |sets| *sets == direct);
    let baseline_differs = baseline != direct;

    let against_direct = |method: &'static str, sets: &[Valuation]| MethodDiff {
        method,
        missing: direct
            .iter()
            .filter(|v| !sets.contains(v))
            .map(valuation_entries)
            .collect(),
        extra: sets
            .iter()
            .filter(|v| !direct.contains(v))
            .map(valuation_entries)
            .collect(),
    };
    let mut diff = vec![against_direct("translate", &translated)];
    if let Ok(sets) = &semantic {
        diff.push(against_direct("semantic", sets));
    }
    diff.push(against_direct("baseline", &baseline));

    let outcome = |sets: &[Valuation]| MethodOutcome {
        answer_sets: Some(sets.iter().map(valuation_entries).collect()),
        notice: None,
    };
    let report = CompareReport {
        command: "compare",
        grid: grid_entries(&grid),
        direct: outcome(&direct),
        translate: outcome(&translated),
        semantic: match &semantic {
            Ok(sets) => outcome(sets),
            Err(notice) => MethodOutcome {
                answer_sets: None,
                notice: Some(notice.clone()),
            },
        },
        baseline: outcome(&baseline),
        methods_agree,
        baseline_differs,
        diff,
    };
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", to_json(&report)),
    }
    Ok(if methods_agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
