//! Resolution of the `--grid` and `--scale` options.

use anyhow::{bail, Context, Result};
use pasp::{CertaintyScale, Program, Weight};

/// `--grid` for the solvers: `auto` (program weights plus 0, 1/2 and 1,
/// closed under complement), `uniform:K` (multiples of 1/K unioned with
/// auto) or `list:v1,v2,...` (the listed degrees, closed under complement
/// with 0 and 1 added; program weights are *not* added implicitly, so a
/// missing one surfaces as an off-scale error with a remediation hint).
pub fn resolve_grid(spec: &str, program: &Program) -> Result<CertaintyScale> {
    if spec == "auto" {
        return Ok(pasp::preduct::default_grid(program));
    }
    if let Some(k) = spec.strip_prefix("uniform:") {
        let k: i64 = k
            .parse()
            .with_context(|| format!("invalid uniform grid size `{k}`"))?;
        if k < 1 {
            bail!("uniform grid size must be at least 1, got {k}");
        }
        let steps = (0..=k).map(|i| Weight::new(i, k).expect("i/k is in [0, 1]"));
        let auto = pasp::preduct::default_grid(program);
        return Ok(CertaintyScale::closure(auto.iter().chain(steps)));
    }
    if let Some(list) = spec.strip_prefix("list:") {
        return Ok(CertaintyScale::closure(parse_degrees(list)?));
    }
    bail!("unrecognized grid `{spec}` (expected `auto`, `uniform:K` or `list:v1,v2,...`)");
}

/// `--scale` for the compiler: `auto` (the complement closure of the
/// program weights with 0 and 1) or a comma-separated list of degrees.
pub fn resolve_scale(spec: &str, program: &Program) -> Result<CertaintyScale> {
    if spec == "auto" {
        return Ok(pasp::translate::certainty_scale(program, []));
    }
    let list = spec.strip_prefix("list:").unwrap_or(spec);
    Ok(CertaintyScale::closure(parse_degrees(list)?))
}

fn parse_degrees(list: &str) -> Result<Vec<Weight>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<Weight>()
                .with_context(|| format!("invalid degree `{s}`"))
        })
        .collect()
}
