//! Parsing of command-line values that refer to a network: partitions,
//! label lists and `name=value` assignments.

use crn_core::decomposition::normalize_partition;
use crn_core::Network;

use crate::error::{CliError, Result};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reaction indices for a comma-separated list of labels. Repeats are an
/// error.
pub fn parse_labels(net: &Network, spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for raw in spec.split(',') {
        let label = raw.trim();
        if label.is_empty() {
            return Err(usage(format!("empty reaction label in `{spec}`")));
        }
        let j = net
            .reaction_index(label)
            .ok_or_else(|| usage(format!("unknown reaction label `{label}`")))?;
        if out.contains(&j) {
            return Err(usage(format!("reaction `{label}` listed twice")));
        }
        out.push(j);
    }
    Ok(out)
}

/// Parses `R1,R2|R3,R4`. Every reaction must appear exactly once. Parts come
/// back in canonical order.
pub fn parse_partition(net: &Network, spec: &str) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; net.reaction_count()];
    let mut parts = Vec::new();
    for chunk in spec.split('|') {
        let part = parse_labels(net, chunk)?;
        for &j in &part {
            if std::mem::replace(&mut seen[j], true) {
                return Err(usage(format!(
                    "reaction `{}` appears in more than one part",
                    net.reaction_name(j)
                )));
            }
        }
        parts.push(part);
    }
    let missing: Vec<String> = (0..net.reaction_count())
        .filter(|&j| !seen[j])
        .map(|j| net.reaction_name(j))
        .collect();
    if !missing.is_empty() {
        return Err(usage(format!(
            "reactions missing from --parts: {}",
            missing.join(", ")
        )));
    }
    Ok(normalize_partition(parts, Some(net.reaction_count()))?)
}

fn parse_number(key: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| usage(format!("`{}` is not a number (for `{key}`)", raw.trim())))
}

/// Values for `count` named slots, given either positionally (`1,1,3,1`) or
/// as `key=value` pairs resolved by `resolve`. Each slot must be set once.
pub fn parse_assignments(
    spec: &str,
    what: &str,
    count: usize,
    name_of: impl Fn(usize) -> String,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<f64>> {
    let items: Vec<&str> = spec.split(',').map(str::trim).collect();
    if items.iter().all(|s| !s.contains('=')) {
        if items.len() != count {
            return Err(usage(format!(
                "expected {count} {what} values, got {}",
                items.len()
            )));
        }
        return items
            .iter()
            .enumerate()
            .map(|(i, s)| parse_number(&name_of(i), s))
            .collect();
    }
    let mut values: Vec<Option<f64>> = vec![None; count];
    for item in items {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got `{item}`")))?;
        let key = key.trim();
        let i = resolve(key).ok_or_else(|| usage(format!("unknown {what} `{key}`")))?;
        if values[i].replace(parse_number(key, raw)?).is_some() {
            return Err(usage(format!("{what} `{key}` given twice")));
        }
    }
    let missing: Vec<String> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_none())
        .map(|(i, _)| name_of(i))
        .collect();
    if !missing.is_empty() {
        return Err(usage(format!("missing {what} for {}", missing.join(", "))));
    }
    Ok(values.into_iter().flatten().collect())
}

/// Rate constants keyed by reaction label or by `k<j>` (1-based).
pub fn parse_rates(net: &Network, spec: &str) -> Result<Vec<f64>> {
    let r = net.reaction_count();
    parse_assignments(
        spec,
        "rate",
        r,
        |j| net.reaction_name(j),
        |key| {
            net.reaction_index(key).or_else(|| {
                key.strip_prefix('k')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&j| (1..=r).contains(&j))
                    .map(|j| j - 1)
            })
        },
    )
}

/// Concentrations keyed by species name.
pub fn parse_point(net: &Network, spec: &str) -> Result<Vec<f64>> {
    parse_assignments(
        spec,
        "species",
        net.species_count(),
        |s| net.species()[s].name.clone(),
        |key| net.species_index(key),
    )
}

pub fn parse_tolerance(raw: &str) -> Result<f64> {
    let tol = parse_number("--tol", raw)?;
    if tol.is_nan() || tol < 0.0 {
        return Err(usage(format!("tolerance must be nonnegative, got `{raw}`")));
    }
    Ok(tol)
}
