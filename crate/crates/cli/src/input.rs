//! Input resolution: a system file, or `gen:<family>:n=<n>[:seed=<s>]`.

use std::path::Path;

use pretropism::systems::{read_system_file, Family};
use pretropism::SystemSpec;

use crate::error::CliError;

pub fn load_input(arg: &str) -> Result<SystemSpec, CliError> {
    match arg.strip_prefix("gen:") {
        Some(rest) => {
            let (family, n, seed) = parse_generator(rest)?;
            Ok(family.generate(n, seed)?)
        }
        None => Ok(read_system_file(Path::new(arg))?),
    }
}

/// Parses `family:n=7:seed=3`; `n=` may be omitted (`family:7`).
pub fn parse_generator(spec: &str) -> Result<(Family, usize, u64), CliError> {
    let mut parts = spec.split(':');
    let family: Family = parts.next().unwrap_or_default().parse()?;
    let mut n = None;
    let mut seed = 0;
    for part in parts {
        let (key, value) = part.split_once('=').unwrap_or(("n", part));
        let bad = || CliError::Usage(format!("bad generator parameter `{part}`"));
        match key {
            "n" => n = Some(value.parse().map_err(|_| bad())?),
            "seed" => seed = value.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| CliError::Usage(format!("generator `{spec}` needs n")))?;
    Ok((family, n, seed))
}

/// Parses an inclusive range `a..b`, `a..=b` or a single `n`.
pub fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range `{s}`, expected a..b"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}
