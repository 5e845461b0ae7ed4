//! Lists, ranges and grids given on the command line.

use treewass_core::{rational, Rational};

use crate::error::{CliError, Result};

/// `3`, `1..6` (inclusive) or `2,3,5`; items may mix both forms.
pub fn parse_range<T: TryFrom<u64>>(text: &str) -> Result<Vec<T>> {
    let bad = || CliError::BadArg(format!("bad range {text:?}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.into_iter().map(|v| T::try_from(v).map_err(|_| bad())).collect()
}

/// Comma-separated rationals such as `0,1/4,0.5`.
pub fn parse_rationals(text: &str) -> Result<Vec<Rational>> {
    let out = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| rational::parse_rational(s).map_err(|e| CliError::BadArg(format!("{s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(CliError::BadArg(format!("empty list {text:?}")));
    }
    Ok(out)
}

/// Parameter grid over α, d and q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub alpha: Vec<Rational>,
    pub d: Vec<u32>,
    pub q: Vec<u64>,
}

impl Grid {
    /// From `alpha=…`, `d=…`, `q=…` words; a word may hold several
    /// space-separated assignments.
    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Grid> {
        let mut grid = Grid { alpha: vec![rational::int(0)], d: vec![1], q: vec![2] };
        for word in words.iter().flat_map(|w| w.as_ref().split_whitespace().map(str::to_string).collect::<Vec<_>>()) {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| CliError::BadArg(format!("expected key=value, got {word:?}")))?;
            match key {
                "alpha" => grid.alpha = parse_rationals(value)?,
                "d" => grid.d = parse_range(value)?,
                "q" => grid.q = parse_range(value)?,
                _ => return Err(CliError::BadArg(format!("unknown grid key {key:?}"))),
            }
        }
        Ok(grid)
    }
}
