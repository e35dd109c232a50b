//! Argument values that clap cannot parse on its own.

use std::ops::RangeInclusive;
use std::time::Duration;

/// `a`, `a..b` or `a..=b`; both range spellings include `b`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    let (lo, hi) = match s.split_once("..") {
        None => {
            let v = num(s)?;
            (v, v)
        }
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

pub fn parse_duration(s: &str) -> Result<Duration, String> {
    humantime::parse_duration(s).map_err(|e| format!("bad duration `{s}`: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Graph6,
    Edgelist,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6..8").unwrap(), 6..=8);
        assert_eq!(parse_range("6..=8").unwrap(), 6..=8);
        assert_eq!(parse_range("12").unwrap(), 12..=12);
        assert!(parse_range("8..6").is_err());
        assert!(parse_range("a..6").is_err());
    }

    #[test]
    fn durations() {
        assert_eq!(parse_duration("60s").unwrap(), Duration::from_secs(60));
        assert_eq!(parse_duration("250ms").unwrap(), Duration::from_millis(250));
        assert!(parse_duration("soon").is_err());
    }
}
