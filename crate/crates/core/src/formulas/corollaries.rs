//! Specialised closed forms for the spider, each valid on a slice of the
//! (p, n) plane, re-evaluated independently and compared with [`ex_spider`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::ex_spider;
use crate::error::FormulaError;

/// Rational value `num / den`, kept unreduced until compared.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: i64,
    den: i64,
}

impl Ratio {
    fn new(num: i64, den: i64) -> Ratio {
        Ratio { num, den }
    }

    fn int(v: i64) -> Ratio {
        Ratio { num: v, den: 1 }
    }

    fn plus(self, v: i64) -> Ratio {
        Ratio { num: self.num + v * self.den, den: self.den }
    }

    fn equals(self, v: i64) -> bool {
        self.num == v * self.den
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CorollaryFamily {
    /// (n-7)/2 < r ≤ n-6, with four sub-branches.
    UpperJoinRange,
    /// n odd, r = (n-7)/2.
    OddHalfResidue,
    /// r = 2, by n mod 4.
    ResidueTwo,
    /// r = 3, by n mod 5.
    ResidueThree,
    /// r = 4, by n mod 6.
    ResidueFour,
    /// The full table for n = 11.
    ElevenTable,
}

impl fmt::Display for CorollaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CorollaryFamily::UpperJoinRange => "upper-join-range",
            CorollaryFamily::OddHalfResidue => "odd-half-residue",
            CorollaryFamily::ResidueTwo => "residue-2",
            CorollaryFamily::ResidueThree => "residue-3",
            CorollaryFamily::ResidueFour => "residue-4",
            CorollaryFamily::ElevenTable => "n11-table",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub family: CorollaryFamily,
    pub branch: &'static str,
    pub p: usize,
    pub n: usize,
    /// The specialised form as `num/den`.
    pub expected: String,
    pub actual: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CorollaryReport {
    /// Number of (family, branch) evaluations, keyed by `family/branch`.
    pub checked: BTreeMap<String, usize>,
    pub mismatches: Vec<Mismatch>,
}

impl CorollaryReport {
    pub fn total_checked(&self) -> usize {
        self.checked.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every specialised form whose hypotheses hold at `(p, n)`.
fn specialised(p: usize, n: usize) -> Vec<(CorollaryFamily, &'static str, Ratio)> {
    use CorollaryFamily::*;
    let mut out = Vec::new();
    if n < 11 || p < n {
        return out;
    }
    let (pi, ni) = (p as i64, n as i64);
    let r = p % (n - 1);
    let ri = r as i64;
    let base = (ni - 2) * (pi - 1);

    // (n-7)/2 < r ≤ n-6
    if 2 * ri > ni - 7 && r + 6 <= n {
        if 2 * ri >= ni - 4 && r + 7 <= n {
            out.push((UpperJoinRange, "middle", Ratio::int(((ni - 2) * (pi - 2) - ri).div_euclid(2))));
        } else if r + 6 == n {
            out.push((UpperJoinRange, "r=n-6", Ratio::new((ni - 2) * (pi - 3), 2).plus(3)));
        } else if 2 * ri == ni - 5 {
            out.push((UpperJoinRange, "r=(n-5)/2", Ratio::new((ni - 2) * (2 * pi - 5) + 7, 4)));
        } else if 2 * ri == ni - 6 {
            out.push((UpperJoinRange, "r=(n-6)/2", Ratio::new((ni - 2) * (pi - 2), 2).plus(1)));
        }
    }
    if n % 2 == 1 && 2 * ri == ni - 7 {
        out.push((OddHalfResidue, "r=(n-7)/2", Ratio::new((ni - 2) * (2 * pi - 3) + 3, 4)));
    }
    if r == 2 {
        let (branch, c) = match n % 4 {
            0 | 2 => ("n even", 6),
            1 => ("n=1 mod 4", 7),
            _ => ("n=3 mod 4", 3),
        };
        out.push((ResidueTwo, branch, Ratio::new(base - c, 2)));
    }
    if r == 3 {
        let (branch, c) = match n % 5 {
            3 => ("n=3 mod 5", 2),
            2 | 4 => ("n=2,4 mod 5", 4),
            _ => ("n=0,1 mod 5", 5),
        };
        out.push((ResidueThree, branch, Ratio::new(base, 2).plus(-c)));
    }
    if r == 4 {
        let (branch, value) = match n % 6 {
            0 => ("n=0 mod 6", Ratio::new(base, 2).plus(-7)),
            2 | 4 => ("n=±2 mod 6", Ratio::new(base, 2).plus(-5)),
            1 | 5 => ("n=±1 mod 6", Ratio::new(base - 13, 2)),
            _ => ("n=3 mod 6", Ratio::new(base - 5, 2)),
        };
        out.push((ResidueFour, branch, value));
    }
    if n == 11 {
        let value = match r {
            0 | 1 | 7 | 8 | 9 => Ratio::new(9 * pi - ri * (10 - ri), 2),
            2 => Ratio::new(9 * pi - 12, 2),
            3 => Ratio::new(9 * pi - 19, 2),
            4 => Ratio::new(9 * pi - 22, 2),
            5 => Ratio::new(9 * pi - 21, 2),
            _ => Ratio::new(9 * pi - 16, 2),
        };
        out.push((ElevenTable, ELEVEN_BRANCHES[r], value));
    }
    out
}

const ELEVEN_BRANCHES: [&str; 10] = ["r=0", "r=1", "r=2", "r=3", "r=4", "r=5", "r=6", "r=7", "r=8", "r=9"];

/// The n = 11 table value for `p ≥ 11`, independent of [`ex_spider`].
pub fn eleven_table_value(p: usize) -> Option<u64> {
    specialised(p, 11)
        .into_iter()
        .find(|(f, _, _)| *f == CorollaryFamily::ElevenTable)
        .and_then(|(_, _, v)| (v.num % v.den == 0).then(|| (v.num / v.den) as u64))
}

/// Checks every specialised form against [`ex_spider`] for `n` in `n_range`
/// and `p = k(n-1) + r` over `k` in `k_range` and all residues `r`.
pub fn check_corollaries(
    n_range: RangeInclusive<usize>,
    k_range: RangeInclusive<usize>,
) -> Result<CorollaryReport, FormulaError> {
    let mut report = CorollaryReport::default();
    for n in n_range {
        for k in k_range.clone() {
            for r in 0..n.saturating_sub(1) {
                let p = k * (n - 1) + r;
                let forms = specialised(p, n);
                if forms.is_empty() {
                    continue;
                }
                let actual = ex_spider(p, n)?.value;
                for (family, branch, value) in forms {
                    *report.checked.entry(format!("{family}/{branch}")).or_default() += 1;
                    if !value.equals(actual as i64) {
                        report.mismatches.push(Mismatch {
                            family,
                            branch,
                            p,
                            n,
                            expected: format!("{}/{}", value.num, value.den),
                            actual,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
