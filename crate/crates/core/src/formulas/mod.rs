//! Closed-form extremal numbers ex(p; L).
//!
//! Every evaluator is total in `p`: below the tree's order the complete
//! graph K_p is extremal. Each value carries a [`CaseTag`] naming the
//! formula branch that produced it, and the decomposition `p = k(n-1) + r`
//! (plus the residue `m` where one is used).

mod corollaries;
mod table;

pub use corollaries::{check_corollaries, eleven_table_value, CorollaryFamily, CorollaryReport, Mismatch};
pub use table::{table, table_csv, TableRow};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::FormulaError;
use crate::patterns::{TreePattern, Variant};
use crate::util::{binom2, split};

/// Which branch of the evaluators produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// p is smaller than the tree, so K_p is extremal.
    Complete,
    /// Disjoint cliques k·K_{n-1} ∪ K_r (paths).
    PathCliques,
    /// ⌊(n-2)p/2⌋ from the degree bound (stars).
    StarDegree,
    /// Broom, 2 ≤ r ≤ n-4 and n ≥ 7: one clique swapped for a degree-capped tail.
    BroomRegularTail,
    /// Broom, k·K_{n-1} ∪ K_r.
    BroomCliques,
    /// Spider with r ∈ {0, n-4, n-3, n-2}: k·K_{n-1} ∪ K_r.
    SpiderCliques,
    /// Spider with r = 1.
    SpiderOneExtra,
    /// Spider with r = n-5: the tail is K_{n-3,n-3}.
    SpiderBipartite,
    /// Spider, 2 ≤ r ≤ n-6, r ≥ 4 and 2 ≤ m ≤ r-1 (floored branch).
    SpiderJoinFloor,
    /// Spider, 2 ≤ r ≤ n-6, remaining residues.
    SpiderJoin,
    /// Spider with 6 ≤ n ≤ 10, evaluated from the small-n table.
    SpiderSmall(u8),
    /// Mixed star/spider family, evaluated directly at the base of the recursion.
    MixedBase,
    /// Mixed star/spider family, reached by peeling r+2 independent vertices.
    MixedRecurse,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Complete => "COMPLETE",
            CaseTag::PathCliques => "PATH_CLIQUES",
            CaseTag::StarDegree => "STAR_DEGREE",
            CaseTag::BroomRegularTail => "BROOM_REGULAR_TAIL",
            CaseTag::BroomCliques => "BROOM_CLIQUES",
            CaseTag::SpiderCliques => "SPIDER_CLIQUES",
            CaseTag::SpiderOneExtra => "SPIDER_ONE_EXTRA",
            CaseTag::SpiderBipartite => "SPIDER_BIPARTITE",
            CaseTag::SpiderJoinFloor => "SPIDER_JOIN_FLOOR",
            CaseTag::SpiderJoin => "SPIDER_JOIN",
            CaseTag::SpiderSmall(n) => return write!(f, "SPIDER_SMALL_N{n}"),
            CaseTag::MixedBase => "MIXED_BASE",
            CaseTag::MixedRecurse => "MIXED_RECURSE",
        };
        f.write_str(s)
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The decomposition `p = k(n-1) + r`, `0 ≤ r ≤ n-2`, and the residue
/// `m ≡ n-3 (mod r+2)` where a branch uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub k: u64,
    pub r: u64,
    pub m: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExValue {
    pub value: u64,
    pub tag: CaseTag,
    pub params: Option<Params>,
}

impl ExValue {
    fn complete(p: usize) -> ExValue {
        ExValue { value: binom2(p) as u64, tag: CaseTag::Complete, params: None }
    }
}

fn exact_half(num: i64, context: &'static str) -> Result<i64, FormulaError> {
    exact_div(num, 2, context)
}

fn exact_div(num: i64, divisor: i64, context: &'static str) -> Result<i64, FormulaError> {
    if num.rem_euclid(divisor) != 0 {
        return Err(FormulaError::Parity { numerator: num, divisor, context });
    }
    Ok(num / divisor)
}

fn floor_half(num: i64) -> i64 {
    num.div_euclid(2)
}

fn params(k: usize, r: usize, m: Option<usize>) -> Option<Params> {
    Some(Params { k: k as u64, r: r as u64, m: m.map(|m| m as u64) })
}

fn require(n: usize, min: usize) -> Result<(), FormulaError> {
    if n < min {
        Err(FormulaError::PatternTooSmall { n, min })
    } else {
        Ok(())
    }
}

fn ex(value: i64, tag: CaseTag, params: Option<Params>) -> ExValue {
    debug_assert!(value >= 0);
    ExValue { value: value as u64, tag, params }
}

/// ex(p; P_n) = k·C(n-1, 2) + C(r, 2).
pub fn ex_path(p: usize, n: usize) -> Result<ExValue, FormulaError> {
    require(n, 2)?;
    if p < n {
        return Ok(ExValue::complete(p));
    }
    let (k, r) = split(p, n - 1);
    Ok(ex((k * binom2(n - 1) + binom2(r)) as i64, CaseTag::PathCliques, params(k, r, None)))
}

/// ex(p; K_{1,n-1}) = ⌊(n-2)p/2⌋ for p ≥ n-1.
pub fn ex_star(p: usize, n: usize) -> Result<ExValue, FormulaError> {
    require(n, 2)?;
    if p + 1 < n {
        return Ok(ExValue::complete(p));
    }
    Ok(ex(floor_half(((n - 2) * p) as i64), CaseTag::StarDegree, None))
}

/// ex(p; T_n) for the broom T_n.
pub fn ex_broom(p: usize, n: usize) -> Result<ExValue, FormulaError> {
    require(n, 4)?;
    if n == 4 {
        return ex_path(p, 4);
    }
    if p < n {
        return Ok(ExValue::complete(p));
    }
    let (k, r) = split(p, n - 1);
    let (ni, pi, ri) = (n as i64, p as i64, r as i64);
    if n >= 7 && (2..=n - 4).contains(&r) {
        let v = floor_half((ni - 2) * (pi - 1) - ri - 1);
        return Ok(ex(v, CaseTag::BroomRegularTail, params(k, r, None)));
    }
    let v = exact_half((ni - 2) * pi - ri * (ni - 1 - ri), "broom clique branch")?;
    Ok(ex(v, CaseTag::BroomCliques, params(k, r, None)))
}

/// ex(p; T*_n) for the spider T*_n.
pub fn ex_spider(p: usize, n: usize) -> Result<ExValue, FormulaError> {
    require(n, 4)?;
    if n <= 5 {
        return ex_path(p, n);
    }
    if p < n {
        return Ok(ExValue::complete(p));
    }
    let (k, r) = split(p, n - 1);
    let (ni, pi, ri) = (n as i64, p as i64, r as i64);
    let cliques = || exact_half((ni - 2) * pi - ri * (ni - 1 - ri), "spider clique branch");
    let bipartite = || Ok::<i64, FormulaError>(exact_half((ni - 2) * (pi - 2), "spider bipartite branch")? + 1);

    if n <= 10 {
        let tag = CaseTag::SpiderSmall(n as u8);
        let v = match n {
            6 | 7 => cliques()?,
            8 | 9 if r == n - 5 => bipartite()?,
            8 | 9 => cliques()?,
            _ => match r {
                5 => 4 * pi - 7,
                4 => 4 * pi - 9,
                _ => 4 * pi - exact_half(ri * (9 - ri), "spider n=10 branch")?,
            },
        };
        return Ok(ex(v, tag, params(k, r, None)));
    }

    if r == 0 || r + 4 >= n {
        return Ok(ex(cliques()?, CaseTag::SpiderCliques, params(k, r, None)));
    }
    if r == 1 {
        let v = exact_half((ni - 2) * (pi - 1), "spider r=1 branch")?;
        return Ok(ex(v, CaseTag::SpiderOneExtra, params(k, r, None)));
    }
    if r == n - 5 {
        return Ok(ex(bipartite()?, CaseTag::SpiderBipartite, params(k, r, None)));
    }
    // 2 ≤ r ≤ n-6
    let m = (n - 3) % (r + 2);
    let mi = m as i64;
    if r >= 4 && (2..r).contains(&m) {
        let v = floor_half((ni - 2) * (pi - 1) - 2 * ri - mi - 3);
        return Ok(ex(v, CaseTag::SpiderJoinFloor, params(k, r, Some(m))));
    }
    let v = exact_half((ni - 2) * (pi - 1) - mi * (ri + 2 - mi) - ri - 1, "spider join branch")?;
    Ok(ex(v, CaseTag::SpiderJoin, params(k, r, Some(m))))
}

/// Dispatches on the pattern's family.
pub fn ex_pattern(p: usize, pattern: &TreePattern) -> Result<ExValue, FormulaError> {
    let n = pattern.order();
    match pattern.variant() {
        Variant::Star => ex_star(p, n),
        Variant::Broom => ex_broom(p, n),
        Variant::Spider => ex_spider(p, n),
        Variant::Path => ex_path(p, n),
    }
}

fn check_mixed_range(n: usize, r: usize) -> Result<(), FormulaError> {
    if n < 7 || r < 1 || r + 5 > n {
        return Err(FormulaError::OutOfRange(format!("mixed family needs n ≥ 7 and 1 ≤ r ≤ n-5, got n={n}, r={r}")));
    }
    Ok(())
}

/// Closed form for ex(n-1+r; {K_{1,n-2}, T*_n}) with m = (n-3) mod (r+2):
/// (n-3-m)(n-1+r+m)/2 + max{m², ⌊(r+2+m)(m-1)/2⌋}.
pub fn ex_mixed_closed_form(n: usize, r: usize) -> Result<u64, FormulaError> {
    check_mixed_range(n, r)?;
    let m = ((n - 3) % (r + 2)) as i64;
    let (ni, ri) = (n as i64, r as i64);
    let head = exact_half((ni - 3 - m) * (ni - 1 + ri + m), "mixed closed form")?;
    let tail = (m * m).max(((ri + 2 + m) * (m - 1)).div_euclid(2));
    Ok((head + tail) as u64)
}

/// Whether the mixed-family value for `(n, r)` is read off directly rather
/// than reduced to the smaller instance `(n-2-r, r)`.
pub fn mixed_is_base(n: usize, r: usize) -> bool {
    n <= 2 * r + 7
}

/// The same value obtained by repeatedly peeling r+2 independent vertices
/// joined to everything else: ex = (n-3)(r+2) + ex(n-3; {K_{1,n-4-r}, T*_{n-2-r}}),
/// down to the base max{(n-5-r)², ⌊(n-6-r)(n-3)/2⌋}.
pub fn ex_mixed_recursive(n: usize, r: usize) -> Result<u64, FormulaError> {
    check_mixed_range(n, r)?;
    let mut total = 0i64;
    let mut cur = n;
    while !mixed_is_base(cur, r) {
        total += ((cur - 3) * (r + 2)) as i64;
        cur -= 2 + r;
    }
    let (ci, ri) = (cur as i64, r as i64);
    let base = (ci - 5 - ri).pow(2).max(((ci - 6 - ri) * (ci - 3)).div_euclid(2));
    Ok((total + (ci - 3) * (ri + 2) + base) as u64)
}

/// ex(n-1+r; {K_{1,n-2}, T*_n}) for n ≥ 7, 1 ≤ r ≤ n-5. Both the closed
/// form and the unrolled recursion are evaluated and must agree.
pub fn ex_mixed(n: usize, r: usize) -> Result<ExValue, FormulaError> {
    let closed = ex_mixed_closed_form(n, r)?;
    let unrolled = ex_mixed_recursive(n, r)?;
    if closed != unrolled {
        return Err(FormulaError::OutOfRange(format!(
            "mixed family n={n}, r={r}: closed form {closed} disagrees with recursion {unrolled}"
        )));
    }
    let tag = if mixed_is_base(n, r) { CaseTag::MixedBase } else { CaseTag::MixedRecurse };
    let m = (n - 3) % (r + 2);
    Ok(ExValue { value: closed, tag, params: params(1, r, Some(m)) })
}
