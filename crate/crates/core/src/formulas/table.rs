use std::ops::RangeInclusive;

use serde::Serialize;

use super::{ex_pattern, CaseTag};
use crate::error::FormulaError;
use crate::patterns::TreePattern;

/// One row of a value table. Parameters the branch does not use are `None`
/// and print as blank CSV fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: usize,
    pub k: Option<u64>,
    pub r: Option<u64>,
    pub m: Option<u64>,
    pub value: u64,
    pub case_tag: CaseTag,
}

pub fn table(pattern: &TreePattern, p_range: RangeInclusive<usize>) -> Result<Vec<TableRow>, FormulaError> {
    p_range
        .map(|p| {
            let v = ex_pattern(p, pattern)?;
            Ok(TableRow {
                p,
                k: v.params.map(|x| x.k),
                r: v.params.map(|x| x.r),
                m: v.params.and_then(|x| x.m),
                value: v.value,
                case_tag: v.tag,
            })
        })
        .collect()
}

/// CSV with header `p,k,r,m,value,case_tag` and `\n` line endings.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("writing CSV to memory cannot fail");
    }
    let bytes = w.into_inner().expect("flushing CSV to memory cannot fail");
    String::from_utf8(bytes).expect("CSV of numbers and tags is UTF-8")
}
