//! Exhaustive search against the closed forms beyond the minimum ranges.

use std::time::Duration;

use turan::formulas::{ex_mixed, ex_pattern};
use turan::oracle::{oracle_mixed, oracle_series, star_spider_family, SearchConfig};
use turan::{family_free, ForbiddenFamily, TreePattern};

fn cfg(max_p: usize) -> SearchConfig {
    SearchConfig { max_p, budget: Some(Duration::from_secs(120)), ..SearchConfig::default() }
}

#[test]
fn single_trees_up_to_ten() {
    for spec in ["star:3", "star:6", "path:4", "path:6", "broom:5", "broom:7", "broom:8", "spider:6", "spider:8", "spider:9"] {
        let pattern: TreePattern = spec.parse().unwrap();
        let family = ForbiddenFamily::single(pattern);
        for res in oracle_series(&family, 10, &cfg(10)).unwrap().iter().skip(1) {
            assert!(res.exhaustive, "{spec} p={} ran out of budget", res.p);
            assert_eq!(res.value as u64, ex_pattern(res.p, &pattern).unwrap().value, "{spec} p={}", res.p);
            assert_eq!(res.witness.edge_count(), res.value);
            assert!(family_free(&res.witness, &family), "{spec} p={} witness", res.p);
        }
    }
}

#[test]
fn star_spider_pairs() {
    for (n, r) in [(7, 1), (7, 2), (8, 1), (8, 2), (8, 3), (9, 1), (9, 2), (9, 3), (10, 1), (10, 2), (11, 1)] {
        let family = star_spider_family(n).unwrap();
        let res = oracle_mixed(n - 1 + r, &family, &cfg(11)).unwrap();
        assert!(res.exhaustive);
        assert_eq!(res.value as u64, ex_mixed(n, r).unwrap().value, "n={n} r={r}");
        assert!(family_free(&res.witness, &family));
    }
}

#[test]
fn budget_exhaustion_is_reported_not_fatal() {
    let pattern = TreePattern::spider(9).unwrap();
    let tight = SearchConfig { max_p: 14, budget: Some(Duration::from_millis(5)), ..SearchConfig::default() };
    let series = oracle_series(&ForbiddenFamily::single(pattern), 14, &tight).unwrap();
    let last = series.last().unwrap();
    assert!(!last.exhaustive);
    assert!(last.value as u64 <= ex_pattern(14, &pattern).unwrap().value);
    assert!(family_free(&last.witness, &ForbiddenFamily::single(pattern)));
}
