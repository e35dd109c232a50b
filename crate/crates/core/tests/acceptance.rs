//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use turan::constructors::{broom_extremal, regular_graph, spider_extremal};
use turan::formulas::{
    check_corollaries, eleven_table_value, ex_broom, ex_mixed_closed_form, ex_mixed_recursive, ex_path, ex_spider,
    ex_star, table, table_csv, ExValue,
};
use turan::oracle::{oracle_series, SearchConfig};
use turan::{contains, contains_fast, family_free, FormulaError, ForbiddenFamily, GraphBuilder, TreePattern, Variant};

type Outcome = Result<String, String>;

/// Exhaustive values for q = 0..=max_p, or the first non-exhaustive order.
fn oracle_values(pattern: TreePattern, max_p: usize, budget: Duration) -> Result<Vec<Option<usize>>, String> {
    let cfg = SearchConfig { max_p, budget: Some(budget), ..SearchConfig::default() };
    let series = oracle_series(&ForbiddenFamily::single(pattern), max_p, &cfg).map_err(|e| e.to_string())?;
    Ok(series.iter().map(|r| r.exhaustive.then_some(r.value)).collect())
}

fn certify(
    variant: Variant,
    ns: &[usize],
    first_p: impl Fn(usize) -> usize,
    formula: fn(usize, usize) -> Result<ExValue, FormulaError>,
    pinned: &[(usize, usize, u64)],
) -> Outcome {
    let mut checked = 0;
    for &n in ns {
        let pattern = TreePattern::new(variant, n).map_err(|e| e.to_string())?;
        let values = oracle_values(pattern, 8, Duration::from_secs(120))?;
        for p in first_p(n)..=8 {
            let want = formula(p, n).map_err(|e| e.to_string())?.value;
            match values[p] {
                Some(got) if got as u64 == want => checked += 1,
                Some(got) => return Err(format!("{pattern} p={p}: oracle {got}, formula {want}")),
                None => return Err(format!("{pattern} p={p}: oracle budget exhausted")),
            }
        }
    }
    for &(p, n, want) in pinned {
        let got = formula(p, n).map_err(|e| e.to_string())?.value;
        if got != want {
            return Err(format!("pinned value at p={p}, n={n}: {got} != {want}"));
        }
    }
    Ok(format!("{checked} instances exact"))
}

fn star_certification() -> Outcome {
    certify(Variant::Star, &[2, 3, 4, 5, 6, 7], |n| n - 1, ex_star, &[])
}

fn broom_certification() -> Outcome {
    certify(Variant::Broom, &[5, 6, 7], |n| n, ex_broom, &[(8, 6, 13), (8, 7, 16)])
}

fn spider_certification() -> Outcome {
    let base = certify(Variant::Spider, &[6, 7], |n| n, ex_spider, &[(7, 6, 11), (8, 7, 16)])?;
    // p = 9 is best-effort: reported, never blocking on time
    let mut extra = Vec::new();
    for n in [6, 7] {
        let pattern = TreePattern::spider(n).map_err(|e| e.to_string())?;
        let want = ex_spider(9, n).map_err(|e| e.to_string())?.value;
        match oracle_values(pattern, 9, Duration::from_secs(300))?[9] {
            Some(got) if got as u64 == want => extra.push(format!("p=9,n={n} exact")),
            Some(got) => return Err(format!("spider:{n} p=9: oracle {got}, formula {want}")),
            None => extra.push(format!("p=9,n={n} skipped (budget)")),
        }
    }
    Ok(format!("{base}; {}", extra.join(", ")))
}

fn path_certification() -> Outcome {
    certify(Variant::Path, &[3, 4, 5], |n| n, ex_path, &[])
}

fn constructor_sweep() -> Outcome {
    let mut built = 0;
    for n in 6..=30 {
        let spider = TreePattern::spider(n).map_err(|e| e.to_string())?;
        let broom = TreePattern::broom(n).map_err(|e| e.to_string())?;
        for p in n..=200 {
            let s = spider_extremal(p, n).map_err(|e| e.to_string())?;
            if !family_free(&s.graph, &ForbiddenFamily::single(spider)) {
                return Err(format!("spider witness p={p}, n={n} contains the spider"));
            }
            let want = ex_spider(p, n).map_err(|e| e.to_string())?.value;
            if s.edge_count() as u64 != want {
                return Err(format!("spider witness p={p}, n={n}: {} edges, formula {want}", s.edge_count()));
            }
            let b = broom_extremal(p, n).map_err(|e| e.to_string())?;
            if !family_free(&b.graph, &ForbiddenFamily::single(broom)) {
                return Err(format!("broom witness p={p}, n={n} contains the broom"));
            }
            let want = ex_broom(p, n).map_err(|e| e.to_string())?.value;
            if b.edge_count() as u64 != want {
                return Err(format!("broom witness p={p}, n={n}: {} edges, formula {want}", b.edge_count()));
            }
            built += 2;
        }
    }
    Ok(format!("{built} witnesses free and exact"))
}

fn regular_graphs() -> Outcome {
    let mut cases = 0;
    for k in 1..=10 {
        for p in k + 1..=40 {
            let g = regular_graph(k, p).map_err(|e| e.to_string())?;
            match (k * p % 2 == 0, g) {
                (true, Some(g)) if g.order() == p && (0..p).all(|v| g.degree(v) == k) => {}
                (true, Some(_)) => return Err(format!("k={k}, p={p}: not {k}-regular")),
                (true, None) => return Err(format!("k={k}, p={p}: missing although kp is even")),
                (false, Some(_)) => return Err(format!("k={k}, p={p}: produced although kp is odd")),
                (false, None) => {}
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, p) pairs"))
}

/// Case tag expected for n = 11 at each residue r = p mod 10.
const ELEVEN_TAGS: [&str; 10] = [
    "SPIDER_CLIQUES",
    "SPIDER_ONE_EXTRA",
    "SPIDER_JOIN",
    "SPIDER_JOIN",
    "SPIDER_JOIN_FLOOR",
    "SPIDER_JOIN",
    "SPIDER_BIPARTITE",
    "SPIDER_CLIQUES",
    "SPIDER_CLIQUES",
    "SPIDER_CLIQUES",
];

fn corollary_consistency() -> Outcome {
    let report = check_corollaries(11..=60, 1..=3).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        return Err(format!("{} mismatches, first {:?}", report.mismatches.len(), report.mismatches[0]));
    }
    // n = 11 table: regenerate from the evaluator and compare bit for bit
    // with a CSV assembled from the independent table values.
    let pattern = TreePattern::spider(11).map_err(|e| e.to_string())?;
    let generated = table_csv(&table(&pattern, 11..=40).map_err(|e| e.to_string())?);
    let mut expected = String::from("p,k,r,m,value,case_tag\n");
    for p in 11..=40 {
        let (k, r) = (p / 10, p % 10);
        let value = eleven_table_value(p).ok_or(format!("no table value for p={p}"))?;
        let tag = ELEVEN_TAGS[r];
        let m = if tag.starts_with("SPIDER_JOIN") { (8 % (r + 2)).to_string() } else { String::new() };
        expected.push_str(&format!("{p},{k},{r},{m},{value},{tag}\n"));
    }
    if generated != expected {
        let diff = generated.lines().zip(expected.lines()).find(|(a, b)| a != b);
        return Err(format!("n=11 CSV differs: {diff:?}"));
    }
    Ok(format!(
        "{} evaluations over {} branches clean; n=11 CSV identical ({} rows)",
        report.total_checked(),
        report.checked.len(),
        expected.lines().count() - 1
    ))
}

fn checker_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let variants = [Variant::Star, Variant::Broom, Variant::Spider, Variant::Path];
    let mut contained = 0;
    for i in 0..10_000 {
        let p = rng.gen_range(1..=12);
        let density: f64 = rng.gen_range(0.0..1.0);
        let mut b = GraphBuilder::new(p);
        for u in 0..p {
            for v in u + 1..p {
                if rng.gen_bool(density) {
                    b.add_edge(u, v).map_err(|e| e.to_string())?;
                }
            }
        }
        let g = b.build();
        let variant = variants[i % variants.len()];
        let n = rng.gen_range(variant.min_order()..=13);
        let pattern = TreePattern::new(variant, n).map_err(|e| e.to_string())?;
        let (slow, fast) = (contains(&g, &pattern), contains_fast(&g, &pattern));
        if slow != fast {
            return Err(format!("{pattern} on {g:?}: contains={slow}, contains_fast={fast}"));
        }
        contained += slow as usize;
    }
    Ok(format!("10000 instances agree ({contained} contain the pattern)"))
}

fn closed_form_vs_recursion() -> Outcome {
    let mut cases = 0;
    for n in 7..=40 {
        for r in 2..=n - 5 {
            let closed = ex_mixed_closed_form(n, r).map_err(|e| e.to_string())?;
            let unrolled = ex_mixed_recursive(n, r).map_err(|e| e.to_string())?;
            if closed != unrolled {
                return Err(format!("n={n}, r={r}: closed form {closed}, recursion {unrolled}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, r) pairs equal"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("star certification", star_certification),
        ("broom certification", broom_certification),
        ("spider certification", spider_certification),
        ("path certification", path_certification),
        ("constructor validity sweep", constructor_sweep),
        ("regular graphs", regular_graphs),
        ("corollary consistency", corollary_consistency),
        ("checker equivalence", checker_equivalence),
        ("closed form vs recursion", closed_form_vs_recursion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
