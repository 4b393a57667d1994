use std::collections::BTreeMap;
use std::thread;

use convex_order_kit::convexity::component_count;
use convex_order_kit::decompose::{
    decompose_order, is_increasing, monotone_decompose_codomain, monotone_decompose_domain,
    normalize_chain, piecewise_decompose,
};
use convex_order_kit::generic_order::ultrametric;
use convex_order_kit::helly::extract_consistent_subfamily;
use convex_order_kit::random::{
    natural_order, random_block_order, random_chain, random_function, random_intersecting_family,
    random_order, random_weighted_chain, rng,
};
use convex_order_kit::{apply_chain, ConvexPartition};
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCount {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub properties: Vec<PropertyCount>,
}

#[derive(Default)]
struct Tally(BTreeMap<&'static str, (u64, u64)>);

impl Tally {
    fn record(&mut self, property: &'static str, ok: bool) {
        let e = self.0.entry(property).or_default();
        if ok {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }

    fn into_report(self, name: &str) -> SuiteReport {
        let properties: Vec<PropertyCount> = self
            .0
            .into_iter()
            .map(|(name, (passed, failed))| PropertyCount {
                name: name.to_string(),
                passed,
                failed,
            })
            .collect();
        SuiteReport {
            name: name.to_string(),
            passed: properties.iter().all(|p| p.failed == 0),
            properties,
        }
    }
}

type Suite = fn(u64) -> Tally;

const SUITES: [(&str, Suite); 8] = [
    ("involution", involution),
    ("permutation_invariance", permutation_invariance),
    ("decomposition", decomposition),
    ("component_bound", component_bound),
    ("monotonicity", monotonicity),
    ("helly", helly),
    ("block_order", block_order),
    ("ultrametric", ultrametrics),
];

/// Runs every property suite on its own thread; reports are ordered by
/// suite name.
pub fn run_suites(seed: u64) -> Vec<SuiteReport> {
    let mut reports: Vec<SuiteReport> = thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .enumerate()
            .map(|(i, &(name, suite))| {
                let suite_seed = seed.wrapping_add(i as u64 * 0x9e37_79b9);
                s.spawn(move || suite(suite_seed).into_report(name))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

fn involution(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..200 {
        let n = r.gen_range(0..=12);
        let base = random_order(&mut r, n);
        let chain = random_chain(&mut r, &base, 5);
        let once = apply_chain(&base, chain.levels()).unwrap();
        t.record("apply_twice_is_identity", apply_chain(&once, chain.levels()).unwrap() == base);
    }
    t
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

fn permutation_invariance(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..100 {
        let n = r.gen_range(1..=10);
        let base = random_order(&mut r, n);
        let chain = random_chain(&mut r, &base, 3);
        let want = apply_chain(&base, chain.levels()).unwrap();
        let same = permutations(chain.levels())
            .iter()
            .all(|p| apply_chain(&base, p).unwrap() == want);
        t.record("order_of_levels_irrelevant", same);
    }
    t
}

fn decomposition(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..200 {
        let n = r.gen_range(1..=12);
        let base = random_order(&mut r, n);
        let chain = random_chain(&mut r, &base, 5);
        let target = apply_chain(&base, chain.levels()).unwrap();
        match decompose_order(&base, &target) {
            Ok(d) => {
                t.record("round_trip", apply_chain(&base, d.chain.levels()).unwrap() == target);
                t.record(
                    "matches_normalized_chain",
                    normalize_chain(&base, chain.levels()).unwrap() == d.chain,
                );
                t.record("reduced", d.chain.is_reduced());
            }
            Err(_) => t.record("round_trip", false),
        }
    }
    t
}

fn component_bound(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..200 {
        let n = r.gen_range(1..=14);
        let base = natural_order("x", n);
        let chain = random_chain(&mut r, &base, 4);
        let levels: Vec<ConvexPartition> = chain.levels().iter().filter(|l| !l.is_discrete()).cloned().collect();
        let target = apply_chain(&base, &levels).unwrap();
        let subset: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        let mut before = subset.clone();
        let mut after: Vec<usize> = subset.iter().map(|&k| target.rank(base.at(k)).unwrap()).collect();
        let (b, a) = (component_count(&mut before), component_count(&mut after));
        t.record("growth_at_most_3_pow_len", a <= 3usize.pow(levels.len() as u32) * b);
    }
    t
}

fn monotonicity(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..200 {
        let (n, m) = (r.gen_range(1..=10), r.gen_range(1..=10));
        let f = random_function(&mut r, n, m);
        if let Ok(d) = monotone_decompose_domain(&f) {
            let reordered = apply_chain(f.domain(), d.chain.levels()).unwrap();
            t.record("domain_replay", is_increasing(&reordered, f.codomain(), &f));
            let ok = monotone_decompose_codomain(&f)
                .map(|levels| {
                    let recod = apply_chain(f.codomain(), &levels).unwrap();
                    is_increasing(f.domain(), &recod, &f)
                })
                .unwrap_or(false);
            t.record("codomain_replay", ok);
        }
        let p = piecewise_decompose(&f);
        let ok = p.pieces.blocks().iter().all(|piece| {
            let g = f.restrict(piece.iter().map(String::as_str)).unwrap();
            let keep = piece.iter().map(String::as_str).collect();
            let sub: Vec<ConvexPartition> = p.chain.levels().iter().map(|l| l.restrict(&keep)).collect();
            is_increasing(&apply_chain(g.domain(), &sub).unwrap(), g.codomain(), &g)
        });
        t.record("piecewise_replay", ok);
    }
    t
}

fn helly(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..100 {
        let carrier = r.gen_range(4..=20);
        let size = r.gen_range(1..=10);
        let f = random_intersecting_family(&mut r, carrier, size, 2);
        match extract_consistent_subfamily(&f, 1) {
            Ok(e) => t.record(
                "witness_in_every_returned_set",
                e.indices.iter().all(|&i| f.contains(i, &e.witness)),
            ),
            Err(_) => t.record("witness_in_every_returned_set", false),
        }
    }
    t
}

fn block_order(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..60 {
        let b = random_block_order(&mut r, 30, 4);
        for check in b.verify_block_structure().checks {
            let name: &'static str = match check.name.as_str() {
                "block_membership" => "block_membership",
                "strict_partial_order" => "strict_partial_order",
                "incomparability_is_dependence" => "incomparability_is_dependence",
                "dependence_equivalence" => "dependence_equivalence",
                "dependence_classes_convex" => "dependence_classes_convex",
                "linear_extension" => "linear_extension",
                "density" => "density",
                "tie_break" => "tie_break",
                "tag_restriction" => "tag_restriction",
                _ => "other",
            };
            t.record(name, check.passed);
        }
    }
    t
}

fn ultrametrics(seed: u64) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..60 {
        let n = r.gen_range(1..=8);
        let w = random_weighted_chain(&mut r, n);
        let ids = w.carrier();
        let d = |x: &str, y: &str| ultrametric(&w, x, y).unwrap();
        let mut symmetric = true;
        let mut identity = true;
        let mut strong = true;
        for x in &ids {
            for y in &ids {
                let dxy = d(x, y);
                symmetric &= dxy == d(y, x);
                identity &= dxy.is_zero() == (x == y);
                for z in &ids {
                    strong &= d(x, z) <= dxy.clone().max(d(y, z));
                }
            }
        }
        t.record("symmetry", symmetric);
        t.record("identity_of_indiscernibles", identity);
        t.record("strong_triangle", strong);
    }
    t
}
