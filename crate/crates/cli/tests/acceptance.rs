//! Acceptance suite: one line per criterion, exact checks, pinned runtimes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use convex_order_kit::convexity::component_count;
use convex_order_kit::decompose::{
    decompose_order, enumerate_chains, is_increasing, local_monotonicity,
    minimal_piece_count_bruteforce, monotone_decompose_codomain, monotone_decompose_domain,
    normalize_chain, piecewise_decompose, upper_monotonicity, DecomposeError, Direction, OrderedFn,
};
use convex_order_kit::generic_order::{ultrametric, ElementRecord};
use convex_order_kit::helly::{
    convex_helly_core, extract_consistent_subfamily, interval_helly, HellyError, SetFamily,
};
use convex_order_kit::random::{
    natural_order, partition_from_cuts, random_block_order, random_chain, random_function,
    random_intersecting_family, random_order, random_weighted_chain, rng,
};
use convex_order_kit::{apply_chain, ConvexPartition, LinOrder};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Counts checks and keeps the first few counterexamples.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: u64,
    examples: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 3 {
                self.examples.push(describe());
            }
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    run: fn(&mut Tally),
}

const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, name: "involution", limit: Duration::from_secs(5), run: involution },
    Criterion { number: 2, name: "permutation invariance", limit: Duration::from_secs(10), run: permutation_invariance },
    Criterion { number: 3, name: "reduced-chain injectivity", limit: Duration::from_secs(30), run: injectivity },
    Criterion { number: 4, name: "decomposition completeness", limit: Duration::from_secs(60), run: completeness },
    Criterion { number: 5, name: "component growth bound", limit: Duration::from_secs(20), run: component_bound },
    Criterion { number: 6, name: "monotonicity", limit: Duration::from_secs(60), run: monotonicity },
    Criterion { number: 7, name: "helly", limit: Duration::from_secs(60), run: helly },
    Criterion { number: 8, name: "block orders", limit: Duration::from_secs(30), run: block_orders },
    Criterion { number: 9, name: "ultrametric", limit: Duration::from_secs(10), run: ultrametrics },
    Criterion { number: 10, name: "cli determinism", limit: Duration::from_secs(5), run: cli_golden },
];

fn main() -> ExitCode {
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut all = true;
    for c in CRITERIA.iter().filter(|c| only.is_none_or(|n| n == c.number)) {
        let mut t = Tally::default();
        let start = Instant::now();
        (c.run)(&mut t);
        let elapsed = start.elapsed();
        let in_time = elapsed < c.limit;
        let pass = t.failures == 0 && t.checks > 0 && in_time;
        all &= pass;
        println!(
            "criterion {}: {} ({}; {} checks, {} failed; {:.2}s of {}s)",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            t.checks,
            t.failures,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
        );
        for n in &t.notes {
            println!("    {n}");
        }
        for e in &t.examples {
            println!("    counterexample: {e}");
        }
        if !in_time {
            println!("    over the runtime limit");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// Chains over a carrier of n ranks, as strictly shrinking sets of cut gaps
// (bit g separates ranks g and g + 1). The discrete level is left out.

fn full_cuts(n: usize) -> u32 {
    (1u32 << n.saturating_sub(1)) - 1
}

fn cut_chains(n: usize) -> Vec<Vec<u32>> {
    fn extend(prev: u32, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(path.clone());
        if prev == 0 {
            return;
        }
        // Every proper subset of `prev`.
        let mut s = (prev - 1) & prev;
        loop {
            path.push(s);
            extend(s, path, out);
            path.pop();
            if s == 0 {
                break;
            }
            s = (s - 1) & prev;
        }
    }
    let mut out = Vec::new();
    extend(full_cuts(n), &mut Vec::new(), &mut out);
    out
}

/// Base ranks listed in target order after reversing every block of every
/// level.
fn replay_cuts(n: usize, chain: &[u32]) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..n).collect();
    for &cuts in chain {
        let mut start = 0;
        for g in 0..n {
            if g + 1 == n || cuts >> g & 1 == 1 {
                arr[start..=g].reverse();
                start = g + 1;
            }
        }
    }
    arr
}

fn partitions(order: &LinOrder, chain: &[u32]) -> Vec<ConvexPartition> {
    chain.iter().map(|&c| partition_from_cuts(order, c as u64)).collect()
}

fn order_from_ranks(base: &LinOrder, ranks: &[usize]) -> LinOrder {
    let ranking: Vec<String> = ranks.iter().map(|&r| base.at(r).to_string()).collect();
    LinOrder::new(base.elements().to_vec(), ranking).expect("permutation of the base")
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

fn runs(sorted: &[usize]) -> usize {
    sorted.windows(2).filter(|w| w[1] != w[0] + 1).count() + usize::from(!sorted.is_empty())
}

fn involution(t: &mut Tally) {
    let mut r = rng(1);
    for _ in 0..1000 {
        let n = r.gen_range(0..=12);
        let base = random_order(&mut r, n);
        let chain = random_chain(&mut r, &base, 6);
        let once = apply_chain(&base, chain.levels()).unwrap();
        let twice = apply_chain(&once, chain.levels()).unwrap();
        t.check(twice == base, || format!("{base:?} under {chain:?}"));
    }
}

fn permutation_invariance(t: &mut Tally) {
    let mut r = rng(2);
    let mut orderings = 0;
    for _ in 0..500 {
        let n = r.gen_range(1..=12);
        let base = random_order(&mut r, n);
        let chain = random_chain(&mut r, &base, 3);
        let want = apply_chain(&base, chain.levels()).unwrap();
        for p in permutations(chain.levels()) {
            orderings += 1;
            t.check(apply_chain(&base, &p).unwrap() == want, || format!("{base:?} under {p:?}"));
        }
    }
    t.note(format!("{orderings} level orderings"));
}

/// No block with two or more ranks appears in two levels.
fn reduced(n: usize, chain: &[u32]) -> bool {
    let mut seen = BTreeSet::new();
    for &cuts in chain {
        let mut start = 0;
        for g in 0..n {
            if g + 1 == n || cuts >> g & 1 == 1 {
                if g > start && !seen.insert((start, g)) {
                    return false;
                }
                start = g + 1;
            }
        }
    }
    true
}

fn injectivity(t: &mut Tally) {
    const SCHROEDER: [usize; 7] = [1, 1, 2, 6, 22, 90, 394];
    for n in 0..=6 {
        let base = natural_order("e", n);
        let mut seen: BTreeMap<Vec<usize>, Vec<u32>> = BTreeMap::new();
        let chains: Vec<Vec<u32>> = cut_chains(n).into_iter().filter(|c| reduced(n, c)).collect();
        for chain in &chains {
            let ranks = replay_cuts(n, chain);
            let replayed = apply_chain(&base, &partitions(&base, chain)).unwrap();
            t.check(replayed == order_from_ranks(&base, &ranks), || {
                format!("n = {n}: apply_chain disagrees with replay of {chain:?}")
            });
            let prev = seen.insert(ranks.clone(), chain.clone());
            t.check(prev.is_none(), || format!("n = {n}: {prev:?} and {chain:?} both give {ranks:?}"));
        }
        // Injective and onto the reachable orders.
        t.check(seen.len() == SCHROEDER[n], || format!("n = {n}: {} orders", seen.len()));
        t.note(format!("n = {n}: {} reduced chains, {} orders", chains.len(), seen.len()));
    }
}

fn completeness(t: &mut Tally) {
    const SCHROEDER: [usize; 8] = [1, 1, 2, 6, 22, 90, 394, 1806];
    for n in 0..=7 {
        let base = natural_order("e", n);
        let mut oracle: BTreeMap<Vec<String>, Vec<ConvexPartition>> = BTreeMap::new();
        for chain in enumerate_chains(&base, 8).unwrap() {
            let target = apply_chain(&base, chain.levels()).unwrap();
            oracle.entry(target.ranking().to_vec()).or_insert_with(|| chain.levels().to_vec());
        }
        let independent: BTreeSet<Vec<String>> = cut_chains(n)
            .iter()
            .map(|c| order_from_ranks(&base, &replay_cuts(n, c)).ranking().to_vec())
            .collect();
        t.check(oracle.keys().eq(independent.iter()), || {
            format!("n = {n}: enumerated reachable set differs from replayed chains")
        });
        t.check(oracle.len() == SCHROEDER[n], || {
            format!("n = {n}: {} reachable, expected {}", oracle.len(), SCHROEDER[n])
        });
        let ids: Vec<usize> = (0..n).collect();
        for perm in permutations(&ids) {
            let target = order_from_ranks(&base, &perm);
            let result = decompose_order(&base, &target);
            match (oracle.get(target.ranking()), result) {
                (Some(levels), Ok(d)) => {
                    let back = apply_chain(&base, d.chain.levels()).unwrap();
                    let normal = normalize_chain(&base, levels).unwrap();
                    t.check(back == target && normal == d.chain && d.chain.is_reduced(), || {
                        format!("{target:?}: chain {:?} vs normalized {normal:?}", d.chain)
                    });
                }
                (None, Err(DecomposeError::Failure(_))) => t.check(true, String::new),
                (Some(_), Err(e)) => t.check(false, || format!("{target:?} reachable but {e}")),
                (None, Ok(_)) => t.check(false, || format!("{target:?} unreachable but decomposed")),
                (None, Err(e)) => t.check(false, || format!("{target:?}: unexpected error {e}")),
            }
        }
        t.note(format!("n = {n}: {} reachable of {}", oracle.len(), (1..=n).product::<usize>()));
    }
}

fn component_bound(t: &mut Tally) {
    let mut worst = 0.0f64;
    for n in 1..=7 {
        for chain in cut_chains(n) {
            let arr = replay_cuts(n, &chain);
            let mut pos = vec![0; n];
            for (p, &k) in arr.iter().enumerate() {
                pos[k] = p;
            }
            let factor = 3usize.pow(chain.len() as u32);
            for mask in 1u32..(1 << n) {
                let before: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                let mut after: Vec<usize> = before.iter().map(|&k| pos[k]).collect();
                after.sort_unstable();
                let (b, a) = (runs(&before), runs(&after));
                let mut probe = after.clone();
                t.check(a <= factor * b && component_count(&mut probe) == a, || {
                    format!("n = {n}, chain {chain:?}, subset {before:?}: {b} -> {a}")
                });
                worst = worst.max(a as f64 / (factor * b) as f64);
            }
        }
    }
    let mut r = rng(5);
    for _ in 0..1000 {
        let n = r.gen_range(1..=14);
        let base = natural_order("x", n);
        let chain = random_chain(&mut r, &base, 5);
        let levels: Vec<ConvexPartition> =
            chain.levels().iter().filter(|l| !l.is_discrete()).cloned().collect();
        let target = apply_chain(&base, &levels).unwrap();
        let subset: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        let mut after: Vec<usize> = subset.iter().map(|&k| target.rank(base.at(k)).unwrap()).collect();
        after.sort_unstable();
        let (b, a) = (runs(&subset), runs(&after));
        t.check(a <= 3usize.pow(levels.len() as u32) * b, || {
            format!("{subset:?} under {levels:?}: {b} -> {a}")
        });
    }
    t.note(format!("largest ratio of growth to bound: {worst:.3}"));
}

fn codomain_rank(f: &OrderedFn, x: &str) -> usize {
    f.codomain().rank(f.apply(x).unwrap()).unwrap()
}

fn check_monotone(t: &mut Tally, f: &OrderedFn) -> bool {
    let Ok(d) = monotone_decompose_domain(f) else {
        return false;
    };
    let reordered = apply_chain(f.domain(), d.chain.levels()).unwrap();
    t.check(is_increasing(&reordered, f.codomain(), f), || format!("domain replay {f:?}"));
    let levels = match monotone_decompose_codomain(f) {
        Ok(l) => l,
        Err(e) => {
            t.check(false, || format!("codomain chain for {f:?}: {e}"));
            return true;
        }
    };
    let recod = apply_chain(f.codomain(), &levels).unwrap();
    t.check(is_increasing(f.domain(), &recod, f), || format!("codomain replay {f:?}"));
    // The levels above the kernel are the preimages of the codomain levels.
    let upper = &d.chain.levels()[1..];
    let mut matches = upper.len() == levels.len();
    if matches {
        for (e, p) in upper.iter().zip(&levels) {
            for x in f.domain().ranking() {
                for y in f.domain().ranking() {
                    matches &= e.related(x, y) == p.related(f.apply(x).unwrap(), f.apply(y).unwrap());
                }
            }
        }
    }
    t.check(matches, || format!("pushforward mismatch for {f:?}"));
    true
}

fn check_local(t: &mut Tally, f: &OrderedFn) {
    match local_monotonicity(f) {
        Ok(part) => {
            let mut ok = f.domain().len() < 2 || !part.is_discrete();
            for block in part.blocks() {
                let ranks: Vec<usize> = f
                    .domain()
                    .ranking()
                    .iter()
                    .filter(|x| block.contains(x))
                    .map(|x| codomain_rank(f, x))
                    .collect();
                let constant = ranks.iter().all(|&r| r == ranks[0]);
                let up = ranks.windows(2).all(|w| w[0] < w[1]);
                let down = ranks.windows(2).all(|w| w[0] > w[1]);
                ok &= constant || up || down;
            }
            t.check(ok, || format!("local monotonicity of {f:?}: {part:?}"));
        }
        Err(DecomposeError::NonConvexKernel(_) | DecomposeError::ConstantFunction) => {}
        Err(DecomposeError::Failure(_)) => {
            t.check(f.kernel().is_discrete(), || format!("local monotonicity failed on {f:?}"))
        }
        Err(e) => t.check(false, || format!("local monotonicity of {f:?}: {e}")),
    }
}

fn check_upper(t: &mut Tally, f: &OrderedFn) {
    let u = match upper_monotonicity(f) {
        Ok(u) => u,
        Err(e) => return t.check(false, || format!("upper monotonicity of {f:?}: {e}")),
    };
    let ids = f.domain().ranking();
    let mut ok = !u.partition.is_one_block();
    for (i, x) in ids.iter().enumerate() {
        for y in &ids[i + 1..] {
            if u.partition.related(x, y) {
                continue;
            }
            let (a, b) = (codomain_rank(f, x), codomain_rank(f, y));
            ok &= match u.direction {
                Direction::Increasing => a < b,
                Direction::Decreasing => a > b,
            };
        }
    }
    t.check(ok, || format!("upper monotonicity of {f:?}: {u:?}"));
}

fn check_piecewise(t: &mut Tally, f: &OrderedFn) -> usize {
    let p = piecewise_decompose(f);
    let mut ok = p.pieces.carrier_len() == f.domain().len();
    for piece in p.pieces.blocks() {
        let g = f.restrict(piece.iter().map(String::as_str)).unwrap();
        let keep = piece.iter().map(String::as_str).collect();
        let sub: Vec<ConvexPartition> = p.chain.levels().iter().map(|l| l.restrict(&keep)).collect();
        ok &= is_increasing(&apply_chain(g.domain(), &sub).unwrap(), g.codomain(), &g);
    }
    t.check(ok, || format!("piecewise replay of {f:?}"));
    p.piece_count()
}

fn monotonicity(t: &mut Tally) {
    let mut r = rng(6);
    let mut decomposed = 0;
    let (mut optimal, mut above, mut small) = (0, 0, 0);
    for _ in 0..1000 {
        let (n, m) = (r.gen_range(1..=10), r.gen_range(1..=10));
        let f = random_function(&mut r, n, m);
        if check_monotone(t, &f) {
            decomposed += 1;
            check_upper(t, &f);
        }
        check_local(t, &f);
        let greedy = check_piecewise(t, &f);
        if n <= 6 {
            small += 1;
            let best = minimal_piece_count_bruteforce(&f, 8).unwrap();
            t.check(greedy >= best, || format!("{f:?}: greedy {greedy} below minimum {best}"));
            if greedy == best {
                optimal += 1;
            } else {
                above += 1;
            }
        }
    }
    t.note(format!("domain decomposition succeeded on {decomposed} of 1000"));
    t.note(format!("greedy pieces on {small} functions with n <= 6: {optimal} minimal, {above} above minimum"));
}

/// Size of the largest subfamily with a common member.
fn max_fip(f: &SetFamily) -> usize {
    let k = f.len();
    let sets: Vec<Vec<String>> = (0..k).map(|i| f.set(i)).collect();
    let mut best = 0;
    for mask in 1u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let first = mask.trailing_zeros() as usize;
        if sets[first]
            .iter()
            .any(|x| (0..k).filter(|i| mask >> i & 1 == 1).all(|i| sets[i].contains(x)))
        {
            best = size;
        }
    }
    best
}

fn helly(t: &mut Tally) {
    const CARRIER: usize = 12;
    const MAX_SETS: usize = 5;
    // Carriers below 12 embed as interval families on 12 points.
    let intervals: Vec<(usize, usize)> =
        (0..CARRIER).flat_map(|a| (a..CARRIER).map(move |b| (a, b))).collect();
    let mut families = 0u64;
    let mut stack: Vec<(usize, usize)> = Vec::with_capacity(MAX_SETS);
    // Multisets of intervals in nondecreasing index order. A prefix holding a
    // disjoint pair is checked once and not extended.
    fn walk(
        t: &mut Tally,
        intervals: &[(usize, usize)],
        from: usize,
        stack: &mut Vec<(usize, usize)>,
        families: &mut u64,
    ) {
        for i in from..intervals.len() {
            let iv = intervals[i];
            let clash = stack.iter().any(|s| s.1 < iv.0 || iv.1 < s.0);
            stack.push(iv);
            *families += 1;
            match interval_helly(stack) {
                Ok(p) => t.check(!clash && stack.iter().all(|s| s.0 <= p && p <= s.1), || {
                    format!("{stack:?}: witness {p}")
                }),
                Err((a, b)) => {
                    let (x, y) = (stack[a], stack[b]);
                    t.check(clash && (x.1 < y.0 || y.1 < x.0), || format!("{stack:?}: pair {a}, {b}"))
                }
            }
            if !clash && stack.len() < MAX_SETS {
                walk(t, intervals, i, stack, families);
            }
            stack.pop();
        }
    }
    walk(t, &intervals, 0, &mut stack, &mut families);
    t.note(format!("{families} interval families through the core"));

    // The order-level wrapper on small carriers.
    let mut r = rng(7);
    for _ in 0..2000 {
        let n = r.gen_range(1..=CARRIER);
        let order = random_order(&mut r, n);
        let k = r.gen_range(1..=MAX_SETS);
        let sets: Vec<Vec<String>> = (0..k)
            .map(|_| {
                let a = r.gen_range(0..n);
                let b = r.gen_range(a..n);
                (a..=b).map(|p| order.at(p).to_string()).collect()
            })
            .collect();
        let f = SetFamily::new(order.clone(), sets.clone()).unwrap();
        let pairwise = f.first_disjoint_pair().is_none();
        match convex_helly_core(&f) {
            Ok(w) => t.check(pairwise && sets.iter().all(|s| s.contains(&w)), || format!("{sets:?}: {w}")),
            Err(HellyError::Failure(_)) => t.check(!pairwise, || format!("{sets:?} intersect pairwise")),
            Err(e) => t.check(false, || format!("{sets:?}: {e}")),
        }
    }

    let mut searched = BTreeMap::new();
    for _ in 0..300 {
        let carrier = r.gen_range(4..=20);
        let size = r.gen_range(1..=12);
        let f = random_intersecting_family(&mut r, carrier, size, 2);
        let best = max_fip(&f);
        match extract_consistent_subfamily(&f, best) {
            Ok(e) => {
                *searched.entry(format!("{:?}", e.clique_search)).or_insert(0) += 1;
                t.check(
                    e.indices.len() == best && e.indices.iter().all(|&i| f.contains(i, &e.witness)),
                    || format!("{f:?}: {} sets, oracle {best}", e.indices.len()),
                )
            }
            Err(err) => t.check(false, || format!("{f:?}: {err} at oracle size {best}")),
        }
        if best < f.len() {
            t.check(
                matches!(extract_consistent_subfamily(&f, best + 1), Err(HellyError::Failure(_))),
                || format!("{f:?}: extraction beyond the oracle maximum {best}"),
            );
        }
    }
    t.note(format!("bounded families by clique search: {searched:?}"));
}

fn block_orders(t: &mut Tally) {
    let mut r = rng(8);
    for _ in 0..500 {
        let b = random_block_order(&mut r, 50, 4);
        let mut records: Vec<(BigRational, ElementRecord)> = b
            .blocks()
            .flat_map(|(q, els)| els.iter().map(move |e| (q.clone(), e.clone())))
            .collect();
        records.sort_by(|x, y| (&x.0, x.1.tag, x.1.rank).cmp(&(&y.0, y.1.tag, y.1.rank)));
        let expected: Vec<&str> = records.iter().map(|(_, e)| e.id.as_str()).collect();
        let lin = b.linearize_family();
        t.check(lin.ranking().iter().map(String::as_str).eq(expected.iter().copied()), || {
            format!("linearization {:?} vs tie-break {expected:?}", lin.ranking())
        });

        // Relations by position in the expected linearization.
        let n = records.len();
        let mut less = vec![vec![false; n]; n];
        let mut same = vec![vec![false; n]; n];
        let mut agrees = true;
        for i in 0..n {
            for j in 0..n {
                less[i][j] = b.right_generic(expected[i], expected[j]).unwrap();
                same[i][j] = !less[i][j] && !b.right_generic(expected[j], expected[i]).unwrap();
                agrees &= less[i][j] == (records[i].0 < records[j].0);
                agrees &= same[i][j] == (records[i].0 == records[j].0);
            }
        }
        t.check(agrees, || "relations disagree with block indices".into());
        let mut axioms = true;
        for i in 0..n {
            axioms &= !less[i][i] && same[i][i];
            for j in 0..n {
                axioms &= !(less[i][j] && less[j][i]);
                axioms &= same[i][j] == same[j][i];
                // Linear extension.
                axioms &= !less[i][j] || i < j;
                for k in 0..n {
                    axioms &= !(less[i][j] && less[j][k]) || less[i][k];
                    axioms &= !(same[i][j] && same[j][k]) || same[i][k];
                    // Dependence classes are convex.
                    axioms &= !(i < j && j < k && same[i][k]) || same[i][j];
                }
            }
        }
        t.check(axioms, || "order axioms".into());

        let keys: Vec<BigRational> = b.indices().cloned().collect();
        let mut dense = true;
        for w in keys.windows(2) {
            let (bigger, q) = b
                .insert_block_between(Some(&w[0]), Some(&w[1]), vec![ElementRecord::new("fresh", 0, 0)])
                .unwrap();
            let below = &b.block(&w[0]).unwrap()[0].id;
            let above = &b.block(&w[1]).unwrap()[0].id;
            dense &= w[0] < q && q < w[1];
            dense &= bigger.right_generic(below, "fresh").unwrap() && bigger.right_generic("fresh", above).unwrap();
        }
        let (_, top) = b.insert_block_between(keys.last(), None, vec![ElementRecord::new("fresh", 0, 0)]).unwrap();
        let (_, bottom) = b.insert_block_between(None, keys.first(), vec![ElementRecord::new("fresh", 0, 0)]).unwrap();
        dense &= &top > keys.last().unwrap() && &bottom < keys.first().unwrap();
        t.check(dense, || "density".into());

        // Morley replacement stability.
        let index_of = |id: &str| records.iter().find(|(_, e)| e.id == id).map(|(q, _)| q.clone()).unwrap();
        let len = r.gen_range(0..=n.min(8));
        let seq: Vec<String> = expected.choose_multiple(&mut r, len).map(|s| s.to_string()).collect();
        let morley = seq.windows(2).all(|w| index_of(&w[0]) < index_of(&w[1]));
        let mut swaps = BTreeMap::new();
        for (i, x) in seq.iter().enumerate() {
            if r.gen_bool(0.5) {
                let block = b.block(&index_of(x)).unwrap();
                swaps.insert(i, block[r.gen_range(0..block.len())].id.clone());
            }
        }
        let swapped = b.replace_in_blocks(&seq, &swaps).unwrap();
        t.check(
            b.is_morley(&seq).unwrap() == morley && b.is_morley(&swapped).unwrap() == morley,
            || format!("replacement changed Morley status of {seq:?}"),
        );

        // Insertion and removal along one representative per block.
        let reps: Vec<String> = b.blocks().map(|(_, els)| els[0].id.clone()).collect();
        let mut ok = b.is_morley(&reps).unwrap();
        if keys.len() >= 2 {
            let i = r.gen_range(0..keys.len() - 1);
            let (bigger, _) = b
                .insert_block_between(Some(&keys[i]), Some(&keys[i + 1]), vec![ElementRecord::new("fresh", 0, 0)])
                .unwrap();
            let (seq, removed) = bigger.insert_into_morley(&reps, "fresh").unwrap();
            ok &= removed.is_none() && seq.len() == reps.len() + 1 && seq[i + 1] == "fresh";
            ok &= bigger.is_morley(&seq).unwrap();
        }
        let j = r.gen_range(0..keys.len());
        let block = b.block(&keys[j]).unwrap();
        let other = &block[r.gen_range(0..block.len())].id;
        let (seq, removed) = b.insert_into_morley(&reps, other).unwrap();
        ok &= removed.as_deref() == Some(reps[j].as_str()) && seq.len() == reps.len() && &seq[j] == other;
        ok &= b.is_morley(&seq).unwrap();
        t.check(ok, || format!("Morley insertion into {reps:?}"));

        let report = b.verify_block_structure();
        t.check(report.all_passed(), || format!("{report:?}"));
    }
}

fn ultrametrics(t: &mut Tally) {
    let mut r = rng(9);
    for _ in 0..500 {
        let n = r.gen_range(1..=10);
        let w = random_weighted_chain(&mut r, n);
        let ids = w.carrier();
        let levels = w.chain().levels();
        // Weight of the first level relating x and y; the implicit top weighs one.
        let expected = |x: &str, y: &str| {
            if x == y {
                return BigRational::zero();
            }
            match levels.iter().position(|l| l.related(x, y)) {
                Some(i) => w.weights()[i].clone(),
                None => BigRational::one(),
            }
        };
        let mut d = vec![vec![BigRational::zero(); ids.len()]; ids.len()];
        let mut exact = true;
        for (i, x) in ids.iter().enumerate() {
            for (j, y) in ids.iter().enumerate() {
                d[i][j] = ultrametric(&w, x, y).unwrap();
                exact &= d[i][j] == expected(x, y);
            }
        }
        t.check(exact, || format!("distances of {w:?} differ from level weights"));
        let (mut symmetric, mut identity, mut strong) = (true, true, true);
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                symmetric &= d[i][j] == d[j][i];
                identity &= d[i][j].is_zero() == (i == j);
                for k in 0..ids.len() {
                    strong &= d[i][k] <= d[i][j].clone().max(d[j][k].clone());
                }
            }
        }
        t.check(symmetric, || format!("symmetry of {w:?}"));
        t.check(identity, || format!("identity of {w:?}"));
        t.check(strong, || format!("strong triangle of {w:?}"));
    }
}

/// Golden name, subcommand, input file and extra arguments, expected exit.
type GoldenCase = (&'static str, &'static str, Option<&'static str>, &'static [&'static str], i32);

const GOLDEN: [GoldenCase; 12] = [
    ("decompose", "decompose", Some("decompose.json"), &[], 0),
    ("decompose_failure", "decompose", Some("decompose_failure.json"), &[], 2),
    ("decompose_preorder", "decompose", Some("decompose_preorder.json"), &[], 0),
    ("monotone", "monotone", Some("monotone.json"), &[], 0),
    ("piecewise", "piecewise", Some("piecewise.json"), &[], 0),
    ("components", "components", Some("components.json"), &[], 0),
    ("helly", "helly", Some("helly.json"), &[], 0),
    ("simulate", "simulate", Some("simulate.json"), &[], 0),
    ("ultrametric", "ultrametric", Some("ultrametric.json"), &[], 0),
    ("oracle", "oracle", Some("oracle.json"), &[], 0),
    ("generate", "generate", Some("generate.json"), &["--seed", "7"], 0),
    ("verify", "verify", None, &["--seed", "0"], 0),
];

fn run_binary(command: &str, input: Option<&Path>, args: &[&str]) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_convex-order-kit"));
    cmd.arg(command).args(args).env_remove("CONVEX_ORDER_KIT_SEED");
    if let Some(p) = input {
        cmd.arg(p);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_golden(t: &mut Tally) {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let schemas = root.join("../../schemas");
    for (name, command, input, args, code) in GOLDEN {
        let input = input.map(|f| schemas.join(f));
        let golden = std::fs::read(root.join("tests/golden").join(format!("{name}.json")))
            .unwrap_or_else(|e| panic!("golden file for {name}: {e}"));
        let first = run_binary(command, input.as_deref(), args);
        let second = run_binary(command, input.as_deref(), args);
        t.check(first.0 == code && second.0 == code, || {
            format!("{name}: exit {} and {}, expected {code}", first.0, second.0)
        });
        t.check(first.1 == second.1, || format!("{name}: runs differ"));
        t.check(first.1 == golden, || format!("{name}: output differs from golden file"));
    }
}
