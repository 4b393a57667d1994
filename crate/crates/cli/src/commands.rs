use std::collections::BTreeSet;

use convex_order_kit::convexity::region_classify;
use convex_order_kit::decompose::{
    decompose_order, decompose_preorder, enumerate_chains, local_monotonicity,
    minimal_piece_count_bruteforce, monotone_decompose_codomain, monotone_decompose_domain,
    normalize_chain, piecewise_decompose, upper_monotonicity, DecomposeError, OrderedFn,
    TotalPreorder,
};
use convex_order_kit::generic_order::{format_rational, ultrametric, BlockOrder, WeightedChain};
use convex_order_kit::helly::{convex_helly_core, extract_consistent_subfamily, HellyError, SetFamily};
use convex_order_kit::{apply_chain, LinOrder};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{generate, run_suites, Command, RunConfig, RunError};

pub(crate) fn dispatch(config: &RunConfig, input: &str) -> Result<Value, RunError> {
    match config.command {
        Command::Decompose => decompose(parse(input)?),
        Command::Monotone => monotone(parse(input)?),
        Command::Piecewise => piecewise(parse(input)?, config.oracle_bound),
        Command::Components => components(parse(input)?),
        Command::Helly => helly(parse(input)?),
        Command::Simulate => simulate(parse(input)?),
        Command::Ultrametric => distances(parse(input)?),
        Command::Oracle => oracle(parse(input)?, config.oracle_bound),
        Command::Verify => {
            let suites = run_suites(config.seed);
            let all = suites.iter().all(|s| s.passed);
            let report = json!({ "seed": config.seed, "all_passed": all, "suites": suites });
            if all {
                Ok(report)
            } else {
                Err(RunError::Domain(format!("property failures: {report}")))
            }
        }
        Command::Generate => {
            let request = if input.trim().is_empty() {
                generate::Request::default()
            } else {
                parse(input)?
            };
            generate(config.seed, &request).map_err(RunError::input)
        }
    }
}

fn parse<T: DeserializeOwned>(input: &str) -> Result<T, RunError> {
    Ok(serde_json::from_str(input)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn domain(e: DecomposeError) -> RunError {
    match e {
        DecomposeError::OracleBoundExceeded { .. }
        | DecomposeError::CarrierMismatch
        | DecomposeError::InvalidFunction(_)
        | DecomposeError::Order(_) => RunError::input(e.to_string()),
        _ => RunError::Domain(e.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeInput {
    base: LinOrder,
    #[serde(default)]
    target: Option<LinOrder>,
    /// Preorder tiers, least first.
    #[serde(default)]
    tiers: Option<Vec<Vec<String>>>,
}

fn decompose(input: DecomposeInput) -> Result<Value, RunError> {
    match (input.target, input.tiers) {
        (Some(target), None) => {
            let r = decompose_order(&input.base, &target).map_err(domain)?;
            Ok(json!({
                "status": "ok",
                "chain": r.chain,
                "orientation": r.orientation,
            }))
        }
        (None, Some(tiers)) => {
            let pre = TotalPreorder::from_tiers(tiers);
            let (kernel, chain) = decompose_preorder(&input.base, &pre).map_err(domain)?;
            Ok(json!({ "status": "ok", "kernel": kernel, "chain": chain }))
        }
        _ => Err(RunError::input("give exactly one of `target` and `tiers`")),
    }
}

fn monotone(f: OrderedFn) -> Result<Value, RunError> {
    let d = monotone_decompose_domain(&f).map_err(domain)?;
    let codomain = monotone_decompose_codomain(&f).map_err(domain)?;
    let local = local_monotonicity(&f).map_err(domain)?;
    let upper = upper_monotonicity(&f).map_err(domain)?;
    Ok(json!({
        "status": "ok",
        "domain_chain": d.chain,
        "orientation": d.orientation,
        "codomain_levels": codomain,
        "local": local,
        "upper": upper,
    }))
}

fn piecewise(f: OrderedFn, bound: usize) -> Result<Value, RunError> {
    let p = piecewise_decompose(&f);
    let brute = if f.domain().len() <= bound {
        Some(minimal_piece_count_bruteforce(&f, bound).map_err(domain)?)
    } else {
        None
    };
    Ok(json!({
        "status": "ok",
        "piece_count": p.piece_count(),
        "pieces": p.pieces,
        "chain": p.chain,
        "bruteforce_min": brute,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentsInput {
    order: LinOrder,
    subset: Vec<String>,
}

fn components(input: ComponentsInput) -> Result<Value, RunError> {
    let r = region_classify(&input.order, input.subset.iter().map(String::as_str))
        .map_err(|e| RunError::input(e.to_string()))?;
    let mut v = to_json(&r);
    v["status"] = json!("ok");
    Ok(v)
}

#[derive(Deserialize)]
struct HellyInput {
    #[serde(flatten)]
    family: SetFamily,
    #[serde(default)]
    target_size: Option<usize>,
}

fn helly_error(e: HellyError) -> RunError {
    match e {
        HellyError::EmptySet(_) | HellyError::ComponentBoundExceeded { .. } | HellyError::Order(_) => {
            RunError::input(e.to_string())
        }
        _ => RunError::Domain(e.to_string()),
    }
}

fn helly(input: HellyInput) -> Result<Value, RunError> {
    let f = input.family;
    match input.target_size {
        None if f.component_bound() <= 1 => {
            let w = convex_helly_core(&f).map_err(helly_error)?;
            Ok(json!({
                "status": "ok",
                "mode": "convex_core",
                "witness": w,
                "indices": (0..f.len()).collect::<Vec<_>>(),
            }))
        }
        target => {
            let e = extract_consistent_subfamily(&f, target.unwrap_or(f.len())).map_err(helly_error)?;
            let mut v = to_json(&e);
            v["status"] = json!("ok");
            Ok(v)
        }
    }
}

fn simulate(b: BlockOrder) -> Result<Value, RunError> {
    let report = b.verify_block_structure();
    let v = json!({
        "status": if report.all_passed() { "ok" } else { "violations" },
        "linearization": b.linearize_family().ranking(),
        "blocks": b.block_count(),
        "elements": b.len(),
        "report": report,
    });
    if report.all_passed() {
        Ok(v)
    } else {
        Err(RunError::Domain(v.to_string()))
    }
}

fn distances(w: WeightedChain) -> Result<Value, RunError> {
    let carrier = w.carrier();
    let mut rows = Vec::with_capacity(carrier.len());
    for x in &carrier {
        let mut row = Vec::with_capacity(carrier.len());
        for y in &carrier {
            let d = ultrametric(&w, x, y).map_err(|e| RunError::input(e.to_string()))?;
            row.push(format_rational(&d));
        }
        rows.push(row);
    }
    Ok(json!({ "status": "ok", "carrier": carrier, "distances": rows }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleInput {
    order: LinOrder,
    #[serde(default)]
    target: Option<LinOrder>,
}

fn oracle(input: OracleInput, bound: usize) -> Result<Value, RunError> {
    let order = &input.order;
    let mut chain_count = 0usize;
    let mut reduced = 0usize;
    let mut reachable: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut to_target = Vec::new();
    for chain in enumerate_chains(order, bound).map_err(domain)? {
        chain_count += 1;
        if chain.is_reduced() {
            reduced += 1;
        }
        let t = apply_chain(order, chain.levels()).map_err(|e| RunError::input(e.to_string()))?;
        if input.target.as_ref() == Some(&t) {
            to_target.push(chain.clone());
        }
        reachable.insert(t.ranking().to_vec());
    }
    let mut v = json!({
        "status": "ok",
        "size": order.len(),
        "chain_count": chain_count,
        "reduced_chain_count": reduced,
        "reachable_count": reachable.len(),
        "reachable": reachable,
    });
    if let Some(target) = &input.target {
        if !order.same_carrier(target) {
            return Err(RunError::input("target lives on a different carrier"));
        }
        v["target_chain_count"] = json!(to_target.len());
        v["target_reduced_chain"] = match to_target.first() {
            Some(c) => to_json(&normalize_chain(order, c.levels()).map_err(domain)?),
            None => Value::Null,
        };
    }
    Ok(v)
}
