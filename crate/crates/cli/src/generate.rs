use convex_order_kit::apply_chain;
use convex_order_kit::random::{
    natural_order, random_block_order, random_chain, random_function, random_intersecting_family,
    random_order, random_rank_set, random_weighted_chain, rng,
};
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Map, Value};

/// Kinds of instance, each emitted in the input schema of one subcommand.
pub const KINDS: [&str; 7] = [
    "decompose",
    "components",
    "monotone",
    "helly",
    "simulate",
    "ultrametric",
    "oracle",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    #[serde(default = "all_kinds")]
    pub kinds: Vec<String>,
    #[serde(default = "one")]
    pub count: usize,
    #[serde(default = "six")]
    pub size: usize,
}

fn all_kinds() -> Vec<String> {
    KINDS.iter().map(|k| k.to_string()).collect()
}

fn one() -> usize {
    1
}

fn six() -> usize {
    6
}

impl Default for Request {
    fn default() -> Self {
        Request {
            kinds: all_kinds(),
            count: 1,
            size: 6,
        }
    }
}

/// Random instances keyed by kind, reproducible from `seed`.
pub fn generate(seed: u64, request: &Request) -> Result<Value, String> {
    if request.size == 0 {
        return Err("`size` must be positive".into());
    }
    if let Some(k) = request.kinds.iter().find(|k| !KINDS.contains(&k.as_str())) {
        return Err(format!("unknown kind `{k}`; expected one of {KINDS:?}"));
    }
    let n = request.size;
    let mut out = Map::new();
    for (i, kind) in KINDS.iter().enumerate() {
        if !request.kinds.iter().any(|k| k == kind) {
            continue;
        }
        // One stream per kind, so selecting kinds does not shift the others.
        let mut r = rng(seed.wrapping_mul(31).wrapping_add(i as u64));
        let mut items = Vec::with_capacity(request.count);
        for _ in 0..request.count {
            let item = match *kind {
                "decompose" => {
                    let base = natural_order("x", n);
                    let target = if r.gen_bool(0.5) {
                        let chain = random_chain(&mut r, &base, 4);
                        apply_chain(&base, chain.levels()).expect("chain on base")
                    } else {
                        random_order(&mut r, n)
                    };
                    json!({ "base": base, "target": target })
                }
                "components" => {
                    let order = random_order(&mut r, n);
                    let subset: Vec<&str> = random_rank_set(&mut r, n, 3)
                        .into_iter()
                        .map(|k| order.at(k))
                        .collect();
                    json!({ "order": order, "subset": subset })
                }
                "monotone" => json!(random_function(&mut r, n, n)),
                "helly" => json!(random_intersecting_family(&mut r, 2 * n, n, 2)),
                "simulate" => json!(random_block_order(&mut r, 2 * n, 3)),
                "ultrametric" => json!(random_weighted_chain(&mut r, n)),
                "oracle" => json!({ "order": natural_order("x", n.min(8)) }),
                _ => unreachable!(),
            };
            items.push(item);
        }
        out.insert(kind.to_string(), Value::Array(items));
    }
    Ok(json!({ "status": "ok", "seed": seed, "instances": out }))
}
