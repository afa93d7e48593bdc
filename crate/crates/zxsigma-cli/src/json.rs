//! JSON mirrors of the canonical text formats.

use serde_json::{json, Value};
use zxsigma::binomial::{Component, PlainBinomial};
use zxsigma::lattice::LatVec;
use zxsigma::laurent::{LaurentBinomial, PartialCharacter};
use zxsigma::text::Matrix;

pub fn vector(v: &LatVec) -> Value {
    v.entries().iter().map(|e| e.to_string()).collect()
}

pub fn matrix(m: &Matrix) -> Value {
    let mut out = json!({
        "dim": m.n,
        "columns": m.columns.iter().map(vector).collect::<Vec<_>>(),
    });
    if let Some(ms) = &m.multipliers {
        out["multipliers"] = ms.iter().map(|k| k.to_string()).collect();
    }
    out
}

fn laurent(b: &LaurentBinomial) -> Value {
    json!({ "support": vector(&b.support), "constant": b.constant.to_string() })
}

fn plain(b: &PlainBinomial) -> Value {
    json!({ "plus": vector(&b.fplus), "minus": vector(&b.fminus), "constant": b.constant.to_string() })
}

pub fn character(rho: &PartialCharacter) -> Value {
    json!({
        "unit": false,
        "dim": rho.n,
        "sigma": rho.sigma.to_string(),
        "chain": rho.chain().iter().map(laurent).collect::<Vec<_>>(),
    })
}

pub fn unit() -> Value {
    json!({ "unit": true })
}

pub fn characters(n: usize, comps: &[PartialCharacter]) -> Value {
    json!({
        "dim": n,
        "components": comps.iter().map(|c| json!({ "chain": c.chain().iter().map(laurent).collect::<Vec<_>>() })).collect::<Vec<_>>(),
    })
}

pub fn components(n: usize, comps: &[Component]) -> Value {
    let vars = |s: &std::collections::BTreeSet<usize>| s.iter().map(|v| v + 1).collect::<Vec<_>>();
    json!({
        "dim": n,
        "components": comps
            .iter()
            .map(|c| json!({
                "zero": vars(&c.zero_vars),
                "nonzero": vars(&c.nonzero_vars),
                "chain": c.chain.iter().map(plain).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
    })
}
