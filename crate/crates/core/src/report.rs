//! Canonical JSON renderings of facets, faces, rank reports and witness
//! reports. serde_json maps are backed by a sorted map, and every list here
//! is emitted in canonical order, so repeated runs produce byte-identical
//! output.

use serde_json::{json, Value};

use crate::graph::{Graph, Matching};
use crate::polytope::{FaceDescriptor, Inequality};
use crate::rank::RankReport;
use crate::witness::{WitnessReport, WitnessResult};

/// `{kind, support, rhs}`; support is the sorted node list defining the
/// inequality (both endpoints for a nonnegativity bound).
pub fn inequality_json(g: &Graph, q: &Inequality) -> Value {
    let (kind, support): (&str, Vec<usize>) = match q {
        Inequality::NonNeg(e) => {
            let (u, v) = g.endpoints(*e);
            ("nonneg", vec![u, v])
        }
        Inequality::Degree(v) => ("degree", vec![*v]),
        Inequality::OddSet(u) => ("oddset", u.iter().copied().collect()),
    };
    json!({ "kind": kind, "support": support, "rhs": q.rhs() })
}

pub fn facets_json(g: &Graph, facets: &[Inequality]) -> Value {
    Value::Array(facets.iter().map(|q| inequality_json(g, q)).collect())
}

/// Sorted edge list of a matching as `[[u, v], ...]`.
pub fn matching_json(g: &Graph, m: &Matching) -> Value {
    Value::Array(m.edges(g).into_iter().map(|(u, v)| json!([u, v])).collect())
}

pub fn face_json(g: &Graph, face: &FaceDescriptor) -> Value {
    json!({
        "tight": facets_json(g, &face.tight_set),
        "dimension": face.dimension,
        "n_tight_matchings": face.tight_matchings.len(),
    })
}

pub fn rank_report_json(g: &Graph, rep: &RankReport) -> Value {
    let ranks: Vec<Value> = rep
        .rank_of
        .iter()
        .map(|(q, r)| json!({ "facet": inequality_json(g, q), "rank": r }))
        .collect();
    let certificates: Vec<Value> = rep
        .certificates
        .iter()
        .map(|(q, c)| {
            json!({
                "facet": inequality_json(g, q),
                "partner": inequality_json(g, &c.partner),
                "ridge_dimension": c.ridge.dimension,
            })
        })
        .collect();
    json!({
        "rho": rep.rho,
        "f0_mode": rep.f0_mode.as_str(),
        "ranks": ranks,
        "certificates": certificates,
    })
}

pub fn witness_result_json(g: &Graph, r: &WitnessResult) -> Value {
    json!({
        "target": inequality_json(g, &r.target),
        "case": r.case.as_str(),
        "matching": matching_json(g, &r.matching),
        "checks": {
            "tight_on_set": r.checks.tight_on_set,
            "tight_on_anchor": r.checks.tight_on_anchor,
            "slack_on_target": r.checks.slack_on_target,
        },
        "via_fallback": r.via_fallback,
    })
}

pub fn witness_report_json(g: &Graph, rep: &WitnessReport) -> Value {
    json!({
        "odd_set": rep.odd_set.iter().copied().collect::<Vec<_>>(),
        "anchor": rep.anchor,
        "ridge_dimension": rep.ridge_dimension,
        "ridge_ok": rep.ridge_ok,
        "fallback_count": rep.fallback_count,
        "witnesses": Value::Array(
            rep.results.iter().map(|r| witness_result_json(g, r)).collect()
        ),
    })
}
