use std::collections::BTreeMap;
use std::sync::Arc;

use finlab_fm::rado::{
    extend_partial_iso, extension_witness, is_partial_iso, BitGraph, Demand, HypergraphParams,
    RadoHypergraph, Structure,
};
use serde_json::json;

use crate::args::{ExtendArgs, QueryArgs, RadoCommand, StructureArgs, StructureKind};
use crate::error::{CliError, Result};
use crate::report::{Finding, Outcome};
use crate::text;

pub fn run(r: &RadoCommand) -> Result<Finding> {
    match r {
        RadoCommand::Build(a) => build(a),
        RadoCommand::Query(a) => query(a),
        RadoCommand::Extend(a) => extend(a),
    }
}

/// Seeded parameters with the defaults used throughout.
pub fn params(a: &StructureArgs) -> HypergraphParams {
    HypergraphParams {
        arity: a.arity.unwrap_or(2),
        vertices: a.vertices.unwrap_or(64),
        seed: a.seed.unwrap_or(0),
        window: a.window.unwrap_or(12),
        demand: a.demand.unwrap_or(3),
        spacing: a.spacing,
    }
}

fn structure(a: &StructureArgs) -> Result<Arc<dyn Structure>> {
    Ok(match a.structure.unwrap_or(StructureKind::Bit) {
        StructureKind::Bit => {
            if a.arity.is_some_and(|n| n != 2) {
                return Err(CliError::Invalid("the bit structure is a graph".into()));
            }
            Arc::new(BitGraph::new(a.vertices.unwrap_or(1 << 13)))
        }
        StructureKind::Seeded => Arc::new(RadoHypergraph::build(params(a))?),
    })
}

fn build(a: &StructureArgs) -> Result<Finding> {
    let p = params(a);
    let g = RadoHypergraph::build(p)?;
    let demands = g.certified_demands();
    let mut met = 0;
    for d in &demands {
        if let Some(v) = extension_witness(&g, d)? {
            let v = finlab_core::Atom(v);
            let ok = d.pos.iter().all(|s| g.is_edge(&s.with(v)))
                && d.neg.iter().all(|s| !g.is_edge(&s.with(v)));
            met += usize::from(ok);
        }
    }
    let verdict = if met == demands.len() {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Finding::new(
        "rado-structures",
        verdict,
        json!({ "params": p, "repairs": g.repairs(), "demands": demands.len(), "met": met }),
    )
}

fn query(a: &QueryArgs) -> Result<Finding> {
    let g = structure(&a.structure)?;
    let d = Demand {
        pos: a.pos.members().to_vec(),
        neg: a.neg.members().to_vec(),
        exclude: a.exclude.clone(),
        within: None,
    };
    Ok(match extension_witness(g.as_ref(), &d)? {
        Some(v) => Finding::new("extension-property", Outcome::Pass, json!({ "witness": v }))?,
        None => Finding::new(
            "extension-property",
            Outcome::Absent,
            json!({ "witness": null }),
        )?
        .note("no witness inside the finite vertex range"),
    })
}

fn extend(a: &ExtendArgs) -> Result<Finding> {
    let g = structure(&a.structure)?;
    let pairs = text::atom_map(&a.map).map_err(CliError::Invalid)?;
    let mut p: BTreeMap<u64, u64> = pairs.iter().map(|(x, y)| (x.id(), y.id())).collect();
    if p.len() != pairs.len() {
        return Err(CliError::Invalid("the map repeats a vertex".into()));
    }
    if !is_partial_iso(g.as_ref(), &p) {
        return Err(CliError::Invalid(
            "the map is not a partial isomorphism".into(),
        ));
    }
    let image = extend_partial_iso(g.as_ref(), &p, a.target, a.ordered)?;
    p.insert(a.target, image);
    let verdict = if is_partial_iso(g.as_ref(), &p) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    let map: Vec<(u64, u64)> = p.into_iter().collect();
    Finding::new(
        "partial-isomorphisms",
        verdict,
        json!({ "image": image, "map": map }),
    )
}
