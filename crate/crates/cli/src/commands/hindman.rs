use finlab_core::colouring::log2_colouring;
use finlab_core::finset::{disjointify, fs_up_to};
use finlab_core::hindman::{
    cardinality_injectivity_check, fs4_count_bound, fs4_mono_check, schur_to_fs3, star_family,
};
use finlab_core::ramsey::f_bound;
use finlab_core::{Atom, GridShape};
use serde_json::json;

use super::provider;
use crate::args::{BoundArgs, FamilyArgs, HindmanCommand, SchurFs3Args, StarArgs};
use crate::error::Result;
use crate::report::{Finding, Outcome};

pub fn run(h: &HindmanCommand) -> Result<Finding> {
    match h {
        HindmanCommand::CheckMono(a) => check_mono(a),
        HindmanCommand::CheckBound(a) => check_bound(a),
        HindmanCommand::Injectivity(a) => injectivity(a),
        HindmanCommand::Star(a) => star(a),
        HindmanCommand::SchurFs3(a) => schur_fs3(a),
        HindmanCommand::Disjointify(a) => disjoint(a),
    }
}

fn check_mono(a: &FamilyArgs) -> Result<Finding> {
    Ok(match fs4_mono_check(&a.family)? {
        None => {
            let colour = a.family.iter().next().map(log2_colouring).transpose()?;
            Finding::new(
                "fs4-monochromatic",
                Outcome::Pass,
                json!({ "colour": colour }),
            )?
        }
        Some(v) => Finding::new(
            "fs4-monochromatic",
            Outcome::Fail,
            json!({ "violation": v }),
        )?,
    })
}

fn check_bound(a: &BoundArgs) -> Result<Finding> {
    let p = provider(a.table_max);
    let bound = f_bound(a.n, a.n, &p)?;
    let count = a.family.iter().filter(|x| x.len() as u64 == a.n).count();
    Ok(match fs4_count_bound(&a.family, a.n, &p)? {
        None => Finding::new(
            "fs4-count-bound",
            Outcome::Pass,
            json!({ "n": a.n, "count": count, "bound": bound.value }),
        )?
        .exact(bound.exactness),
        Some(v) => Finding::new("fs4-count-bound", Outcome::Fail, json!({ "violation": v }))?
            .exact(bound.exactness),
    })
}

fn injectivity(a: &FamilyArgs) -> Result<Finding> {
    Ok(match cardinality_injectivity_check(&a.family)? {
        None => {
            let sizes: Vec<usize> = a.family.iter().map(|x| x.len()).collect();
            Finding::new(
                "cardinality-injectivity",
                Outcome::Pass,
                json!({ "sizes": sizes }),
            )?
        }
        Some(v) => Finding::new(
            "cardinality-injectivity",
            Outcome::Fail,
            json!({ "violation": v }),
        )?,
    })
}

fn star(a: &StarArgs) -> Result<Finding> {
    let family = star_family(&a.ground, Atom(a.z))?;
    let sums = fs_up_to(&family, 2)?;
    let outside: Vec<_> = sums
        .iter()
        .filter(|s| s.len() != 2 || !s.is_subset(&a.ground))
        .collect();
    let verdict = if outside.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Finding::new(
        "star-family",
        verdict,
        json!({ "family": family, "sums": sums, "outside": outside }),
    )
}

fn schur_fs3(a: &SchurFs3Args) -> Result<Finding> {
    let g = a.g;
    let shape = GridShape::new(a.rows, a.cols)?;
    let built = match schur_to_fs3(move |m| g.colour(m), a.bound, shape, a.size) {
        Ok(f) => f,
        Err(finlab_core::Error::NotFound(msg)) => {
            return Ok(
                Finding::new("schur-to-fs3", Outcome::Absent, json!({ "family": null }))?.note(msg),
            )
        }
        Err(e) => return Err(e.into()),
    };
    let sums = fs_up_to(&built.family, 3)?;
    let mono = sums
        .iter()
        .all(|s| g.colour(s.len() as u64) == built.colour);
    let verdict = if mono { Outcome::Pass } else { Outcome::Fail };
    Finding::new(
        "schur-to-fs3",
        verdict,
        json!({ "fs3": built, "sums": sums.len() }),
    )
}

fn disjoint(a: &FamilyArgs) -> Result<Finding> {
    match disjointify(a.family.members()) {
        Ok(d) => Finding::new("disjointify", Outcome::Pass, d),
        Err(finlab_core::Error::NotFound(msg)) => {
            Ok(Finding::new("disjointify", Outcome::Absent, json!({ "blocks": [] }))?.note(msg))
        }
        Err(e) => Err(e.into()),
    }
}
