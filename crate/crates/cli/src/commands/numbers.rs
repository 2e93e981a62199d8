use finlab_core::ramsey::{
    f_bound as f_recursion, find_mono_subset, fu_family_search, ramsey_by_enumeration,
    ramsey_number, schur_decompose, schur_triple, Exactness, Magnitude,
};
use finlab_core::Arity;
use serde_json::json;

use super::{build_colouring, provider};
use crate::args::{ColourArgs, FBoundArgs, FuSearchArgs, RamseyArgs, SchurArgs};
use crate::error::{CliError, Result};
use crate::report::{Finding, Outcome};

pub fn ramsey(a: &RamseyArgs) -> Result<Finding> {
    let m = usize::try_from(a.m).map_err(|_| CliError::Invalid("m is too large".into()))?;
    if a.search {
        let c = build_colouring(&a.colouring)?;
        return Ok(match find_mono_subset(&c, m, a.budget)? {
            Some(hit) => Finding::new(
                "ramsey-search",
                Outcome::Pass,
                json!({ "colouring": c.name(), "set": hit.set, "colour": hit.colour }),
            )?,
            None => Finding::new(
                "ramsey-search",
                Outcome::Absent,
                json!({ "colouring": c.name(), "set": null }),
            )?,
        });
    }
    let tabled = ramsey_number(a.m, &provider(a.table_max))?;
    if a.enumerate {
        let (value, avoider) = ramsey_by_enumeration(m)?;
        let agrees = tabled.value == Magnitude::Value(value.into());
        let verdict = if agrees { Outcome::Pass } else { Outcome::Fail };
        return Ok(Finding::new(
            "ramsey-numbers",
            verdict,
            json!({
                "m": a.m,
                "value": value,
                "tabled": tabled.value,
                // colour-1 edges of a colouring of [value-1]^2 with no monochromatic m-set
                "lower_bound_colouring": avoider,
            }),
        )?
        .exact(Exactness::Exact));
    }
    Ok(Finding::new(
        "ramsey-numbers",
        Outcome::Pass,
        json!({ "m": a.m, "value": tabled.value }),
    )?
    .exact(tabled.exactness))
}

pub fn f_bound(a: &FBoundArgs) -> Result<Finding> {
    let ans = f_recursion(a.n, a.k, &provider(a.table_max))?;
    Ok(Finding::new(
        "f-recursion",
        Outcome::Pass,
        json!({ "n": a.n, "k": a.k, "value": ans.value }),
    )?
    .exact(ans.exactness))
}

pub fn schur(a: &SchurArgs) -> Result<Finding> {
    let g = a.g;
    match schur_triple(a.bound, move |m| g.colour(m)) {
        Some(t) => {
            let (n, k) = schur_decompose(t.m_prime, t.m)?;
            Finding::new(
                "schur-triples",
                Outcome::Pass,
                json!({ "triple": t, "values": t.values(), "n": n, "k": k }),
            )
        }
        None => Finding::new("schur-triples", Outcome::Absent, json!({ "triple": null })),
    }
}

pub fn fu_search(a: &FuSearchArgs) -> Result<Finding> {
    let c = build_colouring(&a.colouring)?;
    if matches!(c.arity(), Arity::Exactly(_)) {
        return Err(CliError::Invalid(
            "finite-unions search needs a colouring of all finite sets".into(),
        ));
    }
    Ok(match fu_family_search(&c, a.size, a.budget)? {
        Some((family, colour)) => Finding::new(
            "finite-unions",
            Outcome::Pass,
            json!({ "colouring": c.name(), "family": family, "colour": colour }),
        )?,
        None => Finding::new(
            "finite-unions",
            Outcome::Absent,
            json!({ "colouring": c.name(), "family": null }),
        )?,
    })
}

pub fn colour(a: &ColourArgs) -> Result<Finding> {
    let c = build_colouring(&a.colouring)?;
    let colour = c.colour(&a.set)?;
    Finding::new(
        "colourings",
        Outcome::Pass,
        json!({ "colouring": c.name(), "set": a.set, "colour": colour }),
    )
}
