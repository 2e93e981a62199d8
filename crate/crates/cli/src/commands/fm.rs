use std::collections::BTreeMap;
use std::fs;

use finlab_core::{Atom, FinSet};
use finlab_fm::verify::{
    b_family, grid_invariance_check, omega_fraenkel_h_obstruction, rado_h2_witness,
    rado_rk_witness, russell_obstruction, verify_first_fraenkel_rn, verify_h3_witness, Verdict,
};
use finlab_fm::{chain_atom, HSet, Model, ModelSpec, PartialAut, StructureSpec, Symmetric};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::build_colouring;
use super::rado::params;
use crate::args::{Check, ColouringArgs, ColouringName, FmArgs, ModelKind, StructureKind};
use crate::error::{CliError, Result};
use crate::report::{Finding, Outcome};

/// The input of one check. Built from flags, or read from `--input`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Instance {
    RInfinite {
        n: usize,
        colouring: ColouringName,
        support: FinSet,
    },
    H3 {
        family: Symmetric,
    },
    Russell {
        /// Pair index to the chosen atom.
        choice: BTreeMap<u64, Atom>,
        support: FinSet,
        bound: usize,
    },
    BFamily {
        n: u64,
    },
    OmegaH {
        seq: Vec<Vec<FinSet>>,
        support: FinSet,
    },
    Grid {
        x: FinSet,
        pi: PartialAut,
        support: FinSet,
    },
    RadoH2 {
        family: Symmetric,
    },
    RadoRk {
        k: usize,
        family: Symmetric,
    },
}

impl Instance {
    fn check(&self) -> Check {
        match self {
            Instance::RInfinite { .. } => Check::RInfinite,
            Instance::H3 { .. } => Check::H3,
            Instance::Russell { .. } => Check::Russell,
            Instance::BFamily { .. } => Check::BFamily,
            Instance::OmegaH { .. } => Check::OmegaH,
            Instance::Grid { .. } => Check::Grid,
            Instance::RadoH2 { .. } => Check::RadoH2,
            Instance::RadoRk { .. } => Check::RadoRk,
        }
    }
}

pub fn model_spec(a: &FmArgs) -> Result<ModelSpec> {
    let s = &a.structure;
    Ok(match a.model {
        ModelKind::Fraenkel1 => ModelSpec::Fraenkel1 {
            atoms: a.atoms.unwrap_or(10),
        },
        ModelKind::Fraenkel2 => {
            let atoms = a.atoms.unwrap_or(12);
            if !atoms.is_multiple_of(2) {
                return Err(CliError::Invalid(
                    "fraenkel2 needs an even atom count".into(),
                ));
            }
            ModelSpec::Fraenkel2 { pairs: atoms / 2 }
        }
        ModelKind::OmegaFraenkel => ModelSpec::OmegaFraenkel {
            blocks: a.blocks.unwrap_or(4),
            block_size: a.block_size.unwrap_or(6),
        },
        ModelKind::Grid => ModelSpec::Grid {
            rows: a.rows.unwrap_or(6),
            cols: a.cols.unwrap_or(30),
        },
        ModelKind::Mostowski => ModelSpec::Mostowski {
            named: a.atoms.unwrap_or(4),
        },
        ModelKind::Rado => {
            let structure = match s.structure.unwrap_or(StructureKind::Bit) {
                StructureKind::Bit => StructureSpec::Bit {
                    vertices: s.vertices.unwrap_or(32),
                },
                StructureKind::Seeded => StructureSpec::Seeded(params(s)),
            };
            ModelSpec::Rado {
                blocks: a.blocks.unwrap_or(2),
                structure,
            }
        }
        ModelKind::OrderedRado => {
            let mut p = params(s);
            p.vertices = s.vertices.unwrap_or(60);
            p.seed = s.seed.unwrap_or(3);
            p.window = s.window.unwrap_or(6);
            p.demand = s.demand.unwrap_or(2);
            p.spacing = Some(s.spacing.unwrap_or(9));
            ModelSpec::OrderedRado {
                blocks: a.blocks.unwrap_or(2),
                structure: p,
            }
        }
    })
}

fn orbit_of(seed: HSet, support: FinSet) -> Symmetric {
    Symmetric::Orbit {
        seeds: vec![seed],
        support,
    }
}

fn default_instance(a: &FmArgs, model: &Model) -> Result<Instance> {
    let support = a.support.clone();
    let pool = model.pool();
    Ok(match a.verify {
        Check::RInfinite => Instance::RInfinite {
            n: a.n.unwrap_or(2) as usize,
            colouring: a.colouring.unwrap_or(ColouringName::MeetsSupport),
            support: support.unwrap_or_else(|| FinSet::from([0])),
        },
        Check::H3 => {
            let support = support.unwrap_or_default();
            let family = match *model.spec() {
                ModelSpec::Fraenkel1 { .. } => Symmetric::Explicit {
                    members: pool
                        .subsets_of_size(2)
                        .map(|x| HSet::of_atoms(&x))
                        .collect(),
                    support,
                },
                ModelSpec::Mostowski { .. } => orbit_of(
                    HSet::of_atoms(&FinSet::from_iter([chain_atom(0), chain_atom(1)])),
                    support,
                ),
                _ => orbit_of(
                    HSet::of_atoms(&pool.atoms().iter().take(2).copied().collect()),
                    support,
                ),
            };
            Instance::H3 { family }
        }
        Check::Russell => {
            let ModelSpec::Fraenkel2 { pairs } = *model.spec() else {
                return Err(CliError::Invalid("russell runs in fraenkel2".into()));
            };
            let count = a.n.unwrap_or(pairs).min(pairs);
            Instance::Russell {
                choice: (0..count).map(|m| (m, Atom(2 * m))).collect(),
                support: support.unwrap_or_default(),
                bound: a.bound.unwrap_or(2),
            }
        }
        Check::BFamily => Instance::BFamily {
            n: a.n.unwrap_or(2),
        },
        Check::OmegaH => {
            let ModelSpec::OmegaFraenkel { block_size, .. } = *model.spec() else {
                return Err(CliError::Invalid("omega-h runs in omega-fraenkel".into()));
            };
            Instance::OmegaH {
                seq: vec![vec![FinSet::from([0, block_size])]],
                support: support.unwrap_or_default(),
            }
        }
        Check::Grid => {
            let g = model
                .grid()
                .ok_or_else(|| CliError::Invalid("grid runs in the grid model".into()))?;
            let cell = |i, j| g.atom(i, j);
            Instance::Grid {
                x: [cell(0, 0)?, cell(1, 3)?, cell(2, 3)?]
                    .into_iter()
                    .collect(),
                pi: PartialAut::new([(cell(1, 3)?, cell(2, 3)?)])?,
                support: match support {
                    Some(s) => s,
                    None => FinSet::from_iter([cell(0, 0)?]),
                },
            }
        }
        Check::RadoH2 => Instance::RadoH2 {
            family: orbit_of(
                HSet::of_atoms(&FinSet::from([0, 1])),
                support.unwrap_or_default(),
            ),
        },
        Check::RadoRk => Instance::RadoRk {
            k: a.k.unwrap_or(3),
            family: orbit_of(
                HSet::atom(2),
                support.unwrap_or_else(|| FinSet::from([0, 1])),
            ),
        },
    })
}

fn outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Pass => Outcome::Pass,
        Verdict::Fail => Outcome::Fail,
        Verdict::Absent => Outcome::Absent,
        Verdict::Inconclusive => Outcome::Inconclusive,
    }
}

pub fn run(a: &FmArgs) -> Result<Finding> {
    let model = Model::build(model_spec(a)?)?;
    let instance = match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_str(&text)?
        }
        None => default_instance(a, &model)?,
    };
    if instance.check() != a.verify {
        return Err(CliError::Invalid(format!(
            "the input is a {} instance but --verify is {}",
            instance.check().name(),
            a.verify.name()
        )));
    }
    let report = match &instance {
        Instance::RInfinite {
            n,
            colouring,
            support,
        } => {
            let ModelSpec::Fraenkel1 { atoms } = *model.spec() else {
                return Err(CliError::Invalid("r-infinite runs in fraenkel1".into()));
            };
            let c = build_colouring(&ColouringArgs {
                colouring: *colouring,
                atoms,
                arity: Some(*n),
                support: Some(support.clone()),
                rows: None,
                cols: None,
            })?;
            verify_first_fraenkel_rn(&model, &c, support)?
        }
        Instance::H3 { family } => verify_h3_witness(&model, family)?,
        Instance::Russell {
            choice,
            support,
            bound,
        } => russell_obstruction(&model, choice, support, *bound)?,
        Instance::BFamily { n } => b_family(&model, *n)?,
        Instance::OmegaH { seq, support } => omega_fraenkel_h_obstruction(&model, seq, support)?,
        Instance::Grid { x, pi, support } => grid_invariance_check(&model, x, pi, support)?,
        Instance::RadoH2 { family } => rado_h2_witness(&model, family)?,
        Instance::RadoRk { k, family } => rado_rk_witness(&model, *k, family)?,
    };
    let verdict = outcome(report.verdict);
    let anchor = match instance.check() {
        Check::RInfinite => "first-fraenkel-ramsey",
        Check::H3 => "hindman-witness-h3",
        Check::Russell => "russell-pairs",
        Check::BFamily => "selector-families",
        Check::OmegaH => "omega-fraenkel-obstruction",
        Check::Grid => "grid-invariance",
        Check::RadoH2 => "rado-h2",
        Check::RadoRk => "rado-rk",
    };
    Finding::new(
        anchor,
        verdict,
        json!({ "model": model.spec(), "instance": instance, "report": report }),
    )
}

/// Replays the witness stored in an `fm` report's result.
pub fn replay(result: &serde_json::Value) -> Result<(Outcome, bool)> {
    let report: finlab_fm::verify::Report = serde_json::from_value(
        result
            .get("report")
            .cloned()
            .ok_or_else(|| CliError::Invalid("the result holds no witness report".into()))?,
    )?;
    let replayed = report.witness.replay()?;
    Ok((outcome(replayed), replayed == report.verdict))
}
