//! Replays of the symmetry arguments on concrete witnesses.
//!
//! Every verifier returns a [`Report`] whose [`Witness`] carries the model
//! spec and everything the argument picked, so [`Report::reverify`] can
//! rebuild the model and re-check the claim without repeating the search.

mod fraenkel;
mod grid;
mod rado;

use finlab_core::{Atom, Colour, FinSet};
use serde::{Deserialize, Serialize};

use crate::aut::PartialAut;
use crate::error::Result;
use crate::model::{Model, ModelSpec};

pub use fraenkel::{
    b_family, omega_fraenkel_h_obstruction, russell_obstruction, selectors,
    verify_first_fraenkel_rn, verify_h3_witness, BFamilyWitness, H3Witness, OmegaHWitness,
    RInfiniteWitness, RussellWitness,
};
pub use grid::{grid_invariance_check, GridWitness, PlusTwo};
pub use rado::{block_colour, rado_h2_witness, rado_rk_witness, RadoH2Witness, RadoRkWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing to replay, as expected (the vacuous cases).
    Absent,
    /// The finite pool ran out before the argument could be replayed.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Witness {
    RInfinite(RInfiniteWitness),
    H3(H3Witness),
    Russell(RussellWitness),
    BFamily(BFamilyWitness),
    OmegaH(OmegaHWitness),
    Grid(GridWitness),
    RadoH2(RadoH2Witness),
    RadoRk(RadoRkWitness),
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::RInfinite(_) => "r-infinite",
            Witness::H3(_) => "h3",
            Witness::Russell(_) => "russell",
            Witness::BFamily(_) => "b-family",
            Witness::OmegaH(_) => "omega-h",
            Witness::Grid(_) => "grid",
            Witness::RadoH2(_) => "rado-h2",
            Witness::RadoRk(_) => "rado-rk",
        }
    }

    /// Re-derives the verdict from the recorded witness alone.
    pub fn replay(&self) -> Result<Verdict> {
        match self {
            Witness::RInfinite(w) => w.replay(),
            Witness::H3(w) => w.replay(),
            Witness::Russell(w) => w.replay(),
            Witness::BFamily(w) => w.replay(),
            Witness::OmegaH(w) => w.replay(),
            Witness::Grid(w) => w.replay(),
            Witness::RadoH2(w) => w.replay(),
            Witness::RadoRk(w) => w.replay(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Verdict,
    pub witness: Witness,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    fn new(verdict: Verdict, witness: Witness) -> Self {
        Report {
            verdict,
            witness,
            notes: Vec::new(),
        }
    }

    fn note(mut self, msg: impl Into<String>) -> Self {
        self.notes.push(msg.into());
        self
    }

    /// Whether replaying the witness gives the recorded verdict.
    pub fn reverify(&self) -> Result<bool> {
        Ok(self.witness.replay()? == self.verdict)
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// `p` respects the model and fixes `f` pointwise.
fn legal_fixing(model: &Model, p: &PartialAut, f: &FinSet) -> bool {
    model.respects(p.map()).is_ok() && p.fixes_pointwise(f)
}

fn build(spec: &ModelSpec) -> Result<Model> {
    Model::build(*spec)
}

/// Identity on `fixed` together with `a -> b`.
fn swap_in(fixed: &FinSet, a: Atom, b: Atom) -> Result<PartialAut> {
    let mut p = PartialAut::identity(&fixed.without(a));
    p.insert(a, b)?;
    Ok(p)
}

fn colours_differ(c: [Colour; 2]) -> bool {
    c[0] != c[1]
}
