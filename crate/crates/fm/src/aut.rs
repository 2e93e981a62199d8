//! Partial automorphisms of the atom structure.

use std::collections::BTreeMap;

use finlab_core::{Atom, FinSet};
use serde::{Deserialize, Serialize};

use crate::error::{FmError, Result};
use crate::hset::HSet;
use crate::model::Model;

/// Whether a map has been checked against a model and is known to extend
/// to a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Raw,
    Extendable,
}

/// Finite injective map on atoms. Serialises as a list of `[from, to]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Atom, Atom)>", into = "Vec<(Atom, Atom)>")]
pub struct PartialAut {
    map: BTreeMap<Atom, Atom>,
    #[serde(skip)]
    status: Status,
}

impl TryFrom<Vec<(Atom, Atom)>> for PartialAut {
    type Error = FmError;

    fn try_from(v: Vec<(Atom, Atom)>) -> Result<Self> {
        PartialAut::new(v)
    }
}

impl From<PartialAut> for Vec<(Atom, Atom)> {
    fn from(p: PartialAut) -> Self {
        p.map.into_iter().collect()
    }
}

impl PartialAut {
    pub fn new(pairs: impl IntoIterator<Item = (Atom, Atom)>) -> Result<Self> {
        let mut p = PartialAut::default();
        for (a, b) in pairs {
            p.insert(a, b)?;
        }
        Ok(p)
    }

    pub fn identity(on: &FinSet) -> Self {
        PartialAut {
            map: on.iter().map(|a| (a, a)).collect(),
            status: Status::Raw,
        }
    }

    /// Adds `a -> b`, rejecting anything that breaks injectivity.
    pub fn insert(&mut self, a: Atom, b: Atom) -> Result<()> {
        match self.map.get(&a) {
            Some(&old) if old == b => return Ok(()),
            Some(&old) => {
                return Err(FmError::invalid(format!("{a} sent to both {old} and {b}")));
            }
            None => {}
        }
        if self.map.values().any(|&v| v == b) {
            return Err(FmError::invalid(format!("{b} has two preimages")));
        }
        self.map.insert(a, b);
        self.status = Status::Raw;
        Ok(())
    }

    pub fn get(&self, a: Atom) -> Option<Atom> {
        self.map.get(&a).copied()
    }

    pub fn map(&self) -> &BTreeMap<Atom, Atom> {
        &self.map
    }

    pub fn domain(&self) -> FinSet {
        self.map.keys().copied().collect()
    }

    pub fn image(&self) -> FinSet {
        self.map.values().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn fixes_pointwise(&self, e: &FinSet) -> bool {
        e.iter().all(|a| self.get(a) == Some(a))
    }

    /// Image of a set of atoms.
    pub fn image_of(&self, x: &FinSet) -> Result<FinSet> {
        x.iter()
            .map(|a| {
                self.get(a)
                    .ok_or_else(|| FmError::IncompleteMap(a.to_string()))
            })
            .collect()
    }
}

impl Default for PartialAut {
    fn default() -> Self {
        PartialAut {
            map: BTreeMap::new(),
            status: Status::Raw,
        }
    }
}

/// Checks `p` against the model and marks it extendable.
pub fn check_aut(model: &Model, p: &PartialAut) -> Result<PartialAut> {
    model.respects(&p.map)?;
    Ok(PartialAut {
        map: p.map.clone(),
        status: Status::Extendable,
    })
}

/// Extends `p` to every atom of `needed`, in increasing order. Each new
/// atom goes to itself when that is legal and to the least legal atom
/// otherwise.
pub fn complete_aut(model: &Model, p: &PartialAut, needed: &FinSet) -> Result<PartialAut> {
    model.respects(&p.map)?;
    let mut map = p.map.clone();
    for a in needed.iter() {
        if map.contains_key(&a) {
            continue;
        }
        let b = model.extend_one(&map, a)?;
        map.insert(a, b);
        debug_assert!(model.respects(&map).is_ok());
    }
    model.respects(&map)?;
    Ok(PartialAut {
        map,
        status: Status::Extendable,
    })
}

/// Recursive image of `x`. Every atom of `x` must be in the domain.
pub fn apply_aut(p: &PartialAut, x: &HSet) -> Result<HSet> {
    x.try_map(&|a| p.get(a)).ok_or_else(|| {
        let missing = x.atoms().difference(&p.domain());
        FmError::IncompleteMap(missing.to_string())
    })
}
