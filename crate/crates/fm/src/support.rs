//! Supports, orbits and symmetric families.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use finlab_core::{Atom, FinSet};
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::aut::{apply_aut, complete_aut, PartialAut};
use crate::error::{FmError, Result};
use crate::hset::HSet;
use crate::model::{Model, Perm, CHAIN_STEP};
use crate::rado::Demand;

fn apply_perm(g: &Perm, x: &HSet) -> HSet {
    x.try_map(&|a| Some(g.get(&a).copied().unwrap_or(a)))
        .expect("total map")
}

fn check_atoms(model: &Model, x: &FinSet) -> Result<()> {
    x.iter().try_for_each(|a| model.check_atom(a))
}

/// Does every group element fixing `e` pointwise fix `x`?
///
/// For the finite models this checks the stabiliser's generators. For the
/// dense chain and the Rado models the stabiliser can move any atom outside
/// `e` to a fresh one, so the answer is `atoms(x) ⊆ e`.
pub fn is_support(model: &Model, e: &FinSet, x: &HSet) -> Result<bool> {
    check_atoms(model, e)?;
    check_atoms(model, &x.atoms())?;
    match model.generators(e) {
        Some(gens) => Ok(gens.iter().all(|g| apply_perm(g, x) == *x)),
        None => Ok(x.atoms().is_subset(e)),
    }
}

/// A partial automorphism fixing `e` pointwise that moves `x`, if `e` is
/// not a support.
pub fn moving_aut(model: &Model, e: &FinSet, x: &HSet) -> Result<Option<PartialAut>> {
    if is_support(model, e, x)? {
        return Ok(None);
    }
    if let Some(gens) = model.generators(e) {
        let g = gens.into_iter().find(|g| apply_perm(g, x) != *x).unwrap();
        // generators are involutions, so identity off their support is safe
        let mut map: BTreeMap<Atom, Atom> = x.atoms().union(e).iter().map(|a| (a, a)).collect();
        map.extend(g);
        return Ok(Some(complete_aut(
            model,
            &PartialAut::new(map)?,
            &FinSet::empty(),
        )?));
    }
    let atoms = x.atoms();
    let t = atoms
        .difference(e)
        .least()
        .expect("x is not supported by e");
    let fixed = atoms.union(e).without(t);
    let mut p = PartialAut::identity(&fixed);
    let fresh = fresh_image(model, &fixed, t, &atoms.union(e))?;
    p.insert(t, fresh)?;
    Ok(Some(complete_aut(model, &p, &FinSet::empty())?))
}

/// An atom `b ∉ avoid` such that identity on `fixed` plus `t -> b` respects
/// the model.
fn fresh_image(model: &Model, fixed: &FinSet, t: Atom, avoid: &FinSet) -> Result<Atom> {
    let id: BTreeMap<Atom, Atom> = fixed.iter().map(|a| (a, a)).collect();
    if let Some(m) = model.block_of(t) {
        if let Some(g) = model.structure() {
            let local = |a: Atom| model.local_vertex(a);
            let same: FinSet = fixed
                .iter()
                .filter(|&a| model.block_of(a) == Some(m))
                .collect();
            let mut d = Demand {
                exclude: avoid
                    .iter()
                    .filter(|&a| model.block_of(a) == Some(m))
                    .map(|a| Atom(local(a)))
                    .collect(),
                ..Demand::default()
            };
            for s in same.subsets_of_size(g.arity() - 1) {
                let ls: FinSet = s.iter().map(|a| Atom(local(a))).collect();
                if g.is_edge(&ls.with(Atom(local(t)))) {
                    d.pos.push(ls);
                } else {
                    d.neg.push(ls);
                }
            }
            if matches!(model.spec(), crate::model::ModelSpec::OrderedRado { .. }) {
                d.within = Some(crate::rado::Interval {
                    above: same.iter().rfind(|&a| a < t).map(local),
                    below: same.iter().find(|&a| a > t).map(local),
                });
            }
            return model
                .block_witness(m, &d)?
                .ok_or_else(|| FmError::NoExtension(format!("no fresh copy of {t}")));
        }
    }
    // dense chain: stay strictly between the neighbours of t
    let lo = id.range(..t).next_back().map_or(0, |(a, _)| a.id());
    let hi = id.range(t..).next().map(|(a, _)| a.id());
    let named = model.pool();
    if let Some(b) = named
        .iter()
        .find(|b| b.id() > lo && hi.is_none_or(|h| b.id() < h) && !avoid.contains(*b))
    {
        return Ok(b);
    }
    let upper = hi.unwrap_or(t.id().saturating_add(CHAIN_STEP));
    if upper - t.id() >= 2 {
        Ok(Atom(t.id() + (upper - t.id()) / 2))
    } else {
        Err(FmError::NoExtension(format!("no room next to {t}")))
    }
}

/// Orbit of `x` under the pointwise stabiliser of `e`, in sorted order.
///
/// Finite models close `x` under the stabiliser's generators. The dense
/// chain and the Rado models list the images of `x` under partial
/// automorphisms into the named atoms. More than `budget` elements gives
/// `OrbitBudget` with what was found so far.
pub fn orbit(model: &Model, e: &FinSet, x: &HSet, budget: usize) -> Result<Vec<HSet>> {
    check_atoms(model, e)?;
    check_atoms(model, &x.atoms())?;
    let over = |seen: BTreeSet<HSet>| FmError::OrbitBudget {
        partial: seen.into_iter().collect(),
    };
    let mut seen = BTreeSet::from([x.clone()]);
    if let Some(gens) = model.generators(e) {
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = apply_perm(g, &y);
                if seen.insert(z.clone()) {
                    if seen.len() > budget {
                        return Err(over(seen));
                    }
                    queue.push_back(z);
                }
            }
        }
        return Ok(seen.into_iter().collect());
    }
    let moving: Vec<Atom> = x.atoms().difference(e).atoms().to_vec();
    let targets: Vec<Atom> = model.pool().difference(e).atoms().to_vec();
    let base: BTreeMap<Atom, Atom> = e.iter().map(|a| (a, a)).collect();
    let mut stack: Vec<(BTreeMap<Atom, Atom>, usize)> = vec![(base, 0)];
    while let Some((map, i)) = stack.pop() {
        if i == moving.len() {
            let p = PartialAut::new(map)?;
            if seen.insert(apply_aut(&p, x)?) && seen.len() > budget {
                return Err(over(seen));
            }
            continue;
        }
        for &b in targets.iter().rev() {
            if map.values().any(|&v| v == b) {
                continue;
            }
            let mut next = map.clone();
            next.insert(moving[i], b);
            if model.respects(&next).is_ok() {
                stack.push((next, i + 1));
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A family closed under the stabiliser of a declared support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Symmetric {
    /// Finitely many members, listed.
    Explicit { members: Vec<HSet>, support: FinSet },
    /// All images of the seeds under automorphisms fixing `support`.
    Orbit { seeds: Vec<HSet>, support: FinSet },
}

impl Symmetric {
    pub fn support(&self) -> &FinSet {
        match self {
            Symmetric::Explicit { support, .. } | Symmetric::Orbit { support, .. } => support,
        }
    }

    /// Representatives: the members, or the seeds.
    pub fn representatives(&self) -> &[HSet] {
        match self {
            Symmetric::Explicit { members, .. } => members,
            Symmetric::Orbit { seeds, .. } => seeds,
        }
    }

    /// Checks the declared support. Orbit closures hold by construction.
    pub fn check_support(&self, model: &Model) -> Result<()> {
        match self {
            Symmetric::Explicit { members, support } => {
                let x = HSet::set(members.iter().cloned());
                if is_support(model, support, &x)? {
                    Ok(())
                } else {
                    Err(FmError::NotASupport(format!(
                        "{support} does not support the family"
                    )))
                }
            }
            Symmetric::Orbit { seeds, support } => {
                check_atoms(model, support)?;
                seeds
                    .iter()
                    .try_for_each(|s| check_atoms(model, &s.atoms()))
            }
        }
    }

    /// Membership. For an orbit closure, `z` is a member iff some bijection
    /// from a seed's atoms onto `z`'s atoms, identity on the support, is a
    /// partial automorphism carrying the seed to `z`.
    pub fn contains(&self, model: &Model, z: &HSet) -> Result<bool> {
        match self {
            Symmetric::Explicit { members, .. } => Ok(members.contains(z)),
            Symmetric::Orbit { seeds, support } => {
                for s in seeds {
                    if carrier_map(model, support, s, z)?.is_some() {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// A partial automorphism fixing `support` with `s -> z`, if any.
pub fn carrier_map(
    model: &Model,
    support: &FinSet,
    s: &HSet,
    z: &HSet,
) -> Result<Option<PartialAut>> {
    let (sa, za) = (s.atoms(), z.atoms());
    if sa.len() != za.len() || sa.intersection(support) != za.intersection(support) {
        return Ok(None);
    }
    let from = sa.difference(support);
    let to: Vec<Atom> = za.difference(support).atoms().to_vec();
    if from.len() > 8 {
        return Err(FmError::invalid("seed too large for a membership search"));
    }
    for perm in to.iter().copied().permutations(to.len()) {
        let mut map: BTreeMap<Atom, Atom> = support.iter().map(|a| (a, a)).collect();
        map.extend(from.iter().zip(perm));
        if model.respects(&map).is_err() {
            continue;
        }
        let p = PartialAut::new(map)?;
        if apply_aut(&p, s)? == *z {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
