//! The Rado models: one copy of a Rado structure per block.

use finlab_core::{Atom, Colour, FinSet};
use serde::{Deserialize, Serialize};

use super::{build, colours_differ, legal_fixing, pass_if, swap_in, Report, Verdict, Witness};
use crate::aut::{complete_aut, PartialAut};
use crate::error::{FmError, Result};
use crate::hset::HSet;
use crate::model::{Model, ModelSpec};
use crate::rado::Demand;
use crate::support::{carrier_map, Symmetric};

/// 1 iff `x` lies inside one block and contains an edge of that block.
pub fn block_colour(model: &Model, x: &FinSet) -> Result<Colour> {
    let g = model
        .structure()
        .ok_or_else(|| FmError::invalid("block colouring needs a Rado model"))?;
    let blocks: Vec<Option<u64>> = x.iter().map(|a| model.block_of(a)).collect();
    if blocks.is_empty() || blocks.iter().any(|b| *b != blocks[0]) {
        return Ok(Colour::Zero);
    }
    let local: FinSet = x.iter().map(|a| Atom(model.local_vertex(a))).collect();
    let any_edge = local.subsets_of_size(g.arity()).any(|e| g.is_edge(&e));
    Ok(Colour::from_bit(any_edge))
}

fn arity(model: &Model) -> Result<usize> {
    match model.spec() {
        ModelSpec::Rado { .. } => Ok(model.structure().unwrap().arity()),
        _ => Err(FmError::invalid(
            "Rado replays need an unordered Rado model",
        )),
    }
}

fn local_set(model: &Model, x: &FinSet) -> FinSet {
    x.iter().map(|a| Atom(model.local_vertex(a))).collect()
}

/// Splits the `(n-1)`-subsets of `f` by whether adding `a` gives an edge.
fn split(model: &Model, f: &FinSet, a: Atom) -> Result<(Vec<FinSet>, Vec<FinSet>)> {
    let g = model.structure().unwrap();
    let (mut neg, mut pos) = (Vec::new(), Vec::new());
    for s in local_set(model, f).subsets_of_size(g.arity() - 1) {
        if g.is_edge(&s.with(Atom(model.local_vertex(a)))) {
            pos.push(s);
        } else {
            neg.push(s);
        }
    }
    Ok((neg, pos))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadoH2Witness {
    pub model: ModelSpec,
    pub family: Symmetric,
    pub y: FinSet,
    pub a: Atom,
    pub b: Atom,
    pub c: Atom,
    pub pi: PartialAut,
    pub sigma: PartialAut,
    pub z: FinSet,
    pub w: FinSet,
    pub sums: [FinSet; 2],
    pub colours: [Colour; 2],
}

impl RadoH2Witness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        arity(&model)?;
        self.family.check_support(&model)?;
        let f = self.family.support();
        let member = |x: &FinSet| self.family.contains(&model, &HSet::of_atoms(x));
        let sums = [self.y.sym_diff(&self.z), self.y.sym_diff(&self.w)];
        let colours = [
            block_colour(&model, &sums[0])?,
            block_colour(&model, &sums[1])?,
        ];
        let ok = member(&self.y)?
            && member(&self.z)?
            && member(&self.w)?
            && legal_fixing(&model, &self.pi, f)
            && legal_fixing(&model, &self.sigma, f)
            && self.pi.image_of(&self.y)? == self.z
            && self.sigma.image_of(&self.y)? == self.w
            && sums[0] == FinSet::from_iter([self.a, self.b])
            && sums[1] == FinSet::from_iter([self.a, self.c])
            && sums == self.sums
            && colours == self.colours
            && colours == [Colour::One, Colour::Zero];
        Ok(pass_if(ok && colours_differ(colours)))
    }
}

/// Replays the argument that a symmetric family in the Rado graph model has
/// two sums of two, one an edge and one a non-edge, inside one block.
pub fn rado_h2_witness(model: &Model, family: &Symmetric) -> Result<Report> {
    if arity(model)? != 2 {
        return Err(FmError::invalid("this replay is for the graph case"));
    }
    family.check_support(model)?;
    let f = family.support();
    let y = family
        .representatives()
        .iter()
        .filter_map(HSet::as_atom_set)
        .find(|y| !y.is_subset(f))
        .ok_or_else(|| FmError::invalid("no member of the family escapes its support"))?;
    let a = y.difference(f).least().unwrap();
    let m = model.block_of(a).unwrap();
    let block = model.block(m);
    let f_prime = f.union(&y).intersection(&block).without(a);
    let (f0, f1) = split(model, &f_prime, a)?;
    let la = FinSet::from_iter([Atom(model.local_vertex(a))]);
    let need = |pos: Vec<FinSet>, neg: Vec<FinSet>, what: &str| -> Result<Atom> {
        let d = Demand {
            pos,
            neg,
            ..Demand::default()
        };
        model
            .block_witness(m, &d)?
            .ok_or_else(|| FmError::NoExtension(format!("block {m} has no vertex for {what}")))
    };
    let mut pos_b = f1.clone();
    pos_b.push(la.clone());
    let b = need(pos_b, f0.clone(), "b")?;
    let mut neg_c = f0;
    neg_c.push(la);
    let c = need(f1, neg_c, "c")?;
    let fixed = f.union(&y);
    let pi = complete_aut(model, &swap_in(&fixed, a, b)?, &FinSet::empty())?;
    let sigma = complete_aut(model, &swap_in(&fixed, a, c)?, &FinSet::empty())?;
    let z = pi.image_of(&y)?;
    let w = sigma.image_of(&y)?;
    let sums = [y.sym_diff(&z), y.sym_diff(&w)];
    let colours = [
        block_colour(model, &sums[0])?,
        block_colour(model, &sums[1])?,
    ];
    let witness = RadoH2Witness {
        model: *model.spec(),
        family: family.clone(),
        y,
        a,
        b,
        c,
        pi,
        sigma,
        z,
        w,
        sums,
        colours,
    };
    let verdict = witness.replay()?;
    Ok(Report::new(verdict, Witness::RadoH2(witness)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadoRkWitness {
    pub model: ModelSpec,
    pub k: usize,
    pub family: Symmetric,
    /// Independent and complete `k`-sets in the orbit of the chosen atom.
    pub independent: Option<FinSet>,
    pub complete: Option<FinSet>,
    /// For `k < n`: a block disjoint from the support, all of whose
    /// `k`-subsets are images of its least one.
    pub fresh_block: Option<u64>,
    pub colours: Vec<Colour>,
}

fn atom_seeds(family: &Symmetric) -> Result<Vec<Atom>> {
    family
        .representatives()
        .iter()
        .map(|x| match x {
            HSet::Atom(a) => Ok(*a),
            HSet::Set(_) => Err(FmError::invalid("expected a family of atoms")),
        })
        .collect()
}

impl RadoRkWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        let n = arity(&model)?;
        self.family.check_support(&model)?;
        let f = self.family.support();
        if let Some(m) = self.fresh_block {
            let block = model.block(m);
            if self.k >= n || !block.is_disjoint(f) {
                return Ok(Verdict::Fail);
            }
            let Some(first) = block.subsets_of_size(self.k).next() else {
                return Ok(Verdict::Fail);
            };
            let first = HSet::of_atoms(&first);
            for x in block.subsets_of_size(self.k) {
                if block_colour(&model, &x)? != Colour::Zero
                    || carrier_map(&model, f, &first, &HSet::of_atoms(&x))?.is_none()
                {
                    return Ok(Verdict::Fail);
                }
            }
            return Ok(pass_if(self.colours == [Colour::Zero]));
        }
        let (Some(ind), Some(com)) = (&self.independent, &self.complete) else {
            return Ok(Verdict::Fail);
        };
        let g = model.structure().unwrap();
        let each_member = |x: &FinSet| -> Result<bool> {
            for a in x.iter() {
                if !self.family.contains(&model, &HSet::Atom(a))? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let same_block = |x: &FinSet| {
            x.iter()
                .all(|a| model.block_of(a) == model.block_of(x.least().unwrap()))
        };
        let ok = ind.len() == self.k
            && com.len() == self.k
            && same_block(ind)
            && same_block(com)
            && local_set(&model, ind)
                .subsets_of_size(n)
                .all(|e| !g.is_edge(&e))
            && local_set(&model, com)
                .subsets_of_size(n)
                .all(|e| g.is_edge(&e))
            && each_member(ind)?
            && each_member(com)?;
        let colours = vec![block_colour(&model, ind)?, block_colour(&model, com)?];
        Ok(pass_if(
            ok && colours == self.colours && colours == [Colour::Zero, Colour::One],
        ))
    }
}

/// Replays the construction of an independent and a complete `k`-set
/// inside the orbit of one atom of `X` under the stabiliser of its support.
pub fn rado_rk_witness(model: &Model, k: usize, family: &Symmetric) -> Result<Report> {
    let n = arity(model)?;
    family.check_support(model)?;
    let f = family.support();
    let seeds = atom_seeds(family)?;
    let a = seeds
        .iter()
        .copied()
        .filter(|a| !f.contains(*a))
        .min()
        .ok_or_else(|| FmError::invalid("X lies inside its support"))?;
    let mut w = RadoRkWitness {
        model: *model.spec(),
        k,
        family: family.clone(),
        independent: None,
        complete: None,
        fresh_block: None,
        colours: Vec::new(),
    };
    if k < n {
        let m = (0..model.block_count())
            .find(|&m| model.block(m).is_disjoint(f))
            .ok_or_else(|| FmError::NoExtension("every block meets the support".into()))?;
        w.fresh_block = Some(m);
        w.colours = vec![Colour::Zero];
        let verdict = w.replay()?;
        return Ok(Report::new(verdict, Witness::RadoRk(w))
            .note("fewer than n vertices carry no edge; checked orbit transitivity instead"));
    }
    let m = model.block_of(a).unwrap();
    let f_prime = f.intersection(&model.block(m));
    let (f0, f1) = split(model, &f_prime, a)?;
    let grow = |edges_wanted: bool| -> Result<FinSet> {
        let mut chosen = vec![a];
        while chosen.len() < k {
            let local = local_set(model, &chosen.iter().copied().collect());
            let inner: Vec<FinSet> = local.subsets_of_size(n - 1).collect();
            let (mut pos, mut neg) = (f1.clone(), f0.clone());
            if edges_wanted {
                pos.extend(inner);
            } else {
                neg.extend(inner);
            }
            let d = Demand {
                pos,
                neg,
                exclude: local.union(&local_set(model, &f_prime)),
                within: None,
            };
            let next = model.block_witness(m, &d)?.ok_or_else(|| {
                FmError::NoExtension(format!("block {m} ran out after {} vertices", chosen.len()))
            })?;
            chosen.push(next);
        }
        Ok(chosen.into_iter().collect())
    };
    let ind = grow(false)?;
    let com = grow(true)?;
    w.colours = vec![block_colour(model, &ind)?, block_colour(model, &com)?];
    w.independent = Some(ind);
    w.complete = Some(com);
    let verdict = w.replay()?;
    Ok(Report::new(verdict, Witness::RadoRk(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StructureSpec;
    use crate::rado::HypergraphParams;

    fn bit_model(vertices: u64) -> Model {
        Model::build(ModelSpec::Rado {
            blocks: 2,
            structure: StructureSpec::Bit { vertices },
        })
        .unwrap()
    }

    #[test]
    fn h2_on_bit_block() {
        let m = bit_model(32);
        let fam = Symmetric::Orbit {
            seeds: vec![HSet::of_atoms(&FinSet::from([0, 1]))],
            support: FinSet::empty(),
        };
        let r = rado_h2_witness(&m, &fam).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::RadoH2(w) = &r.witness else {
            panic!()
        };
        assert_eq!((w.a, w.b, w.c), (Atom(0), Atom(3), Atom(2)));
        assert_eq!(w.colours, [Colour::One, Colour::Zero]);
    }

    #[test]
    fn h2_small_block_saturates() {
        let m = bit_model(4);
        let fam = Symmetric::Orbit {
            seeds: vec![HSet::of_atoms(&FinSet::from([0, 3]))],
            support: FinSet::empty(),
        };
        assert!(matches!(
            rado_h2_witness(&m, &fam),
            Err(FmError::NoExtension(_))
        ));
    }

    fn seeded(arity: usize, seed: u64) -> Model {
        Model::build(ModelSpec::Rado {
            blocks: 2,
            structure: StructureSpec::Seeded(HypergraphParams {
                arity,
                vertices: 64,
                seed,
                window: 12,
                demand: 3,
                spacing: None,
            }),
        })
        .unwrap()
    }

    #[test]
    fn rk_graph_case() {
        let m = seeded(2, 7);
        let fam = Symmetric::Orbit {
            seeds: vec![HSet::atom(2)],
            support: FinSet::from([0, 1]),
        };
        let r = rado_rk_witness(&m, 3, &fam).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.reverify().unwrap());
    }

    #[test]
    fn rk_below_arity_uses_fresh_block() {
        let m = Model::build(ModelSpec::Rado {
            blocks: 2,
            structure: StructureSpec::Seeded(HypergraphParams {
                arity: 3,
                vertices: 24,
                seed: 1,
                window: 6,
                demand: 2,
                spacing: None,
            }),
        })
        .unwrap();
        let fam = Symmetric::Orbit {
            seeds: vec![HSet::atom(1)],
            support: FinSet::from([0]),
        };
        let r = rado_rk_witness(&m, 2, &fam).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::RadoRk(w) = &r.witness else {
            panic!()
        };
        assert_eq!(w.fresh_block, Some(1));
        let whole = Symmetric::Orbit {
            seeds: vec![HSet::atom(1)],
            support: FinSet::from([1]),
        };
        assert!(rado_rk_witness(&m, 2, &whole).is_err());
    }
}
