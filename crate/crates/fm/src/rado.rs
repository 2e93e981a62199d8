//! Finite approximations of the random graph and random `n`-uniform
//! hypergraphs, with one-point extension witnesses.

use std::collections::BTreeMap;
use std::fmt;

use finlab_core::{Atom, FinSet};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FmError, Result};

/// A finite `n`-uniform hypergraph on vertices `0..vertex_count()`.
pub trait Structure: Send + Sync + fmt::Debug {
    fn arity(&self) -> usize;

    fn vertex_count(&self) -> u64;

    /// `e` is sorted, duplicate free and has exactly `arity()` entries.
    fn is_edge_sorted(&self, e: &[u64]) -> bool;

    fn is_edge(&self, e: &FinSet) -> bool {
        e.len() == self.arity() && self.is_edge_sorted(&e.ids().collect::<Vec<_>>())
    }
}

/// `i < j` are adjacent iff bit `i` of `j` is set.
pub fn bit_edge(i: u64, j: u64) -> Result<bool> {
    if i == j {
        return Err(FmError::invalid("a vertex is not adjacent to itself"));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    Ok(lo < 64 && hi >> lo & 1 == 1)
}

/// The BIT graph on `0..vertices`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitGraph {
    vertices: u64,
}

impl BitGraph {
    pub fn new(vertices: u64) -> Self {
        BitGraph { vertices }
    }
}

impl Structure for BitGraph {
    fn arity(&self) -> usize {
        2
    }

    fn vertex_count(&self) -> u64 {
        self.vertices
    }

    fn is_edge_sorted(&self, e: &[u64]) -> bool {
        e[1] < self.vertices && bit_edge(e[0], e[1]).unwrap_or(false)
    }
}

/// Parameters for a seeded hypergraph. Extension demands of total size at
/// most `demand` over `(arity-1)`-subsets of the base vertices are certified
/// after generation. With `spacing = Some(s)` the base vertices are
/// `0, s, 2s, ...` and every demand must also be met in each gap between
/// consecutive demand vertices (the ordered variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphParams {
    pub arity: usize,
    pub vertices: u64,
    pub seed: u64,
    pub window: u64,
    pub demand: usize,
    #[serde(default)]
    pub spacing: Option<u64>,
}

impl HypergraphParams {
    pub fn base(&self) -> Vec<u64> {
        let step = self.spacing.unwrap_or(1);
        (0..self.window).map(|i| i * step).collect()
    }
}

/// Seeded random hypergraph, repaired until its demand set is certified.
#[derive(Clone)]
pub struct RadoHypergraph {
    params: HypergraphParams,
    binom: Vec<Vec<u64>>,
    edges: Vec<u64>,
    repairs: usize,
}

impl fmt::Debug for RadoHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadoHypergraph")
            .field("params", &self.params)
            .field("repairs", &self.repairs)
            .finish()
    }
}

const MAX_REPAIR_PASSES: usize = 64;

impl RadoHypergraph {
    pub fn build(params: HypergraphParams) -> Result<Self> {
        let n = params.arity;
        if n < 2 {
            return Err(FmError::invalid("hypergraph arity must be at least 2"));
        }
        if params.vertices > 4096 || (n > 2 && params.vertices > 256) {
            return Err(FmError::invalid("vertex count too large to tabulate"));
        }
        if params.demand == 0 {
            return Err(FmError::invalid("demand size must be positive"));
        }
        if let Some(s) = params.spacing {
            if s < 2 {
                return Err(FmError::invalid("ordered spacing must be at least 2"));
            }
        }
        let step = params.spacing.unwrap_or(1);
        if params.window < (n as u64) - 1 || params.window * step > params.vertices {
            return Err(FmError::invalid("base window does not fit the vertex set"));
        }
        let v = params.vertices as usize;
        let mut binom = vec![vec![0u64; n + 1]; v + 1];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for i in 1..=v {
            for k in 1..=n {
                binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
            }
        }
        let total = binom[v][n] as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let edges = (0..total.div_ceil(64)).map(|_| rng.gen::<u64>()).collect();
        let mut g = RadoHypergraph {
            params,
            binom,
            edges,
            repairs: 0,
        };
        g.repair()?;
        Ok(g)
    }

    pub fn params(&self) -> &HypergraphParams {
        &self.params
    }

    /// Number of edge flips the repair pass needed.
    pub fn repairs(&self) -> usize {
        self.repairs
    }

    fn rank(&self, e: &[u64]) -> usize {
        e.iter()
            .enumerate()
            .map(|(i, &x)| self.binom[x as usize][i + 1] as usize)
            .sum()
    }

    fn flip(&mut self, e: &[u64]) {
        let r = self.rank(e);
        self.edges[r / 64] ^= 1 << (r % 64);
    }

    /// Every demand over the base window, in a fixed order, paired with the
    /// gaps it must be met in.
    pub fn certified_demands(&self) -> Vec<Demand> {
        let tuples: Vec<FinSet> = FinSet::from_ids(self.params.base())
            .subsets_of_size(self.params.arity - 1)
            .collect();
        let mut out = Vec::new();
        for size in 0..=self.params.demand.min(tuples.len()) {
            for chosen in tuples.iter().combinations(size) {
                for signs in 0u64..1 << size {
                    let mut d = Demand::default();
                    for (i, t) in chosen.iter().enumerate() {
                        if signs >> i & 1 == 1 {
                            d.pos.push((*t).clone());
                        } else {
                            d.neg.push((*t).clone());
                        }
                    }
                    if self.params.spacing.is_some() {
                        out.extend(self.slots(&d));
                    } else {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    /// Copies of `d` restricted to each nonempty gap between its vertices.
    fn slots(&self, d: &Demand) -> Vec<Demand> {
        let verts = d.vertices();
        let mut bounds: Vec<Option<u64>> = vec![None];
        bounds.extend(verts.ids().map(Some));
        bounds.push(None);
        bounds
            .windows(2)
            .filter(|w| {
                let lo = w[0].map_or(0, |x| x + 1);
                let hi = w[1].unwrap_or(self.params.vertices);
                lo < hi
            })
            .map(|w| Demand {
                within: Some(Interval {
                    above: w[0],
                    below: w[1],
                }),
                ..d.clone()
            })
            .collect()
    }

    fn repair(&mut self) -> Result<()> {
        let demands = self.certified_demands();
        for _ in 0..MAX_REPAIR_PASSES {
            let mut changed = false;
            for d in &demands {
                if extension_witness(self, d)?.is_some() {
                    continue;
                }
                let (_, wrong) = candidates(self, d)
                    .map(|v| (v, mismatches(self, d, v)))
                    .min_by_key(|(v, w)| (w.len(), *v))
                    .ok_or_else(|| FmError::NoExtension("no candidate vertex in a gap".into()))?;
                for e in wrong {
                    self.flip(&e);
                    self.repairs += 1;
                }
                changed = true;
            }
            if !changed {
                return Ok(());
            }
        }
        Err(FmError::NoExtension(
            "repair did not converge; use more vertices or a smaller window".into(),
        ))
    }
}

impl Structure for RadoHypergraph {
    fn arity(&self) -> usize {
        self.params.arity
    }

    fn vertex_count(&self) -> u64 {
        self.params.vertices
    }

    fn is_edge_sorted(&self, e: &[u64]) -> bool {
        if e.last().is_none_or(|&x| x >= self.params.vertices) {
            return false;
        }
        let r = self.rank(e);
        self.edges[r / 64] >> (r % 64) & 1 == 1
    }
}

/// Open interval of vertex positions; `None` is unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub above: Option<u64>,
    pub below: Option<u64>,
}

impl Interval {
    pub fn contains(&self, v: u64) -> bool {
        self.above.is_none_or(|a| v > a) && self.below.is_none_or(|b| v < b)
    }
}

/// One-point extension request: a vertex `v` with `s ∪ {v}` an edge for
/// every `s` in `pos` and a non-edge for every `s` in `neg`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demand {
    pub pos: Vec<FinSet>,
    pub neg: Vec<FinSet>,
    /// Vertices ruled out besides those named in the demand.
    #[serde(default)]
    pub exclude: FinSet,
    #[serde(default)]
    pub within: Option<Interval>,
}

impl Demand {
    pub fn vertices(&self) -> FinSet {
        self.pos
            .iter()
            .chain(&self.neg)
            .fold(FinSet::empty(), |acc, s| acc.union(s))
    }

    fn check(&self, arity: usize) -> Result<()> {
        if let Some(s) = self
            .pos
            .iter()
            .chain(&self.neg)
            .find(|s| s.len() != arity - 1)
        {
            return Err(FmError::invalid(format!(
                "demand set {s} should have {} vertices",
                arity - 1
            )));
        }
        if self.pos.iter().any(|s| self.neg.contains(s)) {
            return Err(FmError::invalid(
                "a demand set is both positive and negative",
            ));
        }
        Ok(())
    }
}

fn candidates<'a>(g: &'a dyn Structure, d: &'a Demand) -> impl Iterator<Item = u64> + 'a {
    let used = d.vertices().union(&d.exclude);
    let within = d.within.unwrap_or_default();
    let lo = within.above.map_or(0, |a| a + 1);
    let hi = within.below.unwrap_or(u64::MAX).min(g.vertex_count());
    (lo..hi).filter(move |&v| !used.contains(Atom(v)))
}

fn mismatches(g: &dyn Structure, d: &Demand, v: u64) -> Vec<Vec<u64>> {
    let pos = d.pos.iter().map(|s| (s, true));
    let neg = d.neg.iter().map(|s| (s, false));
    pos.chain(neg)
        .filter_map(|(s, want)| {
            let e: Vec<u64> = s.with(Atom(v)).ids().collect();
            (g.is_edge_sorted(&e) != want).then_some(e)
        })
        .collect()
}

/// Least vertex meeting the demand, outside every demand set and the
/// exclusion list, or `None` if the structure is too small.
pub fn extension_witness(g: &dyn Structure, d: &Demand) -> Result<Option<u64>> {
    d.check(g.arity())?;
    Ok(candidates(g, d).find(|&v| mismatches(g, d, v).is_empty()))
}

/// Extends an injective partial isomorphism `p` to `target`. With `order`
/// set, `p` is also kept order preserving.
pub fn extend_partial_iso(
    g: &dyn Structure,
    p: &BTreeMap<u64, u64>,
    target: u64,
    order: bool,
) -> Result<u64> {
    if order && !p.values().zip(p.values().skip(1)).all(|(a, b)| a < b) {
        return Err(FmError::ConstraintViolation(
            "the map does not preserve the order".into(),
        ));
    }
    if let Some(&image) = p.get(&target) {
        return Ok(image);
    }
    if target >= g.vertex_count() {
        return Err(FmError::invalid(format!("vertex {target} is out of range")));
    }
    let dom: FinSet = p.keys().copied().map(Atom).collect();
    let image_of = |s: &FinSet| -> FinSet { s.iter().map(|a| Atom(p[&a.id()])).collect() };
    let mut d = Demand {
        exclude: p.values().copied().map(Atom).collect(),
        ..Demand::default()
    };
    for s in dom.subsets_of_size(g.arity() - 1) {
        if g.is_edge(&s.with(Atom(target))) {
            d.pos.push(image_of(&s));
        } else {
            d.neg.push(image_of(&s));
        }
    }
    if order {
        d.within = Some(Interval {
            above: p.range(..target).next_back().map(|(_, &v)| v),
            below: p.range(target + 1..).next().map(|(_, &v)| v),
        });
    }
    extension_witness(g, &d)?
        .ok_or_else(|| FmError::NoExtension(format!("vertex {target} has no image")))
}

/// Whether `p` preserves edges and non-edges among its domain.
pub fn is_partial_iso(g: &dyn Structure, p: &BTreeMap<u64, u64>) -> bool {
    let dom: FinSet = p.keys().copied().map(Atom).collect();
    let ok = dom.subsets_of_size(g.arity()).all(|e| {
        let image: FinSet = e.iter().map(|a| Atom(p[&a.id()])).collect();
        image.len() == e.len() && g.is_edge(&e) == g.is_edge(&image)
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn bit_edges() {
        assert!(bit_edge(0, 1).unwrap());
        assert!(bit_edge(1, 2).unwrap());
        assert!(!bit_edge(0, 2).unwrap());
        assert!(bit_edge(3, 1).unwrap());
        assert!(bit_edge(1, 3).unwrap());
        assert!(bit_edge(2, 4).unwrap());
        assert!(!bit_edge(70, 1 << 20).unwrap());
        assert!(bit_edge(4, 4).is_err());
    }

    #[test]
    fn bit_witness_examples() {
        let g = BitGraph::new(1 << 13);
        let d = Demand {
            pos: vec![set(&[0])],
            neg: vec![set(&[1])],
            ..Demand::default()
        };
        assert_eq!(extension_witness(&g, &d).unwrap(), Some(5));
        assert_eq!(extension_witness(&g, &Demand::default()).unwrap(), Some(0));
        let clash = Demand {
            pos: vec![set(&[0])],
            neg: vec![set(&[0])],
            ..Demand::default()
        };
        assert!(extension_witness(&g, &clash).is_err());
    }

    #[test]
    fn partial_iso_extension() {
        let g = BitGraph::new(64);
        let p = BTreeMap::from([(0, 0), (1, 1)]);
        assert_eq!(extend_partial_iso(&g, &p, 3, false).unwrap(), 3);
        assert_eq!(extend_partial_iso(&g, &p, 1, false).unwrap(), 1);
        let swap = BTreeMap::from([(0, 1), (1, 0)]);
        let image = extend_partial_iso(&g, &swap, 2, false).unwrap();
        let mut q = swap.clone();
        q.insert(2, image);
        assert!(is_partial_iso(&g, &q));
    }

    #[test]
    fn seeded_graph_certifies_demands() {
        let params = HypergraphParams {
            arity: 2,
            vertices: 64,
            seed: 1,
            window: 12,
            demand: 3,
            spacing: None,
        };
        let g = RadoHypergraph::build(params).unwrap();
        for d in g.certified_demands() {
            assert!(extension_witness(&g, &d).unwrap().is_some());
        }
        let again = RadoHypergraph::build(params).unwrap();
        assert_eq!(g.edges, again.edges);
    }

    #[test]
    fn ternary_and_ordered_builds() {
        let g = RadoHypergraph::build(HypergraphParams {
            arity: 3,
            vertices: 48,
            seed: 2,
            window: 6,
            demand: 2,
            spacing: None,
        })
        .unwrap();
        assert_eq!(g.certified_demands().len(), 1 + 30 + 420);
        let h = RadoHypergraph::build(HypergraphParams {
            arity: 2,
            vertices: 60,
            seed: 3,
            window: 6,
            demand: 2,
            spacing: Some(9),
        })
        .unwrap();
        for d in h.certified_demands() {
            let v = extension_witness(&h, &d).unwrap().unwrap();
            assert!(d.within.unwrap().contains(v));
        }
        let reversing = BTreeMap::from([(0, 9), (9, 0)]);
        assert!(matches!(
            extend_partial_iso(&h, &reversing, 18, true),
            Err(FmError::ConstraintViolation(_))
        ));
        let p = BTreeMap::from([(9, 18)]);
        let image = extend_partial_iso(&h, &p, 27, true).unwrap();
        assert!(image > 18);
    }
}
