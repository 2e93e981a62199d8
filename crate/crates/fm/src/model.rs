//! The permutation models and the constraints their groups preserve.

use std::collections::BTreeMap;
use std::sync::Arc;

use finlab_core::{Atom, FinSet, GridShape};
use serde::{Deserialize, Serialize};

use crate::error::{FmError, Result};
use crate::rado::{self, BitGraph, Demand, HypergraphParams, RadoHypergraph, Structure};

/// Gap between consecutive named atoms of the dense chain. Virtual atoms
/// live at the intermediate positions.
pub const CHAIN_STEP: u64 = 1 << 32;

/// Where the per-block structure of a Rado model comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructureSpec {
    Bit { vertices: u64 },
    Seeded(HypergraphParams),
}

/// Serialisable description of a model. Atoms are numbered as follows:
///
/// * `fraenkel1`: `0..atoms`.
/// * `fraenkel2`: `0..2*pairs`, pair `m` is `{2m, 2m+1}`.
/// * `omega-fraenkel`: `0..blocks*block_size`, block `m` is contiguous.
/// * `grid`: row-major, cell `(i, j)` is `i*cols + j`.
/// * `mostowski`: named atom `k` is `(k+1) * CHAIN_STEP`; every positive
///   id is a point of the chain.
/// * `rado`, `ordered-rado`: block `m` vertex `v` is `m*V + v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelSpec {
    Fraenkel1 {
        atoms: u64,
    },
    Fraenkel2 {
        pairs: u64,
    },
    OmegaFraenkel {
        blocks: u64,
        block_size: u64,
    },
    Grid {
        rows: u64,
        cols: u64,
    },
    Mostowski {
        named: u64,
    },
    Rado {
        blocks: u64,
        structure: StructureSpec,
    },
    OrderedRado {
        blocks: u64,
        structure: HypergraphParams,
    },
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Fraenkel1 { .. } => "fraenkel1",
            ModelSpec::Fraenkel2 { .. } => "fraenkel2",
            ModelSpec::OmegaFraenkel { .. } => "omega-fraenkel",
            ModelSpec::Grid { .. } => "grid",
            ModelSpec::Mostowski { .. } => "mostowski",
            ModelSpec::Rado { .. } => "rado",
            ModelSpec::OrderedRado { .. } => "ordered-rado",
        }
    }
}

/// A permutation given on finitely many atoms; identity elsewhere.
pub type Perm = BTreeMap<Atom, Atom>;

/// A built model: the spec plus any structure it needs.
#[derive(Debug, Clone)]
pub struct Model {
    spec: ModelSpec,
    structure: Option<Arc<dyn Structure>>,
}

impl Model {
    pub fn build(spec: ModelSpec) -> Result<Self> {
        let positive = |v: u64, what: &str| {
            if v == 0 {
                Err(FmError::invalid(format!("{what} must be positive")))
            } else {
                Ok(())
            }
        };
        let structure: Option<Arc<dyn Structure>> = match spec {
            ModelSpec::Fraenkel1 { atoms } => {
                positive(atoms, "atom count")?;
                None
            }
            ModelSpec::Fraenkel2 { pairs } => {
                positive(pairs, "pair count")?;
                None
            }
            ModelSpec::OmegaFraenkel { blocks, block_size } => {
                positive(blocks, "block count")?;
                positive(block_size, "block size")?;
                None
            }
            ModelSpec::Grid { rows, cols } => {
                GridShape::new(rows, cols)?;
                None
            }
            ModelSpec::Mostowski { named } => {
                if named >= u64::MAX / CHAIN_STEP - 1 {
                    return Err(FmError::invalid("too many named atoms"));
                }
                None
            }
            ModelSpec::Rado { blocks, structure } => {
                positive(blocks, "block count")?;
                Some(match structure {
                    StructureSpec::Bit { vertices } => {
                        positive(vertices, "vertex count")?;
                        Arc::new(BitGraph::new(vertices))
                    }
                    StructureSpec::Seeded(p) => {
                        if p.spacing.is_some() {
                            return Err(FmError::invalid(
                                "spaced structures belong to the ordered model",
                            ));
                        }
                        Arc::new(RadoHypergraph::build(p)?)
                    }
                })
            }
            ModelSpec::OrderedRado { blocks, structure } => {
                positive(blocks, "block count")?;
                if structure.spacing.is_none() {
                    return Err(FmError::invalid("the ordered model needs a spacing"));
                }
                Some(Arc::new(RadoHypergraph::build(structure)?))
            }
        };
        Ok(Model { spec, structure })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    pub fn structure(&self) -> Option<&dyn Structure> {
        self.structure.as_deref()
    }

    /// Whether the model's group is a finite group given by generators.
    pub fn has_generators(&self) -> bool {
        matches!(
            self.spec,
            ModelSpec::Fraenkel1 { .. }
                | ModelSpec::Fraenkel2 { .. }
                | ModelSpec::OmegaFraenkel { .. }
                | ModelSpec::Grid { .. }
        )
    }

    fn block_size(&self) -> u64 {
        match self.spec {
            ModelSpec::Fraenkel2 { .. } => 2,
            ModelSpec::OmegaFraenkel { block_size, .. } => block_size,
            _ => self.structure.as_ref().map_or(1, |s| s.vertex_count()),
        }
    }

    /// Block index of an atom, for models whose group preserves blocks.
    pub fn block_of(&self, a: Atom) -> Option<u64> {
        match self.spec {
            ModelSpec::Fraenkel2 { .. }
            | ModelSpec::OmegaFraenkel { .. }
            | ModelSpec::Rado { .. }
            | ModelSpec::OrderedRado { .. } => Some(a.id() / self.block_size()),
            _ => None,
        }
    }

    pub fn block(&self, m: u64) -> FinSet {
        let s = self.block_size();
        FinSet::from_ids(m * s..(m + 1) * s)
    }

    pub fn block_count(&self) -> u64 {
        match self.spec {
            ModelSpec::Fraenkel2 { pairs } => pairs,
            ModelSpec::OmegaFraenkel { blocks, .. }
            | ModelSpec::Rado { blocks, .. }
            | ModelSpec::OrderedRado { blocks, .. } => blocks,
            _ => 1,
        }
    }

    pub fn grid(&self) -> Option<GridShape> {
        match self.spec {
            ModelSpec::Grid { rows, cols } => GridShape::new(rows, cols).ok(),
            _ => None,
        }
    }

    /// Named atoms of the model. For the dense chain these are the named
    /// points only.
    pub fn pool(&self) -> FinSet {
        match self.spec {
            ModelSpec::Fraenkel1 { atoms } => FinSet::range(atoms),
            ModelSpec::Fraenkel2 { pairs } => FinSet::range(2 * pairs),
            ModelSpec::OmegaFraenkel { blocks, block_size } => FinSet::range(blocks * block_size),
            ModelSpec::Grid { rows, cols } => FinSet::range(rows * cols),
            ModelSpec::Mostowski { named } => (0..named).map(chain_atom).collect(),
            ModelSpec::Rado { .. } | ModelSpec::OrderedRado { .. } => {
                FinSet::range(self.block_count() * self.block_size())
            }
        }
    }

    pub fn check_atom(&self, a: Atom) -> Result<()> {
        let ok = match self.spec {
            ModelSpec::Mostowski { .. } => a.id() > 0,
            _ => self.pool().contains(a),
        };
        if ok {
            Ok(())
        } else {
            Err(FmError::invalid(format!(
                "{a} is not an atom of the {} model",
                self.name()
            )))
        }
    }

    fn local(&self, a: Atom) -> u64 {
        a.id() % self.block_size()
    }

    /// Checks that `p` (assumed injective) can be extended to an element of
    /// the model's group.
    pub fn respects(&self, p: &BTreeMap<Atom, Atom>) -> Result<()> {
        for (&a, &b) in p {
            self.check_atom(a)?;
            self.check_atom(b)?;
        }
        let violation = |msg: String| Err(FmError::ConstraintViolation(msg));
        match self.spec {
            ModelSpec::Fraenkel1 { .. } => Ok(()),
            ModelSpec::Fraenkel2 { .. } | ModelSpec::OmegaFraenkel { .. } => {
                match p
                    .iter()
                    .find(|(&a, &b)| self.block_of(a) != self.block_of(b))
                {
                    Some((a, b)) => violation(format!("{a} -> {b} leaves its block")),
                    None => Ok(()),
                }
            }
            ModelSpec::Grid { .. } => {
                let g = self.grid().expect("grid model");
                let mut rows = BTreeMap::new();
                let mut cols = BTreeMap::new();
                for (&a, &b) in p {
                    let (i, j) = g.coords(a)?;
                    let (k, l) = g.coords(b)?;
                    if *rows.entry(i).or_insert(k) != k || *cols.entry(j).or_insert(l) != l {
                        return violation(format!("{a} -> {b} breaks the row/column maps"));
                    }
                }
                if !injective(&rows) || !injective(&cols) {
                    return violation("row or column map is not injective".into());
                }
                Ok(())
            }
            ModelSpec::Mostowski { .. } => {
                let images: Vec<Atom> = p.values().copied().collect();
                if images.windows(2).all(|w| w[0] < w[1]) {
                    Ok(())
                } else {
                    violation("map is not order preserving".into())
                }
            }
            ModelSpec::Rado { .. } | ModelSpec::OrderedRado { .. } => {
                let g = self.structure().expect("rado structure");
                let ordered = matches!(self.spec, ModelSpec::OrderedRado { .. });
                let mut per_block: BTreeMap<u64, BTreeMap<u64, u64>> = BTreeMap::new();
                for (&a, &b) in p {
                    if self.block_of(a) != self.block_of(b) {
                        return violation(format!("{a} -> {b} leaves its block"));
                    }
                    per_block
                        .entry(self.block_of(a).unwrap())
                        .or_default()
                        .insert(self.local(a), self.local(b));
                }
                for local in per_block.values() {
                    if !rado::is_partial_iso(g, local) {
                        return violation("map is not a partial isomorphism".into());
                    }
                    let images: Vec<u64> = local.values().copied().collect();
                    if ordered && !images.windows(2).all(|w| w[0] < w[1]) {
                        return violation("map is not order preserving".into());
                    }
                }
                Ok(())
            }
        }
    }

    /// An image for `a` extending `p`, where `p` already respects the model:
    /// `a` itself when that is legal, otherwise the least legal atom.
    pub(crate) fn extend_one(&self, p: &BTreeMap<Atom, Atom>, a: Atom) -> Result<Atom> {
        self.check_atom(a)?;
        let used: FinSet = p.values().copied().collect();
        let free = |x: &Atom| !used.contains(*x);
        let no_ext = || FmError::NoExtension(format!("no legal image for {a}"));
        match self.spec {
            ModelSpec::Fraenkel1 { .. } | ModelSpec::OmegaFraenkel { .. } => {
                let pool = match self.block_of(a) {
                    Some(m) => self.block(m),
                    None => self.pool(),
                };
                let found = std::iter::once(a).chain(pool.iter()).find(free);
                found.ok_or_else(no_ext)
            }
            ModelSpec::Fraenkel2 { .. } => {
                let mate = Atom(a.id() ^ 1);
                match p.get(&mate) {
                    Some(&b) => Ok(Atom(b.id() ^ 1)),
                    None => [a, mate].into_iter().find(free).ok_or_else(no_ext),
                }
            }
            ModelSpec::Grid { .. } => {
                let g = self.grid().expect("grid model");
                let mut rows = BTreeMap::new();
                let mut cols = BTreeMap::new();
                for (&x, &y) in p {
                    let (i, j) = g.coords(x)?;
                    let (k, l) = g.coords(y)?;
                    rows.insert(i, k);
                    cols.insert(j, l);
                }
                let (i, j) = g.coords(a)?;
                let pick = |map: &BTreeMap<u64, u64>, x: u64, n: u64| -> Option<u64> {
                    if let Some(&y) = map.get(&x) {
                        return Some(y);
                    }
                    let taken: Vec<u64> = map.values().copied().collect();
                    std::iter::once(x).chain(0..n).find(|y| !taken.contains(y))
                };
                let k = pick(&rows, i, g.rows).ok_or_else(no_ext)?;
                let l = pick(&cols, j, g.cols).ok_or_else(no_ext)?;
                Ok(g.atom(k, l)?)
            }
            ModelSpec::Mostowski { named } => {
                let lo = p.range(..a).next_back().map(|(_, &v)| v.id());
                let hi = p.range(a..).next().map(|(_, &v)| v.id());
                let inside = |x: u64| lo.is_none_or(|l| x > l) && hi.is_none_or(|h| x < h);
                if inside(a.id()) && free(&a) {
                    return Ok(a);
                }
                if let Some(b) = (0..named)
                    .map(chain_atom)
                    .find(|b| inside(b.id()) && free(b))
                {
                    return Ok(b);
                }
                let l = lo.unwrap_or(0);
                let mid = match hi {
                    Some(h) if h - l >= 2 => l + (h - l) / 2,
                    Some(_) => return Err(no_ext()),
                    None => l.checked_add(CHAIN_STEP).ok_or_else(no_ext)?,
                };
                Ok(Atom(mid))
            }
            ModelSpec::Rado { .. } | ModelSpec::OrderedRado { .. } => {
                let g = self.structure().expect("rado structure");
                let m = self.block_of(a).unwrap();
                let base = m * self.block_size();
                let local: BTreeMap<u64, u64> = p
                    .iter()
                    .filter(|(&x, _)| self.block_of(x) == Some(m))
                    .map(|(x, y)| (self.local(*x), self.local(*y)))
                    .collect();
                let ordered = matches!(self.spec, ModelSpec::OrderedRado { .. });
                let mut trial = local.clone();
                trial.insert(self.local(a), self.local(a));
                let identity_ok = !local.values().any(|&v| v == self.local(a))
                    && rado::is_partial_iso(g, &trial)
                    && (!ordered
                        || trial
                            .values()
                            .collect::<Vec<_>>()
                            .windows(2)
                            .all(|w| w[0] < w[1]));
                if identity_ok {
                    return Ok(a);
                }
                let v = rado::extend_partial_iso(g, &local, self.local(a), ordered)?;
                Ok(Atom(base + v))
            }
        }
    }

    /// A one-point demand in block `m`: local vertex ids with the given
    /// positive and negative `(n-1)`-sets, avoiding `exclude`.
    pub fn block_witness(&self, m: u64, demand: &Demand) -> Result<Option<Atom>> {
        let g = self
            .structure()
            .ok_or_else(|| FmError::invalid("model has no block structure"))?;
        let base = m * self.block_size();
        Ok(rado::extension_witness(g, demand)?.map(|v| Atom(base + v)))
    }

    /// Local vertex id inside a Rado block.
    pub fn local_vertex(&self, a: Atom) -> u64 {
        self.local(a)
    }

    /// Generators of the pointwise stabiliser of `e`, for the finite
    /// models. Transpositions are given in star form, which generates the
    /// same group as all transpositions.
    pub fn generators(&self, e: &FinSet) -> Option<Vec<Perm>> {
        let transposition = |a: Atom, b: Atom| Perm::from([(a, b), (b, a)]);
        let star = |free: Vec<Atom>| -> Vec<Perm> {
            free.iter()
                .skip(1)
                .map(|&b| transposition(free[0], b))
                .collect()
        };
        match self.spec {
            ModelSpec::Fraenkel1 { .. } => Some(star(self.pool().difference(e).atoms().to_vec())),
            ModelSpec::Fraenkel2 { pairs } => Some(
                (0..pairs)
                    .filter(|m| !e.contains(Atom(2 * m)) && !e.contains(Atom(2 * m + 1)))
                    .map(|m| transposition(Atom(2 * m), Atom(2 * m + 1)))
                    .collect(),
            ),
            ModelSpec::OmegaFraenkel { blocks, .. } => Some(
                (0..blocks)
                    .flat_map(|m| star(self.block(m).difference(e).atoms().to_vec()))
                    .collect(),
            ),
            ModelSpec::Grid { rows, cols } => {
                let g = self.grid().expect("grid model");
                let coords: Vec<(u64, u64)> = e.iter().filter_map(|a| g.coords(a).ok()).collect();
                let free_rows: Vec<u64> = (0..rows)
                    .filter(|i| coords.iter().all(|c| c.0 != *i))
                    .collect();
                let free_cols: Vec<u64> = (0..cols)
                    .filter(|j| coords.iter().all(|c| c.1 != *j))
                    .collect();
                let mut gens = Vec::new();
                for w in free_rows.windows(2) {
                    gens.push(
                        (0..cols)
                            .flat_map(|j| {
                                let x = g.atom(w[0], j).unwrap();
                                let y = g.atom(w[1], j).unwrap();
                                [(x, y), (y, x)]
                            })
                            .collect(),
                    );
                }
                for w in free_cols.windows(2) {
                    gens.push(
                        (0..rows)
                            .flat_map(|i| {
                                let x = g.atom(i, w[0]).unwrap();
                                let y = g.atom(i, w[1]).unwrap();
                                [(x, y), (y, x)]
                            })
                            .collect(),
                    );
                }
                Some(gens)
            }
            _ => None,
        }
    }
}

/// Position of the `k`-th named atom of the dense chain.
pub fn chain_atom(k: u64) -> Atom {
    Atom((k + 1) * CHAIN_STEP)
}

fn injective(m: &BTreeMap<u64, u64>) -> bool {
    let mut v: Vec<u64> = m.values().copied().collect();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}
