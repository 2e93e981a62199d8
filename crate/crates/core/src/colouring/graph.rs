use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Arity, Colour, Colouring, Partition};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};

/// Simple undirected graph on a finite vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGraph {
    vertices: FinSet,
    adj: BTreeMap<Atom, BTreeSet<Atom>>,
}

impl PairGraph {
    pub fn from_edges(
        vertices: FinSet,
        edges: impl IntoIterator<Item = (Atom, Atom)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<Atom, BTreeSet<Atom>> =
            vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("loop at {a}")));
            }
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(Error::invalid(format!(
                    "edge {a}-{b} leaves the vertex set"
                )));
            }
            adj.get_mut(&a).expect("vertex").insert(b);
            adj.get_mut(&b).expect("vertex").insert(a);
        }
        Ok(PairGraph { vertices, adj })
    }

    /// The colour-`i` graph of a pair colouring: `{x, y}` is an edge iff
    /// `c({x, y}) = i`.
    pub fn from_colouring(c: &Colouring, i: Colour) -> Result<Self> {
        if c.arity() != Arity::Exactly(2) {
            return Err(Error::invalid("expected a colouring of 2-subsets"));
        }
        let mut edges = Vec::new();
        for pair in c.ground().subsets_of_size(2) {
            if c.colour(&pair)? == i {
                let a = pair.atoms();
                edges.push((a[0], a[1]));
            }
        }
        PairGraph::from_edges(c.ground().clone(), edges)
    }

    pub fn vertices(&self) -> &FinSet {
        &self.vertices
    }

    pub fn neighbours(&self, v: Atom) -> impl Iterator<Item = Atom> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: Atom) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, a: Atom, b: Atom) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, n)| n.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Induced subgraph on `y ∩ V`.
    pub fn induced(&self, y: &FinSet) -> PairGraph {
        let vertices = self.vertices.intersection(y);
        let adj = vertices
            .iter()
            .map(|v| {
                let n = self.adj[&v]
                    .iter()
                    .copied()
                    .filter(|u| vertices.contains(*u))
                    .collect();
                (v, n)
            })
            .collect();
        PairGraph { vertices, adj }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }
}

/// Distance layers `N⁰ = {x}, N¹, N², …` around `x`; stops at the first empty
/// layer.
pub fn bfs_levels(g: &PairGraph, x: Atom) -> Result<Vec<FinSet>> {
    if !g.vertices().contains(x) {
        return Err(Error::invalid(format!("{x} is not a vertex")));
    }
    let mut seen = BTreeSet::from([x]);
    let mut levels = vec![FinSet::singleton(x)];
    loop {
        let next: BTreeSet<Atom> = levels
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(|v| g.neighbours(v))
            .filter(|u| !seen.contains(u))
            .collect();
        if next.is_empty() {
            return Ok(levels);
        }
        seen.extend(next.iter().copied());
        levels.push(next.into_iter().collect());
    }
}

/// Connected components, ordered by least vertex.
pub fn components(g: &PairGraph) -> Partition {
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for v in g.vertices().iter() {
        if !seen.insert(v) {
            continue;
        }
        let mut comp = vec![v];
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u) {
                if seen.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        blocks.push(comp.into_iter().collect());
    }
    Partition::new(blocks).expect("components are disjoint and nonempty")
}

/// Union of the singleton components of the colour-`i` graph. Any two of its
/// points are joined in colour `1 - i`.
pub fn singleton_extract(c: &Colouring, i: Colour) -> Result<FinSet> {
    let g = PairGraph::from_colouring(c, i)?;
    Ok(g.vertices().iter().filter(|&v| g.degree(v) == 0).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinitenessThreshold(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub colour: Colour,
    /// Points whose colour-`colour` neighbourhood has at most `t` members.
    pub set: FinSet,
}

/// Threshold surrogate for the "exactly one neighbourhood is finite"
/// dichotomy. A point is classed `i` when `|F_i^x| <= t` and
/// `|F_{1-i}^x| > t`. Succeeds when some colour classes at least `N - t`
/// points.
pub fn locally_finite_split(c: &Colouring, t: FinitenessThreshold) -> Result<Split> {
    let t = t.0;
    let n = c.ground().len();
    if n <= 2 * t + 1 {
        return Err(Error::invalid(format!(
            "need more than 2t+1 = {} points, have {n}",
            2 * t + 1
        )));
    }
    let one = PairGraph::from_colouring(c, Colour::One)?;
    let mut classed = [Vec::new(), Vec::new()];
    for x in c.ground().iter() {
        let d1 = one.degree(x);
        let d0 = n - 1 - d1;
        match (d0 <= t, d1 <= t) {
            (true, false) => classed[0].push(x),
            (false, true) => classed[1].push(x),
            (false, false) => {
                return Err(Error::Unclassifiable(format!(
                    "{x} has {d0} neighbours of colour 0 and {d1} of colour 1, both above {t}"
                )))
            }
            (true, true) => unreachable!("n > 2t + 1"),
        }
    }
    let colour = if classed[0].len() >= n - t {
        Colour::Zero
    } else if classed[1].len() >= n - t {
        Colour::One
    } else {
        return Err(Error::Unclassifiable(format!(
            "neither colour classes {} of {n} points ({} vs {})",
            n - t,
            classed[0].len(),
            classed[1].len()
        )));
    };
    let set: FinSet = classed[colour.value() as usize].iter().copied().collect();
    let graph = match colour {
        Colour::One => one,
        Colour::Zero => PairGraph::from_colouring(c, Colour::Zero)?,
    };
    if graph.induced(&set).max_degree() > t {
        return Err(Error::VerificationFailed("split degree bound".into()));
    }
    Ok(Split { colour, set })
}
