//! Two-valued colourings of finite sets.
//!
//! A [`Colouring`] is a total map from a declared [`Domain`] to [`Colour`].
//! Builtin rules cover every named colouring used by the finite-sum and
//! partition arguments; anything else is an explicit table or a closure.

mod derived;
mod graph;
mod grid;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};

pub use derived::{
    boundary_colouring, boundary_value, is_dense, min_drop, min_drop_colouring, value_colouring,
};
pub use graph::{
    bfs_levels, components, locally_finite_split, singleton_extract, FinitenessThreshold,
    PairGraph, Split,
};
pub use grid::{grid_colouring, grid_weight, GridShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Zero,
    One,
}

impl Colour {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Colour::One
        } else {
            Colour::Zero
        }
    }

    pub fn from_u8(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Colour::Zero),
            1 => Ok(Colour::One),
            _ => Err(Error::invalid(format!("colour must be 0 or 1, got {v}"))),
        }
    }

    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Self {
        match self {
            Colour::Zero => Colour::One,
            Colour::One => Colour::Zero,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Colour {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl<'de> Deserialize<'de> for Colour {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Colour::from_u8(v).map_err(serde::de::Error::custom)
    }
}

/// Which subsets of the ground set a colouring is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arity {
    /// `[X]^n`
    Exactly(usize),
    /// `[X]^{<ω}`, including the empty set.
    Finite,
    /// `[X]^{<ω} \ {∅}`
    NonEmpty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub ground: FinSet,
    pub arity: Arity,
}

impl Domain {
    pub fn new(ground: FinSet, arity: Arity) -> Self {
        Domain { ground, arity }
    }

    pub fn range(n: u64, arity: Arity) -> Self {
        Domain::new(FinSet::range(n), arity)
    }

    pub fn check(&self, x: &FinSet) -> Result<()> {
        match self.arity {
            Arity::Exactly(n) if x.len() != n => {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: x.len(),
                })
            }
            Arity::NonEmpty if x.is_empty() => {
                return Err(Error::Domain("the empty set is not coloured".into()))
            }
            _ => {}
        }
        if let Some(a) = x.iter().find(|&a| !self.ground.contains(a)) {
            return Err(Error::Domain(format!(
                "{x} contains {a}, not in the ground set"
            )));
        }
        Ok(())
    }

    /// Every set in the domain, lexicographically. Only sensible for small
    /// ground sets.
    pub fn enumerate(&self) -> Vec<FinSet> {
        match self.arity {
            Arity::Exactly(n) => self.ground.subsets_of_size(n).collect(),
            Arity::Finite | Arity::NonEmpty => {
                let start = usize::from(self.arity == Arity::NonEmpty);
                let mut all: Vec<FinSet> = (start..=self.ground.len())
                    .flat_map(|k| self.ground.subsets_of_size(k).collect::<Vec<_>>())
                    .collect();
                all.sort();
                all
            }
        }
    }
}

pub type ColourFn = Arc<dyn Fn(&FinSet) -> Result<Colour> + Send + Sync>;

#[derive(Clone)]
pub enum Rule {
    Constant(Colour),
    /// `⌊log₂|x|⌋ mod 2`
    Log2,
    /// 0 iff `|x| mod 4 ∈ {0, 1}`
    Mod4,
    Partition(Partition),
    Grid(GridShape),
    Table(BTreeMap<FinSet, Colour>),
    Custom(ColourFn),
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Constant(c) => write!(f, "Constant({c})"),
            Rule::Log2 => write!(f, "Log2"),
            Rule::Mod4 => write!(f, "Mod4"),
            Rule::Partition(p) => write!(f, "Partition({p:?})"),
            Rule::Grid(g) => write!(f, "Grid({g:?})"),
            Rule::Table(t) => write!(f, "Table({} entries)", t.len()),
            Rule::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Colouring {
    name: String,
    domain: Domain,
    rule: Rule,
}

impl Colouring {
    pub fn new(name: impl Into<String>, domain: Domain, rule: Rule) -> Self {
        Colouring {
            name: name.into(),
            domain,
            rule,
        }
    }

    pub fn from_fn<F>(name: impl Into<String>, domain: Domain, f: F) -> Self
    where
        F: Fn(&FinSet) -> Colour + Send + Sync + 'static,
    {
        Colouring::new(name, domain, Rule::Custom(Arc::new(move |x| Ok(f(x)))))
    }

    /// Colouring of the 2-subsets of `{0..n-1}` given by a function of the
    /// two endpoints (smaller first).
    pub fn pairs<F>(name: impl Into<String>, n: u64, f: F) -> Self
    where
        F: Fn(u64, u64) -> Colour + Send + Sync + 'static,
    {
        Colouring::from_fn(name, Domain::range(n, Arity::Exactly(2)), move |x| {
            let ids: Vec<u64> = x.ids().collect();
            f(ids[0], ids[1])
        })
    }

    pub fn constant(n: u64, colour: Colour) -> Self {
        Colouring::new(
            format!("constant-{colour}"),
            Domain::range(n, Arity::Finite),
            Rule::Constant(colour),
        )
    }

    pub fn log2(n: u64) -> Self {
        Colouring::new("log2", Domain::range(n, Arity::Finite), Rule::Log2)
    }

    pub fn mod4(n: u64) -> Self {
        Colouring::new("mod4", Domain::range(n, Arity::Finite), Rule::Mod4)
    }

    pub fn partition(p: Partition) -> Self {
        Colouring::new(
            "partition",
            Domain::new(p.carrier(), Arity::Finite),
            Rule::Partition(p),
        )
    }

    pub fn grid(shape: GridShape) -> Self {
        Colouring::new(
            "grid",
            Domain::range(shape.atom_count(), Arity::Finite),
            Rule::Grid(shape),
        )
    }

    /// An explicit table. Every set of the domain must be listed (for
    /// `Finite` / `NonEmpty` domains this is only checked on ground sets of
    /// at most 20 atoms).
    pub fn table(domain: Domain, entries: BTreeMap<FinSet, Colour>) -> Result<Self> {
        for x in entries.keys() {
            domain.check(x)?;
        }
        let expected = match domain.arity {
            Arity::Exactly(n) => Some(binomial(domain.ground.len() as u64, n as u64)),
            Arity::Finite if domain.ground.len() <= 20 => Some(1u64 << domain.ground.len()),
            Arity::NonEmpty if domain.ground.len() <= 20 => Some((1u64 << domain.ground.len()) - 1),
            _ => None,
        };
        if let Some(expected) = expected {
            if entries.len() as u64 != expected {
                return Err(Error::invalid(format!(
                    "table lists {} sets but the domain has {expected}",
                    entries.len()
                )));
            }
        }
        Ok(Colouring::new("table", domain, Rule::Table(entries)))
    }

    /// Restricts the declared domain; the rule is unchanged.
    pub fn restricted(&self, domain: Domain) -> Self {
        Colouring {
            name: self.name.clone(),
            domain,
            rule: self.rule.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn arity(&self) -> Arity {
        self.domain.arity
    }

    pub fn ground(&self) -> &FinSet {
        &self.domain.ground
    }

    pub fn colour(&self, x: &FinSet) -> Result<Colour> {
        self.domain.check(x)?;
        match &self.rule {
            Rule::Constant(c) => Ok(*c),
            Rule::Log2 => log2_colouring(x),
            Rule::Mod4 => Ok(mod4_colouring(x)),
            Rule::Partition(p) => partition_colouring(p, x),
            Rule::Grid(shape) => grid_colouring(*shape, x),
            Rule::Table(t) => t
                .get(x)
                .copied()
                .ok_or_else(|| Error::Domain(format!("{x} is not listed in the table"))),
            Rule::Custom(f) => f(x),
        }
    }

    /// Tabulates the colouring over its (small) domain.
    pub fn to_table(&self) -> Result<BTreeMap<FinSet, Colour>> {
        self.domain
            .enumerate()
            .into_iter()
            .filter(|x| !(matches!(self.rule, Rule::Log2) && x.is_empty()))
            .map(|x| self.colour(&x).map(|c| (x, c)))
            .collect()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `⌊log₂|x|⌋ mod 2`; undefined on the empty set.
pub fn log2_colouring(x: &FinSet) -> Result<Colour> {
    if x.is_empty() {
        return Err(Error::invalid(
            "log2 colouring is undefined on the empty set",
        ));
    }
    Ok(Colour::from_bit(x.len().ilog2() % 2 == 1))
}

/// 0 if `|x| ≡ 0, 1 (mod 4)`, 1 otherwise.
pub fn mod4_colouring(x: &FinSet) -> Colour {
    Colour::from_bit(x.len() % 4 >= 2)
}

/// A family of pairwise-disjoint blocks covering its carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FinSet>", into = "Vec<FinSet>")]
pub struct Partition {
    blocks: Vec<FinSet>,
}

impl TryFrom<Vec<FinSet>> for Partition {
    type Error = Error;

    fn try_from(blocks: Vec<FinSet>) -> Result<Self> {
        Partition::new(blocks)
    }
}

impl From<Partition> for Vec<FinSet> {
    fn from(p: Partition) -> Self {
        p.blocks
    }
}

impl Partition {
    pub fn new(blocks: Vec<FinSet>) -> Result<Self> {
        if blocks.iter().any(FinSet::is_empty) {
            return Err(Error::invalid("partition blocks must be nonempty"));
        }
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(Error::invalid(format!("blocks {a} and {b} overlap")));
                }
            }
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[FinSet] {
        &self.blocks
    }

    pub fn carrier(&self) -> FinSet {
        self.blocks
            .iter()
            .fold(FinSet::empty(), |acc, b| acc.union(b))
    }

    pub fn block_of(&self, a: Atom) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(a))
    }

    fn check_inside(&self, x: &FinSet) -> Result<()> {
        match x.iter().find(|&a| self.block_of(a).is_none()) {
            Some(a) => Err(Error::Domain(format!(
                "{a} lies outside the partition carrier"
            ))),
            None => Ok(()),
        }
    }
}

/// 1 iff some block meets `x` in at least two points.
pub fn partition_colouring(p: &Partition, x: &FinSet) -> Result<Colour> {
    p.check_inside(x)?;
    Ok(Colour::from_bit(
        p.blocks().iter().any(|b| b.intersection(x).len() >= 2),
    ))
}

/// A selector for the subfamily of blocks a set touches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selector {
    pub set: FinSet,
    /// Indices of the touched blocks, ascending.
    pub blocks: Vec<usize>,
}

/// If `y` meets every block it touches in exactly one point, returns it as a
/// selector of the touched blocks.
pub fn selector_extract(p: &Partition, y: &FinSet) -> Result<Option<Selector>> {
    p.check_inside(y)?;
    let mut touched = Vec::new();
    for (i, b) in p.blocks().iter().enumerate() {
        match b.intersection(y).len() {
            0 => {}
            1 => touched.push(i),
            _ => return Ok(None),
        }
    }
    Ok(Some(Selector {
        set: y.clone(),
        blocks: touched,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    fn of_size(n: u64) -> FinSet {
        FinSet::range(n)
    }

    #[test]
    fn log2_values() {
        let colours: Vec<u8> = [1, 2, 3, 4, 8]
            .iter()
            .map(|&n| log2_colouring(&of_size(n)).unwrap().value())
            .collect();
        assert_eq!(colours, vec![0, 1, 1, 0, 1]);
        assert!(matches!(
            log2_colouring(&FinSet::empty()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn log2_flips_on_disjoint_equal_union() {
        let x = set(&[0, 1, 2, 3, 4]);
        let y = set(&[5, 6, 7, 8, 9]);
        assert_eq!(
            log2_colouring(&x.union(&y)).unwrap(),
            log2_colouring(&x).unwrap().flip()
        );
    }

    #[test]
    fn mod4_values() {
        let colours: Vec<u8> = [0, 4, 5, 6, 7]
            .iter()
            .map(|&n| mod4_colouring(&of_size(n)).value())
            .collect();
        assert_eq!(colours, vec![0, 0, 0, 1, 1]);
        for n in 0..40 {
            assert_ne!(mod4_colouring(&of_size(n)), mod4_colouring(&of_size(n + 2)));
        }
    }

    #[test]
    fn partition_colouring_examples() {
        let p = Partition::new(vec![set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert_eq!(partition_colouring(&p, &set(&[1, 2])).unwrap(), Colour::One);
        assert_eq!(
            partition_colouring(&p, &set(&[1, 3])).unwrap(),
            Colour::Zero
        );
        assert_eq!(
            partition_colouring(&p, &set(&[2, 3, 4])).unwrap(),
            Colour::One
        );
        assert!(matches!(
            partition_colouring(&p, &set(&[5])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn partition_rejects_overlap() {
        assert!(Partition::new(vec![set(&[1, 2]), set(&[2, 3])]).is_err());
    }

    #[test]
    fn selector_examples() {
        let p = Partition::new(vec![set(&[1, 2]), set(&[3, 4]), set(&[5, 6])]).unwrap();
        let s = selector_extract(&p, &set(&[1, 3])).unwrap().unwrap();
        assert_eq!(s.set, set(&[1, 3]));
        assert_eq!(s.blocks, vec![0, 1]);

        let p2 = Partition::new(vec![set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert_eq!(selector_extract(&p2, &set(&[1, 2])).unwrap(), None);

        let s = selector_extract(&p, &FinSet::empty()).unwrap().unwrap();
        assert!(s.set.is_empty() && s.blocks.is_empty());
    }

    #[test]
    fn table_must_be_total() {
        let domain = Domain::range(3, Arity::Exactly(2));
        let mut entries = BTreeMap::new();
        entries.insert(set(&[0, 1]), Colour::One);
        assert!(Colouring::table(domain.clone(), entries.clone()).is_err());
        entries.insert(set(&[0, 2]), Colour::Zero);
        entries.insert(set(&[1, 2]), Colour::Zero);
        let c = Colouring::table(domain, entries).unwrap();
        assert_eq!(c.colour(&set(&[0, 1])).unwrap(), Colour::One);
        assert!(matches!(
            c.colour(&set(&[0])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn colour_serializes_as_integer() {
        // exercised through a FinSet-keyed pair to keep serde_json out of the deps
        assert_eq!(Colour::from_u8(1).unwrap(), Colour::One);
        assert!(Colour::from_u8(2).is_err());
    }
}
