//! Hereditarily finite sets over atoms.

use std::fmt;

use finlab_core::{Atom, Colour, FinSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An atom or a finite set of `HSet`s. Children of a set node are kept
/// sorted and deduplicated, so structural equality is extensional equality.
///
/// In JSON an atom is a number and a set is an array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HSet {
    Atom(Atom),
    Set(Vec<HSet>),
}

impl HSet {
    pub fn empty() -> Self {
        HSet::Set(Vec::new())
    }

    pub fn atom(a: impl Into<Atom>) -> Self {
        HSet::Atom(a.into())
    }

    pub fn set(children: impl IntoIterator<Item = HSet>) -> Self {
        let mut v: Vec<HSet> = children.into_iter().collect();
        v.sort();
        v.dedup();
        HSet::Set(v)
    }

    /// The set of atoms `x`, as a set node of atom leaves.
    pub fn of_atoms(x: &FinSet) -> Self {
        HSet::Set(x.iter().map(HSet::Atom).collect())
    }

    /// A family of sets of atoms.
    pub fn of_family<'a>(sets: impl IntoIterator<Item = &'a FinSet>) -> Self {
        HSet::set(sets.into_iter().map(HSet::of_atoms))
    }

    /// von Neumann numeral: `0 = ∅`, `n + 1 = n ∪ {n}`.
    pub fn numeral(n: u64) -> Self {
        let mut members = Vec::new();
        for _ in 0..n {
            let next = HSet::set(members.clone());
            members.push(next);
        }
        HSet::set(members)
    }

    pub fn colour(c: Colour) -> Self {
        HSet::numeral(u64::from(c.value()))
    }

    /// Kuratowski pair `{{x}, {x, y}}`.
    pub fn pair(x: HSet, y: HSet) -> Self {
        HSet::set([HSet::set([x.clone()]), HSet::set([x, y])])
    }

    /// Graph of a function as a set of Kuratowski pairs.
    pub fn graph(pairs: impl IntoIterator<Item = (HSet, HSet)>) -> Self {
        HSet::set(pairs.into_iter().map(|(x, y)| HSet::pair(x, y)))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, HSet::Atom(_))
    }

    pub fn children(&self) -> &[HSet] {
        match self {
            HSet::Atom(_) => &[],
            HSet::Set(c) => c,
        }
    }

    pub fn contains(&self, x: &HSet) -> bool {
        self.children().binary_search(x).is_ok()
    }

    /// Atoms in the transitive closure.
    pub fn atoms(&self) -> FinSet {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.into_iter().collect()
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            HSet::Atom(a) => out.push(*a),
            HSet::Set(c) => c.iter().for_each(|x| x.collect_atoms(out)),
        }
    }

    pub fn is_pure(&self) -> bool {
        match self {
            HSet::Atom(_) => false,
            HSet::Set(c) => c.iter().all(HSet::is_pure),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            HSet::Atom(_) => 0,
            HSet::Set(c) => 1 + c.iter().map(HSet::depth).max().unwrap_or(0),
        }
    }

    /// Recursive image under an atom map; `None` if the map is undefined on
    /// some atom.
    pub fn try_map<F>(&self, f: &F) -> Option<HSet>
    where
        F: Fn(Atom) -> Option<Atom>,
    {
        match self {
            HSet::Atom(a) => f(*a).map(HSet::Atom),
            HSet::Set(c) => c
                .iter()
                .map(|x| x.try_map(f))
                .collect::<Option<Vec<_>>>()
                .map(HSet::set),
        }
    }

    /// The members as plain sets of atoms, if this is a family of such.
    pub fn as_family(&self) -> Option<Vec<FinSet>> {
        match self {
            HSet::Atom(_) => None,
            HSet::Set(c) => c.iter().map(HSet::as_atom_set).collect(),
        }
    }

    pub fn as_atom_set(&self) -> Option<FinSet> {
        match self {
            HSet::Atom(_) => None,
            HSet::Set(c) => c
                .iter()
                .map(|x| match x {
                    HSet::Atom(a) => Some(*a),
                    HSet::Set(_) => None,
                })
                .collect(),
        }
    }
}

impl fmt::Display for HSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HSet::Atom(a) => write!(f, "{a}"),
            HSet::Set(c) => {
                f.write_str("{")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Raw {
    Atom(u64),
    Set(Vec<Raw>),
}

impl From<&HSet> for Raw {
    fn from(x: &HSet) -> Self {
        match x {
            HSet::Atom(a) => Raw::Atom(a.id()),
            HSet::Set(c) => Raw::Set(c.iter().map(Raw::from).collect()),
        }
    }
}

impl From<Raw> for HSet {
    fn from(r: Raw) -> Self {
        match r {
            Raw::Atom(a) => HSet::Atom(Atom(a)),
            Raw::Set(c) => HSet::set(c.into_iter().map(HSet::from)),
        }
    }
}

impl Serialize for HSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Raw::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Raw::deserialize(d).map(HSet::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = HSet::set([HSet::atom(2), HSet::atom(1), HSet::atom(2)]);
        let b = HSet::set([HSet::atom(1), HSet::atom(2)]);
        assert_eq!(a, b);
        assert_eq!(a.atoms(), FinSet::from([1, 2]));
    }

    #[test]
    fn numerals_are_pure() {
        assert_eq!(HSet::numeral(0), HSet::empty());
        assert_eq!(HSet::numeral(1), HSet::set([HSet::empty()]));
        assert_eq!(HSet::numeral(3).children().len(), 3);
        assert!(HSet::numeral(4).is_pure());
        assert!(!HSet::of_atoms(&FinSet::from([0])).is_pure());
    }

    #[test]
    fn kuratowski_pairs_differ_by_order() {
        let x = HSet::atom(0);
        let y = HSet::atom(1);
        assert_ne!(HSet::pair(x.clone(), y.clone()), HSet::pair(y, x.clone()));
        assert_eq!(
            HSet::pair(x.clone(), x.clone()),
            HSet::set([HSet::set([x])])
        );
    }

    #[test]
    fn json_round_trip() {
        let x = HSet::set([HSet::atom(3), HSet::set([HSet::atom(1), HSet::empty()])]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[3,[1,[]]]");
        let back: HSet = serde_json::from_str("[[[],1],3,3]").unwrap();
        assert_eq!(back, x);
    }
}
