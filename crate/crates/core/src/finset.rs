//! Canonical finite sets of atoms and the Boolean group they form under
//! symmetric difference.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};

/// An atom of a ground set, identified by a non-negative index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(pub u64);

impl Atom {
    pub fn id(self) -> u64 {
        self.0
    }
}

impl From<u64> for Atom {
    fn from(id: u64) -> Self {
        Atom(id)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// A finite set of atoms, stored as a strictly increasing sequence.
///
/// Equality, hashing and ordering are extensional; the derived `Ord` is the
/// lexicographic order on the element sequences, which is the canonical
/// order used for every deduplicated collection and every search tie-break.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinSet {
    atoms: Vec<Atom>,
}

impl From<Vec<u64>> for FinSet {
    fn from(ids: Vec<u64>) -> Self {
        FinSet::from_ids(ids)
    }
}

impl From<FinSet> for Vec<u64> {
    fn from(set: FinSet) -> Self {
        set.atoms.into_iter().map(Atom::id).collect()
    }
}

impl FromIterator<Atom> for FinSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut atoms: Vec<Atom> = iter.into_iter().collect();
        atoms.sort_unstable();
        atoms.dedup();
        FinSet { atoms }
    }
}

impl<const N: usize> From<[u64; N]> for FinSet {
    fn from(ids: [u64; N]) -> Self {
        FinSet::from_ids(ids)
    }
}

impl FinSet {
    pub fn empty() -> Self {
        FinSet::default()
    }

    pub fn from_ids<I: IntoIterator<Item = u64>>(ids: I) -> Self {
        ids.into_iter().map(Atom).collect()
    }

    /// The ground set `{0, ..., n-1}`.
    pub fn range(n: u64) -> Self {
        FinSet {
            atoms: (0..n).map(Atom).collect(),
        }
    }

    pub fn singleton(a: Atom) -> Self {
        FinSet { atoms: vec![a] }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Atom> + ExactSizeIterator + '_ {
        self.atoms.iter().copied()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.atoms.iter().map(|a| a.0)
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.atoms.binary_search(&a).is_ok()
    }

    pub fn least(&self) -> Option<Atom> {
        self.atoms.first().copied()
    }

    pub fn greatest(&self) -> Option<Atom> {
        self.atoms.last().copied()
    }

    pub fn with(&self, a: Atom) -> FinSet {
        match self.atoms.binary_search(&a) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut atoms = self.atoms.clone();
                atoms.insert(pos, a);
                FinSet { atoms }
            }
        }
    }

    pub fn without(&self, a: Atom) -> FinSet {
        match self.atoms.binary_search(&a) {
            Ok(pos) => {
                let mut atoms = self.atoms.clone();
                atoms.remove(pos);
                FinSet { atoms }
            }
            Err(_) => self.clone(),
        }
    }

    /// `(self \ other) ∪ (other \ self)`, the group operation.
    pub fn sym_diff(&self, other: &FinSet) -> FinSet {
        self.merge(other, |in_a, in_b| in_a != in_b)
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        self.merge(other, |in_a, in_b| in_a || in_b)
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        self.merge(other, |in_a, in_b| in_a && in_b)
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        self.merge(other, |in_a, in_b| in_a && !in_b)
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.len() <= other.len() && self.iter().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.atoms.len() && j < other.atoms.len() {
            match self.atoms[i].cmp(&other.atoms[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// All `k`-element subsets, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> impl Iterator<Item = FinSet> + '_ {
        self.atoms
            .iter()
            .copied()
            .combinations(k)
            .map(|atoms| FinSet { atoms })
    }

    fn merge(&self, other: &FinSet, keep: impl Fn(bool, bool) -> bool) -> FinSet {
        let (a, b) = (&self.atoms, &other.atoms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (x, in_a, in_b) = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    (x, true, true)
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    (x, true, false)
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (Some(&x), None) => {
                    i += 1;
                    (x, true, false)
                }
                (None, Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (None, None) => unreachable!(),
            };
            if keep(in_a, in_b) {
                out.push(x);
            }
        }
        FinSet { atoms: out }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.ids().join(","))
    }
}

/// A finite sequence of sets. Insertion order is kept; duplicates are
/// allowed by construction and rejected by the operations that require an
/// injective family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetFamily {
    members: Vec<FinSet>,
}

impl FromIterator<FinSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = FinSet>>(iter: I) -> Self {
        SetFamily {
            members: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<FinSet>> for SetFamily {
    fn from(members: Vec<FinSet>) -> Self {
        SetFamily { members }
    }
}

impl SetFamily {
    pub fn new(members: Vec<FinSet>) -> Self {
        SetFamily { members }
    }

    pub fn members(&self) -> &[FinSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<FinSet> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FinSet> {
        self.members.iter()
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<&FinSet> = self.members.iter().collect();
        distinct.len() == self.members.len()
    }

    pub fn union_all(&self) -> FinSet {
        self.members
            .iter()
            .fold(FinSet::empty(), |acc, m| acc.union(m))
    }

    /// The members as a canonical (sorted, deduplicated) collection.
    pub fn canonical(&self) -> Vec<FinSet> {
        let set: BTreeSet<FinSet> = self.members.iter().cloned().collect();
        set.into_iter().collect()
    }
}

pub fn sym_diff(a: &FinSet, b: &FinSet) -> FinSet {
    a.sym_diff(b)
}

fn require_injective(family: &SetFamily) -> Result<()> {
    if family.is_injective() {
        Ok(())
    } else {
        Err(Error::invalid("family contains a repeated member"))
    }
}

/// `FS_{<=k}(Y)`: symmetric differences of every nonempty subfamily of at
/// most `k` members, deduplicated and sorted lexicographically.
///
/// `k` larger than `|Y|` is clamped to `|Y|`, since no subfamily can be
/// larger than the family.
pub fn fs_up_to(family: &SetFamily, k: usize) -> Result<Vec<FinSet>> {
    if k == 0 {
        return Err(Error::invalid("FS_{<=k} needs k >= 1"));
    }
    if family.is_empty() {
        return Err(Error::invalid("FS_{<=k} of an empty family"));
    }
    require_injective(family)?;
    let members = family.members();
    let mut sums = BTreeSet::new();
    for size in 1..=k.min(members.len()) {
        for combo in members.iter().combinations(size) {
            let sum = combo
                .into_iter()
                .fold(FinSet::empty(), |acc, y| acc.sym_diff(y));
            sums.insert(sum);
        }
    }
    Ok(sums.into_iter().collect())
}

/// `FU(Y)`: unions over every nonempty subfamily, deduplicated and sorted.
pub fn fu(family: &SetFamily) -> Result<Vec<FinSet>> {
    if family.is_empty() {
        return Err(Error::invalid("FU of an empty family"));
    }
    let members = family.members();
    if members.len() > 24 {
        return Err(Error::invalid(format!(
            "FU enumerates 2^|Y| subfamilies; |Y| = {} is too large",
            members.len()
        )));
    }
    let mut unions = BTreeSet::new();
    for mask in 1u32..(1u32 << members.len()) {
        let union = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(FinSet::empty(), |acc, (_, y)| acc.union(y));
        unions.insert(union);
    }
    Ok(unions.into_iter().collect())
}

pub fn is_pairwise_disjoint(family: &SetFamily) -> bool {
    family
        .members()
        .iter()
        .tuple_combinations()
        .all(|(a, b)| a == b || a.is_disjoint(b))
}

/// Output of [`disjointify`]: the disjoint blocks together with the index
/// of the input member each block was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjointified {
    pub blocks: Vec<FinSet>,
    pub indices: Vec<usize>,
}

/// Turns an injective sequence into a pairwise-disjoint sequence of nonempty
/// sets: `y_0` is the first nonempty member, and each later block is the
/// first member not yet covered minus everything covered so far. Stops when
/// every remaining member is covered.
pub fn disjointify(xs: &[FinSet]) -> Result<Disjointified> {
    require_injective(&SetFamily::new(xs.to_vec()))?;
    let mut covered = FinSet::empty();
    let mut out = Disjointified {
        blocks: Vec::new(),
        indices: Vec::new(),
    };
    // Earlier members are already covered when a later one is chosen, so
    // resuming the scan after the last chosen index finds the least index.
    let mut start = 0;
    while let Some(k) = (start..xs.len()).find(|&k| !xs[k].is_subset(&covered)) {
        let block = xs[k].difference(&covered);
        covered = covered.union(&block);
        out.blocks.push(block);
        out.indices.push(k);
        start = k + 1;
    }
    if out.blocks.is_empty() {
        return Err(Error::NotFound(
            "every member of the sequence is empty".into(),
        ));
    }
    Ok(out)
}

/// The common colour of every set in `sets`, or `None` if two colours occur
/// or `sets` is empty.
pub fn is_monochromatic<'a, I>(c: &Colouring, sets: I) -> Result<Option<Colour>>
where
    I: IntoIterator<Item = &'a FinSet>,
{
    let mut common = None;
    let mut mixed = false;
    for s in sets {
        let colour = c.colour(s)?;
        match common {
            None => common = Some(colour),
            Some(prev) if prev != colour => mixed = true,
            Some(_) => {}
        }
    }
    Ok(if mixed { None } else { common })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::Colouring;
    use proptest::prelude::*;

    fn fam(sets: &[&[u64]]) -> SetFamily {
        sets.iter()
            .map(|s| FinSet::from_ids(s.iter().copied()))
            .collect()
    }

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn sym_diff_examples() {
        assert_eq!(set(&[1, 2]).sym_diff(&set(&[2, 3])), set(&[1, 3]));
        let x = set(&[4, 7, 9]);
        assert_eq!(x.sym_diff(&x), FinSet::empty());
        assert_eq!(x.sym_diff(&FinSet::empty()), x);
    }

    #[test]
    fn boolean_group_axioms_exhaustive() {
        let all: Vec<FinSet> = (0u32..64)
            .map(|m| FinSet::from_ids((0..6).filter(|i| m & (1 << i) != 0)))
            .collect();
        for a in &all {
            assert_eq!(a.sym_diff(a), FinSet::empty());
            assert_eq!(a.sym_diff(&FinSet::empty()), *a);
            for b in &all {
                assert_eq!(a.sym_diff(b), b.sym_diff(a));
                for c in &all {
                    assert_eq!(a.sym_diff(b).sym_diff(c), a.sym_diff(&b.sym_diff(c)));
                }
            }
        }
    }

    #[test]
    fn fs_up_to_examples() {
        let y = fam(&[&[1], &[2], &[3]]);
        let got = fs_up_to(&y, 2).unwrap();
        let want = vec![
            set(&[1]),
            set(&[1, 2]),
            set(&[1, 3]),
            set(&[2]),
            set(&[2, 3]),
            set(&[3]),
        ];
        assert_eq!(got, want);

        let y = fam(&[&[1, 2], &[2, 3]]);
        assert_eq!(
            fs_up_to(&y, 2).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );

        let y = fam(&[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]);
        assert_eq!(fs_up_to(&y, 4).unwrap().len(), 15);
    }

    #[test]
    fn fs_up_to_rejects_bad_input() {
        assert!(matches!(
            fs_up_to(&fam(&[&[1]]), 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            fs_up_to(&SetFamily::default(), 1),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            fs_up_to(&fam(&[&[1], &[1]]), 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fu_examples() {
        assert_eq!(
            fu(&fam(&[&[1], &[2, 3]])).unwrap(),
            vec![set(&[1]), set(&[1, 2, 3]), set(&[2, 3])]
        );
        assert_eq!(
            fu(&fam(&[&[1, 2], &[2]])).unwrap(),
            vec![set(&[1, 2]), set(&[2])]
        );
        assert!(fu(&SetFamily::default()).is_err());
    }

    #[test]
    fn fu_of_disjoint_family_has_full_size() {
        for size in 1..=5u64 {
            let y: SetFamily = (0..size).map(|i| set(&[2 * i, 2 * i + 1])).collect();
            assert_eq!(fu(&y).unwrap().len(), (1 << size) - 1);
        }
    }

    #[test]
    fn pairwise_disjoint_examples() {
        assert!(is_pairwise_disjoint(&fam(&[&[1], &[2]])));
        assert!(!is_pairwise_disjoint(&fam(&[&[1, 2], &[2, 3]])));
        assert!(is_pairwise_disjoint(&SetFamily::default()));
    }

    #[test]
    fn disjointify_examples() {
        let xs = [set(&[1, 2]), set(&[2, 3]), set(&[1, 2, 3]), set(&[4])];
        let out = disjointify(&xs).unwrap();
        assert_eq!(out.blocks, vec![set(&[1, 2]), set(&[3]), set(&[4])]);
        assert_eq!(out.indices, vec![0, 1, 3]);

        let out = disjointify(&[FinSet::empty(), set(&[5])]).unwrap();
        assert_eq!(out.blocks, vec![set(&[5])]);

        assert!(matches!(
            disjointify(&[FinSet::empty()]),
            Err(Error::NotFound(_))
        ));
        assert!(matches!(disjointify(&[]), Err(Error::NotFound(_))));
    }

    #[test]
    fn is_monochromatic_examples() {
        let zero = Colouring::constant(10, Colour::Zero);
        let sets = [set(&[1]), set(&[2, 3])];
        assert_eq!(is_monochromatic(&zero, &sets).unwrap(), Some(Colour::Zero));
        let log2 = Colouring::log2(10);
        assert_eq!(is_monochromatic(&log2, &sets).unwrap(), None);
        assert_eq!(is_monochromatic(&log2, &[]).unwrap(), None);
        assert!(matches!(
            is_monochromatic(&log2, &[set(&[11])]),
            Err(Error::Domain(_))
        ));
    }

    fn arb_set() -> impl Strategy<Value = FinSet> {
        prop::collection::btree_set(0u64..20, 0..8).prop_map(FinSet::from_ids)
    }

    proptest! {
        #[test]
        fn set_ops_agree_with_btreeset(a in arb_set(), b in arb_set()) {
            let sa: BTreeSet<u64> = a.ids().collect();
            let sb: BTreeSet<u64> = b.ids().collect();
            prop_assert_eq!(a.sym_diff(&b), FinSet::from_ids(sa.symmetric_difference(&sb).copied()));
            prop_assert_eq!(a.union(&b), FinSet::from_ids(sa.union(&sb).copied()));
            prop_assert_eq!(a.intersection(&b), FinSet::from_ids(sa.intersection(&sb).copied()));
            prop_assert_eq!(a.is_disjoint(&b), sa.is_disjoint(&sb));
            prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
        }

        #[test]
        fn disjointify_output_is_disjoint_and_traceable(
            xs in prop::collection::btree_set(arb_set(), 1..12)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>())
                .prop_shuffle()
        ) {
            match disjointify(&xs) {
                Ok(out) => {
                    let blocks = SetFamily::new(out.blocks.clone());
                    prop_assert!(is_pairwise_disjoint(&blocks));
                    prop_assert!(out.blocks.iter().all(|b| !b.is_empty()));
                    prop_assert!(out.indices.windows(2).all(|w| w[0] < w[1]));
                    for (b, &k) in out.blocks.iter().zip(&out.indices) {
                        prop_assert!(b.is_subset(&xs[k]));
                    }
                    // every input member ends up covered
                    let covered = blocks.union_all();
                    prop_assert!(xs.iter().all(|x| x.is_subset(&covered)));
                }
                Err(Error::NotFound(_)) => prop_assert!(xs.iter().all(FinSet::is_empty)),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn fs_up_to_is_monotone_in_k(
            members in prop::collection::btree_set(arb_set().prop_filter("nonempty", |s| !s.is_empty()), 1..6)
        ) {
            let y: SetFamily = members.into_iter().collect();
            let mut prev: BTreeSet<FinSet> = BTreeSet::new();
            for k in 1..=y.len() {
                let cur: BTreeSet<FinSet> = fs_up_to(&y, k).unwrap().into_iter().collect();
                prop_assert!(prev.is_subset(&cur));
                prev = cur;
            }
            if is_pairwise_disjoint(&y) {
                let all: BTreeSet<FinSet> = fu(&y).unwrap().into_iter().collect();
                prop_assert_eq!(prev, all);
            }
        }
    }
}
