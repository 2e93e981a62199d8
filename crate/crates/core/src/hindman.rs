//! Executable forms of the finite kernels behind the finite-sums arguments.
//!
//! Each check either returns nothing or a [`ViolationReport`] whose
//! witnesses can be re-evaluated independently via
//! [`ViolationReport::reverify`].

use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::colouring::{log2_colouring, Arity, Colour, Colouring, Domain, GridShape};
use crate::error::{Error, Result};
use crate::finset::{fs_up_to, is_monochromatic, is_pairwise_disjoint, FinSet, SetFamily};
use crate::ramsey::{
    f_bound, find_mono_subset_with, schur_decompose, schur_triple, Magnitude, RamseyProvider,
    SchurTriple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Two disjoint members of equal size: under `log2` their union has the
    /// other colour.
    DisjointEqualCardinality,
    /// Two sets that should share a `log2` colour but do not.
    ColourMismatch,
    /// More members of a given size than the counting bound allows.
    BoundBreach,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub witnesses: Vec<FinSet>,
    /// `log2` colours of the witnesses; for a disjoint pair the colour of
    /// the union comes last.
    pub colours: Vec<Colour>,
    pub cardinalities: Vec<usize>,
    /// Decimal bound for [`ViolationKind::BoundBreach`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

impl ViolationReport {
    /// Recomputes the violation from the witnesses alone.
    pub fn reverify(&self) -> bool {
        let w = &self.witnesses;
        let cards_ok = w
            .iter()
            .map(FinSet::len)
            .eq(self.cardinalities.iter().copied());
        if !cards_ok {
            return false;
        }
        match self.kind {
            ViolationKind::DisjointEqualCardinality => {
                let [x, y] = w.as_slice() else { return false };
                if !x.is_disjoint(y) || x.len() != y.len() || x.is_empty() {
                    return false;
                }
                let colours: Result<Vec<Colour>> = [x, y, &x.union(y)]
                    .into_iter()
                    .map(log2_colouring)
                    .collect();
                matches!(colours, Ok(c) if c == self.colours && c[0] == c[1] && c[0] != c[2])
            }
            ViolationKind::ColourMismatch => {
                let [x, y] = w.as_slice() else { return false };
                let colours: Result<Vec<Colour>> = [x, y].into_iter().map(log2_colouring).collect();
                matches!(colours, Ok(c) if c == self.colours && c[0] != c[1])
            }
            ViolationKind::BoundBreach => {
                let Some(bound) = self
                    .bound
                    .as_deref()
                    .and_then(|b| b.parse::<BigUint>().ok())
                else {
                    return false;
                };
                let size = w.first().map(FinSet::len);
                SetFamily::new(w.clone()).is_injective()
                    && w.iter().all(|x| Some(x.len()) == size)
                    && BigUint::from(w.len()) >= bound
            }
        }
    }
}

/// First pair (in family order) of distinct members with equal size.
pub fn cardinality_injectivity_check(y: &SetFamily) -> Result<Option<ViolationReport>> {
    if !y.is_injective() || !is_pairwise_disjoint(y) {
        return Err(Error::invalid(
            "family must be injective and pairwise disjoint",
        ));
    }
    let Some((a, b)) = y
        .members()
        .iter()
        .tuple_combinations()
        .find(|(a, b)| a.len() == b.len())
    else {
        return Ok(None);
    };
    let colours = [a, b, &a.union(b)]
        .into_iter()
        .map(log2_colouring)
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(ViolationReport {
        kind: ViolationKind::DisjointEqualCardinality,
        witnesses: vec![a.clone(), b.clone()],
        colours,
        cardinalities: vec![a.len(), b.len()],
        bound: None,
    }))
}

/// Is `log2` constant on `FS_{<=4}(Y)`? The empty set, which can arise as
/// a sum of three or four members, is skipped.
pub fn fs4_mono_check(y: &SetFamily) -> Result<Option<ViolationReport>> {
    if y.iter().any(FinSet::is_empty) {
        return Err(Error::invalid("members must be nonempty"));
    }
    let sums = fs_up_to(y, 4)?;
    let mut reference: Option<(&FinSet, Colour)> = None;
    for s in sums.iter().filter(|s| !s.is_empty()) {
        let colour = log2_colouring(s)?;
        match reference {
            None => reference = Some((s, colour)),
            Some((r, rc)) if rc != colour => {
                return Ok(Some(ViolationReport {
                    kind: ViolationKind::ColourMismatch,
                    witnesses: vec![r.clone(), s.clone()],
                    colours: vec![rc, colour],
                    cardinalities: vec![r.len(), s.len()],
                    bound: None,
                }))
            }
            Some(_) => {}
        }
    }
    Ok(None)
}

fn require_fs4_mono(y: &SetFamily) -> Result<()> {
    match fs4_mono_check(y)? {
        None => Ok(()),
        Some(v) => Err(Error::invalid(format!(
            "FS_<=4 is not log2-monochromatic: {} has colour {} but {} has colour {}",
            v.witnesses[0], v.colours[0], v.witnesses[1], v.colours[1]
        ))),
    }
}

/// Fewer than `F(n, n)` members of size `n`?
pub fn fs4_count_bound(
    y: &SetFamily,
    n: u64,
    provider: &RamseyProvider,
) -> Result<Option<ViolationReport>> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    require_fs4_mono(y)?;
    let members: Vec<FinSet> = y.iter().filter(|x| x.len() as u64 == n).cloned().collect();
    let count = BigUint::from(members.len());
    let bound = f_bound(n, n, provider)?;
    let breach = match &bound.value {
        Magnitude::Value(v) => &count >= v,
        // the bound is at least `lower`; below it there is certainly no breach
        Magnitude::AtLeast(lower) if &count < lower => false,
        Magnitude::AtLeast(_) => {
            return Err(Error::invalid("counting bound is too large to compare"))
        }
    };
    if !breach {
        return Ok(None);
    }
    Ok(Some(ViolationReport {
        kind: ViolationKind::BoundBreach,
        cardinalities: members.iter().map(FinSet::len).collect(),
        witnesses: members,
        colours: Vec::new(),
        bound: bound.value.value().map(|v| v.to_string()),
    }))
}

/// Four `n`-sets with a common pairwise intersection `r`. Returns
/// `(y1 △ y2, y3 △ y4)`: disjoint, each of size `2(n - |r|)`.
pub fn petal_sums(ys: &[FinSet; 4]) -> Result<(FinSet, FinSet)> {
    let n = ys[0].len();
    if ys.iter().any(|y| y.len() != n) {
        return Err(Error::invalid("members must share one size"));
    }
    let r = ys[0].intersection(&ys[1]);
    if !ys
        .iter()
        .tuple_combinations()
        .all(|(a, b)| a.intersection(b) == r && a != b)
    {
        return Err(Error::invalid(
            "members must be distinct with one common pairwise intersection",
        ));
    }
    let a = ys[0].sym_diff(&ys[1]);
    let b = ys[2].sym_diff(&ys[3]);
    let expected = 2 * (n - r.len());
    if !a.is_disjoint(&b) || a.len() != expected || b.len() != expected {
        return Err(Error::VerificationFailed("petal sums".into()));
    }
    Ok((a, b))
}

/// One thinning step of the pairwise-intersection induction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStep {
    pub y0: FinSet,
    /// The common intersection with `y0` of the bucket.
    pub r: FinSet,
    pub bucket: Vec<FinSet>,
    /// Largest subfamily of the bucket with `(y \ r) ∩ (z \ r) ≠ ∅` for all
    /// pairs; its pairwise intersections properly contain `r`.
    pub subfamily: Vec<FinSet>,
    /// Whether `|Y|` reached `F(n, n - k)`, the size the full argument
    /// would start from. Always false unless the bound is materialised.
    pub full_size: bool,
}

pub fn fs4_induction_step(
    y: &SetFamily,
    n: usize,
    k: usize,
    provider: &RamseyProvider,
) -> Result<Option<InductionStep>> {
    if y.len() < 2 {
        return Err(Error::invalid("need at least two members"));
    }
    if y.iter().any(|x| x.len() != n) {
        return Err(Error::invalid(format!(
            "every member must have {n} elements"
        )));
    }
    if k > n {
        return Err(Error::invalid("k cannot exceed n"));
    }
    if let Some((a, b)) = y
        .members()
        .iter()
        .tuple_combinations()
        .find(|(a, b)| a.intersection(b).len() < k)
    {
        return Err(Error::invalid(format!(
            "{a} and {b} meet in fewer than {k} points"
        )));
    }
    require_fs4_mono(y)?;

    let full_size = match f_bound(n as u64, (n - k) as u64, provider)?.value {
        Magnitude::Value(v) => BigUint::from(y.len()) >= v,
        Magnitude::AtLeast(_) => false,
    };
    let y0 = y.members().iter().min().expect("nonempty").clone();
    let buckets = y
        .iter()
        .filter(|x| **x != y0)
        .cloned()
        .into_group_map_by(|x| x.intersection(&y0));
    let (r, bucket) = buckets
        .into_iter()
        .max_by(|(ra, a), (rb, b)| a.len().cmp(&b.len()).then(rb.cmp(ra)))
        .expect("at least one other member");
    if bucket.len() < 2 {
        return Ok(None);
    }
    let petals: Vec<FinSet> = bucket.iter().map(|x| x.difference(&r)).collect();
    let d = Colouring::pairs("petal-overlap", bucket.len() as u64, move |i, j| {
        Colour::from_bit(!petals[i as usize].is_disjoint(&petals[j as usize]))
    });
    let mut found = None;
    for m in (2..=bucket.len()).rev() {
        if let Some(hit) = find_mono_subset_with(&d, m, None, Some(Colour::One))? {
            found = Some(hit.set);
            break;
        }
    }
    let Some(indices) = found else {
        return Ok(None);
    };
    let subfamily: Vec<FinSet> = indices.ids().map(|i| bucket[i as usize].clone()).collect();
    let ok = subfamily.iter().tuple_combinations().all(|(a, b)| {
        let meet = a.intersection(b);
        r.is_subset(&meet) && meet.len() > r.len() && meet.len() > k
    });
    if !ok {
        return Err(Error::VerificationFailed("thinned subfamily".into()));
    }
    Ok(Some(InductionStep {
        y0,
        r,
        bucket,
        subfamily,
        full_size,
    }))
}

/// `d(s) = c(⋃_{i∈s} y_i)` on finite subsets of block indices.
pub fn pushforward_colouring(c: &Colouring, ys: &[FinSet]) -> Result<Colouring> {
    if ys.is_empty() {
        return Err(Error::invalid("need at least one block"));
    }
    let fam = SetFamily::new(ys.to_vec());
    if !fam.is_injective() || !is_pairwise_disjoint(&fam) || ys.iter().any(FinSet::is_empty) {
        return Err(Error::invalid(
            "blocks must be nonempty and pairwise disjoint",
        ));
    }
    if let Some(b) = ys.iter().find(|b| !b.is_subset(c.ground())) {
        return Err(Error::Domain(format!("block {b} escapes the ground set")));
    }
    let arity = match c.arity() {
        Arity::Exactly(_) => {
            return Err(Error::invalid(
                "pushforward needs a colouring of all finite sets",
            ))
        }
        a => a,
    };
    let inner = c.clone();
    let blocks = ys.to_vec();
    Ok(Colouring::new(
        format!("pushforward({})", c.name()),
        Domain::range(ys.len() as u64, arity),
        crate::colouring::Rule::Custom(Arc::new(move |s| inner.colour(&block_union(&blocks, s)))),
    ))
}

/// `⋃_{i∈s} y_i`.
pub fn block_union(ys: &[FinSet], s: &FinSet) -> FinSet {
    s.ids()
        .filter_map(|i| ys.get(i as usize))
        .fold(FinSet::empty(), |acc, b| acc.union(b))
}

/// Lifts an index family along the blocks.
pub fn lift_family(ys: &[FinSet], z: &SetFamily) -> SetFamily {
    z.iter().map(|s| block_union(ys, s)).collect()
}

/// `{{y, z} : y ∈ Z \ {z}}`.
pub fn star_family(zs: &FinSet, z: crate::finset::Atom) -> Result<SetFamily> {
    if !zs.contains(z) {
        return Err(Error::invalid(format!("{z} is not in {zs}")));
    }
    if zs.len() < 2 {
        return Err(Error::invalid("need at least two points"));
    }
    Ok(zs
        .iter()
        .filter(|&y| y != z)
        .map(|y| FinSet::from_iter([y, z]))
        .collect())
}

/// Output of the grid Schur pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fs3Family {
    pub triple: SchurTriple,
    pub n: u64,
    pub k: u64,
    pub shape: GridShape,
    pub family: SetFamily,
    pub colour: Colour,
}

/// Finds a Schur triple among the even numbers up to `bound` for the
/// cardinality colouring `g`, and builds `size` sets on the grid, each a
/// shared row-0 prefix of length `n` plus a private length-`k` segment in
/// its own row, so that every sum of one, two or three of them has size
/// `n + k`, `2k` or `n + 3k`.
pub fn schur_to_fs3<G>(g: G, bound: u64, shape: GridShape, size: usize) -> Result<Fs3Family>
where
    G: Fn(u64) -> Colour + Send + Sync + Clone + 'static,
{
    if size < 1 {
        return Err(Error::invalid("family size must be positive"));
    }
    let triple = schur_triple(bound, &g)
        .ok_or_else(|| Error::NotFound(format!("no Schur triple among evens up to {bound}")))?;
    let (n, k) = schur_decompose(triple.m_prime, triple.m)?;
    if shape.cols < n + k || shape.rows < size as u64 + 1 {
        return Err(Error::invalid(format!(
            "grid {}x{} too small: need {} rows and {} columns",
            shape.rows,
            shape.cols,
            size + 1,
            n + k
        )));
    }
    let prefix: Vec<_> = (0..n).map(|j| shape.atom(0, j)).collect::<Result<_>>()?;
    let family: SetFamily = (1..=size as u64)
        .map(|i| {
            let seg = (n..n + k)
                .map(|j| shape.atom(i, j))
                .collect::<Result<Vec<_>>>()?;
            Ok(prefix.iter().copied().chain(seg).collect::<FinSet>())
        })
        .collect::<Result<Vec<_>>>()?
        .into();

    let members = family.members();
    let identities = members.iter().all(|x| x.len() as u64 == n + k)
        && members
            .iter()
            .tuple_combinations()
            .all(|(x, y)| x.sym_diff(y).len() as u64 == 2 * k)
        && members
            .iter()
            .tuple_combinations()
            .all(|(x, y, z)| x.sym_diff(y).sym_diff(z).len() as u64 == n + 3 * k);
    if !identities {
        return Err(Error::VerificationFailed("cardinality identities".into()));
    }
    let by_size = Colouring::from_fn(
        "by-cardinality",
        Domain::range(shape.atom_count(), Arity::Finite),
        move |x| g(x.len() as u64),
    );
    let sums = fs_up_to(&family, 3)?;
    match is_monochromatic(&by_size, &sums)? {
        Some(colour) if colour == triple.colour => Ok(Fs3Family {
            triple,
            n,
            k,
            shape,
            family,
            colour,
        }),
        _ => Err(Error::VerificationFailed(
            "FS_<=3 is not monochromatic".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    fn fam(sets: &[&[u64]]) -> SetFamily {
        sets.iter().map(|s| set(s)).collect()
    }

    #[test]
    fn injectivity_examples() {
        let v = cardinality_injectivity_check(&fam(&[&[1, 2], &[3, 4]]))
            .unwrap()
            .unwrap();
        assert_eq!(v.witnesses, vec![set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(v.colours, vec![Colour::One, Colour::One, Colour::Zero]);
        assert!(v.reverify());
        assert_eq!(
            cardinality_injectivity_check(&fam(&[&[1], &[2, 3], &[4, 5, 6, 7]])).unwrap(),
            None
        );
        assert_eq!(
            cardinality_injectivity_check(&fam(&[&[1, 2]])).unwrap(),
            None
        );
        assert!(cardinality_injectivity_check(&fam(&[&[1, 2], &[2, 3]])).is_err());
    }

    #[test]
    fn fs4_examples() {
        let v = fs4_mono_check(&fam(&[&[1, 2], &[3, 4]])).unwrap().unwrap();
        assert!(v.reverify());
        let v = fs4_mono_check(&fam(&[&[1], &[1, 2]])).unwrap().unwrap();
        assert_eq!(v.witnesses, vec![set(&[1]), set(&[1, 2])]);
        assert!(v.reverify());
        assert_eq!(fs4_mono_check(&fam(&[&[1, 2, 3]])).unwrap(), None);
        assert!(fs4_mono_check(&fam(&[&[]])).is_err());
    }

    #[test]
    fn empty_sum_is_skipped() {
        // {1,2} △ {2,3} △ {1,3} = ∅
        let y = fam(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(fs_up_to(&y, 3).unwrap().contains(&FinSet::empty()));
        assert_eq!(fs4_mono_check(&y).unwrap(), None);
    }

    #[test]
    fn count_bound_examples() {
        let p = RamseyProvider::default();
        let y = fam(&[&[1, 2, 3]]);
        assert_eq!(fs4_count_bound(&y, 3, &p).unwrap(), None);
        assert!(fs4_count_bound(&fam(&[&[1, 2], &[3, 4]]), 2, &p).is_err());
    }

    #[test]
    fn petals() {
        let ys = [
            set(&[0, 1, 2]),
            set(&[0, 1, 3]),
            set(&[0, 1, 4]),
            set(&[0, 1, 5]),
        ];
        let (a, b) = petal_sums(&ys).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 2);
        assert_ne!(
            log2_colouring(&a).unwrap(),
            log2_colouring(&a.sym_diff(&b)).unwrap()
        );
    }

    #[test]
    fn induction_step_examples() {
        let p = RamseyProvider::default();
        // {1,2} △ {1,3} △ {1,4} = {1,2,3,4} has colour 0, the pairs colour 1
        let star = fam(&[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(matches!(
            fs4_induction_step(&star, 2, 0, &p),
            Err(Error::InvalidInput(_))
        ));
        let disjoint = fam(&[&[1], &[2], &[3], &[4]]);
        assert!(fs4_induction_step(&disjoint, 1, 1, &p).is_err());
        assert!(fs4_induction_step(&disjoint, 1, 0, &p).is_err());

        let y = fam(&[
            &[0, 1, 3, 4, 5, 7, 9, 13, 14, 16],
            &[0, 1, 3, 4, 5, 6, 9, 10, 12, 15],
            &[0, 1, 3, 4, 5, 7, 10, 13, 14, 16],
            &[0, 1, 2, 5, 7, 11, 12, 13, 14, 15],
        ]);
        assert_eq!(fs4_mono_check(&y).unwrap(), None);
        let step = fs4_induction_step(&y, 10, 1, &p).unwrap().unwrap();
        assert_eq!(step.y0, set(&[0, 1, 2, 5, 7, 11, 12, 13, 14, 15]));
        assert_eq!(step.r, set(&[0, 1, 5, 7, 13, 14]));
        assert_eq!(step.subfamily.len(), 2);
        for (a, b) in step.subfamily.iter().tuple_combinations() {
            assert!(a.intersection(b).len() > step.r.len());
        }
    }

    #[test]
    fn pushforward_examples() {
        let c = Colouring::log2(10);
        let d = pushforward_colouring(&c, &[set(&[1]), set(&[2])]).unwrap();
        assert_eq!(d.colour(&set(&[0])).unwrap(), Colour::Zero);
        assert_eq!(d.colour(&set(&[0, 1])).unwrap(), Colour::One);
        let k = Colouring::constant(10, Colour::One);
        let d = pushforward_colouring(&k, &[set(&[1, 2]), set(&[5])]).unwrap();
        for s in [set(&[]), set(&[0]), set(&[1]), set(&[0, 1])] {
            assert_eq!(d.colour(&s).unwrap(), Colour::One);
        }
        assert!(matches!(
            pushforward_colouring(&c, &[set(&[11])]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn star_examples() {
        let s = star_family(&set(&[1, 2, 3]), crate::finset::Atom(1)).unwrap();
        assert_eq!(s.members(), &[set(&[1, 2]), set(&[1, 3])]);
        assert_eq!(
            fs_up_to(&s, 2).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );
        assert_eq!(
            star_family(&set(&[4, 9]), crate::finset::Atom(9))
                .unwrap()
                .len(),
            1
        );
        assert!(star_family(&set(&[4]), crate::finset::Atom(4)).is_err());
        assert!(star_family(&set(&[4, 5]), crate::finset::Atom(6)).is_err());
    }

    #[test]
    fn schur_pipeline_log_parity() {
        let g = |x: u64| Colour::from_bit(x.ilog2() % 2 == 1);
        let out = schur_to_fs3(g, 64, GridShape::new(5, 8).unwrap(), 4).unwrap();
        assert_eq!(out.triple.values(), [2, 8, 10]);
        assert_eq!((out.n, out.k), (7, 1));
        assert_eq!(out.family.len(), 4);
        assert!(schur_to_fs3(g, 64, GridShape::new(4, 8).unwrap(), 4).is_err());
    }

    #[test]
    fn schur_pipeline_constant() {
        let out = schur_to_fs3(|_| Colour::Zero, 12, GridShape::new(4, 4).unwrap(), 3).unwrap();
        assert_eq!(out.triple.values(), [2, 4, 6]);
        assert_eq!((out.n, out.k), (3, 1));
    }
}
