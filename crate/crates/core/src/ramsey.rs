//! Small Ramsey numbers, monochromatic-subset search, the `F(n, k)`
//! recursion, Schur triples and finite-unions family search.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::colouring::{Arity, Colour, Colouring};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet, SetFamily};

/// How much trust an answer carries. Ordered from strongest to weakest, so
/// combining answers is `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// Backed by exhaustive enumeration.
    Exact,
    /// A published constant stored in the table.
    ExactFromTable,
    UpperBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::ExactFromTable => "exact-from-table",
            Exactness::UpperBound => "upper-bound",
        })
    }
}

/// An arbitrary-precision quantity. Values too large to write down are
/// kept as a lower bound on the quantity actually defined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Magnitude {
    #[serde(serialize_with = "decimal")]
    Value(BigUint),
    #[serde(serialize_with = "decimal")]
    AtLeast(BigUint),
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl Magnitude {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Value(v) => Some(v),
            Magnitude::AtLeast(_) => None,
        }
    }

    pub fn lower(&self) -> &BigUint {
        match self {
            Magnitude::Value(v) | Magnitude::AtLeast(v) => v,
        }
    }

    /// True iff the quantity is certainly greater than `x`.
    pub fn exceeds(&self, x: &BigUint) -> bool {
        self.lower() > x
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Value(v) => write!(f, "{v}"),
            Magnitude::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Answer {
    pub value: Magnitude,
    pub exactness: Exactness,
}

/// Binomials above this `m` are not materialised.
const MATERIALISE_LIMIT: u64 = 4096;

/// Diagonal two-colour Ramsey numbers `R(m)`: a table for small `m`, the
/// bound `C(2m-2, m-1)` above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyProvider {
    table: BTreeMap<u64, (u64, Exactness)>,
}

impl Default for RamseyProvider {
    fn default() -> Self {
        let table = BTreeMap::from([
            (1, (1, Exactness::Exact)),
            (2, (2, Exactness::Exact)),
            (3, (6, Exactness::Exact)),
            (4, (18, Exactness::ExactFromTable)),
        ]);
        RamseyProvider { table }
    }
}

impl RamseyProvider {
    /// Drops table entries above `max_m`, forcing the binomial bound there.
    pub fn restricted(max_m: u64) -> Self {
        let mut p = RamseyProvider::default();
        p.table.retain(|&m, _| m <= max_m);
        p
    }

    pub fn max_tabled(&self) -> u64 {
        self.table.keys().next_back().copied().unwrap_or(0)
    }

    pub fn ramsey(&self, m: &BigUint) -> Result<Answer> {
        if m.is_zero() {
            return Err(Error::invalid("R(m) needs m >= 1"));
        }
        if let Some(&(v, exactness)) = m.to_u64().and_then(|m| self.table.get(&m)) {
            return Ok(Answer {
                value: Magnitude::Value(BigUint::from(v)),
                exactness,
            });
        }
        let value = match m.to_u64() {
            Some(small) if small <= MATERIALISE_LIMIT => {
                Magnitude::Value(binomial(2 * small - 2, small - 1))
            }
            _ => Magnitude::AtLeast(m.clone()),
        };
        Ok(Answer {
            value,
            exactness: Exactness::UpperBound,
        })
    }
}

pub fn ramsey_number(m: u64, provider: &RamseyProvider) -> Result<Answer> {
    provider.ramsey(&BigUint::from(m))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `F(n, 0) = 4`, `F(n, k+1) = 2^n (R(F(n, k)) - 1) + 2`.
pub fn f_bound(n: u64, k: u64, provider: &RamseyProvider) -> Result<Answer> {
    if n == 0 {
        return Err(Error::invalid("F(n, k) needs n >= 1"));
    }
    let scale = BigUint::one() << n;
    let mut value = Magnitude::Value(BigUint::from(4u32));
    let mut exactness = Exactness::Exact;
    for _ in 0..k {
        value = match value {
            Magnitude::Value(f) => {
                let r = provider.ramsey(&f)?;
                exactness = exactness.max(r.exactness);
                match r.value {
                    Magnitude::Value(r) => Magnitude::Value(&scale * (r - 1u32) + 2u32),
                    Magnitude::AtLeast(_) => Magnitude::AtLeast(&scale * (f - 1u32) + 2u32),
                }
            }
            // R(m) >= m
            Magnitude::AtLeast(f) => {
                exactness = Exactness::UpperBound;
                Magnitude::AtLeast(&scale * (f - 1u32) + 2u32)
            }
        };
    }
    Ok(Answer { value, exactness })
}

/// `R(m)` by brute force over every colouring of `[M]^2`, for `m <= 3`.
/// Returns the number together with a colouring of `[R(m)-1]^2` (as its
/// colour-1 edge list) with no monochromatic `m`-set.
pub fn ramsey_by_enumeration(m: usize) -> Result<(u64, Vec<(u64, u64)>)> {
    if m == 0 || m > 3 {
        return Err(Error::invalid(
            "exhaustive Ramsey search is limited to m <= 3",
        ));
    }
    let mut witness = Vec::new();
    for size in m.. {
        let edges: Vec<(usize, usize)> = (0..size).tuple_combinations().collect();
        let cliques: Vec<u64> = (0..size)
            .combinations(m)
            .map(|vs| {
                vs.iter()
                    .tuple_combinations()
                    .map(|(&a, &b)| 1u64 << edges.iter().position(|&e| e == (a, b)).unwrap())
                    .fold(0, |acc, bit| acc | bit)
            })
            .collect();
        let full = if edges.len() == 64 {
            u64::MAX
        } else {
            (1u64 << edges.len()) - 1
        };
        let avoider = (0..=full)
            .into_par_iter()
            .find_first(|&mask| cliques.iter().all(|&k| mask & k != k && mask & k != 0));
        match avoider {
            Some(mask) => {
                witness = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &(a, b))| (a as u64, b as u64))
                    .collect();
            }
            None => return Ok((size as u64, witness)),
        }
    }
    unreachable!()
}

/// The Paley colouring of `[{0..q-1}]^2`: `{a, b}` has colour 1 iff `b - a`
/// is a nonzero square mod `q`. `q` must be a prime `≡ 1 (mod 4)`.
pub fn paley_colouring(q: u64) -> Result<Colouring> {
    let prime = q >= 5
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d));
    if !prime || q % 4 != 1 {
        return Err(Error::invalid(format!(
            "{q} is not a prime congruent to 1 mod 4"
        )));
    }
    let squares: Vec<bool> = {
        let mut s = vec![false; q as usize];
        for x in 1..q {
            s[(x * x % q) as usize] = true;
        }
        s
    };
    Ok(Colouring::pairs(format!("paley-{q}"), q, move |a, b| {
        Colour::from_bit(squares[((b + q - a) % q) as usize])
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoSubset {
    pub set: FinSet,
    pub colour: Colour,
}

/// Outcome of one top-level branch of a budgeted search.
enum Branch<T> {
    Found(T, u64),
    Absent(u64),
    Exhausted(u64),
}

impl<T> Branch<T> {
    fn explored(&self) -> u64 {
        match self {
            Branch::Found(_, e) | Branch::Absent(e) | Branch::Exhausted(e) => *e,
        }
    }
}

/// Reduces per-branch results, listed in lexicographic branch order with
/// both colours per branch, to the least witness. Budget exhaustion in a
/// branch that could still hold a smaller witness makes the result
/// inconclusive.
fn reduce<T: Ord>(groups: Vec<[Result<Branch<T>>; 2]>) -> Result<Option<(T, Colour)>> {
    let mut explored = 0;
    let mut answer = None;
    let mut inconclusive = false;
    for group in groups {
        let mut best: Option<(T, Colour)> = None;
        for (branch, colour) in group.into_iter().zip([Colour::Zero, Colour::One]) {
            let branch = branch?;
            explored += branch.explored();
            match branch {
                Branch::Found(t, _) => {
                    if best.as_ref().is_none_or(|(b, _)| t < *b) {
                        best = Some((t, colour));
                    }
                }
                Branch::Exhausted(_) => inconclusive = true,
                Branch::Absent(_) => {}
            }
        }
        if answer.is_none() && !inconclusive {
            answer = best;
        }
    }
    match answer {
        Some(a) => Ok(Some(a)),
        None if inconclusive => Err(Error::BudgetExceeded { explored }),
        None => Ok(None),
    }
}

struct MonoSearch<'a> {
    c: &'a Colouring,
    atoms: &'a [Atom],
    n: usize,
    m: usize,
    colour: Colour,
    budget: Option<u64>,
    nodes: u64,
    chosen: Vec<usize>,
}

impl MonoSearch<'_> {
    fn compatible(&self, i: usize) -> Result<bool> {
        if self.chosen.len() + 1 < self.n {
            return Ok(true);
        }
        for combo in self.chosen.iter().combinations(self.n - 1) {
            let x: FinSet = combo
                .into_iter()
                .map(|&j| self.atoms[j])
                .chain([self.atoms[i]])
                .collect();
            if self.c.colour(&x)? != self.colour {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Ok(None)` on budget exhaustion.
    fn dfs(&mut self, start: usize) -> Result<Option<bool>> {
        if self.chosen.len() == self.m {
            return Ok(Some(true));
        }
        let last = self.atoms.len() - (self.m - self.chosen.len());
        for i in start..=last {
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Ok(None);
            }
            if self.compatible(i)? {
                self.chosen.push(i);
                match self.dfs(i + 1)? {
                    Some(false) => {}
                    other => return Ok(other),
                }
                self.chosen.pop();
            }
        }
        Ok(Some(false))
    }
}

/// Lexicographically least `m`-subset of the ground set all of whose
/// `n`-subsets share a colour (ties between colours go to 0). The search is
/// complete; `budget` caps the nodes explored in each top-level branch.
pub fn find_mono_subset(
    c: &Colouring,
    m: usize,
    budget: Option<u64>,
) -> Result<Option<MonoSubset>> {
    find_mono_subset_with(c, m, budget, None)
}

/// As [`find_mono_subset`], optionally restricted to one colour.
pub fn find_mono_subset_with(
    c: &Colouring,
    m: usize,
    budget: Option<u64>,
    only: Option<Colour>,
) -> Result<Option<MonoSubset>> {
    let n = match c.arity() {
        Arity::Exactly(n) if n >= 1 => n,
        _ => {
            return Err(Error::invalid(
                "expected a colouring of n-subsets with n >= 1",
            ))
        }
    };
    let atoms = c.ground().atoms();
    if m < n || m > atoms.len() {
        return Err(Error::invalid(format!(
            "target size {m} must lie between {n} and {}",
            atoms.len()
        )));
    }
    let groups: Vec<[Result<Branch<FinSet>>; 2]> = (0..=atoms.len() - m)
        .into_par_iter()
        .map(|first| {
            [Colour::Zero, Colour::One].map(|colour| {
                if only.is_some_and(|o| o != colour) {
                    return Ok(Branch::Absent(0));
                }
                let mut s = MonoSearch {
                    c,
                    atoms,
                    n,
                    m,
                    colour,
                    budget,
                    nodes: 1,
                    chosen: Vec::new(),
                };
                if !s.compatible(first)? {
                    return Ok(Branch::Absent(1));
                }
                s.chosen.push(first);
                Ok(match s.dfs(first + 1)? {
                    Some(true) => {
                        let set = s.chosen.iter().map(|&j| atoms[j]).collect();
                        Branch::Found(set, s.nodes)
                    }
                    Some(false) => Branch::Absent(s.nodes),
                    None => Branch::Exhausted(s.nodes),
                })
            })
        })
        .collect();
    Ok(reduce(groups)?.map(|(set, colour)| MonoSubset { set, colour }))
}

/// `{m, m', m + m'}` with `m < m'`, all even and one colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurTriple {
    pub m: u64,
    pub m_prime: u64,
    pub colour: Colour,
}

impl SchurTriple {
    pub fn sum(&self) -> u64 {
        self.m + self.m_prime
    }

    pub fn values(&self) -> [u64; 3] {
        [self.m, self.m_prime, self.sum()]
    }
}

/// Least `(m, m')` with `m < m'` even, `m + m' <= bound` and
/// `d(m) = d(m') = d(m + m')`.
pub fn schur_triple<F>(bound: u64, d: F) -> Option<SchurTriple>
where
    F: Fn(u64) -> Colour,
{
    (1..)
        .map(|i| 2 * i)
        .take_while(|m| 2 * m + 2 <= bound)
        .flat_map(|m| {
            (m + 2..)
                .step_by(2)
                .take_while(move |mp| m + mp <= bound)
                .map(move |mp| (m, mp))
        })
        .find(|&(m, mp)| d(m) == d(mp) && d(mp) == d(m + mp))
        .map(|(m, m_prime)| SchurTriple {
            m,
            m_prime,
            colour: d(m),
        })
}

/// Rewrites `{m, m', m + m'}` as `{n + k, 2k, n + 3k}` with `k = m'/2`,
/// `n = m - k`.
pub fn schur_decompose(m: u64, m_prime: u64) -> Result<(u64, u64)> {
    if !m.is_multiple_of(2) || !m_prime.is_multiple_of(2) || m_prime == 0 {
        return Err(Error::invalid("both values must be positive and even"));
    }
    let k = m_prime / 2;
    if m <= k {
        return Err(Error::invalid(format!(
            "m = {m} must exceed m'/2 = {k} so that n is positive"
        )));
    }
    Ok((m - k, k))
}

struct FuSearch<'a> {
    c: &'a Colouring,
    candidates: &'a [FinSet],
    s: usize,
    colour: Colour,
    budget: Option<u64>,
    nodes: u64,
    chosen: Vec<usize>,
    used: FinSet,
    unions: Vec<FinSet>,
}

impl FuSearch<'_> {
    /// New unions created by adding `y`, or `None` if one has the wrong colour.
    fn extend(&self, y: &FinSet) -> Result<Option<Vec<FinSet>>> {
        let mut fresh = Vec::with_capacity(self.unions.len() + 1);
        for u in std::iter::once(&FinSet::empty()).chain(&self.unions) {
            let v = u.union(y);
            if self.c.colour(&v)? != self.colour {
                return Ok(None);
            }
            fresh.push(v);
        }
        Ok(Some(fresh))
    }

    fn dfs(&mut self, start: usize) -> Result<Option<bool>> {
        if self.chosen.len() == self.s {
            return Ok(Some(true));
        }
        for i in start..self.candidates.len() {
            let y = &self.candidates[i];
            if !y.is_disjoint(&self.used) {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Ok(None);
            }
            if let Some(fresh) = self.extend(y)? {
                let keep = self.unions.len();
                let used = self.used.clone();
                self.unions.extend(fresh);
                self.used = self.used.union(y);
                self.chosen.push(i);
                match self.dfs(i + 1)? {
                    Some(false) => {}
                    other => return Ok(other),
                }
                self.chosen.pop();
                self.used = used;
                self.unions.truncate(keep);
            }
        }
        Ok(Some(false))
    }
}

/// Least family (members in increasing order, compared lexicographically) of
/// `s` pairwise-disjoint nonempty subsets of the ground set whose finite
/// unions all share a colour.
pub fn fu_family_search(
    c: &Colouring,
    s: usize,
    budget: Option<u64>,
) -> Result<Option<(SetFamily, Colour)>> {
    let ground = c.ground();
    if s == 0 || s > ground.len() {
        return Err(Error::invalid(format!(
            "family size {s} must lie between 1 and {}",
            ground.len()
        )));
    }
    if ground.len() > 20 {
        return Err(Error::invalid(
            "finite-unions search is limited to 20 atoms",
        ));
    }
    let mut candidates: Vec<FinSet> = (1..=ground.len())
        .flat_map(|k| ground.subsets_of_size(k).collect::<Vec<_>>())
        .collect();
    candidates.sort();
    let groups: Vec<[Result<Branch<Vec<FinSet>>>; 2]> = (0..candidates.len())
        .into_par_iter()
        .map(|first| {
            [Colour::Zero, Colour::One].map(|colour| {
                let mut f = FuSearch {
                    c,
                    candidates: &candidates,
                    s,
                    colour,
                    budget,
                    nodes: 1,
                    chosen: Vec::new(),
                    used: FinSet::empty(),
                    unions: Vec::new(),
                };
                let y = &candidates[first];
                let Some(fresh) = f.extend(y)? else {
                    return Ok(Branch::Absent(1));
                };
                f.unions = fresh;
                f.used = y.clone();
                f.chosen.push(first);
                Ok(match f.dfs(first + 1)? {
                    Some(true) => {
                        let members = f.chosen.iter().map(|&j| candidates[j].clone()).collect();
                        Branch::Found(members, f.nodes)
                    }
                    Some(false) => Branch::Absent(f.nodes),
                    None => Branch::Exhausted(f.nodes),
                })
            })
        })
        .collect();
    Ok(reduce(groups)?.map(|(members, colour)| (SetFamily::new(members), colour)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::Domain;

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_ramsey_values() {
        let p = RamseyProvider::default();
        let r2 = ramsey_number(2, &p).unwrap();
        assert_eq!(r2.value, Magnitude::Value(big(2)));
        assert_eq!(r2.exactness, Exactness::Exact);
        assert_eq!(
            ramsey_number(3, &p).unwrap().value,
            Magnitude::Value(big(6))
        );
        let r4 = ramsey_number(4, &p).unwrap();
        assert_eq!(r4.value, Magnitude::Value(big(18)));
        assert_eq!(r4.exactness, Exactness::ExactFromTable);
        let r5 = ramsey_number(5, &p).unwrap();
        assert_eq!(r5.value, Magnitude::Value(big(70)));
        assert_eq!(r5.exactness, Exactness::UpperBound);
        assert!(ramsey_number(0, &p).is_err());
    }

    #[test]
    fn ramsey_monotone() {
        let p = RamseyProvider::default();
        let values: Vec<BigUint> = (1..60)
            .map(|m| ramsey_number(m, &p).unwrap().value.lower().clone())
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn huge_arguments_are_not_materialised() {
        let p = RamseyProvider::default();
        let a = p.ramsey(&big(1_000_000)).unwrap();
        assert_eq!(a.value, Magnitude::AtLeast(big(1_000_000)));
        assert_eq!(a.exactness, Exactness::UpperBound);
    }

    #[test]
    fn f_bound_examples() {
        let p = RamseyProvider::default();
        let f70 = f_bound(7, 0, &p).unwrap();
        assert_eq!(f70.value, Magnitude::Value(big(4)));
        assert_eq!(f70.exactness, Exactness::Exact);
        let f11 = f_bound(1, 1, &p).unwrap();
        assert_eq!(f11.value, Magnitude::Value(big(36)));
        assert_eq!(f11.exactness, Exactness::ExactFromTable);
        assert_eq!(f_bound(2, 1, &p).unwrap().value, Magnitude::Value(big(70)));

        let r = RamseyProvider::restricted(3);
        let f = f_bound(1, 1, &r).unwrap();
        assert_eq!(f.value, Magnitude::Value(big(40)));
        assert_eq!(f.exactness, Exactness::UpperBound);
    }

    #[test]
    fn f_bound_grows_and_degrades() {
        let p = RamseyProvider::default();
        for n in 1..4 {
            for k in 0..4 {
                let f = f_bound(n, k, &p).unwrap();
                assert!(f.value.lower() >= &big(4));
                if k >= 2 {
                    assert_eq!(f.exactness, Exactness::UpperBound);
                }
            }
        }
        // F(1,2) = 2 (C(70,35) - 1) + 2
        assert_eq!(
            f_bound(1, 2, &p).unwrap().value,
            Magnitude::Value(binomial(70, 35) * 2u32)
        );
    }

    #[test]
    fn enumeration_confirms_table() {
        assert_eq!(ramsey_by_enumeration(1).unwrap().0, 1);
        assert_eq!(ramsey_by_enumeration(2).unwrap().0, 2);
        let (r3, witness) = ramsey_by_enumeration(3).unwrap();
        assert_eq!(r3, 6);
        // the witness on K5 has no monochromatic triangle
        let w = Colouring::pairs("w", 5, move |a, b| {
            Colour::from_bit(witness.contains(&(a, b)))
        });
        assert_eq!(find_mono_subset(&w, 3, None).unwrap(), None);
    }

    #[test]
    fn paley_17_has_no_mono_k4() {
        let c = paley_colouring(17).unwrap();
        assert_eq!(find_mono_subset(&c, 4, None).unwrap(), None);
        assert!(paley_colouring(7).is_err());
    }

    #[test]
    fn mono_subset_examples() {
        let k = Colouring::from_fn("k", Domain::range(7, Arity::Exactly(2)), |_| Colour::One);
        let r = find_mono_subset(&k, 4, None).unwrap().unwrap();
        assert_eq!(r.set, FinSet::range(4));
        assert_eq!(r.colour, Colour::One);

        let parity = Colouring::pairs("sum-parity", 6, |a, b| Colour::from_bit((a + b) % 2 == 1));
        let r = find_mono_subset(&parity, 3, None).unwrap().unwrap();
        assert_eq!(r.set, set(&[0, 2, 4]));
        assert_eq!(r.colour, Colour::Zero);

        let pentagon = Colouring::pairs("pentagon", 5, |a, b| {
            Colour::from_bit(matches!(b - a, 1 | 4))
        });
        assert_eq!(find_mono_subset(&pentagon, 3, None).unwrap(), None);
        assert!(find_mono_subset(&pentagon, 6, None).is_err());
    }

    #[test]
    fn mono_subset_budget() {
        let c = paley_colouring(17).unwrap();
        assert!(matches!(
            find_mono_subset(&c, 4, Some(3)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn schur_examples() {
        let t = schur_triple(12, |_| Colour::Zero).unwrap();
        assert_eq!(t.values(), [2, 4, 6]);
        let t = schur_triple(20, |x| Colour::from_bit((x / 2) % 2 == 1)).unwrap();
        assert_eq!(t.values(), [4, 8, 12]);
        assert_eq!(t.colour, Colour::Zero);
        let alternating = |x: u64| Colour::from_bit(matches!(x, 4 | 8));
        assert_eq!(schur_triple(8, alternating), None);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(schur_decompose(6, 4).unwrap(), (4, 2));
        assert_eq!(schur_decompose(4, 2).unwrap(), (3, 1));
        assert!(matches!(schur_decompose(2, 4), Err(Error::InvalidInput(_))));
        let (n, k) = schur_decompose(6, 4).unwrap();
        assert_eq!([n + k, 2 * k, n + 3 * k], [6, 4, 10]);
    }

    fn nonempty_table(n: u64, f: impl Fn(&FinSet) -> Colour) -> Colouring {
        let d = Domain::range(n, Arity::NonEmpty);
        let entries = d.enumerate().into_iter().map(|x| {
            let c = f(&x);
            (x, c)
        });
        Colouring::table(d, entries.collect()).unwrap()
    }

    #[test]
    fn fu_search_examples() {
        let zero = nonempty_table(2, |_| Colour::Zero);
        let (fam, col) = fu_family_search(&zero, 2, None).unwrap().unwrap();
        assert_eq!(fam.members(), &[set(&[0]), set(&[1])]);
        assert_eq!(col, Colour::Zero);

        let bad = nonempty_table(2, |x| Colour::from_bit(*x == set(&[1])));
        assert_eq!(fu_family_search(&bad, 2, None).unwrap(), None);
    }
}
