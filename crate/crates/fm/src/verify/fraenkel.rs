//! The first and second Fraenkel models, the block model and the dense chain.

use std::collections::BTreeMap;

use finlab_core::colouring::mod4_colouring;
use finlab_core::{Arity, Atom, Colour, Colouring, FinSet};
use serde::{Deserialize, Serialize};

use super::{build, colours_differ, legal_fixing, pass_if, swap_in, Report, Verdict, Witness};
use crate::aut::{apply_aut, complete_aut, PartialAut};
use crate::error::{FmError, Result};
use crate::hset::HSet;
use crate::model::{chain_atom, Model, ModelSpec, CHAIN_STEP};
use crate::support::{is_support, Symmetric};

fn encode_table(table: &[(FinSet, Colour)]) -> HSet {
    HSet::graph(
        table
            .iter()
            .map(|(x, c)| (HSet::of_atoms(x), HSet::colour(*c))),
    )
}

/// Recorded replay for a colouring of `n`-subsets of the atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RInfiniteWitness {
    pub model: ModelSpec,
    pub support: FinSet,
    pub arity: usize,
    pub table: Vec<(FinSet, Colour)>,
    /// The common colour on `A \ F`, if there is one.
    pub colour: Option<Colour>,
    /// A pair `(x, y)` of `n`-subsets of `A \ F` and a map fixing `F` with
    /// `pi[x] = y`, or a pair with different colours.
    pub sample: Option<(FinSet, FinSet)>,
    pub pi: Option<PartialAut>,
}

impl RInfiniteWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        if !is_support(&model, &self.support, &encode_table(&self.table))? {
            return Err(FmError::NotASupport(format!(
                "{} does not support the colouring",
                self.support
            )));
        }
        let table: BTreeMap<FinSet, Colour> = self.table.iter().cloned().collect();
        let rest = model.pool().difference(&self.support);
        let mut colours = rest
            .subsets_of_size(self.arity)
            .map(|x| table.get(&x).copied());
        let first = colours.next().flatten();
        let mono = colours.all(|c| c == first);
        if !mono {
            return Ok(Verdict::Fail);
        }
        if self.colour != first {
            return Ok(Verdict::Fail);
        }
        match (&self.sample, &self.pi) {
            (None, None) => Ok(Verdict::Pass),
            (Some((x, y)), Some(pi)) => {
                let ok = legal_fixing(&model, pi, &self.support)
                    && x.is_subset(&rest)
                    && y.is_subset(&rest)
                    && pi.image_of(x)? == *y
                    && table.get(x) == table.get(y);
                Ok(pass_if(ok))
            }
            _ => Ok(Verdict::Fail),
        }
    }
}

/// Checks that every two `n`-subsets of `A \ F` get the same colour, for a
/// colouring supported by `F` in the first Fraenkel model.
pub fn verify_first_fraenkel_rn(model: &Model, c: &Colouring, support: &FinSet) -> Result<Report> {
    if !matches!(model.spec(), ModelSpec::Fraenkel1 { .. }) {
        return Err(FmError::invalid(
            "r-infinite replays run in the first Fraenkel model",
        ));
    }
    let Arity::Exactly(n) = c.arity() else {
        return Err(FmError::invalid("expected a colouring of n-subsets"));
    };
    if *c.ground() != model.pool() {
        return Err(FmError::invalid(
            "colouring must be defined on the model's atoms",
        ));
    }
    let table: Vec<(FinSet, Colour)> = c.to_table()?.into_iter().collect();
    if !is_support(model, support, &encode_table(&table))? {
        return Err(FmError::NotASupport(format!(
            "{support} does not support {}",
            c.name()
        )));
    }
    let rest = model.pool().difference(support);
    let subsets: Vec<FinSet> = rest.subsets_of_size(n).collect();
    let mut w = RInfiniteWitness {
        model: *model.spec(),
        support: support.clone(),
        arity: n,
        table,
        colour: None,
        sample: None,
        pi: None,
    };
    let (Some(x), Some(y)) = (subsets.first(), subsets.last()) else {
        return Ok(
            Report::new(Verdict::Pass, Witness::RInfinite(w)).note("A \\ F has fewer than n atoms")
        );
    };
    let cx = c.colour(x)?;
    if let Some(z) = subsets.iter().find(|z| c.colour(z).ok() != Some(cx)) {
        w.sample = Some((x.clone(), z.clone()));
        return Ok(Report::new(Verdict::Fail, Witness::RInfinite(w)));
    }
    // x_i -> y_i, then send y \ x back onto x \ y so the map is a bijection
    let mut pi = PartialAut::identity(support);
    for (a, b) in x.iter().zip(y.iter()) {
        pi.insert(a, b)?;
    }
    for (a, b) in y.difference(x).iter().zip(x.difference(y).iter()) {
        pi.insert(a, b)?;
    }
    w.colour = Some(cx);
    w.sample = Some((x.clone(), y.clone()));
    w.pi = Some(complete_aut(model, &pi, &FinSet::empty())?);
    Ok(Report::new(Verdict::Pass, Witness::RInfinite(w))
        .note("orbit transitivity on [A \\ F]^n only; amorphousness of A is not asserted"))
}

/// Recorded replay of the sum-of-three argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H3Witness {
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
    pub sum: FinSet,
    pub colours: [Colour; 2],
}

fn family_atoms(family: &Symmetric) -> FinSet {
    family
        .representatives()
        .iter()
        .fold(FinSet::empty(), |acc, x| acc.union(&x.atoms()))
}

/// `p` maps the family onto itself: for listed members by direct image,
/// for orbit closures by membership of the image of `y`.
fn preserves(model: &Model, family: &Symmetric, p: &PartialAut, y: &FinSet) -> Result<bool> {
    match family {
        Symmetric::Explicit { members, .. } => {
            let full = complete_aut(model, p, &family_atoms(family))?;
            let whole = HSet::set(members.iter().cloned());
            Ok(apply_aut(&full, &whole)? == whole)
        }
        Symmetric::Orbit { .. } => family.contains(model, &HSet::of_atoms(&p.image_of(y)?)),
    }
}

impl H3Witness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        self.family.check_support(&model)?;
        let f = self.family.support();
        let ok = self.family.contains(&model, &HSet::of_atoms(&self.y))?
            && self.y.contains(self.a)
            && !f.contains(self.a)
            && legal_fixing(&model, &self.pi, f)
            && legal_fixing(&model, &self.sigma, f)
            && self.pi.image_of(&self.y)? == self.z
            && self.sigma.image_of(&self.y)? == self.w
            && preserves(&model, &self.family, &self.pi, &self.y)?
            && preserves(&model, &self.family, &self.sigma, &self.y)?;
        let sum = self.y.sym_diff(&self.z).sym_diff(&self.w);
        let colours = [mod4_colouring(&self.y), mod4_colouring(&sum)];
        Ok(pass_if(
            ok && sum == self.sum
                && sum.len() == self.y.len() + 2
                && colours == self.colours
                && colours_differ(colours),
        ))
    }
}

/// Two fresh atoms that can stand in for `a` in `y`, fixing `F ∪ y \ {a}`.
fn fresh_pair(model: &Model, y: &FinSet, f: &FinSet, a: Atom) -> Result<(Atom, Atom)> {
    let taken = y.union(f);
    let pick = |pool: FinSet| -> Result<(Atom, Atom)> {
        let mut it = pool.difference(&taken).atoms().to_vec().into_iter();
        match (it.next(), it.next()) {
            (Some(b), Some(c)) => Ok((b, c)),
            _ => Err(FmError::NoExtension(format!(
                "fewer than two fresh atoms next to {a}"
            ))),
        }
    };
    match model.spec() {
        ModelSpec::Fraenkel1 { .. } => pick(model.pool()),
        ModelSpec::OmegaFraenkel { .. } => pick(model.block(model.block_of(a).unwrap())),
        ModelSpec::Mostowski { named } => {
            let fixed = taken.without(a);
            let lo = fixed.iter().rfind(|&x| x < a).map_or(0, |x| x.id());
            let hi = fixed.iter().find(|&x| x > a).map(|x| x.id());
            let inside = |x: u64| x > lo && hi.is_none_or(|h| x < h);
            let mut found: Vec<Atom> = (0..*named)
                .map(chain_atom)
                .filter(|x| inside(x.id()) && !taken.contains(*x))
                .take(2)
                .collect();
            // fill up with dyadic points between a and its upper neighbour
            let mut upper = hi.unwrap_or(a.id().saturating_add(CHAIN_STEP));
            while found.len() < 2 {
                if upper - a.id() < 2 {
                    return Err(FmError::NoExtension(format!("no room next to {a}")));
                }
                let mid = a.id() + (upper - a.id()) / 2;
                found.push(Atom(mid));
                upper = mid;
            }
            found.sort();
            Ok((found[0], found[1]))
        }
        _ => Err(FmError::invalid(
            "h3 replays cover fraenkel1, omega-fraenkel and mostowski",
        )),
    }
}

/// Replays the argument that a symmetric family of sets of atoms has two
/// members `z, w` with `y △ z △ w` two atoms larger than `y`, so its sums of
/// three change colour under `|x| mod 4`.
pub fn verify_h3_witness(model: &Model, family: &Symmetric) -> Result<Report> {
    family.check_support(model)?;
    let f = family.support();
    let y = family
        .representatives()
        .iter()
        .filter_map(HSet::as_atom_set)
        .find(|y| !y.is_subset(f))
        .ok_or_else(|| FmError::invalid("no member of the family escapes its support"))?;
    let a = y.difference(f).least().unwrap();
    let (b, c) = fresh_pair(model, &y, f, a)?;
    let fixed = y.union(f);
    let pi = complete_aut(model, &swap_in(&fixed, a, b)?, &FinSet::empty())?;
    let sigma = complete_aut(model, &swap_in(&fixed, a, c)?, &FinSet::empty())?;
    let z = pi.image_of(&y)?;
    let w = sigma.image_of(&y)?;
    let sum = y.sym_diff(&z).sym_diff(&w);
    let colours = [mod4_colouring(&y), mod4_colouring(&sum)];
    let witness = H3Witness {
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
        sum,
        colours,
    };
    let verdict = witness.replay()?;
    Ok(Report::new(verdict, Witness::H3(witness)))
}

/// Recorded replay of the obstruction to a symmetric choice function on
/// the pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RussellWitness {
    pub model: ModelSpec,
    /// `(m, g(m))` with `g(m) ∈ P_m`.
    pub choice: Vec<(u64, Atom)>,
    pub support: FinSet,
    pub pair: Option<u64>,
    pub moved: Option<HSet>,
    /// Every atom set of at most this size was checked and is not a support.
    pub bound: usize,
    pub refuted: usize,
}

fn encode_choice(choice: &[(u64, Atom)]) -> HSet {
    HSet::graph(
        choice
            .iter()
            .map(|&(m, a)| (HSet::numeral(m), HSet::Atom(a))),
    )
}

fn swap_pair(m: u64) -> PartialAut {
    PartialAut::new([
        (Atom(2 * m), Atom(2 * m + 1)),
        (Atom(2 * m + 1), Atom(2 * m)),
    ])
    .expect("a transposition is injective")
}

fn refute_small_supports(model: &Model, g: &HSet, bound: usize) -> Result<(usize, Option<FinSet>)> {
    let mut refuted = 0;
    for size in 0..=bound {
        for e in model.pool().subsets_of_size(size) {
            if is_support(model, &e, g)? {
                return Ok((refuted, Some(e)));
            }
            refuted += 1;
        }
    }
    Ok((refuted, None))
}

impl RussellWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        check_choice(&model, &self.choice)?;
        let g = encode_choice(&self.choice);
        if self.choice.is_empty() {
            return Ok(Verdict::Absent);
        }
        let Some(n) = self.pair else {
            let all_touched = self.choice.iter().all(|&(m, _)| {
                self.support.contains(Atom(2 * m)) || self.support.contains(Atom(2 * m + 1))
            });
            return Ok(if all_touched {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            });
        };
        let swap = swap_pair(n);
        let untouched =
            !self.support.contains(Atom(2 * n)) && !self.support.contains(Atom(2 * n + 1));
        let defined = self.choice.iter().any(|&(m, _)| m == n);
        let moved = apply_aut(&complete_aut(&model, &swap, &g.atoms())?, &g)?;
        let (refuted, small) = refute_small_supports(&model, &g, self.bound)?;
        if small.is_some() {
            return Ok(Verdict::Inconclusive);
        }
        Ok(pass_if(
            untouched
                && defined
                && moved != g
                && Some(&moved) == self.moved.as_ref()
                && refuted == self.refuted,
        ))
    }
}

fn check_choice(model: &Model, choice: &[(u64, Atom)]) -> Result<()> {
    let ModelSpec::Fraenkel2 { pairs } = *model.spec() else {
        return Err(FmError::invalid(
            "the choice obstruction runs in the second Fraenkel model",
        ));
    };
    let mut seen = FinSet::empty();
    for &(m, a) in choice {
        if m >= pairs || a.id() / 2 != m {
            return Err(FmError::invalid(format!("g({m}) = {a} is not in pair {m}")));
        }
        if seen.contains(Atom(m)) {
            return Err(FmError::invalid(format!("g is defined twice on {m}")));
        }
        seen = seen.with(Atom(m));
    }
    Ok(())
}

/// Shows that `support` does not support the choice function `g` by
/// swapping an untouched pair in its domain, and that no atom set of size
/// at most `bound` supports `g` either.
pub fn russell_obstruction(
    model: &Model,
    choice: &BTreeMap<u64, Atom>,
    support: &FinSet,
    bound: usize,
) -> Result<Report> {
    let choice: Vec<(u64, Atom)> = choice.iter().map(|(&m, &a)| (m, a)).collect();
    check_choice(model, &choice)?;
    support.iter().try_for_each(|a| model.check_atom(a))?;
    let mut w = RussellWitness {
        model: *model.spec(),
        choice,
        support: support.clone(),
        pair: None,
        moved: None,
        bound,
        refuted: 0,
    };
    if w.choice.is_empty() {
        return Ok(Report::new(Verdict::Absent, Witness::Russell(w))
            .note("vacuous: the empty function is supported by the empty set"));
    }
    let g = encode_choice(&w.choice);
    let Some(n) = w
        .choice
        .iter()
        .map(|&(m, _)| m)
        .find(|&m| !support.contains(Atom(2 * m)) && !support.contains(Atom(2 * m + 1)))
    else {
        return Ok(Report::new(Verdict::Inconclusive, Witness::Russell(w))
            .note("every pair in the domain of g meets the support"));
    };
    let moved = apply_aut(&complete_aut(model, &swap_pair(n), &g.atoms())?, &g)?;
    let (refuted, small) = refute_small_supports(model, &g, bound)?;
    w.pair = Some(n);
    w.moved = Some(moved);
    w.refuted = refuted;
    if let Some(e) = small {
        return Ok(Report::new(Verdict::Inconclusive, Witness::Russell(w))
            .note(format!("{e} supports g, so the size bound is too generous")));
    }
    let verdict = w.replay()?;
    Ok(Report::new(verdict, Witness::Russell(w)))
}

/// All selectors of the pairs `P_0 .. P_k`, in sorted order.
pub fn selectors(k: u64) -> Vec<FinSet> {
    let mut out: Vec<FinSet> = (0u64..1 << (k + 1))
        .map(|mask| (0..=k).map(|m| Atom(2 * m + (mask >> m & 1))).collect())
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFamilyWitness {
    pub model: ModelSpec,
    pub n: u64,
    pub bn: Vec<FinSet>,
    pub bn1: Vec<FinSet>,
    /// `f_n(B) = B \ P_{n+1}` for each `B ∈ B_{n+1}`.
    pub table: Vec<(FinSet, FinSet)>,
}

impl BFamilyWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        let ModelSpec::Fraenkel2 { pairs } = *model.spec() else {
            return Err(FmError::invalid(
                "selector families live in the second Fraenkel model",
            ));
        };
        if pairs < self.n + 2 {
            return Err(FmError::invalid("not enough pairs"));
        }
        let top = FinSet::from([2 * self.n + 2, 2 * self.n + 3]);
        let mut fibres: BTreeMap<&FinSet, usize> = BTreeMap::new();
        for (b, image) in &self.table {
            if !self.bn1.contains(b) || *image != b.difference(&top) || !self.bn.contains(image) {
                return Ok(Verdict::Fail);
            }
            *fibres.entry(image).or_default() += 1;
        }
        let ok = self.bn == selectors(self.n)
            && self.bn1 == selectors(self.n + 1)
            && self.bn.len() == 1 << (self.n + 1)
            && self.table.len() == self.bn1.len()
            && fibres.len() == self.bn.len()
            && fibres.values().all(|&k| k == 2);
        Ok(pass_if(ok))
    }
}

/// Builds `B_n` and `B_{n+1}` and checks that dropping the last pair is a
/// two-to-one surjection.
pub fn b_family(model: &Model, n: u64) -> Result<Report> {
    let ModelSpec::Fraenkel2 { pairs } = *model.spec() else {
        return Err(FmError::invalid(
            "selector families live in the second Fraenkel model",
        ));
    };
    if pairs < n + 2 || n > 16 {
        return Err(FmError::invalid(format!(
            "n = {n} needs pairs P_0..P_{} and at most 16",
            n + 1
        )));
    }
    let top = FinSet::from([2 * n + 2, 2 * n + 3]);
    let bn1 = selectors(n + 1);
    let table = bn1
        .iter()
        .map(|b| (b.clone(), b.difference(&top)))
        .collect();
    let w = BFamilyWitness {
        model: *model.spec(),
        n,
        bn: selectors(n),
        bn1,
        table,
    };
    let verdict = w.replay()?;
    Ok(Report::new(verdict, Witness::BFamily(w)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaHWitness {
    pub model: ModelSpec,
    pub seq: Vec<Vec<FinSet>>,
    pub support: FinSet,
    pub index: Option<usize>,
    pub a: Option<Atom>,
    pub b: Option<Atom>,
    pub moved: Option<HSet>,
}

fn seq_hsets(seq: &[Vec<FinSet>]) -> Vec<HSet> {
    seq.iter().map(HSet::of_family).collect()
}

fn union_of(fam: &[FinSet]) -> FinSet {
    fam.iter().fold(FinSet::empty(), |acc, x| acc.union(x))
}

impl OmegaHWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        let hs = seq_hsets(&self.seq);
        let first_escape = self
            .seq
            .iter()
            .position(|fam| !union_of(fam).is_subset(&self.support));
        let (Some(n), Some(a), Some(b)) = (self.index, self.a, self.b) else {
            return Ok(if first_escape.is_none() {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            });
        };
        let pi = PartialAut::new([(a, b), (b, a)])?;
        let full = complete_aut(&model, &pi, &hs[n].atoms().union(&self.support))?;
        let moved = apply_aut(&full, &hs[n])?;
        let ok = Some(n) == first_escape
            && union_of(&self.seq[n]).contains(a)
            && !self.support.contains(a)
            && !self.support.contains(b)
            && full.fixes_pointwise(&self.support)
            && moved != hs[n]
            && Some(&moved) == self.moved.as_ref();
        Ok(pass_if(ok))
    }
}

/// Replays why a sequence of finite subsets of the selector analogue has no
/// support in the block model: a transposition inside one block fixes `F`
/// but moves some term of the sequence.
pub fn omega_fraenkel_h_obstruction(
    model: &Model,
    seq: &[Vec<FinSet>],
    support: &FinSet,
) -> Result<Report> {
    if !matches!(model.spec(), ModelSpec::OmegaFraenkel { .. }) {
        return Err(FmError::invalid("this obstruction runs in the block model"));
    }
    let hs = seq_hsets(seq);
    let mut sorted = hs.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != hs.len() {
        return Err(FmError::invalid("the sequence repeats a term"));
    }
    for h in &hs {
        h.atoms().iter().try_for_each(|a| model.check_atom(a))?;
    }
    let mut w = OmegaHWitness {
        model: *model.spec(),
        seq: seq.to_vec(),
        support: support.clone(),
        index: None,
        a: None,
        b: None,
        moved: None,
    };
    let Some(n) = seq.iter().position(|fam| !union_of(fam).is_subset(support)) else {
        return Ok(Report::new(Verdict::Inconclusive, Witness::OmegaH(w))
            .note("every term lies inside the support"));
    };
    let un = union_of(&seq[n]);
    let a = un.difference(support).least().unwrap();
    let block = model.block(model.block_of(a).unwrap());
    let b = block
        .difference(&un.union(support))
        .least()
        .ok_or_else(|| FmError::NoExtension(format!("block of {a} has no fresh atom")))?;
    let pi = complete_aut(model, &PartialAut::new([(a, b), (b, a)])?, &hs[n].atoms())?;
    w.index = Some(n);
    w.a = Some(a);
    w.b = Some(b);
    w.moved = Some(apply_aut(&pi, &hs[n])?);
    let verdict = w.replay()?;
    Ok(Report::new(verdict, Witness::OmegaH(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use finlab_core::Domain;

    fn f1(n: u64) -> Model {
        Model::build(ModelSpec::Fraenkel1 { atoms: n }).unwrap()
    }

    #[test]
    fn r_infinite_examples() {
        let m = f1(10);
        let f = FinSet::from([0]);
        let meets = Colouring::from_fn("meets-F", Domain::range(10, Arity::Exactly(2)), move |x| {
            Colour::from_bit(x.contains(Atom(0)))
        });
        let r = verify_first_fraenkel_rn(&m, &meets, &f).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.reverify().unwrap());

        let parity =
            Colouring::from_fn("least-parity", Domain::range(10, Arity::Exactly(2)), |x| {
                Colour::from_bit(x.least().unwrap().id() % 2 == 1)
            });
        assert!(matches!(
            verify_first_fraenkel_rn(&m, &parity, &FinSet::empty()),
            Err(FmError::NotASupport(_))
        ));
        let constant =
            Colouring::constant(10, Colour::One).restricted(Domain::range(10, Arity::Exactly(3)));
        let r = verify_first_fraenkel_rn(&m, &constant, &FinSet::empty()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn h3_first_model() {
        let m = f1(6);
        let members: Vec<HSet> = FinSet::range(6)
            .subsets_of_size(2)
            .map(|x| HSet::of_atoms(&x))
            .collect();
        let fam = Symmetric::Explicit {
            members,
            support: FinSet::empty(),
        };
        let r = verify_h3_witness(&m, &fam).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::H3(w) = &r.witness else { panic!() };
        assert_eq!((w.a, w.b, w.c), (Atom(0), Atom(2), Atom(3)));
        assert_eq!(w.colours, [Colour::One, Colour::Zero]);

        let inside = Symmetric::Explicit {
            members: vec![HSet::of_atoms(&FinSet::from([1]))],
            support: FinSet::from([1]),
        };
        assert!(matches!(
            verify_h3_witness(&m, &inside),
            Err(FmError::InvalidInput(_))
        ));
    }

    #[test]
    fn h3_chain() {
        let m = Model::build(ModelSpec::Mostowski { named: 4 }).unwrap();
        let fam = Symmetric::Orbit {
            seeds: vec![HSet::of_atoms(&FinSet::from_iter([
                chain_atom(0),
                chain_atom(1),
            ]))],
            support: FinSet::empty(),
        };
        let r = verify_h3_witness(&m, &fam).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let json = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert!(back.reverify().unwrap());
    }

    #[test]
    fn russell_examples() {
        let m = Model::build(ModelSpec::Fraenkel2 { pairs: 6 }).unwrap();
        let g: BTreeMap<u64, Atom> = (0..5).map(|k| (k, Atom(2 * k))).collect();
        let r = russell_obstruction(&m, &g, &FinSet::empty(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::Russell(w) = &r.witness else {
            panic!()
        };
        assert_eq!(w.pair, Some(0));
        assert_eq!(w.refuted, 1 + 12 + 66);

        let one = BTreeMap::from([(0, Atom(0))]);
        let r = russell_obstruction(&m, &one, &FinSet::from([0, 1]), 0).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = russell_obstruction(&m, &BTreeMap::new(), &FinSet::empty(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Absent);
        assert!(r.reverify().unwrap());
    }

    #[test]
    fn selector_families() {
        let m = Model::build(ModelSpec::Fraenkel2 { pairs: 6 }).unwrap();
        for n in 0..=4 {
            let r = b_family(&m, n).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            let Witness::BFamily(w) = &r.witness else {
                panic!()
            };
            assert_eq!(w.bn.len(), 1 << (n + 1));
            assert_eq!(w.bn1.len(), 1 << (n + 2));
        }
        assert!(b_family(&m, 5).is_err());
    }

    #[test]
    fn omega_obstruction() {
        let m = Model::build(ModelSpec::OmegaFraenkel {
            blocks: 4,
            block_size: 6,
        })
        .unwrap();
        let b = FinSet::from([0, 6]);
        let r = omega_fraenkel_h_obstruction(&m, &[vec![b.clone()]], &FinSet::empty()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = omega_fraenkel_h_obstruction(&m, &[vec![b.clone()]], &b).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let small = Model::build(ModelSpec::OmegaFraenkel {
            blocks: 2,
            block_size: 2,
        })
        .unwrap();
        assert!(matches!(
            omega_fraenkel_h_obstruction(&small, &[vec![FinSet::from([0])]], &FinSet::from([1])),
            Err(FmError::NoExtension(_))
        ));
    }
}
