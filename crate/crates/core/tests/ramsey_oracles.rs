use std::collections::BTreeMap;

use finlab_core::colouring::{Arity, Colour, Colouring, Domain};
use finlab_core::finset::{fu, is_monochromatic, is_pairwise_disjoint, FinSet, SetFamily};
use finlab_core::ramsey::{
    find_mono_subset, fu_family_search, ramsey_by_enumeration, ramsey_number, schur_decompose,
    schur_triple, RamseyProvider,
};
use itertools::Itertools;
use proptest::prelude::*;

fn table_from_bits(n_ground: u64, arity: usize, bits: &[bool]) -> Colouring {
    let d = Domain::range(n_ground, Arity::Exactly(arity));
    let entries: BTreeMap<FinSet, Colour> = d
        .enumerate()
        .into_iter()
        .zip(bits.iter().cycle())
        .map(|(x, &b)| (x, Colour::from_bit(b)))
        .collect();
    Colouring::table(d, entries).unwrap()
}

/// Every `m`-subset in lexicographic order, checking both colours.
fn naive_mono(c: &Colouring, m: usize) -> Option<(FinSet, Colour)> {
    let n = match c.arity() {
        Arity::Exactly(n) => n,
        _ => unreachable!(),
    };
    c.ground()
        .atoms()
        .iter()
        .copied()
        .combinations(m)
        .find_map(|ys| {
            let y: FinSet = ys.into_iter().collect();
            let colours: Vec<Colour> = y
                .subsets_of_size(n)
                .map(|x| c.colour(&x).unwrap())
                .collect();
            if colours.iter().all(|&k| k == colours[0]) {
                Some((y, colours[0]))
            } else {
                None
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mono_search_matches_naive(
        ground in 3u64..=7,
        arity in 1usize..=3,
        extra in 0usize..=4,
        bits in proptest::collection::vec(any::<bool>(), 35),
    ) {
        prop_assume!(arity as u64 <= ground);
        let m = (arity + extra).min(ground as usize);
        let c = table_from_bits(ground, arity, &bits);
        let fast = find_mono_subset(&c, m, None).unwrap().map(|r| (r.set, r.colour));
        prop_assert_eq!(fast, naive_mono(&c, m));
    }
}

#[test]
fn small_ramsey_both_directions() {
    let p = RamseyProvider::default();
    for m in 1..=3 {
        let (r, witness) = ramsey_by_enumeration(m).unwrap();
        let table = ramsey_number(m as u64, &p).unwrap();
        assert_eq!(table.value.value().unwrap(), &r.into());
        if r > m as u64 {
            let w = Colouring::pairs("w", r - 1, move |a, b| {
                Colour::from_bit(witness.contains(&(a, b)))
            });
            assert_eq!(find_mono_subset(&w, m, None).unwrap(), None);
        }
    }
}

/// Oracle for Schur triples, scanning pairs in the opposite nesting.
fn schur_oracle(bound: u64, d: impl Fn(u64) -> Colour) -> Option<[u64; 3]> {
    let mut best: Option<[u64; 3]> = None;
    for mp in (2..=bound / 2).rev().map(|i| 2 * i) {
        for m in (2..mp).step_by(2) {
            if m + mp <= bound && d(m) == d(mp) && d(mp) == d(m + mp) {
                let t = [m, mp, m + mp];
                if best.is_none_or(|b| (t[0], t[1]) < (b[0], b[1])) {
                    best = Some(t);
                }
            }
        }
    }
    best
}

#[test]
fn schur_exhaustive_to_8() {
    let mut absent = 0;
    for mask in 0u32..16 {
        let d = |x: u64| Colour::from_bit(mask >> (x / 2 - 1) & 1 == 1);
        let found = schur_triple(8, d).map(|t| t.values());
        assert_eq!(found, schur_oracle(8, d));
        absent += usize::from(found.is_none());
    }
    assert!(absent > 0);
}

#[test]
fn schur_exhaustive_to_20_and_decomposes() {
    for mask in 0u32..1024 {
        let d = |x: u64| Colour::from_bit(mask >> (x / 2 - 1) & 1 == 1);
        let t = schur_triple(20, d).expect("every colouring of evens up to 20 has a triple");
        assert_eq!(Some(t.values()), schur_oracle(20, d));
        let (n, k) = schur_decompose(t.m_prime, t.m).unwrap();
        assert!(n >= 1 && k >= 1);
        let rebuilt = [n + k, 2 * k, n + 3 * k];
        assert!(rebuilt.iter().all(|v| v % 2 == 0));
        assert_eq!(rebuilt, [t.m_prime, t.m, t.sum()]);
        assert!(rebuilt.iter().all(|&v| d(v) == t.colour));
    }
}

fn nonempty_table(n: u64, mask: u64) -> Colouring {
    let d = Domain::range(n, Arity::NonEmpty);
    let entries = d
        .enumerate()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, Colour::from_bit(mask >> i & 1 == 1)))
        .collect();
    Colouring::table(d, entries).unwrap()
}

/// Direct check for a disjoint pair `{a, b}` with `a`, `b`, `a ∪ b` one colour.
fn pair_oracle(n: u64, colour_of: impl Fn(&FinSet) -> Colour) -> bool {
    let sets = Domain::range(n, Arity::NonEmpty).enumerate();
    sets.iter().tuple_combinations().any(|(a, b)| {
        a.is_disjoint(b) && {
            let c = colour_of(a);
            c == colour_of(b) && c == colour_of(&a.union(b))
        }
    })
}

#[test]
fn fu_pairs_threshold_exceeds_four() {
    for n in 1..=4u64 {
        let slots = (1u64 << n) - 1;
        let forward = (0..1u64 << slots).all(|mask| {
            let c = nonempty_table(n, mask);
            if n < 2 {
                return false;
            }
            match fu_family_search(&c, 2, None).unwrap() {
                Some((fam, colour)) => {
                    assert!(is_pairwise_disjoint(&fam));
                    assert_eq!(
                        is_monochromatic(&c, &fu(&fam).unwrap()).unwrap(),
                        Some(colour)
                    );
                    true
                }
                None => false,
            }
        });
        // reverse order, independent check
        let backward = (0..1u64 << slots).rev().all(|mask| {
            let c = nonempty_table(n, mask);
            pair_oracle(n, |x| c.colour(x).unwrap())
        });
        assert_eq!(forward, backward, "N = {n}");
        assert!(!forward, "N = {n} already forces a pair");
    }
}

#[test]
fn fu_search_agrees_with_oracle_per_colouring() {
    for mask in 0u64..1 << 7 {
        let c = nonempty_table(3, mask);
        let found = fu_family_search(&c, 2, None).unwrap().is_some();
        assert_eq!(
            found,
            pair_oracle(3, |x| c.colour(x).unwrap()),
            "mask {mask}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fu_results_verify(n in 3u64..=5, s in 1usize..=3, mask in any::<u64>()) {
        let c = nonempty_table(n, mask);
        if let Some((fam, colour)) = fu_family_search(&c, s, None).unwrap() {
            prop_assert_eq!(fam.len(), s);
            prop_assert!(is_pairwise_disjoint(&fam));
            prop_assert!(fam.iter().all(|y| !y.is_empty()));
            prop_assert_eq!(is_monochromatic(&c, &fu(&fam).unwrap()).unwrap(), Some(colour));
        }
    }
}

#[test]
fn fu_constant_takes_singletons() {
    let c = nonempty_table(4, 0);
    let (fam, _) = fu_family_search(&c, 3, None).unwrap().unwrap();
    assert_eq!(
        fam,
        SetFamily::new(vec![
            FinSet::from([0]),
            FinSet::from([1]),
            FinSet::from([2])
        ])
    );
}
