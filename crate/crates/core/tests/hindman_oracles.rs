use finlab_core::colouring::{log2_colouring, Colour, Colouring, GridShape};
use finlab_core::finset::{fs_up_to, fu, is_monochromatic, Atom, FinSet, SetFamily};
use finlab_core::hindman::{
    fs4_count_bound, fs4_mono_check, lift_family, petal_sums, pushforward_colouring, schur_to_fs3,
    star_family,
};
use finlab_core::ramsey::{schur_triple, RamseyProvider};
use finlab_core::Error;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// No two disjoint members of equal size survive the `FS_{<=4}` check.
#[test]
fn fs4_mono_families_have_no_disjoint_equal_pair() {
    let ground = FinSet::range(10);
    let mut checked = 0;
    for n in 1..=3 {
        let sets: Vec<FinSet> = ground.subsets_of_size(n).collect();
        for size in 1..=3 {
            for combo in sets.iter().cloned().combinations(size) {
                let y = SetFamily::new(combo);
                if fs4_mono_check(&y).unwrap().is_none() {
                    checked += 1;
                    assert!(y
                        .members()
                        .iter()
                        .tuple_combinations()
                        .all(|(a, b)| !a.is_disjoint(b)));
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn random_mono_families_never_breach() {
    let p = RamseyProvider::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let atoms: Vec<u64> = (0..12).collect();
    let mut seen = 0;
    while seen < 200 {
        let n = rng.gen_range(1..=3);
        let members: Vec<FinSet> = (0..rng.gen_range(1..=4))
            .map(|_| FinSet::from_ids(atoms.choose_multiple(&mut rng, n).copied()))
            .unique()
            .collect();
        let y = SetFamily::new(members);
        if fs4_mono_check(&y).unwrap().is_some() {
            continue;
        }
        seen += 1;
        for k in 1..=3 {
            assert_eq!(fs4_count_bound(&y, k, &p).unwrap(), None);
        }
    }
}

#[test]
fn petal_sums_have_recomputed_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let core_size = rng.gen_range(0..4u64);
        let petal = rng.gen_range(1..4u64);
        let core = FinSet::range(core_size);
        let ys: Vec<FinSet> = (0..4)
            .map(|i| {
                let start = 100 + i * 10;
                core.union(&FinSet::from_ids(start..start + petal))
            })
            .collect();
        let ys: [FinSet; 4] = ys.try_into().unwrap();
        let n = (core_size + petal) as usize;
        let (a, b) = petal_sums(&ys).unwrap();
        assert_eq!(a.len(), 2 * (n - core_size as usize));
        assert_eq!(b.len(), a.len());
        assert!(a.is_disjoint(&b));
        // the colour of a sum of two differs from the sum of four
        assert_ne!(
            log2_colouring(&a).unwrap(),
            log2_colouring(&a.sym_diff(&b)).unwrap()
        );
    }
}

#[test]
fn pushforward_transfers_witnesses() {
    let blocks = [
        FinSet::from([0]),
        FinSet::from([1, 2]),
        FinSet::from([3, 4, 5]),
        FinSet::from([6, 7, 8, 9]),
    ];
    for c in [Colouring::log2(10), Colouring::mod4(10)] {
        let d = pushforward_colouring(&c, &blocks).unwrap();
        let index_sets: Vec<FinSet> = (1..=4)
            .flat_map(|k| FinSet::range(4).subsets_of_size(k).collect::<Vec<_>>())
            .collect();
        for size in 1..=3 {
            for z in index_sets.iter().cloned().combinations(size) {
                let z = SetFamily::new(z);
                if !z
                    .members()
                    .iter()
                    .tuple_combinations()
                    .all(|(a, b)| a.is_disjoint(b))
                {
                    continue;
                }
                let Some(colour) = is_monochromatic(&d, &fu(&z).unwrap()).unwrap() else {
                    continue;
                };
                let lifted = lift_family(&blocks, &z);
                assert_eq!(
                    is_monochromatic(&c, &fu(&lifted).unwrap()).unwrap(),
                    Some(colour)
                );
            }
        }
    }
}

#[test]
fn star_sums_stay_in_pairs() {
    for size in 2..=8u64 {
        let z = FinSet::range(size);
        for centre in z.iter() {
            let y = star_family(&z, centre).unwrap();
            assert_eq!(y.len() as u64, size - 1);
            for s in fs_up_to(&y, 2).unwrap() {
                assert_eq!(s.len(), 2);
                assert!(s.is_subset(&z));
            }
        }
    }
    assert!(star_family(&FinSet::range(3), Atom(5)).is_err());
}

#[test]
fn schur_pipeline_exhaustive() {
    let shape = GridShape::new(5, 20).unwrap();
    for mask in 0u32..1024 {
        let g = move |x: u64| {
            if x.is_multiple_of(2) && (2..=20).contains(&x) {
                Colour::from_bit(mask >> (x / 2 - 1) & 1 == 1)
            } else {
                Colour::Zero
            }
        };
        let oracle = schur_triple(20, g);
        match schur_to_fs3(g, 20, shape, 4) {
            Ok(out) => {
                assert_eq!(Some(out.triple), oracle);
                let sums = fs_up_to(&out.family, 3).unwrap();
                assert!(sums.iter().all(|s| g(s.len() as u64) == out.colour));
            }
            Err(Error::NotFound(_)) => assert_eq!(oracle, None),
            Err(e) => panic!("{e}"),
        }
    }
}
