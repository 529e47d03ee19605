mod common;

use std::collections::BTreeMap;

use common::random_f_matrix;
use fanforge::fan_search::{enumerate_pseudofans, enumerate_sf, FanMatrix};
use fanforge::groebner_fan::{fan_from_initial_ideal, stanley_reisner};
use fanforge::linalg::{integer_kernel_basis, same_row_lattice};
use fanforge::report::Input;
use fanforge::secondary::{area_accounting, bunch_of_fan, movable_cone, nef_cones};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f_matrix(max_n: usize, max_m: usize) -> impl Strategy<Value = FanMatrix> {
    any::<u64>().prop_map(move |s| random_f_matrix(&mut ChaCha8Rng::seed_from_u64(s), max_n, max_m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sf_fans_are_complete_simplicial_fans(v in f_matrix(3, 6)) {
        let sf = enumerate_sf(&v, true).unwrap();
        let pseudo = enumerate_pseudofans(&v).unwrap();
        prop_assert!(!sf.is_empty());
        for f in &sf {
            prop_assert!(pseudo.contains(f));
            f.check(&v).unwrap();
            let mut walls: BTreeMap<_, usize> = BTreeMap::new();
            for c in f.max_cones() {
                prop_assert_eq!(c.len(), v.n());
                for j in c.iter() {
                    *walls.entry(c.without(j)).or_default() += 1;
                }
            }
            // every wall of a complete fan separates exactly two cones
            prop_assert!(walls.values().all(|&k| k == 2));
            prop_assert!((0..v.m()).all(|j| f.max_cones().iter().any(|c| c.contains(j))));
        }
    }

    #[test]
    fn stanley_reisner_round_trip(v in f_matrix(3, 6)) {
        for f in enumerate_sf(&v, true).unwrap() {
            let sr = stanley_reisner(&f, v.m());
            prop_assert!(sr.is_squarefree());
            prop_assert_eq!(fan_from_initial_ideal(&sr, &v).unwrap(), f);
        }
    }

    #[test]
    fn gale_dual_is_nonnegative_kernel_basis(v in f_matrix(3, 6)) {
        let input = Input::from_v(v.clone()).unwrap();
        let q = input.q.matrix();
        prop_assert!(v.matrix().mul(&q.transpose()).is_zero());
        prop_assert!(same_row_lattice(q, &integer_kernel_basis(v.matrix())));
        prop_assert!(input.q.is_nonnegative());
    }

    #[test]
    fn bunches_and_chambers(v in f_matrix(3, 6)) {
        let input = Input::from_v(v.clone()).unwrap();
        let q = &input.q;
        let sf = enumerate_sf(&v, true).unwrap();
        let nef = nef_cones(&sf, q);
        let mov = movable_cone(q);
        for (f, c) in sf.iter().zip(&nef) {
            let b = bunch_of_fan(f, q);
            prop_assert!(b.is_bunch().unwrap());
            prop_assert!(b.covers_column_deletions(q));
            prop_assert!(mov.contains_cone(c));
        }
        if q.r() == 3 {
            let acc = area_accounting(&nef, q).unwrap();
            prop_assert!(acc.holds(), "{:?}", acc);
        }
        prop_assert!(q.anticanonical_class().iter().all(|x| x.is_positive()));
    }
}
