use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ire::extension::{apply_step_extension, invert_step_extension};
use ire::gluing::{glue_ire, BranchRule};
use ire::induction::{
    applicable_steps, apply_step, apply_step_scheme, dual_partner, image_steps, invert_step,
    invert_step_scheme,
};
use ire::io::{from_json, parse_input, to_json, tree_from_doc, tree_to_doc, DataDoc, Input};
use ire::realdata::{endpoint_space_basis, length_space_basis, lengths_from_endpoints};
use ire::sample::{
    random_endpoints, random_positive_extension, random_positive_lengths, random_scheme,
    random_single_bracket,
};
use ire::text::{format_two_row, parse_scheme, parse_two_row};
use ire::two_row::{from_two_row, to_two_row};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scheme_identities(seed in any::<u64>(), d in 1usize..=6) {
        let s = random_scheme(&mut rng(seed), d);
        let dual = s.dual();
        prop_assert_eq!(dual.dual(), s.clone());
        let n = s.cycle_count() as i64 + dual.cycle_count() as i64;
        let t = s.twists() + dual.twists();
        prop_assert_eq!(t, s.twists_total().unwrap());
        prop_assert_eq!(t + n, d as i64);
        prop_assert_eq!(t.rem_euclid(2), 0);
        prop_assert_eq!((n - d as i64).rem_euclid(2), 0);
        let back = s.turns().turns_back.len() + dual.turns().turns_back.len();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn length_space_dimension(seed in any::<u64>(), d in 1usize..=6) {
        let s = random_scheme(&mut rng(seed), d);
        let p = s.irreducible_components().count();
        let dx = endpoint_space_basis(&s).unwrap().dim;
        prop_assert_eq!(dx, d + p);
        prop_assert_eq!(length_space_basis(&s).unwrap().dim + s.cycle_count(), dx);
    }

    #[test]
    fn step_round_trips(seed in any::<u64>(), d in 2usize..=6) {
        let mut r = rng(seed);
        let s = random_scheme(&mut r, d);
        for st in applicable_steps(&s) {
            let s2 = apply_step_scheme(&s, &st).unwrap();
            prop_assert_eq!(invert_step_scheme(&s2, &st).unwrap(), s.clone());
            prop_assert_eq!(
                invert_step_scheme(&s.dual(), &dual_partner(&st)).unwrap(),
                s2.dual()
            );
        }
        for st in image_steps(&s) {
            let s0 = invert_step_scheme(&s, &st).unwrap();
            prop_assert_eq!(apply_step_scheme(&s0, &st).unwrap(), s.clone());
        }
        if let Some(v) = random_positive_lengths(&mut r, &s) {
            let x = random_endpoints(&mut r, &s, &v).unwrap();
            for st in applicable_steps(&s) {
                let (s2, x2) = apply_step(&s, &x, &st).unwrap();
                lengths_from_endpoints(&s2, &x2).unwrap();
                prop_assert_eq!(invert_step(&s2, &x2, &st).unwrap(), (s.clone(), x.clone()));
            }
        }
    }

    #[test]
    fn extension_steps_preserve_area(seed in any::<u64>(), d in 2usize..=5) {
        let e = random_positive_extension(&mut rng(seed), d);
        for st in applicable_steps(&e.scheme) {
            let e2 = apply_step_extension(&e, &st).unwrap();
            prop_assert_eq!(e2.area(), e.area());
            prop_assert_eq!(invert_step_extension(&e2, &st).unwrap(), e.clone());
        }
    }

    #[test]
    fn gluing_partitions_every_interval(seed in any::<u64>(), d in 2usize..=5) {
        let e = random_positive_extension(&mut rng(seed), d);
        for (s, x) in [(e.scheme.clone(), &e.x), (e.dual_scheme(), &e.y)] {
            let tree = glue_ire(&s, x, &BranchRule::Midpoint).unwrap();
            tree.check_partition().unwrap();
            let turn_forward = s.turns().turns_forward.len();
            prop_assert!(tree.branch_points.len() <= turn_forward);
            prop_assert_eq!(tree_from_doc(&tree_to_doc(&tree)).unwrap(), tree);
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), d in 2usize..=5) {
        let e = random_positive_extension(&mut rng(seed), d);
        let inputs = [
            Input::Scheme(e.scheme.clone()),
            Input::Ire(e.scheme.clone(), e.x.clone()),
            Input::Floating(e.scheme.clone(), e.v.clone()),
            Input::Extension(e.clone()),
            Input::FloatingExtension(e.floating()),
        ];
        for input in inputs {
            let text = to_json(&input.to_doc());
            let doc: DataDoc = from_json(&text).unwrap();
            prop_assert_eq!(Input::from_doc(&doc).unwrap(), input.clone());
            prop_assert_eq!(parse_input(&text).unwrap(), input);
        }
        prop_assert_eq!(parse_scheme(&e.scheme.to_string()).unwrap(), e.scheme.clone());
    }

    #[test]
    fn two_row_round_trip(seed in any::<u64>(), d in 1usize..=7) {
        let t = random_single_bracket(&mut rng(seed), d);
        let s = from_two_row(&t);
        prop_assert!(s.is_iet());
        prop_assert_eq!(parse_two_row(&format_two_row(&t)).unwrap(), t.clone());
        prop_assert_eq!(from_two_row(&to_two_row(&s).unwrap()), s);
    }
}
