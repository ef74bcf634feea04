mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use pathint::graph::VertexId;
use pathint::integral::Signature;
use pathint::PathMap;

fn start(rng: &mut impl Rng, g: &pathint::Digraph) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduction_is_confluent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 1..=5, 0.45);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let canonical = alpha.reduce();
        prop_assert!(canonical.is_reduced());
        prop_assert_eq!(canonical.reduce(), canonical.clone());
        for _ in 0..3 {
            prop_assert_eq!(random_order_reduce(&mut rng, &alpha), canonical.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_an_anti_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 1..=5, 0.45);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=6);
        let beta = random_path(&mut rng, &g, alpha.end(), 0..=6);
        let lhs = alpha.concat(&beta).unwrap().inverse().reduce();
        let rhs = beta.inverse().concat(&alpha.inverse()).unwrap().reduce();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(alpha.inverse().inverse(), alpha);
    }

    #[test]
    fn elementary_equivalence_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 1..=5, 0.45);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=6);
        let beta = insert_detours(&mut rng, &alpha, 0..=2);
        let gamma = insert_detours(&mut rng, &beta, 0..=2);
        let other = extend_to(&random_path(&mut rng, &g, s, 0..=4), alpha.end());
        prop_assert!(alpha.elem_equivalent(&alpha).unwrap());
        prop_assert!(alpha.elem_equivalent(&beta).unwrap());
        prop_assert!(beta.elem_equivalent(&alpha).unwrap());
        prop_assert!(alpha.elem_equivalent(&gamma).unwrap());
        if let Some(other) = other {
            let ab = alpha.elem_equivalent(&other).unwrap();
            prop_assert_eq!(ab, other.elem_equivalent(&alpha).unwrap());
            prop_assert_eq!(ab, gamma.elem_equivalent(&other).unwrap());
        }
    }

    #[test]
    fn block_cancellation_matches_single_steps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 1..=5, 0.45);
        let s = start(&mut rng, &g);
        let beta = random_path(&mut rng, &g, s, 0..=4);
        let gamma = random_path(&mut rng, &g, beta.end(), 0..=4);
        let delta = random_path(&mut rng, &g, beta.end(), 0..=4);
        let long = beta.concat(&gamma).unwrap().concat(&gamma.inverse()).unwrap().concat(&delta).unwrap();
        let short = beta.concat(&delta).unwrap();
        prop_assert_eq!(long.reduce(), short.reduce());
    }

    #[test]
    fn push_forward_yields_valid_paths(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 1..=4, 0.4);
        let h = random_digraph(&mut rng, 1..=4, 0.7);
        if let Some(f) = random_map(&mut rng, &g, &h) {
            let s = start(&mut rng, &g);
            let alpha = random_path(&mut rng, &g, s, 0..=6);
            let image = alpha.push_forward(&f).unwrap();
            prop_assert_eq!(image.len(), alpha.len());
            let rebuilt = PathMap::new(&h, image.vertices().to_vec(), image.orientations().to_vec());
            prop_assert!(rebuilt.is_ok());
            prop_assert_eq!(image.start(), f.image(alpha.start()));
        }
    }

    #[test]
    fn equivalence_matches_integrals(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, 2..=4, 0.5);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=4);
        let beta = if rng.gen_bool(0.5) {
            insert_detours(&mut rng, &alpha, 1..=2)
        } else {
            match extend_to(&random_path(&mut rng, &g, s, 0..=3), alpha.end()) {
                Some(b) => b,
                None => alpha.clone(),
            }
        };
        let n = alpha.reduce().len() + beta.reduce().len();
        prop_assume!(n <= 6);
        let depth = n.max(1);
        let (sa, sb) = (Signature::of(&alpha, depth), Signature::of(&beta, depth));
        let same = (1..=depth).all(|k| sa.level(k) == sb.level(k));
        prop_assert_eq!(alpha.elem_equivalent(&beta).unwrap(), same);
    }
}

#[test]
fn forward_steps_on_a_double_edge_do_not_cancel() {
    let d = pathint::fixtures::double_edge();
    let loop_ff = PathMap::new(&d, vec![VertexId(0), VertexId(1), VertexId(0)], vec![pathint::Orientation::Forward; 2]).unwrap();
    assert!(loop_ff.is_reduced());
    assert!(!loop_ff.elem_equivalent(&PathMap::trivial(&d, VertexId(0))).unwrap());
}
