mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use pathint::graph::VertexId;
use pathint::integral::{commutator, order, witness_word, word_integral};
use pathint::shuffle::pair_path;
use pathint::{iterated_integral, AlgebraElement, ArrowId, ArrowWord, Digraph, OneForm, Order, PathMap, Rational, ZeroForm};

fn setup(seed: u64) -> (ChaCha8Rng, Digraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_digraph(&mut rng, 2..=6, 0.45);
    (rng, g)
}

fn start(rng: &mut impl Rng, g: &Digraph) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count()))
}

fn order_value(o: Order) -> usize {
    match o {
        Order::Exactly(r) | Order::AtLeast(r) => r,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_direct_sum(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let r = rng.gen_range(0..=4);
        let word = random_word(&mut rng, &g, r);
        prop_assert_eq!(iterated_integral(&alpha, &word), direct_integral(&alpha, &word));
    }

    #[test]
    fn concatenation(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=5);
        let beta = random_path(&mut rng, &g, alpha.end(), 0..=5);
        let r = rng.gen_range(0..=4);
        let word = random_word(&mut rng, &g, r);
        let split: Rational = (0..=r)
            .map(|k| iterated_integral(&alpha, &word[..k]) * iterated_integral(&beta, &word[k..]))
            .sum();
        prop_assert_eq!(iterated_integral(&alpha.concat(&beta).unwrap(), &word), split);
    }

    #[test]
    fn inverse(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let r = rng.gen_range(0..=4);
        let word = random_word(&mut rng, &g, r);
        let reversed: Vec<OneForm> = word.iter().rev().cloned().collect();
        let value = iterated_integral(&alpha, &reversed);
        let expected = if r % 2 == 0 { value } else { -value };
        prop_assert_eq!(iterated_integral(&alpha.inverse(), &word), expected);
    }

    #[test]
    fn shuffle_product(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let r = rng.gen_range(0..=3);
        let t = rng.gen_range(0..=5 - r);
        let (u, v) = (random_word(&mut rng, &g, r), random_word(&mut rng, &g, t));
        let sum: Rational = interleavings(&u, &v).iter().map(|w| iterated_integral(&alpha, w)).sum();
        prop_assert_eq!(iterated_integral(&alpha, &u) * iterated_integral(&alpha, &v), sum);
    }

    #[test]
    fn exact_forms(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let f = ZeroForm::new((0..g.vertex_count()).map(|_| random_rational(&mut rng)).collect());
        let df = OneForm::new(g.arrows().map(|(_, s, t)| &f[t] - &f[s]).collect());
        prop_assert_eq!(iterated_integral(&alpha, std::slice::from_ref(&df)), &f[alpha.end()] - &f[alpha.start()]);
        if let Some(l) = close_up(&alpha) {
            prop_assert!(iterated_integral(&l, &[df]).is_zero());
        }
    }

    #[test]
    fn trivial_steps_at_every_position(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=6);
        let r = rng.gen_range(1..=4);
        let word = random_word(&mut rng, &g, r);
        let value = iterated_integral(&alpha, &word);
        for i in 0..=alpha.len() {
            prop_assert_eq!(iterated_integral(&alpha.insert_trivial(i).unwrap(), &word), value.clone());
        }
    }

    #[test]
    fn backtracks_vanish(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let beta = random_path(&mut rng, &g, s, 0..=3);
        let alpha = random_path(&mut rng, &g, beta.end(), 0..=3);
        let gamma = random_path(&mut rng, &g, beta.end(), 0..=3);
        let long = beta.concat(&alpha).unwrap().concat(&alpha.inverse()).unwrap().concat(&gamma).unwrap();
        let short = beta.concat(&gamma).unwrap();
        let r = rng.gen_range(0..=4);
        let word = random_word(&mut rng, &g, r);
        prop_assert_eq!(iterated_integral(&long, &word), iterated_integral(&short, &word));
    }

    #[test]
    fn constant_scaling(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 0..=8);
        let r = rng.gen_range(1..=4);
        let mut word = random_word(&mut rng, &g, r);
        let value = iterated_integral(&alpha, &word);
        let k = random_rational(&mut rng);
        // ω_r · c for the constant function c = k, taken pointwise on arrows.
        let c = ZeroForm::constant(&g, k.clone());
        word[r - 1] = OneForm::new(
            g.arrows().map(|(a, s, _)| &word[r - 1][a] * &c[s]).collect(),
        );
        prop_assert_eq!(iterated_integral(&alpha, &word), k * value);
    }

    #[test]
    fn reduced_paths_have_a_unit_witness(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let alpha = random_path(&mut rng, &g, s, 1..=8).reduce();
        prop_assume!(!alpha.is_empty());
        let value = word_integral(&alpha, &witness_word(&alpha));
        prop_assert_eq!(value.abs(), Rational::one());
    }

    #[test]
    fn filtration_additivity(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let s = start(&mut rng, &g);
        let loop_at = |rng: &mut ChaCha8Rng| close_up(&random_moving_path(rng, &g, s, 1..=4));
        let (Some(a), Some(b), Some(c)) = (loop_at(&mut rng), loop_at(&mut rng), loop_at(&mut rng)) else {
            return Ok(());
        };
        let alpha = if rng.gen_bool(0.5) { a } else { commutator(&a, &b).unwrap() };
        let beta = if rng.gen_bool(0.5) { c } else { commutator(&b, &c).unwrap() };
        let r = order_value(order(&alpha, 3));
        let t = order_value(order(&beta, 3));
        let top = (r + t - 1).min(4);
        let u = random_element(&mut rng, &g, top, 5);
        let u = u.sub(&AlgebraElement::term(ArrowWord::empty(), u.coefficient(&ArrowWord::empty())));
        let lhs = pair_path(&u, &alpha.concat(&beta).unwrap());
        prop_assert_eq!(lhs, pair_path(&u, &alpha) + pair_path(&u, &beta));
    }
}

#[test]
fn commutator_pairing_on_the_wedge() {
    let w = pathint::fixtures::wedge();
    let id = |n: &str| w.vertex(n).unwrap();
    let f = vec![pathint::Orientation::Forward; 4];
    let alpha = PathMap::new(&w, ["v0", "v1", "v2", "v3", "v0"].map(id).to_vec(), f.clone()).unwrap();
    let beta = PathMap::new(&w, ["v0", "u1", "u2", "u3", "v0"].map(id).to_vec(), f).unwrap();
    let c = commutator(&alpha, &beta).unwrap();
    let e = |a: &[usize]| AlgebraElement::word(ArrowWord::new(a.iter().map(|&i| ArrowId(i)).collect()));
    assert_eq!(pair_path(&e(&[0, 4]), &c), Rational::one());
    assert_eq!(pair_path(&e(&[4, 0]), &c), -Rational::one());
    assert!(pair_path(&e(&[0, 1]), &c).is_zero());
    assert_eq!(order(&c, 3), Order::Exactly(2));
    assert_eq!(order(&alpha, 3), Order::Exactly(1));
    assert_eq!(order(&PathMap::trivial(&w, VertexId(0)), 3), Order::AtLeast(4));
}
