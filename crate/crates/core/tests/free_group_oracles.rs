mod common;

use gtcrypt::conjugacy::{
    centralizer_gen, conj_search, meet_cyclic_cosets, meet_cyclic_cosets_bounded, scsp_solve, ConjugacySystem,
    CosetMeet,
};
use gtcrypt::stallings::{build_core, membership};
use gtcrypt::{Alphabet, Rng, Word, WordTuple};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng as _;

use common::*;

#[test]
fn membership_matches_product_enumeration() {
    let mut rng = Rng::new(11);
    for case in 0..300 {
        let rank = 2 + case % 2;
        let a = Alphabet::new(rank).unwrap();
        let k = rng.gen_range(2..=3);
        let gens = quarter_tuple(&a, k, 4, 8, &mut rng);
        // Each factor keeps at least three letters, so words of length at
        // most 12 are products of at most four factors.
        let oracle = products_up_to(&gens, 4);
        let g = build_core(&gens);
        for _ in 0..20 {
            let w = match rng.gen_range(0..3) {
                0 => random_product(&gens, 3, &mut rng),
                1 => perturb(&random_product(&gens, 3, &mut rng), rank, &mut rng),
                _ => a.random_word(rng.gen_range(0..=12), &mut rng),
            };
            if w.len() > 12 {
                continue;
            }
            assert_eq!(membership(&g, &w), oracle.contains(&w), "gens {gens:?} word {w:?}");
        }
    }
}

#[test]
fn short_products_are_members_for_arbitrary_tuples() {
    let mut rng = Rng::new(12);
    let a = Alphabet::new(3).unwrap();
    for _ in 0..200 {
        let gens = a.random_tuple(rng.gen_range(1..=4), 1, 6, &mut rng).unwrap();
        let g = build_core(&gens);
        for w in products_up_to(&gens, 2) {
            assert!(g.contains(&w));
        }
    }
}

#[test]
fn express_round_trips() {
    let mut rng = Rng::new(13);
    let a = Alphabet::new(2).unwrap();
    for _ in 0..500 {
        let gens = a.random_tuple(rng.gen_range(1..=4), 1, 8, &mut rng).unwrap();
        let g = build_core(&gens);
        let nb = g.nielsen_basis();
        let w = random_product(&gens, 6, &mut rng);
        let e = g.express(&nb, &w).unwrap();
        assert_eq!(e.evaluate(&gens).unwrap(), w);
    }
}

#[test]
fn folding_is_independent_of_generator_order() {
    let mut rng = Rng::new(14);
    let a = Alphabet::new(3).unwrap();
    for _ in 0..300 {
        let gens = a.random_tuple(rng.gen_range(2..=5), 1, 8, &mut rng).unwrap();
        let mut shuffled = gens.words().to_vec();
        shuffled.shuffle(&mut rng);
        let (g1, g2) = (build_core(&gens), build_core(&WordTuple(shuffled)));
        assert_eq!(g1.to_json(), g2.to_json());
        assert_eq!(g1.rank(), g2.rank());
    }
}

#[test]
fn scsp_agrees_with_brute_force() {
    let ball = Alphabet::new(2).unwrap().ball(5);
    let mut rng = Rng::new(15);
    for _ in 0..1500 {
        let pairs = random_system(&mut rng);
        let brute = brute_conjugators(&pairs, &ball);
        let sol = scsp_solve(&ConjugacySystem::new(pairs.clone()).unwrap());
        let in_ball = ball.iter().filter(|x| sol.contains(x)).count();
        assert_eq!(in_ball, brute.len(), "{pairs:?}");
        for x in &brute {
            assert!(sol.contains(x), "{pairs:?} misses {x:?}");
        }
        if let Some(x) = sol.witness() {
            assert!(pairs.iter().all(|(u, v)| u.conjugate(&x) == *v));
        }
    }
}

#[test]
fn fast_meet_agrees_with_enumeration() {
    let a = Alphabet::new(2).unwrap();
    let mut rng = Rng::new(16);
    for _ in 0..2000 {
        let u1 = a.random_word(rng.gen_range(1..=5), &mut rng);
        let u2 = a.random_word(rng.gen_range(1..=5), &mut rng);
        if u1.is_identity() || u2.is_identity() {
            continue;
        }
        let (r1, r2) = (centralizer_gen(&u1).unwrap(), centralizer_gen(&u2).unwrap());
        let d1 = a.random_ball_word(4, &mut rng);
        // Half the time force a common point.
        let d2 = if rng.gen_bool(0.5) {
            let m = rng.gen_range(-3..=3);
            let k = rng.gen_range(-3..=3);
            r2.pow(-k).multiply(&r1.pow(m)).multiply(&d1)
        } else {
            a.random_ball_word(4, &mut rng)
        };
        let fast = meet_cyclic_cosets(&r1, &d1, &r2, &d2).unwrap();
        let slow = meet_cyclic_cosets_bounded(&r1, &d1, &r2, &d2).unwrap();
        match (&fast, &slow) {
            (CosetMeet::Single(x), CosetMeet::Single(y)) => assert_eq!(x, y),
            _ => assert_eq!(fast, slow),
        }
    }
}

fn word_strategy(rank: i32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max).prop_map(|v| {
        Word::from_signed(&v.into_iter().map(|(g, s)| if s { g } else { -g }).collect::<Vec<_>>()).unwrap()
    })
}

proptest! {
    #[test]
    fn conj_search_finds_conjugator(u in word_strategy(3, 10), x in word_strategy(3, 8)) {
        prop_assume!(!u.is_identity());
        let v = u.conjugate(&x);
        let y = conj_search(&u, &v).unwrap();
        prop_assert_eq!(u.conjugate(&y), v);
    }

    #[test]
    fn membership_is_closed_under_products(
        gens in prop::collection::vec(word_strategy(2, 6), 1..4),
        picks in prop::collection::vec((0usize..4, any::<bool>()), 0..6),
    ) {
        let t = WordTuple(gens);
        let g = build_core(&t);
        let mut w = Word::identity();
        for (i, s) in picks {
            let f = &t.words()[i % t.size()];
            w = w.multiply(&if s { f.clone() } else { f.inverse() });
        }
        prop_assert!(g.contains(&w));
        prop_assert!(g.contains(&w.inverse()));
    }
}

proptest! {
    #[test]
    fn quarter_condition_implies_free_basis(gens in prop::collection::vec(word_strategy(2, 8), 1..4)) {
        prop_assume!(gens.iter().all(|g| !g.is_identity()));
        let t = WordTuple(gens);
        if gtcrypt::stallings::lambda_condition(&t, 0.25).unwrap() {
            prop_assert!(gtcrypt::stallings::has_free_basis(&t));
        }
    }
}
