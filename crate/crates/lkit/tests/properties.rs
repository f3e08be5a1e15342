use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use lkit::chart::json::{from_json, to_json};
use lkit::chart::{derive_hurwitz_seeded, sigma_chart, validate, Chart, Counts};
use lkit::classifier::{invariants_of, stable_equivalent, Mode, Presentation};
use lkit::meyer::tau;
use lkit::moves::factory::{factory, four_loop_example, FactoryName};
use lkit::moves::{apply_move, candidate_moves, fiber_sum, isomorphic};
use lkit::signature::{conjugate_all, hurwitz_slide, i_g, Factorization, SlideDir};
use lkit::symplectic::{eval_gen, random_symplectic, to_twists, ClassTable, SpMatrix};
use lkit::words::{expand_relator, free_reduce, mirror, GenLetter, GenWord, RelatorId, Word};

const G: usize = 3;

/// Fixed unless `PROPTEST_RNG_SEED` is set.
fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x6c6b_6974), failure_persistence: None, ..Config::default() }
}

fn gen_word(max_len: usize) -> impl Strategy<Value = GenWord> {
    prop::collection::vec((0..=2 * G, prop::bool::ANY), 0..max_len).prop_map(|ls| {
        Word::new(G, ls.into_iter().map(|(i, pos)| GenLetter::new(i, if pos { 1 } else { -1 })).collect()).unwrap()
    })
}

/// Products of conjugated relators, closed by construction.
fn closed_word() -> impl Strategy<Value = GenWord> {
    let rels = RelatorId::all(G);
    let n = rels.len();
    prop::collection::vec((0..n, prop::bool::ANY, gen_word(4)), 1..4).prop_map(move |parts| {
        let mut w = GenWord::empty(G);
        for (k, pos, u) in parts {
            let r = expand_relator(rels[k], G).unwrap();
            let r = if pos { r } else { r.inverse() };
            w = w.concat(&u).concat(&r).concat(&u.inverse());
        }
        w
    })
}

fn matrix() -> impl Strategy<Value = SpMatrix> {
    (1usize..=3, 0usize..6, any::<u64>()).prop_map(|(g, n, seed)| random_symplectic(g, n, seed))
}

fn matrices(g: usize) -> impl Strategy<Value = (SpMatrix, SpMatrix, SpMatrix)> {
    (any::<u64>(), 0usize..6).prop_map(move |(seed, n)| {
        (random_symplectic(g, n, seed), random_symplectic(g, n + 1, seed ^ 1), random_symplectic(g, 3, seed ^ 2))
    })
}

fn small_chart() -> impl Strategy<Value = Chart> {
    prop_oneof![
        (0..=2 * G).prop_map(|i| factory(FactoryName::L0(i), G).unwrap()),
        Just(factory(FactoryName::Lh(1), G).unwrap()),
        Just(factory(FactoryName::LhMirror(1), G).unwrap()),
        Just(four_loop_example().unwrap().chart),
    ]
}

fn tuple(c: &Chart) -> lkit::signature::InvariantTuple {
    Counts::of(c).tuple(sigma_chart(c).unwrap())
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn free_reduction_is_idempotent_and_keeps_the_value(w in gen_word(24)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!(eval_gen(&r), eval_gen(&w));
        prop_assert!(r.letters().windows(2).all(|p| p[0] != lkit::words::Letter::inverse(&p[1])));
    }

    #[test]
    fn mirror_and_inverse_are_involutions(w in gen_word(24)) {
        prop_assert_eq!(mirror(&mirror(&w)), w.clone());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(eval_gen(&w.concat(&w.inverse())).is_identity());
    }

    #[test]
    fn evaluation_is_an_antihomomorphism(u in gen_word(12), v in gen_word(12)) {
        prop_assert_eq!(eval_gen(&u.concat(&v)), eval_gen(&v).mul(&eval_gen(&u)));
    }

    #[test]
    fn tau_is_normalized_and_symmetric(a in matrix(), seed in any::<u64>()) {
        let b = random_symplectic(a.g(), 4, seed);
        let id = SpMatrix::identity(a.g());
        prop_assert_eq!(tau(&id, &a).unwrap(), 0);
        prop_assert_eq!(tau(&a, &id).unwrap(), 0);
        prop_assert_eq!(tau(&a, &b).unwrap(), tau(&b, &a).unwrap());
        prop_assert_eq!(tau(&a, &a.inverse()).unwrap(), 0);
        prop_assert!(tau(&a, &b).unwrap().abs() <= 2 * a.g() as i64);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn tau_is_a_cocycle((a, b, c) in (1usize..=3).prop_flat_map(matrices)) {
        let t = |x: &SpMatrix, y: &SpMatrix| tau(x, y).unwrap();
        prop_assert_eq!(t(&a, &b) + t(&a.mul(&b), &c), t(&a, &b.mul(&c)) + t(&b, &c));
    }

    #[test]
    fn signature_survives_slides_and_conjugation(
        w in closed_word(),
        slides in prop::collection::vec((any::<prop::sample::Index>(), prop::bool::ANY), 0..12),
        u in gen_word(5),
    ) {
        let table = ClassTable::standard(G);
        let f = Factorization::from_gen(&w, 0).unwrap();
        let v = i_g(f.word());
        prop_assert_eq!(i_g(&mirror(f.word())), -v);
        let mut h = f.clone();
        if h.len() > 1 {
            for (i, right) in slides {
                let k = 1 + i.index(h.len() - 1);
                h = hurwitz_slide(&h, k, if right { SlideDir::Right } else { SlideDir::Left }).unwrap();
            }
        }
        prop_assert_eq!(i_g(h.word()), v);
        let c = conjugate_all(&f, &to_twists(&u, &table).unwrap()).unwrap();
        prop_assert_eq!(i_g(c.word()), v);
    }

    #[test]
    fn derived_signature_does_not_depend_on_the_tree(c in small_chart(), seed in any::<u64>()) {
        let f = derive_hurwitz_seeded(&c, Some(seed)).unwrap();
        prop_assert_eq!(i_g(f.word()), sigma_chart(&c).unwrap());
    }

    #[test]
    fn random_move_sequences_keep_the_invariants(
        c in small_chart(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4),
    ) {
        let before = tuple(&c);
        let mut cur = c;
        for p in picks {
            let moves = candidate_moves(&cur);
            prop_assert!(!moves.is_empty());
            let m = p.get(&moves).clone();
            cur = apply_move(&cur, &m).unwrap();
            prop_assert!(validate(&cur).ok, "{:?}", m);
            prop_assert_eq!(tuple(&cur), before.clone());
        }
        let back = from_json(&to_json(&cur).unwrap()).unwrap();
        prop_assert_eq!(&back, &cur);
        prop_assert!(isomorphic(&back, &cur));
    }
}

/// Fiber sums of a few pieces in a chosen order.
fn sum_of(pieces: &[usize]) -> Presentation {
    let names = [FactoryName::L0(1), FactoryName::Lh(1), FactoryName::RL, FactoryName::RLMirror, FactoryName::RC];
    let empty = lkit::formats::parse_word_line("", G).unwrap();
    let c = pieces
        .iter()
        .map(|&k| factory(names[k], G).unwrap())
        .fold(Chart::empty(G, lkit::chart::Flavor::Wajnryb), |acc, c| fiber_sum(&acc, &c, &empty).unwrap());
    c.into()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn stable_equivalence_is_an_equivalence_relation(
        a in prop::collection::vec(0usize..5, 0..3),
        b in prop::collection::vec(0usize..5, 0..3),
        c in prop::collection::vec(0usize..5, 0..3),
    ) {
        let (p, q, r) = (sum_of(&a), sum_of(&b), sum_of(&c));
        let eq = |x: &Presentation, y: &Presentation| stable_equivalent(x, y, Mode::Universal).unwrap().equivalent;
        prop_assert!(eq(&p, &p));
        prop_assert_eq!(eq(&p, &q), eq(&q, &p));
        if eq(&p, &q) && eq(&q, &r) {
            prop_assert!(eq(&p, &r));
        }
        prop_assert_eq!(eq(&p, &q), invariants_of(&p).unwrap() == invariants_of(&q).unwrap());
        let mut sorted = a.clone();
        sorted.sort();
        prop_assert!(eq(&p, &sum_of(&sorted)));
    }
}
