use lkit::chart::{derive_hurwitz, derive_hurwitz_seeded, edge_identity_check, sigma_chart, validate, Counts};
use lkit::moves::factory::{factory, four_loop_example, relator_star, FactoryName};
use lkit::signature::i_g;
use lkit::symplectic::eval_word;
use lkit::words::RelatorId;

fn names(g: usize) -> Vec<FactoryName> {
    let mut v = vec![FactoryName::RC, FactoryName::RCMirror, FactoryName::RL, FactoryName::RLMirror];
    for i in 0..=2 * g {
        v.push(FactoryName::L0(i));
    }
    for h in 1..=g / 2 {
        v.push(FactoryName::Lh(h));
        v.push(FactoryName::LhMirror(h));
    }
    v
}

#[test]
fn factory_sigmas() {
    for g in 3..=4 {
        let s = |n| sigma_chart(&factory(n, g).unwrap()).unwrap();
        assert_eq!(s(FactoryName::RC), -6);
        assert_eq!(s(FactoryName::RCMirror), 6);
        assert_eq!(s(FactoryName::RL), -1);
        assert_eq!(s(FactoryName::RLMirror), 1);
        assert_eq!(s(FactoryName::Lh(1)), 7);
        assert_eq!(s(FactoryName::LhMirror(1)), -7);
        assert_eq!(s(FactoryName::L0(2)), 0);
    }
    assert_eq!(sigma_chart(&factory(FactoryName::Lh(2), 4).unwrap()).unwrap(), 23);
}

#[test]
fn factories_agree_with_their_hurwitz_systems() {
    for g in 3..=4 {
        for n in names(g) {
            let c = factory(n, g).unwrap();
            let r = validate(&c);
            assert!(r.ok, "{n}: {:?}", r.diagnostics);
            assert!(edge_identity_check(&Counts::of(&c)), "{n}");
            let f = derive_hurwitz(&c).unwrap();
            assert_eq!(i_g(f.word()), sigma_chart(&c).unwrap(), "{n} g={g}");
        }
    }
}

#[test]
fn every_relator_star_is_valid() {
    let g = 3;
    for r in RelatorId::all(g) {
        for sign in [1, -1] {
            let c = relator_star(g, r, sign).unwrap();
            let rep = validate(&c);
            assert!(rep.ok, "{r} {sign}: {:?}", rep.diagnostics);
            assert!(edge_identity_check(&Counts::of(&c)), "{r}");
            let f = derive_hurwitz(&c).unwrap();
            assert_eq!(i_g(f.word()), sigma_chart(&c).unwrap(), "{r} {sign}");
        }
    }
}

#[test]
fn four_loop_example_reads_back() {
    let ex = four_loop_example().unwrap();
    let c = &ex.chart;
    assert_eq!(c.vertices.iter().filter(|v| v.kind.is_white()).count(), 3);
    assert_eq!(validate(c).faces, 5);
    let f = derive_hurwitz(c).unwrap();
    assert_eq!(f.len(), 4);
    assert!(eval_word(f.word()).is_identity());
    let s = sigma_chart(c).unwrap();
    assert_eq!(i_g(f.word()), s);
    for seed in 0..8 {
        let f2 = derive_hurwitz_seeded(c, Some(seed)).unwrap();
        assert_eq!(i_g(f2.word()), s);
    }
}

#[test]
fn relator_star_reads_its_relator() {
    use lkit::symplectic::{to_twists, ClassTable};
    use lkit::words::expand_relator;
    let g = 3;
    let table = ClassTable::standard(g);
    for r in RelatorId::all(g) {
        let want = to_twists(&expand_relator(r, g).unwrap(), &table).unwrap();
        let got = derive_hurwitz(&relator_star(g, r, 1).unwrap()).unwrap();
        assert!(got.word().is_cyclic_permutation_of(&want), "{r}");
        let got = derive_hurwitz(&relator_star(g, r, -1).unwrap()).unwrap();
        assert!(got.word().is_cyclic_permutation_of(&want.inverse()), "{r}^-1");
    }
}
