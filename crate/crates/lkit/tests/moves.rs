use lkit::chart::{derive_hurwitz, sigma_chart, validate, Chart, ChartWord, Counts, Flavor, Label};
use lkit::formats::parse_word_line;
use lkit::moves::factory::{factory, four_loop_example, free_edge, FactoryName};
use lkit::moves::{
    apply_move, apply_move_report, apply_script, builtin_transitions, candidate_moves, fiber_sum, isomorphic,
    transition_check, Move, MoveScript,
};
use lkit::signature::i_g;
use lkit::words::RelatorId;

fn corpus() -> Vec<(String, Chart)> {
    let mut out = Vec::new();
    for n in [FactoryName::L0(1), FactoryName::Lh(1), FactoryName::RL, FactoryName::RLMirror, FactoryName::RC] {
        out.push((n.to_string(), factory(n, 3).unwrap()));
    }
    out.push(("four loops".into(), four_loop_example().unwrap().chart));
    out.push(("empty".into(), Chart::empty(3, Flavor::Wajnryb)));
    out
}

fn derived_ig(c: &Chart) -> i64 {
    i_g(derive_hurwitz(c).unwrap().word())
}

fn tuple(c: &Chart) -> lkit::signature::InvariantTuple {
    Counts::of(c).tuple(sigma_chart(c).unwrap())
}

fn word(s: &str) -> ChartWord {
    parse_word_line(s, 3).unwrap()
}

#[test]
fn hoop_birth_then_death_restores_the_chart() {
    for (name, c) in corpus() {
        let faces = c.topology().unwrap().faces.len().max(1);
        for face in 0..faces {
            for orientation in [1, -1] {
                let b = apply_move(&c, &Move::HoopBirth { face, label: Label::Gen(2), orientation }).unwrap();
                let hoop = b.edges.iter().rev().find(|e| !e.label.is_ghost()).unwrap().id;
                let d = apply_move(&b, &Move::HoopDeath { hoop }).unwrap();
                assert!(isomorphic(&c, &d), "{name} face {face}");
                assert_eq!(c, d, "{name} face {face}");
            }
        }
    }
}

#[test]
fn white_pair_birth_then_death_restores_the_chart() {
    for (name, c) in corpus() {
        for relator in [RelatorId::B(2), RelatorId::C, RelatorId::F(1, 4)] {
            for sign in [1, -1] {
                let b = apply_move(&c, &Move::WhitePairBirth { relator, sign, face: 0 }).unwrap();
                assert_eq!(sigma_chart(&b).unwrap(), sigma_chart(&c).unwrap());
                let n = b.vertices.len();
                let (v1, v2) = (b.vertices[n - 2].id, b.vertices[n - 1].id);
                let d = apply_move(&b, &Move::WhitePairDeath { v1, v2 }).unwrap();
                assert_eq!(c, d, "{name} {relator}");
            }
        }
    }
}

#[test]
fn luo_white_pairs_are_unsupported() {
    let c = Chart::empty(3, Flavor::Luo);
    let err = apply_move(&c, &Move::WhitePairBirth { relator: RelatorId::Lantern, sign: 1, face: 0 }).unwrap_err();
    assert!(matches!(err, lkit::Error::Unsupported(_)));
}

#[test]
fn conjugacy_birth_and_death() {
    for (name, c) in corpus() {
        let b = apply_move(&c, &Move::ConjugacyBirth { label: Label::Gen(1), orientation: 1 }).unwrap();
        assert!(!isomorphic(&b, &c));
        if !c.edges.is_empty() {
            let hoop = b.edges.iter().rev().find(|e| !e.label.is_ghost()).unwrap().id;
            assert!(apply_move(&b, &Move::HoopDeath { hoop }).is_err(), "{name}: the basepoint is inside");
        }
        let d = apply_move(&b, &Move::ConjugacyDeath).unwrap();
        assert_eq!(c, d, "{name}");
        if c.base_genus == 0 && !c.edges.is_empty() {
            assert_eq!(derived_ig(&b), derived_ig(&c), "{name}");
        }
    }
}

#[test]
fn channel_change_on_two_free_edges() {
    let a = free_edge(3, 2).unwrap();
    let two = fiber_sum(&a, &a, &word("")).unwrap();
    let before = Counts::of(&two);
    let sites: Vec<Move> = candidate_moves(&two).into_iter().filter(|m| matches!(m, Move::ChannelChange { .. })).collect();
    assert!(!sites.is_empty());
    for m in sites {
        let after = apply_move(&two, &m).unwrap();
        assert_eq!(Counts::of(&after), before);
        assert_eq!(sigma_chart(&after).unwrap(), 0);
        assert_eq!(derived_ig(&after), derived_ig(&two));
        // Changing the channel back restores an isomorphic chart.
        let Move::ChannelChange { edge1, edge2 } = m else { unreachable!() };
        let back = apply_move(&after, &Move::ChannelChange { edge1, edge2 }).unwrap();
        assert_eq!(Counts::of(&back), before);
    }
}

#[test]
fn transition_check_examples() {
    assert!(transition_check(&word("z1"), &word("z1"), &word("")));
    assert!(!transition_check(&word("z1"), &word("z1"), &word("z2")));
    let rules = builtin_transitions(3).unwrap();
    assert!(rules.iter().any(|r| matches!(r.relator, RelatorId::F(..))));
    assert!(rules.iter().any(|r| matches!(r.relator, RelatorId::B(_))));
    for r in &rules {
        let s = ChartWord::Gen(lkit::words::Word::new(3, vec![r.source.clone()]).unwrap());
        let t = ChartWord::Gen(lkit::words::Word::new(3, vec![r.target.clone()]).unwrap());
        assert!(transition_check(&s, &t, &ChartWord::Gen(r.conjugator.clone())), "{r:?}");
    }
}

#[test]
fn transition_on_a_free_edge_and_back() {
    let c = free_edge(3, 1).unwrap();
    let v = c.vertices[1].id;
    for conj in ["z2 z1", "z3", "Z1 Z2"] {
        let Ok(a) = apply_move_report(&c, &Move::Transition { vertex: v, conjugator: conj.into(), target: None }) else {
            continue;
        };
        let note = a.transition.unwrap();
        assert!(note.sp_check && note.necessary_only);
        assert!(validate(&a.chart).ok);
        assert_eq!(tuple(&a.chart), tuple(&c));
        assert_eq!(derived_ig(&a.chart), derived_ig(&c));
        let white = a.chart.vertices.last().unwrap().id;
        let back = apply_move(&a.chart, &Move::TransitionCollapse { white }).unwrap();
        assert_eq!(back, c, "{conj}");
    }
    let braid = apply_move_report(&c, &Move::Transition { vertex: v, conjugator: "z2 z1".into(), target: None });
    let braid = braid.or_else(|_| apply_move_report(&c, &Move::Transition { vertex: v, conjugator: "z1 z2".into(), target: None }));
    assert!(braid.is_ok(), "a braid transition applies to a free edge");
}

#[test]
fn bad_transition_is_rejected() {
    let c = free_edge(3, 1).unwrap();
    let m = Move::Transition { vertex: c.vertices[1].id, conjugator: "z2".into(), target: Some("ell0(1)".into()) };
    assert!(matches!(apply_move(&c, &m), Err(lkit::Error::Move(_))));
}

#[test]
fn every_candidate_move_preserves_the_invariants() {
    for (name, c) in corpus() {
        let before = tuple(&c);
        let ig = if c.edges.is_empty() { 0 } else { derived_ig(&c) };
        let moves = candidate_moves(&c);
        assert!(!moves.is_empty(), "{name}");
        // The Hurwitz signature is costly on long relator stars; sample it there.
        let stride = if moves.len() > 500 { 7 } else { 1 };
        for (k, m) in moves.into_iter().enumerate() {
            let after = apply_move(&c, &m).unwrap();
            assert!(validate(&after).ok, "{name}: {m:?}");
            assert_eq!(tuple(&after), before, "{name}: {m:?}");
            if k % stride == 0 {
                let ig2 = if after.edges.is_empty() { 0 } else { derived_ig(&after) };
                assert_eq!(ig2, ig, "{name}: {m:?}");
            }
        }
    }
}

#[test]
fn fiber_sums_add() {
    let l1 = factory(FactoryName::Lh(1), 3).unwrap();
    let rl = factory(FactoryName::RL, 3).unwrap();
    let e = Chart::empty(3, Flavor::Wajnryb);
    assert_eq!(fiber_sum(&e, &e, &word("")).unwrap(), e);
    for w in ["", "z1", "z2 Z3 z1"] {
        let s = fiber_sum(&l1, &rl, &word(w)).unwrap();
        assert!(validate(&s).ok);
        assert_eq!(sigma_chart(&s).unwrap(), 7 - 1);
        assert_eq!(Counts::of(&s), Counts::of(&l1).add(&Counts::of(&rl)));
        assert_eq!(derived_ig(&s), 6, "{w}");
        let flipped = fiber_sum(&rl, &l1, &word(w)).unwrap();
        assert_eq!(tuple(&flipped), tuple(&s));
        let hoops = fiber_sum(&e, &e, &word(w)).unwrap();
        assert!(validate(&hoops).ok);
    }
    let luo = Chart::empty(3, Flavor::Luo);
    assert!(matches!(fiber_sum(&luo, &e, &word("")), Err(lkit::Error::Mismatch(_))));
}

#[test]
fn scripts_round_trip_and_replay() {
    let text = r#"[
        {"move": "hoop_birth", "face": 0, "label": 3},
        {"move": "conjugacy", "label": 1, "orientation": -1},
        {"move": "conjugacy_death"},
        {"move": "white_pair_birth", "relator": "r_B(1)"}
    ]"#;
    let s = MoveScript::from_json(text).unwrap();
    assert_eq!(s.moves.len(), 4);
    assert_eq!(MoveScript::from_json(&s.to_json()).unwrap(), s);
    let c = factory(FactoryName::RL, 3).unwrap();
    let steps = apply_script(&c, &s).unwrap();
    assert_eq!(steps.len(), 4);
    assert_eq!(sigma_chart(&steps[3].chart).unwrap(), -1);
    let bad = MoveScript::from_json(r#"{"moves": [{"move": "hoop_death", "hoop": 999}]}"#).unwrap();
    let err = apply_script(&c, &bad).unwrap_err().to_string();
    assert!(err.contains("step 0") && err.contains("999"), "{err}");
}
