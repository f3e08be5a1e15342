//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so the report is printed on every `cargo test`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lkit::chart::{
    derive_hurwitz, edge_identity_check, intersection_word, sigma_chart, sigma_luo, sigma_luo_values, validate, Chart,
    ChartWord, Counts, Flavor, Label,
};
use lkit::classifier::{compare_tuples, invariants_of, stable_equivalent, Condition, Mode, Presentation};
use lkit::formats::parse_word_line;
use lkit::meyer::{maslov, tau, triple_from_pair};
use lkit::moves::factory::{factory, four_loop_example, free_edge, luo_star, FactoryName};
use lkit::moves::{apply_move, candidate_moves, fiber_sum, Move};
use lkit::signature::{hurwitz_slide, i_g, i_g_gen, Factorization, SlideDir};
use lkit::symplectic::{eval_gen, eval_word, random_symplectic_with, to_twists, ClassTable, SpMatrix};
use lkit::words::{expand_derived, expand_relator, mirror, Derived, RelatorId, TwistLetter, TwistWord, Word};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Option<Duration>) -> Check {
    match limit {
        Some(l) if start.elapsed() > l => Err(format!("took {:.1?}, limit {l:?}", start.elapsed())),
        _ => Ok(()),
    }
}

fn twists(w: &lkit::words::GenWord) -> TwistWord {
    to_twists(w, &ClassTable::standard(w.g())).unwrap()
}

fn ell_inverse_sigma(g: usize, h: usize) -> TwistWord {
    let mut w = twists(&expand_derived(Derived::Ell(h), g).unwrap()).inverse();
    w.push(TwistLetter::separating(1, g, h));
    w
}

fn relator_soundness() -> Check {
    for g in 3..=6 {
        for r in RelatorId::all(g) {
            ensure(eval_gen(&expand_relator(r, g).unwrap()).is_identity(), || format!("{r} at g={g}"))?;
        }
        for h in 1..=g / 2 {
            ensure(eval_gen(&expand_derived(Derived::Ell(h), g).unwrap()).is_identity(), || format!("ell({h}) at g={g}"))?;
        }
    }
    Ok(())
}

fn random_matrix(g: usize, rng: &mut ChaCha8Rng) -> SpMatrix {
    let n = rng.gen_range(0..=6);
    random_symplectic_with(g, n, rng)
}

fn meyer_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d65_7965);
    for g in 1..=3 {
        let id = SpMatrix::identity(g);
        for k in 0..200 {
            let (a, b, c) = (random_matrix(g, &mut rng), random_matrix(g, &mut rng), random_matrix(g, &mut rng));
            let t = |x: &SpMatrix, y: &SpMatrix| tau(x, y).unwrap();
            let at = || format!("g={g} sample {k}");
            ensure(t(&id, &a) == 0 && t(&a, &id) == 0, || format!("normalization, {}", at()))?;
            ensure(t(&a, &b) == t(&b, &a), || format!("symmetry, {}", at()))?;
            let (ab, bc) = (a.mul(&b), b.mul(&c));
            ensure(t(&a, &b) + t(&ab, &c) == t(&a, &bc) + t(&b, &c), || format!("cocycle, {}", at()))?;
            let ci = c.inverse();
            let conj = |x: &SpMatrix| c.mul(x).mul(&ci);
            ensure(t(&conj(&a), &conj(&b)) == t(&a, &b), || format!("conjugation, {}", at()))?;
            ensure(t(&a, &a.inverse()) == 0, || format!("inverse pair, {}", at()))?;
        }
    }
    Ok(())
}

fn maslov_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_736c);
    for k in 0..240 {
        let g = 1 + k % 3;
        let (a, b) = (random_matrix(g, &mut rng), random_matrix(g, &mut rng));
        let (l1, l2, l3) = triple_from_pair(&a, &b).unwrap();
        let (m, t) = (maslov(&l1, &l2, &l3).unwrap(), tau(&a, &b).unwrap());
        ensure(m == t, || format!("sample {k} at g={g}: maslov {m}, tau {t}"))?;
    }
    Ok(())
}

fn signature_values() -> Check {
    for g in 3..=5 {
        let c = i_g_gen(&expand_relator(RelatorId::C, g).unwrap());
        let l = i_g_gen(&expand_relator(RelatorId::L, g).unwrap());
        ensure(c == -6 && l == -1, || format!("g={g}: I(r_C)={c}, I(r_L)={l}"))?;
    }
    for (g, h) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
        let v = i_g(&ell_inverse_sigma(g, h));
        let want = 4 * (h as i64) * (h as i64 + 1) - 1;
        ensure(v == want, || format!("g={g} h={h}: {v}, expected {want}"))?;
    }
    for g in [3, 4, 5] {
        let mut ids: Vec<RelatorId> = (1..=2 * g).flat_map(|i| (0..=2 * g).map(move |j| RelatorId::F(j, i))).collect();
        ids.extend((0..2 * g).map(RelatorId::B));
        ids.push(RelatorId::H);
        for r in ids.into_iter().filter(|r| r.check(g).is_ok()) {
            let v = i_g_gen(&expand_relator(r, g).unwrap());
            ensure(v == 0, || format!("{r} at g={g}: {v}"))?;
        }
    }
    Ok(())
}

/// Closed words: relators, separating pairs and derived chart words.
fn closed_words() -> Vec<(String, TwistWord)> {
    let mut out = Vec::new();
    for g in [3, 4] {
        // Every third commutation relator keeps the corpus small.
        let ids = RelatorId::all(g).into_iter().enumerate().filter(|(k, r)| !matches!(r, RelatorId::F(..)) || k % 3 == 0);
        for (_, r) in ids {
            out.push((format!("{r} g={g}"), twists(&expand_relator(r, g).unwrap())));
        }
        for h in 1..=g / 2 {
            out.push((format!("ell({h})^-1 s_{h} g={g}"), ell_inverse_sigma(g, h)));
        }
    }
    out.push(("four loops".into(), derive_hurwitz(&four_loop_example().unwrap().chart).unwrap().word().clone()));
    let c = twists(&expand_relator(RelatorId::C, 3).unwrap());
    let l = twists(&expand_relator(RelatorId::L, 3).unwrap());
    out.push(("r_C r_L".into(), c.concat(&l)));
    out.push(("r_L mirror(r_C)".into(), l.concat(&mirror(&c))));
    out
}

fn mirror_and_hurwitz() -> Check {
    let words = closed_words();
    ensure(words.len() >= 20, || format!("only {} closed words", words.len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6875_7277);
    for (name, w) in &words {
        ensure(eval_word(w).is_identity(), || format!("{name} is not closed"))?;
        let v = i_g(w);
        ensure(i_g(&mirror(w)) == -v, || format!("{name}: mirror"))?;
        let mut f = Factorization::new(w.clone(), 0).unwrap();
        for step in 0..50 {
            let i = rng.gen_range(1..f.len());
            let dir = if rng.gen_bool(0.5) { SlideDir::Left } else { SlideDir::Right };
            f = hurwitz_slide(&f, i, dir).unwrap();
            if step % 5 == 4 {
                ensure(i_g(f.word()) == v, || format!("{name}: after slide {step}"))?;
            }
        }
    }
    Ok(())
}

fn factory_corpus(g: usize) -> Vec<(String, Chart)> {
    let mut names = vec![FactoryName::RC, FactoryName::RCMirror, FactoryName::RL, FactoryName::RLMirror];
    names.extend((0..=2 * g).map(FactoryName::L0));
    for h in 1..=g / 2 {
        names.push(FactoryName::Lh(h));
        names.push(FactoryName::LhMirror(h));
    }
    names.into_iter().map(|n| (format!("{n} g={g}"), factory(n, g).unwrap())).collect()
}

fn chart_consistency() -> Check {
    let mut corpus = factory_corpus(3);
    corpus.extend(factory_corpus(4));
    corpus.push(("four-loop example".into(), four_loop_example().unwrap().chart));
    for (name, c) in &corpus {
        let r = validate(c);
        ensure(r.ok, || format!("{name}: {:?}", r.diagnostics))?;
        ensure(edge_identity_check(&Counts::of(c)), || format!("{name}: edge identity"))?;
        let (s, w) = (sigma_chart(c).unwrap(), i_g(derive_hurwitz(c).unwrap().word()));
        ensure(s == w, || format!("{name}: sigma {s}, derived {w}"))?;
    }
    Ok(())
}

fn four_loop_words() -> Check {
    let ex = four_loop_example().unwrap();
    let expected = ["Z1 Z2 z1 z2 z1", "Z1 z3 z1", "Z2 Z3 Z2 z3 z2", "Z2"];
    let mut product = Word::empty(3);
    for (k, (l, want)) in ex.loops.iter().zip(expected).enumerate() {
        let w = intersection_word(&ex.chart, l).unwrap();
        ensure(w.to_string() == want, || format!("loop {}: {w}, expected {want}", k + 1))?;
        let ChartWord::Gen(w) = w else { return Err("loop words should be generator words".into()) };
        product = product.concat(&w);
    }
    ensure(ex.loops.len() == 4, || "four loops".into())?;
    ensure(eval_gen(&product).is_identity(), || "the product is not the identity in Sp(6, Z)".into())
}

fn move_corpus() -> Vec<(String, Chart)> {
    let mut out: Vec<(String, Chart)> = [FactoryName::L0(1), FactoryName::Lh(1), FactoryName::RL, FactoryName::RCMirror]
        .into_iter()
        .map(|n| (n.to_string(), factory(n, 3).unwrap()))
        .collect();
    out.push(("four-loop example".into(), four_loop_example().unwrap().chart));
    let e = free_edge(3, 2).unwrap();
    out.push(("two free edges".into(), fiber_sum(&e, &e, &parse_word_line("", 3).unwrap()).unwrap()));
    let l1 = factory(FactoryName::Lh(1), 3).unwrap();
    out.push(("tube sum".into(), fiber_sum(&e, &l1, &parse_word_line("z3 Z1", 3).unwrap()).unwrap()));
    let hoop = Move::HoopBirth { face: 0, label: Label::Gen(4), orientation: -1 };
    out.push(("R_L with a hoop".into(), apply_move(&out[2].1, &hoop).unwrap()));
    let pair = Move::WhitePairBirth { relator: RelatorId::B(1), sign: 1, face: 0 };
    out.push(("L_1 with a white pair".into(), apply_move(&l1, &pair).unwrap()));
    let v = e.vertices[1].id;
    let t = ["z1 z2", "z2 z1", "z3"]
        .into_iter()
        .find_map(|w| apply_move(&e, &Move::Transition { vertex: v, conjugator: w.into(), target: None }).ok())
        .expect("some transition applies to a free edge");
    out.push(("free edge after a transition".into(), t));
    let conj = Move::ConjugacyBirth { label: Label::Gen(2), orientation: 1 };
    out.push(("L_1 conjugated".into(), apply_move(&l1, &conj).unwrap()));
    out.push(("empty".into(), Chart::empty(3, Flavor::Wajnryb)));
    out
}

fn move_invariance() -> Check {
    let mut families = std::collections::BTreeMap::new();
    for (name, c) in move_corpus() {
        let before = Counts::of(&c).tuple(sigma_chart(&c).unwrap());
        for m in candidate_moves(&c) {
            let after = apply_move(&c, &m).map_err(|e| format!("{name}: {m:?}: {e}"))?;
            let r = validate(&after);
            ensure(r.ok, || format!("{name}: {m:?}: {:?}", r.diagnostics))?;
            let t = Counts::of(&after).tuple(sigma_chart(&after).unwrap());
            ensure(t == before, || format!("{name}: {m:?} changed the tuple"))?;
            *families.entry(m.name()).or_insert(0usize) += 1;
        }
    }
    let want = [
        "hoop_birth",
        "hoop_death",
        "white_pair_birth",
        "white_pair_death",
        "channel_change",
        "transition",
        "transition_collapse",
        "conjugacy",
        "conjugacy_death",
        "relabel",
    ];
    for f in want {
        ensure(families.contains_key(f), || format!("no applicable site for {f}"))?;
    }
    Ok(())
}

fn sum_all(parts: &[Chart]) -> Chart {
    let empty = parse_word_line("", parts[0].g).unwrap();
    parts[1..].iter().fold(parts[0].clone(), |acc, c| fiber_sum(&acc, c, &empty).unwrap())
}

/// `r^times` followed by `pad` cancelling pairs ζ1ζ1⁻¹.
fn repeat_relator(r: RelatorId, times: usize, pad: usize) -> Presentation {
    let g = 3;
    let w = twists(&expand_relator(r, g).unwrap()).pow(times);
    let z = twists(&lkit::words::GenWord::from_pairs(g, &[(1, 1), (1, -1)]).unwrap());
    Factorization::new(w.concat(&z.pow(pad)), 0).unwrap().into()
}

fn independent_bound(p: &Presentation, q: &Presentation) -> usize {
    let size = |x: &Presentation| match x {
        Presentation::Chart(c) => {
            // Transparent vertices here only carry tube hoops, one solid loop each.
            for v in c.vertices.iter().filter(|v| v.kind == lkit::chart::VertexKind::Transparent) {
                let solid: Vec<usize> = v.rotation.iter().filter(|&&d| !c.label_of(d).is_ghost()).map(|d| d / 2).collect();
                assert!(solid.len() == 2 && solid[0] == solid[1], "not a tube hoop");
            }
            c.edges.iter().filter(|e| !e.label.is_ghost()).count()
        }
        Presentation::Factorization(f) => f.word().len(),
    };
    size(p).max(size(q)) + 1
}

fn classifier_corpus() -> Vec<(String, Presentation, Presentation, Vec<Condition>)> {
    let f = |n| factory(n, 3).unwrap();
    let (l0, l1, l1m) = (f(FactoryName::L0(1)), f(FactoryName::Lh(1)), f(FactoryName::LhMirror(1)));
    let (rl, rlm, rc, rcm) = (f(FactoryName::RL), f(FactoryName::RLMirror), f(FactoryName::RC), f(FactoryName::RCMirror));
    let empty = Chart::empty(3, Flavor::Wajnryb);
    let ch = |c: Chart| -> Presentation { c.into() };
    let l0s: Vec<Chart> = (0..12).map(|i| f(FactoryName::L0(i % 7))).collect();
    let mut out = vec![
        ("L_0(1) / empty".to_string(), ch(l0.clone()), ch(empty.clone()), vec![Condition::NonSeparating]),
        ("R_L#R_L~ / empty".into(), ch(sum_all(&[rl.clone(), rlm.clone()])), ch(empty.clone()), vec![Condition::NonSeparating]),
        (
            "R_C#R_C~ / L_0(1)".into(),
            ch(sum_all(&[rc.clone(), rcm.clone()])),
            ch(l0.clone()),
            vec![Condition::NonSeparating],
        ),
        ("L_1#L_1~ / 12 L_0".into(), ch(sum_all(&[l1.clone(), l1m.clone()])), ch(sum_all(&l0s)), vec![Condition::Separating]),
        (
            "L_1#L_1~#R_C / 12 L_0#R_C".into(),
            ch(sum_all(&[l1.clone(), l1m.clone(), rc.clone()])),
            ch(sum_all(&[sum_all(&l0s), rc.clone()])),
            vec![Condition::Separating],
        ),
        ("10 r_L / r_C + 360 pairs".into(), repeat_relator(RelatorId::L, 10, 0), repeat_relator(RelatorId::C, 1, 360), vec![Condition::Signature]),
        ("r_C r_C~ + 10 r_L / 10 r_L + 30 pairs".into(), {
            let c = twists(&expand_relator(RelatorId::C, 3).unwrap());
            let w = c.concat(&mirror(&c)).concat(&twists(&expand_relator(RelatorId::L, 3).unwrap()).pow(10));
            Factorization::new(w, 0).unwrap().into()
        }, repeat_relator(RelatorId::L, 10, 30), vec![]),
    ];
    // Reorderings of the same pieces, glued along different tubes.
    let tube = |s: &str| parse_word_line(s, 3).unwrap();
    let pieces = [l1.clone(), rl.clone(), rc.clone()];
    let base = sum_all(&pieces);
    for (k, order) in [[1, 0, 2], [2, 1, 0], [0, 2, 1]].iter().enumerate() {
        let q = sum_all(&order.map(|i| pieces[i].clone()));
        out.push((format!("reordering {k}"), ch(base.clone()), ch(q), vec![]));
    }
    for w in ["z1", "z2 Z3 z1"] {
        let a = fiber_sum(&fiber_sum(&l1, &rl, &tube(w)).unwrap(), &rc, &tube("")).unwrap();
        out.push((format!("tube {w}"), ch(a), ch(base.clone()), vec![]));
    }
    let rc_word: Presentation = Factorization::from_gen(&expand_relator(RelatorId::C, 3).unwrap(), 0).unwrap().into();
    out.push(("R_C chart / r_C word".into(), ch(rc.clone()), rc_word, vec![]));
    out
}

fn classifier() -> Check {
    for (name, p, q, expected) in classifier_corpus() {
        for (a, b) in [(&p, &q), (&q, &p)] {
            let v = stable_equivalent(a, b, Mode::Universal).map_err(|e| format!("{name}: {e}"))?;
            let (ta, tb) = (invariants_of(a).unwrap(), invariants_of(b).unwrap());
            ensure(v.equivalent == (ta == tb), || format!("{name}: verdict disagrees with tuple equality"))?;
            ensure(v.failing_conditions == expected, || format!("{name}: failing {:?}, expected {expected:?}", v.failing_conditions))?;
            ensure(compare_tuples(&ta, &tb) == expected, || format!("{name}: tuple comparison"))?;
            let n = v.equivalent.then(|| independent_bound(a, b));
            ensure(v.n == n, || format!("{name}: N = {:?}, expected {n:?}", v.n))?;
            let e = stable_equivalent(a, b, Mode::Elementary).unwrap();
            ensure(e.equivalent == v.equivalent && e.n == v.n, || format!("{name}: elementary mode"))?;
        }
    }
    Ok(())
}

fn lantern() -> TwistWord {
    // Boundary classes d1..d4 summing to zero; interior classes d1+d2, d2+d3, d1+d3.
    let g = 3;
    let v = |x: [i64; 6]| x.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>();
    let (d1, d2, d3, d4) = (v([1, 0, 0, 0, 0, 0]), v([0, 0, 1, 0, 0, 0]), v([0, 0, 0, 0, 1, 0]), v([-1, 0, -1, 0, -1, 0]));
    let add = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let t = |s, c: Vec<BigInt>| TwistLetter::nonseparating(s, c);
    Word::new(
        g,
        vec![t(1, add(&d1, &d2)), t(1, add(&d2, &d3)), t(1, add(&d1, &d3)), t(-1, d4), t(-1, d3), t(-1, d2), t(-1, d1)],
    )
    .unwrap()
}

fn luo_flavor() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c75_6f);
    for _ in 0..500 {
        let (t, p, c, l) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        let s = sigma_luo(&Counts::luo(3, t, p, c, l)).unwrap();
        ensure(s == -t - 7 * c + l && s == sigma_luo_values(t, c, l), || format!("counts ({t},{p},{c},{l}): {s}"))?;
    }
    ensure(sigma_luo(&Counts::luo(3, 0, 0, 0, -1)).unwrap() == -1, || "n_L = -1 should give -1".into())?;
    let star = luo_star(RelatorId::Lantern, -1, &lantern()).map_err(|e| e.to_string())?;
    let k = Counts::of(&star);
    ensure(k.white_count(RelatorId::Lantern) == -1, || "lantern star counts".into())?;
    let s = sigma_luo(&k).unwrap();
    ensure(s == -1, || format!("lantern star sigma {s}"))?;
    let plus = luo_star(RelatorId::Lantern, 1, &lantern()).map_err(|e| e.to_string())?;
    ensure(sigma_luo(&Counts::of(&plus)).unwrap() == 1, || "positive lantern".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<u64>); 10] = [
        ("relator soundness", relator_soundness, Some(10)),
        ("Meyer cocycle suite", meyer_suite, Some(60)),
        ("Maslov oracle", maslov_oracle, None),
        ("signature values", signature_values, Some(30)),
        ("mirror and Hurwitz invariance", mirror_and_hurwitz, None),
        ("chart consistency", chart_consistency, None),
        ("four-loop example", four_loop_words, None),
        ("move invariance", move_invariance, None),
        ("classifier", classifier, None),
        ("Luo flavor", luo_flavor, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())))
            .and_then(|()| within(start, limit.map(Duration::from_secs)));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2} s): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
