use lkit::signature::{i_g, i_g_gen};
use lkit::symplectic::{to_twists, ClassTable};
use lkit::words::{expand_derived, expand_relator, Derived, RelatorId, TwistLetter};

fn ell_inverse_sigma(g: usize, h: usize) -> i64 {
    let table = ClassTable::standard(g);
    let mut w = to_twists(&expand_derived(Derived::Ell(h), g).unwrap(), &table).unwrap().inverse();
    w.push(TwistLetter::separating(1, g, h));
    i_g(&w)
}

#[test]
fn chain_and_lantern_values() {
    for g in 3..=5 {
        assert_eq!(i_g_gen(&expand_relator(RelatorId::C, g).unwrap()), -6, "r_C at g={g}");
        assert_eq!(i_g_gen(&expand_relator(RelatorId::L, g).unwrap()), -1, "r_L at g={g}");
    }
}

#[test]
fn separating_values() {
    for (g, h) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
        assert_eq!(ell_inverse_sigma(g, h), 4 * (h as i64) * (h as i64 + 1) - 1, "g={g} h={h}");
    }
}

#[test]
fn commutation_braid_and_hyperelliptic_vanish() {
    for g in 3..=5 {
        for id in RelatorId::all(g) {
            if matches!(id, RelatorId::C | RelatorId::L) {
                continue;
            }
            assert_eq!(i_g_gen(&expand_relator(id, g).unwrap()), 0, "{id} at g={g}");
        }
    }
}
