use intform::classes::{blow_down, blow_up, classes_consistent_with, ClassMatch};
use intform::surface::{
    bmy_margin, chern_from_pg_q, consistency_report, index_from_chern, noether_residual,
    signature_pair,
};
use intform::verdict::{definite_verdict, definite_verdict_with, verify_main_theorems};
use intform::{Bounds, Catalog, Definiteness, Kahler, KodairaDim, LatticeClass, SurfaceInvariants};
use num::Zero;
use proptest::prelude::*;

fn catalog_entry() -> impl Strategy<Value = SurfaceInvariants> {
    let entries = Catalog::builtin().entries;
    (0..entries.len()).prop_map(move |i| entries[i].invariants)
}

/// The positive definite Kähler tuple `b1 = 2q`, `b2 = 2pg + 1`, with Chern
/// numbers forced by Noether's formula and the Euler characteristic.
fn kahler_from_pg_q(pg: i64, q: i64) -> SurfaceInvariants {
    let (c1sq, c2) = chern_from_pg_q(pg, q);
    SurfaceInvariants {
        b1: 2 * q,
        b2: c2 - 2 + 4 * q,
        q,
        pg,
        c1sq,
        c2,
        kahler: Kahler::Yes,
        minimal: true,
        kodaira_dim: KodairaDim::Unknown,
    }
}

proptest! {
    #[test]
    fn blow_ups_compose(s in catalog_entry(), a in 0u32..=10, b in 0u32..=10) {
        let direct = blow_up(&s, a + b).unwrap();
        let stepwise = blow_up(&blow_up(&s, a).unwrap(), b).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn blow_up_adds_negative_direction(s in catalog_entry(), k in 0u32..=10) {
        let (pos, neg) = signature_pair(&s).unwrap();
        let b = blow_up(&s, k).unwrap();
        prop_assert_eq!(signature_pair(&b).unwrap(), (pos, neg + i64::from(k)));
        prop_assert!(consistency_report(&b).is_empty());
        let back = blow_down(&b, k).unwrap();
        prop_assert_eq!((back.b2, back.c1sq, back.c2), (s.b2, s.c1sq, s.c2));
    }

    #[test]
    fn index_matches_signature(s in catalog_entry(), k in 0u32..=10) {
        let b = blow_up(&s, k).unwrap();
        let (pos, neg) = signature_pair(&b).unwrap();
        let tau = index_from_chern(b.c1sq, b.c2);
        prop_assert!(tau.is_integer());
        prop_assert_eq!(*tau.numer(), i128::from(pos - neg));
    }

    #[test]
    fn chern_from_pg_q_satisfies_noether_and_bmy(pg in 0i64..=50, q in 0i64..=50) {
        let (c1sq, c2) = chern_from_pg_q(pg, q);
        prop_assert_eq!(c1sq + c2, 12 * (1 - q + pg));
        prop_assert_eq!(bmy_margin(c1sq, c2), 4 * (pg + q));
        prop_assert_eq!(bmy_margin(c1sq, c2) <= 0, pg == 0 && q == 0);
    }

    #[test]
    fn positive_definite_kahler_needs_pg_q_zero(pg in 0i64..=6, q in 0i64..=6) {
        let s = kahler_from_pg_q(pg, q);
        prop_assert!(noether_residual(&s).is_zero());
        let v = definite_verdict(&s).unwrap();
        prop_assert_eq!(v.definiteness, Definiteness::PositiveDefinite);
        // numerically fine, but no class row accepts c1² − 3c2 > 0
        prop_assert_eq!(v.allowed_classes.is_empty(), pg + q > 0);
    }

    #[test]
    fn verdict_lattice_matches_signature(s in catalog_entry(), k in 0u32..=4) {
        let b = blow_up(&s, k).unwrap();
        let v = definite_verdict(&b).unwrap();
        let (pos, neg) = signature_pair(&b).unwrap();
        if let Some(l) = v.lattice {
            prop_assert_eq!(l.signature().pos as i64, pos);
            prop_assert_eq!(l.signature().neg as i64, neg);
        }
        match v.definiteness {
            Definiteness::PositiveDefinite => {
                prop_assert_eq!(v.lattice, Some(LatticeClass::diagonal(pos as u64, 0)));
            }
            Definiteness::NegativeDefinite => {
                prop_assert_eq!(v.lattice, Some(LatticeClass::diagonal(0, neg as u64)));
            }
            _ => {}
        }
        let sorted = v.allowed_classes.windows(2).all(|w| w[0] < w[1]);
        prop_assert!(sorted);
    }
}

#[test]
fn catalog_golden() {
    for e in Catalog::builtin().entries {
        let v = definite_verdict_with(&e.invariants, e.parity_hint()).unwrap();
        assert_eq!(v.lattice, e.known_lattice, "{}", e.name);
        let label = ClassMatch {
            class: e.class_label,
            blowups: e.blowups,
        };
        assert!(
            v.allowed_classes.contains(&label),
            "{}: {:?}",
            e.name,
            v.allowed_classes
        );
        let minimal = blow_down(&e.invariants, e.blowups).unwrap();
        assert!(classes_consistent_with(&minimal).contains(&e.class_label));
    }
}

#[test]
fn verify_examples() {
    let r = verify_main_theorems(&Bounds::default()).unwrap();
    assert!(r.passed());
    // golden count for the default bounds
    assert_eq!(r.checked, 3574);

    let minimal_only = Bounds {
        k_max: 0,
        ..Bounds::default()
    };
    let r = verify_main_theorems(&minimal_only).unwrap();
    assert!(r.passed());
    assert!(!r.definite_nonkahler.is_empty());
    assert!(r
        .definite_nonkahler
        .iter()
        .all(|e| e.generator.class == intform::SurfaceClass::ClassVii));

    let plane = Bounds {
        q_max: 0,
        kahler_only: true,
        ..Bounds::default()
    };
    let r = verify_main_theorems(&plane).unwrap();
    assert!(r.passed());
    assert!(r.definite_nonkahler.is_empty());
    assert!(!r.definite_kahler.is_empty());
    assert!(r
        .definite_kahler
        .iter()
        .all(|e| e.verdict.lattice == Some(LatticeClass::diagonal(1, 0))));
}

#[test]
fn verification_is_deterministic() {
    let bounds = Bounds {
        b2_max: 16,
        ..Bounds::default()
    };
    let a = verify_main_theorems(&bounds).unwrap();
    let b = verify_main_theorems(&bounds).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
