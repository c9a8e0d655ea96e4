use std::collections::BTreeMap;

use cyclic_stab::catgraph::{CategoryPresentation, ConnectingPath, Direction};
use cyclic_stab::charge::*;
use cyclic_stab::mf::build_an_equivariant;
use cyclic_stab::polymat::Q;

fn a2() -> CategoryPresentation {
    build_an_equivariant(2, 3).unwrap()
}

#[test]
fn walcher_triple_validates() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let rep = validate_triple(&r, &c).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(r.phi["M1_0"], Q::new(1, 6));
    assert_eq!(r.phi["M2_0"], Q::new(1, 2));
    assert_eq!(r.phi["M1_2"], Q::new(3, 2));
    assert_eq!(r.charge("M1_2").unwrap(), Complex::new(Q::zero(), Q::int(-1)));
}

#[test]
fn constructed_violations_are_reported() {
    let c = a2();
    let mut r = walcher_triple(&c).unwrap();
    r.phi.insert("M2_1".into(), r.phi["M1_0"].clone());
    let rep = validate_triple(&r, &c).unwrap();
    assert!(rep.shift_phase.contains(&"M1_0".to_string()));

    let mut r = walcher_triple(&c).unwrap();
    let f = "M1_0>M2_0".to_string();
    r.q.insert(f.clone(), &r.q[&f] + &Q::one());
    let rep = validate_triple(&r, &c).unwrap();
    assert_eq!(rep.degree_phase, vec![f]);
    assert!(rep.shift_phase.is_empty() && rep.polar_form.is_empty());
}

#[test]
fn id_mismatch_is_an_error() {
    let c = a2();
    let mut r = walcher_triple(&c).unwrap();
    r.q.remove("M1_0>M2_0");
    assert_eq!(validate_triple(&r, &c), Err(ChargeError::IdMismatch("M1_0>M2_0".into())));
}

#[test]
fn pair_round_trip_and_failures() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    assert_eq!(pair_to_triple(&r.to_pair(), &c).unwrap(), r);

    let mut zero = r.to_pair();
    zero.z = vec![Complex::zero(), Complex::zero()];
    assert_eq!(pair_to_triple(&zero, &c), Err(ChargeError::TrivialCharge));

    let mut bad = r.to_pair();
    let f = "M2_2>M1_0".to_string();
    bad.q.insert(f.clone(), &bad.q[&f] + &Q::one());
    assert!(matches!(pair_to_triple(&bad, &c), Err(ChargeError::Inconsistent(_))));
}

#[test]
fn walcher_loops_have_index_zero_and_mirror_negative() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let ms = maslov_indices(&r, &c).unwrap();
    assert_eq!(ms.len(), 6);
    assert!(ms.iter().all(|(_, m)| m.is_zero()));
    let ms = maslov_indices(&tau(&r), &c).unwrap();
    assert!(ms.iter().all(|(_, m)| *m == Q::int(-1)));
}

#[test]
fn maslov_formula_and_rebasing() {
    let c = a2();
    let mut r = walcher_triple(&c).unwrap();
    let l = basic_loops(&c).remove(0);
    assert_eq!(maslov_index(&l, &r, &c).unwrap(), Q::zero());
    // Raising a degree on an arrow and its shift by 2 adds 2 to the loop.
    let f = l.triangle[0].clone();
    let fs = c.arrow_shift[&f].clone();
    for a in [&f, &fs] {
        r.q.insert(a.clone(), &r.q[a] + &Q::int(2));
    }
    assert_eq!(maslov_index(&l, &r, &c).unwrap(), Q::one());
    for at in 0..3 {
        let lb = l.rebased(&c, at).unwrap();
        assert_eq!(maslov_index(&lb, &r, &c).unwrap(), Q::one());
    }
}

#[test]
fn tau_examples() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let t = tau(&r);
    assert_eq!(tau(&t), r);
    assert_eq!(t.phi["M1_0"], Q::new(5, 6));
    assert_eq!(t.q["M1_0>M2_0"], Q::new(-1, 3));
    assert!(validate_triple(&t, &c).unwrap().passed());
    let mut s = r.clone();
    s.phi.insert("M1_0".into(), Q::new(3, 10));
    assert_eq!(tau(&s).phi["M1_0"], Q::new(7, 10));
}

#[test]
fn deformation_equivalence_examples() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    assert_eq!(deformation_equivalent(&r, &r, &c).unwrap(), (true, None));

    let delta: BTreeMap<&str, Q> =
        c.objects.iter().enumerate().map(|(i, o)| (o.as_str(), Q::new(i as i64 * 7 - 3, 5))).collect();
    let mut moved = r.clone();
    for a in &c.arrows {
        let d = &delta[a.dst.as_str()] - &delta[a.src.as_str()];
        moved.q.insert(a.id.clone(), &r.q[&a.id] + &d);
    }
    assert!(deformation_equivalent(&r, &moved, &c).unwrap().0);

    let (ok, witness) = deformation_equivalent(&r, &tau(&r), &c).unwrap();
    assert!(!ok);
    assert!(witness.unwrap().is_loop(&c).unwrap());

    let mut fewer = r.clone();
    fewer.q.remove("M1_0>M2_0");
    assert_eq!(deformation_equivalent(&r, &fewer, &c), Err(ChargeError::ArrowSetMismatch));
}

#[test]
fn chirality_flips_under_tau() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let ch = chirality(&r, &c).unwrap();
    assert!(ch.objects.values().all(|x| *x == Chirality::Left));
    assert_eq!(ch.arrows["M1_0>M2_0"], Chirality::Left);
    assert_eq!(ch.arrows["id:M1_0"], Chirality::Neutral);
    let ch = chirality(&tau(&r), &c).unwrap();
    assert!(ch.objects.values().all(|x| *x == Chirality::Right));
    assert_eq!(ch.arrows["M1_0>M2_0"], Chirality::Right);
}

#[test]
fn tau_negates_loop_degrees() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let t = tau(&r);
    let p = ConnectingPath::new([("M1_0>M2_0", Direction::Forward), ("M2_0>M1_1", Direction::Forward)]);
    let d = cyclic_stab::catgraph::path_degree_by(&c, &p, &r.q).unwrap();
    let dt = cyclic_stab::catgraph::path_degree_by(&c, &p, &t.q).unwrap();
    assert_eq!(d, -dt);
}

#[test]
fn triple_document_round_trip() {
    let c = a2();
    let r = walcher_triple(&c).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"Z\""));
    assert_eq!(serde_json::from_str::<ChargeTriple>(&text).unwrap(), r);
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn base() -> &'static (CategoryPresentation, ChargeTriple) {
        static B: OnceLock<(CategoryPresentation, ChargeTriple)> = OnceLock::new();
        B.get_or_init(|| {
            let c = a2();
            let r = walcher_triple(&c).unwrap();
            (c, r)
        })
    }

    /// Walcher degrees moved by a potential, plus optional noise on one arrow.
    fn triple() -> impl Strategy<Value = ChargeTriple> {
        (prop::collection::vec(-4i64..5, 6), prop::option::of((0usize..6, 1i64..4))).prop_map(|(pot, noise)| {
            let (c, r) = base();
            let p: BTreeMap<&str, Q> = c.objects.iter().zip(&pot).map(|(o, k)| (o.as_str(), Q::new(*k, 3))).collect();
            let mut t = r.clone();
            for a in &c.arrows {
                t.q.insert(a.id.clone(), &r.q[&a.id] + &(&p[a.dst.as_str()] - &p[a.src.as_str()]));
            }
            if let Some((i, k)) = noise {
                let id = c.proper_arrows().nth(i).unwrap().id.clone();
                let moved = &t.q[&id] + &Q::new(k, 6);
                t.q.insert(id, moved);
            }
            t
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn deformation_equivalence_is_an_equivalence(a in triple(), b in triple(), d in triple()) {
            let c = &base().0;
            let eq = |x: &ChargeTriple, y: &ChargeTriple| deformation_equivalent(x, y, c).unwrap().0;
            prop_assert!(eq(&a, &a));
            prop_assert_eq!(eq(&a, &b), eq(&b, &a));
            if eq(&a, &b) && eq(&b, &d) {
                prop_assert!(eq(&a, &d));
            }
        }

        #[test]
        fn tau_is_an_involution(a in triple()) {
            prop_assert_eq!(tau(&tau(&a)), a.clone());
            let t = tau(&a);
            prop_assert!(a.q.iter().all(|(f, d)| t.q[f] == -d.clone()));
            prop_assert_ne!(t, a);
        }
    }
}
