mod common;

use std::collections::BTreeMap;

use common::{a2, deformed, walcher};
use cyclic_stab::catgraph::CategoryPresentation;
use cyclic_stab::charge::*;
use cyclic_stab::lift::*;
use cyclic_stab::polymat::Q;

#[test]
fn walcher_lift_homs() {
    let c = a2();
    let p = &c.presentation;
    let s = walcher(&c);
    let l = build_z_lift(p, &s.triple, 2).unwrap();
    assert_eq!(l.objects.len(), 6 * 5);
    assert_eq!(l.cone_checks, 6 * 5);
    let at = |e: &str, k: Q| LiftedObject::new(e, l.label(e).unwrap() + &k);
    let e = at("M1_0", Q::zero());
    assert!(l.contains(&e));
    assert_eq!(l.hom(&e, &e).len(), 1);
    assert!(l.hom(&e, &at("M1_0", Q::int(2))).is_empty());
    let up = |k: Q| LiftedObject::new("M2_0", &e.level + &k);
    assert_eq!(l.hom(&e, &up(Q::new(1, 3))).len(), 1);
    assert!(l.hom(&e, &up(Q::new(7, 3))).is_empty());
    assert_eq!(up(Q::new(1, 3)), at("M2_0", Q::zero()));
    assert_eq!(l.shift(&e).unwrap(), at("M2_1", Q::zero()));
    assert_eq!(l.project(&e), "M1_0");
    for x in &p.objects {
        for y in &p.objects {
            assert_eq!(l.summed_hom_dim(x, y).unwrap(), p.arrows_between(x, y).count(), "{x} {y}");
        }
    }
    let rep = l.report().unwrap();
    assert!(rep.checks.values().all(|x| *x));
    assert_eq!(rep.hom_dims["M1_0|M2_0"], 1);
}

#[test]
fn mirrored_triple_is_obstructed() {
    let c = a2();
    let s = walcher(&c);
    let err = build_z_lift(&c.presentation, &tau(&s.triple), 1).unwrap_err();
    assert!(matches!(err, LiftError::MaslovObstruction { .. } | LiftError::InvalidTriple(_)), "{err:?}");
    // The mirror has degree -1/3 on every generator, so each triangle sums to
    // -1 rather than 1.
    let m = maslov_indices(&tau(&s.triple), &c.presentation).unwrap();
    assert!(m.iter().any(|(_, i)| !i.is_zero()));
}

#[test]
fn connection_equivalences() {
    let c = a2();
    let p = &c.presentation;
    let s = walcher(&c);
    let l1 = build_z_lift(p, &s.triple, 2).unwrap();
    let id = connection_equiv(&l1, &l1, "M1_0").unwrap();
    assert!(id.offsets.values().all(Q::is_zero));

    let d = deformed(&c).result;
    let l2 = build_z_lift(p, &d.triple, 2).unwrap();
    let h = connection_equiv(&l1, &l2, "M1_0").unwrap();
    let k = connection_equiv(&l1, &l2, "M2_2").unwrap();
    let diff: Vec<Q> = p.objects.iter().map(|o| &k.offsets[o] - &h.offsets[o]).collect();
    assert!(diff.iter().all(|x| x == &diff[0] && (x / &Q::int(2)).is_integer()));
    for o in &l1.objects {
        let image = h.apply(o).unwrap();
        assert_eq!(l2.project(&image), l1.project(o));
    }
    // Each arrow stays a morphism between the images of its endpoints.
    for a in &p.arrows {
        let src = LiftedObject::new(a.src.clone(), l1.label(&a.src).unwrap().clone());
        let dst = LiftedObject::new(a.dst.clone(), &src.level + &s.triple.q[&a.id]);
        assert!(l1.hom(&src, &dst).iter().any(|f| f.id == a.id));
        let (hs, hd) = (h.apply(&src).unwrap(), h.apply(&dst).unwrap());
        assert!(l2.hom(&hs, &hd).iter().any(|f| f.id == a.id), "{}", a.id);
    }
}

#[test]
fn bridgeland_checks() {
    let c = a2();
    let p = &c.presentation;
    for s in [walcher(&c), deformed(&c).result] {
        let l = build_z_lift(p, &s.triple, 2).unwrap();
        let data = BridgelandData::from_stability(&s, &l).unwrap();
        let rep = check_bridgeland(&l, &data, Some(&c)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(check_bridgeland(&l, &data.shifted(3), None).unwrap().passed());
        let text = serde_json::to_string(&data).unwrap();
        assert_eq!(serde_json::from_str::<BridgelandData>(&text).unwrap(), data);
        assert!(data.equal_up_to_even_shift(&data.shifted(-1)));
    }
}

#[test]
fn mislabeled_phase_breaks_hom_order() {
    let c = a2();
    let s = walcher(&c);
    let l = build_z_lift(&c.presentation, &s.triple, 2).unwrap();
    let mut data = BridgelandData::from_stability(&s, &l).unwrap();
    let raised = &data.phases["M1_0"] + &Q::int(2);
    data.phases.insert("M1_0".into(), raised);
    let rep = check_bridgeland(&l, &data, None).unwrap();
    assert!(rep.clauses()[0]);
    assert!(!rep.clauses()[2]);
    assert!(rep.hom_order.contains(&"M1_0>M2_0".to_string()));

    let mut data = BridgelandData::from_stability(&s, &l).unwrap();
    data.phases.insert("M1_0".into(), Q::new(1, 2));
    assert_eq!(check_bridgeland(&l, &data, None).unwrap().charge_phase, ["M1_0"]);
}

#[test]
fn unstable_object_needs_factors() {
    let c = a2();
    let s = deformed(&c).result;
    let l = build_z_lift(&c.presentation, &s.triple, 1).unwrap();
    let mut data = BridgelandData::from_stability(&s, &l).unwrap();
    data.hn.get_mut("M2_0").unwrap().reverse();
    assert!(!check_bridgeland(&l, &data, None).unwrap().clauses()[3]);
    data.hn.remove("M2_0");
    assert_eq!(check_bridgeland(&l, &data, None).unwrap().hn, ["M2_0: no HN factors"]);
}

#[test]
fn empty_category_passes_vacuously() {
    let c = CategoryPresentation::default();
    let r = ChargeTriple {
        lattice_rank: 1,
        v: BTreeMap::new(),
        z: vec![Complex::new(Q::one(), Q::zero())],
        phi: BTreeMap::new(),
        q: BTreeMap::new(),
    };
    let l = build_z_lift(&c, &r, 1).unwrap();
    assert!(l.objects.is_empty());
    assert!(check_bridgeland(&l, &BridgelandData::default(), None).unwrap().passed());
}
