use cyclic_stab::polymat::*;
use proptest::prelude::*;

fn ctx2() -> RingContext {
    RingContext::new(&["x", "y"], 4).unwrap()
}

fn q(n: i64) -> Q {
    Q::int(n)
}

#[test]
fn truncated_products() {
    let c = RingContext::univariate(3);
    let x = TruncPoly::x_pow(&c, 1, q(1));
    let x2 = TruncPoly::x_pow(&c, 2, q(1));
    let xp1 = x.add(&TruncPoly::one(&c)).unwrap();
    assert_eq!(xp1.mul(&x2).unwrap(), x2);
    assert!(x2.mul(&x2).unwrap().is_zero());
    assert!(x.mul(&TruncPoly::zero(&c)).unwrap().is_zero());
}

#[test]
fn context_mismatch_is_an_error() {
    let a = TruncPoly::one(&RingContext::univariate(3));
    let b = TruncPoly::one(&RingContext::univariate(4));
    assert_eq!(a.mul(&b), Err(PolyError::ContextMismatch));
    assert_eq!(RingContext::new(&["x"], 0), Err(PolyError::InvalidBound));
}

#[test]
fn kernel_examples() {
    assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
    assert_eq!(RationalMatrix::zeros(2, 2).kernel_basis(), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    assert_eq!(RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]).kernel_basis(), vec![vec![q(1), q(-1)]]);
}

#[test]
fn solve_examples() {
    let b = vec![Q::new(2, 3), q(5)];
    assert_eq!(RationalMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
    assert_eq!(RationalMatrix::zeros(2, 2).solve(&[q(1), q(0)]).unwrap(), None);
    assert_eq!(RationalMatrix::from_ints(&[&[2]]).solve(&[q(1)]).unwrap(), Some(vec![Q::new(1, 2)]));
    assert!(RationalMatrix::identity(2).solve(&[q(1)]).is_err());
}

#[test]
fn rational_encoding() {
    let x: Q = serde_json::from_str("\"-6/4\"").unwrap();
    assert_eq!(x, Q::new(-3, 2));
    assert_eq!(serde_json::to_string(&x).unwrap(), "\"-3/2\"");
    assert!(serde_json::from_str::<Q>("\"1/0\"").is_err());
}

#[test]
fn polynomial_document_round_trip() {
    let c = ctx2();
    let p = TruncPoly::from_terms(&c, [(vec![1, 0], Q::new(1, 2)), (vec![0, 2], q(-3))]).unwrap();
    let doc = p.to_doc();
    assert_eq!(TruncPoly::from_doc(&c, &doc).unwrap(), p);
}

fn poly() -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..6, 1i64..4), 0..6).prop_map(|terms| {
        let c = ctx2();
        TruncPoly::from_terms(&c, terms.into_iter().filter(|(a, b, _, _)| a + b < 4).map(|(a, b, n, d)| (vec![a, b], Q::new(n, d))))
            .unwrap()
    })
}

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..5, 1usize..5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
        .prop_map(|rows| RationalMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Q::int).collect()).collect()).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn kernel_is_exact_and_complete(m in matrix()) {
        let basis = m.kernel_basis();
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Q::is_zero));
        }
        prop_assert_eq!(m.rank() + basis.len(), m.cols());
        prop_assert_eq!(basis, m.kernel_basis());
    }

    #[test]
    fn solutions_solve(m in matrix(), seed in prop::collection::vec(-3i64..4, 4)) {
        let x: Vec<Q> = seed.into_iter().take(m.cols()).map(Q::int).chain(std::iter::repeat(Q::zero())).take(m.cols()).collect();
        let b = m.mul_vec(&x).unwrap();
        let v = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&v).unwrap(), b);
    }
}
