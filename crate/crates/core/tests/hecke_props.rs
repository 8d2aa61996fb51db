use dahecke::hecke::{
    central_character, composition_factors, induce_standard, is_irreducible, iso_test, simple_quotient,
    trace_form_head, FinModule, Segment, SegmentSequence,
};
use dahecke::linalg::Matrix;
use dahecke::rational::{q, qf, Q};
use proptest::prelude::*;

/// Up to three segments of total length at most 4, starting at half-integers.
fn sequence() -> impl Strategy<Value = SegmentSequence> {
    prop::collection::vec((0usize..3, -4i64..5), 1..4)
        .prop_filter("total length 1..=4", |v| {
            let t: usize = v.iter().map(|x| x.0).sum();
            (1..=4).contains(&t)
        })
        .prop_map(|v| {
            SegmentSequence::new(
                v.into_iter()
                    .map(|(l, a)| {
                        let a = qf(a, 2);
                        Segment::new(a.clone(), a + q(l as i64 - 1)).unwrap()
                    })
                    .collect(),
            )
        })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn unitriangular(dim: usize, seed: &[i64]) -> Matrix {
    let mut m = Matrix::identity(dim);
    let mut k = 0;
    for r in 0..dim {
        for c in r + 1..dim {
            m[(r, c)] = q(seed[k % seed.len()]);
            k += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn standard_modules_satisfy_relations(delta in sequence()) {
        let m = induce_standard(&delta).unwrap();
        prop_assert!(m.check_relations().is_ok());
        let want = factorial(delta.total_len()) / delta.lengths().iter().map(|&l| factorial(l)).product::<usize>();
        prop_assert_eq!(m.dim(), want);
    }

    #[test]
    fn central_character_is_the_segment_content(delta in sequence()) {
        let m = induce_standard(&delta).unwrap();
        let mut zeta = delta.zeta();
        zeta.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(central_character(&m).unwrap(), zeta);
    }

    #[test]
    fn factors_are_simple_and_fill_the_module(delta in sequence()) {
        let m = induce_standard(&delta).unwrap();
        let factors = composition_factors(&m).unwrap();
        let total: usize = factors.iter().map(|(f, k)| f.dim() * k).sum();
        prop_assert_eq!(total, m.dim());
        for (f, _) in &factors {
            prop_assert!(is_irreducible(f).unwrap());
        }
    }

    #[test]
    fn conjugate_modules_are_isomorphic(delta in sequence(), seed in prop::collection::vec(-2i64..3, 1..6)) {
        let m = induce_standard(&delta).unwrap();
        let n = m.change_basis(&unitriangular(m.dim(), &seed)).unwrap();
        let t = iso_test(&m, &n).unwrap().expect("conjugate modules are isomorphic");
        prop_assert!(t.is_invertible());
        for (a, b) in m.generators().iter().zip(n.generators()) {
            prop_assert_eq!(t.mul(a), b.mul(&t));
        }
    }

    #[test]
    fn json_round_trip(delta in sequence()) {
        let m = induce_standard(&delta).unwrap();
        let back = FinModule::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
    }
}

#[test]
fn heads_agree_with_the_trace_form() {
    for s in ["[0,0];[1,1]", "[0,0];[1,1];[2,2]", "[0,1];[1,1]", "[1,1];[0,0];[1,1]", "[0,0];[-1,-1];[1,1]"] {
        let m = induce_standard(&SegmentSequence::parse(s).unwrap()).unwrap();
        let b = trace_form_head(&m).unwrap();
        match simple_quotient(&m) {
            Ok(a) => assert!(iso_test(&a, &b).unwrap().is_some(), "{s}"),
            Err(_) => assert!(!is_irreducible(&b).unwrap(), "{s}"),
        }
    }
}

#[test]
fn linked_pair_has_two_factors() {
    let m = induce_standard(&SegmentSequence::parse("[0,0];[1,1]").unwrap()).unwrap();
    let f = composition_factors(&m).unwrap();
    assert_eq!(f.len(), 2);
    let generic = induce_standard(&SegmentSequence::parse("[0,0];[1/2,1/2]").unwrap()).unwrap();
    assert!(is_irreducible(&generic).unwrap());
    let _: Vec<Q> = central_character(&generic).unwrap();
}
