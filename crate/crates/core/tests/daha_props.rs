use dahecke::daha::{poly_times_word, HeckeElement, Poly};
use dahecke::rational::{q, Q};
use dahecke::root_weyl::Perm;
use proptest::prelude::*;

const RANK: usize = 3;

// exponents below 2 keep triple products under the default degree cap
fn element() -> impl Strategy<Value = HeckeElement> {
    let term = (0usize..6, prop::collection::vec(0u32..2, RANK), -3i64..4);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let perms = Perm::all(RANK);
        ts.into_iter().fold(HeckeElement::zero(RANK), |acc, (w, a, c)| {
            acc.add(&HeckeElement::term(perms[w].clone(), a, q(c))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(x in element(), y in element(), z in element()) {
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn evaluation_is_multiplicative(x in element(), y in element()) {
        let lhs = x.mul(&y).unwrap().evaluation().unwrap();
        let rhs = x.evaluation().unwrap().mul(&y.evaluation().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_an_automorphism(x in element(), y in element(), c in -3i64..4) {
        let c = Q::from_integer(c.into());
        let lhs = x.mul(&y).unwrap().twist(&c);
        let rhs = x.twist(&c).mul(&y.twist(&c)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(x in element()) {
        prop_assert_eq!(HeckeElement::parse(&x.to_string(), RANK).unwrap(), x);
    }

    #[test]
    fn straightening_independent_of_word(a in prop::collection::vec(0u32..4, RANK)) {
        let p: Poly = Poly::from([(a, q(1))]);
        // two reduced words of the longest element, plus a non-reduced one
        let w1 = poly_times_word(&p, &[1, 2, 1], RANK);
        let w2 = poly_times_word(&p, &[2, 1, 2], RANK);
        let w3 = poly_times_word(&p, &[1, 2, 2, 2, 1], RANK);
        prop_assert_eq!(&w1, &w2);
        prop_assert_eq!(&w1, &w3);
    }
}

#[test]
fn symmetric_polynomials_are_central() {
    for s in ["e1 + e2 + e3", "e1*e2 + e1*e3 + e2*e3", "e1^3 + e2^3 + e3^3 + 2*e1*e2*e3"] {
        let x = HeckeElement::parse(s, RANK).unwrap();
        assert!(x.is_symmetric_polynomial());
        assert!(x.is_central().unwrap(), "{s}");
    }
    assert!(!HeckeElement::parse("e1 + e2", RANK).unwrap().is_central().unwrap());
}
