use dahecke::kl::{multiplicity, IntPolynomial, KlEngine, MultiplicityMatrix, Side};
use dahecke::root_weyl::{bruhat_leq, Perm, Weight};
use dahecke::verify::canonical_basis_kl;
use proptest::prelude::*;

fn pair(n: usize) -> impl Strategy<Value = (Perm, Perm)> {
    let all = Perm::all(n);
    let k = all.len();
    (0..k, 0..k).prop_map(move |(a, b)| (all[a].clone(), all[b].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constant_term_and_degree((x, y) in pair(5)) {
        let p = KlEngine::global().poly(&x, &y).unwrap();
        if bruhat_leq(&x, &y) {
            prop_assert_eq!(p.coeff(0), 1);
            if x != y {
                let bound = (y.length() - x.length() - 1) / 2;
                prop_assert!(p.degree().unwrap() <= bound);
            }
            prop_assert!(p.coeffs().iter().all(|&c| c >= 0));
        } else {
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn inverse_and_diagram_symmetry((x, y) in pair(5)) {
        let e = KlEngine::global();
        let p = e.poly(&x, &y).unwrap();
        prop_assert_eq!(&p, &e.poly(&x.inverse(), &y.inverse()).unwrap());
        let w0 = Perm::longest(5);
        let c = |v: &Perm| w0.mul(v).mul(&w0);
        prop_assert_eq!(&p, &e.poly(&c(&x), &c(&y)).unwrap());
    }
}

#[test]
fn recursion_matches_canonical_basis_in_s5() {
    let oracle = canonical_basis_kl(5).unwrap();
    let e = KlEngine::new();
    for ((x, y), want) in &oracle {
        assert_eq!(&e.poly(x, y).unwrap(), want, "P at ({x}, {y})");
    }
    let first_nontrivial = oracle.values().filter(|p| p.degree() == Some(1)).count();
    assert!(first_nontrivial > 0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let e = KlEngine::new();
    let (x, y) = (Perm::identity(4), Perm::longest(4));
    for a in Perm::all(4) {
        e.poly(&x, &a).unwrap();
    }
    e.save(&path).unwrap();
    let f = KlEngine::new();
    assert_eq!(f.load(&path).unwrap(), e.cached_len());
    assert_eq!(f.poly(&x, &y).unwrap(), IntPolynomial::one());
    std::fs::write(&path, "garbage").unwrap();
    assert!(KlEngine::new().load(&path).is_err());
}

#[test]
fn multiplicity_matrices_are_unitriangular() {
    for lambda in [Weight::zero(3), Weight::from_ints(&[0, 1, 1]), Weight::zero(4), Weight::from_ints(&[-1, -1, 0, 0])]
    {
        assert!(MultiplicityMatrix::verma(&lambda).unwrap().is_unitriangular(), "{lambda}");
        assert!(MultiplicityMatrix::standard(&lambda).unwrap().is_unitriangular(), "{lambda}");
    }
}

#[test]
fn verma_multiplicities_at_zero() {
    let z = Weight::zero(3);
    let w0 = Perm::longest(3);
    for w in Perm::all(3) {
        assert_eq!(multiplicity(&z, &Perm::identity(3), &w, Side::Verma).unwrap(), 1);
        let expect = u64::from(w == w0);
        assert_eq!(multiplicity(&z, &w0, &w, Side::Verma).unwrap(), expect);
    }
}
