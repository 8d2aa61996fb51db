use dahecke::category_o::{default_depth, f_lambda_direct, simple_truncated, verma_truncated};
use dahecke::functor::{classify_simples, f_of_simple, f_of_verma, nonzero_condition};
use dahecke::hecke::{composition_factors, iso_test};
use dahecke::kl::{check_dominant, grothendieck_simple_image, in_tensor_weights};
use dahecke::root_weyl::{coset_data, dot_action, Perm, Weight};
use dahecke::verify::{dominant_grid, grid, multiplicity_grid};

#[test]
fn simples_are_isomorphic_exactly_within_a_double_coset() {
    for n in 2..=3 {
        for lambda in dominant_grid(n) {
            let j = check_dominant(&lambda).unwrap();
            let nonzero: Vec<_> = Perm::all(n)
                .into_iter()
                .filter(|w| in_tensor_weights(&lambda, w).unwrap())
                .map(|w| (coset_data(&w, &j).unwrap().w_lr, f_of_simple(&lambda, &w).unwrap()))
                .filter(|(_, m)| !m.is_zero())
                .collect();
            for (a, ma) in &nonzero {
                for (b, mb) in &nonzero {
                    assert_eq!(a == b, iso_test(ma, mb).unwrap().is_some(), "{lambda}: {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn verma_images_for_unequal_rank_and_length() {
    for (n, ell) in [(2, 1), (2, 3), (3, 2), (2, 4)] {
        for lambda in grid(n) {
            for w in Perm::all(n) {
                let mu = dot_action(&w, &lambda).unwrap();
                let x = verma_truncated(&mu, default_depth(&mu, &lambda, ell));
                let direct = f_lambda_direct(&x, &lambda, ell).unwrap().module;
                let combinatorial = f_of_verma(&lambda, &mu, ell).unwrap();
                assert!(iso_test(&direct, &combinatorial).unwrap().is_some(), "n={n} l={ell} {lambda} {mu}");
            }
        }
    }
}

#[test]
fn shifted_verma_tops() {
    // tops away from the dot orbit of lambda
    let lambda = Weight::zero(2);
    for mu in [Weight::from_ints(&[1, -1]), Weight::from_ints(&[2, 0]), Weight::from_ints(&[0, 1])] {
        let x = verma_truncated(&mu, default_depth(&mu, &lambda, 2));
        let direct = f_lambda_direct(&x, &lambda, 2).unwrap().module;
        let combinatorial = f_of_verma(&lambda, &mu, 2).unwrap();
        assert!(iso_test(&direct, &combinatorial).unwrap().is_some(), "{mu}");
    }
}

#[test]
fn grothendieck_images_are_single_classes_in_rank_four() {
    for lambda in multiplicity_grid(4) {
        let j = check_dominant(&lambda).unwrap();
        for w in Perm::all(4) {
            if !in_tensor_weights(&lambda, &w).unwrap() {
                continue;
            }
            let image = grothendieck_simple_image(&lambda, &w).unwrap();
            let cond = nonzero_condition(&lambda, &w).unwrap();
            if cond {
                let w_lr = coset_data(&w, &j).unwrap().w_lr;
                assert_eq!(image.len(), 1, "{lambda} {w}");
                assert_eq!(image.get(&w_lr), Some(&1), "{lambda} {w}");
            } else {
                assert!(image.is_empty(), "{lambda} {w}: {image:?}");
            }
        }
    }
}

#[test]
fn classification_covers_the_principal_series() {
    for n in 2..=3 {
        for lambda in dominant_grid(n) {
            let classes = classify_simples(&lambda).unwrap();
            let factors = composition_factors(&f_of_verma(&lambda, &lambda, n).unwrap()).unwrap();
            for c in &classes {
                let hit = factors.iter().any(|(f, _)| iso_test(f, &c.module).unwrap().is_some());
                assert!(hit, "{lambda}: {} is not a factor of the principal series", c.w_lr);
            }
        }
    }
}

#[test]
fn simple_images_through_truncated_simples() {
    let lambda = Weight::from_ints(&[0, 1, 1]);
    for w in Perm::all(3) {
        let mu = dot_action(&w, &lambda).unwrap();
        let x = simple_truncated(&mu, default_depth(&mu, &lambda, 3));
        let direct = f_lambda_direct(&x, &lambda, 3).unwrap().module;
        if in_tensor_weights(&lambda, &w).unwrap() {
            let combinatorial = f_of_simple(&lambda, &w).unwrap();
            assert!(iso_test(&direct, &combinatorial).unwrap().is_some(), "{w}");
        } else {
            assert!(direct.is_zero(), "{w}");
        }
    }
}
