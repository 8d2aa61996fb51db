//! The functor `F_lambda` on Verma and simple modules, computed through
//! segments, and the classification of simples with central character
//! `gamma_{lambda + rho}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{
    central_character, composition_factors, induce_standard, iso_test, simple_quotient, FinModule, Segment,
    SegmentSequence,
};
use crate::kl::{check_dominant, in_tensor_weights};
use crate::rational::{fmt_q, q};
use crate::root_weyl::{coset_data, dot_action, rho, tensor_weight_decompose, Perm, Weight};

/// `Delta_{lambda,mu} = ([mu'_1, mu'_1 + l_1 - 1], ..., [mu'_n, mu'_n + l_n - 1])`
/// with `mu' = mu + rho`; zero-length segments are kept.
pub fn segments_from_pair(lambda: &Weight, mu: &Weight, ell: usize) -> Result<Option<SegmentSequence>> {
    if lambda.rank() != mu.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), got: mu.rank() });
    }
    let Some(parts) = tensor_weight_decompose(lambda, mu, ell) else {
        return Ok(None);
    };
    let shifted = mu.add(&rho(mu.rank()))?;
    let segs = parts
        .iter()
        .zip(shifted.coords())
        .map(|(&l, a)| Segment::new(a.clone(), a + q(l as i64 - 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(SegmentSequence::new(segs)))
}

/// `F_lambda(M(mu)) = M(lambda, mu)`, or the zero module.
pub fn f_of_verma(lambda: &Weight, mu: &Weight, ell: usize) -> Result<FinModule> {
    match segments_from_pair(lambda, mu, ell)? {
        Some(delta) => induce_standard(&delta),
        None => Ok(FinModule::zero(ell)),
    }
}

/// `<w o lambda + rho, h_i> <= 0` for every `i` with `<lambda + rho, h_i> = 0`.
/// Also checks agreement with `w o lambda = w_L o lambda` and
/// `w o lambda = w_LR o lambda`.
pub fn nonzero_condition(lambda: &Weight, w: &Perm) -> Result<bool> {
    let j = check_dominant(lambda)?;
    if w.n() != lambda.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), got: w.n() });
    }
    let nu = lambda.add(&rho(lambda.rank()))?;
    let image = w.act(&nu);
    let cond = j.generators().iter().all(|&i| image.pair_coroot(i) <= q(0));
    let cd = coset_data(w, &j)?;
    let wl = dot_action(&cd.w_l, lambda)?;
    let wlr = dot_action(&cd.w_lr, lambda)?;
    let here = dot_action(w, lambda)?;
    if cond != (here == wl) || cond != (here == wlr) {
        return Err(Error::Invariant(format!(
            "condition on {} disagrees with the coset characterization",
            w.word_string()
        )));
    }
    Ok(cond)
}

fn check_simple_setting(lambda: &Weight, w: &Perm) -> Result<()> {
    check_dominant(lambda)?;
    if w.n() != lambda.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), got: w.n() });
    }
    if !in_tensor_weights(lambda, w)? {
        return Err(Error::Precondition(format!(
            "lambda - {} o lambda is not a weight of V^(x){}",
            w.word_string(),
            lambda.rank()
        )));
    }
    Ok(())
}

/// `F_lambda(L(w o lambda))` for `n = l`: the simple head of
/// `M(lambda, w o lambda)` when [`nonzero_condition`] holds, else zero.
pub fn f_of_simple(lambda: &Weight, w: &Perm) -> Result<FinModule> {
    check_simple_setting(lambda, w)?;
    let ell = lambda.rank();
    if !nonzero_condition(lambda, w)? {
        return Ok(FinModule::zero(ell));
    }
    let mu = dot_action(w, lambda)?;
    simple_quotient(&f_of_verma(lambda, &mu, ell)?)
}

/// A simple `L(lambda, w o lambda)` labelled by the longest element of its
/// double coset.
#[derive(Clone, Debug)]
pub struct SimpleClass {
    pub w_lr: Perm,
    pub module: FinModule,
}

/// One simple per double coset in `S(lambda)`, checked pairwise
/// non-isomorphic and matched against the composition factors of the
/// principal series.
pub fn classify_simples(lambda: &Weight) -> Result<Vec<SimpleClass>> {
    let j = check_dominant(lambda)?;
    let mut classes: Vec<SimpleClass> = Vec::new();
    for w in j.double_coset_reps() {
        if !in_tensor_weights(lambda, &w)? {
            continue;
        }
        let module = f_of_simple(lambda, &w)?;
        if module.is_zero() {
            return Err(Error::Invariant(format!("F_lambda(L({} o lambda)) vanished", w.word_string())));
        }
        for c in &classes {
            if iso_test(&c.module, &module)?.is_some() {
                return Err(Error::Invariant(format!(
                    "simples for {} and {} are isomorphic",
                    c.w_lr.word_string(),
                    w.word_string()
                )));
            }
        }
        classes.push(SimpleClass { w_lr: w, module });
    }
    let principal = f_of_verma(lambda, lambda, lambda.rank())?;
    for (factor, _) in composition_factors(&principal)? {
        let mut hit = false;
        for c in &classes {
            if iso_test(&c.module, &factor)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Err(Error::Invariant(format!(
                "a {}-dimensional factor of the principal series is missing from the classification",
                factor.dim()
            )));
        }
    }
    Ok(classes)
}

/// Coset words, dimensions and central characters of a classification.
pub fn classification_manifest(lambda: &Weight, classes: &[SimpleClass]) -> Result<Value> {
    let entries = classes
        .iter()
        .map(|c| {
            let chi = central_character(&c.module)?;
            Ok(json!({
                "w": c.w_lr.word_string(),
                "one_line": c.w_lr.to_string(),
                "dim": c.module.dim(),
                "central_character": chi.iter().map(fmt_q).collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "lambda": lambda.to_string(), "count": classes.len(), "classes": entries }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn segment_examples() {
        let z = Weight::zero(3);
        assert_eq!(segments_from_pair(&z, &z, 3).unwrap().unwrap().to_string(), "[1,1];[0,0];[-1,-1]");
        let mu = dot_action(&w("s1", 3), &z).unwrap();
        assert_eq!(segments_from_pair(&z, &mu, 3).unwrap().unwrap().to_string(), "[0,1];[1,0];[-1,-1]");
        assert!(segments_from_pair(&z, &Weight::from_ints(&[3, 0, -3]), 3).unwrap().is_none());
    }

    #[test]
    fn verma_images() {
        let z2 = Weight::zero(2);
        assert_eq!(f_of_verma(&z2, &z2, 2).unwrap().dim(), 2);
        let z3 = Weight::zero(3);
        let mu = dot_action(&w("s1", 3), &z3).unwrap();
        assert_eq!(f_of_verma(&z3, &mu, 3).unwrap().dim(), 3);
        assert_eq!(f_of_verma(&z2, &Weight::from_ints(&[4, -4]), 2).unwrap().dim(), 0);
    }

    #[test]
    fn condition_examples() {
        let z = Weight::zero(3);
        for p in Perm::all(3) {
            assert!(nonzero_condition(&z, &p).unwrap());
        }
        // lambda + rho = (1,1,0) up to the sum-zero shift
        let lam = Weight::from_ints(&[0, 1, 1]);
        assert!(nonzero_condition(&lam, &Perm::identity(3)).unwrap());
        assert!(nonzero_condition(&lam, &w("s1", 3)).unwrap());
        assert!(!nonzero_condition(&lam, &w("s2", 3)).unwrap());
        assert!(nonzero_condition(&lam, &w("s1 s2", 3)).unwrap());
    }

    #[test]
    fn simple_images_rank_two() {
        let z = Weight::zero(2);
        assert_eq!(f_of_simple(&z, &Perm::identity(2)).unwrap().dim(), 1);
        assert_eq!(f_of_simple(&z, &w("s1", 2)).unwrap().dim(), 1);
        assert_eq!(classify_simples(&z).unwrap().len(), 2);
        assert_eq!(classify_simples(&Weight::zero(1)).unwrap().len(), 1);
    }
}
