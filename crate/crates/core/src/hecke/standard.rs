use std::collections::HashMap;

use num_traits::One;

use crate::daha::{poly_times_word, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;
use crate::root_weyl::Perm;

use super::module::FinModule;
use super::segment::{Segment, SegmentSequence};

/// `1_[a,b]`: every `s_i` acts by 1 and `eps_i` by `a + i - 1`. A zero-length
/// segment gives the line over `H_0`.
pub fn one_dim_rep(seg: &Segment) -> FinModule {
    let ell = seg.len();
    if ell == 0 {
        return FinModule::rank_zero_line();
    }
    let s = vec![Matrix::identity(1); ell - 1];
    let eps = seg.values().iter().map(|v| Matrix::scalar(1, v)).collect();
    FinModule::from_parts(ell, 1, s, eps, Some(vec![Q::one()])).expect("shapes are consistent")
}

/// Minimal length representatives of `W_l / (W_{l_1} x ... x W_{l_k})`:
/// one-line notation increasing inside each block of positions. Sorted by
/// length, then lexicographically.
pub fn minimal_coset_reps(lengths: &[usize]) -> Vec<Perm> {
    let ell: usize = lengths.iter().sum();
    let blocks = block_bounds(lengths);
    Perm::all(ell)
        .into_iter()
        .filter(|w| {
            let v = w.one_line();
            blocks.iter().all(|&(lo, hi)| v[lo..hi].windows(2).all(|p| p[0] < p[1]))
        })
        .collect()
}

fn block_bounds(lengths: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for &l in lengths {
        out.push((start, start + l));
        start += l;
    }
    out
}

fn coset_rep(w: &Perm, blocks: &[(usize, usize)]) -> Perm {
    let mut v = w.one_line();
    for &(lo, hi) in blocks {
        v[lo..hi].sort_unstable();
    }
    Perm::from_one_line(&v).expect("sorting blocks keeps a permutation")
}

/// `M(Delta)`, induced from the tensor product of the segment lines. The
/// basis is `r (x) 1_Delta` for `r` in [`minimal_coset_reps`]; the cyclic
/// vector is the first basis vector.
pub fn induce_standard(delta: &SegmentSequence) -> Result<FinModule> {
    let delta = delta.nonempty();
    let lengths = delta.lengths();
    let ell: usize = lengths.iter().sum();
    if ell == 0 {
        return Err(Error::Precondition("standard module needs total length at least 1".into()));
    }
    let zeta = delta.zeta();
    let blocks = block_bounds(&lengths);
    let reps = minimal_coset_reps(&lengths);
    let index: HashMap<Perm, usize> = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let dim = reps.len();

    let mut s = Vec::with_capacity(ell.saturating_sub(1));
    for i in 1..ell {
        let si = Perm::simple(ell, i);
        let mut m = Matrix::zeros(dim, dim);
        for (col, r) in reps.iter().enumerate() {
            m[(index[&coset_rep(&si.mul(r), &blocks)], col)] = Q::one();
        }
        s.push(m);
    }

    // eps_j r = sum g f in normal form; f acts on 1_Delta by f(zeta) and g
    // by its coset representative (the parabolic part acts trivially).
    let mut eps = Vec::with_capacity(ell);
    for j in 0..ell {
        let mut var = vec![0u32; ell];
        var[j] = 1;
        let p: Poly = Poly::from([(var, Q::one())]);
        let mut m = Matrix::zeros(dim, dim);
        for (col, r) in reps.iter().enumerate() {
            let straightened = poly_times_word(&p, &r.reduced_word(), ell);
            for (g, a, c) in straightened.terms() {
                let value =
                    a.iter().zip(&zeta).fold(c.clone(), |acc, (&k, z)| acc * num_traits::pow(z.clone(), k as usize));
                m[(index[&coset_rep(g, &blocks)], col)] += value;
            }
        }
        eps.push(m);
    }

    let mut cyclic = vec![Q::from_integer(0.into()); dim];
    cyclic[0] = Q::one();
    let module = FinModule::from_parts(ell, dim, s, eps, Some(cyclic))?;
    if let Err(f) = module.check_relations() {
        return Err(Error::Invariant(format!("induced module violates {}", f.relation)));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn seq(s: &str) -> SegmentSequence {
        SegmentSequence::parse(s).unwrap()
    }

    #[test]
    fn one_dim_examples() {
        let m = one_dim_rep(&Segment::parse("[0,2]").unwrap());
        assert_eq!((m.rank(), m.dim()), (3, 1));
        assert_eq!(m.eps(3)[(0, 0)], q(2));
        assert!(m.check_relations().is_ok());
        let h = one_dim_rep(&Segment::parse("[-1/2,1/2]").unwrap());
        assert_eq!(h.eps(1)[(0, 0)], qf(-1, 2));
        assert_eq!(one_dim_rep(&Segment::parse("[3,2]").unwrap()).rank(), 0);
    }

    #[test]
    fn single_segment_is_the_line() {
        let d = seq("[0,2]");
        assert_eq!(induce_standard(&d).unwrap(), one_dim_rep(&d.segments()[0]));
    }

    #[test]
    fn three_point_module() {
        let m = induce_standard(&seq("[0,1];[-1,-1]")).unwrap();
        assert_eq!(m.dim(), 3);
        let v = m.cyclic().unwrap().clone();
        for (i, z) in [q(0), q(1), q(-1)].iter().enumerate() {
            assert_eq!(m.eps(i + 1).mul_vec(&v), v.iter().map(|x| x * z).collect::<Vec<_>>());
        }
    }

    #[test]
    fn principal_series_dimension() {
        let m = induce_standard(&seq("[1,1];[0,0];[-1,-1]")).unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(induce_standard(&seq("[0,1];[1,0];[-1,-1]")).unwrap().dim(), 3);
    }

    #[test]
    fn reps_are_sorted_minimal() {
        let reps = minimal_coset_reps(&[2, 1]);
        let lines: Vec<Vec<usize>> = reps.iter().map(Perm::one_line).collect();
        assert_eq!(lines, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 3, 1]]);
    }
}
