//! `F_lambda(X) = H_0(n_-, X (x) V^{(x) l})_lambda` with the operators
//! `y_i = Omega_{0i} + sum_{j<i} s_{ji} + (n-1)/2` and the slot permutations.
//!
//! Everything is computed on the full weight space `Y_lambda` of the tensor
//! product, which is then divided by `sum_i f_i Y_{lambda + alpha_i}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hecke::decompose::quotient;
use crate::hecke::FinModule;
use crate::linalg::{Matrix, Subspace};
use crate::rational::{qf, Q};
use crate::root_weyl::{tensor_weight_decompose, Weight};

use super::truncated::{depth_key, TruncatedOModule};

/// A tuple `c` of tensor slots (0-based letters), contributing
/// `eps_{c_1} + ... + eps_{c_l}` to the weight.
pub type Slots = Vec<u8>;

/// The weight space `(X (x) V^{(x) l})_nu`, with basis `(c, x)` for `c` in
/// lexicographic order and `x` running over a basis of `X_{nu - wt(c)}`.
pub struct TensorSpace {
    pub dim: usize,
    pub blocks: Vec<(Slots, Vec<i64>, usize, usize)>,
    index: HashMap<Slots, usize>,
}

fn slot_weight(n: usize, c: &[u8]) -> Weight {
    let mut v = vec![Q::zero(); n];
    for &x in c {
        v[x as usize] += Q::one();
    }
    Weight::new(v)
}

fn all_slots(n: usize, ell: usize) -> Vec<Slots> {
    let mut out = vec![Vec::new()];
    for _ in 0..ell {
        out = out
            .into_iter()
            .flat_map(|c: Slots| {
                (0..n as u8).map(move |x| {
                    let mut c2 = c.clone();
                    c2.push(x);
                    c2
                })
            })
            .collect();
    }
    out
}

impl TensorSpace {
    pub fn new(x: &TruncatedOModule, nu: &Weight, ell: usize) -> Result<Self> {
        let n = x.rank();
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for c in all_slots(n, ell) {
            let nx = nu.sub(&slot_weight(n, &c))?;
            let Some(key) = depth_key(x.top(), &nx) else { continue };
            let d = x.dim_at(&key)?;
            if d == 0 {
                continue;
            }
            index.insert(c.clone(), blocks.len());
            blocks.push((c, key, offset, d));
            offset += d;
        }
        Ok(TensorSpace { dim: offset, blocks, index })
    }

    fn offset_of(&self, c: &[u8]) -> Option<usize> {
        self.index.get(c).map(|&b| self.blocks[b].2)
    }
}

/// Depth `max(ht(mu - lambda), 0) + l + 2`, rounded up.
pub fn default_depth(mu: &Weight, lambda: &Weight, ell: usize) -> u32 {
    let ht: Q = mu.sub(lambda).map(|d| d.root_coords().iter().sum()).unwrap_or_else(|_| Q::zero());
    let ht = ht.ceil().to_integer();
    let ht: i64 = ht.try_into().unwrap_or(0);
    ht.max(0) as u32 + ell as u32 + 2
}

/// `X (x) V^{(x) l}` at `lambda`, before and after taking coinvariants.
#[derive(Clone, Debug)]
pub struct DirectImage {
    /// `F_lambda(X)`, with the image of `v (x) u_1^{l_1} (x) ... ` as cyclic
    /// vector when that vector exists and survives.
    pub module: FinModule,
    /// The same operators on `Y_lambda` itself.
    pub full: FinModule,
}

/// Matrix of `Omega_{0k}` (slot `k`, 0-based) on `Y_nu`.
fn omega_0k(x: &TruncatedOModule, y: &TensorSpace, k: usize) -> Result<Matrix> {
    let n = x.rank();
    let mut m = Matrix::zeros(y.dim, y.dim);
    for (c, key, off, d) in &y.blocks {
        let a = c[k] as usize;
        let diag = x.cartan(a, key);
        for j in 0..*d {
            m[(off + j, off + j)] += &diag;
        }
        for b in 0..n {
            if b == a {
                continue;
            }
            let Some((_, e)) = x.op(a, b, key)? else { continue };
            let mut c2 = c.clone();
            c2[k] = b as u8;
            let Some(off2) = y.offset_of(&c2) else {
                if e.is_zero() {
                    continue;
                }
                return Err(Error::Invariant("Omega leaves the weight space".into()));
            };
            for j in 0..*d {
                for i in 0..e.rows() {
                    let v = &e[(i, j)];
                    if !v.is_zero() {
                        m[(off2 + i, off + j)] += v;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Matrix of the slot transposition `(j k)` on `Y_nu`.
fn swap_slots(y: &TensorSpace, j: usize, k: usize) -> Matrix {
    let mut m = Matrix::zeros(y.dim, y.dim);
    for (c, _, off, d) in &y.blocks {
        let mut c2 = c.clone();
        c2.swap(j, k);
        let off2 = y.offset_of(&c2).expect("a permuted tuple has the same weight");
        for i in 0..*d {
            m[(off2 + i, off + i)] = Q::one();
        }
    }
    m
}

/// Image of `E_ba` (lowering, `a < b`) from `Y_{nu + eps_a - eps_b}` into
/// the span of `Y_nu`.
fn lowering_images(
    x: &TruncatedOModule,
    src: &TensorSpace,
    dst: &TensorSpace,
    a: usize,
    b: usize,
) -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for (c, key, _, d) in &src.blocks {
        let xpart = x.op(b, a, key)?;
        for j in 0..*d {
            let mut v = vec![Q::zero(); dst.dim];
            if let Some((_, f)) = xpart.as_ref().filter(|(_, f)| !f.is_zero()) {
                let off =
                    dst.offset_of(c).ok_or_else(|| Error::Invariant("lowering leaves the weight space".into()))?;
                for i in 0..f.rows() {
                    v[off + i] += &f[(i, j)];
                }
            }
            for k in 0..c.len() {
                if c[k] as usize == a {
                    let mut c2 = c.clone();
                    c2[k] = b as u8;
                    let off = dst
                        .offset_of(&c2)
                        .ok_or_else(|| Error::Invariant("lowering leaves the weight space".into()))?;
                    v[off + j] += Q::one();
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `(n_- Y)_lambda`, either as `sum_i f_i Y_{lambda + alpha_i}` over simple
/// roots or as the sum over all positive roots.
pub fn coinvariant_subspace(x: &TruncatedOModule, lambda: &Weight, ell: usize, all_roots: bool) -> Result<Subspace> {
    let n = x.rank();
    let y = TensorSpace::new(x, lambda, ell)?;
    let mut space = Subspace::new(y.dim);
    let pairs: Vec<(usize, usize)> = if all_roots {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    } else {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
    };
    for (a, b) in pairs {
        let mut shift = vec![Q::zero(); n];
        shift[a] += Q::one();
        shift[b] -= Q::one();
        let src = TensorSpace::new(x, &lambda.add(&Weight::new(shift))?, ell)?;
        for v in lowering_images(x, &src, &y, a, b)? {
            space.insert(&v);
        }
    }
    Ok(space)
}

/// Computes `F_lambda(X)` with its `H_l` action and checks the relations.
pub fn f_lambda_direct(x: &TruncatedOModule, lambda: &Weight, ell: usize) -> Result<DirectImage> {
    let n = x.rank();
    if lambda.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: lambda.rank() });
    }
    if ell == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    let y = TensorSpace::new(x, lambda, ell)?;
    let s: Vec<Matrix> = (0..ell - 1).map(|k| swap_slots(&y, k, k + 1)).collect();
    let shift = qf(n as i64 - 1, 2);
    let mut eps = Vec::with_capacity(ell);
    for i in 0..ell {
        let mut m = omega_0k(x, &y, i)?.add(&Matrix::scalar(y.dim, &shift));
        for j in 0..i {
            m = m.add(&swap_slots(&y, j, i));
        }
        eps.push(m);
    }
    let cyclic = tensor_weight_decompose(lambda, x.top(), ell).and_then(|parts| {
        let c: Slots = parts.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i as u8, k)).collect();
        y.offset_of(&c).map(|off| {
            let mut v = vec![Q::zero(); y.dim];
            v[off] = Q::one();
            v
        })
    });
    let full = FinModule::from_parts(ell, y.dim, s, eps, cyclic)?;
    let coinv = coinvariant_subspace(x, lambda, ell, false)?;
    let module = quotient(&full, &coinv);
    if let Err(f) = module.check_relations() {
        return Err(Error::Invariant(format!("coinvariants violate {}", f.relation)));
    }
    Ok(DirectImage { module, full })
}
