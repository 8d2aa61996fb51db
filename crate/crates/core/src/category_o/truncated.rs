//! Highest weight modules of `sl_n` cut off below a given depth.
//!
//! `M(mu)` has the PBW basis `f_{b_1}^{k_1} ... f_{b_r}^{k_r} v` over the
//! positive roots in height order. Matrix units act through commutator
//! straightening; diagonal units `E_pp` act on a weight space by the
//! sum-zero coordinate `nu_p`, which extends the `sl_n` action to `gl_n` with
//! the identity acting by zero.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{fmt_q, is_integer, to_i64, Q};
use crate::root_weyl::Weight;

use super::sln::{Root, SLnData};

/// Exponents over [`SLnData::positive_roots`].
pub type Monomial = Vec<u32>;
type Vector = BTreeMap<Monomial, Q>;

fn add_to(v: &mut Vector, k: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// `[E_pq, E_rs] = d_qr E_ps - d_sp E_rq`.
fn bracket(p: usize, q: usize, r: usize, s: usize) -> Vec<((usize, usize), Q)> {
    let mut out = Vec::new();
    if q == r {
        out.push(((p, s), Q::one()));
    }
    if s == p {
        out.push(((r, q), -Q::one()));
    }
    out
}

/// Memoized straightening in `M(mu)`.
struct Pbw {
    mu: Vec<Q>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    f_memo: RefCell<HashMap<(usize, Monomial), Vector>>,
    e_memo: RefCell<HashMap<(usize, usize, Monomial), Vector>>,
}

impl Pbw {
    fn new(mu: &Weight) -> Self {
        let g = SLnData::new(mu.rank());
        let roots = g.positive_roots();
        let index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        Pbw {
            mu: mu.coords().to_vec(),
            roots,
            index,
            f_memo: RefCell::new(HashMap::new()),
            e_memo: RefCell::new(HashMap::new()),
        }
    }

    fn weight_coord(&self, m: &Monomial, p: usize) -> Q {
        let mut x = self.mu[p].clone();
        for (k, &(a, b)) in m.iter().zip(&self.roots) {
            if *k == 0 {
                continue;
            }
            if p == a {
                x -= Q::from_integer((*k).into());
            } else if p == b {
                x += Q::from_integer((*k).into());
            }
        }
        x
    }

    /// `f_root * m` in normal order.
    fn mult_f(&self, root: usize, m: &Monomial) -> Vector {
        let first = m.iter().position(|&k| k > 0);
        if first.is_none_or(|f| root <= f) {
            let mut out = m.clone();
            out[root] += 1;
            return Vector::from([(out, Q::one())]);
        }
        let key = (root, m.clone());
        if let Some(v) = self.f_memo.borrow().get(&key) {
            return v.clone();
        }
        let g = first.expect("checked above");
        let mut rest = m.clone();
        rest[g] -= 1;
        // f_b f_g rest = f_g (f_b rest) + [f_b, f_g] rest
        let mut out = Vector::new();
        for (t, c) in self.mult_f(root, &rest) {
            for (u, d) in self.mult_f(g, &t) {
                add_to(&mut out, u, &c * d);
            }
        }
        let (a1, b1) = self.roots[root];
        let (a2, b2) = self.roots[g];
        for ((p, s), c) in bracket(b1, a1, b2, a2) {
            for (u, d) in self.apply(p, s, &rest) {
                add_to(&mut out, u, &c * d);
            }
        }
        self.f_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `E_pq * m`.
    fn apply(&self, p: usize, q: usize, m: &Monomial) -> Vector {
        if p == q {
            let c = self.weight_coord(m, p);
            let mut out = Vector::new();
            add_to(&mut out, m.clone(), c);
            return out;
        }
        if p > q {
            return self.mult_f(self.index[&(q, p)], m);
        }
        let Some(g) = m.iter().position(|&k| k > 0) else {
            return Vector::new();
        };
        let key = (p, q, m.clone());
        if let Some(v) = self.e_memo.borrow().get(&key) {
            return v.clone();
        }
        let mut rest = m.clone();
        rest[g] -= 1;
        let (a, b) = self.roots[g];
        // E_pq f_g rest = f_g (E_pq rest) + [E_pq, E_ba] rest
        let mut out = Vector::new();
        for (t, c) in self.apply(p, q, &rest) {
            for (u, d) in self.mult_f(g, &t) {
                add_to(&mut out, u, &c * d);
            }
        }
        for ((r, s), c) in bracket(p, q, b, a) {
            for (u, d) in self.apply(r, s, &rest) {
                add_to(&mut out, u, &c * d);
            }
        }
        self.e_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn apply_vec(&self, p: usize, q: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (m, c) in v {
            for (u, d) in self.apply(p, q, m) {
                add_to(&mut out, u, c * d);
            }
        }
        out
    }

    /// Kostant partitions of `key`, sorted.
    fn partitions(&self, key: &[i64]) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.roots.len()];
        self.partitions_rec(0, key.to_vec(), &mut cur, &mut out);
        out.sort();
        out
    }

    fn partitions_rec(&self, i: usize, left: Vec<i64>, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.roots.len() {
            if left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (a, b) = self.roots[i];
        let mut left = left;
        let mut k = 0;
        loop {
            self.partitions_rec(i + 1, left.clone(), cur, out);
            if (a..b).any(|j| left[j] == 0) {
                break;
            }
            for x in left.iter_mut().take(b).skip(a) {
                *x -= 1;
            }
            k += 1;
            cur[i] = k;
        }
        cur[i] = 0;
    }
}

/// Root coordinates of `mu - nu` when they are nonnegative integers.
pub fn depth_key(mu: &Weight, nu: &Weight) -> Option<Vec<i64>> {
    let diff = mu.sub(nu).ok()?;
    diff.root_coords().iter().map(|c| if is_integer(c) { to_i64(c).filter(|&x| x >= 0) } else { None }).collect()
}

fn key_depth(key: &[i64]) -> u32 {
    key.iter().sum::<i64>() as u32
}

fn shift_key(key: &[i64], p: usize, q: usize) -> Vec<i64> {
    // E_pq raises the weight by eps_p - eps_q, which lowers the depth key.
    let mut k = key.to_vec();
    let (lo, hi, sign) = if p < q { (p, q, -1) } else { (q, p, 1) };
    for x in k.iter_mut().take(hi).skip(lo) {
        *x += sign;
    }
    k
}

/// Which highest weight module a truncation represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OKind {
    Verma,
    Simple,
}

/// Weight spaces `nu` with `ht(mu - nu) <= depth`, and the matrices of every
/// `E_pq` (`p != q`) between stored spaces.
#[derive(Clone, Debug)]
pub struct TruncatedOModule {
    kind: OKind,
    top: Weight,
    depth: u32,
    dims: BTreeMap<Vec<i64>, usize>,
    ops: HashMap<(usize, usize, Vec<i64>), Matrix>,
}

fn keys_up_to(r: usize, depth: u32) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for k in &out {
            let used: i64 = k.iter().sum();
            for x in 0..=(i64::from(depth) - used) {
                let mut k2 = k.clone();
                k2.push(x);
                next.push(k2);
            }
        }
        out = next;
    }
    out
}

struct VermaData {
    pbw: Pbw,
    bases: BTreeMap<Vec<i64>, Vec<Monomial>>,
}

impl VermaData {
    fn new(mu: &Weight, depth: u32) -> Self {
        let pbw = Pbw::new(mu);
        let bases = keys_up_to(mu.rank() - 1, depth).into_iter().map(|k| (k.clone(), pbw.partitions(&k))).collect();
        VermaData { pbw, bases }
    }

    fn op_matrix(&self, p: usize, q: usize, key: &[i64]) -> Option<(Vec<i64>, Matrix)> {
        let target = shift_key(key, p, q);
        let tb = self.bases.get(&target)?;
        let sb = &self.bases[key];
        let pos: HashMap<&Monomial, usize> = tb.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::zeros(tb.len(), sb.len());
        for (col, m) in sb.iter().enumerate() {
            for (u, c) in self.pbw.apply(p, q, m) {
                mat[(pos[&u], col)] = c;
            }
        }
        Some((target, mat))
    }

    /// `<m_i v, m_j v>`: the `v`-coefficient of `sigma(m_i) m_j v`.
    fn gram(&self, key: &[i64]) -> Matrix {
        let basis = &self.bases[key];
        let k = basis.len();
        let mut g = Matrix::zeros(k, k);
        let empty: Monomial = vec![0; self.pbw.roots.len()];
        for (j, mj) in basis.iter().enumerate() {
            for (i, mi) in basis.iter().enumerate() {
                let mut v = Vector::from([(mj.clone(), Q::one())]);
                for (r, &e) in mi.iter().enumerate() {
                    let (a, b) = self.pbw.roots[r];
                    for _ in 0..e {
                        v = self.pbw.apply_vec(a, b, &v);
                    }
                }
                g[(i, j)] = v.get(&empty).cloned().unwrap_or_else(Q::zero);
            }
        }
        g
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q))).collect()
}

/// Truncated Verma module `M(mu)`.
pub fn verma_truncated(mu: &Weight, depth: u32) -> TruncatedOModule {
    let data = VermaData::new(mu, depth);
    let mut ops = HashMap::new();
    for key in data.bases.keys() {
        for (p, q) in all_pairs(mu.rank()) {
            if let Some((_, m)) = data.op_matrix(p, q, key) {
                ops.insert((p, q, key.clone()), m);
            }
        }
    }
    TruncatedOModule {
        kind: OKind::Verma,
        top: mu.clone(),
        depth,
        dims: data.bases.iter().map(|(k, b)| (k.clone(), b.len())).collect(),
        ops,
    }
}

/// Truncated simple module `L(mu)`: each Verma weight space modulo the
/// radical of the contravariant form.
pub fn simple_truncated(mu: &Weight, depth: u32) -> TruncatedOModule {
    let data = VermaData::new(mu, depth);
    // quotient map R (rref rows of the Gram matrix) and lift (units at pivots)
    let mut quot: BTreeMap<Vec<i64>, (Matrix, Matrix)> = BTreeMap::new();
    for key in data.bases.keys() {
        let g = data.gram(key);
        let k = g.rows();
        let (red, pivots) = g.rref();
        let r = pivots.len();
        let proj = red.block(0, r, 0, k);
        let mut lift = Matrix::zeros(k, r);
        for (i, &p) in pivots.iter().enumerate() {
            lift[(p, i)] = Q::one();
        }
        quot.insert(key.clone(), (proj, lift));
    }
    let mut ops = HashMap::new();
    for key in data.bases.keys() {
        for (p, q) in all_pairs(mu.rank()) {
            if let Some((target, m)) = data.op_matrix(p, q, key) {
                let (proj, _) = &quot[&target];
                let (_, lift) = &quot[key];
                ops.insert((p, q, key.clone()), proj.mul(&m).mul(lift));
            }
        }
    }
    TruncatedOModule {
        kind: OKind::Simple,
        top: mu.clone(),
        depth,
        dims: quot.iter().map(|(k, (p, _))| (k.clone(), p.rows())).collect(),
        ops,
    }
}

/// Gram matrix of the contravariant form on `M(mu)_nu`.
pub fn shapovalov_gram(mu: &Weight, nu: &Weight) -> Result<Matrix> {
    let key = depth_key(mu, nu).ok_or_else(|| Error::Precondition(format!("{nu} is not below {mu}")))?;
    let data = VermaData::new(mu, key_depth(&key));
    Ok(data.gram(&key))
}

impl TruncatedOModule {
    pub fn kind(&self) -> OKind {
        self.kind
    }

    pub fn top(&self) -> &Weight {
        &self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn rank(&self) -> usize {
        self.top.rank()
    }

    /// `mu - sum_i key_i alpha_i`.
    pub fn weight_of(&self, key: &[i64]) -> Weight {
        let mut c = self.top.coords().to_vec();
        for (i, &k) in key.iter().enumerate() {
            c[i] -= Q::from_integer(k.into());
            c[i + 1] += Q::from_integer(k.into());
        }
        Weight::new(c)
    }

    /// Stored weight spaces, by depth key.
    pub fn keys(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.dims.keys()
    }

    /// `dim X_nu`; `Ok(0)` when `nu` is not below the top weight and an
    /// error when it lies below the truncation.
    pub fn weight_dim(&self, nu: &Weight) -> Result<usize> {
        match depth_key(&self.top, nu) {
            None => Ok(0),
            Some(k) => self.dim_at(&k),
        }
    }

    pub fn dim_at(&self, key: &[i64]) -> Result<usize> {
        self.dims.get(key).copied().ok_or(Error::InsufficientDepth { have: self.depth, need: key_depth(key) })
    }

    /// Matrix of `E_pq` (0-based, `p != q`) on the space `key`, with the
    /// target key. `Ok(None)` means the target is not a weight (zero map).
    pub fn op(&self, p: usize, q: usize, key: &[i64]) -> Result<Option<(Vec<i64>, &Matrix)>> {
        self.dim_at(key)?;
        let target = shift_key(key, p, q);
        if target.iter().any(|&x| x < 0) {
            return Ok(None);
        }
        match self.ops.get(&(p, q, key.to_vec())) {
            Some(m) => Ok(Some((target, m))),
            None => Err(Error::InsufficientDepth { have: self.depth, need: key_depth(&target) }),
        }
    }

    /// Value of `E_pp` on the space `key`.
    pub fn cartan(&self, p: usize, key: &[i64]) -> Q {
        self.weight_of(key).coord(p).clone()
    }

    /// `e_i` (1-based simple root).
    pub fn e_simple(&self, i: usize, key: &[i64]) -> Result<Option<(Vec<i64>, &Matrix)>> {
        self.op(i - 1, i, key)
    }

    /// `f_i` (1-based simple root).
    pub fn f_simple(&self, i: usize, key: &[i64]) -> Result<Option<(Vec<i64>, &Matrix)>> {
        self.op(i, i - 1, key)
    }

    /// Weights and dimensions, plus the simple root operators, as JSON.
    pub fn to_json(&self) -> Value {
        let spaces: Vec<Value> = self
            .dims
            .iter()
            .map(|(k, d)| json!({ "depth_key": k, "weight": self.weight_of(k).to_string(), "dim": d }))
            .collect();
        let mut ops = Vec::new();
        let mut keys: Vec<&(usize, usize, Vec<i64>)> = self.ops.keys().collect();
        keys.sort();
        for key in keys {
            let (p, q, k) = key;
            if p.abs_diff(*q) != 1 {
                continue;
            }
            let m = &self.ops[key];
            let rows: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(fmt_q).collect()).collect();
            ops.push(json!({ "p": p + 1, "q": q + 1, "from": k, "matrix": rows }));
        }
        json!({
            "kind": if self.kind == OKind::Verma { "verma" } else { "simple" },
            "top": self.top.to_string(),
            "depth": self.depth,
            "spaces": spaces,
            "ops": ops,
        })
    }
}

/// Kostant partition count of a depth key (number of PBW monomials).
pub fn kostant_count(n: usize, key: &[i64]) -> usize {
    Pbw::new(&Weight::zero(n)).partitions(key).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn verma_dimensions() {
        let m = verma_truncated(&Weight::zero(3), 4);
        assert_eq!(m.dim_at(&[0, 0]).unwrap(), 1);
        assert_eq!(m.dim_at(&[1, 1]).unwrap(), 2);
        assert_eq!(m.dim_at(&[2, 2]).unwrap(), 3);
        let m2 = verma_truncated(&Weight::zero(2), 5);
        for k in 0..=5 {
            assert_eq!(m2.dim_at(&[k]).unwrap(), 1);
        }
        assert!(matches!(m2.dim_at(&[6]), Err(Error::InsufficientDepth { .. })));
    }

    #[test]
    fn raising_and_lowering_commute_to_cartan() {
        for mu in [Weight::zero(3), Weight::from_ints(&[2, -1, -1]), Weight::new(vec![qf(1, 2), qf(1, 2), q(-1)])] {
            let m = verma_truncated(&mu, 4);
            for key in m.keys().cloned().collect::<Vec<_>>() {
                if key_depth(&key) > 2 {
                    continue;
                }
                let d = m.dim_at(&key).unwrap();
                for i in 1..3 {
                    for j in 1..3 {
                        // e_i f_j - f_j e_i on the space key
                        let ef = match m.f_simple(j, &key).unwrap() {
                            Some((k1, f)) => m.e_simple(i, &k1).unwrap().map(|(_, e)| e.mul(f)),
                            None => None,
                        };
                        let fe = match m.e_simple(i, &key).unwrap() {
                            Some((k1, e)) => m.f_simple(j, &k1).unwrap().map(|(_, f)| f.mul(e)),
                            None => None,
                        };
                        let zero = |r: usize| Matrix::zeros(r, d);
                        let rows = ef.as_ref().map(Matrix::rows).or(fe.as_ref().map(Matrix::rows)).unwrap_or(d);
                        let lhs = ef.unwrap_or_else(|| zero(rows)).sub(&fe.unwrap_or_else(|| zero(rows)));
                        let want = if i == j {
                            let h = m.cartan(i - 1, &key) - m.cartan(i, &key);
                            Matrix::scalar(d, &h)
                        } else {
                            Matrix::zeros(rows, d)
                        };
                        assert_eq!(lhs, want, "mu={mu} key={key:?} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_is_symmetric_and_normalized() {
        let mu = Weight::from_ints(&[1, 0, -1]);
        let m = VermaData::new(&mu, 3);
        for key in m.bases.keys() {
            let g = m.gram(key);
            assert_eq!(g, g.transpose());
        }
        assert_eq!(m.gram(&[0, 0]), Matrix::identity(1));
    }

    #[test]
    fn simple_examples() {
        // trivial module of sl_2
        let l = simple_truncated(&Weight::zero(2), 4);
        assert_eq!(l.dim_at(&[0]).unwrap(), 1);
        assert_eq!(l.dim_at(&[1]).unwrap(), 0);
        // natural representation of sl_2
        let l = simple_truncated(&Weight::new(vec![qf(1, 2), qf(-1, 2)]), 4);
        let dims: Vec<usize> = (0..=4).map(|k| l.dim_at(&[k]).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0]);
        // antidominant: the Verma module is simple
        let mu = Weight::from_ints(&[-1, 1]);
        let l = simple_truncated(&mu, 4);
        let v = verma_truncated(&mu, 4);
        for k in 0..=4 {
            assert_eq!(l.dim_at(&[k]).unwrap(), v.dim_at(&[k]).unwrap());
        }
        // adjoint of sl_3 has dimension 8
        let l = simple_truncated(&Weight::from_ints(&[1, 0, -1]), 5);
        assert_eq!(l.keys().map(|k| l.dim_at(k).unwrap()).sum::<usize>(), 8);
    }

    #[test]
    fn kostant_counts() {
        assert_eq!(kostant_count(3, &[1, 1]), 2);
        assert_eq!(kostant_count(4, &[1, 1, 1]), 4);
    }
}
