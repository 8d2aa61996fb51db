//! Submodules, composition factors, homomorphisms and heads of explicit
//! modules, all over the rationals.
//!
//! Invariant subspaces are found by spinning joint eigenvectors of the
//! commuting `eps` operators. If `K` is a one-dimensional joint eigenspace
//! and the matching eigenspace `K*` of the transposed operators is also one
//! dimensional, then either a proper submodule shows up while spinning or
//! the module is irreducible: a proper submodule `U` carries the weight of
//! `K` either in `U` (so `K` lies in `U`) or in `V/U` (so `K*` lies in the
//! annihilator of `U`).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{restrict, spin, unit, Matrix, Subspace};
use crate::rational::{q, Q};

use super::module::FinModule;

/// A joint weight of the `eps` operators with its generalized eigenspace
/// (columns of `basis`).
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Vec<Q>,
    pub basis: Matrix,
}

fn transposes(ms: &[Matrix]) -> Vec<Matrix> {
    ms.iter().map(Matrix::transpose).collect()
}

/// Generalized joint eigenspaces of commuting operators, sorted by weight.
pub fn joint_weight_spaces(eps: &[Matrix], dim: usize) -> Result<Vec<WeightSpace>> {
    let mut out = Vec::new();
    if dim > 0 {
        refine(eps, 0, Matrix::identity(dim), Vec::new(), &mut out)?;
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

fn refine(eps: &[Matrix], i: usize, basis: Matrix, prefix: Vec<Q>, out: &mut Vec<WeightSpace>) -> Result<()> {
    if i == eps.len() {
        out.push(WeightSpace { weight: prefix, basis });
        return Ok(());
    }
    let x = restrict(&eps[i], &basis);
    let eig = x
        .rational_eigenvalues()
        .ok_or_else(|| Error::SplittingFailure(format!("eps{} has eigenvalues outside the rationals", i + 1)))?;
    for (c, m) in eig {
        let null = x.shift(&c).pow(m).nullspace();
        let sub = basis.mul(&Matrix::from_columns(basis.cols(), &null));
        let mut w = prefix.clone();
        w.push(c);
        refine(eps, i + 1, sub, w, out)?;
    }
    Ok(())
}

/// Weight multiset: each weight with its generalized multiplicity.
pub fn weight_multiset(m: &FinModule) -> Result<Vec<(Vec<Q>, usize)>> {
    Ok(joint_weight_spaces(m.eps_mats(), m.dim())?.into_iter().map(|w| (w.weight, w.basis.cols())).collect())
}

fn joint_kernel(eps: &[Matrix], c: &[Q], dim: usize) -> Vec<Vec<Q>> {
    if eps.is_empty() {
        return (0..dim).map(|i| unit(dim, i)).collect();
    }
    let shifted: Vec<Matrix> = eps.iter().zip(c).map(|(e, x)| e.shift(x)).collect();
    Matrix::vstack(&shifted).nullspace()
}

fn candidates(kernel: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out = kernel.to_vec();
    if kernel.len() > 1 {
        let dim = kernel[0].len();
        let mut sum = vec![Q::zero(); dim];
        for (k, v) in kernel.iter().enumerate() {
            let f = q(k as i64 + 1);
            for (s, x) in sum.iter_mut().zip(v) {
                *s += &f * x;
            }
        }
        out.push(sum);
    }
    out
}

/// A proper nonzero invariant subspace, or `None` when the operators act
/// irreducibly. `eps` must be a commuting subset of `gens`.
pub fn find_invariant_subspace(gens: &[Matrix], eps: &[Matrix], dim: usize) -> Result<Option<Subspace>> {
    if dim <= 1 {
        return Ok(None);
    }
    let gens_t = transposes(gens);
    let eps_t = transposes(eps);
    let mut spaces = joint_weight_spaces(eps, dim)?;
    spaces.sort_by_key(|w| w.basis.cols());
    for ws in &spaces {
        let k = joint_kernel(eps, &ws.weight, dim);
        for v in candidates(&k) {
            let u = spin(&[v], gens, dim);
            if u.dim() < dim {
                return Ok(Some(u));
            }
        }
        let kt = joint_kernel(&eps_t, &ws.weight, dim);
        for w in candidates(&kt) {
            let u = spin(&[w], &gens_t, dim);
            if u.dim() < dim {
                return Ok(Some(u.annihilator()));
            }
        }
        if k.len() == 1 && kt.len() == 1 {
            return Ok(None);
        }
    }
    Err(Error::SplittingFailure(format!(
        "no weight of a {dim}-dimensional module has one-dimensional joint eigenspaces"
    )))
}

pub fn is_irreducible(m: &FinModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    Ok(find_invariant_subspace(&m.generators(), m.eps_mats(), m.dim())?.is_none())
}

/// The representation on an invariant subspace, in the basis of `u`.
pub fn submodule(m: &FinModule, u: &Subspace) -> FinModule {
    let b = u.basis_matrix();
    let r = |g: &Matrix| if u.dim() == 0 { Matrix::zeros(0, 0) } else { restrict(g, &b) };
    FinModule::from_parts(
        m.rank(),
        u.dim(),
        m.s_mats().iter().map(r).collect(),
        m.eps_mats().iter().map(r).collect(),
        None,
    )
    .expect("restriction keeps shapes")
}

/// The representation on `M / U`, with coordinates at the non-pivot
/// positions of `u`. The cyclic vector is carried along when it survives.
pub fn quotient(m: &FinModule, u: &Subspace) -> FinModule {
    let np = u.non_pivots();
    let k = np.len();
    let proj = |g: &Matrix| {
        let cols: Vec<Vec<Q>> = np.iter().map(|&j| u.quotient_coords(&g.column(j))).collect();
        if k == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_columns(k, &cols)
        }
    };
    let cyclic = m.cyclic().map(|v| u.quotient_coords(v)).filter(|v| v.iter().any(|x| !x.is_zero()));
    FinModule::from_parts(
        m.rank(),
        k,
        m.s_mats().iter().map(proj).collect(),
        m.eps_mats().iter().map(proj).collect(),
        cyclic,
    )
    .expect("projection keeps shapes")
}

/// A minimal nonzero invariant subspace, in ambient coordinates.
pub fn minimal_invariant(gens: &[Matrix], eps: &[Matrix], dim: usize) -> Result<Subspace> {
    let mut basis = Matrix::identity(dim);
    loop {
        let k = basis.cols();
        let g: Vec<Matrix> = gens.iter().map(|x| restrict(x, &basis)).collect();
        let e: Vec<Matrix> = eps.iter().map(|x| restrict(x, &basis)).collect();
        match find_invariant_subspace(&g, &e, k)? {
            None => {
                let cols: Vec<Vec<Q>> = (0..k).map(|c| basis.column(c)).collect();
                return Ok(Subspace::spanned_by(dim, cols.iter()));
            }
            Some(u) => basis = basis.mul(&u.basis_matrix()),
        }
    }
}

fn split_all(m: FinModule, out: &mut Vec<FinModule>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match find_invariant_subspace(&m.generators(), m.eps_mats(), m.dim())? {
        None => out.push(m),
        Some(u) => {
            split_all(submodule(&m, &u), out)?;
            split_all(quotient(&m, &u), out)?;
        }
    }
    Ok(())
}

type WeightMultiset = Vec<(Vec<Q>, usize)>;

/// Composition factors up to isomorphism with multiplicities, sorted by
/// dimension and weights.
pub fn composition_factors(m: &FinModule) -> Result<Vec<(FinModule, usize)>> {
    let mut pieces = Vec::new();
    split_all(m.clone().with_cyclic(None), &mut pieces)?;
    // (representative, joint weights, count)
    let mut classes: Vec<(FinModule, WeightMultiset, usize)> = Vec::new();
    for p in pieces {
        let w = weight_multiset(&p)?;
        let mut found = false;
        for (rep, rw, count) in classes.iter_mut() {
            if rep.dim() == p.dim() && *rw == w && iso_test(rep, &p)?.is_some() {
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((p, w, 1));
        }
    }
    classes.sort_by(|a, b| (a.0.dim(), &a.1).cmp(&(b.0.dim(), &b.1)));
    Ok(classes.into_iter().map(|(m, _, c)| (m, c)).collect())
}

/// A basis of `Hom_H(M, N)` as `dim N x dim M` matrices.
///
/// `M` is spanned by words in the generators applied to a few seed vectors,
/// so a homomorphism is fixed by the images of the seeds; the remaining
/// relations become linear equations on those images.
pub fn hom_space(m: &FinModule, n: &FinModule) -> Result<Vec<Matrix>> {
    if m.rank() != n.rank() {
        return Err(Error::RankMismatch { expected: m.rank(), got: n.rank() });
    }
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let gm = m.generators();
    let gn = n.generators();

    // seeds: the cyclic vector if any, then unit vectors as needed
    let mut seeds: Vec<Vec<Q>> = Vec::new();
    let mut span = Subspace::new(dm);
    let mut pool: Vec<Vec<Q>> = m.cyclic().cloned().into_iter().collect();
    pool.extend((0..dm).map(|i| unit(dm, i)));
    for v in pool {
        if span.dim() == dm {
            break;
        }
        if !span.contains(&v) {
            seeds.push(v.clone());
            let mut all = seeds.clone();
            all.extend(span.basis().iter().cloned());
            span = spin(&all, &gm, dm);
        }
    }
    let unknowns = seeds.len() * dn;

    // spanning tree: tree[k] = (b_k, A_k) with T(b_k) = A_k u
    let mut tree: Vec<(Vec<Q>, Matrix)> = Vec::new();
    let mut indep = Subspace::new(dm);
    for (r, s) in seeds.iter().enumerate() {
        if indep.insert(s) {
            let mut a = Matrix::zeros(dn, unknowns);
            for i in 0..dn {
                a[(i, r * dn + i)] = Q::one();
            }
            tree.push((s.clone(), a));
        }
    }
    let mut head = 0;
    while head < tree.len() && tree.len() < dm {
        let (v, a) = tree[head].clone();
        for (g, h) in gm.iter().zip(&gn) {
            let w = g.mul_vec(&v);
            if indep.insert(&w) {
                tree.push((w, h.mul(&a)));
            }
        }
        head += 1;
    }
    debug_assert_eq!(tree.len(), dm);
    let b = Matrix::from_columns(dm, &tree.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>());
    let b_inv = b.inverse().expect("tree vectors form a basis");

    let mut rows = Subspace::new(unknowns);
    for (v, a) in &tree {
        for (g, h) in gm.iter().zip(&gn) {
            let coeffs = b_inv.mul_vec(&g.mul_vec(v));
            let mut lhs = h.mul(a);
            for (c, (_, am)) in coeffs.iter().zip(&tree) {
                if !c.is_zero() {
                    lhs = lhs.sub(&am.scale(c));
                }
            }
            for r in 0..dn {
                if rows.dim() == unknowns {
                    return Ok(Vec::new());
                }
                rows.insert(lhs.row(r));
            }
        }
    }
    let solutions = rows.annihilator();
    let mut out = Vec::new();
    for u in solutions.basis() {
        let images: Vec<Vec<Q>> = tree.iter().map(|(_, a)| a.mul_vec(u)).collect();
        out.push(Matrix::from_columns(dn, &images).mul(&b_inv));
    }
    Ok(out)
}

/// An invertible intertwiner `T` with `T g_M = g_N T`, if one exists among
/// a fixed sequence of combinations of the `Hom` basis.
pub fn iso_test(m: &FinModule, n: &FinModule) -> Result<Option<Matrix>> {
    if m.rank() != n.rank() || m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    if weight_multiset(m)? != weight_multiset(n)? {
        return Ok(None);
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for t in &basis {
        if t.is_invertible() {
            return Ok(Some(t.clone()));
        }
    }
    let h = basis.len();
    let tries = m.dim() * h + 2;
    let mut seed: i64 = 7;
    for t in 2..=tries as i64 {
        let mut acc = Matrix::zeros(n.dim(), m.dim());
        let mut pw = Q::one();
        for b in &basis {
            acc = acc.add(&b.scale(&pw));
            pw *= q(t);
        }
        if acc.is_invertible() {
            return Ok(Some(acc));
        }
        // small pseudo-random combination as well
        let mut acc = Matrix::zeros(n.dim(), m.dim());
        for b in &basis {
            seed = (seed * 1103515245 + 12345).rem_euclid(1 << 31);
            acc = acc.add(&b.scale(&q(seed % 17 - 8)));
        }
        if acc.is_invertible() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// The unique simple quotient of a cyclic module with simple head.
///
/// A minimal submodule of the dual (transposed operators) has a maximal
/// submodule `N` of `M` as annihilator; `M/N` is returned after checking
/// that `M` has no other simple quotients.
pub fn simple_quotient(m: &FinModule) -> Result<FinModule> {
    if m.dim() == 0 {
        return Err(Error::Precondition("the zero module has no simple quotient".into()));
    }
    let Some(v) = m.cyclic() else {
        return Err(Error::Precondition("module has no distinguished cyclic vector".into()));
    };
    if spin(std::slice::from_ref(v), &m.generators(), m.dim()).dim() != m.dim() {
        return Err(Error::Precondition("distinguished vector does not generate the module".into()));
    }
    let gens_t = transposes(&m.generators());
    let eps_t = transposes(m.eps_mats());
    let dual_simple = minimal_invariant(&gens_t, &eps_t, m.dim())?;
    let n = dual_simple.annihilator();
    let head = quotient(m, &n);
    if head.cyclic().is_none() {
        return Err(Error::Invariant("cyclic vector vanished in the head".into()));
    }
    let heads = head_length(m)?;
    if heads != 1 {
        return Err(Error::HeadNotSimple(format!("head has {heads} simple summands")));
    }
    Ok(head)
}

/// Number of simple summands of the head, `sum_L dim Hom(M, L)` over
/// composition factor types `L` (each checked absolutely irreducible).
pub fn head_length(m: &FinModule) -> Result<usize> {
    let mut total = 0;
    for (l, _) in composition_factors(m)? {
        let end = hom_space(&l, &l)?.len();
        if end != 1 {
            return Err(Error::SplittingFailure(format!(
                "a {}-dimensional factor has a {end}-dimensional endomorphism ring",
                l.dim()
            )));
        }
        total += hom_space(m, &l)?.len();
    }
    Ok(total)
}

/// The multiset (sorted decreasingly) of coordinates shared by all joint
/// `eps` weights.
pub fn central_character(m: &FinModule) -> Result<Vec<Q>> {
    if m.dim() == 0 {
        return Err(Error::Precondition("the zero module has no central character".into()));
    }
    let mut found: Option<Vec<Q>> = None;
    for ws in joint_weight_spaces(m.eps_mats(), m.dim())? {
        let mut w = ws.weight.clone();
        w.sort_by(|a, b| b.cmp(a));
        match &found {
            None => found = Some(w),
            Some(f) if *f != w => {
                return Err(Error::Precondition("module has more than one central character".into()));
            }
            _ => {}
        }
    }
    Ok(found.unwrap_or_default())
}

/// Head via the trace-form radical of the generated matrix algebra. The
/// algebra basis has up to `dim^2` elements, so this is only meant for
/// small modules, as an independent check of [`simple_quotient`].
pub fn trace_form_head(m: &FinModule) -> Result<FinModule> {
    let d = m.dim();
    let gens = m.generators();
    let flat = |x: &Matrix| -> Vec<Q> { (0..d).flat_map(|r| x.row(r).to_vec()).collect() };
    let mut span = Subspace::new(d * d);
    let mut algebra = vec![Matrix::identity(d)];
    span.insert(&flat(&algebra[0]));
    let mut head = 0;
    while head < algebra.len() {
        let x = algebra[head].clone();
        for g in &gens {
            let y = g.mul(&x);
            if span.insert(&flat(&y)) {
                algebra.push(y);
            }
        }
        head += 1;
    }
    let k = algebra.len();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = algebra[i].mul(&algebra[j]).trace();
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let mut rad_m = Subspace::new(d);
    for coeffs in gram.nullspace() {
        let mut x = Matrix::zeros(d, d);
        for (c, a) in coeffs.iter().zip(&algebra) {
            if !c.is_zero() {
                x = x.add(&a.scale(c));
            }
        }
        for c in 0..d {
            rad_m.insert(&x.column(c));
        }
    }
    Ok(quotient(m, &rad_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::segment::SegmentSequence;
    use crate::hecke::standard::induce_standard;

    fn std(s: &str) -> FinModule {
        induce_standard(&SegmentSequence::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn rank_two_principal_series() {
        // zeta = (1/2, -1/2): the two weights differ by one, so it has length 2
        let m = std("[1/2,1/2];[-1/2,-1/2]");
        let f = composition_factors(&m).unwrap();
        assert_eq!(f.iter().map(|(l, c)| (l.dim(), *c)).collect::<Vec<_>>(), vec![(1, 1), (1, 1)]);
        let l = simple_quotient(&m).unwrap();
        assert_eq!(l.dim(), 1);
        assert_eq!(l.eps(1)[(0, 0)], crate::rational::qf(1, 2));
        assert_eq!(trace_form_head(&m).unwrap().dim(), 1);
    }

    #[test]
    fn regular_weights_give_simple_module() {
        let m = std("[0,0];[5,5]");
        assert!(is_irreducible(&m).unwrap());
        assert_eq!(simple_quotient(&m).unwrap().dim(), 2);
    }

    #[test]
    fn iso_and_hom_basics() {
        let m = std("[1,1];[0,0];[-1,-1]");
        let t = iso_test(&m, &m).unwrap().unwrap();
        assert!(t.is_invertible());
        assert!(iso_test(&m, &std("[0,1];[-1,-1]")).unwrap().is_none());
        // the two orders of a pair of unlinked segments are isomorphic
        let a = std("[0,0];[3,3]");
        let b = std("[3,3];[0,0]");
        assert!(iso_test(&a, &b).unwrap().is_some());
    }

    #[test]
    fn central_characters() {
        assert_eq!(central_character(&std("[0,2]")).unwrap(), vec![q(2), q(1), q(0)]);
        assert_eq!(central_character(&std("[1,1];[0,0];[-1,-1]")).unwrap(), vec![q(1), q(0), q(-1)]);
    }

    #[test]
    fn splitting_respects_dimensions() {
        let m = std("[1,1];[0,0];[-1,-1]");
        let f = composition_factors(&m).unwrap();
        assert_eq!(f.iter().map(|(l, c)| l.dim() * c).sum::<usize>(), 6);
        for (l, _) in &f {
            assert!(l.check_relations().is_ok());
            assert!(is_irreducible(l).unwrap());
        }
    }
}
