use std::collections::{BTreeSet, VecDeque};

use super::perm::Perm;
use super::weight::Weight;
use crate::error::{Error, Result};

/// A standard parabolic subgroup `W_J` of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    n: usize,
    generators: Vec<usize>,
    elements: Vec<Perm>,
}

impl ParabolicData {
    pub fn new(n: usize, generators: &[usize]) -> Result<Self> {
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if let Some(&bad) = gens.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::Precondition(format!("s{bad} is not a simple reflection of S_{n}")));
        }
        let elements = generate(n, &gens);
        Ok(ParabolicData { n, generators: gens, elements })
    }

    pub fn trivial(n: usize) -> Self {
        ParabolicData { n, generators: Vec::new(), elements: vec![Perm::identity(n)] }
    }

    /// `J = {i : <nu, h_i> = 0}`; for dominant `nu` this generates the
    /// stabilizer of `nu`.
    pub fn stabilizer_of(nu: &Weight) -> Self {
        let n = nu.rank();
        let gens: Vec<usize> = (1..n).filter(|&i| nu.pair_coroot(i) == num_traits::Zero::zero()).collect();
        Self::new(n, &gens).expect("generators in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Elements sorted by length, then lexicographically.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &Perm) -> bool {
        self.elements.binary_search_by(|p| (p.length(), p).cmp(&(w.length(), w))).is_ok()
    }

    /// Longest representatives of the double cosets `W_J \ S_n / W_J`,
    /// sorted by length then lexicographically.
    pub fn double_coset_reps(&self) -> Vec<Perm> {
        let reps: BTreeSet<Perm> =
            Perm::all(self.n).iter().map(|w| coset_data(w, self).expect("same degree").w_lr).collect();
        sort_by_length(reps.into_iter().collect())
    }

    /// Longest representatives of the right cosets `w W_J`.
    pub fn right_coset_reps(&self) -> Vec<Perm> {
        let reps: BTreeSet<Perm> =
            Perm::all(self.n).iter().map(|w| coset_data(w, self).expect("same degree").w_r).collect();
        sort_by_length(reps.into_iter().collect())
    }
}

fn sort_by_length(mut v: Vec<Perm>) -> Vec<Perm> {
    v.sort_by(|a, b| (a.length(), a).cmp(&(b.length(), b)));
    v
}

fn generate(n: usize, gens: &[usize]) -> Vec<Perm> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let e = Perm::identity(n);
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        for &i in gens {
            let v = w.mul(&Perm::simple(n, i));
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    sort_by_length(seen.into_iter().collect())
}

/// Distinguished elements attached to `w` and `W_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetData {
    /// Longest element of `W_J w`.
    pub w_l: Perm,
    /// Longest element of `w W_J`.
    pub w_r: Perm,
    /// Longest element of `W_J w W_J`.
    pub w_lr: Perm,
    /// Shortest element of `W_J w`.
    pub w_min: Perm,
}

pub fn coset_data(w: &Perm, j: &ParabolicData) -> Result<CosetData> {
    if w.n() != j.n() {
        return Err(Error::RankMismatch { expected: j.n(), got: w.n() });
    }
    let key = |p: &Perm| (p.length(), p.clone());
    let left: Vec<Perm> = j.elements().iter().map(|u| u.mul(w)).collect();
    let right: Vec<Perm> = j.elements().iter().map(|u| w.mul(u)).collect();
    let w_l = left.iter().max_by_key(|p| key(p)).unwrap().clone();
    let w_min = left.iter().min_by_key(|p| key(p)).unwrap().clone();
    let w_r = right.iter().max_by_key(|p| key(p)).unwrap().clone();
    let w_lr = left.iter().flat_map(|x| j.elements().iter().map(move |v| x.mul(v))).max_by_key(key).unwrap();
    Ok(CosetData { w_l, w_r, w_lr, w_min })
}
